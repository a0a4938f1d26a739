//! WebAssembly bindings for the demo page. Every export returns a JSON
//! string, or an error message, so the same functions run natively in tests.

use roughtol::approx::{accuracy, approximate};
use roughtol::chain::{
    enumerate_chain_congruences, enumerate_chain_glued, enumerate_chain_tolerances,
};
use roughtol::tolerance::{tolerance_from_distance, DistanceKind, DistanceSpec};
use roughtol::validation::closeness;
use roughtol::{blocks, BlockSystem, IndexSet, Value};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Longest chain the page will enumerate; Catalan(10) systems is plenty to look at.
const MAX_DEMO_CHAIN: usize = 10;

fn parse_values(text: &str) -> Result<Vec<Value>, String> {
    let values: Vec<Value> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Value::Num)
                .ok_or_else(|| format!("`{t}` is not a number"))
        })
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err("enter at least one value".into());
    }
    Ok(values)
}

fn point_block_system(values: &str, epsilon: f64) -> Result<(Vec<Value>, BlockSystem), String> {
    let values = parse_values(values)?;
    let spec = DistanceSpec::new("x", DistanceKind::AbsoluteDifference, epsilon);
    let t = tolerance_from_distance(&values, &spec).map_err(|e| e.to_string())?;
    Ok((values, blocks(&t)))
}

/// Block systems of all tolerances (`kind = "tolerance"`), glued tolerances
/// or congruences on a chain of `n` elements.
#[wasm_bindgen]
pub fn enumerate_chain(kind: &str, n: usize) -> Result<String, String> {
    if n > MAX_DEMO_CHAIN {
        return Err(format!(
            "the demo lists chains of at most {MAX_DEMO_CHAIN} elements"
        ));
    }
    let ubd = match kind {
        "tolerance" => enumerate_chain_tolerances(n),
        "glued" => enumerate_chain_glued(n),
        "congruence" => enumerate_chain_congruences(n),
        other => return Err(format!("unknown family `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    Ok(json!({ "n": n, "count": ubd.len(), "systems": ubd.systems }).to_string())
}

/// Blocks of the tolerance `|a - b| + |b - a| <= epsilon` on a list of numbers.
#[wasm_bindgen]
pub fn point_blocks(values: &str, epsilon: f64) -> Result<String, String> {
    let (values, bs) = point_block_system(values, epsilon)?;
    Ok(json!({ "values": values, "blocks": bs.blocks() }).to_string())
}

/// Lower and upper approximation of the selected point indices.
#[wasm_bindgen]
pub fn approximate_selection(values: &str, epsilon: f64, selected: &str) -> Result<String, String> {
    let (_, bs) = point_block_system(values, epsilon)?;
    let x: IndexSet = selected
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format!("`{t}` is not an index"))
        })
        .collect::<Result<_, _>>()?;
    let a = approximate(&bs, &x).map_err(|e| e.to_string())?;
    let acc = accuracy(&bs, &x).map_err(|e| e.to_string())?;
    let close = closeness(&bs, &x).map_err(|e| e.to_string())?;
    Ok(json!({
        "blocks": bs.blocks(),
        "approximation": a,
        "accuracy": acc,
        "closeness": close,
    })
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value as Json;

    fn parse(s: &str) -> Json {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn enumerates_families() {
        assert_eq!(
            parse(&enumerate_chain("tolerance", 4).unwrap())["count"],
            14
        );
        assert_eq!(
            parse(&enumerate_chain("congruence", 4).unwrap())["count"],
            8
        );
        assert!(enumerate_chain("lattice", 3).is_err());
        assert!(enumerate_chain("tolerance", 11).is_err());
    }

    #[test]
    fn blocks_of_points() {
        let v = parse(&point_blocks("0, 1, 2, 10", 2.0).unwrap());
        assert_eq!(v["blocks"], json!([[0, 1], [1, 2], [3]]));
        assert!(point_blocks("1, x", 1.0).is_err());
        assert!(point_blocks("", 1.0).is_err());
        assert!(point_blocks("1 2", -1.0).is_err());
    }

    #[test]
    fn approximates_selection() {
        let v = parse(&approximate_selection("0 1 2 10", 2.0, "0,1,3").unwrap());
        assert_eq!(v["approximation"]["lower"], json!([0, 1, 3]));
        assert_eq!(v["approximation"]["upper"], json!([0, 1, 2, 3]));
        assert_eq!(v["accuracy"], 0.75);
        assert!(approximate_selection("0 1", 1.0, "5").is_err());
    }
}
