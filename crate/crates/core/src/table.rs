//! Information tables: objects × attributes with set-valued cells.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single attribute value: a finite number or a categorical token.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Num(f64),
    Cat(String),
}

impl Value {
    /// Numeric-looking tokens become numbers, everything else stays a token.
    pub fn parse(token: &str) -> Value {
        match token.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Value::Num(x),
            _ => Value::Cat(token.trim().to_string()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Num(x) => Some(*x),
            Value::Cat(_) => None,
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Value {}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numbers sort before tokens; numbers by value, tokens lexicographically.
impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Num(a), Value::Num(b)) => a.total_cmp(b),
            (Value::Num(_), Value::Cat(_)) => Ordering::Less,
            (Value::Cat(_), Value::Num(_)) => Ordering::Greater,
            (Value::Cat(a), Value::Cat(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(x) => write!(f, "{x}"),
            Value::Cat(s) => f.write_str(s),
        }
    }
}

/// Nonempty set of values held by one cell.
pub type ValueSet = BTreeSet<Value>;

/// Options for [`load_table`].
#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub delimiter: u8,
    pub decision: Option<String>,
    /// Splits a cell into a multi-element valuation.
    pub separator: char,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            delimiter: b',',
            decision: None,
            separator: '|',
        }
    }
}

/// Explicit total orders for categorical attributes, keyed by attribute.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValueOrder {
    orders: BTreeMap<String, Vec<String>>,
}

impl ValueOrder {
    /// Parses lines of the form `attr: v1 < v2 < v3`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut orders = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (attr, rest) = line.split_once(':').ok_or_else(|| Error::Parse {
                row: lineno + 1,
                message: "expected `attribute: v1 < v2 < ...`".into(),
            })?;
            let values: Vec<String> = rest.split('<').map(|v| v.trim().to_string()).collect();
            if values.iter().any(String::is_empty) {
                return Err(Error::Parse {
                    row: lineno + 1,
                    message: "empty value in order".into(),
                });
            }
            let distinct: HashSet<_> = values.iter().collect();
            if distinct.len() != values.len() {
                return Err(Error::Parse {
                    row: lineno + 1,
                    message: "value listed twice".into(),
                });
            }
            orders.insert(attr.trim().to_string(), values);
        }
        Ok(Self { orders })
    }

    pub fn get(&self, attribute: &str) -> Option<&[String]> {
        self.orders.get(attribute).map(Vec::as_slice)
    }
}

/// Objects × attributes with set-valued valuations.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationTable {
    objects: Vec<String>,
    attributes: Vec<String>,
    /// `cells[attribute][object]`
    cells: Vec<Vec<ValueSet>>,
    decision: Option<usize>,
    value_order: ValueOrder,
}

impl InformationTable {
    /// Builds a table from column-major cells, checking every invariant.
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        cells: Vec<Vec<ValueSet>>,
        decision: Option<&str>,
    ) -> Result<Self> {
        if objects.is_empty() || attributes.is_empty() {
            return Err(Error::Schema(
                "table has no objects or no attributes".into(),
            ));
        }
        check_unique(&objects, "object")?;
        check_unique(&attributes, "attribute")?;
        if cells.len() != attributes.len() {
            return Err(Error::Dimension {
                expected: attributes.len(),
                found: cells.len(),
            });
        }
        for (a, column) in cells.iter().enumerate() {
            if column.len() != objects.len() {
                return Err(Error::Dimension {
                    expected: objects.len(),
                    found: column.len(),
                });
            }
            if let Some(o) = column.iter().position(BTreeSet::is_empty) {
                return Err(Error::Schema(format!(
                    "empty valuation for attribute `{}` at object `{}`",
                    attributes[a], objects[o]
                )));
            }
        }
        let decision = match decision {
            Some(d) => {
                Some(
                    attributes
                        .iter()
                        .position(|a| a == d)
                        .ok_or_else(|| Error::Unknown {
                            what: "decision attribute",
                            name: d.to_string(),
                        })?,
                )
            }
            None => None,
        };
        Ok(Self {
            objects,
            attributes,
            cells,
            decision,
            value_order: ValueOrder::default(),
        })
    }

    pub fn with_value_order(mut self, order: ValueOrder) -> Self {
        self.value_order = order;
        self
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn decision_attribute(&self) -> Option<&str> {
        self.decision.map(|d| self.attributes[d].as_str())
    }

    /// All attributes other than the decision attribute, in table order.
    pub fn conditional_attributes(&self) -> Vec<&str> {
        self.attributes
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != self.decision)
            .map(|(_, a)| a.as_str())
            .collect()
    }

    pub fn attribute_index(&self, attribute: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a == attribute)
            .ok_or_else(|| Error::Unknown {
                what: "attribute",
                name: attribute.to_string(),
            })
    }

    pub fn object_index(&self, object: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == object)
            .ok_or_else(|| Error::Unknown {
                what: "object",
                name: object.to_string(),
            })
    }

    /// `ν(a, x)`.
    pub fn valuation(&self, attribute: usize, object: usize) -> &ValueSet {
        &self.cells[attribute][object]
    }

    pub fn is_deterministic(&self) -> bool {
        self.cells.iter().flatten().all(|v| v.len() == 1)
    }

    /// The single value of every cell in a column, or a determinism error.
    pub fn column(&self, attribute: &str) -> Result<Vec<&Value>> {
        let a = self.attribute_index(attribute)?;
        self.cells[a]
            .iter()
            .enumerate()
            .map(|(o, set)| {
                if set.len() == 1 {
                    Ok(set.iter().next().expect("nonempty"))
                } else {
                    Err(Error::Determinism {
                        attribute: attribute.to_string(),
                        object: self.objects[o].clone(),
                    })
                }
            })
            .collect()
    }

    /// Numeric column, failing on tokens.
    pub fn numeric_column(&self, attribute: &str) -> Result<Vec<f64>> {
        self.column(attribute)?
            .into_iter()
            .map(|v| {
                v.as_f64().ok_or_else(|| Error::Ordering {
                    attribute: attribute.to_string(),
                    message: format!("value `{v}` is not numeric"),
                })
            })
            .collect()
    }

    /// The distinct values of a column in ascending order, and each object's
    /// dense rank into that list.
    pub fn chain(&self, attribute: &str) -> Result<(Vec<Value>, Vec<usize>)> {
        let column = self.column(attribute)?;
        let numeric = column.iter().filter(|v| v.as_f64().is_some()).count();
        if numeric != 0 && numeric != column.len() {
            return Err(Error::Ordering {
                attribute: attribute.to_string(),
                message: "column mixes numbers and tokens".into(),
            });
        }
        let mut distinct: Vec<Value> = column.iter().map(|v| (*v).clone()).collect();
        match self.value_order.get(attribute) {
            Some(order) if numeric == 0 => {
                let pos: HashMap<&str, usize> = order
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.as_str(), i))
                    .collect();
                let key = |v: &Value| match v {
                    Value::Cat(s) => pos.get(s.as_str()).copied(),
                    Value::Num(_) => None,
                };
                if let Some(bad) = distinct.iter().find(|v| key(v).is_none()) {
                    return Err(Error::Ordering {
                        attribute: attribute.to_string(),
                        message: format!("value `{bad}` missing from the value order"),
                    });
                }
                distinct.sort_by_key(|v| key(v));
            }
            _ => distinct.sort(),
        }
        distinct.dedup();
        let position: BTreeMap<&Value, usize> =
            distinct.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let ranks = column.iter().map(|v| position[*v]).collect();
        Ok((distinct, ranks))
    }

    /// Dense ranks `0..k` of a column, ties sharing a rank.
    pub fn column_rank(&self, attribute: &str) -> Result<BTreeMap<String, usize>> {
        let (_, ranks) = self.chain(attribute)?;
        Ok(self.objects.iter().cloned().zip(ranks).collect())
    }

    fn rank_rows(&self, attributes: &[&str]) -> Result<Vec<Vec<usize>>> {
        attributes
            .iter()
            .map(|a| self.chain(a).map(|(_, r)| r))
            .collect()
    }

    /// Lexicographic comparison of two objects along `attr_order`.
    pub fn lex_compare(&self, x: usize, w: usize, attr_order: &[&str]) -> Result<Ordering> {
        self.check_object(x)?;
        self.check_object(w)?;
        let ranks = self.rank_rows(attr_order)?;
        Ok(ranks
            .iter()
            .map(|r| r[x].cmp(&r[w]))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal))
    }

    /// Coordinatewise comparison over all conditional attributes.
    pub fn product_compare(&self, x: usize, w: usize) -> Result<ProductOrdering> {
        self.check_object(x)?;
        self.check_object(w)?;
        let ranks = self.rank_rows(&self.conditional_attributes())?;
        let (mut le, mut ge) = (true, true);
        for r in &ranks {
            le &= r[x] <= r[w];
            ge &= r[x] >= r[w];
        }
        Ok(match (le, ge) {
            (true, true) => ProductOrdering::Equal,
            (true, false) => ProductOrdering::Less,
            (false, true) => ProductOrdering::Greater,
            (false, false) => ProductOrdering::Incomparable,
        })
    }

    fn check_object(&self, x: usize) -> Result<()> {
        if x < self.objects.len() {
            Ok(())
        } else {
            Err(Error::Bounds {
                index: x,
                size: self.objects.len(),
            })
        }
    }

    /// Writes the table back as CSV with an `id` column first.
    pub fn to_csv(&self, delimiter: u8, separator: char) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .from_writer(Vec::new());
        let mut header = vec!["id".to_string()];
        header.extend(self.attributes.iter().cloned());
        w.write_record(&header).map_err(csv_error)?;
        for (o, id) in self.objects.iter().enumerate() {
            let mut row = vec![id.clone()];
            for column in &self.cells {
                let cell: Vec<String> = column[o].iter().map(Value::to_string).collect();
                row.push(cell.join(&separator.to_string()));
            }
            w.write_record(&row).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Schema(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Schema(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProductOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

fn check_unique(ids: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::Schema(format!("duplicate {what} `{id}`")));
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    let row = e
        .position()
        .map(|p| p.record() as usize)
        .unwrap_or_default();
    Error::Parse {
        row,
        message: e.to_string(),
    }
}

/// Reads a CSV information table. The first column holds object identifiers;
/// the remaining header names are attributes.
pub fn load_table<R: Read>(source: R, options: &LoadOptions) -> Result<InformationTable> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(true)
        .flexible(true)
        .from_reader(source);
    let header = reader.headers().map_err(csv_error)?.clone();
    if header.len() < 2 {
        return Err(Error::Schema(
            "header needs an id column and at least one attribute".into(),
        ));
    }
    let attributes: Vec<String> = header
        .iter()
        .skip(1)
        .map(|h| h.trim().to_string())
        .collect();
    check_unique(&attributes, "header name")?;

    let mut objects = Vec::new();
    let mut cells: Vec<Vec<ValueSet>> = vec![Vec::new(); attributes.len()];
    for (i, record) in reader.records().enumerate() {
        // header is row 0
        let row = i + 1;
        let record = record.map_err(csv_error)?;
        if record.len() != header.len() {
            return Err(Error::Parse {
                row,
                message: format!("expected {} fields, found {}", header.len(), record.len()),
            });
        }
        objects.push(record[0].trim().to_string());
        for (a, field) in record.iter().skip(1).enumerate() {
            if field.trim().is_empty() {
                return Err(Error::Parse {
                    row,
                    message: format!("missing value for attribute `{}`", attributes[a]),
                });
            }
            let mut set = ValueSet::new();
            for part in field.split(options.separator) {
                if part.trim().is_empty() {
                    return Err(Error::Parse {
                        row,
                        message: format!("empty alternative in cell `{field}`"),
                    });
                }
                set.insert(Value::parse(part));
            }
            cells[a].push(set);
        }
    }
    if objects.is_empty() {
        return Err(Error::Schema("table has no rows".into()));
    }
    InformationTable::new(objects, attributes, cells, options.decision.as_deref())
}

/// Kinds of change between two consecutive tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChangeKind {
    #[serde(rename = "O+")]
    ObjectsAdded,
    #[serde(rename = "O-")]
    ObjectsRemoved,
    #[serde(rename = "O±")]
    ObjectsChanged,
    #[serde(rename = "At+")]
    AttributesAdded,
    #[serde(rename = "At-")]
    AttributesRemoved,
    #[serde(rename = "At±")]
    AttributesChanged,
    #[serde(rename = "V+")]
    ValuesModified,
}

/// Object and attribute identity is tracked by identifier equality only.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangeSet {
    /// One tag per changed component (objects, attributes, values), empty if
    /// the tables agree.
    pub kinds: Vec<ChangeKind>,
    pub added_objects: BTreeSet<String>,
    pub removed_objects: BTreeSet<String>,
    pub added_attributes: BTreeSet<String>,
    pub removed_attributes: BTreeSet<String>,
    /// `(attribute, object)` pairs present in both tables with different valuations.
    pub modified_cells: BTreeSet<(String, String)>,
}

impl ChangeSet {
    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }
}

fn set_diff(a: &[String], b: &[String]) -> BTreeSet<String> {
    let b: HashSet<&String> = b.iter().collect();
    a.iter().filter(|x| !b.contains(x)).cloned().collect()
}

fn combined(
    added: bool,
    removed: bool,
    plus: ChangeKind,
    minus: ChangeKind,
    both: ChangeKind,
) -> Option<ChangeKind> {
    match (added, removed) {
        (true, true) => Some(both),
        (true, false) => Some(plus),
        (false, true) => Some(minus),
        (false, false) => None,
    }
}

/// Classifies the transition `before → after`.
pub fn diff_tables(before: &InformationTable, after: &InformationTable) -> ChangeSet {
    let added_objects = set_diff(&after.objects, &before.objects);
    let removed_objects = set_diff(&before.objects, &after.objects);
    let added_attributes = set_diff(&after.attributes, &before.attributes);
    let removed_attributes = set_diff(&before.attributes, &after.attributes);

    let mut modified_cells = BTreeSet::new();
    for (a_before, attr) in before.attributes.iter().enumerate() {
        let Some(a_after) = after.attributes.iter().position(|x| x == attr) else {
            continue;
        };
        for (o_before, obj) in before.objects.iter().enumerate() {
            let Some(o_after) = after.objects.iter().position(|x| x == obj) else {
                continue;
            };
            if before.cells[a_before][o_before] != after.cells[a_after][o_after] {
                modified_cells.insert((attr.clone(), obj.clone()));
            }
        }
    }

    let kinds = [
        combined(
            !added_objects.is_empty(),
            !removed_objects.is_empty(),
            ChangeKind::ObjectsAdded,
            ChangeKind::ObjectsRemoved,
            ChangeKind::ObjectsChanged,
        ),
        combined(
            !added_attributes.is_empty(),
            !removed_attributes.is_empty(),
            ChangeKind::AttributesAdded,
            ChangeKind::AttributesRemoved,
            ChangeKind::AttributesChanged,
        ),
        (!modified_cells.is_empty()).then_some(ChangeKind::ValuesModified),
    ]
    .into_iter()
    .flatten()
    .collect();

    ChangeSet {
        kinds,
        added_objects,
        removed_objects,
        added_attributes,
        removed_attributes,
        modified_cells,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<InformationTable> {
        load_table(text.as_bytes(), &LoadOptions::default())
    }

    fn load_with_decision(text: &str, d: &str) -> InformationTable {
        let options = LoadOptions {
            decision: Some(d.into()),
            ..LoadOptions::default()
        };
        load_table(text.as_bytes(), &options).unwrap()
    }

    #[test]
    fn loads_singleton_table() {
        let t = load_with_decision("id,a,d\nx,1,p\ny,2,q", "d");
        assert_eq!(t.objects(), ["x", "y"]);
        assert_eq!(t.attributes(), ["a", "d"]);
        assert_eq!(t.decision_attribute(), Some("d"));
        assert_eq!(t.conditional_attributes(), vec!["a"]);
        assert!(t.is_deterministic());
        let a = t.valuation(0, 1);
        assert_eq!(a.len(), 1);
        assert_eq!(a.iter().next(), Some(&Value::Num(2.0)));
        assert_eq!(
            t.valuation(1, 0).iter().next(),
            Some(&Value::Cat("p".into()))
        );
    }

    #[test]
    fn separator_makes_indeterministic_cell() {
        let t = load("id,a\nx,1|2\ny,3").unwrap();
        let expected: ValueSet = [Value::Num(1.0), Value::Num(2.0)].into_iter().collect();
        assert_eq!(t.valuation(0, 0), &expected);
        assert!(!t.is_deterministic());
    }

    #[test]
    fn ragged_rows_name_the_row() {
        let err = load("id,a,b\nx,1,2\ny,3").unwrap_err();
        assert!(matches!(err, Error::Parse { row: 2, .. }), "{err:?}");
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(load("id,a,a\nx,1,2"), Err(Error::Schema(_))));
        assert!(matches!(load("id,a\n"), Err(Error::Schema(_))));
        assert!(matches!(load("id,a\nx,1\nx,2"), Err(Error::Schema(_))));
        assert!(matches!(
            load("id,a,b\nx,1,"),
            Err(Error::Parse { row: 1, .. })
        ));
    }

    #[test]
    fn dense_ranks_share_ties() {
        let t = load("id,a\nx,3\ny,1\nz,3").unwrap();
        let ranks = t.column_rank("a").unwrap();
        assert_eq!(ranks["x"], 1);
        assert_eq!(ranks["y"], 0);
        assert_eq!(ranks["z"], 1);
        let single = load("id,a\nx,42").unwrap();
        assert_eq!(single.column_rank("a").unwrap()["x"], 0);
    }

    #[test]
    fn rank_rejects_indeterminate_and_mixed_columns() {
        let t = load("id,a\nx,1|2\ny,3").unwrap();
        assert!(matches!(t.column_rank("a"), Err(Error::Determinism { .. })));
        let t = load("id,a\nx,1\ny,foo").unwrap();
        assert!(matches!(t.column_rank("a"), Err(Error::Ordering { .. })));
    }

    #[test]
    fn categorical_order_from_sidecar() {
        let order = ValueOrder::parse("# grades\nsize: small < medium < large\n").unwrap();
        let t = load("id,size\nx,large\ny,small\nz,medium")
            .unwrap()
            .with_value_order(order);
        let ranks = t.column_rank("size").unwrap();
        assert_eq!((ranks["y"], ranks["z"], ranks["x"]), (0, 1, 2));
        let t = load("id,size\nx,large\ny,small\nz,medium").unwrap();
        let ranks = t.column_rank("size").unwrap();
        assert_eq!((ranks["x"], ranks["z"], ranks["y"]), (0, 1, 2));
        assert!(ValueOrder::parse("size small < large").is_err());
    }

    #[test]
    fn lexicographic_and_product_order() {
        let t = load("id,a,b\nx,1,5\nw,1,7\ny,2,0\nz,1,9\nu,2,3").unwrap();
        let order = ["a", "b"];
        assert_eq!(t.lex_compare(0, 1, &order).unwrap(), Ordering::Less);
        assert_eq!(t.lex_compare(0, 0, &order).unwrap(), Ordering::Equal);
        assert_eq!(t.lex_compare(2, 3, &order).unwrap(), Ordering::Greater);

        let t = load("id,a,b\nx,1,1\nw,2,3\ny,1,3\nz,2,1").unwrap();
        assert_eq!(t.product_compare(0, 1).unwrap(), ProductOrdering::Less);
        assert_eq!(
            t.product_compare(2, 3).unwrap(),
            ProductOrdering::Incomparable
        );
        assert_eq!(t.product_compare(1, 1).unwrap(), ProductOrdering::Equal);
        assert_eq!(t.product_compare(1, 0).unwrap(), ProductOrdering::Greater);
    }

    #[test]
    fn diff_classifies_changes() {
        let t1 = load("id,a,b\nx,1,2\ny,3,4").unwrap();
        assert!(diff_tables(&t1, &t1).is_empty());

        let t2 = load("id,a,b\nx,1,2\ny,3,4\nz,5,6").unwrap();
        let c = diff_tables(&t1, &t2);
        assert_eq!(c.kinds, vec![ChangeKind::ObjectsAdded]);
        assert_eq!(c.added_objects, BTreeSet::from(["z".to_string()]));
        assert!(c.removed_objects.is_empty());

        let t3 = load("id,a,b\nx,1,2\ny,4,4").unwrap();
        let c = diff_tables(&t1, &t3);
        assert_eq!(c.kinds, vec![ChangeKind::ValuesModified]);
        assert_eq!(
            c.modified_cells,
            BTreeSet::from([("a".to_string(), "y".to_string())])
        );

        // drop y, add attribute c
        let t4 = load("id,a,b,c\nx,1,2,0").unwrap();
        let c = diff_tables(&t1, &t4);
        assert_eq!(
            c.kinds,
            vec![ChangeKind::ObjectsRemoved, ChangeKind::AttributesAdded]
        );
        assert_eq!(c.removed_objects, BTreeSet::from(["y".to_string()]));
        assert_eq!(c.added_attributes, BTreeSet::from(["c".to_string()]));
        assert!(c.modified_cells.is_empty());

        let t5 = load("id,a,b\nx,1,2\nq,3,4").unwrap();
        assert_eq!(
            diff_tables(&t1, &t5).kinds,
            vec![ChangeKind::ObjectsChanged]
        );
    }

    #[test]
    fn csv_round_trip() {
        let t = load_with_decision("id,a,b,d\nx,1|2,red,p\ny,3.5,blue,q", "d");
        let text = t.to_csv(b',', '|').unwrap();
        let back = load_with_decision(&text, "d");
        assert_eq!(back, t);
    }
}
