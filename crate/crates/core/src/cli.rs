//! Command-line front end. Every command writes one canonical JSON document
//! (an envelope recording the command and seed around the result).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::agrssa::{
    agrssa_lmr, agrssa_m, explain, AgrssaConfig, Explanation, LargeMindedReasoner, LmrOutcome,
    TableChains, ToleranceModel,
};
use crate::approx::{
    accuracy, approximate, non_approximations, rough_pairs, upper_definite_sets, Enumeration,
    GranularApproximation, RoughObjectSpace, DEFAULT_ENUMERATION_BOUND,
};
use crate::blocks::BlockSystem;
use crate::chain::{
    enumerate_chain_congruences, enumerate_chain_glued, enumerate_chain_tolerances,
    ChainBlockSystem,
};
use crate::error::Error;
use crate::sets::IndexSet;
use crate::table::{diff_tables, load_table, ChangeSet, InformationTable, LoadOptions, ValueOrder};
use crate::validation::{
    closeness, validate_clusters, ClusteringFile, ValidationConfig, ValidationReport, Verdict,
};

#[derive(Debug, Parser)]
#[command(
    name = "roughtol",
    version,
    about = "Tolerance-based rough set toolkit"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOptions,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOptions {
    /// Write the JSON result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for sampled enumerations; recorded in every output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Progress messages on standard error (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    /// Field delimiter of table files.
    #[arg(long, global = true, default_value_t = ',')]
    pub delimiter: char,
    /// Separator of multi-valued cells.
    #[arg(long, global = true, default_value_t = '|')]
    pub separator: char,
    /// Sidecar file ordering categorical values (`attr: a < b < c`).
    #[arg(long, global = true)]
    pub value_order: Option<PathBuf>,
    /// Name of the decision column.
    #[arg(long, global = true)]
    pub decision: Option<String>,
    /// Render explanations as text instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score a soft or hard clustering against the blocks of a tolerance.
    Validate {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        clustering: PathBuf,
        #[arg(long)]
        config: PathBuf,
    },
    /// Quantile discretization with one chosen system per attribute.
    AgrssaM {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated object ids to explain besides the decision classes.
        #[arg(long)]
        query: Option<String>,
    },
    /// Rank every tuple in a large-minded reasoner's domain.
    AgrssaLmr {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        query: Option<String>,
    },
    /// List the block systems of chain tolerances of one family.
    Enumerate {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        #[arg(long)]
        n: usize,
    },
    /// Lower and upper approximation of an object set.
    Approx {
        /// Block system JSON, general (`universe_size`, `blocks`) or chain (`n`, `intervals`).
        #[arg(long)]
        blocks: PathBuf,
        /// Comma-separated object indices.
        #[arg(long, default_value = "")]
        set: String,
        /// Also list a rough-object space.
        #[arg(long, value_enum)]
        objects: Option<ObjectsKind>,
        /// Sample this many subsets instead of visiting all of them.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Classify the changes between two tables.
    Diff {
        #[arg(long)]
        before: PathBuf,
        #[arg(long)]
        after: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Tolerance,
    Glued,
    Congruence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectsKind {
    E1,
    E2,
    F,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub command: String,
    pub seed: u64,
    pub result: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateResult {
    pub kind: FamilyKind,
    pub n: usize,
    pub count: usize,
    pub systems: Vec<ChainBlockSystem>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxResult {
    pub approximation: GranularApproximation,
    pub accuracy: f64,
    pub closeness: f64,
    #[serde(default)]
    pub rough_objects: Option<RoughObjectSpace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedExplanation {
    pub label: String,
    pub explanation: Explanation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgrssaMResult {
    pub model: ToleranceModel,
    pub explanations: Vec<NamedExplanation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgrssaLmrResult {
    pub outcome: LmrOutcome,
    /// Explanations per selected model, in ranking order.
    pub explanations: Vec<Vec<NamedExplanation>>,
}

/// Either form of block system accepted by `approx`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum AnyBlocks {
    General(BlockSystem),
    Chain(ChainBlockSystem),
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(PathBuf, io::Error),
    Json(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Lib(e) => e.kind(),
            Failure::Io(..) => "io",
            Failure::Json(_) => "json",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Json(m) => m.clone(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Capacity(_)) => 5,
            Failure::Lib(Error::Domain(_) | Error::Contract(_) | Error::Undefined(_)) => 1,
            _ => 2,
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::Json(format!("{}: {e}", path.display())))
}

/// Canonical serialization: two-space indented JSON with a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable result");
    s.push('\n');
    s
}

fn parse_indices(text: &str) -> Outcome<IndexSet> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>().map_err(|_| {
                Failure::Lib(Error::Parameter(format!("`{t}` is not an object index")))
            })
        })
        .collect()
}

fn parse_names(table: &InformationTable, text: &str) -> Outcome<IndexSet> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| table.object_index(t).map_err(Failure::from))
        .collect()
}

struct Runner<'a> {
    global: &'a GlobalOptions,
}

impl Runner<'_> {
    fn note(&self, level: u8, message: impl FnOnce() -> String) {
        if self.global.verbose >= level {
            eprintln!("{}", message());
        }
    }

    fn load(&self, path: &Path) -> Outcome<InformationTable> {
        let delimiter = u8::try_from(self.global.delimiter).map_err(|_| {
            Failure::Lib(Error::Parameter(
                "delimiter must be a single-byte character".into(),
            ))
        })?;
        let options = LoadOptions {
            delimiter,
            decision: self.global.decision.clone(),
            separator: self.global.separator,
        };
        let file = fs::File::open(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
        let mut table = load_table(file, &options)?;
        if let Some(order) = &self.global.value_order {
            table = table.with_value_order(ValueOrder::parse(&read(order)?)?);
        }
        self.note(1, || {
            format!(
                "loaded {}: {} objects, {} attributes",
                path.display(),
                table.num_objects(),
                table.attributes().len()
            )
        });
        Ok(table)
    }

    fn emit<T: Serialize>(&self, command: &str, result: T) -> Outcome<()> {
        let envelope = Envelope {
            command: command.to_string(),
            seed: self.global.seed,
            result,
        };
        self.write(&canonical_json(&envelope))
    }

    fn write(&self, text: &str) -> Outcome<()> {
        match &self.global.output {
            Some(path) => fs::write(path, text).map_err(|e| Failure::Io(path.clone(), e)),
            None => io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e)),
        }
    }

    fn config(&self, path: Option<&PathBuf>) -> Outcome<AgrssaConfig> {
        path.map_or_else(|| Ok(AgrssaConfig::default()), |p| read_json(p))
    }

    /// Explanations of every decision class and of the optional query.
    fn explanations(
        &self,
        table: &InformationTable,
        model: &ToleranceModel,
        query: Option<&String>,
    ) -> Outcome<Vec<NamedExplanation>> {
        let chains = TableChains::new(table)?;
        let decision = table.decision_attribute().unwrap_or("decision");
        let mut out = Vec::new();
        for class in &chains.classes {
            let first = class.first().expect("decision classes are nonempty");
            out.push(NamedExplanation {
                label: format!("{decision} = {}", chains.decisions[first]),
                explanation: explain(model, class)?,
            });
        }
        if let Some(q) = query {
            out.push(NamedExplanation {
                label: format!("query {q}"),
                explanation: explain(model, &parse_names(table, q)?)?,
            });
        }
        Ok(out)
    }

    fn render(&self, model: &ToleranceModel, explanations: &[NamedExplanation]) -> String {
        let mut text = format!("decision quality {}\n", model.decision_quality);
        for e in explanations {
            text.push_str(&format!("# {}\n", e.label));
            text.push_str(&e.explanation.render(model));
        }
        text
    }

    fn run(&self, command: &Command) -> Outcome<u8> {
        match command {
            Command::Validate {
                table,
                clustering,
                config,
            } => {
                let t = self.load(table)?;
                let file: ClusteringFile = read_json(clustering)?;
                let config: ValidationConfig = read_json(config)?;
                let c = file.resolve(&t)?;
                let report: ValidationReport = validate_clusters(&t, &c, &config)?;
                self.note(1, || format!("{} blocks", report.model.blocks.len()));
                let code = match report.overall.verdict {
                    Verdict::Valid => 0,
                    Verdict::Marginal => 3,
                    Verdict::Invalid => 4,
                };
                self.emit("validate", report)?;
                Ok(code)
            }
            Command::AgrssaM {
                table,
                config,
                query,
            } => {
                let t = self.load(table)?;
                let config = self.config(config.as_ref())?;
                let model = agrssa_m(&t, &config)?;
                let explanations = self.explanations(&t, &model, query.as_ref())?;
                if self.global.pretty {
                    self.write(&self.render(&model, &explanations))?;
                } else {
                    self.emit(
                        "agrssa-m",
                        AgrssaMResult {
                            model,
                            explanations,
                        },
                    )?;
                }
                Ok(0)
            }
            Command::AgrssaLmr {
                table,
                config,
                query,
            } => {
                let t = self.load(table)?;
                let config = self.config(config.as_ref())?;
                let chains = TableChains::new(&t)?;
                let psi: LargeMindedReasoner = config
                    .psi
                    .clone()
                    .unwrap_or_default()
                    .build(&chains, config.cap)?;
                let outcome = agrssa_lmr(&t, &psi, config.delta, config.selection, config.cap)?;
                self.note(1, || format!("evaluated {} tuples", outcome.evaluated));
                let explanations = outcome
                    .models
                    .iter()
                    .map(|m| self.explanations(&t, m, query.as_ref()))
                    .collect::<Outcome<Vec<_>>>()?;
                if self.global.pretty {
                    let mut text = String::new();
                    if let Some(n) = &outcome.notice {
                        text.push_str(&format!("{n}\n"));
                    }
                    for (m, e) in outcome.models.iter().zip(&explanations) {
                        text.push_str(&self.render(m, e));
                    }
                    self.write(&text)?;
                } else {
                    self.emit(
                        "agrssa-lmr",
                        AgrssaLmrResult {
                            outcome,
                            explanations,
                        },
                    )?;
                }
                Ok(0)
            }
            Command::Enumerate { kind, n } => {
                let ubd = match kind {
                    FamilyKind::Tolerance => enumerate_chain_tolerances(*n)?,
                    FamilyKind::Glued => enumerate_chain_glued(*n)?,
                    FamilyKind::Congruence => enumerate_chain_congruences(*n)?,
                };
                let result = EnumerateResult {
                    kind: *kind,
                    n: *n,
                    count: ubd.len(),
                    systems: ubd.systems,
                };
                self.emit("enumerate", result)?;
                Ok(0)
            }
            Command::Approx {
                blocks,
                set,
                objects,
                samples,
            } => {
                let bs = match read_json::<AnyBlocks>(blocks)? {
                    AnyBlocks::General(bs) => bs,
                    AnyBlocks::Chain(c) => c.block_system(),
                };
                let x = parse_indices(set)?;
                let mode = match samples {
                    Some(s) => Enumeration::Sampled {
                        samples: *s,
                        seed: self.global.seed,
                    },
                    None => Enumeration::Exhaustive {
                        bound: DEFAULT_ENUMERATION_BOUND,
                    },
                };
                let rough_objects = match objects {
                    None => None,
                    Some(ObjectsKind::E1) => Some(rough_pairs(&bs, mode)?),
                    Some(ObjectsKind::E2) => Some(upper_definite_sets(&bs, mode)?),
                    Some(ObjectsKind::F) => {
                        Some(non_approximations(&bs, DEFAULT_ENUMERATION_BOUND)?)
                    }
                };
                let result = ApproxResult {
                    approximation: approximate(&bs, &x)?,
                    accuracy: accuracy(&bs, &x)?,
                    closeness: closeness(&bs, &x)?,
                    rough_objects,
                };
                self.emit("approx", result)?;
                Ok(0)
            }
            Command::Diff { before, after } => {
                let changes: ChangeSet = diff_tables(&self.load(before)?, &self.load(after)?);
                self.emit("diff", changes)?;
                Ok(0)
            }
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
}

fn report(kind: &str, message: String) {
    let line = serde_json::to_string(&ErrorReport {
        error: kind,
        message,
    })
    .expect("serializable");
    eprintln!("{line}");
}

/// Parses arguments, runs the command and maps the outcome to an exit status.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            report("usage", e.to_string().trim_end().to_string());
            return ExitCode::from(2);
        }
    };
    let runner = Runner {
        global: &cli.global,
    };
    match runner.run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            report(f.kind(), f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
