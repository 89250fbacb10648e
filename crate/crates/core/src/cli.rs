//! The `nestohedra` command line.
//!
//! Exit codes: 0 on success, 1 when the input or a flag is rejected, 2 when
//! a verification finds a counterexample.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::building::{is_graphical, BuildingSet};
use crate::fan::{verify_fan, FanError, QuotientLattice};
use crate::io::{complex_json, fan_json, parse_input, polytope_json, to_pretty};
use crate::nested::{
    dual_graph, enumerate_complex_with, NestedComplex, NestedError, DEFAULT_MAX_FACES,
};
use crate::oracle::{compare_with_oracles, OracleError};
use crate::polytope::{realize_complex, verify_normal_fan, PolytopeError};
use crate::render::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "nestohedra",
    version,
    about = "Building sets, nested fans and nested polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input JSON file, or `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    pub input: String,
    /// Read the input as a graph and use its graphical building.
    #[arg(long, global = true)]
    pub graph: bool,
    /// Write artifacts into this directory instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random lattice vectors sampled by `verify`.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    /// Stop storing face lists past this many faces.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_FACES)]
    pub max_faces: usize,
    /// Also compare against the brute-force oracles in `verify`.
    #[arg(long, global = true)]
    pub oracle: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check the building axioms and report components, rank and graphicality.
    Validate,
    /// f-vector, maximal nested sets and the dual graph.
    Complex,
    /// Rays and maximal cones of the nested fan.
    Fan,
    /// H-description and exact vertices of the nested polytope.
    Polytope,
    /// Fan axioms, normal-fan equality and optional oracle comparisons.
    Verify,
    /// SVG of the fan and polytope side by side (rank at most 2).
    Render,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
}

/// A failed run with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn invalid(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.to_string(),
    }
}

fn counterexample(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_COUNTEREXAMPLE,
        message: message.to_string(),
    }
}

fn nested_failure(e: NestedError) -> Failure {
    match e {
        NestedError::TooLarge { .. } | NestedError::Building(_) => invalid(e),
        _ => counterexample(e),
    }
}

fn fan_failure(e: FanError) -> Failure {
    match e {
        FanError::Nested(e) => nested_failure(e),
        _ => counterexample(e),
    }
}

fn polytope_failure(e: PolytopeError) -> Failure {
    match e {
        PolytopeError::Nested(e) => nested_failure(e),
        PolytopeError::Fan(e) => fan_failure(e),
        _ => counterexample(e),
    }
}

/// Named artifacts produced by one command.
struct Artifacts(Vec<(&'static str, String)>);

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INVALID;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli, stdin) {
        Ok(artifacts) => match emit(&cli, artifacts, out) {
            Ok(()) => EXIT_OK,
            Err(f) => {
                let _ = writeln!(err, "error: {}", f.message);
                f.code
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(cli: &Cli, artifacts: Artifacts, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.output {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| invalid(format!("{}: {e}", dir.display())))?;
            for (name, body) in &artifacts.0 {
                let path = dir.join(name);
                fs::write(&path, body).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                writeln!(out, "wrote {}", Path::new(name).display()).map_err(invalid)?;
            }
        }
        None => {
            for (_, body) in &artifacts.0 {
                out.write_all(body.as_bytes()).map_err(invalid)?;
            }
        }
    }
    Ok(())
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<BuildingSet, Failure> {
    let text = if cli.input == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| invalid(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(&cli.input).map_err(|e| invalid(format!("{}: {e}", cli.input)))?
    };
    parse_input(&text, cli.graph).map_err(invalid)
}

fn require_format(cli: &Cli, allowed: &[Format], default: Format) -> Result<Format, Failure> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(invalid(format!(
            "format {:?} is not available for this command",
            f
        )))
    }
}

fn complex_of(cli: &Cli, b: &BuildingSet) -> Result<NestedComplex, Failure> {
    enumerate_complex_with(b, cli.max_faces).map_err(nested_failure)
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Artifacts, Failure> {
    let b = read_input(cli, stdin)?;
    match cli.command {
        Command::Validate => validate(cli, &b),
        Command::Complex => {
            let format = require_format(cli, &[Format::Json, Format::Dot], Format::Json)?;
            let c = complex_of(cli, &b)?;
            let dual = dual_graph(&c).map_err(nested_failure)?;
            let json = ("complex.json", to_pretty(&complex_json(&c)));
            let dot = ("dual.dot", dual.to_dot());
            Ok(Artifacts(match (cli.output.is_some(), format) {
                (true, _) => vec![json, dot],
                (false, Format::Dot) => vec![dot],
                (false, _) => vec![json],
            }))
        }
        Command::Fan => {
            require_format(cli, &[Format::Json], Format::Json)?;
            let c = complex_of(cli, &b)?;
            let ql = QuotientLattice::new(&b);
            Ok(Artifacts(vec![("fan.json", to_pretty(&fan_json(&ql, &c)))]))
        }
        Command::Polytope => {
            require_format(cli, &[Format::Json], Format::Json)?;
            let c = complex_of(cli, &b)?;
            let p = realize_complex(&c).map_err(polytope_failure)?;
            Ok(Artifacts(vec![(
                "polytope.json",
                to_pretty(&polytope_json(&p)),
            )]))
        }
        Command::Verify => verify(cli, &b),
        Command::Render => {
            let c = complex_of(cli, &b)?;
            let ql = QuotientLattice::new(&b);
            let p = realize_complex(&c).map_err(polytope_failure)?;
            if c.rank() <= 2 {
                require_format(cli, &[Format::Svg], Format::Svg)?;
                let svg = render_svg(&ql, &c, &p).map_err(invalid)?;
                Ok(Artifacts(vec![("render.svg", svg)]))
            } else {
                require_format(cli, &[Format::Json], Format::Json)?;
                let doc = json!({"fan": fan_json(&ql, &c), "polytope": polytope_json(&p)});
                Ok(Artifacts(vec![("render.json", to_pretty(&doc))]))
            }
        }
    }
}

fn validate(cli: &Cli, b: &BuildingSet) -> Result<Artifacts, Failure> {
    let (graphical, graph) = is_graphical(b);
    let components: Vec<String> = b.components().iter().map(|s| s.label()).collect();
    match require_format(cli, &[Format::Json], Format::Json)
        .ok()
        .and(cli.format)
    {
        Some(_) => {
            let doc = json!({
                "ground_set": b.n(),
                "members": b.len(),
                "components": b.components().iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
                "rank": b.rank(),
                "graphical": graphical,
            });
            Ok(Artifacts(vec![("validate.json", to_pretty(&doc))]))
        }
        None => {
            let mut text = format!(
                "building set on {} elements with {} members\nmaximal members: {}\nrank: {}\n",
                b.n(),
                b.len(),
                components.join(" "),
                b.rank()
            );
            if graphical {
                let edges: Vec<String> = graph
                    .edges()
                    .map(|(s, t)| format!("{}-{}", s + 1, t + 1))
                    .collect();
                text.push_str(&format!("graphical: yes (edges: {})\n", edges.join(" ")));
            } else {
                text.push_str("graphical: no\n");
            }
            Ok(Artifacts(vec![("validate.txt", text)]))
        }
    }
}

fn verify(cli: &Cli, b: &BuildingSet) -> Result<Artifacts, Failure> {
    require_format(cli, &[Format::Json], Format::Json)?;
    let c = complex_of(cli, b)?;
    c.verify_f_recursion().map_err(nested_failure)?;
    let dual = dual_graph(&c).map_err(nested_failure)?;
    let ql = QuotientLattice::new(b);
    let fan = verify_fan(&ql, &c, cli.samples, cli.seed).map_err(fan_failure)?;
    let p = realize_complex(&c).map_err(polytope_failure)?;
    let normal = verify_normal_fan(&c, &p, &dual).map_err(polytope_failure)?;
    let mut doc = json!({
        "f_vector": c.f_vector().coefficients(),
        "dual_graph": {"nodes": dual.nodes.len(), "edges": dual.edges.len()},
        "fan": fan,
        "normal_fan": normal,
        "passed": true,
    });
    if cli.oracle {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let report = match compare_with_oracles(b, 50, &mut rng) {
            Ok(r) => r,
            Err(e @ OracleError::TooLarge { .. }) => return Err(invalid(e)),
            Err(OracleError::Nested(e)) => return Err(nested_failure(e)),
        };
        if let Some(witness) = &report.counterexample {
            return Err(counterexample(format!("oracle disagreement: {witness}")));
        }
        doc["oracle"] = serde_json::to_value(&report).unwrap_or(Value::Null);
    }
    Ok(Artifacts(vec![("verify.json", to_pretty(&doc))]))
}
