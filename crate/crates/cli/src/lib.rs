//! Command-line front end for `arcshift-core`.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive it
//! with in-memory streams. Exit codes: 0 success, 1 domain error, 2 input
//! error.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use arcshift_core::codec::{parse, parse_script, script_inline, serialize, serialize_script};
use arcshift_core::families::{gen_canonical, gen_l2n1, gen_lpq, gen_random, gen_torus, FamilyError};
use arcshift_core::invariants::{InvariantReport, ParityMatrix};
use arcshift_core::planner::{equivalent, replay, unknot, PlanError};
use arcshift_core::search::{bracket, Bracket, LowerBound, SearchBudget, UpperSource};
use arcshift_core::{GaussDiagram, MoveScript};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub mod report;

use report::{BoundsJson, ClassifyJson, DiagramJson, EqJson, InvJson, UnknotJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "arcshift", version)]
#[command(about = "Gauss diagrams of virtual links: invariants, arc shift unknotting and bounds")]
pub struct Cli {
    /// Print machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a diagram file is well formed
    Validate { input: PathBuf },
    /// Print every invariant of a diagram
    Inv { input: PathBuf },
    /// Print the parity matrix and the canonical representative of the class
    Classify { input: PathBuf },
    /// Decide arc shift equivalence of two diagrams
    Eq {
        first: PathBuf,
        second: PathBuf,
        /// Also print a move script from the first diagram to the second
        #[arg(long)]
        witness: bool,
    },
    /// Print a move script taking a homogeneous proper diagram to the unlink
    Unknot {
        input: PathBuf,
        /// Write the script to this file
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Bracket the arc shift number of a diagram
    Bounds {
        input: PathBuf,
        /// Maximum number of arc shifts to search
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Maximum number of distinct states to visit
        #[arg(long, default_value_t = 200_000)]
        states: usize,
        /// Maximum number of chords in any visited state
        #[arg(long, default_value_t = 16)]
        max_chords: usize,
        /// Also explore R3 moves during the search
        #[arg(long)]
        r3: bool,
    },
    /// Print the mirror image of a diagram
    Mirror { input: PathBuf },
    /// Replay a move script on a diagram and print the result
    Apply { input: PathBuf, script: PathBuf },
    /// Generate a member of a link family
    Gen(GenArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: Family,
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// Canonical representative with the given parity bits
    Canonical {
        /// Number of components
        components: usize,
        /// Set the bit for component I over component J (1-based), as I,J
        #[arg(long = "bit", value_parser = parse_bit)]
        bits: Vec<(usize, usize)>,
    },
    /// Two components with vlk(2,1) = P and vlk(1,2) = Q
    Lpq {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
    },
    /// 2N-1 positive chords from component 1 over component 2
    L2n1 {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// The (2,4N) virtual torus link
    Torus {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Random diagram from a seeded generator
    Random {
        #[arg(long, default_value_t = 2)]
        components: usize,
        #[arg(long, default_value_t = 4)]
        chords: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Redraw until every virtual linking number is even
        #[arg(long)]
        homogeneous: bool,
    },
}

fn parse_bit(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s.split_once(',').ok_or_else(|| format!("expected I,J, got '{s}'"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .ok()
            .filter(|&v| v >= 1)
            .ok_or_else(|| format!("component index must be a positive integer, got '{t}'"))
    };
    Ok((num(i)?, num(j)?))
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }
}

impl From<PlanError> for Failure {
    fn from(e: PlanError) -> Self {
        Failure::domain(e.to_string())
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::RejectionBudget { .. } => Failure::domain(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        if path == Path::new("-") {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::input(format!("standard input: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
        }
    }

    fn diagram(&mut self, path: &Path) -> Result<GaussDiagram, Failure> {
        let text = self.read(path)?;
        parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }

    fn script(&mut self, path: &Path) -> Result<MoveScript, Failure> {
        let text = self.read(path)?;
        parse_script(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let out: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { stdin };
    match execute(&cli, &mut io) {
        Ok(text) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(_) => EXIT_INPUT,
        },
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn execute(cli: &Cli, io: &mut Io<'_>) -> Result<String, Failure> {
    match &cli.command {
        Command::Validate { input } => {
            let d = io.diagram(input)?;
            Ok(if cli.json {
                json(&serde_json::json!({
                    "valid": true,
                    "components": d.num_components(),
                    "chords": d.num_chords(),
                }))
            } else {
                format!("valid: {} components, {} chords\n", d.num_components(), d.num_chords())
            })
        }
        Command::Inv { input } => {
            let r = InvariantReport::of(&io.diagram(input)?);
            Ok(if cli.json {
                json(&InvJson::from(&r))
            } else {
                report::inv_text(&r)
            })
        }
        Command::Classify { input } => {
            let d = io.diagram(input)?;
            let parity = ParityMatrix::of(&d);
            let c = ClassifyJson {
                components: d.num_components(),
                parity: parity.to_string(),
                canonical: serialize(&gen_canonical(&parity)),
                homogeneous_proper: parity.is_zero(),
            };
            Ok(if cli.json { json(&c) } else { c.text() })
        }
        Command::Eq { first, second, witness } => {
            let a = io.diagram(first)?;
            let b = io.diagram(second)?;
            let e = equivalent(&a, &b, *witness)?;
            let r = EqJson {
                equivalent: e.equivalent,
                parity_first: ParityMatrix::of(&a).to_string(),
                parity_second: ParityMatrix::of(&b).to_string(),
                witness: e.witness.as_ref().map(script_inline),
            };
            Ok(if cli.json { json(&r) } else { r.text() })
        }
        Command::Unknot { input, script } => {
            let d = io.diagram(input)?;
            let s = unknot(&d)?;
            if let Some(path) = script {
                fs::write(path, serialize_script(&s))
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            }
            let r = UnknotJson {
                arc_shifts: s.arc_shift_cost(),
                moves: s.len(),
                script: script_inline(&s),
            };
            Ok(if cli.json { json(&r) } else { r.text() })
        }
        Command::Bounds {
            input,
            depth,
            states,
            max_chords,
            r3,
        } => {
            if *depth == 0 || *states == 0 || *max_chords == 0 {
                return Err(Failure::input("search budgets must be positive"));
            }
            let d = io.diagram(input)?;
            let budget = SearchBudget {
                max_arc_shifts: *depth,
                max_states: *states,
                max_chords_inflight: *max_chords,
                allow_r3: *r3,
            };
            let b = bracket(&d, budget);
            let r = bounds_report(&d, &b);
            Ok(if cli.json { json(&r) } else { r.text() })
        }
        Command::Mirror { input } => {
            let m = io.diagram(input)?.mirror();
            Ok(if cli.json {
                json(&DiagramJson::from(&m))
            } else {
                format!("{}\n", serialize(&m))
            })
        }
        Command::Apply { input, script } => {
            let d = io.diagram(input)?;
            let s = io.script(script)?;
            let out = replay(&d, &s).map_err(|e| Failure::domain(e.to_string()))?;
            Ok(if cli.json {
                json(&DiagramJson::from(&out))
            } else {
                format!("{}\n", serialize(&out))
            })
        }
        Command::Gen(g) => {
            let d = generate(&g.family)?;
            Ok(if cli.json {
                json(&DiagramJson::from(&d))
            } else {
                format!("{}\n", serialize(&d))
            })
        }
    }
}

fn generate(f: &Family) -> Result<GaussDiagram, Failure> {
    Ok(match *f {
        Family::Canonical { components, ref bits } => {
            if components == 0 {
                return Err(Failure::input("canonical needs at least one component"));
            }
            let mut m = ParityMatrix::zero(components);
            for &(i, j) in bits {
                if i > components || j > components || i == j {
                    return Err(Failure::input(format!("bad bit {i},{j} for {components} components")));
                }
                m.set(i - 1, j - 1, true);
            }
            gen_canonical(&m)
        }
        Family::Lpq { p, q } => gen_lpq(p, q),
        Family::L2n1 { n } => gen_l2n1(n)?,
        Family::Torus { n } => gen_torus(n)?,
        Family::Random {
            components,
            chords,
            seed,
            homogeneous,
        } => gen_random(components, chords, seed, homogeneous)?,
    })
}

fn bounds_report(d: &GaussDiagram, b: &Bracket) -> BoundsJson {
    BoundsJson {
        lower: match b.lower {
            LowerBound::Obstructed => None,
            LowerBound::AtLeast(k) => Some(k),
        },
        obstructed: b.lower == LowerBound::Obstructed,
        parity: ParityMatrix::of(d).to_string(),
        upper: b.upper.as_ref().map(|(k, _)| *k),
        exact: b.exact,
        witness: b.upper.as_ref().map(|(_, w)| script_inline(w)),
        upper_source: b.upper_source.map(|s| match s {
            UpperSource::Search => "search",
            UpperSource::Planner => "planner",
        }),
        states: b.states,
        budget: b.status.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], stdin: &str) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["arcshift"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bit_argument() {
        assert_eq!(parse_bit("1,2"), Ok((1, 2)));
        assert!(parse_bit("0,2").is_err());
        assert!(parse_bit("12").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["validate", "-"], "U1+ ; O1+").0, EXIT_OK);
        assert_eq!(run_str(&["validate", "-"], "O1+ ; U1-").0, EXIT_INPUT);
        assert_eq!(run_str(&["unknot", "-"], "U1+ ; O1+").0, EXIT_DOMAIN);
        assert_eq!(run_str(&["frobnicate"], "").0, EXIT_INPUT);
        assert_eq!(run_str(&["bounds", "-", "--depth", "0"], ";").0, EXIT_INPUT);
        let (code, out, _) = run_str(&["--help"], "");
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("Usage"));
    }

    #[test]
    fn sign_mismatch_message() {
        let (_, _, err) = run_str(&["inv", "-"], "O1+ ; U1-");
        assert!(err.contains("sign mismatch for chord 1"), "{err}");
    }

    #[test]
    fn gen_canonical_rejects_diagonal_bit() {
        assert_eq!(run_str(&["gen", "canonical", "2", "--bit", "1,1"], "").0, EXIT_INPUT);
        assert_eq!(run_str(&["gen", "canonical", "2", "--bit", "1,3"], "").0, EXIT_INPUT);
    }
}
