use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hasse_core::group_reps::{
    character_table, field_of_rationality, frobenius_schur, schur_index_quaternion_case, CharacterTable,
    FiniteGroup, SchurOutcome,
};
use hasse_core::langlands_constraints::{check_pair, enumerate_with_limits, ConstraintScenario, InvariantPair};
use hasse_core::{hilbert_symbol, quaternion_class, AbelianField, Limits, RationalPlace};

/// Exact Brauer-group, character-theory and invariant-constraint computations.
#[derive(Parser)]
#[command(name = "hasse", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert symbol (a, b)_v over ℚ; prints 1 or -1.
    Hilbert {
        #[arg(short, allow_negative_numbers = true)]
        a: i64,
        #[arg(short, allow_negative_numbers = true)]
        b: i64,
        /// A prime or `inf`.
        #[arg(long)]
        place: String,
    },
    /// Brauer class of the quaternion algebra (a, b)_ℚ as JSON.
    QuaternionClass {
        #[arg(short, allow_negative_numbers = true)]
        a: i64,
        #[arg(short, allow_negative_numbers = true)]
        b: i64,
    },
    /// Splitting of a rational prime in an abelian field.
    Field {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
    /// Finite group character theory.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Local invariant constraints for a scenario.
    Constraints {
        #[command(subcommand)]
        cmd: ConstraintsCmd,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    Decompose {
        #[arg(long)]
        conductor: u64,
        /// Generators of the subgroup H of (ℤ/m)^×, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        gens: Vec<i64>,
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Args)]
struct GroupSource {
    /// trivial, Cn, Dn, Q8 or Sn.
    #[arg(long, conflicts_with = "table")]
    builtin: Option<String>,
    /// JSON file `{"order": n, "table": [[...], ...]}`.
    #[arg(long)]
    table: Option<PathBuf>,
}

impl GroupSource {
    fn load(&self) -> Result<FiniteGroup> {
        match (&self.builtin, &self.table) {
            (Some(name), _) => Ok(FiniteGroup::builtin(name)?),
            (None, Some(path)) => Ok(FiniteGroup::from_json(&read(path)?)?),
            (None, None) => bail!("one of --builtin or --table is required"),
        }
    }
}

#[derive(Subcommand)]
enum GroupCmd {
    CharTable {
        #[command(flatten)]
        src: GroupSource,
    },
    /// Field of rationality, Frobenius-Schur indicator and quaternion certificate.
    Rationality {
        #[command(flatten)]
        src: GroupSource,
        /// Row index in the character table.
        #[arg(long = "char")]
        character: usize,
    },
}

#[derive(Subcommand)]
enum ConstraintsCmd {
    /// Enumerate all invariant pairs passing every constraint.
    Solve {
        #[arg(long)]
        scenario: PathBuf,
        /// Force the conjectural constraint on.
        #[arg(long)]
        conjecture: bool,
        #[arg(long)]
        max_candidates: Option<u64>,
    },
    /// Report each constraint on one pair.
    Check {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        pair: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_place(s: &str) -> Result<RationalPlace> {
    if s == "inf" || s == "infinity" {
        return Ok(RationalPlace::Infinite);
    }
    let p: u64 = s.parse().with_context(|| format!("bad place {s:?}"))?;
    Ok(RationalPlace::prime(p)?)
}

fn table_json(t: &CharacterTable) -> Value {
    let classes: Vec<Value> = t
        .classes()
        .iter()
        .map(|c| json!({"size": c.size, "representative": c.representative, "order": c.element_order}))
        .collect();
    let chars: Vec<Vec<String>> = t.characters().iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
    json!({
        "order": t.group_order(),
        "exponent": t.exponent(),
        "root_of_unity": format!("z = exp(2*pi*i/{})", t.exponent()),
        "classes": classes,
        "characters": chars,
    })
}

fn run(cli: Cli) -> Result<Value> {
    Ok(match cli.cmd {
        Cmd::Hilbert { a, b, place } => json!(hilbert_symbol(a, b, parse_place(&place)?)?),
        Cmd::QuaternionClass { a, b } => serde_json::to_value(quaternion_class(a, b)?)?,
        Cmd::Field { cmd: FieldCmd::Decompose { conductor, gens, prime } } => {
            let k = AbelianField::new(conductor, &gens)?;
            let d = k.decompose_prime(prime)?;
            let places: Vec<String> = d.places.iter().map(|v| v.to_string()).collect();
            json!({"field": k, "degree": k.degree(), "p": d.p, "e": d.e, "f": d.f, "g": d.g, "places": places})
        }
        Cmd::Group { cmd: GroupCmd::CharTable { src } } => table_json(&character_table(&src.load()?)?),
        Cmd::Group { cmd: GroupCmd::Rationality { src, character } } => {
            let g = src.load()?;
            let t = character_table(&g)?;
            let values: Vec<String> = t.character(character)?.iter().map(|x| x.to_string()).collect();
            let schur = match schur_index_quaternion_case(&g, &t, character)? {
                SchurOutcome::Quaternion { a, b, class } => json!({"kind": "quaternion", "a": a, "b": b, "class": class}),
                SchurOutcome::RationalModel { class } => json!({"kind": "rational_model", "class": class}),
                SchurOutcome::NotImplemented { reason } => json!({"kind": "not_implemented", "reason": reason}),
            };
            json!({
                "character": character,
                "degree": t.degree(character)?,
                "values": values,
                "field_of_rationality": field_of_rationality(&t, character)?,
                "frobenius_schur": frobenius_schur(&t, character)?,
                "schur": schur,
            })
        }
        Cmd::Constraints { cmd: ConstraintsCmd::Solve { scenario, conjecture, max_candidates } } => {
            let mut sc = ConstraintScenario::from_json(&read(&scenario)?)?;
            if conjecture {
                sc = sc.with_conjecture(true);
            }
            let mut limits = Limits::default();
            if let Some(m) = max_candidates {
                limits.max_candidates = m;
            }
            serde_json::to_value(enumerate_with_limits(&sc, &limits)?)?
        }
        Cmd::Constraints { cmd: ConstraintsCmd::Check { scenario, pair } } => {
            let sc = ConstraintScenario::from_json(&read(&scenario)?)?;
            let pair = InvariantPair::from_json(&sc.field, &read(&pair)?)?;
            serde_json::to_value(check_pair(&sc, &pair)?)?
        }
    })
}

fn main() -> Result<()> {
    let out = run(Cli::parse())?;
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}
