use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use quasiminor::battery;
use quasiminor::collection::{base_collection, CollectionJson, WSCollection};
use quasiminor::dihedral::DihedralElement;
use quasiminor::enumerate::{dihedral_orbits, enumerate_component, summarize};
use quasiminor::error::Error;
use quasiminor::exec::Execution;
use quasiminor::positivity::{
    integer_nodes, positivity_test, restrict, values_from_json, values_to_json, vandermonde_point,
    Verdict,
};
use quasiminor::reduction3::{f_set, generate_w3, lift, pinch_point, project};
use quasiminor::separation::{minor_exponent, plucker_exponent, stieffel_subset, weakly_separated_checked};
use quasiminor::subset::{parse_indices, KSubset, MinorIndex};
use quasiminor::transitivity::{height, reduce_to_base};
use quasiminor::wiring::{chambers, is_optimal, is_wiring_parametrizable, validate_word, word_collection, ReducedWord};

#[derive(Parser)]
#[command(name = "quasiminor", version, about = "Weakly separated collections and quasi-commuting quantum minors")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for enumeration and sweeps.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Weak separation of two index sets.
    WsCheck {
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        /// Ground set size; defaults to the largest index.
        #[arg(long)]
        n: Option<u8>,
    },
    /// Commutation exponent of two minors (--a --b --c --d --k --m) or of
    /// two Plücker coordinates (--i --j [--n]).
    Exponent(ExponentArgs),
    /// Image of a minor under the Stieffel map.
    Stieffel {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        k: u8,
        #[arg(long)]
        m: u8,
    },
    /// Move-graph component of a seed (default: the base collection).
    Enumerate {
        #[arg(long)]
        k: u8,
        #[arg(long)]
        n: u8,
        #[arg(long)]
        count_only: bool,
        /// Collection JSON file to start from; `-` reads stdin.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Dihedral orbits of the enumeration.
    Orbits {
        #[arg(long)]
        k: u8,
        #[arg(long)]
        n: u8,
    },
    /// Move sequence from a collection to the base collection.
    ReduceBase {
        #[arg(long)]
        input: String,
    },
    /// Chambers and collection of a shuffled reduced word.
    Wiring(WiringArgs),
    /// Projection of a W(3,n) collection and its pinch point.
    Reduce {
        #[arg(long)]
        input: String,
    },
    /// Lift of a W(3,n-1) collection at index b.
    Lift {
        #[arg(long)]
        input: String,
        #[arg(long)]
        b: u8,
    },
    /// W(3,n) generated by repeated lifting.
    GenW3 {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        count_only: bool,
    },
    /// Propagate Plücker values from a maximal collection.
    Positivity(PositivityArgs),
    /// Symbolic cross-check battery.
    OracleVerify {
        #[arg(long, default_value = "small")]
        suite: String,
    },
}

#[derive(Args)]
struct ExponentArgs {
    #[arg(long, requires_all = ["b", "c", "d", "k", "m"])]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    k: Option<u8>,
    #[arg(long)]
    m: Option<u8>,
    #[arg(long, conflicts_with = "a", requires = "j")]
    i: Option<String>,
    #[arg(long)]
    j: Option<String>,
    #[arg(long)]
    n: Option<u8>,
}

#[derive(Args)]
struct WiringArgs {
    /// Word such as "2 1r 1 2 3 2r 2 1 4 1r 3 2 1".
    #[arg(long, conflicts_with = "parametrizable")]
    word: Option<String>,
    /// File with one word per line.
    #[arg(long, conflicts_with_all = ["word", "parametrizable"])]
    words_file: Option<String>,
    #[arg(long)]
    k: Option<u8>,
    #[arg(long)]
    m: Option<u8>,
    /// Collection JSON (k = 2) to test for wiring parametrizability.
    #[arg(long)]
    parametrizable: Option<String>,
}

#[derive(Args)]
struct PositivityArgs {
    #[arg(long)]
    input: String,
    /// Values JSON such as {"[1,3]": "2"}.
    #[arg(long, required_unless_present = "vandermonde")]
    values: Option<String>,
    /// Use the minors of the Vandermonde point with these positive nodes.
    #[arg(long)]
    vandermonde: Option<String>,
    /// Floating point arithmetic instead of exact rationals.
    #[arg(long)]
    float: bool,
}

/// Records for stdout plus whether the answer is negative.
struct Outcome {
    records: Vec<Value>,
    negative: bool,
}

impl Outcome {
    fn one(v: Value) -> Self {
        Self { records: vec![v], negative: false }
    }

    fn negative_if(mut self, neg: bool) -> Self {
        self.negative = neg;
        self
    }
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Assertion(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("invalid JSON: {e}"))
    }
}

type CmdResult = Result<Outcome, Failure>;

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn read_collection(path: &str) -> Result<WSCollection, Failure> {
    let j: CollectionJson = serde_json::from_str(&read_source(path)?)?;
    Ok(WSCollection::try_from(j)?)
}

fn indices(s: &str) -> Result<Vec<u8>, Failure> {
    parse_indices(s)?
        .into_iter()
        .map(|x| u8::try_from(x).map_err(|_| Failure::Usage(format!("index {x} too large"))))
        .collect()
}

fn subset_pair(i: &str, j: &str, n: Option<u8>) -> Result<(KSubset, KSubset), Failure> {
    let (a, b) = (indices(i)?, indices(j)?);
    let n = n.unwrap_or_else(|| a.iter().chain(&b).copied().max().unwrap_or(1));
    Ok((KSubset::new(n, a)?, KSubset::new(n, b)?))
}

fn collection_json(c: &WSCollection) -> Value {
    serde_json::to_value(c).expect("serializable")
}

fn ws_check(i: &str, j: &str, n: Option<u8>) -> CmdResult {
    let (a, b) = subset_pair(i, j, n)?;
    let ws = weakly_separated_checked(&a, &b)?;
    Ok(Outcome::one(json!({ "weakly_separated": ws })).negative_if(!ws))
}

fn exponent(args: &ExponentArgs) -> CmdResult {
    let c = if let Some(a) = &args.a {
        let (k, m) = (args.k.expect("required"), args.m.expect("required"));
        let p = MinorIndex::from_slices(&indices(a)?, &indices(args.b.as_deref().expect("required"))?, k, m)?;
        let r = MinorIndex::from_slices(
            &indices(args.c.as_deref().expect("required"))?,
            &indices(args.d.as_deref().expect("required"))?,
            k,
            m,
        )?;
        minor_exponent(&p, &r)?
    } else if let (Some(i), Some(j)) = (&args.i, &args.j) {
        let (a, b) = subset_pair(i, j, args.n)?;
        plucker_exponent(&a, &b)?
    } else {
        return Err(Failure::Usage("give either --a --b --c --d --k --m or --i --j".into()));
    };
    Ok(Outcome::one(json!({ "c": c })).negative_if(c.is_none()))
}

fn stieffel(a: &str, b: &str, k: u8, m: u8) -> CmdResult {
    let mi = MinorIndex::from_slices(&indices(a)?, &indices(b)?, k, m)?;
    let s = stieffel_subset(&mi);
    Ok(Outcome::one(json!({ "set": s, "n": s.ground() })))
}

fn enumerate(k: u8, n: u8, count_only: bool, seed: Option<&str>, exec: Execution) -> CmdResult {
    let seed = match seed {
        Some(path) => read_collection(path)?,
        None => base_collection(k, n)?,
    };
    if (seed.k(), seed.n()) != (k, n) {
        return Err(Failure::Usage(format!("seed lies in W({},{})", seed.k(), seed.n())));
    }
    let all = enumerate_component(&seed, exec)?;
    if count_only {
        return Ok(Outcome::one(json!({ "count": all.len() })));
    }
    let mut records: Vec<Value> = all.iter().map(collection_json).collect();
    records.push(json!({ "summary": summarize(&all)? }));
    Ok(Outcome { records, negative: false })
}

fn orbits(k: u8, n: u8, exec: Execution) -> CmdResult {
    let all = enumerate_component(&base_collection(k, n)?, exec)?;
    let orbits = dihedral_orbits(&all)?;
    let list: Vec<Value> =
        orbits.iter().map(|o| json!({ "size": o.len(), "representative": collection_json(&o[0]) })).collect();
    Ok(Outcome::one(json!({ "count": all.len(), "orbit_count": orbits.len(), "orbits": list })))
}

fn reduce_base(input: &str) -> CmdResult {
    let c = read_collection(input)?;
    let red = reduce_to_base(&c)?;
    let path = red.replay(&c)?;
    let reached = path.last() == Some(&base_collection(c.k(), c.n())?);
    if !reached {
        return Err(Failure::Internal("reduction did not end at the base collection".into()));
    }
    let witness = red.witness.map(|g: DihedralElement| json!({ "rotation": g.rotation(), "reflected": g.is_reflection() }));
    Ok(Outcome::one(json!({
        "height": height(&c),
        "witness": witness,
        "length": red.moves.len(),
        "moves": red.moves,
        "reached_base": reached,
    })))
}

fn wiring(args: &WiringArgs, exec: Execution) -> CmdResult {
    if let Some(path) = &args.parametrizable {
        let c = read_collection(path)?;
        let p = is_wiring_parametrizable(&c)?;
        return Ok(Outcome::one(json!({ "parametrizable": p })).negative_if(!p));
    }
    let words: Vec<String> = match (&args.word, &args.words_file) {
        (Some(w), _) => vec![w.clone()],
        (None, Some(path)) => read_source(path)?.lines().filter(|l| !l.trim().is_empty()).map(String::from).collect(),
        (None, None) => return Err(Failure::Usage("give --word, --words-file or --parametrizable".into())),
    };
    let parse = |s: &str| match (args.k, args.m) {
        (Some(k), Some(m)) => ReducedWord::parse(s, k, m),
        _ => ReducedWord::parse_inferred(s),
    };
    let parsed = words.iter().map(|w| parse(w)).collect::<Result<Vec<_>, _>>()?;
    let reports = quasiminor::exec::map(exec, &parsed, |w| -> Result<Value, Error> {
        let valid = validate_word(w);
        let optimal = is_optimal(w);
        let mut rec = json!({ "word": w.to_string(), "k": w.k(), "m": w.m(), "valid": valid, "optimal": optimal });
        if valid && w.k() <= w.m() {
            rec["chambers"] = serde_json::to_value(chambers(w)?).expect("serializable");
        }
        if optimal {
            let c = word_collection(w)?;
            rec["maximal"] = json!(c.is_maximal());
            rec["collection"] = collection_json(&c);
        }
        Ok(rec)
    });
    let records = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
    let negative = records.iter().any(|r| r["optimal"] != json!(true));
    Ok(Outcome { records, negative })
}

fn reduce(input: &str) -> CmdResult {
    let c = read_collection(input)?;
    let projected = project(&c)?;
    let b = pinch_point(&c)?;
    Ok(Outcome::one(json!({ "projection": collection_json(&projected), "pinch_point": b })))
}

fn lift_cmd(input: &str, b: u8) -> CmdResult {
    let c = read_collection(input)?;
    let fs = f_set(&c)?;
    if !fs.contains(&b) {
        return Err(Failure::Usage(format!("{b} is not a lifting index; valid indices: {fs:?}")));
    }
    Ok(Outcome::one(collection_json(&lift(&c, b)?)))
}

fn gen_w3(n: u8, count_only: bool, exec: Execution) -> CmdResult {
    let all = generate_w3(n, exec)?;
    let mut records: Vec<Value> = if count_only { Vec::new() } else { all.iter().map(collection_json).collect() };
    records.push(json!({ "count": all.len() }));
    Ok(Outcome { records, negative: false })
}

fn positivity(args: &PositivityArgs) -> CmdResult {
    let c = read_collection(&args.input)?;
    let vals = match (&args.values, &args.vandermonde) {
        (Some(path), _) => values_from_json(&serde_json::from_str(&read_source(path)?)?, c.n())?,
        (None, Some(nodes)) => {
            let xs: Vec<i64> = parse_indices(nodes)?.into_iter().map(i64::from).collect();
            if xs.len() != c.n() as usize {
                return Err(Failure::Usage(format!("need {} nodes", c.n())));
            }
            restrict(&vandermonde_point(&integer_nodes(&xs), c.k())?.plucker_vector(), &c)
        }
        (None, None) => return Err(Failure::Usage("give --values or --vandermonde".into())),
    };
    let on_c = restrict(&vals, &c);
    let (verdict, values, witness) = if args.float {
        let fv: BTreeMap<KSubset, f64> = on_c.iter().map(|(s, v)| (*s, num_to_f64(v))).collect();
        match positivity_test(&c, &fv)? {
            Verdict::Positive(v) => {
                let map: serde_json::Map<String, Value> = v.iter().map(|(s, x)| (format!("[{s}]"), json!(x))).collect();
                ("positive", Value::Object(map), None)
            }
            Verdict::NotDetermined { witness, reason } => ("not-determined", Value::Null, Some((witness, reason))),
        }
    } else {
        match positivity_test(&c, &on_c)? {
            Verdict::Positive(v) => ("positive", values_to_json(&v), None),
            Verdict::NotDetermined { witness, reason } => ("not-determined", Value::Null, Some((witness, reason))),
        }
    };
    let mut rec = json!({ "verdict": verdict, "values": values });
    if let Some((w, reason)) = &witness {
        rec["witness"] = json!(w);
        rec["reason"] = json!(reason);
    }
    Ok(Outcome::one(rec).negative_if(witness.is_some()))
}

fn num_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn oracle_verify(suite: &str, exec: Execution) -> CmdResult {
    let report = battery::run_suite(suite, exec)?;
    let ok = report.ok();
    Ok(Outcome::one(serde_json::to_value(report).expect("serializable")).negative_if(!ok))
}

fn run(cli: &Cli, exec: Execution) -> CmdResult {
    match &cli.command {
        Command::WsCheck { i, j, n } => ws_check(i, j, *n),
        Command::Exponent(args) => exponent(args),
        Command::Stieffel { a, b, k, m } => stieffel(a, b, *k, *m),
        Command::Enumerate { k, n, count_only, seed } => enumerate(*k, *n, *count_only, seed.as_deref(), exec),
        Command::Orbits { k, n } => orbits(*k, *n, exec),
        Command::ReduceBase { input } => reduce_base(input),
        Command::Wiring(args) => wiring(args, exec),
        Command::Reduce { input } => reduce(input),
        Command::Lift { input, b } => lift_cmd(input, *b),
        Command::GenW3 { n, count_only } => gen_w3(*n, *count_only, exec),
        Command::Positivity(args) => positivity(args),
        Command::OracleVerify { suite } => oracle_verify(suite, exec),
    }
}

fn render_text(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| match x {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn emit(records: &[Value], format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    for r in records {
        match format {
            Format::Json => writeln!(out, "{r}")?,
            Format::Text => writeln!(out, "{}", render_text(r))?,
        }
    }
    out.flush()
}

#[cfg(feature = "parallel")]
fn with_jobs(jobs: usize, f: impl FnOnce(Execution) -> CmdResult + Send) -> CmdResult {
    if jobs <= 1 {
        return f(Execution::Sequential);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Internal(format!("thread pool: {e}")))?;
    pool.install(|| f(Execution::Parallel))
}

#[cfg(not(feature = "parallel"))]
fn with_jobs(_jobs: usize, f: impl FnOnce(Execution) -> CmdResult) -> CmdResult {
    f(Execution::Sequential)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = with_jobs(cli.jobs, |exec| run(&cli, exec));
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.records, cli.format) {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            ExitCode::from(if outcome.negative { 1 } else { 0 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
