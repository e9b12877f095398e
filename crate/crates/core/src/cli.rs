//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage, parse, I/O or validation errors,
//! 2 when a checked property fails or an internal invariant breaks.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analyzers::{
    balance_profile, detect_period, discrepancy, empirical_frequencies, factor_complexity,
};
use crate::builder::{build_stream, certified_k, plan};
use crate::colouring::{colour, colour_words};
use crate::constant_gap::{enumerate_periods, gap_stream, is_constant_gap, GapCheck, GapSpec};
use crate::error::Error;
use crate::exact_arith::{ArithError, FieldElement};
use crate::mechanical::{mechanical_stream, MechanicalParams};
use crate::oracle::{
    brute_balance, brute_complexity, check_constant_gap_periods, check_freq_exists, check_hubert,
    check_main_theorem, check_plus1, random_binary_generator, random_generator,
    random_quadratic_frequencies, random_rational_frequencies, random_slope, GeneratorSpec,
};
use crate::sequences::{take_prefix, FrequencyVector, Word};

const MEASURED_K_LABEL: &str = "measured k (>= true k restricted to seen factors, <= stream k)";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Io(String),
    Validation(String),
    Assertion(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Assertion(_) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Assertion(m) => write!(f, "assertion failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Arith(ArithError::Parse(_))
            | Error::WordFormat(_)
            | Error::GeneratorSpec(_) => CliError::Parse(e.to_string()),
            Error::Invariant(_) => CliError::Assertion(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        Error::from(e).into()
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "balseq",
    about = "Build balanced sequences with prescribed letter frequencies and analyze finite words",
    version
)]
struct Cli {
    /// key=value file mirroring long flags; flags on the command line win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a prefix of the balanced sequence with the given frequencies
    Build(BuildArgs),
    /// Emit a prefix of the lower mechanical word of slope alpha
    Mechanical(MechanicalArgs),
    /// Colour a binary word by two words over disjoint alphabets
    Colour(ColourArgs),
    /// Constant gap sequences
    Cgap {
        #[command(subcommand)]
        command: CgapCommand,
    },
    /// Measure balance, complexity, frequencies, discrepancy and period of a word
    Analyze(AnalyzeArgs),
    /// Check lemmas on seeded random instances, or a word against the brute-force oracles
    Verify(VerifyArgs),
    /// Build and analyze in one step, emitting a single table
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// comma-separated exact frequencies, e.g. "1/2,1/3,1/6"
    #[arg(long)]
    freqs: String,
    /// prefix length
    #[arg(short = 'N')]
    n: usize,
    /// write the word here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// comma-separated metrics: balance, complexity, frequency, discrepancy
    #[arg(long, value_delimiter = ',')]
    report: Vec<Metric>,
    /// write the report here instead of stdout
    #[arg(long)]
    report_out: Option<PathBuf>,
    /// largest window length for balance and complexity
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct MechanicalArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long, default_value = "0")]
    rho: String,
    #[arg(short = 'N')]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ColourArgs {
    /// binary word file or generator spec (smaller symbol plays `a`)
    #[arg(long)]
    u: String,
    /// word file or generator spec replacing occurrences of `a`
    #[arg(long)]
    a: String,
    /// word file or generator spec replacing occurrences of `b`
    #[arg(long)]
    b: String,
    /// output length; defaults to the length of a u word file
    #[arg(short = 'N')]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CgapCommand {
    /// Check whether period^ω has constant gaps
    Check { period: String },
    /// Emit a prefix of period^ω
    Stream {
        period: String,
        #[arg(short = 'N')]
        n: usize,
    },
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    wordfile: PathBuf,
    #[arg(long)]
    balance: bool,
    #[arg(long)]
    complexity: bool,
    #[arg(long)]
    freq: bool,
    #[arg(long)]
    discrepancy: bool,
    #[arg(long)]
    period: bool,
    /// target frequencies for --discrepancy (default: empirical)
    #[arg(long)]
    freqs: Option<String>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, required_unless_present = "against_oracle")]
    lemma: Option<Lemma>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// prefix length (lemma-specific default)
    #[arg(short = 'N')]
    n: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    /// longest period enumerated by the constant-gap check
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    /// compare optimized analyzers with the brute-force oracles on a word file
    #[arg(long, conflicts_with = "lemma")]
    against_oracle: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long)]
    freqs: String,
    #[arg(short = 'N')]
    n: usize,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Metric {
    Balance,
    Complexity,
    Frequency,
    Discrepancy,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Lemma {
    Plus1,
    FreqExists,
    ConstantGap,
    MainTheorem,
    Hubert,
}

/// One output row: `(metric, letter, n, value)`.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub metric: String,
    pub letter: String,
    pub n: String,
    pub value: String,
}

impl Record {
    fn new(metric: &str, letter: impl ToString, n: impl ToString, value: impl ToString) -> Self {
        Record {
            metric: metric.to_string(),
            letter: letter.to_string(),
            n: n.to_string(),
            value: value.to_string(),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn read_word(path: &Path) -> CliResult<Word> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(Word::parse(&text)?)
}

fn write_text(path: Option<&Path>, text: &str, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn render_records(records: &[Record], format: Format) -> CliResult<String> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            for r in records {
                w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
            }
            if records.is_empty() {
                w.write_record(["metric", "letter", "n", "value"])
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(records).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Table => {
            let mut s = String::new();
            for r in records {
                if r.metric == "balance_k" {
                    s.push_str(&format!("{MEASURED_K_LABEL}: {}\n", r.value));
                } else {
                    s.push_str(&format!("{:<16} {:>6} {:>6}  {}\n", r.metric, r.letter, r.n, r.value));
                }
            }
            Ok(s)
        }
    }
}

struct Selection {
    balance: bool,
    complexity: bool,
    frequency: bool,
    discrepancy: bool,
    period: bool,
}

fn analyze_records(
    w: &Word,
    sel: &Selection,
    n_max: Option<usize>,
    target: Option<&FrequencyVector>,
) -> CliResult<Vec<Record>> {
    let mut records = Vec::new();
    if w.is_empty() {
        return Err(Error::EmptyWord.into());
    }
    let n_max = n_max.unwrap_or_else(|| w.len().min(100));
    if sel.balance {
        let profile = balance_profile(w, n_max)?;
        for &a in w.alphabet().symbols() {
            for n in 1..=n_max {
                records.push(Record::new("balance", a, n, profile.deficiency(a, n)));
            }
        }
        records.push(Record::new("balance_k", "", "", profile.k()));
    }
    if sel.complexity {
        let table = factor_complexity(w, n_max)?;
        for (n, c) in table.counts().iter().enumerate() {
            records.push(Record::new("complexity", "", n, c));
        }
    }
    if sel.frequency {
        for (a, f) in empirical_frequencies(w)? {
            records.push(Record::new("frequency", a, w.len(), f));
        }
    }
    if sel.discrepancy {
        let empirical;
        let f = match target {
            Some(f) => f,
            None => {
                let freqs = empirical_frequencies(w)?;
                empirical = FrequencyVector::new(w.alphabet().clone(), freqs.into_values().collect())?;
                &empirical
            }
        };
        let report = discrepancy(w, f)?;
        for (a, b) in &report.per_letter {
            records.push(Record::new("discrepancy", a, "", b));
        }
        records.push(Record::new("discrepancy_max", "", "", &report.overall));
    }
    if sel.period {
        let p = detect_period(w).map_or("none".to_string(), |p| p.to_string());
        records.push(Record::new("period", "", "", p));
    }
    Ok(records)
}

fn parse_freqs(text: &str) -> CliResult<FrequencyVector> {
    Ok(FrequencyVector::parse(text)?)
}

fn cmd_build(args: BuildArgs, out: &mut dyn Write) -> CliResult<()> {
    let f = parse_freqs(&args.freqs)?;
    let w = take_prefix(&mut build_stream(&plan(&f)?), args.n);
    write_text(args.out.as_deref(), &format!("{}\n", w.render()), out)?;
    if args.report.is_empty() {
        return Ok(());
    }
    let sel = Selection {
        balance: args.report.contains(&Metric::Balance),
        complexity: args.report.contains(&Metric::Complexity),
        frequency: args.report.contains(&Metric::Frequency),
        discrepancy: args.report.contains(&Metric::Discrepancy),
        period: false,
    };
    let records = analyze_records(&w, &sel, args.nmax, Some(&f))?;
    write_text(args.report_out.as_deref(), &render_records(&records, args.format)?, out)
}

fn cmd_mechanical(args: MechanicalArgs, out: &mut dyn Write) -> CliResult<()> {
    let alpha: FieldElement = args.alpha.parse()?;
    let rho: FieldElement = args.rho.parse()?;
    let p = MechanicalParams::new(alpha, rho, 1, 2)?;
    let w = take_prefix(&mut mechanical_stream(&p), args.n);
    write_text(args.out.as_deref(), &format!("{}\n", w.render()), out)
}

enum Source {
    Spec(GeneratorSpec),
    File(Word),
}

fn source(arg: &str) -> CliResult<Source> {
    const KINDS: [&str; 6] = ["const:", "periodic:", "cgap:", "mech:", "build:", "shift:"];
    if KINDS.iter().any(|k| arg.trim().starts_with(k)) {
        Ok(Source::Spec(arg.parse()?))
    } else {
        Ok(Source::File(read_word(Path::new(arg))?))
    }
}

fn materialize(src: &Source, len: usize, what: &'static str) -> CliResult<Word> {
    match src {
        Source::Spec(s) => Ok(take_prefix(&mut s.stream()?, len)),
        Source::File(w) if w.len() >= len => Ok(w.factor(0, len)),
        Source::File(_) => Err(Error::Exhausted(what).into()),
    }
}

fn cmd_colour(args: ColourArgs, out: &mut dyn Write) -> CliResult<()> {
    let (u, a, b) = (source(&args.u)?, source(&args.a)?, source(&args.b)?);
    let word = match (&u, &a, &b) {
        (Source::Spec(u), Source::Spec(a), Source::Spec(b)) => {
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("-N is required when every input is a generator spec".into()))?;
            let mut v = colour(u.stream()?, a.stream()?, b.stream()?)?;
            take_prefix(&mut v, n)
        }
        _ => {
            let n = match (&u, args.n) {
                (_, Some(n)) => n,
                (Source::File(w), None) => w.len(),
                (Source::Spec(_), None) => {
                    return Err(CliError::Usage("-N is required when u is a generator spec".into()))
                }
            };
            let u_word = materialize(&u, n, "u-word")?;
            if u_word.alphabet().len() != 2 {
                return Err(Error::NotBinary(u_word.alphabet().len()).into());
            }
            let a_len = u_word.indices().iter().filter(|&&l| l == 0).count();
            let a_word = materialize(&a, a_len, "a-word")?;
            let b_word = materialize(&b, n - a_len, "b-word")?;
            if a_word.is_empty() || b_word.is_empty() {
                // alphabets are still needed for the disjointness check
                let a_full = materialize(&a, a_len.max(1), "a-word")?;
                let b_full = materialize(&b, (n - a_len).max(1), "b-word")?;
                a_full.alphabet().union(b_full.alphabet())?;
            }
            colour_words(&u_word, &a_word, &b_word)?
        }
    };
    write_text(args.out.as_deref(), &format!("{}\n", word.render()), out)
}

fn cmd_cgap(cmd: CgapCommand, out: &mut dyn Write) -> CliResult<()> {
    match cmd {
        CgapCommand::Check { period } => {
            let w = Word::parse(&period)?;
            match is_constant_gap(&w)? {
                GapCheck::Constant => {
                    let spec = GapSpec::new(w)?;
                    let gaps: Vec<String> = spec.gaps().iter().map(|(s, g)| format!("{s}:{g}")).collect();
                    write_text(None, &format!("constant gap: {}\n", gaps.join(" ")), out)
                }
                GapCheck::Irregular {
                    letter,
                    first,
                    second,
                } => Err(CliError::Validation(format!(
                    "not a constant gap sequence: letter {letter}: gaps {first},{second}"
                ))),
            }
        }
        CgapCommand::Stream { period, n } => {
            let spec = GapSpec::new(Word::parse(&period)?)?;
            let w = take_prefix(&mut gap_stream(&spec), n);
            write_text(None, &format!("{}\n", w.render()), out)
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs, out: &mut dyn Write) -> CliResult<()> {
    let w = read_word(&args.wordfile)?;
    let none = !(args.balance || args.complexity || args.freq || args.discrepancy || args.period);
    let sel = Selection {
        balance: args.balance || none,
        complexity: args.complexity || none,
        frequency: args.freq || none,
        discrepancy: args.discrepancy,
        period: args.period || none,
    };
    let target = args.freqs.as_deref().map(parse_freqs).transpose()?;
    let records = analyze_records(&w, &sel, args.nmax, target.as_ref())?;
    write_text(args.out.as_deref(), &render_records(&records, args.format)?, out)
}

fn cmd_report(args: ReportArgs, out: &mut dyn Write) -> CliResult<()> {
    let f = parse_freqs(&args.freqs)?;
    let w = take_prefix(&mut build_stream(&plan(&f)?), args.n);
    let sel = Selection {
        balance: true,
        complexity: true,
        frequency: true,
        discrepancy: true,
        period: true,
    };
    let mut records = vec![Record::new("certified_k", "", "", certified_k(f.len())?)];
    for (a, fa) in f.alphabet().symbols().iter().zip(f.entries()) {
        records.push(Record::new("target_frequency", a, "", fa));
    }
    records.extend(analyze_records(&w, &sel, args.nmax, Some(&f))?);
    write_text(args.out.as_deref(), &render_records(&records, args.format)?, out)
}

fn line(out: &mut dyn Write, text: String) -> CliResult<()> {
    writeln!(out, "{text}").map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    if let Some(path) = &args.against_oracle {
        let w = read_word(path)?;
        if w.is_empty() {
            return Err(Error::EmptyWord.into());
        }
        let n_max = args.nmax.unwrap_or(w.len()).min(w.len());
        let balance_ok = balance_profile(&w, n_max)? == brute_balance(&w, n_max)?;
        let complexity_ok = factor_complexity(&w, n_max)? == brute_complexity(&w, n_max)?;
        line(out, format!("balance_profile vs brute_balance: {}", verdict(balance_ok)))?;
        line(out, format!("factor_complexity vs brute_complexity: {}", verdict(complexity_ok)))?;
        return if balance_ok && complexity_ok {
            Ok(())
        } else {
            Err(CliError::Assertion("optimized analyzer disagrees with oracle".into()))
        };
    }
    let lemma = args.lemma.expect("clap enforces --lemma");
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut failures = 0usize;
    match lemma {
        Lemma::Plus1 => {
            let gaps = enumerate_periods(6, 1, 3);
            let n = args.n.unwrap_or(10_000);
            let n_max = args.nmax.unwrap_or(1000).min(n);
            for t in 0..args.trials {
                let u = random_binary_generator(&mut rng);
                let a = random_generator(&mut rng, 2, &gaps);
                let b = random_generator(&mut rng, 12, &gaps);
                let check = check_plus1(&u, &a, &b, n, n_max)?;
                failures += usize::from(!check.holds());
                line(out, format!(
                    "trial {t}: u={u} a={a} b={b} measured={} bound={} {}",
                    check.measured, check.bound, verdict(check.holds())
                ))?;
            }
        }
        Lemma::FreqExists => {
            let n = args.n.unwrap_or(5000);
            let n_max = args.nmax.unwrap_or(200).min(n);
            for t in 0..args.trials {
                let alpha = random_slope(&mut rng, t % 2 == 1);
                let p = MechanicalParams::with_slope(alpha.clone())?;
                let check = check_freq_exists(&p, n, n_max)?;
                failures += usize::from(!check.holds());
                let detail = match check.violation {
                    Some((len, count)) => format!("violation at n={len} count={count}"),
                    None => "ok".into(),
                };
                line(out, format!("trial {t}: alpha={alpha} {detail}"))?;
            }
        }
        Lemma::ConstantGap => {
            let check = check_constant_gap_periods(args.max_len, 2, 4);
            failures += check.failures.len();
            line(out, format!(
                "constant gap periods of length <= {} on 2-4 letters: {} checked, {} without an equal-frequency pair",
                args.max_len, check.periods, check.failures.len()
            ))?;
        }
        Lemma::MainTheorem => {
            let n = args.n.unwrap_or(10_000);
            let n_max = args.nmax.unwrap_or(1000).min(n);
            for t in 0..args.trials {
                let d = rng.gen_range(2..=8);
                let f = if t % 2 == 0 {
                    random_rational_frequencies(&mut rng, d, 100)
                } else {
                    random_quadratic_frequencies(&mut rng, d)
                };
                let check = check_main_theorem(&f, n, n_max)?;
                failures += usize::from(!check.balance.holds());
                line(out, format!(
                    "trial {t}: d={d} f={} measured={} bound={} max_freq_err={:.2e} {}",
                    f.render(), check.balance.measured, check.balance.bound,
                    check.max_frequency_error, verdict(check.balance.holds())
                ))?;
            }
        }
        Lemma::Hubert => {
            let gaps = enumerate_periods(6, 1, 3);
            let n = args.n.unwrap_or(10_000);
            let n_max = args.nmax.unwrap_or(1000).min(n);
            for t in 0..args.trials {
                let u = MechanicalParams::with_slope(random_slope(&mut rng, true))?;
                let a = pick_gap(&mut rng, &gaps, 0)?;
                let b = pick_gap(&mut rng, &gaps, 10)?;
                let check = check_hubert(&u, &a, &b, n, n_max)?;
                failures += usize::from(!check.holds());
                line(out, format!(
                    "trial {t}: alpha={} a={} b={} measured={} {}",
                    u.alpha(), a.period(), b.period(), check.measured, verdict(check.holds())
                ))?;
            }
        }
    }
    if failures > 0 {
        return Err(CliError::Assertion(format!("{failures} check(s) failed")));
    }
    line(out, "all checks passed".into())
}

fn pick_gap(rng: &mut ChaCha8Rng, gaps: &[Word], offset: u32) -> CliResult<GapSpec> {
    let w = &gaps[rng.gen_range(0..gaps.len())];
    let shifted: Vec<u32> = w.symbols().map(|s| s + offset).collect();
    Ok(GapSpec::new(Word::from_symbols(&shifted)?)?)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

/// Reads `key=value` lines (`#` starts a comment).
fn read_config(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let (k, v) = l
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// Appends config entries whose flag is absent from `args`.
fn merge_config(mut args: Vec<String>) -> CliResult<Vec<String>> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let path = match args[pos].strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => args
            .get(pos + 1)
            .cloned()
            .ok_or_else(|| CliError::Usage("--config needs a file".into()))?,
    };
    let config = read_config(Path::new(&path))?;
    for (key, value) in config {
        let flag = if key.len() == 1 {
            format!("-{key}")
        } else {
            format!("--{key}")
        };
        let present = args
            .iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if present {
            continue;
        }
        match value.as_str() {
            "true" => args.push(flag),
            "false" => {}
            _ => {
                args.push(flag);
                args.push(value);
            }
        }
    }
    Ok(args)
}

/// Runs one command; returns the process exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    match dispatch(args, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn dispatch(args: Vec<String>, out: &mut dyn Write) -> CliResult<()> {
    let args = merge_config(args)?;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            return write_text(None, &e.render().to_string(), out);
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string().trim_end().to_string())),
    };
    match cli.command {
        Command::Build(a) => cmd_build(a, out),
        Command::Mechanical(a) => cmd_mechanical(a, out),
        Command::Colour(a) => cmd_colour(a, out),
        Command::Cgap { command } => cmd_cgap(command, out),
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Report(a) => cmd_report(a, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("balseq").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn build_prints_word() {
        let (code, out, _) = run_capture(&["build", "--freqs", "1/4,1/4,1/4,1/4", "-N", "8"]);
        assert_eq!(code, 0);
        assert_eq!(out, "42314231\n");
    }

    #[test]
    fn cgap_witness() {
        let (code, _, err) = run_capture(&["cgap", "check", "112"]);
        assert_eq!(code, 1);
        assert!(err.contains("letter 1: gaps 1,2"), "{err}");
        let (code, out, _) = run_capture(&["cgap", "check", "121314"]);
        assert_eq!(code, 0);
        assert_eq!(out, "constant gap: 1:2 2:6 3:6 4:6\n");
        let (_, out, _) = run_capture(&["cgap", "stream", "56", "-N", "5"]);
        assert_eq!(out, "56565\n");
    }

    #[test]
    fn error_prefixes() {
        let (code, _, err) = run_capture(&["build", "--freqs", "1/2,x", "-N", "3"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("parse error:"), "{err}");
        let (code, _, err) = run_capture(&["build", "--freqs", "1/2,1/3", "-N", "3"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("validation error:"), "{err}");
        let (code, _, err) = run_capture(&["build", "--bogus"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("usage error:"), "{err}");
        let (code, _, err) = run_capture(&["analyze", "/nonexistent/word.txt"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("io error:"), "{err}");
    }

    #[test]
    fn help_succeeds() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        for sub in ["build", "mechanical", "colour", "cgap", "analyze", "verify", "report"] {
            assert!(out.contains(sub), "{sub} missing from help");
        }
    }

    #[test]
    fn mechanical_word() {
        let (code, out, _) = run_capture(&["mechanical", "--alpha", "(3-sqrt(5))/2", "-N", "10"]);
        assert_eq!(code, 0);
        assert_eq!(out, "2212212122\n");
    }

    #[test]
    fn config_merging() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.cfg");
        fs::write(&cfg, "# experiment\nfreqs = 1/2,1/2\nN = 6\n").unwrap();
        let cfg = cfg.to_str().unwrap();
        let (code, out, _) = run_capture(&["build", "--config", cfg]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out, "212121\n");
        let (_, out, _) = run_capture(&["build", "--config", cfg, "-N", "3"]);
        assert_eq!(out, "212\n");
    }
}
