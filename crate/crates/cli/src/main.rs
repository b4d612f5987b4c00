//! `sl2ext`: Ext and cohomology dimensions for SL2 from the command line.

mod output;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sl2ext::golden::dim_string;
use sl2ext::h2::{ext2_self_tower, h2_dim, TowerSpec};
use sl2ext::strings::{count_c_strings, enumerate_b_strings, partitions_of_unity};
use sl2ext::trace::expand_trace;
use sl2ext::verify::{self, Suite};
use sl2ext::{
    table_r_twist, table_self_twist, wall_reduce_sl3, Characteristic, ExtEngine, MemoStore, Sl3Weight, Weight,
};

use output::{join, status_name, Envelope, Format, OutputRecord, StringRecord, TraceRecord, WitnessRecord};

#[derive(Debug, Parser)]
#[command(name = "sl2ext", version, about = "Exact Ext and cohomology dimensions for SL2 in characteristic p")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Maximum number of items an enumeration may produce.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// dim Ext^q(Δ(weyl), L(simple)).
    Ext(ExtArgs),
    /// dim H^m(G, L(simple)), i.e. ext with weyl = 0.
    Coh(CohArgs),
    /// Tables of H^m over twisted weights in characteristic two.
    Table(TableArgs),
    /// Enumerate or count a-, b-, c-strings and partitions of one.
    #[command(subcommand)]
    Strings(StringsCommand),
    /// Second cohomology for p > 3, or Ext^2 of the tensor tower.
    H2(H2Args),
    /// Reduce an SL3 Ext along the β wall to SL2.
    WallReduce(WallArgs),
    /// Run built-in verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ExtArgs {
    #[arg(short = 'p')]
    p: u32,
    #[arg(short = 'q')]
    q: u32,
    #[arg(long)]
    weyl: Weight,
    #[arg(long)]
    simple: Weight,
    /// List every expansion path (p = 2, weyl = 0 only).
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct CohArgs {
    #[arg(short = 'p')]
    p: u32,
    #[arg(short = 'm', visible_short_alias = 'q')]
    m: u32,
    #[arg(long)]
    simple: Weight,
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableKind {
    SelfTwist,
    RTwist,
}

#[derive(Debug, Args)]
struct TableArgs {
    kind: TableKind,
    /// Odd multiplier for r-twist tables: weights r·2^(m-2).
    #[arg(short = 'r')]
    r: Option<u64>,
    #[arg(long)]
    min_m: Option<u32>,
    #[arg(long)]
    max_m: u32,
}

#[derive(Debug, Subcommand)]
enum StringsCommand {
    /// Expansion paths (a-strings) of H^m(G, L(simple)) at p = 2.
    A {
        #[arg(short = 'm')]
        m: u32,
        #[arg(long)]
        simple: Weight,
    },
    /// b-strings of degree m and length n.
    B {
        #[arg(short = 'm')]
        m: u32,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Number of c-strings of length k.
    C {
        #[arg(short = 'k')]
        k: u32,
    },
    /// Number of partitions of one into m powers of 1/2.
    Partitions {
        #[arg(short = 'm')]
        m: u32,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "target")]
struct H2Target {
    #[arg(long)]
    simple: Option<Weight>,
    /// Height n of V_n = L(1) ⊗ L(1)^[1] ⊗ ... ⊗ L(1)^[n].
    #[arg(long)]
    tower: Option<u32>,
}

#[derive(Debug, Args)]
struct H2Args {
    #[arg(short = 'p')]
    p: u32,
    #[command(flatten)]
    target: H2Target,
}

#[derive(Debug, Args)]
struct WallArgs {
    #[arg(short = 'p')]
    p: u32,
    #[arg(short = 'q')]
    q: u32,
    /// SL3 weight as a1,a2.
    #[arg(long, value_parser = parse_pair)]
    weyl: Sl3Weight,
    #[arg(long, value_parser = parse_pair)]
    simple: Sl3Weight,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Tables,
    Theorem1,
    H2Cross,
    Bijection,
    Stability,
    Bounds,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Theorem1 => Suite::Theorem1,
            SuiteArg::H2Cross => Suite::H2Cross,
            SuiteArg::Bijection => Suite::Bijection,
            SuiteArg::Stability => Suite::Stability,
            SuiteArg::Bounds => Suite::Bounds,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    suite: SuiteArg,
    /// A table previously written by `table` (CSV or JSON) to re-verify.
    #[arg(long)]
    input: Option<std::path::PathBuf>,
}

fn parse_pair(s: &str) -> Result<Sl3Weight, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a1,a2, got {s:?}"))?;
    let a: Weight = a.parse().map_err(|e: sl2ext::Error| e.to_string())?;
    let b: Weight = b.parse().map_err(|e: sl2ext::Error| e.to_string())?;
    Ok(Sl3Weight::new(a, b))
}

enum Failure {
    Usage(String),
    CapExceeded(usize),
    Mismatch,
}

impl From<sl2ext::Error> for Failure {
    fn from(e: sl2ext::Error) -> Self {
        match e {
            sl2ext::Error::CapExceeded { cap } => Failure::CapExceeded(cap),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn characteristic(p: u32) -> Result<Characteristic, Failure> {
    Ok(Characteristic::new(p)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Ext(ref a) => cmd_ext(&mut out, &cli, a.p, a.q, a.weyl.clone(), a.simple.clone(), a.trace),
        Command::Coh(ref a) => cmd_ext(&mut out, &cli, a.p, a.m, Weight::zero(), a.simple.clone(), a.trace),
        Command::Table(ref a) => cmd_table(&mut out, &cli, a),
        Command::Strings(ref s) => cmd_strings(&mut out, &cli, s),
        Command::H2(ref a) => cmd_h2(&mut out, &cli, a),
        Command::WallReduce(ref a) => cmd_wall(&mut out, &cli, a),
        Command::Verify(ref a) => cmd_verify(&mut out, &cli, a),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::CapExceeded(cap)) => {
            eprintln!("error: enumeration exceeded --cap {cap}");
            ExitCode::from(3)
        }
    }
}

fn emit_single<W: Write>(out: &mut W, cli: &Cli, p: u32, record: OutputRecord) -> CmdResult {
    match cli.format {
        Format::Text => writeln!(out, "{}", record.dim)?,
        Format::Csv => {
            writeln!(out, "m,weight,dim")?;
            writeln!(out, "{},{},{}", record.q, record.simple, record.dim)?;
        }
        Format::Json => output::write_json(out, &Envelope { p, results: vec![record] })?,
    }
    Ok(())
}

fn cmd_ext<W: Write>(out: &mut W, cli: &Cli, p: u32, q: u32, weyl: Weight, simple: Weight, trace: bool) -> CmdResult {
    let pc = characteristic(p)?;
    if trace && (p != 2 || !weyl.is_zero()) {
        return Err(Failure::Usage("--trace needs -p 2 and --weyl 0".into()));
    }
    if trace && q == 0 {
        return Err(Failure::Usage("--trace needs a positive degree".into()));
    }
    let dim = ExtEngine::new(pc).ext_dim(q, &weyl, &simple);
    let mut record = OutputRecord::new(q, &weyl, &simple, &dim);
    if trace {
        let traces = expand_trace(q, &simple, cli.cap)?;
        if cli.format == Format::Text {
            writeln!(out, "{}", record.dim)?;
            for t in &traces {
                match &t.leaf {
                    Some((w, s)) => writeln!(
                        out,
                        "a-string {} {} leaf Ext^0(Δ({w}),L({s}))",
                        join(&t.choices),
                        status_name(t.status)
                    )?,
                    None => writeln!(out, "a-string {} {}", join(&t.choices), status_name(t.status))?,
                }
            }
            return Ok(());
        }
        record.trace = Some(traces.iter().map(TraceRecord::from).collect());
    }
    emit_single(out, cli, p, record)
}

fn cmd_table<W: Write>(out: &mut W, cli: &Cli, a: &TableArgs) -> CmdResult {
    let rows = match a.kind {
        TableKind::SelfTwist => {
            if a.r.is_some() {
                return Err(Failure::Usage("-r applies to r-twist tables only".into()));
            }
            let min = a.min_m.unwrap_or(1);
            if min == 0 {
                return Err(Failure::Usage("--min-m must be at least 1".into()));
            }
            table_self_twist(a.max_m).into_iter().filter(|r| r.m >= min).collect()
        }
        TableKind::RTwist => {
            let r = a.r.ok_or_else(|| Failure::Usage("r-twist tables need -r".into()))?;
            let min = a.min_m.unwrap_or(if r == 3 { 3 } else { 2 });
            table_r_twist(r, min, a.max_m)?
        }
    };
    output::write_rows(out, &rows, cli.format)?;
    Ok(())
}

fn cmd_strings<W: Write>(out: &mut W, cli: &Cli, s: &StringsCommand) -> CmdResult {
    match *s {
        StringsCommand::A { m, ref simple } => cmd_ext(out, cli, 2, m, Weight::zero(), simple.clone(), true),
        StringsCommand::B { m, n } => {
            let bs = enumerate_b_strings(m, n, cli.cap)?;
            match cli.format {
                Format::Text => {
                    writeln!(out, "{}", bs.len())?;
                    for b in &bs {
                        writeln!(out, "b {} a {}", join(b.entries()), join(b.a_string().entries()))?;
                    }
                }
                Format::Csv => {
                    writeln!(out, "b_string,a_string")?;
                    for b in &bs {
                        writeln!(out, "\"{}\",\"{}\"", join(b.entries()), join(b.a_string().entries()))?;
                    }
                }
                Format::Json => {
                    let simple = Weight::power_of_two(n as u32);
                    let mut record = OutputRecord::new(m, &Weight::zero(), &simple, &bs.len().into());
                    record.label = Some(format!("b-strings m={m} n={n}"));
                    record.strings = Some(
                        bs.iter()
                            .map(|b| StringRecord {
                                b_string: b.entries().to_vec(),
                                a_string: b.a_string().entries().to_vec(),
                            })
                            .collect(),
                    );
                    output::write_json(out, &Envelope { p: 2, results: vec![record] })?;
                }
            }
            Ok(())
        }
        StringsCommand::C { k } => {
            if k == 0 {
                return Err(Failure::Usage("c-strings need k >= 1".into()));
            }
            let mut record = OutputRecord::new(k + 1, &Weight::zero(), &Weight::power_of_two(k + 1), &count_c_strings(k));
            record.label = Some(format!("c-strings k={k}"));
            emit_single(out, cli, 2, record)
        }
        StringsCommand::Partitions { m } => {
            if m == 0 {
                return Err(Failure::Usage("partitions need m >= 1".into()));
            }
            let mut record = OutputRecord::new(m, &Weight::zero(), &Weight::power_of_two(m), &partitions_of_unity(m));
            record.label = Some(format!("partitions of 1 into {m} powers of 1/2"));
            emit_single(out, cli, 2, record)
        }
    }
}

fn cmd_h2<W: Write>(out: &mut W, cli: &Cli, a: &H2Args) -> CmdResult {
    let p = characteristic(a.p)?;
    if let Some(n) = a.target.tower {
        let dim = ext2_self_tower(TowerSpec::new(n, p)?);
        let mut record = OutputRecord::new(2, &Weight::zero(), &Weight::zero(), &dim);
        record.label = Some(format!("Ext^2(V_{n},V_{n})"));
        return emit_single(out, cli, a.p, record);
    }
    let simple = a.target.simple.clone().expect("clap enforces one target");
    let (dim, witness) = h2_dim(&simple, p)?;
    if cli.format == Format::Text {
        writeln!(
            out,
            "{} ({}, twist {})",
            dim_string(&dim),
            output::reason_name(witness.reason),
            witness.twist
        )?;
        return Ok(());
    }
    let mut record = OutputRecord::new(2, &Weight::zero(), &simple, &dim);
    record.witness = Some(WitnessRecord::from(&witness));
    emit_single(out, cli, a.p, record)
}

fn cmd_wall<W: Write>(out: &mut W, cli: &Cli, a: &WallArgs) -> CmdResult {
    let p = characteristic(a.p)?;
    let dim = wall_reduce_sl3(&a.weyl, &a.simple, a.q, p, &mut MemoStore::new())?;
    let mut record = OutputRecord::new(a.q, &a.weyl.a2, &a.simple.a2, &dim);
    record.weyl = format!("{},{}", a.weyl.a1, a.weyl.a2);
    record.simple = format!("{},{}", a.simple.a1, a.simple.a2);
    match cli.format {
        Format::Csv => {
            writeln!(out, "q,weyl,simple,dim")?;
            writeln!(out, "{},\"{}\",\"{}\",{}", record.q, record.weyl, record.simple, record.dim)?;
            Ok(())
        }
        _ => emit_single(out, cli, a.p, record),
    }
}

fn cmd_verify<W: Write>(out: &mut W, cli: &Cli, a: &VerifyArgs) -> CmdResult {
    let report = match &a.input {
        Some(path) => {
            if !matches!(a.suite, SuiteArg::Tables) {
                return Err(Failure::Usage("--input is only meaningful with the tables suite".into()));
            }
            let content = fs::read_to_string(path)?;
            verify::check_rows(&output::parse_rows(&content)?)
        }
        None => verify::run(a.suite.into()),
    };
    let total = report.checks.len();
    let failed = report.failures().count();
    match cli.format {
        Format::Json => {
            let doc = serde_json::json!({
                "passed": report.passed(),
                "checks": report.checks.iter().map(|c| serde_json::json!({
                    "suite": c.suite,
                    "name": c.name,
                    "expected": c.expected,
                    "actual": c.actual,
                    "passed": c.passed,
                })).collect::<Vec<_>>(),
            });
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(io::Error::other)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "suite,check,expected,actual,passed")?;
            let mut w = csv::Writer::from_writer(&mut *out);
            for c in &report.checks {
                w.write_record([c.suite, &c.name, &c.expected, &c.actual, if c.passed { "true" } else { "false" }])
                    .map_err(io::Error::other)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for c in &report.checks {
                writeln!(out, "{c}")?;
            }
            writeln!(out, "{} of {total} checks passed", total - failed)?;
            for c in report.failures() {
                writeln!(out, "mismatch: {} expected {} actual {}", c.name, c.expected, c.actual)?;
            }
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}
