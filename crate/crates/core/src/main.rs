use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mixprod::harness::{
    format_terms, invariants_document, parse_terms, run_sweep_with_jobs, InvariantsDocument, MethodChoice,
    ReportBlock, SweepConfig, SweepReport,
};
use mixprod::{
    alexander_dual, koszul_cycle_witness, minimal_primes, realize_spec, syzygy_witness, verify_koszul_cycle,
    verify_syzygy_witness, Ambient, FieldSpec, MixedProductSpec, Term,
};

#[derive(Parser)]
#[command(name = "mixprod", version, about = "Invariants of mixed product monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, depth, pd, regularity and Cohen–Macaulayness
    Invariants {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long, default_value = "q", value_parser = parse_field)]
        field: FieldSpec,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Graded Betti table of S/I
    Betti {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value = "q", value_parser = parse_field)]
        field: FieldSpec,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare formulas against the oracle on every small spec
    Sweep {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_m: usize,
        #[arg(long, default_value = "q", value_parser = parse_fields)]
        fields: FieldList,
        #[arg(long)]
        jobs: Option<usize>,
        /// Skip syzygy and Koszul witness verification
        #[arg(long)]
        skip_witness: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print and verify the syzygy and Koszul-cycle witnesses
    Witness {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Alexander dual and minimal primes
    Dual {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct IdealArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Terms as `k,l` pairs joined by `+`, e.g. `1,2+2,1` for I_1J_2 + I_2J_1
    #[arg(long, value_parser = parse_term_list)]
    terms: TermList,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Also write the JSON report to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone)]
struct TermList(Vec<Term>);

#[derive(Clone)]
struct FieldList(Vec<FieldSpec>);

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: mixprod::Error| e.to_string())
}

fn parse_fields(s: &str) -> Result<FieldList, String> {
    s.split(',').map(parse_field).collect::<Result<_, _>>().map(FieldList)
}

fn parse_term_list(s: &str) -> Result<TermList, String> {
    parse_terms(s).map(TermList).map_err(|e| e.to_string())
}

/// Failure after argument parsing; maps to exit status 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn build_spec(args: &IdealArgs) -> Result<MixedProductSpec, Failure> {
    let ambient = Ambient::new(args.n, args.m)?;
    Ok(MixedProductSpec::canonical(ambient, args.terms.0.clone())?)
}

fn emit<T: Serialize>(output: &OutputArgs, value: &T, table: impl FnOnce() -> String) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(value)?;
    if let Some(path) = &output.out {
        fs::write(path, format!("{json}\n"))?;
    }
    let mut stdout = std::io::stdout().lock();
    match output.format {
        Format::Json => writeln!(stdout, "{json}")?,
        Format::Table => write!(stdout, "{}", table())?,
    }
    Ok(())
}

fn header(spec: &MixedProductSpec) -> String {
    format!("ideal: {}  [terms {}]\n", spec, format_terms(spec.terms()))
}

fn invariants_table(spec: &MixedProductSpec, doc: &InvariantsDocument) -> String {
    let mut out = header(spec);
    out.push_str(&format!("field: {}\n", doc.field));
    let cols: Vec<(&str, &ReportBlock)> = [("formula", doc.formula.as_ref()), ("oracle", doc.oracle.as_ref())]
        .into_iter()
        .filter_map(|(name, b)| b.map(|b| (name, b)))
        .collect();
    if cols.is_empty() {
        return out;
    }
    out.push_str(&format!("{:<14}", "invariant"));
    for (name, _) in &cols {
        out.push_str(&format!("{name:>16}"));
    }
    out.push('\n');
    let rows: [(&str, fn(&ReportBlock) -> String); 8] = [
        ("dim", |b| b.dim.to_string()),
        ("depth", |b| b.depth.to_string()),
        ("pd", |b| b.pd.to_string()),
        ("reg(I)", |b| b.reg_ideal.to_string()),
        ("reg(S/I)", |b| b.reg_quotient.to_string()),
        ("height", |b| b.height.to_string()),
        ("cm", |b| b.cm.to_string()),
        ("case", |b| b.case.map_or("-".to_string(), |c| c.to_string())),
    ];
    for (name, get) in rows {
        out.push_str(&format!("{name:<14}"));
        for (_, b) in &cols {
            out.push_str(&format!("{:>16}", get(b)));
        }
        out.push('\n');
    }
    if !doc.agrees() {
        out.push_str("MISMATCH: formula and oracle disagree\n");
    }
    out
}

fn betti_table(spec: &MixedProductSpec, doc: &InvariantsDocument) -> String {
    let mut out = header(spec);
    out.push_str(&format!("field: {}\n{:>4} {:>4} {:>8}\n", doc.field, "i", "j", "beta"));
    for [i, j, r] in doc.betti.iter().flatten() {
        out.push_str(&format!("{i:>4} {j:>4} {r:>8}\n"));
    }
    out
}

fn cmd_invariants(ideal: &IdealArgs, method: MethodArg, field: FieldSpec, output: &OutputArgs) -> Outcome {
    let spec = build_spec(ideal)?;
    let method = match method {
        MethodArg::Formula => MethodChoice::Formula,
        MethodArg::Oracle => MethodChoice::Oracle,
        MethodArg::Both => MethodChoice::Both,
    };
    let doc = invariants_document(&spec, method, field, false)?;
    emit(output, &doc, || invariants_table(&spec, &doc))?;
    Ok(doc.agrees())
}

fn cmd_betti(ideal: &IdealArgs, field: FieldSpec, output: &OutputArgs) -> Outcome {
    let spec = build_spec(ideal)?;
    let doc = invariants_document(&spec, MethodChoice::Oracle, field, true)?;
    emit(output, &doc, || betti_table(&spec, &doc))?;
    Ok(true)
}

fn cmd_sweep(cfg: SweepConfig, jobs: Option<usize>, output: &OutputArgs) -> Outcome {
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let report = run_sweep_with_jobs(&cfg, jobs)?;
    emit(output, &report, || sweep_table(&report))?;
    Ok(report.passed())
}

fn sweep_table(report: &SweepReport) -> String {
    let fields: Vec<String> = report.config.fields.iter().map(|f| f.to_string()).collect();
    let mut out = format!(
        "sweep n<={} m<={} fields={}\ncases run: {}\nmismatches: {}\nwitness failures: {}\nelapsed: {:.2}s\n",
        report.config.max_n,
        report.config.max_m,
        fields.join(","),
        report.cases_run,
        report.mismatches.len(),
        report.witness_failures.len(),
        report.elapsed_secs
    );
    for m in &report.mismatches {
        out.push_str(&format!(
            "  ({},{}) {:?} over {}: {} formula={:?} oracle={:?}\n",
            m.spec.ambient.n, m.spec.ambient.m, m.spec.ideal, m.field, m.invariant, m.formula, m.oracle
        ));
    }
    for w in &report.witness_failures {
        out.push_str(&format!("  ({},{}) {:?}: {} {}\n", w.spec.ambient.n, w.spec.ambient.m, w.spec.ideal, w.witness, w.detail));
    }
    out.push_str(if report.passed() { "PASS\n" } else { "FAIL\n" });
    out
}

#[derive(Serialize)]
struct WitnessDocument {
    syzygy: Option<SyzygyView>,
    koszul: Option<KoszulView>,
}

#[derive(Serialize)]
struct SyzygyView {
    u: String,
    v: String,
    cofactor_u: String,
    cofactor_v: String,
    internal_degree: usize,
    verified: bool,
}

#[derive(Serialize)]
struct KoszulView {
    summands: Vec<String>,
    verified: bool,
}

fn cmd_witness(ideal: &IdealArgs, output: &OutputArgs) -> Outcome {
    let spec = build_spec(ideal)?;
    let amb = spec.ambient();
    let syzygy = (spec.terms().len() == 2)
        .then(|| syzygy_witness(&spec))
        .transpose()?
        .map(|w| SyzygyView {
            u: amb.format_monomial(w.u),
            v: amb.format_monomial(w.v),
            cofactor_u: amb.format_monomial(w.cofactor_u),
            cofactor_v: amb.format_monomial(w.cofactor_v),
            internal_degree: w.internal_degree,
            verified: verify_syzygy_witness(&w),
        });
    let koszul = koszul_cycle_witness(amb).ok().map(|w| KoszulView {
        summands: w
            .summands
            .iter()
            .map(|s| {
                let fs: Vec<String> = (1..=amb.m()).filter(|&j| j != s.omitted_y).map(|j| format!("f{j}")).collect();
                let es: Vec<String> = (1..=amb.n()).map(|i| format!("e{i}")).collect();
                let sign = if s.sign > 0 { "+" } else { "-" };
                format!("{sign}{}*{}", amb.format_monomial(s.coefficient), [es, fs].concat().join("^"))
            })
            .collect(),
        verified: verify_koszul_cycle(&w),
    });
    if syzygy.is_none() && koszul.is_none() {
        return Err(Failure("no witness applies: need two terms or both blocks nonempty".into()));
    }
    let ok = syzygy.as_ref().is_none_or(|s| s.verified) && koszul.as_ref().is_none_or(|k| k.verified);
    let doc = WitnessDocument { syzygy, koszul };
    emit(output, &doc, || {
        let mut out = header(&spec);
        if let Some(s) = &doc.syzygy {
            out.push_str(&format!(
                "syzygy: {}*e[{}] - {}*e[{}]  degree {}  verified {}\n",
                s.cofactor_u, s.u, s.cofactor_v, s.v, s.internal_degree, s.verified
            ));
        }
        if let Some(k) = &doc.koszul {
            out.push_str(&format!("koszul cycle for I1J1: {}  verified {}\n", k.summands.join(" "), k.verified));
        }
        out
    })?;
    Ok(ok)
}

#[derive(Serialize)]
struct DualDocument {
    ideal: Vec<String>,
    dual: Vec<String>,
    minimal_primes: Vec<Vec<String>>,
}

fn cmd_dual(ideal: &IdealArgs, output: &OutputArgs) -> Outcome {
    let spec = build_spec(ideal)?;
    let amb = spec.ambient();
    let i = realize_spec(&spec);
    let dual = alexander_dual(&i, amb.full())?;
    let primes = minimal_primes(&i)?;
    let doc = DualDocument {
        ideal: i.gens().iter().map(|g| amb.format_monomial(*g)).collect(),
        dual: dual.gens().iter().map(|g| amb.format_monomial(*g)).collect(),
        minimal_primes: primes.iter().map(|p| p.indices().map(|v| amb.var_name(v)).collect()).collect(),
    };
    emit(output, &doc, || {
        let primes: Vec<String> = doc.minimal_primes.iter().map(|p| format!("({})", p.join(","))).collect();
        format!(
            "{}generators: {}\nalexander dual: {}\nminimal primes: {}\n",
            header(&spec),
            i,
            dual,
            primes.join(" ")
        )
    })?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Invariants { ideal, method, field, output } => cmd_invariants(ideal, *method, *field, output),
        Command::Betti { ideal, field, output } => cmd_betti(ideal, *field, output),
        Command::Sweep { max_n, max_m, fields, jobs, skip_witness, output } => {
            let mut cfg = SweepConfig::new(*max_n, *max_m, fields.0.clone());
            cfg.include_witness_checks = !skip_witness;
            cmd_sweep(cfg, *jobs, output)
        }
        Command::Witness { ideal, output } => cmd_witness(ideal, output),
        Command::Dual { ideal, output } => cmd_dual(ideal, output),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
