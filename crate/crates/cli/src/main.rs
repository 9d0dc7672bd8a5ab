//! `p1hall`: evaluate sheaf and Hall-algebra expressions and run the
//! verification suites.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage or
//! parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use p1hall::lie::{sl2_subalgebra_check, verify_rho, RhoReport, Sl2Report};
use p1hall::sheaf::{extensions, hom_count, k0_class};
use p1hall::suite::{self, IdentityRange, SuiteReport, Universe};
use p1hall::{
    oracle, F1Monoid, FinModule, HallElement, HallTensor, Indecomposable, K0Class, ModuleClass,
    ModuleSummand, RhoMode, SheafClass,
};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "p1hall", version, about = "Hall algebra of coherent sheaves on the monoid projective line")]
struct Cli {
    /// Emit one JSON object per line.
    #[arg(long, global = true)]
    json: bool,
    /// Image of h₂ ⊗ tᵐ under ρ.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Corrected)]
    mode: Mode,
    /// Largest index used by `verify`.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    max_index: u32,
    /// Size bound used by `oracle-check`.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    bound: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Corrected,
    PaperLiteral,
}

impl From<Mode> for RhoMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Corrected => RhoMode::Corrected,
            Mode::PaperLiteral => RhoMode::PaperLiteral,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify the module in FILE (`name -> target` lines).
    Classify { file: PathBuf },
    /// Count monomorphisms between two indecomposable sheaves.
    Hom { source: String, target: String },
    /// Convolution product of two Hall elements.
    Product { left: String, right: String },
    /// Coproduct of a Hall element.
    Coproduct { element: String },
    /// Commutator of two Hall elements.
    Bracket { left: String, right: String },
    /// K₀ class of a sheaf.
    K0 { sheaf: String },
    /// Middle terms of extensions of A by B, with multiplicities.
    Extensions { a: String, b: String },
    /// Run the algebraic verification suites.
    Verify,
    /// Compare closed-form counts with brute-force oracles.
    OracleCheck,
}

/// Failures that map to exit status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn parse<T>(what: &str, text: &str) -> Result<T, UsageError>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    text.parse()
        .map_err(|e| UsageError(format!("cannot parse {what} `{text}`: {e}")))
}

fn hall_json(x: &HallElement) -> Value {
    let map: Map<String, Value> = x
        .terms()
        .map(|(f, c)| (f.to_string(), Value::String(c.to_string())))
        .collect();
    Value::Object(map)
}

fn tensor_json(t: &HallTensor) -> Value {
    Value::Array(
        t.terms()
            .map(|((a, b), c)| json!({"left": a.to_string(), "right": b.to_string(), "coeff": c.to_string()}))
            .collect(),
    )
}

fn k0_json(k: &K0Class) -> Value {
    let cyclic: Map<String, Value> = k.cyclic.iter().map(|(m, c)| (m.to_string(), json!(c))).collect();
    json!([k.rank, k.degree, cyclic])
}

fn indecomposable(text: &str) -> Result<Indecomposable, UsageError> {
    parse("indecomposable sheaf", text)
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, text: impl std::fmt::Display, value: Value) {
        if self.json {
            println!("{value}");
        } else {
            println!("{text}");
        }
    }
}

fn run(cli: &Cli) -> Result<bool, UsageError> {
    let out = Output { json: cli.json };
    match &cli.command {
        Command::Classify { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", file.display())))?;
            let module = FinModule::parse(F1Monoid::Pos, &text)?;
            let class = module.classify()?;
            out.emit(&class, json!({"module_class": class.to_string(), "size": module.size()}));
        }
        Command::Hom { source, target } => {
            let (f, g) = (indecomposable(source)?, indecomposable(target)?);
            let n = hom_count(f, g);
            out.emit(n, json!({"hom": [f.to_string(), g.to_string()], "count": n}));
        }
        Command::Product { left, right } => {
            let (x, y): (HallElement, HallElement) = (parse("Hall element", left)?, parse("Hall element", right)?);
            let p = x.star(&y);
            out.emit(&p, hall_json(&p));
        }
        Command::Bracket { left, right } => {
            let (x, y): (HallElement, HallElement) = (parse("Hall element", left)?, parse("Hall element", right)?);
            let b = x.bracket(&y);
            out.emit(&b, hall_json(&b));
        }
        Command::Coproduct { element } => {
            let x: HallElement = parse("Hall element", element)?;
            let t = x.coproduct();
            out.emit(&t, tensor_json(&t));
        }
        Command::K0 { sheaf } => {
            let f: SheafClass = parse("sheaf", sheaf)?;
            let k = k0_class(&f);
            out.emit(&k, json!({"sheaf": f.to_string(), "k0": k0_json(&k)}));
        }
        Command::Extensions { a, b } => {
            let (a, b): (SheafClass, SheafClass) = (parse("sheaf", a)?, parse("sheaf", b)?);
            for (f, count) in extensions(&a, &b) {
                out.emit(format!("{count}*[{f}]"), json!({"sheaf": f.to_string(), "count": count}));
            }
        }
        Command::Verify => return Ok(verify(cli, &out)),
        Command::OracleCheck => return Ok(oracle_check(cli.bound, &out)),
    }
    Ok(true)
}

fn report_suite(out: &Output, r: &SuiteReport) -> bool {
    let value = json!({
        "suite": r.name,
        "ok": r.passed(),
        "checks": r.checks,
        "failures": r.failure_count,
        "first_failure": r.first_failure(),
    });
    if out.json {
        println!("{value}");
    } else {
        println!("{r}");
        if let Some(f) = r.first_failure() {
            println!("  counterexample: {f}");
        }
    }
    r.passed()
}

fn report_rho(out: &Output, r: &RhoReport) -> bool {
    if out.json {
        for p in &r.pairs {
            println!(
                "{}",
                json!({
                    "pair": [p.pair.0.to_string(), p.pair.1.to_string()],
                    "lhs": p.lhs.to_string(),
                    "rhs": p.rhs.to_string(),
                    "ok": p.ok,
                })
            );
        }
        let kernel: Vec<String> = r.kernel.iter().map(ToString::to_string).collect();
        let unspanned: Vec<String> = r.unspanned.iter().map(ToString::to_string).collect();
        println!(
            "{}",
            json!({
                "suite": format!("rho ({})", r.mode),
                "ok": r.passed(),
                "checks": r.pairs.len(),
                "kernel": kernel,
                "unspanned": unspanned,
            })
        );
    } else {
        let ok = |b: bool| if b { "ok" } else { "FAILED" };
        println!(
            "rho ({}): {} ({} pairs; brackets {}, injective {}, primitives spanned {})",
            r.mode,
            ok(r.passed()),
            r.pairs.len(),
            ok(r.brackets_ok()),
            ok(r.injective()),
            ok(r.spans_primitives()),
        );
        if let Some(p) = r.first_failure() {
            println!("  counterexample: [{}, {}]: {} != {}", p.pair.0, p.pair.1, p.lhs, p.rhs);
        } else if let Some(k) = r.kernel.first() {
            println!("  counterexample: rho({k}) = 0");
        } else if let Some(f) = r.unspanned.first() {
            println!("  counterexample: [{f}] is not in the image");
        }
    }
    r.passed()
}

fn report_sl2(out: &Output, r: &Sl2Report) -> bool {
    if out.json {
        for rel in &r.relations {
            println!(
                "{}",
                json!({"relation": rel.name, "lhs": rel.lhs.to_string(), "rhs": rel.rhs.to_string(), "ok": rel.ok})
            );
        }
    } else {
        let status = if r.passed() { "ok" } else { "FAILED" };
        println!("sl2 subalgebra: {status} ({} relations)", r.relations.len());
        if let Some(rel) = r.relations.iter().find(|rel| !rel.ok) {
            println!("  counterexample: {}: {} != {}", rel.name, rel.lhs, rel.rhs);
        }
    }
    r.passed()
}

fn verify(cli: &Cli, out: &Output) -> bool {
    let n = cli.max_index;
    let u = Universe { max_rank: 2, max_weight: n, max_cyclic: n.min(3) };
    let range = IdentityRange { max_degree: i64::from(n), max_index: n };
    let suites: [&dyn Fn() -> SuiteReport; 12] = [
        &|| suite::associativity(&u),
        &|| suite::coassociativity(&u),
        &|| suite::cocommutativity(&u),
        &|| suite::bialgebra(&u),
        &|| suite::unit_counit(&u),
        &|| suite::grading(&u),
        &|| suite::primitivity(&u),
        &|| suite::extension_completeness(&u),
        &|| suite::k0_additivity(&u),
        &|| suite::k0_injectivity(&u),
        &|| suite::product_identity_suite(&range),
        &|| suite::commutator_suite(&range),
    ];
    let mut ok = true;
    for run in suites {
        ok &= report_suite(out, &run());
    }
    ok &= report_rho(out, &verify_rho(n, cli.mode.into()));
    ok &= report_sl2(out, &sl2_subalgebra_check(n));
    ok
}

/// Nonzero normal maps `⟨t⟩ → T(k)` number exactly `k`.
fn free_map_suite(bound: u32) -> SuiteReport {
    let mut r = SuiteReport {
        name: "free module maps".into(),
        ..SuiteReport::default()
    };
    for k in 1..=bound {
        let t = ModuleClass::new(vec![ModuleSummand::Torsion(k)], 0)
            .realize()
            .expect("finite class");
        let count = oracle::free_normal_maps(&t);
        r.checks += 1;
        if count != u64::from(k) {
            r.failure_count += 1;
            r.failures.push(format!("<t> -> T({k}): {count} maps"));
        }
    }
    r
}

fn oracle_check(bound: u32, out: &Output) -> bool {
    let reports = [
        suite::line_hom_table(5),
        suite::torsion_hom_table(bound),
        suite::submodule_oracle(bound),
        suite::line_oracle(3, bound),
        suite::classification_roundtrip(bound),
        free_map_suite(bound),
    ];
    let mut ok = true;
    for r in &reports {
        ok &= report_suite(out, r);
    }
    ok
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
