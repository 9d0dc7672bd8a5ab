//! Acceptance checks. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use p1hall::lie::{sl2_e, sl2_h, sl2_subalgebra_check, verify_rho};
use p1hall::oracle::submodule_profile;
use p1hall::suite::{self, IdentityRange, Universe};
use p1hall::{
    Error, F1Monoid, FinModule, HallElement, Indecomposable, LieBasisVector, LieElement,
    ModuleClass, ModuleSummand, Point, Rational, RhoMode, SheafClass,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn from_suites(reports: &[suite::SuiteReport]) -> Outcome {
    let summary: Vec<String> = reports.iter().map(ToString::to_string).collect();
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(summary.join("; ")),
        Some(r) => Err(format!("{r}: {}", r.first_failure().unwrap_or("?"))),
    }
}

fn hom_table() -> Outcome {
    let r = suite::line_hom_table(5);
    if r.checks != 121 {
        return Err(format!("expected 121 cases, ran {}", r.checks));
    }
    from_suites(&[r])
}

fn torsion_hom() -> Outcome {
    from_suites(&[suite::torsion_hom_table(8)])
}

fn ses_oracle() -> Outcome {
    from_suites(&[suite::submodule_oracle(8), suite::line_oracle(3, 6)])
}

/// The split term of `δ_X ⋆ δ_X` for `X = T(x,n)` or `C(n)` counts the two
/// coordinate copies of `X` in `X ⊕ X`.
fn doubled_coefficients() -> Outcome {
    let two = Rational::from_integer(2.into());
    for n in 1..=4 {
        let mut xs: Vec<Indecomposable> = Point::ALL.iter().map(|&x| Indecomposable::Torsion(x, n)).collect();
        xs.push(Indecomposable::Cyclic(n));
        for x in xs {
            let split = SheafClass::new([x, x]);
            let class = SheafClass::from(x);
            let brute = submodule_profile(&split)
                .expect("finite")
                .map_err(|e| e.to_string())?
                .get(&(class.clone(), class.clone()))
                .copied();
            let product = HallElement::delta(x).star(&HallElement::delta(x));
            if brute != Some(2) || product.coefficient(&split) != two {
                return Err(format!("{x}*{x}: oracle {brute:?}, product {product}"));
            }
        }
    }
    Ok("split coefficient 2 at m = n".into())
}

fn product_identities() -> Outcome {
    let r = IdentityRange::default();
    let report = suite::product_identity_suite(&r);
    from_suites(&[report]).and_then(|s| Ok(format!("{s}; {}", doubled_coefficients()?)))
}

fn commutators() -> Outcome {
    from_suites(&[suite::commutator_suite(&IdentityRange::default())])
}

fn bialgebra() -> Outcome {
    let u = Universe::default();
    let assoc = suite::associativity(&u);
    if assoc.checks < 10_000 {
        return Err(format!("only {} associativity triples", assoc.checks));
    }
    from_suites(&[
        assoc,
        suite::coassociativity(&u),
        suite::cocommutativity(&u),
        suite::bialgebra(&u),
    ])
}

fn k0() -> Outcome {
    let u = Universe::default();
    let p = suite::k0_presentation(&u);
    from_suites(&[suite::k0_additivity(&u), suite::k0_injectivity(&u)]).map(|s| {
        format!(
            "{s}; {} generators, relation rank {}, Psi rank {}, {} distinct classes",
            p.generators, p.relation_rank, p.psi_rank, p.distinct_classes
        )
    })
}

fn rho() -> Outcome {
    let good = verify_rho(4, RhoMode::Corrected);
    if !good.passed() {
        let pair = good.first_failure().map(|p| format!("{}, {}", p.pair.0, p.pair.1));
        return Err(format!(
            "corrected: pair {pair:?}, kernel {}, unspanned {}",
            good.kernel.len(),
            good.unspanned.len()
        ));
    }
    let literal = verify_rho(4, RhoMode::PaperLiteral);
    let expected: Vec<LieElement> = (1..=4)
        .map(|n| LieElement::basis(LieBasisVector::H1(n)) + LieElement::basis(LieBasisVector::H2(n)))
        .collect();
    if literal.injective() || literal.kernel != expected {
        let kernel: Vec<String> = literal.kernel.iter().map(ToString::to_string).collect();
        return Err(format!("paper-literal kernel {kernel:?}"));
    }
    Ok(format!(
        "corrected: {} pairs ok, injective, spans primitives; paper-literal kernel H1(n) + H2(n), n = 1..4",
        good.pairs.len()
    ))
}

fn sl2() -> Outcome {
    let report = sl2_subalgebra_check(4);
    if let Some(r) = report.relations.iter().find(|r| !r.ok) {
        return Err(format!("{}: {} != {}", r.name, r.lhs, r.rhs));
    }
    let two = Rational::from_integer(2.into());
    for n in 1..=4u32 {
        for k in -4..=4i64 {
            let lhs = sl2_h(n).bracket(&sl2_e(k));
            if lhs != sl2_e(i64::from(n) + k).scale(&two) {
                return Err(format!("[h({n}), e({k})] = {lhs}"));
            }
        }
    }
    Ok(format!("{} relations", report.relations.len()))
}

/// A random module in a known class, with shuffled element names.
fn random_module(rng: &mut ChaCha8Rng, max_size: u32) -> (FinModule, ModuleClass) {
    let mut room = rng.gen_range(0..=max_size);
    let mut summands = Vec::new();
    while room > 0 {
        let len = rng.gen_range(1..=room);
        room -= len;
        summands.push(if rng.gen_bool(0.5) {
            ModuleSummand::Torsion(len)
        } else {
            ModuleSummand::Cyclic(len)
        });
    }
    let class = ModuleClass::new(summands.clone(), 0);
    let size = class.size() as usize;
    let mut names: Vec<String> = (0..size).map(|i| format!("m{i}")).collect();
    names.shuffle(rng);
    let mut edges = Vec::with_capacity(size);
    let mut next = 0;
    for s in &summands {
        let n = s.len() as usize;
        for i in 0..n {
            let target = match s {
                ModuleSummand::Torsion(_) if i + 1 == n => "*".to_string(),
                ModuleSummand::Torsion(_) => names[next + i + 1].clone(),
                ModuleSummand::Cyclic(_) => names[next + (i + 1) % n].clone(),
            };
            edges.push((names[next + i].clone(), target));
        }
        next += n;
    }
    edges.shuffle(rng);
    let module = FinModule::from_edges(F1Monoid::Pos, edges).expect("well-formed edges");
    (module, class)
}

/// Sends two distinct nonzero elements to the same nonzero element.
fn perturb(rng: &mut ChaCha8Rng, m: &FinModule) -> Option<FinModule> {
    if m.size() < 2 {
        return None;
    }
    let a = rng.gen_range(1..=m.size());
    let b = loop {
        let b = rng.gen_range(1..=m.size());
        if b != a {
            break b;
        }
    };
    let c = rng.gen_range(1..=m.size());
    let edges = (1..=m.size()).map(|x| {
        let target = if x == a || x == b { c } else { m.act(x) };
        (m.label(x).to_string(), m.label(target).to_string())
    });
    Some(FinModule::from_edges(F1Monoid::Pos, edges).expect("well-formed edges"))
}

fn classification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut rejected = 0;
    for i in 0..500 {
        let (m, class) = random_module(&mut rng, 15);
        if !m.check_normal() {
            return Err(format!("module {i} is not normal:\n{m}"));
        }
        let got = m.classify().map_err(|e| format!("module {i}: {e}"))?;
        if got != class {
            return Err(format!("module {i}: classified {got}, built {class}"));
        }
        let again = got.realize().and_then(|r| r.classify()).map_err(|e| e.to_string())?;
        if again != got {
            return Err(format!("module {i}: classify(realize({got})) = {again}"));
        }
        let (other, other_class) = random_module(&mut rng, 8);
        let sum = m.direct_sum(&other).and_then(|s| s.classify()).map_err(|e| e.to_string())?;
        if sum != got.union(&other_class) {
            return Err(format!("module {i}: {got} ⊕ {other_class} classified as {sum}"));
        }
        if let Some(bad) = perturb(&mut rng, &m) {
            match bad.classify() {
                Err(Error::NotNormal { first, second, target }) => {
                    let at = |l: &str| bad.index_of(l).expect("witness label");
                    let (f, s, t) = (at(&first), at(&second), at(&target));
                    if f == s || bad.act(f) != t || bad.act(s) != t || t == 0 {
                        return Err(format!("module {i}: bad witness {first}, {second} -> {target}"));
                    }
                    rejected += 1;
                }
                other => return Err(format!("module {i}: perturbation accepted: {other:?}")),
            }
        }
    }
    Ok(format!("500 modules round-trip; {rejected} perturbations rejected with witnesses"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("line bundle Hom table", hom_table),
        ("torsion Hom", torsion_hom),
        ("SES classification oracle", ses_oracle),
        ("product identities", product_identities),
        ("commutators", commutators),
        ("bialgebra suite", bialgebra),
        ("K0 additivity and injectivity", k0),
        ("rho isomorphism", rho),
        ("sl2 subalgebra", sl2),
        ("module classification", classification),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
