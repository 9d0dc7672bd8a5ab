//! Verification suites over bounded families of sheaves.
//!
//! Every suite returns a [`SuiteReport`] with the number of checks run and
//! the failing cases (stored up to a cap; all failures are counted).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::hall::{Degree, HallElement};
use crate::linalg::Matrix;
use crate::module::{FinModule, ModuleClass, ModuleSummand};
use crate::oracle;
use crate::sheaf::{
    elementary_pairs, extensions, hall_number, hom_count, k0_class, line_subsheaves,
    subobject_profile, Indecomposable, K0Class, Point, SheafClass,
};
use crate::Rational;

const STORED_FAILURES: usize = 20;

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failure_count: usize,
    /// The first few counterexamples, in deterministic order.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Self::default() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < STORED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    /// Runs `check` on every case in parallel and records results in order.
    fn run_all<T, F>(name: &str, cases: &[T], check: F) -> SuiteReport
    where
        T: Sync,
        F: Fn(&T) -> Option<String> + Sync + Send,
    {
        let outcomes: Vec<Option<String>> = cases.par_iter().map(check).collect();
        let mut report = SuiteReport::new(name);
        for outcome in outcomes {
            let ok = outcome.is_none();
            report.record(ok, || outcome.unwrap_or_default());
        }
        report
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.failures.first().map(String::as_str)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{}: {} ({} checks", self.name, status, self.checks)?;
        if self.failure_count > 0 {
            write!(f, ", {} failures", self.failure_count)?;
        }
        write!(f, ")")
    }
}

/// Bounds defining a finite family of sheaf classes.
///
/// The weight of a class is `Σ |line degree| + Σ torsion length`; cyclic
/// summands are bounded separately by the sum of their indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Universe {
    pub max_rank: usize,
    pub max_weight: u32,
    pub max_cyclic: u32,
}

impl Default for Universe {
    fn default() -> Self {
        Self { max_rank: 2, max_weight: 4, max_cyclic: 3 }
    }
}

fn weight(g: Indecomposable) -> u32 {
    match g {
        Indecomposable::LineBundle(d) => d.unsigned_abs() as u32,
        Indecomposable::Torsion(_, n) => n,
        Indecomposable::Cyclic(_) => 0,
    }
}

fn cyclic_index(g: Indecomposable) -> u32 {
    match g {
        Indecomposable::Cyclic(n) => n,
        _ => 0,
    }
}

impl Universe {
    pub fn contains(&self, f: &SheafClass) -> bool {
        f.rank() <= self.max_rank
            && f.summands().iter().map(|&g| weight(g)).sum::<u32>() <= self.max_weight
            && f.summands().iter().map(|&g| cyclic_index(g)).sum::<u32>() <= self.max_cyclic
    }

    /// The indecomposables that can occur as summands.
    pub fn indecomposables(&self) -> Vec<Indecomposable> {
        let w = i64::from(self.max_weight);
        let mut out: Vec<Indecomposable> = (-w..=w).map(Indecomposable::LineBundle).collect();
        for n in 1..=self.max_weight {
            out.push(Indecomposable::Torsion(Point::Zero, n));
            out.push(Indecomposable::Torsion(Point::Infinity, n));
        }
        out.extend((1..=self.max_cyclic).map(Indecomposable::Cyclic));
        out.retain(|&g| self.contains(&g.into()));
        out.sort();
        out
    }

    /// Every class in the family, including `0`, in canonical order.
    pub fn classes(&self) -> Vec<SheafClass> {
        let pieces = self.indecomposables();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend(&pieces, 0, &mut current, &mut out);
        out.sort();
        out
    }

    fn extend(
        &self,
        pieces: &[Indecomposable],
        from: usize,
        current: &mut Vec<Indecomposable>,
        out: &mut Vec<SheafClass>,
    ) {
        out.push(SheafClass::new(current.iter().copied()));
        for i in from..pieces.len() {
            current.push(pieces[i]);
            if self.contains(&SheafClass::new(current.iter().copied())) {
                self.extend(pieces, i, current, out);
            }
            current.pop();
        }
    }

    /// Ordered pairs `(A, B)` of nonzero classes with `A ⊕ B` in the family.
    pub fn pairs(&self) -> Vec<(SheafClass, SheafClass)> {
        let classes = self.classes();
        let nonzero: Vec<_> = classes.iter().filter(|c| !c.is_zero()).collect();
        let mut out = Vec::new();
        for a in &nonzero {
            for b in &nonzero {
                if self.contains(&a.direct_sum(b)) {
                    out.push(((*a).clone(), (*b).clone()));
                }
            }
        }
        out
    }

    /// Ordered triples of nonzero classes whose sum lies in the family.
    pub fn triples(&self) -> Vec<(SheafClass, SheafClass, SheafClass)> {
        let pairs = self.pairs();
        let classes = self.classes();
        let mut out = Vec::new();
        for (a, b) in &pairs {
            let ab = a.direct_sum(b);
            for c in classes.iter().filter(|c| !c.is_zero()) {
                if self.contains(&ab.direct_sum(c)) {
                    out.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
        out
    }
}

fn d(f: &SheafClass) -> HallElement {
    HallElement::delta(f.clone())
}

fn mismatch(what: &str, lhs: &impl fmt::Display, rhs: &impl fmt::Display) -> String {
    format!("{what}: {lhs} != {rhs}")
}

/// `(δ_A ⋆ δ_B) ⋆ δ_C = δ_A ⋆ (δ_B ⋆ δ_C)`.
pub fn associativity(u: &Universe) -> SuiteReport {
    let triples = u.triples();
    SuiteReport::run_all("associativity", &triples, |(a, b, c)| {
        let lhs = d(a).star(&d(b)).star(&d(c));
        let rhs = d(a).star(&d(b).star(&d(c)));
        (lhs != rhs).then(|| mismatch(&format!("([{a}]*[{b}])*[{c}]"), &lhs, &rhs))
    })
}

/// `(Δ ⊗ id) Δ = (id ⊗ Δ) Δ` on every `δ_F`.
pub fn coassociativity(u: &Universe) -> SuiteReport {
    let classes = u.classes();
    SuiteReport::run_all("coassociativity", &classes, |f| {
        let delta = d(f).coproduct();
        let ok = delta.coproduct_left() == delta.coproduct_right();
        (!ok).then(|| format!("coassociativity fails at [{f}]"))
    })
}

/// The swap of tensor legs fixes `Δ(δ_F)`.
pub fn cocommutativity(u: &Universe) -> SuiteReport {
    let classes = u.classes();
    SuiteReport::run_all("cocommutativity", &classes, |f| {
        let delta = d(f).coproduct();
        let swapped = delta.swap();
        (delta != swapped).then(|| mismatch(&format!("Δ[{f}]"), &delta, &swapped))
    })
}

/// `Δ(δ_A ⋆ δ_B) = Δ(δ_A) ⋆ Δ(δ_B)` with the componentwise product.
pub fn bialgebra(u: &Universe) -> SuiteReport {
    let pairs = u.pairs();
    SuiteReport::run_all("bialgebra", &pairs, |(a, b)| {
        let lhs = d(a).star(&d(b)).coproduct();
        let rhs = d(a).coproduct().star(&d(b).coproduct());
        (lhs != rhs).then(|| mismatch(&format!("Δ([{a}]*[{b}])"), &lhs, &rhs))
    })
}

/// Products of homogeneous elements are homogeneous of the summed degree,
/// with nonnegative integer structure constants.
pub fn grading(u: &Universe) -> SuiteReport {
    let pairs = u.pairs();
    SuiteReport::run_all("grading", &pairs, |(a, b)| {
        let product = d(a).star(&d(b));
        let expected = Degree::Homogeneous(k0_class(a) + k0_class(b));
        let integral = product
            .terms()
            .all(|(_, c)| c.is_integer() && *c > Rational::zero());
        let degree = product.degree();
        (degree != expected || !integral)
            .then(|| format!("[{a}]*[{b}] = {product} has degree {degree}, expected {expected}"))
    })
}

/// `δ_F` is primitive exactly when `F` is indecomposable.
pub fn primitivity(u: &Universe) -> SuiteReport {
    let classes = u.classes();
    SuiteReport::run_all("primitivity", &classes, |f| {
        let primitive = d(f).is_primitive();
        (primitive != f.is_indecomposable())
            .then(|| format!("[{f}]: primitive = {primitive}, indecomposable = {}", f.is_indecomposable()))
    })
}

/// Parameter ranges for the structure identities among indecomposables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityRange {
    /// Line degrees run over `[-max_degree, max_degree]`.
    pub max_degree: i64,
    /// Torsion lengths and cyclic indices run over `[1, max_index]`.
    pub max_index: u32,
}

impl Default for IdentityRange {
    fn default() -> Self {
        Self { max_degree: 4, max_index: 4 }
    }
}

impl IdentityRange {
    fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        -self.max_degree..=self.max_degree
    }

    fn indices(&self) -> std::ops::RangeInclusive<u32> {
        1..=self.max_index
    }

    pub fn indecomposables(&self) -> Vec<Indecomposable> {
        let mut out: Vec<_> = self.degrees().map(Indecomposable::LineBundle).collect();
        for n in self.indices() {
            out.push(Indecomposable::Cyclic(n));
            for x in Point::ALL {
                out.push(Indecomposable::Torsion(x, n));
            }
        }
        out.sort();
        out
    }
}

/// One identity `lhs = rhs` between Hall elements.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub lhs: HallElement,
    pub rhs: HallElement,
}

fn check_identities(name: &str, identities: Vec<Identity>) -> SuiteReport {
    let results: Vec<(bool, Identity)> = identities
        .into_par_iter()
        .map(|i| (i.lhs == i.rhs, i))
        .collect();
    let mut report = SuiteReport::new(name);
    for (ok, i) in results {
        report.record(ok, || mismatch(&i.name, &i.lhs, &i.rhs));
    }
    report
}

fn line(n: i64) -> HallElement {
    HallElement::delta(Indecomposable::LineBundle(n))
}

fn torsion(x: Point, n: u32) -> HallElement {
    HallElement::delta(Indecomposable::Torsion(x, n))
}

fn sum_of(parts: &[Indecomposable]) -> HallElement {
    HallElement::delta(SheafClass::new(parts.iter().copied()))
}

fn times(k: i64, f: HallElement) -> HallElement {
    f.scale(&Rational::from_integer(k.into()))
}

/// The product formulas among indecomposables, with the coincident-index
/// cases where the split term acquires coefficient `2`.
pub fn product_identities(r: &IdentityRange) -> Vec<Identity> {
    use Indecomposable::{Cyclic, LineBundle, Torsion};
    let mut out = Vec::new();
    let mut push = |name: String, lhs: HallElement, rhs: HallElement| {
        out.push(Identity { name, lhs, rhs });
    };
    for n in r.degrees() {
        for m in r.degrees() {
            let k = if m == n { 2 } else { 1 };
            push(
                format!("O({n})*O({m})"),
                line(n).star(&line(m)),
                times(k, sum_of(&[LineBundle(n), LineBundle(m)])),
            );
        }
    }
    for x in Point::ALL {
        for n in r.indices() {
            let t = Torsion(x, n);
            for m in r.degrees() {
                push(
                    format!("{t}*O({m})"),
                    torsion(x, n).star(&line(m)),
                    line(m + i64::from(n)) + sum_of(&[t, LineBundle(m)]),
                );
                push(
                    format!("O({m})*{t}"),
                    line(m).star(&torsion(x, n)),
                    sum_of(&[t, LineBundle(m)]),
                );
            }
            for m in r.indices() {
                let k = if m == n { 2 } else { 1 };
                push(
                    format!("{t}*{}", Torsion(x, m)),
                    torsion(x, n).star(&torsion(x, m)),
                    torsion(x, n + m) + times(k, sum_of(&[t, Torsion(x, m)])),
                );
            }
        }
    }
    for n in r.indices() {
        for m in r.indices() {
            let (t, t2) = (Torsion(Point::Zero, n), Torsion(Point::Infinity, m));
            for (a, b) in [(t, t2), (t2, t)] {
                push(format!("{a}*{b}"), sum_of(&[a]).star(&sum_of(&[b])), sum_of(&[a, b]));
            }
        }
    }
    for n in r.indices() {
        let c = Cyclic(n);
        for g in r.indecomposables() {
            let k = if g == c { 2 } else { 1 };
            push(format!("{c}*{g}"), sum_of(&[c]).star(&sum_of(&[g])), times(k, sum_of(&[c, g])));
        }
    }
    out
}

pub fn product_identity_suite(r: &IdentityRange) -> SuiteReport {
    check_identities("product identities", product_identities(r))
}

/// The commutators among indecomposables.
pub fn commutator_identities(r: &IdentityRange) -> Vec<Identity> {
    use Indecomposable::{Cyclic, LineBundle, Torsion};
    let mut out = Vec::new();
    let zero = HallElement::zero;
    let bracket = |a: Indecomposable, b: Indecomposable| sum_of(&[a]).bracket(&sum_of(&[b]));
    for n in r.degrees() {
        for m in r.degrees() {
            out.push(Identity {
                name: format!("[O({n}), O({m})]"),
                lhs: bracket(LineBundle(n), LineBundle(m)),
                rhs: zero(),
            });
        }
    }
    for x in Point::ALL {
        for n in r.indices() {
            for m in r.degrees() {
                out.push(Identity {
                    name: format!("[{}, O({m})]", Torsion(x, n)),
                    lhs: bracket(Torsion(x, n), LineBundle(m)),
                    rhs: line(m + i64::from(n)),
                });
            }
            for y in Point::ALL {
                for m in r.indices() {
                    out.push(Identity {
                        name: format!("[{}, {}]", Torsion(x, n), Torsion(y, m)),
                        lhs: bracket(Torsion(x, n), Torsion(y, m)),
                        rhs: zero(),
                    });
                }
            }
        }
    }
    for n in r.indices() {
        for g in r.indecomposables() {
            out.push(Identity {
                name: format!("[C({n}), {g}]"),
                lhs: bracket(Cyclic(n), g),
                rhs: zero(),
            });
        }
    }
    out
}

pub fn commutator_suite(r: &IdentityRange) -> SuiteReport {
    check_identities("commutators", commutator_identities(r))
}

/// `Ψ(g) = Ψ(sub) + Ψ(quotient)` for every elementary pair of every summand
/// in the family, and for every middle term of every extension.
pub fn k0_additivity(u: &Universe) -> SuiteReport {
    let pieces = u.indecomposables();
    let mut report = SuiteReport::new("K0 additivity");
    for &g in &pieces {
        for (s, q) in elementary_pairs(g, &pieces) {
            let ok = K0Class::of(g) == k0_class(&s) + k0_class(&q);
            report.record(ok, || format!("0 -> {s} -> {g} -> {q} -> 0"));
        }
    }
    let pairs = u.pairs();
    let ext = SuiteReport::run_all("", &pairs, |(a, b)| {
        let want = k0_class(a) + k0_class(b);
        extensions(a, b)
            .into_iter()
            .find(|(f, _)| k0_class(f) != want)
            .map(|(f, _)| format!("0 -> {b} -> {f} -> {a} -> 0"))
    });
    report.checks += ext.checks;
    report.failure_count += ext.failure_count;
    report.failures.extend(ext.failures);
    report
}

/// Coordinates of `Ψ`: rank, degree and one entry per cyclic index.
fn psi_vector(k: &K0Class, cyclic: &[u32]) -> Vec<Rational> {
    let q = |x: i64| Rational::from_integer(x.into());
    let mut v = vec![q(k.rank), q(k.degree)];
    v.extend(cyclic.iter().map(|m| q(k.cyclic.get(m).copied().unwrap_or(0))));
    v
}

/// Outcome of comparing the group presented by elementary sequences with
/// the image of `Ψ`.
#[derive(Clone, Debug)]
pub struct K0Presentation {
    pub generators: usize,
    pub relation_rank: usize,
    pub psi_rank: usize,
    /// Distinct `Ψ` values among the family's classes.
    pub distinct_classes: usize,
}

impl K0Presentation {
    /// `Ψ` is injective iff the presented group has the same rank as the
    /// image of `Ψ` (all relations are killed by `Ψ`).
    pub fn injective(&self) -> bool {
        self.generators - self.relation_rank == self.psi_rank
    }
}

/// Presents `K₀` of the family by generators `[g]` and the relations
/// `[g] = [sub] + [quotient]` from elementary pairs, over `Q`.
pub fn k0_presentation(u: &Universe) -> K0Presentation {
    let pieces = u.indecomposables();
    let mut triples = Vec::new();
    let mut generators: BTreeSet<Indecomposable> = pieces.iter().copied().collect();
    for &g in &pieces {
        for (s, q) in elementary_pairs(g, &pieces) {
            if !s.is_zero() && !q.is_zero() {
                generators.extend(s.summands().iter().chain(q.summands()));
                triples.push((g, s, q));
            }
        }
    }
    let generators: Vec<Indecomposable> = generators.into_iter().collect();
    let index: BTreeMap<Indecomposable, usize> =
        generators.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let relations: Vec<Vec<Rational>> = triples
        .iter()
        .map(|(g, s, q)| {
            let mut v = vec![Rational::zero(); generators.len()];
            v[index[g]] += Rational::one();
            for h in s.summands().iter().chain(q.summands()) {
                v[index[h]] -= Rational::one();
            }
            v
        })
        .collect();
    let relation_rank = Matrix::from_columns(generators.len(), relations).rank();
    let cyclic: Vec<u32> = (1..=u.max_cyclic).collect();
    let images: Vec<Vec<Rational>> = generators.iter().map(|&g| psi_vector(&K0Class::of(g), &cyclic)).collect();
    let psi_rank = Matrix::from_columns(cyclic.len() + 2, images).rank();
    let distinct_classes = u
        .classes()
        .iter()
        .map(k0_class)
        .collect::<BTreeSet<_>>()
        .len();
    K0Presentation { generators: generators.len(), relation_rank, psi_rank, distinct_classes }
}

pub fn k0_injectivity(u: &Universe) -> SuiteReport {
    let p = k0_presentation(u);
    let mut report = SuiteReport::new("K0 injectivity");
    report.record(p.injective(), || {
        format!(
            "{} generators, relation rank {}, Psi rank {}",
            p.generators, p.relation_rank, p.psi_rank
        )
    });
    report
}

/// `hom_count(O(n), O(m))` against the chart lattice search.
pub fn line_hom_table(max_degree: i64) -> SuiteReport {
    let mut report = SuiteReport::new("line bundle Hom");
    for n in -max_degree..=max_degree {
        for m in -max_degree..=max_degree {
            let formula = hom_count(Indecomposable::LineBundle(n), Indecomposable::LineBundle(m));
            let expected = if n <= m { (m - n + 1) as u64 } else { 0 };
            let search = (4 * max_degree + 4) as u32;
            let lattice = oracle::line_hom_lattice(n, m, search);
            report.record(formula == expected && lattice == expected, || {
                format!("Hom(O({n}), O({m})): formula {formula}, lattice {lattice}, expected {expected}")
            });
        }
    }
    report
}

/// Hom counts between torsion and cyclic sheaves against chart-module
/// searches, plus the vanishing between torsion and line bundles.
pub fn torsion_hom_table(max_index: u32) -> SuiteReport {
    let mut report = SuiteReport::new("torsion Hom");
    let mut finite: Vec<Indecomposable> = Vec::new();
    for n in 1..=max_index {
        finite.push(Indecomposable::Torsion(Point::Zero, n));
        finite.push(Indecomposable::Torsion(Point::Infinity, n));
    }
    // a few cyclic sheaves cover the torsion-free finite case
    finite.extend((1..=max_index.min(4)).map(Indecomposable::Cyclic));
    for &f in &finite {
        for &g in &finite {
            let formula = hom_count(f, g);
            let expected = match (f, g) {
                (Indecomposable::Torsion(x, m), Indecomposable::Torsion(y, n)) => u64::from(x == y && n >= m),
                (Indecomposable::Cyclic(m), Indecomposable::Cyclic(n)) if m == n => u64::from(n),
                _ => 0,
            };
            let brute = oracle::chart_hom(&f.into(), &g.into())
                .expect("finite sheaves")
                .expect("chart modules");
            report.record(formula == expected && brute == expected, || {
                format!("Hom({f}, {g}): formula {formula}, brute force {brute}, expected {expected}")
            });
        }
    }
    for n in 1..=max_index {
        for x in Point::ALL {
            for m in -4..=4 {
                let (t, o) = (Indecomposable::Torsion(x, n), Indecomposable::LineBundle(m));
                let both = hom_count(t, o) + hom_count(o, t);
                report.record(both == 0, || format!("Hom between {t} and {o} is nonzero"));
            }
        }
    }
    report
}

/// Every line-bundle-free class of total size at most `bound`.
pub fn finite_classes(bound: u32) -> Vec<SheafClass> {
    let mut pieces = Vec::new();
    for n in 1..=bound {
        pieces.push(Indecomposable::Torsion(Point::Zero, n));
        pieces.push(Indecomposable::Torsion(Point::Infinity, n));
        pieces.push(Indecomposable::Cyclic(n));
    }
    pieces.sort();
    fn go(
        pieces: &[Indecomposable],
        from: usize,
        room: u32,
        current: &mut Vec<Indecomposable>,
        out: &mut Vec<SheafClass>,
    ) {
        out.push(SheafClass::new(current.iter().copied()));
        for i in from..pieces.len() {
            let size = pieces[i].finite_size().expect("finite");
            if size <= room {
                current.push(pieces[i]);
                go(pieces, i, room - size, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&pieces, 0, bound, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `hall_number` and `subobject_profile` against submodule enumeration on
/// both charts, for every line-bundle-free class of size at most `bound`.
pub fn submodule_oracle(bound: u32) -> SuiteReport {
    let classes = finite_classes(bound);
    SuiteReport::run_all("submodule oracle", &classes, |f| {
        let brute = match oracle::submodule_profile(f).expect("no line bundles") {
            Ok(p) => p,
            Err(e) => return Some(format!("[{f}]: oracle error {e}")),
        };
        let profile = subobject_profile(f, 0);
        if profile != brute {
            return Some(format!("[{f}]: subobject profile differs from submodule enumeration"));
        }
        brute.iter().find_map(|((q, s), &count)| {
            let h = hall_number(f, q, s);
            (h != count).then(|| format!("g^[{f}]_([{q}],[{s}]) = {h}, submodules give {count}"))
        })
    })
}

/// Subsheaves of `O(m)` against the chart ideal lattice, for
/// `|m| ≤ max_degree` and drops up to `max_drop`.
pub fn line_oracle(max_degree: i64, max_drop: u32) -> SuiteReport {
    let mut report = SuiteReport::new("line subsheaf oracle");
    for m in -max_degree..=max_degree {
        let lattice = oracle::line_subsheaf_lattice(m, max_drop).expect("ladder module");
        let mut listed: Vec<(i64, u32, u32)> = line_subsheaves(m, max_drop)
            .into_iter()
            .map(|(sub, quot)| {
                let Indecomposable::LineBundle(n) = sub else { unreachable!("line subsheaf") };
                let length_at = |x: Point| -> u32 {
                    quot.summands()
                        .iter()
                        .map(|g| match *g {
                            Indecomposable::Torsion(y, k) if y == x => k,
                            _ => 0,
                        })
                        .sum()
                };
                let (k0, k_inf) = (length_at(Point::Zero), length_at(Point::Infinity));
                (n, k0, k_inf)
            })
            .collect();
        listed.sort_unstable();
        report.record(listed == lattice, || format!("subsheaves of O({m}) differ from ideal pairs"));
        let g = SheafClass::from(Indecomposable::LineBundle(m));
        for &(n, a0, a_inf) in &lattice {
            let sub = SheafClass::from(Indecomposable::LineBundle(n));
            let mut quot = Vec::new();
            if a0 > 0 {
                quot.push(Indecomposable::Torsion(Point::Zero, a0));
            }
            if a_inf > 0 {
                quot.push(Indecomposable::Torsion(Point::Infinity, a_inf));
            }
            let quot = SheafClass::new(quot);
            let h = hall_number(&g, &quot, &sub);
            report.record(h == 1, || format!("g^O({m})_([{quot}],O({n})) = {h}, expected 1"));
        }
        for n in (m - i64::from(max_drop))..=m {
            let sub = SheafClass::from(Indecomposable::LineBundle(n));
            let total: u64 = lattice
                .iter()
                .filter(|e| e.0 == n)
                .map(|&(_, a0, a_inf)| {
                    let q = [(Point::Zero, a0), (Point::Infinity, a_inf)]
                        .into_iter()
                        .filter(|&(_, k)| k > 0)
                        .map(|(x, k)| Indecomposable::Torsion(x, k));
                    hall_number(&g, &SheafClass::new(q), &sub)
                })
                .sum();
            let expected = (m - n + 1) as u64;
            report.record(total == expected, || {
                format!("O({n}) inside O({m}): {total} subsheaves, expected {expected}")
            });
        }
    }
    report
}

/// `f` occurs in `extensions(a, b)` exactly when `hall_number(f, a, b) > 0`,
/// for every `f` in the family of the right `K₀` class.
pub fn extension_completeness(u: &Universe) -> SuiteReport {
    let mut by_class: BTreeMap<K0Class, Vec<SheafClass>> = BTreeMap::new();
    for f in u.classes() {
        by_class.entry(k0_class(&f)).or_default().push(f);
    }
    let pairs = u.pairs();
    SuiteReport::run_all("extension completeness", &pairs, |(a, b)| {
        let listed: BTreeMap<SheafClass, u64> = extensions(a, b).into_iter().collect();
        let candidates = by_class.get(&(k0_class(a) + k0_class(b)))?;
        candidates.iter().find_map(|f| {
            let h = hall_number(f, a, b);
            let l = listed.get(f).copied().unwrap_or(0);
            (h != l).then(|| format!("[{f}] as extension of [{a}] by [{b}]: hall number {h}, listed {l}"))
        })
    })
}

/// `classify ∘ realize` round trips and direct sums for every module class
/// of size at most `bound`.
pub fn classification_roundtrip(bound: u32) -> SuiteReport {
    let classes = module_classes(bound);
    SuiteReport::run_all("classification", &classes, |c| {
        let m = match c.realize() {
            Ok(m) => m,
            Err(e) => return Some(format!("{c}: {e}")),
        };
        match m.classify() {
            Ok(back) if back == *c => {}
            other => return Some(format!("{c}: classify(realize) = {other:?}")),
        }
        let split = c.summands().len() / 2;
        let (left, right) = c.summands().split_at(split);
        let (l, r) = (ModuleClass::new(left.to_vec(), 0), ModuleClass::new(right.to_vec(), 0));
        let sum = realize_sum(&l, &r);
        (sum.as_ref() != Some(c)).then(|| format!("{l} ⊕ {r} classifies as {sum:?}"))
    })
}

fn realize_sum(l: &ModuleClass, r: &ModuleClass) -> Option<ModuleClass> {
    let m: FinModule = l.realize().ok()?.direct_sum(&r.realize().ok()?).ok()?;
    m.classify().ok()
}

/// Every torsion module class of size at most `bound`.
pub fn module_classes(bound: u32) -> Vec<ModuleClass> {
    let mut pieces = Vec::new();
    for n in 1..=bound {
        pieces.push(ModuleSummand::Torsion(n));
        pieces.push(ModuleSummand::Cyclic(n));
    }
    fn go(
        pieces: &[ModuleSummand],
        from: usize,
        room: u32,
        current: &mut Vec<ModuleSummand>,
        out: &mut Vec<ModuleClass>,
    ) {
        out.push(ModuleClass::new(current.clone(), 0));
        for i in from..pieces.len() {
            if pieces[i].len() <= room {
                current.push(pieces[i]);
                go(pieces, i, room - pieces[i].len(), current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&pieces, 0, bound, &mut Vec::new(), &mut out);
    out
}

/// Checks that `δ_0` is a two-sided unit and `ε` is a counit on the family.
pub fn unit_counit(u: &Universe) -> SuiteReport {
    let classes = u.classes();
    SuiteReport::run_all("unit and counit", &classes, |f| {
        let x = d(f);
        let unit = HallElement::unit();
        let unit_ok = unit.star(&x) == x && x.star(&unit) == x;
        // (ε ⊗ id) Δ = id
        let mut left = HallElement::zero();
        for ((a, b), c) in x.coproduct().terms() {
            if a.is_zero() {
                left = left + HallElement::delta(b.clone()).scale(c);
            }
        }
        let counit_ok = left == x && d(&SheafClass::zero()).counit().is_one();
        (!(unit_ok && counit_ok)).then(|| format!("unit or counit fails at [{f}]"))
    })
}
