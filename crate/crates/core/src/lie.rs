//! The loop algebra `L𝔤𝔩₂⁺ ⊕ κ` and the map `ρ` into the Hall algebra.
//!
//! Basis: `E(k) = e ⊗ t^k` for `k ∈ Z`, `H1(n) = h₁ ⊗ t^n` and
//! `H2(n) = h₂ ⊗ t^n` for `n ≥ 1`, and the central generators `K(n) = κ_n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::ParseError;
use crate::hall::HallElement;
use crate::linalg::Matrix;
use crate::parse::Cursor;
use crate::sheaf::{Indecomposable, Point, SheafClass};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LieBasisVector {
    E(i64),
    H1(u32),
    H2(u32),
    K(u32),
}

impl LieBasisVector {
    /// Every basis vector whose index has absolute value at most `max_index`.
    pub fn bounded(max_index: u32) -> Vec<LieBasisVector> {
        let m = i64::from(max_index);
        let mut out: Vec<_> = (-m..=m).map(LieBasisVector::E).collect();
        for n in 1..=max_index {
            out.push(LieBasisVector::H1(n));
        }
        for n in 1..=max_index {
            out.push(LieBasisVector::H2(n));
        }
        for n in 1..=max_index {
            out.push(LieBasisVector::K(n));
        }
        out
    }
}

impl fmt::Display for LieBasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieBasisVector::E(k) => write!(f, "E({k})"),
            LieBasisVector::H1(n) => write!(f, "H1({n})"),
            LieBasisVector::H2(n) => write!(f, "H2({n})"),
            LieBasisVector::K(n) => write!(f, "K({n})"),
        }
    }
}

impl LieBasisVector {
    fn parse_from(c: &mut Cursor<'_>) -> Result<Self, ParseError> {
        let start = c.position();
        let name = c.ident()?;
        c.expect("(")?;
        let v = match name {
            "E" => LieBasisVector::E(c.i64()?),
            "H1" | "H2" | "K" => {
                let at = c.position();
                let n = c.u32()?;
                if n == 0 {
                    return Err(ParseError::new(at, "index must be at least 1"));
                }
                match name {
                    "H1" => LieBasisVector::H1(n),
                    "H2" => LieBasisVector::H2(n),
                    _ => LieBasisVector::K(n),
                }
            }
            other => return Err(ParseError::new(start, format!("unknown basis vector `{other}`"))),
        };
        c.expect(")")?;
        Ok(v)
    }
}

impl FromStr for LieBasisVector {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut c = Cursor::new(s);
        let v = LieBasisVector::parse_from(&mut c)?;
        c.finish()?;
        Ok(v)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    terms: BTreeMap<LieBasisVector, Rational>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(v: LieBasisVector) -> Self {
        Self::from_terms([(v, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LieBasisVector, Rational)>) -> Self {
        let mut out = BTreeMap::new();
        for (v, c) in terms {
            let e = out.entry(v).or_insert_with(Rational::zero);
            *e += c;
        }
        out.retain(|_, c: &mut Rational| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LieBasisVector, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl From<LieBasisVector> for LieElement {
    fn from(v: LieBasisVector) -> Self {
        LieElement::basis(v)
    }
}

impl Add for LieElement {
    type Output = LieElement;

    fn add(self, rhs: LieElement) -> LieElement {
        LieElement::from_terms(self.terms.into_iter().chain(rhs.terms))
    }
}

impl Neg for LieElement {
    type Output = LieElement;

    fn neg(self) -> LieElement {
        LieElement::from_terms(self.terms.into_iter().map(|(v, c)| (v, -c)))
    }
}

impl Sub for LieElement {
    type Output = LieElement;

    fn sub(self, rhs: LieElement) -> LieElement {
        self + (-rhs)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (v, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (i == 0, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn basis_bracket(x: LieBasisVector, y: LieBasisVector) -> LieElement {
    use LieBasisVector::*;
    let shift = |n: u32, k: i64| E(i64::from(n) + k);
    match (x, y) {
        (H1(n), E(k)) => shift(n, k).into(),
        (E(k), H1(n)) => -LieElement::from(shift(n, k)),
        (H2(n), E(k)) => -LieElement::from(shift(n, k)),
        (E(k), H2(n)) => shift(n, k).into(),
        _ => LieElement::zero(),
    }
}

/// Bilinear extension of the bracket on basis vectors.
pub fn lie_bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut terms = Vec::new();
    for (a, p) in &x.terms {
        for (b, q) in &y.terms {
            let pq = p * q;
            for (v, c) in basis_bracket(*a, *b).terms {
                terms.push((v, c * &pq));
            }
        }
    }
    LieElement::from_terms(terms)
}

/// Which image `ρ` assigns to `H2(m)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RhoMode {
    /// `H2(m) ↦ −δ_{Tinf(m)}`.
    #[default]
    Corrected,
    /// `H2(m) ↦ −δ_{T0(m)}`, which is not injective.
    PaperLiteral,
}

impl fmt::Display for RhoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RhoMode::Corrected => "corrected",
            RhoMode::PaperLiteral => "paper-literal",
        })
    }
}

impl FromStr for RhoMode {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s {
            "corrected" => Ok(RhoMode::Corrected),
            "paper-literal" => Ok(RhoMode::PaperLiteral),
            _ => Err(ParseError::new(0, format!("unknown mode `{s}`"))),
        }
    }
}

fn rho_basis(v: LieBasisVector, mode: RhoMode) -> HallElement {
    let torsion = |x, n| Indecomposable::Torsion(x, n);
    match v {
        LieBasisVector::E(k) => HallElement::delta(Indecomposable::LineBundle(k)),
        LieBasisVector::H1(n) => HallElement::delta(torsion(Point::Zero, n)),
        LieBasisVector::H2(n) => {
            let x = match mode {
                RhoMode::Corrected => Point::Infinity,
                RhoMode::PaperLiteral => Point::Zero,
            };
            -HallElement::delta(torsion(x, n))
        }
        LieBasisVector::K(n) => HallElement::delta(Indecomposable::Cyclic(n)),
    }
}

pub fn rho(x: &LieElement, mode: RhoMode) -> HallElement {
    x.terms
        .iter()
        .fold(HallElement::zero(), |acc, (v, c)| acc + rho_basis(*v, mode).scale(c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub pair: (LieBasisVector, LieBasisVector),
    /// `[ρ(x), ρ(y)]` computed in the Hall algebra.
    pub lhs: HallElement,
    /// `ρ([x, y])`.
    pub rhs: HallElement,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct RhoReport {
    pub mode: RhoMode,
    pub max_index: u32,
    pub pairs: Vec<PairCheck>,
    /// Basis of the kernel of `ρ` restricted to the bounded basis span.
    pub kernel: Vec<LieElement>,
    /// Images of basis vectors that fail to be primitive.
    pub non_primitive: Vec<LieBasisVector>,
    /// Bounded indecomposables whose `δ` is not in the image span.
    pub unspanned: Vec<SheafClass>,
}

impl RhoReport {
    pub fn brackets_ok(&self) -> bool {
        self.pairs.iter().all(|p| p.ok)
    }

    pub fn injective(&self) -> bool {
        self.kernel.is_empty()
    }

    pub fn spans_primitives(&self) -> bool {
        self.unspanned.is_empty() && self.non_primitive.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.brackets_ok() && self.injective() && self.spans_primitives()
    }

    pub fn first_failure(&self) -> Option<&PairCheck> {
        self.pairs.iter().find(|p| !p.ok)
    }
}

/// Indecomposables `O(k)`, `|k| ≤ b`, and `C(n)`, `T0(n)`, `Tinf(n)`, `1 ≤ n ≤ b`.
pub fn bounded_indecomposables(b: u32) -> Vec<Indecomposable> {
    let m = i64::from(b);
    let mut out: Vec<_> = (-m..=m).map(Indecomposable::LineBundle).collect();
    for n in 1..=b {
        out.push(Indecomposable::Cyclic(n));
        out.push(Indecomposable::Torsion(Point::Zero, n));
        out.push(Indecomposable::Torsion(Point::Infinity, n));
    }
    out.sort();
    out
}

/// Coordinates of `elements` over the union of their supports.
fn coordinates(elements: &[HallElement], extra: &[SheafClass]) -> (Matrix, Vec<SheafClass>) {
    let keys: BTreeSet<SheafClass> = elements
        .iter()
        .flat_map(|e| e.support().cloned())
        .chain(extra.iter().cloned())
        .collect();
    let keys: Vec<_> = keys.into_iter().collect();
    let columns = elements
        .iter()
        .map(|e| keys.iter().map(|k| e.coefficient(k)).collect())
        .collect();
    (Matrix::from_columns(keys.len(), columns), keys)
}

pub fn verify_rho(max_index: u32, mode: RhoMode) -> RhoReport {
    let basis = LieBasisVector::bounded(max_index);
    let pairs_in: Vec<_> = basis
        .iter()
        .flat_map(|&x| basis.iter().map(move |&y| (x, y)))
        .collect();
    let pairs = pairs_in
        .par_iter()
        .map(|&(x, y)| {
            let lhs = rho_basis(x, mode).bracket(&rho_basis(y, mode));
            let rhs = rho(&lie_bracket(&x.into(), &y.into()), mode);
            let ok = lhs == rhs;
            PairCheck { pair: (x, y), lhs, rhs, ok }
        })
        .collect();

    let images: Vec<HallElement> = basis.iter().map(|&v| rho_basis(v, mode)).collect();
    let non_primitive = basis
        .iter()
        .zip(&images)
        .filter(|(_, img)| !img.is_primitive())
        .map(|(&v, _)| v)
        .collect();

    let targets: Vec<SheafClass> = bounded_indecomposables(max_index)
        .into_iter()
        .map(SheafClass::from)
        .collect();
    let (matrix, keys) = coordinates(&images, &targets);
    let kernel = matrix
        .kernel()
        .into_iter()
        .map(|v| LieElement::from_terms(basis.iter().copied().zip(v)))
        .collect();
    let unspanned = targets
        .into_iter()
        .filter(|t| {
            let v: Vec<Rational> = keys
                .iter()
                .map(|k| if k == t { Rational::one() } else { Rational::zero() })
                .collect();
            !matrix.in_span(&v)
        })
        .collect();

    RhoReport { mode, max_index, pairs, kernel, non_primitive, unspanned }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: HallElement,
    pub rhs: HallElement,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct Sl2Report {
    pub relations: Vec<Relation>,
}

impl Sl2Report {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.ok)
    }
}

/// `h_n = δ_{T0(n)} + δ_{Tinf(n)}` and `e_k = δ_{O(k)}`.
pub fn sl2_h(n: u32) -> HallElement {
    HallElement::delta(Indecomposable::Torsion(Point::Zero, n))
        + HallElement::delta(Indecomposable::Torsion(Point::Infinity, n))
}

pub fn sl2_e(k: i64) -> HallElement {
    HallElement::delta(Indecomposable::LineBundle(k))
}

/// Checks `[h_n, e_k] = 2 e_{n+k}`, `[e_k, e_l] = 0` and `[h_n, h_m] = 0`.
pub fn sl2_subalgebra_check(max_index: u32) -> Sl2Report {
    let m = i64::from(max_index);
    let mut specs: Vec<(String, HallElement, HallElement, HallElement)> = Vec::new();
    for n in 1..=max_index {
        for k in -m..=m {
            let two = Rational::from_integer(2.into());
            specs.push((
                format!("[h({n}), e({k})]"),
                sl2_h(n),
                sl2_e(k),
                sl2_e(i64::from(n) + k).scale(&two),
            ));
        }
    }
    for k in -m..=m {
        for l in -m..=m {
            specs.push((format!("[e({k}), e({l})]"), sl2_e(k), sl2_e(l), HallElement::zero()));
        }
    }
    for n in 1..=max_index {
        for p in 1..=max_index {
            specs.push((format!("[h({n}), h({p})]"), sl2_h(n), sl2_h(p), HallElement::zero()));
        }
    }
    let relations = specs
        .into_par_iter()
        .map(|(name, x, y, rhs)| {
            let lhs = x.bracket(&y);
            let ok = lhs == rhs;
            Relation { name, lhs, rhs, ok }
        })
        .collect();
    Sl2Report { relations }
}
