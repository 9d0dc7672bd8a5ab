//! Isomorphism classes of normal coherent sheaves on the monoid `P¹`.
//!
//! Every such sheaf is a direct sum of line bundles `O(n)`, cyclic sheaves
//! `C(m)` and torsion sheaves `T0(k)`, `Tinf(k)` supported at `0` and `∞`,
//! uniquely up to permutation. A [`SheafClass`] is that multiset in
//! canonical order.

mod ses;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::module::ModuleClass;
use crate::parse::{Cursor, PResult};

pub use ses::{elementary_pairs, extensions, hall_number, line_subsheaves, subobject_profile};

/// A closed point of `P¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Zero,
    Infinity,
}

impl Point {
    pub const ALL: [Point; 2] = [Point::Zero, Point::Infinity];
}

/// Indecomposable normal coherent sheaf. The derived order is the
/// canonical one: line bundles by degree, then cyclic sheaves by index,
/// then torsion sheaves by point (`0` before `∞`) and length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indecomposable {
    LineBundle(i64),
    Cyclic(u32),
    Torsion(Point, u32),
}

impl Indecomposable {
    pub fn line(degree: i64) -> Self {
        Indecomposable::LineBundle(degree)
    }

    pub fn cyclic(index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::Validation("C(0) is not a sheaf: index must be ≥ 1".into()));
        }
        Ok(Indecomposable::Cyclic(index))
    }

    pub fn torsion(point: Point, length: u32) -> Result<Self> {
        if length == 0 {
            return Err(Error::Validation("torsion length must be ≥ 1".into()));
        }
        Ok(Indecomposable::Torsion(point, length))
    }

    pub fn is_torsion(self) -> bool {
        matches!(self, Indecomposable::Torsion(..))
    }

    /// Number of nonzero elements of the local module (lengths for torsion
    /// and cyclic sheaves); `None` for line bundles.
    pub fn finite_size(self) -> Option<u32> {
        match self {
            Indecomposable::LineBundle(_) => None,
            Indecomposable::Cyclic(n) | Indecomposable::Torsion(_, n) => Some(n),
        }
    }
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indecomposable::LineBundle(n) => write!(f, "O({n})"),
            Indecomposable::Cyclic(m) => write!(f, "C({m})"),
            Indecomposable::Torsion(Point::Zero, k) => write!(f, "T0({k})"),
            Indecomposable::Torsion(Point::Infinity, k) => write!(f, "Tinf({k})"),
        }
    }
}

impl From<Indecomposable> for SheafClass {
    fn from(g: Indecomposable) -> Self {
        SheafClass(vec![g])
    }
}

/// A normal coherent sheaf up to isomorphism: a sorted multiset of
/// indecomposables. The empty multiset is the zero sheaf.
///
/// Classes are ordered first by number of summands and then
/// lexicographically, so that the zero sheaf comes first and
/// indecomposables precede their sums.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SheafClass(Vec<Indecomposable>);

impl Ord for SheafClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SheafClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl SheafClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(summands: impl IntoIterator<Item = Indecomposable>) -> Self {
        let mut v: Vec<Indecomposable> = summands.into_iter().collect();
        v.sort();
        SheafClass(v)
    }

    pub fn summands(&self) -> &[Indecomposable] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.0.len() == 1
    }

    /// `F ⊕ G`.
    pub fn direct_sum(&self, other: &SheafClass) -> SheafClass {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort();
        SheafClass(v)
    }

    pub fn rank(&self) -> usize {
        self.line_degrees().count()
    }

    pub fn line_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().filter_map(|g| match g {
            Indecomposable::LineBundle(n) => Some(*n),
            _ => None,
        })
    }

    /// Multiplicity map of the summands.
    pub fn counts(&self) -> BTreeMap<Indecomposable, u32> {
        let mut counts = BTreeMap::new();
        for g in &self.0 {
            *counts.entry(*g).or_insert(0) += 1;
        }
        counts
    }

    pub(crate) fn parse_from(cursor: &mut Cursor<'_>) -> PResult<SheafClass> {
        if cursor.peek() == Some('0') {
            cursor.eat("0");
            return Ok(SheafClass::zero());
        }
        let mut summands = vec![parse_indecomposable(cursor)?];
        while cursor.eat("+") {
            summands.push(parse_indecomposable(cursor)?);
        }
        Ok(SheafClass::new(summands))
    }
}

fn parse_indecomposable(cursor: &mut Cursor<'_>) -> PResult<Indecomposable> {
    let start = cursor.position();
    let name = cursor.ident()?;
    cursor.expect("(")?;
    let arg = cursor.position();
    let g = match name {
        "O" => Indecomposable::LineBundle(cursor.i64()?),
        "C" | "T0" | "Tinf" => {
            let n = cursor.u32()?;
            if n == 0 {
                return Err(ParseError::new(arg, format!("{name}(0) is invalid: index must be ≥ 1")));
            }
            match name {
                "C" => Indecomposable::Cyclic(n),
                "T0" => Indecomposable::Torsion(Point::Zero, n),
                _ => Indecomposable::Torsion(Point::Infinity, n),
            }
        }
        _ => return Err(ParseError::new(start, format!("unknown sheaf `{name}`"))),
    };
    cursor.expect(")")?;
    Ok(g)
}

impl fmt::Display for SheafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for SheafClass {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let mut cursor = Cursor::new(s);
        let class = SheafClass::parse_from(&mut cursor)?;
        cursor.finish()?;
        Ok(class)
    }
}

impl FromStr for Indecomposable {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let mut cursor = Cursor::new(s);
        let g = parse_indecomposable(&mut cursor)?;
        cursor.finish()?;
        Ok(g)
    }
}

/// Number of monomorphisms `f ↪ g`.
///
/// * `O(n) ↪ O(m)`: pairs `(a₀, a_∞)` with `a₀ ≥ 0 ≥ a_∞` and
///   `a₀ − a_∞ = m − n`, i.e. `m − n + 1` when `n ≤ m`.
/// * `T(x,m) ↪ T(x,n)`: one when `m ≤ n`.
/// * `C(n) ↪ C(n)`: the `n` rotations compatible with the clutching.
///
/// All other pairs admit none: torsion does not embed into torsion-free
/// sheaves and conversely, torsion at different points has disjoint
/// support, cyclic sheaves are simple, and a line bundle is infinite on
/// each chart.
pub fn hom_count(f: Indecomposable, g: Indecomposable) -> u64 {
    use Indecomposable::*;
    match (f, g) {
        (LineBundle(n), LineBundle(m)) if n <= m => (m - n + 1) as u64,
        (Torsion(x, m), Torsion(y, n)) if x == y && m <= n => 1,
        (Cyclic(n), Cyclic(m)) if n == m => u64::from(n),
        _ => 0,
    }
}

/// The image of a class under `Ψ`: rank, degree and the multiplicity
/// vector of cyclic summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct K0Class {
    pub rank: i64,
    pub degree: i64,
    /// Sparse; zero multiplicities are never stored.
    pub cyclic: BTreeMap<u32, i64>,
}

impl K0Class {
    pub fn of(g: Indecomposable) -> K0Class {
        match g {
            Indecomposable::LineBundle(k) => K0Class {
                rank: 1,
                degree: k,
                ..K0Class::default()
            },
            Indecomposable::Torsion(_, n) => K0Class {
                degree: i64::from(n),
                ..K0Class::default()
            },
            Indecomposable::Cyclic(m) => K0Class {
                cyclic: BTreeMap::from([(m, 1)]),
                ..K0Class::default()
            },
        }
    }

    pub(crate) fn parse_from(cursor: &mut Cursor<'_>) -> PResult<K0Class> {
        cursor.expect("(")?;
        let rank = cursor.i64()?;
        cursor.expect(",")?;
        let degree = cursor.i64()?;
        cursor.expect(",")?;
        cursor.expect("{")?;
        let mut cyclic = BTreeMap::new();
        if !cursor.eat("}") {
            loop {
                let pos = cursor.position();
                let m = cursor.u32()?;
                if m == 0 {
                    return Err(ParseError::new(pos, "cyclic index must be ≥ 1"));
                }
                cursor.expect(":")?;
                let mult = cursor.i64()?;
                if mult != 0 {
                    cyclic.insert(m, mult);
                }
                if !cursor.eat(",") {
                    break;
                }
            }
            cursor.expect("}")?;
        }
        cursor.expect(")")?;
        Ok(K0Class { rank, degree, cyclic })
    }
}

impl Add for K0Class {
    type Output = K0Class;

    fn add(mut self, rhs: K0Class) -> K0Class {
        self.rank += rhs.rank;
        self.degree += rhs.degree;
        for (m, k) in rhs.cyclic {
            let entry = self.cyclic.entry(m).or_insert(0);
            *entry += k;
            if *entry == 0 {
                self.cyclic.remove(&m);
            }
        }
        self
    }
}

impl Neg for K0Class {
    type Output = K0Class;

    fn neg(self) -> K0Class {
        K0Class {
            rank: -self.rank,
            degree: -self.degree,
            cyclic: self.cyclic.into_iter().map(|(m, k)| (m, -k)).collect(),
        }
    }
}

impl Sub for K0Class {
    type Output = K0Class;

    fn sub(self, rhs: K0Class) -> K0Class {
        self + (-rhs)
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {{", self.rank, self.degree)?;
        for (i, (m, k)) in self.cyclic.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}: {k}")?;
        }
        write!(f, "}})")
    }
}

impl FromStr for K0Class {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let mut cursor = Cursor::new(s);
        let class = K0Class::parse_from(&mut cursor)?;
        cursor.finish()?;
        Ok(class)
    }
}

/// `Ψ(F)`: the sum of [`K0Class::of`] over the summands of `F`.
pub fn k0_class(f: &SheafClass) -> K0Class {
    f.summands()
        .iter()
        .fold(K0Class::default(), |acc, &g| acc + K0Class::of(g))
}

/// A cyclic summand of `M₀` matched to one of `M_∞` of the same length,
/// with the clutching shift `z_[0] ↦ z̃_[shift]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicClutch {
    /// Position among the cyclic summands of `M₀`, in canonical order.
    pub at_zero: usize,
    /// Position among the cyclic summands of `M_∞`, in canonical order.
    pub at_infinity: usize,
    pub shift: u32,
}

/// Chart data of a coherent sheaf: a `⟨t⟩`-module on `U₀`, a
/// `⟨t⁻¹⟩`-module on `U_∞`, and a clutching isomorphism between their
/// localizations. Free summands are clutched by `τ_m(t^k) = t^(k−m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingData {
    pub m0: ModuleClass,
    pub m_inf: ModuleClass,
    pub clutch_free: Vec<i64>,
    pub clutch_cyclic: Vec<CyclicClutch>,
}

impl GluingData {
    /// Gluing data that matches cyclic summands in canonical order with
    /// shift zero.
    pub fn aligned(m0: ModuleClass, m_inf: ModuleClass, clutch_free: Vec<i64>) -> Self {
        let clutch_cyclic = (0..m0.cyclic_lengths().count())
            .map(|i| CyclicClutch {
                at_zero: i,
                at_infinity: i,
                shift: 0,
            })
            .collect();
        Self {
            m0,
            m_inf,
            clutch_free,
            clutch_cyclic,
        }
    }

    fn validate(&self) -> Result<()> {
        let rank = self.m0.free_rank();
        if rank != self.m_inf.free_rank() {
            return Err(Error::Gluing(format!(
                "free ranks differ: {} on U₀, {} on U_∞",
                rank,
                self.m_inf.free_rank()
            )));
        }
        if self.clutch_free.len() != rank as usize {
            return Err(Error::Gluing(format!(
                "{} clutching integers for free rank {rank}",
                self.clutch_free.len()
            )));
        }
        let zero: Vec<u32> = self.m0.cyclic_lengths().collect();
        let inf: Vec<u32> = self.m_inf.cyclic_lengths().collect();
        if zero != inf {
            return Err(Error::Gluing(
                "cyclic summands of U₀ and U_∞ have different lengths".into(),
            ));
        }
        let mut used_zero = vec![false; zero.len()];
        let mut used_inf = vec![false; inf.len()];
        for c in &self.clutch_cyclic {
            let (Some(&a), Some(&b)) = (zero.get(c.at_zero), inf.get(c.at_infinity)) else {
                return Err(Error::Gluing("cyclic matching index out of range".into()));
            };
            if a != b {
                return Err(Error::Gluing(format!("cannot clutch C({a}) to C({b})")));
            }
            if c.shift >= a {
                return Err(Error::Gluing(format!("shift {} is not in Z/{a}", c.shift)));
            }
            if std::mem::replace(&mut used_zero[c.at_zero], true)
                || std::mem::replace(&mut used_inf[c.at_infinity], true)
            {
                return Err(Error::Gluing("cyclic matching is not a bijection".into()));
            }
        }
        if used_zero.iter().any(|u| !u) {
            return Err(Error::Gluing("unmatched cyclic summand".into()));
        }
        Ok(())
    }
}

/// The sheaf glued from chart data.
///
/// Torsion on `U₀` only glues to zero on `U_∞` and gives `T0(k)`
/// (symmetrically `Tinf(k)`); matched cycles give `C(n)` whatever the
/// shift; each free generator clutched by `τ_m` gives `O(m)`.
pub fn glue(g: &GluingData) -> Result<SheafClass> {
    g.validate()?;
    let mut summands = Vec::new();
    summands.extend(g.clutch_free.iter().map(|&m| Indecomposable::LineBundle(m)));
    summands.extend(g.m0.torsion_lengths().map(|k| Indecomposable::Torsion(Point::Zero, k)));
    summands.extend(g.m_inf.torsion_lengths().map(|k| Indecomposable::Torsion(Point::Infinity, k)));
    let zero: Vec<u32> = g.m0.cyclic_lengths().collect();
    summands.extend(g.clutch_cyclic.iter().map(|c| Indecomposable::Cyclic(zero[c.at_zero])));
    Ok(SheafClass::new(summands))
}
