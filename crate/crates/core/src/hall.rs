//! The Hall algebra: finitely supported rational functions on isomorphism
//! classes of normal coherent sheaves.
//!
//! `δ_A ⋆ δ_B = Σ_F g^F_{A,B} δ_F`, where `g^F_{A,B}` counts subsheaves
//! `F′ ⊆ F` with `F′ ≅ B` and `F/F′ ≅ A`. The unit is `δ_0`. The coproduct
//! is `Δ(f)(A, B) = f(A ⊕ B)` and tensors multiply componentwise.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};

use crate::error::ParseError;
use crate::parse::{Cursor, PResult};
use crate::sheaf::{extensions, k0_class, Indecomposable, K0Class, SheafClass};
use crate::Rational;

type Middles = Arc<[(SheafClass, u64)]>;

/// Entries kept before the extension cache is flushed.
const CACHE_LIMIT: usize = 1 << 18;

/// Memoized [`extensions`]; products in the verification suites revisit
/// the same pairs many times.
fn middles(a: &SheafClass, b: &SheafClass) -> Middles {
    static CACHE: OnceLock<RwLock<HashMap<(SheafClass, SheafClass), Middles>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (a.clone(), b.clone());
    if let Some(hit) = cache.read().expect("cache lock").get(&key) {
        return hit.clone();
    }
    let computed: Middles = extensions(a, b).into();
    let mut map = cache.write().expect("cache lock");
    if map.len() >= CACHE_LIMIT {
        map.clear();
    }
    map.insert(key, computed.clone());
    computed
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HallElement {
    terms: BTreeMap<SheafClass, Rational>,
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, value: Rational) {
    if value.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(value);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl HallElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `δ_0`.
    pub fn unit() -> Self {
        Self::delta(SheafClass::zero())
    }

    pub fn delta(f: impl Into<SheafClass>) -> Self {
        Self::from_terms([(f.into(), Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SheafClass, Rational)>) -> Self {
        let mut out = BTreeMap::new();
        for (f, c) in terms {
            accumulate(&mut out, f, c);
        }
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, f: &SheafClass) -> Rational {
        self.terms.get(f).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SheafClass, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &SheafClass> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Rational) -> HallElement {
        HallElement::from_terms(self.terms.iter().map(|(f, x)| (f.clone(), x * c)))
    }

    /// The convolution product `self ⋆ other`.
    pub fn star(&self, other: &HallElement) -> HallElement {
        let mut out = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                for (f, count) in middles(a, b).iter() {
                    accumulate(&mut out, f.clone(), &xy * Rational::from_integer((*count).into()));
                }
            }
        }
        HallElement { terms: out }
    }

    /// `[self, other] = self ⋆ other − other ⋆ self`.
    pub fn bracket(&self, other: &HallElement) -> HallElement {
        self.star(other) - other.star(self)
    }

    pub fn coproduct(&self) -> HallTensor {
        let mut out = BTreeMap::new();
        for (f, c) in &self.terms {
            for (a, b) in splittings(f) {
                accumulate(&mut out, (a, b), c.clone());
            }
        }
        HallTensor { terms: out }
    }

    /// The counit `f ↦ f(0)`.
    pub fn counit(&self) -> Rational {
        self.coefficient(&SheafClass::zero())
    }

    /// True iff `Δ(f) = f ⊗ δ_0 + δ_0 ⊗ f`.
    pub fn is_primitive(&self) -> bool {
        let unit = HallElement::unit();
        self.coproduct() == HallTensor::tensor(self, &unit) + HallTensor::tensor(&unit, self)
    }

    pub fn degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(k0_class);
        let Some(first) = degrees.next() else {
            return Degree::Undefined;
        };
        if degrees.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::Nonhomogeneous
        }
    }

    pub(crate) fn parse_from(cursor: &mut Cursor<'_>) -> PResult<HallElement> {
        parse_sum(cursor, parse_bracketed).map(HallElement::from_terms)
    }
}

/// Ordered pairs `(A, B)` of classes with `A ⊕ B = F`, each once.
fn splittings(f: &SheafClass) -> Vec<(SheafClass, SheafClass)> {
    let counts: Vec<(Indecomposable, u32)> = f.counts().into_iter().collect();
    let mut out = Vec::new();
    let mut choice = vec![0u32; counts.len()];
    loop {
        let left = counts
            .iter()
            .zip(&choice)
            .flat_map(|(&(g, _), &k)| std::iter::repeat_n(g, k as usize));
        let right = counts
            .iter()
            .zip(&choice)
            .flat_map(|(&(g, n), &k)| std::iter::repeat_n(g, (n - k) as usize));
        out.push((SheafClass::new(left), SheafClass::new(right)));
        // odometer over 0..=multiplicity
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
            }
            if choice[i] < counts[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// The `K₀` degree of a Hall element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(K0Class),
    Nonhomogeneous,
    /// The zero element has no degree.
    Undefined,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Homogeneous(k) => write!(f, "{k}"),
            Degree::Nonhomogeneous => write!(f, "nonhomogeneous"),
            Degree::Undefined => write!(f, "undefined"),
        }
    }
}

impl Add for HallElement {
    type Output = HallElement;

    fn add(mut self, rhs: HallElement) -> HallElement {
        for (f, c) in rhs.terms {
            accumulate(&mut self.terms, f, c);
        }
        self
    }
}

impl Neg for HallElement {
    type Output = HallElement;

    fn neg(self) -> HallElement {
        HallElement {
            terms: self.terms.into_iter().map(|(f, c)| (f, -c)).collect(),
        }
    }
}

impl Sub for HallElement {
    type Output = HallElement;

    fn sub(self, rhs: HallElement) -> HallElement {
        self + (-rhs)
    }
}

impl Mul for &HallElement {
    type Output = HallElement;

    fn mul(self, rhs: &HallElement) -> HallElement {
        self.star(rhs)
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational) -> fmt::Result {
    let magnitude = c.abs();
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if !magnitude.is_one() {
        write!(f, "{magnitude}*")?;
    }
    Ok(())
}

impl fmt::Display for HallElement {
    /// `3/2*[O(1)+T0(2)] - [C(3)]`; the zero element prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (class, c)) in self.terms.iter().enumerate() {
            write_coefficient(f, i == 0, c)?;
            write!(f, "[{class}]")?;
        }
        Ok(())
    }
}

impl FromStr for HallElement {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut cursor = Cursor::new(s);
        let element = HallElement::parse_from(&mut cursor)?;
        cursor.finish()?;
        Ok(element)
    }
}

fn parse_bracketed(cursor: &mut Cursor<'_>) -> PResult<SheafClass> {
    cursor.expect("[")?;
    let f = SheafClass::parse_from(cursor)?;
    cursor.expect("]")?;
    Ok(f)
}

/// `0` or `[±] term ((+|-) term)*` with `term := [rational *] basis`.
fn parse_sum<K>(
    cursor: &mut Cursor<'_>,
    mut basis: impl FnMut(&mut Cursor<'_>) -> PResult<K>,
) -> PResult<Vec<(K, Rational)>> {
    let mut terms = Vec::new();
    let mut negative = if cursor.eat("-") {
        true
    } else {
        cursor.eat("+");
        false
    };
    loop {
        let coefficient = match cursor.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = cursor.rational()?;
                if !cursor.eat("*") {
                    // a lone `0` is the zero element
                    if c.is_zero() && terms.is_empty() && cursor.at_end() && !negative {
                        return Ok(terms);
                    }
                    return Err(cursor.error("expected `*` after coefficient"));
                }
                c
            }
            _ => Rational::one(),
        };
        let key = basis(cursor)?;
        terms.push((key, if negative { -coefficient } else { coefficient }));
        negative = if cursor.eat("-") {
            true
        } else if cursor.eat("+") {
            false
        } else {
            break;
        };
    }
    Ok(terms)
}

/// An element of `H ⊗ H`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HallTensor {
    terms: BTreeMap<(SheafClass, SheafClass), Rational>,
}

impl HallTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `f ⊗ g`.
    pub fn tensor(f: &HallElement, g: &HallElement) -> HallTensor {
        let mut out = BTreeMap::new();
        for (a, x) in &f.terms {
            for (b, y) in &g.terms {
                accumulate(&mut out, (a.clone(), b.clone()), x * y);
            }
        }
        HallTensor { terms: out }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((SheafClass, SheafClass), Rational)>) -> Self {
        let mut out = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut out, k, c);
        }
        HallTensor { terms: out }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(SheafClass, SheafClass), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exchanges the two legs.
    pub fn swap(&self) -> HallTensor {
        HallTensor::from_terms(
            self.terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone())),
        )
    }

    /// Componentwise product `(a ⊗ b) ⋆ (c ⊗ d) = (a ⋆ c) ⊗ (b ⋆ d)`.
    pub fn star(&self, other: &HallTensor) -> HallTensor {
        let mut out = BTreeMap::new();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let xy = x * y;
                let left = middles(a, c);
                let right = middles(b, d);
                for (f, m) in left.iter() {
                    for (g, n) in right.iter() {
                        let weight = Rational::from_integer((m * n).into());
                        accumulate(&mut out, (f.clone(), g.clone()), &xy * weight);
                    }
                }
            }
        }
        HallTensor { terms: out }
    }

    /// `(Δ ⊗ id)(self)`.
    pub fn coproduct_left(&self) -> TripleTensor {
        let mut out = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            for (x, y) in splittings(a) {
                accumulate(&mut out, (x, y, b.clone()), c.clone());
            }
        }
        TripleTensor { terms: out }
    }

    /// `(id ⊗ Δ)(self)`.
    pub fn coproduct_right(&self) -> TripleTensor {
        let mut out = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            for (y, z) in splittings(b) {
                accumulate(&mut out, (a.clone(), y, z), c.clone());
            }
        }
        TripleTensor { terms: out }
    }

    pub(crate) fn parse_from(cursor: &mut Cursor<'_>) -> PResult<HallTensor> {
        parse_sum(cursor, |c| {
            let a = parse_bracketed(c)?;
            if !c.eat("⊗") {
                c.expect("(x)")?;
            }
            let b = parse_bracketed(c)?;
            Ok((a, b))
        })
        .map(HallTensor::from_terms)
    }
}

impl Add for HallTensor {
    type Output = HallTensor;

    fn add(mut self, rhs: HallTensor) -> HallTensor {
        for (k, c) in rhs.terms {
            accumulate(&mut self.terms, k, c);
        }
        self
    }
}

impl Sub for HallTensor {
    type Output = HallTensor;

    fn sub(mut self, rhs: HallTensor) -> HallTensor {
        for (k, c) in rhs.terms {
            accumulate(&mut self.terms, k, -c);
        }
        self
    }
}

impl fmt::Display for HallTensor {
    /// `[A] ⊗ [B] + 2*[C] ⊗ [D]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            write_coefficient(f, i == 0, c)?;
            write!(f, "[{a}] ⊗ [{b}]")?;
        }
        Ok(())
    }
}

impl FromStr for HallTensor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut cursor = Cursor::new(s);
        let t = HallTensor::parse_from(&mut cursor)?;
        cursor.finish()?;
        Ok(t)
    }
}

/// An element of `H ⊗ H ⊗ H`, used to compare iterated coproducts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleTensor {
    terms: BTreeMap<(SheafClass, SheafClass, SheafClass), Rational>,
}

impl TripleTensor {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}
