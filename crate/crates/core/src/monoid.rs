//! The three pointed monoids that make up the monoid projective line:
//! `⟨t⟩ ↪ ⟨t, t⁻¹⟩ ↩ ⟨t⁻¹⟩`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// One of the concrete monoids with zero generated by `t`, `t⁻¹`, or both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum F1Monoid {
    /// `⟨t⟩ = {0, 1, t, t², …}`, the coordinate monoid of `U₀`.
    Pos,
    /// `⟨t⁻¹⟩ = {0, 1, t⁻¹, t⁻², …}`, the coordinate monoid of `U_∞`.
    Neg,
    /// `⟨t, t⁻¹⟩`, the coordinate monoid of the overlap `U₀ ∩ U_∞`.
    Laurent,
}

/// `0` or `t^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonoidElement {
    Zero,
    Power(BigInt),
}

impl MonoidElement {
    pub fn one() -> Self {
        MonoidElement::Power(BigInt::zero())
    }

    pub fn t(exponent: impl Into<BigInt>) -> Self {
        MonoidElement::Power(exponent.into())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MonoidElement::Zero)
    }

    pub fn exponent(&self) -> Option<&BigInt> {
        match self {
            MonoidElement::Zero => None,
            MonoidElement::Power(k) => Some(k),
        }
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidElement::Zero => write!(f, "0"),
            MonoidElement::Power(k) if k.is_zero() => write!(f, "1"),
            MonoidElement::Power(k) if k.is_one() => write!(f, "t"),
            MonoidElement::Power(k) => write!(f, "t^{k}"),
        }
    }
}

impl F1Monoid {
    pub fn contains(self, element: &MonoidElement) -> bool {
        match (self, element) {
            (_, MonoidElement::Zero) | (F1Monoid::Laurent, _) => true,
            (F1Monoid::Pos, MonoidElement::Power(k)) => !k.is_negative(),
            (F1Monoid::Neg, MonoidElement::Power(k)) => !k.is_positive(),
        }
    }

    fn check(self, element: &MonoidElement) -> Result<()> {
        if self.contains(element) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{element} is not an element of {self}")))
        }
    }

    pub fn mul(self, a: &MonoidElement, b: &MonoidElement) -> Result<MonoidElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (MonoidElement::Power(j), MonoidElement::Power(k)) => MonoidElement::Power(j + k),
            _ => MonoidElement::Zero,
        })
    }

    /// The monoid obtained by inverting `at`.
    ///
    /// Inverting the absorbing element is rejected.
    pub fn localize(self, at: &MonoidElement) -> Result<F1Monoid> {
        self.check(at)?;
        match at {
            MonoidElement::Zero => Err(Error::Domain(
                "cannot localize at the zero element".to_string(),
            )),
            MonoidElement::Power(k) if k.is_zero() => Ok(self),
            MonoidElement::Power(_) => Ok(F1Monoid::Laurent),
        }
    }

    /// The prime ideals, as symbolic generators.
    pub fn prime_ideals(self) -> Vec<PrimeIdeal> {
        match self {
            F1Monoid::Pos => vec![PrimeIdeal::Zero, PrimeIdeal::Generated(MonoidElement::t(1))],
            F1Monoid::Neg => vec![PrimeIdeal::Zero, PrimeIdeal::Generated(MonoidElement::t(-1))],
            F1Monoid::Laurent => vec![PrimeIdeal::Zero],
        }
    }
}

impl fmt::Display for F1Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            F1Monoid::Pos => "⟨t⟩",
            F1Monoid::Neg => "⟨t⁻¹⟩",
            F1Monoid::Laurent => "⟨t,t⁻¹⟩",
        })
    }
}

/// A prime ideal described by its generator; `(t)` stands for the infinite
/// set `{0, t, t², …}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeIdeal {
    Zero,
    Generated(MonoidElement),
}

impl PrimeIdeal {
    pub fn contains(&self, element: &MonoidElement) -> bool {
        match (self, element) {
            (_, MonoidElement::Zero) => true,
            (PrimeIdeal::Zero, _) => false,
            (PrimeIdeal::Generated(MonoidElement::Zero), _) => false,
            (PrimeIdeal::Generated(MonoidElement::Power(g)), MonoidElement::Power(k)) => {
                // (t^g) = {0} ∪ {t^k : sign k = sign g, |k| ≥ |g|}
                !g.is_zero() && k.signum() == g.signum() && k.abs() >= g.abs()
            }
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeIdeal::Zero => write!(f, "(0)"),
            PrimeIdeal::Generated(g) => write!(f, "({g})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(m: F1Monoid, window: i64) -> Vec<MonoidElement> {
        std::iter::once(MonoidElement::Zero)
            .chain((-window..=window).map(MonoidElement::t))
            .filter(|x| m.contains(x))
            .collect()
    }

    const ALL: [F1Monoid; 3] = [F1Monoid::Pos, F1Monoid::Neg, F1Monoid::Laurent];

    #[test]
    fn multiplication_examples() {
        let pos = F1Monoid::Pos;
        assert_eq!(pos.mul(&MonoidElement::t(2), &MonoidElement::t(3)).unwrap(), MonoidElement::t(5));
        assert_eq!(pos.mul(&MonoidElement::Zero, &MonoidElement::t(7)).unwrap(), MonoidElement::Zero);
        assert_eq!(
            F1Monoid::Laurent.mul(&MonoidElement::t(-1), &MonoidElement::t(1)).unwrap(),
            MonoidElement::one()
        );
        assert!(matches!(
            pos.mul(&MonoidElement::t(-1), &MonoidElement::t(1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn localization() {
        assert_eq!(F1Monoid::Pos.localize(&MonoidElement::t(1)).unwrap(), F1Monoid::Laurent);
        assert_eq!(F1Monoid::Neg.localize(&MonoidElement::t(-1)).unwrap(), F1Monoid::Laurent);
        assert_eq!(F1Monoid::Pos.localize(&MonoidElement::one()).unwrap(), F1Monoid::Pos);
        assert_eq!(F1Monoid::Laurent.localize(&MonoidElement::t(3)).unwrap(), F1Monoid::Laurent);
        assert!(F1Monoid::Pos.localize(&MonoidElement::Zero).is_err());
        assert!(F1Monoid::Pos.localize(&MonoidElement::t(-2)).is_err());
    }

    #[test]
    fn commutative_associative_with_zero_and_one() {
        for m in ALL {
            let xs = members(m, 20);
            let one = MonoidElement::one();
            for a in &xs {
                assert_eq!(m.mul(a, &one).unwrap(), *a);
                assert_eq!(m.mul(&MonoidElement::Zero, a).unwrap(), MonoidElement::Zero);
                for b in &xs {
                    let ab = m.mul(a, b).unwrap();
                    assert!(m.contains(&ab));
                    assert_eq!(ab, m.mul(b, a).unwrap());
                }
            }
            // associativity on a smaller window keeps this cheap
            let ys = members(m, 6);
            for a in &ys {
                for b in &ys {
                    for c in &ys {
                        let left = m.mul(&m.mul(a, b).unwrap(), c).unwrap();
                        let right = m.mul(a, &m.mul(b, c).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    /// Subsets of `{0} ∪ {t^k : |k| ≤ window}` that are ideals and prime,
    /// restricted to the window. Ideals of these monoids are upward closed
    /// in the direction of the generator, so enumerating thresholds suffices.
    fn brute_force_primes(m: F1Monoid, window: i64) -> usize {
        let xs = members(m, window);
        let mut candidates: Vec<Vec<MonoidElement>> = vec![vec![MonoidElement::Zero]];
        match m {
            F1Monoid::Pos => {
                for s in 0..=window {
                    let mut ideal = vec![MonoidElement::Zero];
                    ideal.extend((s..=window).map(MonoidElement::t));
                    candidates.push(ideal);
                }
            }
            F1Monoid::Neg => {
                for s in 0..=window {
                    let mut ideal = vec![MonoidElement::Zero];
                    ideal.extend((-window..=-s).map(MonoidElement::t));
                    candidates.push(ideal);
                }
            }
            F1Monoid::Laurent => candidates.push(xs.clone()),
        }
        candidates
            .into_iter()
            .filter(|p| p.len() < xs.len())
            .filter(|p| {
                xs.iter().all(|x| {
                    xs.iter().all(|y| {
                        let xy = m.mul(x, y).unwrap();
                        let in_window = xy.exponent().map_or(true, |k| k.abs() <= BigInt::from(window));
                        !in_window || !p.contains(&xy) || p.contains(x) || p.contains(y)
                    })
                })
            })
            .count()
    }

    #[test]
    fn prime_ideals_match_enumeration() {
        for m in ALL {
            assert_eq!(m.prime_ideals().len(), brute_force_primes(m, 8), "{m}");
        }
        assert_eq!(
            F1Monoid::Pos.prime_ideals().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            ["(0)", "(t)"]
        );
        assert_eq!(
            F1Monoid::Neg.prime_ideals().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            ["(0)", "(t^-1)"]
        );
        assert_eq!(F1Monoid::Laurent.prime_ideals(), vec![PrimeIdeal::Zero]);
    }

    #[test]
    fn returned_ideals_are_prime() {
        for m in ALL {
            let xs = members(m, 12);
            for p in m.prime_ideals() {
                for x in &xs {
                    for y in &xs {
                        if p.contains(&m.mul(x, y).unwrap()) {
                            assert!(p.contains(x) || p.contains(y), "{p} in {m}: {x} {y}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projective_line_has_three_points() {
        let count = F1Monoid::Pos.prime_ideals().len() + F1Monoid::Neg.prime_ideals().len()
            - F1Monoid::Laurent.prime_ideals().len();
        assert_eq!(count, 3);
    }
}
