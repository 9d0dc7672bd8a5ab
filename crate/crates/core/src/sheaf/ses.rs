//! Short exact sequences, subsheaf counting and extensions.
//!
//! A subsheaf of `⊕ g_j` is the direct sum of its intersections with the
//! summands, and each indecomposable has an explicit list of subsheaves:
//! `T(x,m) ⊂ T(x,n)` for `m ≤ n` (unique), `O(n) ⊂ O(m)` with quotient
//! `T0(k₀) ⊕ Tinf(k_∞)` for `k₀ + k_∞ = m − n` (unique per cokernel), and
//! only `0` and itself inside `C(n)`. Counting subsheaves of a class with
//! prescribed sub and quotient therefore reduces to counting labeled
//! assignments of one elementary pair to each summand.

use std::collections::{BTreeMap, BTreeSet};

use super::{k0_class, Indecomposable, Point, SheafClass};

type Counts = BTreeMap<Indecomposable, u32>;

/// `T0(k₀) ⊕ Tinf(k_∞)`, omitting zero-length parts.
fn torsion_quotient(k0: u32, k_inf: u32) -> SheafClass {
    let mut v = Vec::with_capacity(2);
    if k0 > 0 {
        v.push(Indecomposable::Torsion(Point::Zero, k0));
    }
    if k_inf > 0 {
        v.push(Indecomposable::Torsion(Point::Infinity, k_inf));
    }
    SheafClass::new(v)
}

/// All subsheaves of `O(m)` of degree drop at most `max_drop`, as
/// `(sub, quotient)` pairs. Ordered by drop, then by decreasing length at
/// `0`.
pub fn line_subsheaves(m: i64, max_drop: u32) -> Vec<(Indecomposable, SheafClass)> {
    let mut out = Vec::new();
    for drop in 0..=max_drop {
        for k0 in (0..=drop).rev() {
            out.push((
                Indecomposable::LineBundle(m - i64::from(drop)),
                torsion_quotient(k0, drop - k0),
            ));
        }
    }
    out
}

/// `(sub, quotient)` pairs realized by subsheaves of `g`, with proper
/// nonzero subs restricted to `sub_candidates`. Each pair corresponds to
/// exactly one subsheaf of `g`.
pub fn elementary_pairs(
    g: Indecomposable,
    sub_candidates: &[Indecomposable],
) -> Vec<(SheafClass, SheafClass)> {
    let whole = SheafClass::from(g);
    let mut out = vec![(SheafClass::zero(), whole.clone()), (whole, SheafClass::zero())];
    match g {
        Indecomposable::Torsion(x, n) => {
            let mut lengths: Vec<u32> = sub_candidates
                .iter()
                .filter_map(|c| match *c {
                    Indecomposable::Torsion(y, m) if y == x && m < n => Some(m),
                    _ => None,
                })
                .collect();
            lengths.sort_unstable();
            lengths.dedup();
            for m in lengths {
                out.push((
                    Indecomposable::Torsion(x, m).into(),
                    Indecomposable::Torsion(x, n - m).into(),
                ));
            }
        }
        Indecomposable::LineBundle(m) => {
            let mut degrees: Vec<i64> = sub_candidates
                .iter()
                .filter_map(|c| match *c {
                    Indecomposable::LineBundle(n) if n < m => Some(n),
                    _ => None,
                })
                .collect();
            degrees.sort_unstable();
            degrees.dedup();
            for n in degrees {
                let Ok(drop) = u32::try_from(m - n) else {
                    continue;
                };
                for k0 in (0..=drop).rev() {
                    out.push((Indecomposable::LineBundle(n).into(), torsion_quotient(k0, drop - k0)));
                }
            }
        }
        // C(n) is simple
        Indecomposable::Cyclic(_) => {}
    }
    out
}

fn take(counts: &mut Counts, class: &SheafClass) -> bool {
    let needed = class.counts();
    if needed
        .iter()
        .any(|(g, &k)| counts.get(g).copied().unwrap_or(0) < k)
    {
        return false;
    }
    for (g, k) in needed {
        let entry = counts.get_mut(&g).expect("checked above");
        *entry -= k;
        if *entry == 0 {
            counts.remove(&g);
        }
    }
    true
}

fn put_back(counts: &mut Counts, class: &SheafClass) {
    for &g in class.summands() {
        *counts.entry(g).or_insert(0) += 1;
    }
}

fn total(counts: &Counts) -> usize {
    counts.values().map(|&k| k as usize).sum()
}

/// The Hall number `g^F_{A,B}`: how many subsheaves `F′ ⊆ F` satisfy
/// `F′ ≅ b` and `F/F′ ≅ a`.
///
/// Identical summands of `f` are distinguishable positions, so for example
/// `T0(1) ⊕ T0(1)` has two subsheaves isomorphic to `T0(1)`.
pub fn hall_number(f: &SheafClass, a: &SheafClass, b: &SheafClass) -> u64 {
    if k0_class(f) != k0_class(a) + k0_class(b) {
        return 0;
    }
    let mut sub = b.counts();
    let mut quot = a.counts();
    count_assignments(f.summands(), &mut sub, &mut quot)
}

fn count_assignments(rest: &[Indecomposable], sub: &mut Counts, quot: &mut Counts) -> u64 {
    let Some((&g, tail)) = rest.split_first() else {
        return u64::from(sub.is_empty() && quot.is_empty());
    };
    // every summand consumes one or two items, at most one of them a sub
    let (subs, quots) = (total(sub), total(quot));
    if subs > rest.len() || quots > 2 * rest.len() || subs + quots < rest.len() {
        return 0;
    }
    let candidates: Vec<Indecomposable> = sub.keys().copied().collect();
    let mut count = 0;
    for (s, q) in elementary_pairs(g, &candidates) {
        if !take(sub, &s) {
            continue;
        }
        if take(quot, &q) {
            count += count_assignments(tail, sub, quot);
            put_back(quot, &q);
        }
        put_back(sub, &s);
    }
    count
}

/// Every subsheaf of `f` up to a degree drop of `max_drop` inside each
/// line bundle, tallied by `(quotient, sub)` class.
pub fn subobject_profile(f: &SheafClass, max_drop: u32) -> BTreeMap<(SheafClass, SheafClass), u64> {
    let mut profile = BTreeMap::from([((SheafClass::zero(), SheafClass::zero()), 1u64)]);
    for &g in f.summands() {
        let options: Vec<(SheafClass, SheafClass)> = match g {
            Indecomposable::Torsion(x, n) => (0..=n)
                .map(|m| {
                    let part = |k: u32| -> SheafClass {
                        if k == 0 {
                            SheafClass::zero()
                        } else {
                            Indecomposable::Torsion(x, k).into()
                        }
                    };
                    (part(n - m), part(m))
                })
                .collect(),
            Indecomposable::Cyclic(_) => vec![(g.into(), SheafClass::zero()), (SheafClass::zero(), g.into())],
            Indecomposable::LineBundle(m) => std::iter::once((g.into(), SheafClass::zero()))
                .chain(line_options(m, max_drop))
                .collect(),
        };
        let mut next = BTreeMap::new();
        for ((q, s), c) in &profile {
            for (oq, os) in &options {
                *next.entry((q.direct_sum(oq), s.direct_sum(os))).or_insert(0) += c;
            }
        }
        profile = next;
    }
    profile
}

fn line_options(m: i64, max_drop: u32) -> impl Iterator<Item = (SheafClass, SheafClass)> {
    line_subsheaves(m, max_drop)
        .into_iter()
        .map(|(sub, quot)| (quot, sub.into()))
}

/// All middle terms `F` of short exact sequences `0 → b → F → a → 0`, with
/// the number of subsheaves `F′ ⊆ F` realizing each.
///
/// Middle terms are built by grouping summands of `b` and `a` into
/// elementary blocks: a torsion `T(x,m)` of `b` may merge with one
/// `T(x,k)` of `a` into `T(x,m+k)`, a line bundle `O(n)` of `b` may absorb
/// one `T0(k₀)` and one `Tinf(k_∞)` of `a` into `O(n+k₀+k_∞)`, and
/// everything else splits.
pub fn extensions(a: &SheafClass, b: &SheafClass) -> Vec<(SheafClass, u64)> {
    let mut middles = BTreeSet::new();
    let mut blocks = Vec::with_capacity(b.len());
    let mut remaining = a.counts();
    build_middles(b.summands(), &mut remaining, &mut blocks, &mut middles);
    middles
        .into_iter()
        .map(|f| {
            let count = hall_number(&f, a, b);
            debug_assert!(count > 0, "{f} built as an extension of {a} by {b}");
            (f, count)
        })
        .collect()
}

fn build_middles(
    subs: &[Indecomposable],
    quots: &mut Counts,
    blocks: &mut Vec<Indecomposable>,
    out: &mut BTreeSet<SheafClass>,
) {
    let Some((&g, tail)) = subs.split_first() else {
        let leftover = quots
            .iter()
            .flat_map(|(&q, &k)| std::iter::repeat_n(q, k as usize));
        out.insert(SheafClass::new(blocks.iter().copied().chain(leftover)));
        return;
    };
    blocks.push(g);
    build_middles(tail, quots, blocks, out);
    blocks.pop();

    let available: Vec<Indecomposable> = quots.keys().copied().collect();
    match g {
        Indecomposable::Torsion(x, m) => {
            for q in available {
                let Indecomposable::Torsion(y, k) = q else { continue };
                if y != x {
                    continue;
                }
                let q = SheafClass::from(q);
                take(quots, &q);
                blocks.push(Indecomposable::Torsion(x, m + k));
                build_middles(tail, quots, blocks, out);
                blocks.pop();
                put_back(quots, &q);
            }
        }
        Indecomposable::LineBundle(n) => {
            let lengths_at = |p: Point| -> Vec<u32> {
                std::iter::once(0)
                    .chain(available.iter().filter_map(|q| match *q {
                        Indecomposable::Torsion(y, k) if y == p => Some(k),
                        _ => None,
                    }))
                    .collect()
            };
            for &k0 in &lengths_at(Point::Zero) {
                for &k_inf in &lengths_at(Point::Infinity) {
                    if k0 == 0 && k_inf == 0 {
                        continue;
                    }
                    let q = torsion_quotient(k0, k_inf);
                    take(quots, &q);
                    blocks.push(Indecomposable::LineBundle(n + i64::from(k0) + i64::from(k_inf)));
                    build_middles(tail, quots, blocks, out);
                    blocks.pop();
                    put_back(quots, &q);
                }
            }
        }
        Indecomposable::Cyclic(_) => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sheaf(s: &str) -> SheafClass {
        s.parse().unwrap()
    }

    fn ind(s: &str) -> Indecomposable {
        s.parse().unwrap()
    }

    fn pairs(list: &[(SheafClass, SheafClass)]) -> Vec<String> {
        list.iter().map(|(s, q)| format!("{s} | {q}")).collect()
    }

    #[test]
    fn line_subsheaf_examples() {
        let got: Vec<String> = line_subsheaves(1, 1)
            .iter()
            .map(|(s, q)| format!("{s} | {q}"))
            .collect();
        assert_eq!(got, ["O(1) | 0", "O(0) | T0(1)", "O(0) | Tinf(1)"]);
        assert_eq!(line_subsheaves(5, 0).len(), 1);
        assert_eq!(line_subsheaves(0, 2).len(), 6);
    }

    #[test]
    fn elementary_pair_examples() {
        let got = elementary_pairs(ind("T0(3)"), &[ind("T0(1)"), ind("T0(2)"), ind("Tinf(1)")]);
        assert_eq!(
            pairs(&got),
            ["0 | T0(3)", "T0(3) | 0", "T0(1) | T0(2)", "T0(2) | T0(1)"]
        );
        let got = elementary_pairs(ind("O(2)"), &[ind("O(0)")]);
        assert_eq!(
            pairs(&got),
            ["0 | O(2)", "O(2) | 0", "O(0) | T0(2)", "O(0) | T0(1)+Tinf(1)", "O(0) | Tinf(2)"]
        );
        let got = elementary_pairs(ind("C(4)"), &[ind("C(1)"), ind("C(2)"), ind("O(0)")]);
        assert_eq!(pairs(&got), ["0 | C(4)", "C(4) | 0"]);
    }

    #[test]
    fn hall_number_examples() {
        assert_eq!(hall_number(&sheaf("O(1)"), &sheaf("T0(1)"), &sheaf("O(0)")), 1);
        assert_eq!(hall_number(&sheaf("T0(1)+T0(1)"), &sheaf("T0(1)"), &sheaf("T0(1)")), 2);
        assert_eq!(hall_number(&sheaf("O(0)+O(0)"), &sheaf("O(0)"), &sheaf("O(0)")), 2);
        assert_eq!(hall_number(&sheaf("C(2)"), &sheaf("C(1)"), &sheaf("C(1)")), 0);
        assert_eq!(hall_number(&sheaf("0"), &sheaf("0"), &sheaf("0")), 1);
        assert_eq!(hall_number(&sheaf("O(2)"), &sheaf("T0(1)+Tinf(1)"), &sheaf("O(0)")), 1);
        assert_eq!(hall_number(&sheaf("O(2)"), &sheaf("T0(1)"), &sheaf("O(0)")), 0);
    }

    fn ext(a: &str, b: &str) -> Vec<String> {
        extensions(&sheaf(a), &sheaf(b))
            .into_iter()
            .map(|(f, c)| format!("{c} {f}"))
            .collect()
    }

    #[test]
    fn extension_examples() {
        assert_eq!(ext("T0(1)", "O(0)"), ["1 O(1)", "1 O(0)+T0(1)"]);
        assert_eq!(ext("O(0)", "T0(1)"), ["1 O(0)+T0(1)"]);
        assert_eq!(ext("T0(1)", "T0(1)"), ["1 T0(2)", "2 T0(1)+T0(1)"]);
        assert_eq!(ext("0", "0"), ["1 0"]);
        assert_eq!(
            ext("T0(1)+Tinf(2)", "O(-1)"),
            ["1 O(2)", "1 O(0)+Tinf(2)", "1 O(1)+T0(1)", "1 O(-1)+T0(1)+Tinf(2)"]
        );
    }

    #[test]
    fn profile_counts_every_subsheaf() {
        let f = sheaf("O(0)+T0(2)+C(1)");
        let profile = subobject_profile(&f, 2);
        // O(0): 1 + 6, T0(2): 3, C(1): 2
        assert_eq!(profile.values().sum::<u64>(), 7 * 3 * 2);
        for ((q, s), &c) in &profile {
            assert_eq!(hall_number(&f, q, s), c, "{q} by {s}");
        }
    }
}
