//! Brute-force counts computed from explicit chart data, independent of the
//! closed formulas in [`crate::sheaf`].
//!
//! A sheaf without line bundles is finite on both charts: its sections over
//! `U₀` form the module `T0-part ⊕ C-part` over `⟨t⟩`, and over `U_∞` the
//! module `Tinf-part` over `⟨t⁻¹⟩`. Cyclic summands are simple and live
//! entirely in the `U₀` module, so subsheaves are exactly pairs of
//! submodules of the two chart modules.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::module::{FinModule, ModuleClass, ModuleSummand, BASE};
use crate::monoid::{F1Monoid, MonoidElement};
use crate::sheaf::{Indecomposable, Point, SheafClass};

/// The two chart modules of a sheaf with no line-bundle summands, or `None`
/// if one is present.
pub fn chart_modules(f: &SheafClass) -> Option<Result<(FinModule, FinModule)>> {
    let mut zero = Vec::new();
    let mut infinity = Vec::new();
    for &g in f.summands() {
        match g {
            Indecomposable::LineBundle(_) => return None,
            Indecomposable::Cyclic(n) => zero.push(ModuleSummand::Cyclic(n)),
            Indecomposable::Torsion(Point::Zero, n) => zero.push(ModuleSummand::Torsion(n)),
            Indecomposable::Torsion(Point::Infinity, n) => infinity.push(ModuleSummand::Torsion(n)),
        }
    }
    let build = || -> Result<(FinModule, FinModule)> {
        Ok((
            ModuleClass::new(zero, 0).realize_over(F1Monoid::Pos)?,
            ModuleClass::new(infinity, 0).realize_over(F1Monoid::Neg)?,
        ))
    };
    Some(build())
}

fn sheaf_of(class: &ModuleClass, x: Point) -> SheafClass {
    SheafClass::new(class.summands().iter().map(|s| match *s {
        ModuleSummand::Torsion(n) => Indecomposable::Torsion(x, n),
        ModuleSummand::Cyclic(n) => Indecomposable::Cyclic(n),
    }))
}

/// Every `(sub, quotient)` class on one chart, counted with multiplicity.
fn chart_profile(m: &FinModule, x: Point) -> Result<BTreeMap<(SheafClass, SheafClass), u64>> {
    let mut out = BTreeMap::new();
    for s in m.submodules_bounded(usize::MAX)? {
        let sub = sheaf_of(&m.restrict(&s)?.classify()?, x);
        let quot = sheaf_of(&m.quotient(&s)?.classify()?, x);
        *out.entry((quot, sub)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Subsheaf counts of a line-bundle-free sheaf keyed by `(quotient, sub)`,
/// by enumerating submodules of both chart modules. `None` if `f` has a
/// line-bundle summand.
pub fn submodule_profile(f: &SheafClass) -> Option<Result<BTreeMap<(SheafClass, SheafClass), u64>>> {
    let charts = chart_modules(f)?;
    let run = || -> Result<BTreeMap<(SheafClass, SheafClass), u64>> {
        let (m0, m_inf) = charts?;
        let p0 = chart_profile(&m0, Point::Zero)?;
        let p_inf = chart_profile(&m_inf, Point::Infinity)?;
        let mut out = BTreeMap::new();
        for ((q0, s0), c0) in &p0 {
            for ((qi, si), ci) in &p_inf {
                *out.entry((q0.direct_sum(qi), s0.direct_sum(si))).or_insert(0) += c0 * ci;
            }
        }
        Ok(out)
    };
    Some(run())
}

/// Lengths of the quotients `⟨t⟩/I` by ideals `I ⊇ (t^bound)`, read off
/// the truncation `⟨t⟩/(t^bound)` as a ladder module.
pub fn ideal_colengths(bound: u32) -> Result<Vec<u32>> {
    let ladder = ModuleClass::new(vec![ModuleSummand::Torsion(bound)], 0).realize()?;
    let mut out = Vec::new();
    for s in ladder.submodules_bounded(usize::MAX)? {
        let q = ladder.quotient(&s)?.classify()?;
        out.push(q.size());
    }
    out.sort_unstable();
    Ok(out)
}

/// Subsheaves of `O(m)` with degree drop at most `max_drop`, from pairs of
/// ideals on the two charts: `(sub degree, length at 0, length at ∞)`.
pub fn line_subsheaf_lattice(m: i64, max_drop: u32) -> Result<Vec<(i64, u32, u32)>> {
    let lengths = ideal_colengths(max_drop)?;
    let mut out = Vec::new();
    for &a0 in &lengths {
        for &a_inf in &lengths {
            if a0 + a_inf <= max_drop {
                out.push((m - i64::from(a0 + a_inf), a0, a_inf));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Morphisms `O(n) → O(m)` found by searching chart maps `e₀ ↦ t^{a₀} f₀`
/// and `e_∞ ↦ t^{-a_∞} f_∞` with `0 ≤ a₀, a_∞ ≤ search`, keeping those that
/// agree on the overlap. The transition functions are `e_∞ = t^n e₀` and
/// `f_∞ = t^m f₀`.
pub fn line_hom_lattice(n: i64, m: i64, search: u32) -> u64 {
    let laurent = F1Monoid::Laurent;
    let power = |k: i64| MonoidElement::Power(k.into());
    let mut count = 0;
    for a0 in 0..=i64::from(search) {
        for a_inf in 0..=i64::from(search) {
            // both sides expressed as multiples of f₀
            let via_zero = laurent.mul(&power(n), &power(a0)).expect("Laurent units");
            let via_infinity = laurent.mul(&power(-a_inf), &power(m)).expect("Laurent units");
            if via_zero == via_infinity {
                count += 1;
            }
        }
    }
    count
}

/// Injective module maps `M → N` commuting with the action, found by
/// backtracking over element images.
pub fn count_monomorphisms(m: &FinModule, n: &FinModule) -> u64 {
    // assign elements whose image under t is already placed first
    let mut order = vec![BASE];
    let mut placed = vec![false; m.size() + 1];
    placed[BASE] = true;
    while order.len() <= m.size() {
        let next = (1..=m.size())
            .find(|&x| !placed[x] && placed[m.act(x)])
            .or_else(|| (1..=m.size()).find(|&x| !placed[x]))
            .expect("unplaced element");
        placed[next] = true;
        order.push(next);
    }
    let mut image = vec![None; m.size() + 1];
    image[BASE] = Some(BASE);
    let mut used = vec![false; n.size() + 1];
    search(m, n, &order, 1, &mut image, &mut used)
}

fn search(
    m: &FinModule,
    n: &FinModule,
    order: &[usize],
    depth: usize,
    image: &mut [Option<usize>],
    used: &mut [bool],
) -> u64 {
    let Some(&x) = order.get(depth) else {
        return 1;
    };
    let mut count = 0;
    for y in 1..=n.size() {
        if used[y] {
            continue;
        }
        image[x] = Some(y);
        // every relation among placed elements must be respected
        let consistent = (0..=m.size()).all(|z| match (image[z], image[m.act(z)]) {
            (Some(a), Some(b)) => n.act(a) == b,
            _ => true,
        });
        if consistent {
            used[y] = true;
            count += search(m, n, order, depth + 1, image, used);
            used[y] = false;
        }
        image[x] = None;
    }
    count
}

/// Nonzero normal morphisms from the free module `⟨t⟩` to `n`: the image
/// `y` of the generator determines the map `t^i ↦ t^i·y`, which is normal
/// when the orbit of `y` meets no element twice before reaching `*`.
pub fn free_normal_maps(n: &FinModule) -> u64 {
    let mut count = 0;
    for y in 1..=n.size() {
        let mut seen = vec![false; n.size() + 1];
        let mut z = y;
        let mut normal = true;
        while z != BASE {
            if seen[z] {
                // an orbit that cycles forever: t^i ↦ t^i·y is not injective
                normal = false;
                break;
            }
            seen[z] = true;
            z = n.act(z);
        }
        count += u64::from(normal);
    }
    count
}

/// Monomorphisms between sheaves without line bundles, as compatible pairs
/// of chart monomorphisms. Cyclic summands are glued by the identity on
/// the overlap, so the `U₀` data determines them.
pub fn chart_hom(f: &SheafClass, g: &SheafClass) -> Option<Result<u64>> {
    let (a, b) = (chart_modules(f)?, chart_modules(g)?);
    let run = || -> Result<u64> {
        let ((f0, f_inf), (g0, g_inf)) = (a?, b?);
        Ok(count_monomorphisms(&f0, &g0) * count_monomorphisms(&f_inf, &g_inf))
    };
    Some(run())
}
