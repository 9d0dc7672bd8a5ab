use num_integer::Integer;
use p1hall::lie::lie_bracket;
use p1hall::sheaf::{extensions, hall_number, k0_class};
use p1hall::{
    F1Monoid, FinModule, HallElement, Indecomposable, K0Class, LieBasisVector, LieElement,
    ModuleClass, ModuleSummand, MonoidElement, Point, Rational, SheafClass,
};
use proptest::prelude::*;

fn summand() -> impl Strategy<Value = ModuleSummand> {
    prop_oneof![
        (1u32..=5).prop_map(ModuleSummand::Torsion),
        (1u32..=5).prop_map(ModuleSummand::Cyclic),
    ]
}

fn module_class(max_parts: usize) -> impl Strategy<Value = ModuleClass> {
    prop::collection::vec(summand(), 0..=max_parts).prop_map(|v| ModuleClass::new(v, 0))
}

fn indecomposable() -> impl Strategy<Value = Indecomposable> {
    prop_oneof![
        (-3i64..=3).prop_map(Indecomposable::LineBundle),
        (1u32..=3).prop_map(Indecomposable::Cyclic),
        (1u32..=3).prop_map(|n| Indecomposable::Torsion(Point::Zero, n)),
        (1u32..=3).prop_map(|n| Indecomposable::Torsion(Point::Infinity, n)),
    ]
}

fn sheaf(max_parts: usize) -> impl Strategy<Value = SheafClass> {
    prop::collection::vec(indecomposable(), 0..=max_parts).prop_map(SheafClass::new)
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn hall_element() -> impl Strategy<Value = HallElement> {
    prop::collection::vec((sheaf(2), small_rational()), 0..=3).prop_map(HallElement::from_terms)
}

fn lie_basis() -> impl Strategy<Value = LieBasisVector> {
    prop_oneof![
        (-5i64..=5).prop_map(LieBasisVector::E),
        (1u32..=5).prop_map(LieBasisVector::H1),
        (1u32..=5).prop_map(LieBasisVector::H2),
        (1u32..=5).prop_map(LieBasisVector::K),
    ]
}

fn lie_element() -> impl Strategy<Value = LieElement> {
    prop::collection::vec((lie_basis(), small_rational()), 0..=4).prop_map(LieElement::from_terms)
}

proptest! {
    #[test]
    fn classify_inverts_realize(c in module_class(5)) {
        let m = c.realize().unwrap();
        prop_assert!(m.check_normal());
        prop_assert_eq!(m.classify().unwrap(), c);
    }

    #[test]
    fn direct_sum_is_union(a in module_class(3), b in module_class(3)) {
        let sum = a.realize().unwrap().direct_sum(&b.realize().unwrap()).unwrap();
        prop_assert_eq!(sum.classify().unwrap(), a.union(&b));
    }

    #[test]
    fn module_text_round_trips(c in module_class(4)) {
        let m = c.realize().unwrap();
        let back: FinModule = m.to_string().parse().unwrap();
        prop_assert_eq!(back, m);
        prop_assert_eq!(c.to_string().parse::<ModuleClass>().unwrap(), c);
    }

    #[test]
    fn submodules_split_the_module(c in module_class(3)) {
        let m = c.realize().unwrap();
        for s in m.submodules().unwrap() {
            prop_assert!(m.is_submodule(&s));
            let sub = m.restrict(&s).unwrap();
            let quot = m.quotient(&s).unwrap();
            prop_assert_eq!(sub.size() + quot.size(), m.size());
            prop_assert!(sub.check_normal() && quot.check_normal());
        }
    }

    #[test]
    fn submodules_of_sums_split(a in module_class(2), b in module_class(2)) {
        let sum = a.realize().unwrap().direct_sum(&b.realize().unwrap()).unwrap();
        for r in sum.submodules().unwrap() {
            let side = |prefix: &str| -> std::collections::BTreeSet<usize> {
                r.iter().copied().filter(|&m| m == 0 || sum.label(m).starts_with(prefix)).collect()
            };
            let (left, right) = (side("a."), side("b."));
            prop_assert!(sum.is_submodule(&left) && sum.is_submodule(&right));
            let union: std::collections::BTreeSet<usize> = left.union(&right).copied().collect();
            prop_assert_eq!(union, r);
        }
    }

    #[test]
    fn ladder_submodules_are_unique(n in 1u32..=8) {
        let t = ModuleClass::new(vec![ModuleSummand::Torsion(n)], 0).realize().unwrap();
        let subs = t.submodules().unwrap();
        prop_assert_eq!(subs.len(), n as usize + 1);
        for (m, s) in subs.iter().enumerate() {
            prop_assert_eq!(s.len(), m + 1);
            let q = t.quotient(s).unwrap().classify().unwrap();
            prop_assert_eq!(q.size(), n - m as u32);
            prop_assert!(q.cyclic_lengths().next().is_none());
        }
    }

    #[test]
    fn localization_inverts_t(c in module_class(4)) {
        let m = c.realize().unwrap();
        let l = m.localize_module();
        prop_assert!(l.is_invertible_action());
        let cycles: Vec<u32> = c.cyclic_lengths().collect();
        let expected = ModuleClass::new(cycles.into_iter().map(ModuleSummand::Cyclic).collect(), 0);
        prop_assert_eq!(l.classify().unwrap(), expected);
    }

    #[test]
    fn torsion_part_is_idempotent(c in module_class(4)) {
        let m = c.realize().unwrap();
        let t = m.restrict(&m.torsion_submodule()).unwrap();
        prop_assert_eq!(t.torsion_submodule(), t.all_elements());
        let lengths: Vec<u32> = c.torsion_lengths().collect();
        let expected = ModuleClass::new(lengths.into_iter().map(ModuleSummand::Torsion).collect(), 0);
        prop_assert_eq!(t.classify().unwrap(), expected);
    }

    #[test]
    fn smash_of_cycles_is_gcd(m in 1u32..=6, n in 1u32..=6) {
        let cm = ModuleClass::new(vec![ModuleSummand::Cyclic(m)], 0).realize().unwrap();
        let cn = ModuleClass::new(vec![ModuleSummand::Cyclic(n)], 0).realize().unwrap();
        let smash = cm.smash_product(&cn).unwrap();
        let expected = ModuleClass::new(vec![ModuleSummand::Cyclic(m.gcd(&n))], 0);
        prop_assert_eq!(smash.classify().unwrap(), expected);
    }

    #[test]
    fn monoid_product_is_associative(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
        let p = |k: i64| MonoidElement::Power(k.into());
        let l = F1Monoid::Laurent;
        let left = l.mul(&l.mul(&p(a), &p(b)).unwrap(), &p(c)).unwrap();
        let right = l.mul(&p(a), &l.mul(&p(b), &p(c)).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sheaf_text_round_trips(f in sheaf(4)) {
        prop_assert_eq!(f.to_string().parse::<SheafClass>().unwrap(), f.clone());
        let k = k0_class(&f);
        prop_assert_eq!(k.to_string().parse::<K0Class>().unwrap(), k);
    }

    #[test]
    fn hall_text_round_trips(x in hall_element()) {
        prop_assert_eq!(x.to_string().parse::<HallElement>().unwrap(), x.clone());
        let t = x.coproduct();
        prop_assert_eq!(t.to_string().parse::<p1hall::HallTensor>().unwrap(), t);
    }

    #[test]
    fn extensions_are_graded(a in sheaf(2), b in sheaf(2)) {
        let want = k0_class(&a) + k0_class(&b);
        for (f, count) in extensions(&a, &b) {
            prop_assert!(count > 0);
            prop_assert_eq!(k0_class(&f), want.clone());
            prop_assert_eq!(hall_number(&f, &a, &b), count);
        }
    }

    #[test]
    fn star_is_bilinear(x in hall_element(), y in hall_element(), z in hall_element()) {
        prop_assert_eq!(x.star(&(y.clone() + z.clone())), x.star(&y) + x.star(&z));
        prop_assert_eq!(HallElement::unit().star(&x), x.clone());
        prop_assert_eq!(x.star(&HallElement::unit()), x);
    }

    #[test]
    fn lie_bracket_is_antisymmetric(x in lie_element(), y in lie_element()) {
        prop_assert_eq!(lie_bracket(&x, &y), -lie_bracket(&y, &x));
    }

    #[test]
    fn jacobi(x in lie_element(), y in lie_element(), z in lie_element()) {
        let j = lie_bracket(&x, &lie_bracket(&y, &z))
            + lie_bracket(&y, &lie_bracket(&z, &x))
            + lie_bracket(&z, &lie_bracket(&x, &y));
        prop_assert!(j.is_zero());
    }
}

#[test]
fn jacobi_exhaustive_on_basis() {
    let basis = LieBasisVector::bounded(5);
    for &x in &basis {
        for &y in &basis {
            let (ex, ey) = (LieElement::basis(x), LieElement::basis(y));
            assert_eq!(lie_bracket(&ex, &ey), -lie_bracket(&ey, &ex));
            for &z in &basis {
                let ez = LieElement::basis(z);
                let j = lie_bracket(&ex, &lie_bracket(&ey, &ez))
                    + lie_bracket(&ey, &lie_bracket(&ez, &ex))
                    + lie_bracket(&ez, &lie_bracket(&ex, &ey));
                assert!(j.is_zero(), "{x} {y} {z}");
            }
        }
    }
}
