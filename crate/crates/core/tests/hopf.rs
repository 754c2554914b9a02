use graftwood::hopf::{coproduct_left, coproduct_right, multiply, tensor_product};
use graftwood::suites::{closure_property, forest_check};
use graftwood::{
    antipode, coproduct, coproduct_elem, counit, generate_set, product, Algebra, AlgebraElement, Coeff,
    CoproductVariant, FamilySelector, OrderedForest, Tensor2Element,
};
use num_traits::Zero;
use proptest::prelude::*;

use CoproductVariant::{Full, LeftRoot, PrecRed, Reduced, RightRoot, SuccRed};

fn delta(f: &OrderedForest, v: CoproductVariant) -> Tensor2Element {
    coproduct(f, v).unwrap()
}

fn assert_all(name: &str, forests: &[OrderedForest], property: impl Fn(&OrderedForest) -> Result<(), String> + Sync + Send) {
    let c = forest_check(name, forests, graftwood::Strategy::Parallel, property);
    assert!(c.passed(), "{c}");
}

fn coassociative(v: CoproductVariant) -> impl Fn(&OrderedForest) -> Result<(), String> + Sync + Send {
    move |f| {
        let d = delta(f, v);
        let lhs = coproduct_left(&d, Full).unwrap();
        let rhs = coproduct_right(&d, v).unwrap();
        if lhs == rhs { Ok(()) } else { Err(format!("{v}")) }
    }
}

#[test]
fn coassociativity() {
    assert_all("coassociativity", &Algebra::B.basis_up_to(6), coassociative(Full));
}

#[test]
fn mixed_coassociativity() {
    let basis = Algebra::B.basis_up_to(6);
    assert_all("left root", &basis, coassociative(LeftRoot));
    assert_all("right root", &basis, coassociative(RightRoot));
}

#[test]
fn multiplicativity() {
    for a in Algebra::B.basis_up_to(5) {
        for b in Algebra::B.basis_up_to(6 - a.degree()) {
            assert_eq!(delta(&a.concat(&b), Full), tensor_product(&delta(&a, Full), &delta(&b, Full)), "{a} · {b}");
        }
    }
}

#[test]
fn g_forests_cut_into_g_words() {
    let forests: Vec<OrderedForest> = (1..=7).flat_map(|n| generate_set(FamilySelector::G, n, None).unwrap()).collect();
    assert_all("G forests", &forests, closure_property(Algebra::Binfty));
}

#[test]
fn b_is_closed() {
    assert_all("B", &Algebra::B.basis_up_to(6), closure_property(Algebra::B));
}

#[test]
fn plus_forests_have_plus_trunks() {
    let forests: Vec<OrderedForest> = (1..=6).flat_map(|n| generate_set(FamilySelector::G0, n, None).unwrap()).collect();
    assert_all("G0 trunks", &forests, |f| {
        for ((_, roo), _) in delta(f, Full).iter() {
            if !Algebra::B0.contains(roo) {
                return Err(format!("trunk {roo}"));
            }
        }
        Ok(())
    });
}

#[test]
fn dendriform_coalgebra() {
    assert_all("E2", &Algebra::B.basis_up_to(6), |f| {
        let left = |d: &Tensor2Element, v| coproduct_left(d, v).unwrap();
        let right = |d: &Tensor2Element, v| coproduct_right(d, v).unwrap();
        let (p, s, r) = (delta(f, PrecRed), delta(f, SuccRed), delta(f, Reduced));
        if p.clone() + s.clone() != r {
            return Err("split".into());
        }
        if left(&p, PrecRed) != right(&p, Reduced) {
            return Err("first axiom".into());
        }
        if left(&p, SuccRed) != right(&s, PrecRed) {
            return Err("second axiom".into());
        }
        if left(&s, Reduced) != right(&s, SuccRed) {
            return Err("third axiom".into());
        }
        Ok(())
    });
}

#[test]
fn antipode_law() {
    let unit = AlgebraElement::basis(OrderedForest::empty());
    for f in std::iter::once(OrderedForest::empty()).chain(Algebra::B.basis_up_to(5)) {
        let d = delta(&f, Full);
        let left = multiply(&d.flat_map(|(a, b)| {
            antipode(&AlgebraElement::basis(a.clone())).flat_map(|s| Tensor2Element::basis((s.clone(), b.clone())))
        }));
        let want = unit.scaled(&counit(&AlgebraElement::basis(f.clone())));
        assert_eq!(left, want, "{f}");
    }
}

#[test]
fn antipode_is_an_anti_morphism() {
    // S(xy) = S(y)S(x) on small words.
    for a in Algebra::B.basis_up_to(3) {
        for b in Algebra::B.basis_up_to(3) {
            let ab = antipode(&AlgebraElement::basis(a.concat(&b)));
            let sa = antipode(&AlgebraElement::basis(a.clone()));
            let sb = antipode(&AlgebraElement::basis(b.clone()));
            assert_eq!(ab, product(&sb, &sa), "{a} · {b}");
        }
    }
}

#[test]
fn counit_is_a_counit() {
    for f in Algebra::B.basis_up_to(5) {
        let d = delta(&f, Full);
        let mut left = AlgebraElement::zero();
        for ((a, b), c) in d.iter() {
            let e = counit(&AlgebraElement::basis(a.clone()));
            left += &AlgebraElement::basis(b.clone()).scaled(&(e * c));
        }
        assert_eq!(left, AlgebraElement::basis(f.clone()));
    }
}

fn arb_element() -> impl Strategy<Value = AlgebraElement> {
    let basis = Algebra::B.basis_up_to(4);
    proptest::collection::vec((0..basis.len(), -5i64..=5), 0..5).prop_map(move |terms| {
        terms
            .into_iter()
            .map(|(i, c)| (basis[i].clone(), Coeff::from_integer(c.into())))
            .collect()
    })
}

proptest! {
    #[test]
    fn coproduct_is_linear(a in arb_element(), b in arb_element(), k in -3i64..=3) {
        let k = Coeff::from_integer(k.into());
        let combo = a.scaled(&k) + b.clone();
        let lhs = coproduct_elem(&combo, Full).unwrap();
        let rhs = coproduct_elem(&a, Full).unwrap().scaled(&k) + coproduct_elem(&b, Full).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_is_multiplicative_on_elements(a in arb_element(), b in arb_element()) {
        let lhs = coproduct_elem(&product(&a, &b), Full).unwrap();
        let rhs = tensor_product(&coproduct_elem(&a, Full).unwrap(), &coproduct_elem(&b, Full).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_combinations_never_store_zero(a in arb_element()) {
        let diff = a.clone() - a.clone();
        prop_assert!(diff.is_zero());
        prop_assert!(a.iter().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn unit_is_neutral(a in arb_element()) {
        let one = AlgebraElement::basis(OrderedForest::empty());
        prop_assert_eq!(product(&one, &a), a.clone());
        prop_assert_eq!(product(&a, &one), a.clone());
    }
}
