//! Property-based invariants of the exact arithmetic and the algebra structures.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use radical_hopf::hopf::{act, h_comul};
use radical_hopf::profinite::nu_h;
use radical_hopf::smash::{decompose_endomorphism, smash_mult, to_end_matrix, SmashElt};
use radical_hopf::variants::VariantGroup;
use radical_hopf::{CycloElt, FieldDescriptor, HElt, RadicalElt, Rat};

fn big(r: &Rat) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

fn rat() -> impl Strategy<Value = Rat> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Rat::new(n, d))
}

fn rats(len: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(rat(), len)
}

fn two() -> Rat {
    Rat::from_int(2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rat_matches_bigrational(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
        let (x, y) = (Rat::new(a, b), Rat::new(c, d));
        let (bx, by) = (BigRational::new(BigInt::from(a), BigInt::from(b)), BigRational::new(BigInt::from(c), BigInt::from(d)));
        prop_assert_eq!(big(&(x.clone() + y.clone())), &bx + &by);
        prop_assert_eq!(big(&(x.clone() * y.clone())), &bx * &by);
        prop_assert_eq!(big(&(x.clone() - y.clone())), &bx - &by);
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
    }

    #[test]
    fn rat_string_round_trip(x in rat()) {
        prop_assert_eq!(x.to_string().parse::<Rat>().unwrap(), x);
    }

    #[test]
    fn cyclotomic_field_axioms(a in rats(6), b in rats(6), c in rats(6)) {
        let f = FieldDescriptor::new(3, 2).unwrap();
        let (x, y, z) = (
            CycloElt::from_coeffs(f, a).unwrap(),
            CycloElt::from_coeffs(f, b).unwrap(),
            CycloElt::from_coeffs(f, c).unwrap(),
        );
        prop_assert_eq!(x.try_mul(&y).unwrap(), y.try_mul(&x).unwrap());
        prop_assert_eq!(x.try_mul(&y).unwrap().try_mul(&z).unwrap(), x.try_mul(&y.try_mul(&z).unwrap()).unwrap());
        prop_assert_eq!(
            x.try_mul(&y.try_add(&z).unwrap()).unwrap(),
            x.try_mul(&y).unwrap().try_add(&x.try_mul(&z).unwrap()).unwrap()
        );
        if !x.is_zero() {
            prop_assert_eq!(x.try_mul(&x.inverse().unwrap()).unwrap(), CycloElt::one(f));
        }
    }

    #[test]
    fn galois_action_is_a_ring_map(a in rats(6), b in rats(6), e in 0i64..6) {
        let f = FieldDescriptor::new(3, 2).unwrap();
        let (x, y) = (CycloElt::from_coeffs(f, a).unwrap(), CycloElt::from_coeffs(f, b).unwrap());
        prop_assert_eq!(x.try_mul(&y).unwrap().delta_apply(e), x.delta_apply(e).try_mul(&y.delta_apply(e)).unwrap());
    }

    #[test]
    fn h_action_is_a_module_action(h in rats(9), k in rats(9), x in rats(9)) {
        let f = FieldDescriptor::new(3, 2).unwrap();
        let (h, k) = (HElt::new(f, h).unwrap(), HElt::new(f, k).unwrap());
        let x = RadicalElt::new(3, 2, two(), x).unwrap();
        prop_assert_eq!(act(&h.try_mul(&k).unwrap(), &x).unwrap(), act(&h, &act(&k, &x).unwrap()).unwrap());
        prop_assert_eq!(act(&HElt::one(f), &x).unwrap(), x);
    }

    #[test]
    fn h_action_measures(i in 0u64..9, x in rats(9), y in rats(9)) {
        let f = FieldDescriptor::new(3, 2).unwrap();
        let (x, y) = (RadicalElt::new(3, 2, two(), x).unwrap(), RadicalElt::new(3, 2, two(), y).unwrap());
        let lhs = act(&HElt::basis(f, i), &x.try_mul(&y).unwrap()).unwrap();
        let mut rhs = RadicalElt::zero(3, 2, two()).unwrap();
        for (a, b) in h_comul(i, 3, 2).unwrap() {
            let term = act(&HElt::basis(f, a), &x).unwrap().try_mul(&act(&HElt::basis(f, b), &y).unwrap()).unwrap();
            rhs = rhs.try_add(&term).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nu_is_an_algebra_map(h in rats(9), k in rats(9)) {
        let f = FieldDescriptor::new(3, 2).unwrap();
        let (h, k) = (HElt::new(f, h).unwrap(), HElt::new(f, k).unwrap());
        let lhs = nu_h(2, &h.try_mul(&k).unwrap()).unwrap();
        let rhs = nu_h(2, &h).unwrap().try_mul(&nu_h(2, &k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(nu_h(2, &h).unwrap().counit(), h.counit());
    }

    #[test]
    fn smash_to_end_is_multiplicative(x in rats(9), y in rats(9)) {
        let terms = |c: Vec<Rat>| (0..9u64).map(|k| ((k / 3, k % 3), c[k as usize].clone())).collect::<Vec<_>>();
        let x = SmashElt::from_terms(3, 1, two(), terms(x));
        let y = SmashElt::from_terms(3, 1, two(), terms(y));
        let xy = smash_mult(&x, &y).unwrap();
        prop_assert_eq!(to_end_matrix(&xy), to_end_matrix(&x).try_mul(&to_end_matrix(&y)).unwrap());
        prop_assert_eq!(decompose_endomorphism(&to_end_matrix(&x), 3, 1, &two()).unwrap(), x);
    }

    #[test]
    fn gamma_permutation_is_a_homomorphism(s in 0i64..9, b in 0i64..6, t in 0i64..9, d in 0i64..6, r in 0u32..3) {
        let g = VariantGroup::new(3, 2, r).unwrap();
        let (x, y) = (g.elt(s, b), g.elt(t, d));
        prop_assert_eq!(x.mul(&y).permutation(), x.permutation().compose(&y.permutation()));
        prop_assert_eq!(x.mul(&x.inverse()), g.identity());
    }
}
