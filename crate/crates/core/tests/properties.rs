use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qdelta_core::convection::{psi_p, psi_q};
use qdelta_core::instability::{bn_diff_valuation, modp_congruent};
use qdelta_core::padic::{PadicContext, PadicNum, Weight};
use qdelta_core::series::QSeries;
use qdelta_core::solutions::{b_closed, b_eval, BoundaryLine};
use qdelta_core::symforms::SymFraction;

fn ctx(p: u64, n: u32) -> PadicContext {
    PadicContext::new(p, n).unwrap()
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(5u64), Just(7u64)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dp_is_a_p_derivation(p in prime(), seed in any::<u64>()) {
        let c = ctx(p, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = QSeries::random(&c, 0, 12, &mut rng);
        let y = QSeries::random(&c, 0, 12, &mut rng);
        let (dx, dy) = (x.dp().unwrap(), y.dp().unwrap());
        let sum = &(&dx + &dy) + &QSeries::cp(&x, &y);
        prop_assert!((&x + &y).dp().unwrap().eq_at(&sum, 7));
        let prod = &(&(&x.pow(p) * &dy) + &(&y.pow(p) * &dx)) + &(&dx * &dy).mul_int(p as i64);
        prop_assert!((&x * &y).dp().unwrap().eq_at(&prod, 7));
    }

    #[test]
    fn phi_is_a_ring_map_over_extensions(seed in any::<u64>()) {
        let c = PadicContext::unramified(5, 6, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = QSeries::random(&c, 0, 8, &mut rng);
        let y = QSeries::random(&c, 0, 8, &mut rng);
        prop_assert!((&x * &y).phi_p().eq_at(&(&x.phi_p() * &y.phi_p()), 6));
        prop_assert!((&x + &y).phi_p().eq_at(&(&x.phi_p() + &y.phi_p()), 6));
        let lift = &x.pow(5) + &x.dp().unwrap().mul_int(5);
        prop_assert!(x.phi_p().eq_at(&lift, 5));
    }

    #[test]
    fn dq_commutes_with_phi_l(p in prime(), l in prop_oneof![Just(2u64), Just(3u64)], seed in any::<u64>()) {
        let c = ctx(p, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = QSeries::random(&c, 0, 10, &mut rng);
        let lhs = x.phi_l(l).unwrap().dq();
        let rhs = x.dq().phi_l(l).unwrap().mul_int(l as i64);
        prop_assert!(lhs.eq_at(&rhs, 8));
    }

    #[test]
    fn psi_characters_are_additive(p in prime(), seed in any::<u64>(), e1 in 0i64..3, e2 in 0i64..3) {
        let c = ctx(p, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = QSeries::random_unit(&c, 15, &mut rng).shift(e1);
        let v = QSeries::random_unit(&c, 15, &mut rng).shift(e2);
        let uv = &u * &v;
        prop_assert!(psi_q(&uv).unwrap().eq_at(&(&psi_q(&u).unwrap() + &psi_q(&v).unwrap()), 7));
        prop_assert!(psi_p(&uv).unwrap().eq_at(&(&psi_p(&u).unwrap() + &psi_p(&v).unwrap()), 7));
    }

    #[test]
    fn weights_add(a in proptest::collection::vec(-3i64..4, 0..4),
                   b in proptest::collection::vec(-3i64..4, 0..4),
                   seed in any::<u64>()) {
        let c = PadicContext::unramified(7, 6, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lam = PadicNum::random_unit(&c, &mut rng);
        let (wa, wb) = (Weight::new(&a), Weight::new(&b));
        let sum = &wa + &wb;
        prop_assert_eq!(sum.deg(), wa.deg() + wb.deg());
        let lhs = sum.apply(&lam).unwrap();
        let rhs = &wa.apply(&lam).unwrap() * &wb.apply(&lam).unwrap();
        prop_assert!(lhs.eq_at(&rhs, 6));
    }

    #[test]
    fn exp_and_log_are_inverse(p in prime(), seed in any::<u64>()) {
        let c = ctx(p, 14);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // F in pZ_p + q Z_p[[q]], scaled by p so exp stays integral enough
        let f = QSeries::random(&c, 0, 10, &mut rng).mul_int(p as i64);
        let back = f.exp().unwrap().log().unwrap();
        prop_assert!(back.eq_at(&f, 14 - 4));
        let u = QSeries::random_unit(&c, 10, &mut rng);
        let one_mod_p = u.scale(&u.coeff(0).inv().unwrap()).add_scalar(&PadicNum::from_i64(&c, p as i64));
        let again = one_mod_p.log().unwrap().exp().unwrap();
        prop_assert!(again.eq_at(&one_mod_p, 14 - 4));
    }

    #[test]
    fn bn_closed_forms(num in -60i64..60, den in 1i64..30, n in 0u32..15) {
        let t = BigRational::new(BigInt::from(num), BigInt::from(den));
        let zero = BigRational::from_integer(0.into());
        prop_assert_eq!(b_eval(n as i64, &t, &zero).unwrap(), b_closed(n, BoundaryLine::YZero, &t).unwrap());
        if let Ok(closed) = b_closed(n, BoundaryLine::XZero, &t) {
            prop_assert_eq!(b_eval(n as i64, &zero, &t).unwrap(), closed);
        }
    }

    #[test]
    fn bn_difference_valuation_is_symmetric(z in -50i64..50, z0 in -50i64..50, n in 1u32..8) {
        prop_assume!(z != z0);
        let (a, b) = (BigRational::from_integer(z.into()), BigRational::from_integer(z0.into()));
        prop_assert_eq!(bn_diff_valuation(5, n, &a, &b).unwrap(), bn_diff_valuation(5, n, &b, &a).unwrap());
    }

    #[test]
    fn congruence_is_symmetric(seed in any::<u64>()) {
        let c = ctx(5, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = QSeries::random(&c, 0, 10, &mut rng);
        let g = &f + &QSeries::random(&c, 0, 10, &mut rng).mul_int(5);
        prop_assert_eq!(modp_congruent(&f, &g, 10).unwrap(), None);
        let h = QSeries::random(&c, 0, 10, &mut rng);
        prop_assert_eq!(modp_congruent(&f, &h, 10).unwrap(), modp_congruent(&h, &f, 10).unwrap());
    }

    #[test]
    fn symbolic_forms_print_and_parse(r in 0usize..3) {
        let f = SymFraction::hurlburt().dq().serre_partial(r).add(&SymFraction::hurlburt());
        let text = f.to_string();
        let back: SymFraction = text.parse().unwrap();
        prop_assert_eq!(back, f);
    }
}
