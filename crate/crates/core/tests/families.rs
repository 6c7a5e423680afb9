use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qdelta_core::convection::{residual, term_solver, EquationParams, IotaDecoder, PivotStatus, Rhs};
use qdelta_core::modforms::tate_point;
use qdelta_core::padic::{PadicContext, PadicNum, Scalar};
use qdelta_core::series::QSeries;
use qdelta_core::solutions::{u_additive, u_modular_deformed, u_modular_plain, u_mult, SolutionFamily};

fn ctx() -> PadicContext {
    PadicContext::new(5, 8).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn additive_family_at_p5() {
    let c = ctx();
    let u = u_additive(&c, &Scalar::int(0), 1, &Scalar::int(1), 30).unwrap();
    let mut expect = vec![BigRational::from_integer(0.into()); 31];
    expect[1] = rat(1, 1);
    expect[5] = rat(-1, 4);
    expect[25] = rat(1, 96);
    assert!(u.eq_at(&QSeries::from_rationals(&c, 0, &expect).unwrap(), 8));
    assert!(u.is_integral());
    let zero = u_additive(&c, &Scalar::int(0), 1, &Scalar::int(0), 30).unwrap();
    assert!(zero.eq_at(&QSeries::zero(&c, 30), 8));
    assert!(u_additive(&c, &Scalar::int(0), 5, &Scalar::int(1), 30).is_err());
}

#[test]
fn multiplicative_family_matches_the_hybrid_exponential() {
    // z = 0: exp(alpha q^k / k + sum_n alpha q^(k p^n) / (k p^n (1 - p)...(1 - p^n)))
    let c = ctx();
    let hi = c.with_cap(30).unwrap();
    for (kappa, alpha) in [(1u64, 1i64), (2, 3), (3, 2)] {
        let mut f = vec![BigRational::from_integer(0.into()); 41];
        let mut e = kappa as i64;
        let mut den = BigRational::from_integer(1.into());
        let mut pn = 1i64;
        while e <= 40 {
            f[e as usize] = rat(alpha, e) / &den;
            pn *= 5;
            den *= rat(1 - pn, 1);
            e *= 5;
        }
        let oracle = QSeries::from_rationals(&hi, 0, &f).unwrap().exp().unwrap();
        let u = u_mult(&c, &Scalar::int(0), kappa, &Scalar::int(alpha), 40).unwrap();
        assert!(u.eq_at(&oracle.reduce_abs(8).with_context(&c).unwrap(), 8), "kappa={kappa}");
        assert!(u.is_integral());
    }
    let one = u_mult(&c, &Scalar::int(5), 2, &Scalar::int(0), 20).unwrap();
    assert!(one.eq_at(&QSeries::one(&c, 20), 8));
}

#[test]
fn families_solve_their_equations_over_an_extension() {
    let c = PadicContext::unramified(5, 8, 2).unwrap();
    let alpha = Scalar::Exact(vec![rat(1, 1), rat(2, 1)]);
    let zeta = PadicNum::teichmuller(&c, &[1, 3]).unwrap();
    let fam = SolutionFamily::kernel(&c, Scalar::int(5), 2, alpha.clone(), zeta, 30).unwrap();
    let eq = EquationParams::new(Scalar::int(2), Scalar::int(5), Rhs::Zero).unwrap();
    assert!(residual(fam.series().unwrap(), &eq, None).unwrap().passed);
    let fam = SolutionFamily::inhomogeneous(&c, Scalar::int(5), 2, alpha, PadicNum::one(&c), 30).unwrap();
    let eq = EquationParams::new(Scalar::int(2), Scalar::int(5), Rhs::MinusOne).unwrap();
    assert!(residual(fam.series().unwrap(), &eq, None).unwrap().passed);
}

#[test]
fn modular_families_decode_to_their_parameters() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let eta = PadicNum::from_i64(&c, 3);
    let v = QSeries::random_unit(&c, 20, &mut rng);
    let plain = u_modular_plain(&c, &eta, &QSeries::one(&c, 20), 20).unwrap();
    let t = tate_point(&c, 20);
    let unit = u_modular_plain(&c, &PadicNum::one(&c), &QSeries::one(&c, 20), 20).unwrap();
    assert!(unit.a.eq_at(&t.a, 8) && unit.b.eq_at(&t.b, 8));
    let deformed0 =
        u_modular_deformed(&c, &Scalar::int(5), &eta, &QSeries::one(&c, 20), 1, &Scalar::int(0), 20).unwrap();
    assert!(deformed0.a.eq_at(&plain.a, 8) && deformed0.b.eq_at(&plain.b, 8));
    let pt = u_modular_deformed(&c, &Scalar::int(5), &eta, &v, 2, &Scalar::int(1), 20).unwrap();
    let d = IotaDecoder::new(&c, 20).unwrap().decode(&pt).unwrap();
    let u = u_mult(&c, &Scalar::int(5), 2, &Scalar::int(1), 20).unwrap().scale(&eta);
    assert!(d.u.eq_at(&u, 8));
    assert!(d.v2.eq_at(&(&v * &v), 8));
    assert!(d.v_exists);
    assert!(!d.u.eq_at(&u.mul_int(2), 8));
    assert!(!d.v2.eq_at(&v, 8));
}

#[test]
fn census_pivots() {
    let c = ctx();
    let eq = EquationParams::new(Scalar::int(2), Scalar::int(0), Rhs::Zero).unwrap();
    let cen = term_solver(&c, &eq, &Scalar::int(1), 30, &BTreeMap::new()).unwrap();
    assert_eq!(cen.free, vec![2]);
    assert_eq!(cen.parameter_count(), 1);
    let row7 = cen.rows.iter().find(|r| r.n == 7).unwrap();
    assert_eq!(row7.status, PivotStatus::Determined);
    assert_eq!(row7.pivot_valuation, Some(1));
    // without the integer declaration the pivot n - kappa is judged at the working precision
    let eq = EquationParams::new(Scalar::int(2), Scalar::int(0), Rhs::Zero).unwrap().undeclared();
    let cen = term_solver(&c, &eq, &Scalar::int(1), 30, &BTreeMap::new()).unwrap();
    assert_eq!(cen.free, vec![2]);
    let eq = EquationParams::new(Scalar::ratio(7, 3), Scalar::int(5), Rhs::Zero).unwrap();
    let cen = term_solver(&c, &eq, &Scalar::int(1), 30, &BTreeMap::new()).unwrap();
    assert!(cen.free.is_empty());
    assert!(cen.u.eq_at(&QSeries::one(&c, 30), 8));
}

#[test]
fn census_with_beta_constant() {
    let c = ctx();
    let eq = EquationParams::new(Scalar::int(3), Scalar::int(5), Rhs::MinusOne).unwrap();
    let beta = qdelta_core::convection::solve_beta(&c, &eq).unwrap();
    let cen = term_solver(&c, &eq, &Scalar::from(beta), 30, &BTreeMap::new()).unwrap();
    assert_eq!(cen.free, vec![3]);
    assert!(residual(&cen.u, &eq, None).unwrap().passed);
}
