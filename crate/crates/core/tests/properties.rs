use bohrlab::rootfind::{roots_in_unit_interval, PolynomialSpec};
use bohrlab::series::{
    default_sample_count, extract_coefficients, majorant, mobius_coefficients, p_symmetrize,
    sampling_radius, BlaschkeSpec, Bound,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn zero() -> impl Strategy<Value = Complex64> {
    (0.0..0.95f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn blaschke() -> impl Strategy<Value = BlaschkeSpec> {
    (
        prop::collection::vec(zero(), 1..8),
        0.0..std::f64::consts::TAU,
    )
        .prop_map(|(zeros, rot)| BlaschkeSpec::new(zeros, rot).unwrap())
}

fn extracted(spec: &BlaschkeSpec, order: usize, r_eval: f64) -> bohrlab::PowerSeries {
    extract_coefficients(
        |z| spec.eval(z).unwrap(),
        order,
        sampling_radius(r_eval),
        default_sample_count(order),
        Bound::Sup(1.0),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn blaschke_maps_into_disk(spec in blaschke(), r in 0.0..0.999f64, t in 0.0..6.3f64) {
        let w = spec.eval(Complex64::from_polar(r, t)).unwrap();
        prop_assert!(w.norm() < 1.0);
    }

    #[test]
    fn majorant_is_monotone(spec in blaschke(), r1 in 0.0..0.8f64, dr in 0.0..0.1f64) {
        let r2 = r1 + dr;
        let s = extracted(&spec, 128, r2);
        let m1 = majorant(&s, r1).unwrap();
        let m2 = majorant(&s, r2).unwrap();
        prop_assert!(m1.lo <= m2.hi);
    }

    #[test]
    fn bounded_coefficients_obey_cauchy_parseval_and_schwarz_pick(spec in blaschke()) {
        let s = extracted(&spec, 128, 0.96);
        let e = s.errors();
        let a0 = (s.coeff(0).norm() - e[0]).max(0.0);
        for (n, en) in e.iter().enumerate() {
            let lo = s.coeff(n).norm() - en;
            prop_assert!(lo <= 1.0);
            if n >= 1 {
                prop_assert!(lo <= 1.0 - a0 * a0 + 1e-12, "n = {}", n);
            }
        }
        for rho in [0.3, 0.6, 0.9] {
            prop_assert!(s.parseval_sum(rho) <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn extraction_reproduces_pointwise_values(spec in blaschke(), r in 0.0..0.7f64, t in 0.0..6.3f64) {
        let s = extracted(&spec, 256, r);
        let z = Complex64::from_polar(r, t);
        // truncation tail plus per-coefficient error, both at radius r
        let budget = majorant(&s, r).unwrap().width() + 1e-13;
        prop_assert!((s.eval(z) - spec.eval(z).unwrap()).norm() <= budget);
    }

    #[test]
    fn mobius_square_sums_stay_below_limit(re in -0.7..0.7f64, im in -0.7..0.7f64, rho in 0.05..0.95f64) {
        let a = Complex64::new(re, im);
        prop_assume!(a.norm() < 0.99);
        let s = mobius_coefficients(a, 64).unwrap();
        let m2 = a.norm_sqr();
        let limit = rho * rho * (1.0 - m2).powi(2) / (1.0 - m2 * rho * rho);
        let truncated = s.parseval_sum(rho) - m2;
        prop_assert!(truncated <= limit * (1.0 + 1e-12) + 1e-15);
        let certified = s.square_sum(rho * rho, 1).unwrap();
        prop_assert!(certified.lo <= limit * (1.0 + 1e-12) && limit <= certified.hi * (1.0 + 1e-12));
    }

    #[test]
    fn symmetrization_preserves_majorant_identity(spec in blaschke(), p in 1u32..5, r in 0.05..0.9f64) {
        // M_f(r) = r M_g(r^p) for f(z) = z g(z^p)
        let g = extracted(&spec, 128, r.powi(p as i32));
        let f = p_symmetrize(&g, p).unwrap();
        prop_assert_eq!(f.sup_bound(), Some(1.0));
        let mf = majorant(&f, r).unwrap();
        let mg = majorant(&g, r.powi(p as i32)).unwrap();
        prop_assert!(mf.lo <= r * mg.hi + 1e-15 && r * mg.lo <= mf.hi + 1e-15);
    }

    #[test]
    fn roots_are_bracketed_and_stable(roots in prop::collection::vec(0.02..0.98f64, 1..4)) {
        let mut sorted = roots.clone();
        sorted.sort_by(f64::total_cmp);
        prop_assume!(sorted.windows(2).all(|w| w[1] - w[0] > 0.01));
        // monic polynomial with the given simple roots
        let mut coeffs = vec![1.0];
        for r in &sorted {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            coeffs = next;
        }
        let poly = PolynomialSpec::new(coeffs, "product").unwrap();
        let coarse = roots_in_unit_interval(&poly, 1e-3, 1e-12).unwrap();
        let fine = roots_in_unit_interval(&poly, 1e-4, 1e-12).unwrap();
        prop_assert_eq!(coarse.len(), sorted.len());
        for (found, want) in coarse.iter().zip(&sorted) {
            prop_assert!((found.root - want).abs() < 1e-9);
            prop_assert!(poly.eval(found.bracket.lo) * poly.eval(found.bracket.hi) <= 0.0);
            prop_assert!(found.bracket.lo < found.root && found.root < found.bracket.hi);
            prop_assert!(found.residual < 1e-12);
        }
        for c in &coarse {
            prop_assert!(fine.iter().any(|f| (f.root - c.root).abs() < 1e-12));
        }
    }
}
