use biprestar::bounds::{a2_bound, a3_bound, fekete_szego_bound};
use biprestar::verifier::{
    default_grid, fekete_from_sample, proof_relation_check, reconstruct, sample_schwarz, tightness_search,
    verify_against, verify_bounds, verify_sequential, Targets, GRID_MUS,
};
use biprestar::{ClassParams, Complex64, Mode, SchwarzSample};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn parallel_run_matches_single_worker() {
    let p = ClassParams::new(0.5, 0.25, 0.5).unwrap();
    let targets = Targets::from_bounds(&p, Some(2.0)).unwrap();
    for mode in [Mode::Paper, Mode::Pick, Mode::Consistent] {
        let par = verify_against(&p, targets, mode, 99, 10_000).unwrap();
        let seq = verify_sequential(&p, targets, mode, 99, 10_000).unwrap();
        assert_eq!(par, seq, "{mode}");
    }
}

#[test]
fn same_seed_same_stream() {
    let p = ClassParams::new(1.0, 0.0, 0.2).unwrap();
    for mode in [Mode::Paper, Mode::Pick, Mode::Consistent] {
        assert_eq!(sample_schwarz(mode, &p, 5, 5000).unwrap(), sample_schwarz(mode, &p, 5, 5000).unwrap());
        assert_ne!(sample_schwarz(mode, &p, 5, 5000).unwrap(), sample_schwarz(mode, &p, 6, 5000).unwrap());
    }
}

#[test]
fn grid_has_no_violations() {
    for p in default_grid() {
        for mu in GRID_MUS {
            for mode in [Mode::Paper, Mode::Pick, Mode::Consistent] {
                let r = verify_bounds(&p, Some(mu), mode, 7, 2000).unwrap();
                assert!(r.certified(), "{mode} {p:?} mu={mu}: {:?}", r.violations.first());
            }
        }
    }
}

#[test]
fn halved_a2_bound_is_caught() {
    let p = ClassParams::new(0.0, 0.5, 0.5).unwrap();
    let mut targets = Targets::from_bounds(&p, None).unwrap();
    targets.a2 *= 0.5;
    let r = verify_against(&p, targets, Mode::Paper, 1, 1000).unwrap();
    assert!(!r.certified());
    assert!(!r.violations.is_empty());
}

#[test]
fn proof_relations_on_grid() {
    for p in default_grid() {
        for s in sample_schwarz(Mode::Consistent, &p, 3, 200).unwrap() {
            assert!(proof_relation_check(&s, &p, 5).unwrap(), "{p:?} {s:?}");
        }
    }
}

#[test]
fn proof_relations_reject_paper_samples() {
    let p = ClassParams::new(0.0, 0.5, 0.5).unwrap();
    let s = SchwarzSample::paper(c(0.5, 0.0), c(0.1, 0.0), c(0.2, 0.0)).unwrap();
    assert!(proof_relation_check(&s, &p, 5).is_err());
}

#[test]
fn tightness_on_grid() {
    for p in default_grid() {
        let r = tightness_search(&p, Some(1.0), 4, 11).unwrap();
        assert!(r.max_ratio_a2 >= 0.999, "{p:?} a2 {}", r.max_ratio_a2);
        assert!(r.max_ratio_a3 >= 0.999, "{p:?} a3 {}", r.max_ratio_a3);
        assert!(r.max_ratio_fs.unwrap() >= 0.999, "{p:?} fs {:?}", r.max_ratio_fs);
        assert!(r.certified());
    }
}

#[test]
fn named_witnesses_are_extremal() {
    let p = ClassParams::new(0.0, 0.5, 0.5).unwrap();
    let s = SchwarzSample::paper(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
    let r = reconstruct(&s, &p).unwrap();
    assert!(r.a2_sq.norm().sqrt() / a2_bound(&p).unwrap() >= 1.0 - 1e-9);
    let s = SchwarzSample::paper(c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
    assert!(reconstruct(&s, &p).unwrap().a3.norm() / a3_bound(&p) >= 1.0 - 1e-9);

    for q in default_grid() {
        let s = SchwarzSample::paper(c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
        let v = fekete_from_sample(&s, &q, 1.0).unwrap().norm();
        assert!((v - fekete_szego_bound(&q, 1.0).unwrap().value).abs() <= 1e-10);
    }
}

fn unit_disk() -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, th)| Complex64::from_polar(r, th))
}

proptest! {
    #[test]
    fn linear_form_matches_reconstruction_when_consistent(
        l in 0.0..=1.0, a in 0.0..0.99, t in 0.05..0.95, mu in -5.0..5.0f64, seed in any::<u64>()
    ) {
        let p = ClassParams::new(l, a, t).unwrap();
        prop_assume!(biprestar::bounds::a2_denominator(&p).abs() > 1e-3);
        for s in sample_schwarz(Mode::Consistent, &p, seed, 16).unwrap() {
            let r = reconstruct(&s, &p).unwrap();
            let direct = r.a3 - mu * r.a2_sq;
            let linear = fekete_from_sample(&s, &p, mu).unwrap();
            prop_assert!((direct - linear).norm() <= 1e-9 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn paper_samples_respect_bounds(
        l in 0.0..=1.0, a in 0.0..0.99, t in 0.05..0.95, mu in -5.0..5.0f64,
        c1 in unit_disk(), c2 in unit_disk(), d2 in unit_disk()
    ) {
        let p = ClassParams::new(l, a, t).unwrap();
        prop_assume!(biprestar::bounds::a2_denominator(&p).abs() > 1e-6);
        let s = SchwarzSample::paper(c1, c2, d2).unwrap();
        let r = reconstruct(&s, &p).unwrap();
        let slack = 1e-9;
        prop_assert!(r.a2_sq.norm().sqrt() <= a2_bound(&p).unwrap() * (1.0 + slack));
        prop_assert!(r.a3.norm() <= a3_bound(&p) * (1.0 + slack));
        let fs = fekete_szego_bound(&p, mu).unwrap().value;
        prop_assert!(fekete_from_sample(&s, &p, mu).unwrap().norm() <= fs * (1.0 + slack));
    }
}
