mod common;

use capot_core::nondegeneracy::DEFAULT_SCAN_BUDGET;
use capot_core::{
    cycle_scan, fit_separable, quadruple_scan, FitOptions, QuadrupleMode, SupportSet,
};
use common::dichotomy::random_support_cost;
use common::rng;

#[test]
fn fit_exists_iff_every_cycle_balances() {
    let mut r = rng(31);
    let (mut fits, mut witnesses) = (0, 0);
    for _ in 0..150 {
        let (support, h) = random_support_cost(&mut r, 4);
        let (nx, ny) = support.shape();
        let components = fit_separable(&support, &h, FitOptions::default()).unwrap();
        let scan = cycle_scan(&support, &h, nx.min(ny), DEFAULT_SCAN_BUDGET).unwrap();
        assert!(scan.complete);
        let all_fit = components.iter().all(|c| c.is_separable());
        assert_eq!(all_fit, scan.violations.is_empty());
        for c in &components {
            match (c.fit(), c.witness()) {
                (Some(fit), None) => {
                    fits += 1;
                    assert!(fit.holds_on(&h));
                }
                (None, Some(w)) => {
                    witnesses += 1;
                    assert!(w.verify(&h, &support));
                    assert_ne!(w.sum_diag, w.sum_shift);
                    assert!(w
                        .diagonal_cells()
                        .chain(w.shifted_cells())
                        .all(|(i, j)| c.cells.contains(&(i, j))));
                }
                _ => unreachable!("each component carries exactly one of fit and witness"),
            }
        }
        for w in &scan.violations {
            assert!(w.verify(&h, &support));
        }
    }
    assert!(
        fits > 20 && witnesses > 20,
        "fits {fits}, witnesses {witnesses}"
    );
}

#[test]
fn minimal_witnesses_are_no_longer_than_default_ones() {
    let mut r = rng(32);
    for _ in 0..80 {
        let (support, h) = random_support_cost(&mut r, 5);
        let plain = fit_separable(&support, &h, FitOptions::default()).unwrap();
        let minimal = fit_separable(
            &support,
            &h,
            FitOptions {
                minimal_witness: true,
            },
        )
        .unwrap();
        for (a, b) in plain.iter().zip(&minimal) {
            assert_eq!(a.is_separable(), b.is_separable());
            if let (Some(wa), Some(wb)) = (a.witness(), b.witness()) {
                assert!(wb.len() <= wa.len());
                assert!(wb.verify(&h, &support));
            }
        }
    }
}

#[test]
fn rectangles_decide_full_support() {
    let mut r = rng(33);
    for _ in 0..100 {
        let (support, h) = random_support_cost(&mut r, 5);
        let (nx, ny) = support.shape();
        let full = SupportSet::full(nx, ny).unwrap();
        let quads = quadruple_scan(&full, &h, QuadrupleMode::Exhaustive).unwrap();
        let components = fit_separable(&full, &h, FitOptions::default()).unwrap();
        assert_eq!(components.len(), 1);
        assert_eq!(quads.violations.is_empty(), components[0].is_separable());
        assert_eq!(quads.checked, nx * (nx - 1) / 2 * ny * (ny - 1) / 2);
    }
}
