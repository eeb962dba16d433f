mod common;

use std::collections::BTreeSet;

use common::{set, GridOracle};
use radial_core::circular::{adjacent_transposition_diff, TranspositionDiff};
use radial_core::constructions::{gen_random_sgp, ColorScheme};
use radial_core::enumeration::{
    census, growth_experiment, interior_distinctness_check, partition_lemma_check, walk_around, Analysis,
    DistinctnessReport, ExperimentKind, LemmaCheck,
};
use radial_core::kernel::{orientation, Orientation};
use radial_core::pointset::Color;

const BUDGET: u128 = 2_000_000;
const TRIANGLE: [(i64, i64); 3] = [(0, 0), (6, 1), (2, 5)];
const QUAD: [(i64, i64); 4] = [(0, 0), (6, -2), (8, 5), (-1, 6)];

#[test]
fn triangle_rho_matches_sampling() {
    let c = census(&set(&TRIANGLE, None)).unwrap();
    let grid = GridOracle::new(&TRIANGLE, 4, 301);
    assert_eq!(c.rho, grid.distinct_orders().len());
    assert_eq!(c.rho, 2);
    assert!(c.rho_colored.is_none());
}

#[test]
fn quadrilateral_rho_and_colored_match_sampling() {
    let colors = "RBRB";
    let c = census(&set(&QUAD, Some(colors))).unwrap();
    let grid = GridOracle::new(&QUAD, 8, 801);
    assert_eq!(c.rho, grid.distinct_orders().len());
    assert_eq!(c.rho_colored, Some(grid.distinct_words(colors).len()));
    assert!(c.rho <= c.order_cells);
}

#[test]
fn single_color_gives_one_word() {
    let c = census(&set(&QUAD, Some("RRRR"))).unwrap();
    assert_eq!(c.rho_colored, Some(1));
}

#[test]
fn interior_cells_are_distinct() {
    for n in 4..=8 {
        let s = gen_random_sgp(n, ColorScheme::None, 40 + n as u64).unwrap();
        assert!(matches!(interior_distinctness_check(&s).unwrap(), DistinctnessReport::Pass { .. }), "n = {n}");
    }
    let tri = set(&TRIANGLE, None);
    assert!(matches!(interior_distinctness_check(&tri).unwrap(), DistinctnessReport::Pass { .. }));
    let collinear = set(&[(0, 0), (1, 1), (2, 2), (0, 3)], None);
    assert!(matches!(
        interior_distinctness_check(&collinear).unwrap(),
        DistinctnessReport::ValidationRequired(_)
    ));
}

#[test]
fn lemma_applies_across_a_separating_line() {
    let s = gen_random_sgp(6, ColorScheme::None, 71).unwrap();
    let a = Analysis::new(&s).unwrap();
    let reps = radial_core::arrangement::interior_face_representatives(&a.arrangement).unwrap();
    let mut applicable = 0;
    let mut same_cell = 0;
    for (i, (fp, p)) in reps.iter().enumerate() {
        for (fq, q) in reps.iter().skip(i + 1).step_by(3) {
            let same = a.partition.cell_of(*fp) == a.partition.cell_of(*fq);
            // points strictly left of line pq against the rest
            let left: Vec<usize> = (0..s.len())
                .filter(|&k| orientation(p, q, &s.points()[k]) == Orientation::Counterclockwise)
                .collect();
            match partition_lemma_check(&a, &left, p, q).unwrap() {
                LemmaCheck::Applicable { distinct } => {
                    assert!(!same);
                    assert!(distinct);
                    applicable += 1;
                }
                LemmaCheck::NotApplicable => {
                    assert!(same, "the sides of pq always satisfy the hypothesis");
                    same_cell += 1;
                }
            }
        }
    }
    assert!(applicable > 0 && same_cell > 0, "{applicable} {same_cell}");
}

#[test]
fn walk_on_balanced_eight() {
    for seed in 0..3 {
        let s = gen_random_sgp(8, ColorScheme::Balanced, 90 + seed).unwrap();
        let colors = s.colors().unwrap().to_vec();
        for center in (0..8).filter(|&k| colors[k] == Color::Red) {
            let w = walk_around(&s, center).unwrap();
            assert_eq!(w.events.len(), 7);
            assert!(w.distinct_words() >= 4, "seed {seed} center {center}: {}", w.distinct_words());
            assert_eq!(w.compose_events().as_ref(), w.orders_seen.first());
            let partners: BTreeSet<usize> = w.events.iter().map(|e| e.partner).collect();
            assert_eq!(partners.len(), 7);
            let k = w.orders_seen.len();
            for (i, e) in w.events.iter().enumerate() {
                let d = adjacent_transposition_diff(&w.orders_seen[i], &w.orders_seen[(i + 1) % k]).unwrap();
                let pair = (center.min(e.partner), center.max(e.partner));
                assert_eq!(d, TranspositionDiff::Swap(pair.0, pair.1));
            }
        }
    }
}

#[test]
fn random_experiment_is_deterministic() {
    let a = growth_experiment(ExperimentKind::Random, &[6], 5, BUDGET).unwrap().to_csv();
    let b = growth_experiment(ExperimentKind::Random, &[6], 5, BUDGET).unwrap().to_csv();
    assert_eq!(a, b);
    assert!(a.starts_with("size,rho,rho_colored,order_cells,F\n6,"));
}

#[test]
fn circle_pattern_growth_is_monotone() {
    let t = growth_experiment(ExperimentKind::Upper2, &[8, 12, 16], 1, BUDGET).unwrap();
    let col: Vec<usize> = t.rows.iter().map(|r| r.rho_colored.unwrap()).collect();
    assert!(col.windows(2).all(|w| w[0] <= w[1]), "{col:?}");
    for r in &t.rows {
        assert!(r.rho_colored.unwrap() <= r.rho && r.rho <= r.order_cells);
        assert!(r.rho_colored.unwrap() >= r.size);
    }
}

#[test]
fn four_pattern_experiment_reports_designated_words() {
    let t = growth_experiment(ExperimentKind::Lower4, &[20], 1, BUDGET).unwrap();
    let d = t.rows[0].designated_distinct.unwrap();
    assert!(d >= 16, "{d} distinct color words at the designated points");
}
