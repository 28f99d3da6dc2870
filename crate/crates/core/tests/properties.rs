use proptest::prelude::*;

use tforge::algebra::{translate_block, PointLabel};
use tforge::codes::{ec_table, ec_table_exhaustive, Code};
use tforge::designs::fixtures::{load, FIG1, FIG3};
use tforge::designs::*;
use tforge::search::{max_eswc, search_starters, StarterParams};
use tforge::starters::{build_fq_gbtd_starter, develop, develop_gbtd, verify_starter, Starter};

fn gbtd_7() -> DesignGrid {
    develop_gbtd(&build_fq_gbtd_starter(7).unwrap().0).unwrap()
}

fn mutate(g: &DesignGrid, cell: usize, at: usize, to: usize) -> Option<DesignGrid> {
    let cells: Vec<(usize, usize)> = g.occupied().map(|(r, c, _)| (r, c)).collect();
    let (r, c) = cells[cell % cells.len()];
    let len = g.block(r, c).unwrap().len();
    let at = at % len;
    let new = g.points[to % g.points.len()].clone();
    if g.block(r, c).unwrap()[at] == new {
        return None;
    }
    let mut m = g.clone();
    m.cell_mut(r, c).unwrap().block[at] = new;
    Some(m)
}

fn rejects(g: &DesignGrid) -> bool {
    verify_gbtd(g).map(|r| !r.pass).unwrap_or(true)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fixture_mutations_fail(cell in 0usize..10_000, at in 0usize..3, to in 0usize..1000) {
        if let Some(m) = mutate(&load(FIG3), cell, at, to) {
            prop_assert!(rejects(&m));
        }
    }

    #[test]
    fn developed_mutations_fail(cell in 0usize..10_000, at in 0usize..3, to in 0usize..1000) {
        if let Some(m) = mutate(&gbtd_7(), cell, at, to) {
            prop_assert!(rejects(&m));
        }
    }

    #[test]
    fn ec_shortcut_matches_subsets(
        q in 2u32..=8,
        n in 1usize..=10,
        raw in prop::collection::vec(prop::collection::vec(0u32..8, 10), 1..12),
    ) {
        let mut words: Vec<Vec<u32>> = raw.into_iter().map(|w| w[..n].iter().map(|s| s % q).collect()).collect();
        words.sort();
        words.dedup();
        let c = Code::new(q, n, words).unwrap();
        prop_assert_eq!(ec_table(&c), ec_table_exhaustive(&c));
    }
}

#[test]
fn verifiers_nest() {
    for g in [load(FIG3), gbtd_7()] {
        assert!(verify_gbtd(&g).unwrap().pass);
        assert!(verify_gbtp(&g).pass);
        assert!(verify_packing(&g, false).pass);
        let (k, m) = gbtd_params(&g).unwrap();
        assert_eq!(g.ncols(), (k * m - 1) / (k - 1));
    }
    assert!(verify_packing(&load(FIG1), false).pass);
}

#[test]
fn distance_n_codes_have_q_words() {
    for q in 2..=5 {
        for n in 2..=6 {
            let r = max_eswc(n, n, q, 1_000_000).unwrap();
            assert!(r.exact, "A_{q}({n},{n})");
            assert_eq!(r.max_m, q, "A_{q}({n},{n})");
        }
    }
}

fn searched(kind: &str, m: u32, w: u32, limit: usize) -> Vec<Starter> {
    let o = search_starters(kind, &StarterParams { m, w, special: false }, 20_000_000, limit).unwrap();
    o.value.unwrap_or_default()
}

#[test]
fn searched_starters_develop() {
    let mut total = 0;
    for (kind, m, w, limit) in [("gbtd", 7, 0, 3), ("frgbtd", 5, 0, 2), ("igbtp_z4", 5, 9, 2), ("igbtp_z4", 7, 9, 1)] {
        let found = searched(kind, m, w, limit);
        assert!(!found.is_empty(), "{kind} m={m}");
        for s in &found {
            assert!(verify_starter(s).pass);
            let g = develop(s).unwrap();
            let rep = match kind {
                "gbtd" => verify_gbtd(&g).unwrap(),
                "frgbtd" => verify_frgbtd(&g).unwrap(),
                _ => verify_igbtp(&g).unwrap(),
            };
            assert!(rep.pass, "{kind} m={m}: {rep}");
        }
        total += found.len();
    }
    assert!(total >= 6);
}

#[test]
fn frame_row_zero_is_three_shifts() {
    for s in searched("frgbtd", 5, 0, 3) {
        let Starter::FrGbtd(s) = s else { unreachable!() };
        let g = develop(&Starter::FrGbtd(s.clone())).unwrap();
        let grp = s.group();
        for j in 1..=2u32 {
            let row = (j - 1) as usize;
            let mut got: Vec<PointLabel> = (0..g.ncols()).filter_map(|c| g.block(row, c)).flatten().cloned().collect();
            let mut want: Vec<PointLabel> = Vec::new();
            for b in s.row_blocks(j) {
                for k in 0..3 {
                    want.extend(translate_block(&b, &grp, &[k * s.t]).unwrap());
                }
            }
            got.sort();
            want.sort();
            assert_eq!(got, want, "row (0,{j})");
        }
    }
}
