use tforge::codes::{gbtp_to_code, plotkin_check, stats};
use tforge::constructions::*;
use tforge::designs::fixtures::{load, FIG2, FIG3, FIG8};
use tforge::designs::*;
use tforge::Error;

fn group_sizes(d: &DesignGrid) -> Vec<usize> {
    d.groups.as_ref().unwrap().iter().map(|g| g.len()).collect()
}

#[test]
fn frame_chain_49() {
    let drtd = drtd_from_td(&build_td(5, 4).unwrap()).unwrap();
    let big = inflate(&load(FIG8), &drtd).unwrap();
    assert_eq!(group_sizes(&big), vec![24; 6]);
    assert!(verify_frgbtd(&big).unwrap().pass);
    let inners = vec![load(FIG3); 6];
    let open = frame_fill(&big, &inners, None).unwrap();
    assert!(verify_igbtp(&open).unwrap().pass);
    assert_eq!(open.points.len(), 147);
    let d = frame_fill(&big, &inners, Some(FinalFill::Block)).unwrap();
    assert_eq!(d.kind, DesignKind::Gbtd);
    assert!(d.special.is_some());
    let rep = verify_auto(&d).unwrap();
    assert!(rep.pass, "{rep}");
    let c = gbtp_to_code(&d).unwrap();
    let s = stats(&c).unwrap();
    assert_eq!((s.n, s.q, s.m, s.d), (73, 49, 147, 72));
    assert!(plotkin_check(73, 72, 49, 147).equality);
}

#[test]
fn frame_fill_errors() {
    let frame = load(FIG8);
    assert_eq!(frame_fill(&frame, &[load(FIG3)], None).unwrap_err(), Error::GroupCountMismatch(6, 1));
}

#[test]
fn tripling_27() {
    let rb = promote_coloring(&load(FIG3)).unwrap();
    let drtd = drtd_from_td(&build_td(5, 27).unwrap()).unwrap();
    let d = tripling(&rb, &drtd, true).unwrap();
    assert_eq!((d.nrows(), d.ncols(), d.points.len()), (27, 40, 81));
    let rep = verify_auto(&d).unwrap();
    assert!(rep.pass, "{rep}");
    assert!(d.special.is_some());
    assert!(verify_coloring(&d, 2, false).unwrap().pass);
    let mut plain = load(FIG3);
    plain.strip_colors();
    assert_eq!(tripling(&plain, &drtd, false).unwrap_err(), Error::ColorMissing);
}

#[test]
fn tripling_15_guard() {
    // No field-based DRTD(3,15) exists here: 15 is not a prime power.
    assert_eq!(build_td(5, 15).unwrap_err(), Error::NotPrimePower(15));
    assert!(verify_coloring(&load(FIG2), 3, true).unwrap().pass);
}

#[test]
fn special_cell_round_trip() {
    let fig = load(FIG3);
    let (open, cell) = demote_special(&fig).unwrap();
    assert!(verify_igbtp(&open).unwrap().pass);
    let mut one = DesignGrid::new(DesignKind::Gbtp, 1, vec![3], cell.block.clone(), int_labels(1, 1), int_labels(1, 1));
    one.set(0, 0, cell.block.clone(), cell.color);
    let back = fill_hole(&open, &one, None).unwrap();
    assert_eq!(back, fig);
    let two = DesignGrid::new(DesignKind::Gbtp, 1, vec![3], cell.block.clone(), int_labels(2, 1), int_labels(1, 1));
    assert!(matches!(fill_hole(&open, &two, None), Err(Error::HoleMismatch(_))));
}

#[test]
fn inflate_by_one() {
    let pts: Vec<tforge::algebra::PointLabel> = ["0_1", "0_2", "0_3"].iter().map(|s| tforge::algebra::pl(s)).collect();
    let mut one = DesignGrid::new(DesignKind::Drtd, 1, vec![3], pts.clone(), int_labels(1, 0), int_labels(1, 0));
    one.set(0, 0, pts.clone(), None);
    one.groups = Some(pts.iter().map(|p| vec![p.clone()]).collect());
    let fig = load(FIG8);
    let d = inflate(&fig, &one).unwrap();
    assert!(verify_frgbtd(&d).unwrap().pass);
    assert_eq!(group_sizes(&d), group_sizes(&fig));
    assert_eq!(d.block_count(), fig.block_count());
}
