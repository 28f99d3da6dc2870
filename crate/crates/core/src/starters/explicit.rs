use std::collections::BTreeMap;

use super::infinite_points;
use crate::algebra::{difference_list, make_block, pl, translate_block, AbelianGroup, Block, DiffMode, PointLabel};
use crate::designs::{DesignGrid, DesignKind, Hole, VerifyReport, Witnesses};

fn blk(s: &str) -> Block {
    make_block(s.split_whitespace().map(pl).collect())
}

/// Base blocks of the cyclic FrGBTD(3,6^8) over Z_48.
pub fn frgbtd_6_8_blocks() -> Vec<Block> {
    ["2 3 5", "4 14 31", "9 22 45", "15 34 43", "20 35 42", "13 17 47", "1 6 12"].iter().map(|s| blk(s)).collect()
}

fn residue(p: &PointLabel) -> u32 {
    p.coords().expect("finite point")[0]
}

/// Conditions for t-1 base blocks over Z_6t whose translates A_i+j, placed
/// in cell (i+j mod 2t, j mod 3t), form an FrGBTD(3,6^t).
pub fn verify_cyclic_frame(blocks: &[Block], t: u32) -> VerifyReport {
    let mut rep = VerifyReport::new();
    let n = 6 * t;
    let g = AbelianGroup::cyclic(n);
    let mut shape = Witnesses::new("shape");
    if t < 2 || blocks.len() != t as usize - 1 {
        shape.push(format!("{} blocks for t = {t}", blocks.len()));
    }
    for b in blocks {
        if b.len() != 3 || b.iter().any(|p| p.copy().is_some() || p.coords().map_or(true, |c| c.len() != 1 || c[0] >= n)) {
            shape.push(format!("block {b:?} is not a 3-subset of Z_{n}"));
        }
    }
    let ok = shape.is_clean();
    rep.add(shape);
    if !ok {
        return rep;
    }
    let mut w = Witnesses::new("i");
    let d = difference_list(blocks, &g, DiffMode::Plain).expect("points checked");
    let want: Vec<Vec<u32>> = (0..n).filter(|x| x % t != 0).map(|x| vec![x]).collect();
    super::exactly_once(&d, &want, &mut w);
    rep.add(w);
    let mut w = Witnesses::new("ii");
    let mut cnt: BTreeMap<u32, usize> = BTreeMap::new();
    for p in blocks.iter().flatten() {
        *cnt.entry(residue(p) % (3 * t)).or_default() += 1;
    }
    for x in 0..3 * t {
        let c = cnt.get(&x).copied().unwrap_or(0);
        let want = usize::from(x % t != 0);
        if c != want {
            w.push(format!("{x} occurs {c} times mod {}", 3 * t));
        }
    }
    rep.add(w);
    let mut r: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for p in b {
            let x = (residue(p) + n - (i as u32 + 1)) % (2 * t);
            *r.entry(x).or_default() += 1;
        }
    }
    let mut iii = Witnesses::new("iii");
    for x in (0..2 * t).filter(|x| x % t != 0) {
        let c = r.get(&x).copied().unwrap_or(0);
        if c != 1 && c != 2 {
            iii.push(format!("{x} occurs {c} times in R"));
        }
    }
    rep.add(iii);
    let mut iv = Witnesses::new("iv");
    for x in [0, t] {
        if let Some(c) = r.get(&x) {
            iv.push(format!("{x} occurs {c} times in R"));
        }
    }
    rep.add(iv);
    rep
}

fn cyclic_frame(blocks: &[Block], t: u32) -> DesignGrid {
    let n = 6 * t;
    let g = AbelianGroup::cyclic(n);
    let points: Vec<PointLabel> = (0..n).map(PointLabel::int).collect();
    let rows: Vec<PointLabel> = (0..2 * t).map(PointLabel::int).collect();
    let cols: Vec<PointLabel> = (0..3 * t).map(PointLabel::int).collect();
    let mut d = DesignGrid::new(DesignKind::FrGbtd, 1, vec![3], points, rows, cols);
    for (i, b) in blocks.iter().enumerate() {
        for j in 0..n {
            let r = (i as u32 + 1 + j) % (2 * t);
            let c = j % (3 * t);
            d.set(r as usize, c as usize, translate_block(b, &g, &[j]).expect("points in Z_n"), None);
        }
    }
    d.groups = Some((0..t).map(|i| (0..6).map(|k| PointLabel::int(i + t * k)).collect()).collect());
    let tu = t as usize;
    d.row_group_index = Some((0..tu).map(|i| vec![i, i + tu]).collect());
    d.col_group_index = Some((0..tu).map(|i| vec![i, i + tu, i + 2 * tu]).collect());
    d
}

/// FrGBTD(3,6^8): 16×24 array over Z_48 with groups {i+8k}.
pub fn build_frgbtd_6_8() -> DesignGrid {
    let mut d = cyclic_frame(&frgbtd_6_8_blocks(), 8);
    d.source = Some("cyclic FrGBTD(3,6^8) over Z_48".into());
    d
}

/// Base blocks of the IGBTP over (Z_3×Z_8) ∪ W_9: A_1..A_20, B_1..B_4 and
/// C^1..C^4, each C^i listed as [C^i_0, C^i_1, C^i_2].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Igbtp33Families {
    pub a: Vec<Block>,
    pub b: Vec<Block>,
    pub c: Vec<[Block; 3]>,
}

pub fn igbtp_33_families() -> Igbtp33Families {
    let a = [
        "1_0 1_2", "1_1 1_5", "0_0 0_4", "1_3 1_6", "0_3 0_5", "1_1 1_3", "1_4 1_7", "0_1 0_6", "0_0 0_5", "0_2 0_4",
        "1_4 1_6", "1_0 1_3", "0_2 0_5", "1_2 1_7", "0_1 0_7", "1_5 1_7", "0_2 0_6", "0_3 0_7", "1_1 1_4", "1_0 1_6",
    ];
    let b = ["0_0 0_1", "0_5 1_5", "1_1 2_4", "0_7 1_3"];
    let c = [
        ["1_0 2_1 0_3", "0_6 1_4", "1_7 2_6"],
        ["0_2 inf1", "0_4 inf2", "1_2 inf3"],
        ["2_0 inf4", "2_3 inf5", "1_6 inf6"],
        ["2_7 inf7", "2_2 inf8", "2_5 inf9"],
    ];
    Igbtp33Families {
        a: a.iter().map(|s| blk(s)).collect(),
        b: b.iter().map(|s| blk(s)).collect(),
        c: c.iter().map(|f| [blk(f[0]), blk(f[1]), blk(f[2])]).collect(),
    }
}

/// IGBTP_1({2,3*},33,16×29;9,4×5). Rows: `1..4`, then `l.a` for the
/// A-block row l in 0..4 and a in Z_3. Columns: `1..5`, then `b_j` for
/// j in Z_8, b in Z_3.
pub fn build_igbtp_33() -> DesignGrid {
    let f = igbtp_33_families();
    let g = AbelianGroup::new(vec![3, 8]);
    let mut rows: Vec<PointLabel> = (1..=4).map(PointLabel::int).collect();
    for l in 0..4 {
        rows.extend((0..3).map(|a| PointLabel::vec(vec![l, a], None)));
    }
    let mut cols: Vec<PointLabel> = (1..=5).map(PointLabel::int).collect();
    for j in 0..8 {
        cols.extend((0..3).map(|b| PointLabel::sub(b, j)));
    }
    let mut points: Vec<PointLabel> = (0..3).flat_map(|a| (0..8).map(move |b| PointLabel::sub(a, b))).collect();
    points.extend(infinite_points(9));
    let mut d = DesignGrid::new(DesignKind::Igbtp, 1, vec![2, 3], points, rows, cols);
    d.k_star = vec![3];
    let tr = |b: &Block, x: u32, y: u32| translate_block(b, &g, &[x, y]).expect("points in Z_3xZ_8");
    for l in 0..4u32 {
        for a in 0..3u32 {
            let row = (4 + 3 * l + a) as usize;
            for c in 0..5u32 {
                d.set(row, c as usize, tr(&f.a[(5 * l + c) as usize], a, 0), None);
            }
            for j in 0..8u32 {
                for b in 0..3u32 {
                    let fam = &f.c[((l + 8 - j % 4) % 4) as usize];
                    let blk = &fam[((a + 3 - b) % 3) as usize];
                    d.set(row, (5 + 3 * j + b) as usize, tr(blk, b, j), None);
                }
            }
        }
    }
    for (i, bb) in f.b.iter().enumerate() {
        for j in 0..8u32 {
            for b in 0..3u32 {
                d.set(i, (5 + 3 * j + b) as usize, tr(bb, b, j), None);
            }
        }
    }
    d.hole = Some(Hole { w: infinite_points(9), p_rows: (0..4).collect(), q_cols: (0..5).collect() });
    d.source = Some("IGBTP_1({2,3*},33,16x29;9,4x5) over (Z_3xZ_8) with 9 infinite points".into());
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{verify_frgbtd, verify_igbtp};

    #[test]
    fn frame_6_8() {
        let blocks = frgbtd_6_8_blocks();
        let rep = verify_cyclic_frame(&blocks, 8);
        assert!(rep.pass, "{rep}");
        let d = build_frgbtd_6_8();
        assert_eq!((d.nrows(), d.ncols()), (16, 24));
        let groups = d.groups.as_ref().unwrap();
        assert_eq!(groups.len(), 8);
        assert!(groups.iter().all(|g| g.len() == 6));
        let rep = verify_frgbtd(&d).unwrap();
        assert!(rep.pass, "{rep}");
    }

    #[test]
    fn frame_6_8_mutated() {
        let mut blocks = frgbtd_6_8_blocks();
        blocks[0] = blk("2 3 6");
        assert!(!verify_cyclic_frame(&blocks, 8).pass);
    }

    #[test]
    fn igbtp_33() {
        let d = build_igbtp_33();
        assert_eq!((d.nrows(), d.ncols(), d.points.len()), (16, 29, 33));
        for r in 0..4 {
            for c in 0..5 {
                assert!(d.block(r, c).is_none());
            }
        }
        let rep = verify_igbtp(&d).unwrap();
        assert!(rep.pass, "{rep}");
        for c in 5..29 {
            let triples = (0..16).filter(|&r| d.block(r, c).map_or(false, |b| b.len() == 3)).count();
            assert_eq!(triples, 1);
        }
    }

    #[test]
    fn printed_c1_fails() {
        let mut f = igbtp_33_families();
        f.c[0] = [blk("1_0 2_1 2_6"), blk("1_0 2_1"), blk("1_0 2_1")];
        let mut blocks: Vec<Block> = f.a.clone();
        blocks.extend(f.b.clone());
        blocks.extend(f.c.iter().flat_map(|x| x.iter().cloned()));
        let g = AbelianGroup::new(vec![3, 8]);
        let d = difference_list(&blocks, &g, DiffMode::Plain).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        assert!(d.iter().any(|x| !seen.insert(x.clone())));
    }
}
