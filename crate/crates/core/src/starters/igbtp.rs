use std::collections::BTreeSet;

use super::{exactly_once, infinite_points, once_or_twice, partitions, refuse_unless_valid, sizes};
use crate::algebra::{difference_list, translate_block, AbelianGroup, Block, DiffMode, PointLabel};
use crate::designs::{DesignGrid, DesignKind, Hole, VerifyReport, Witnesses};
use crate::error::Result;

/// Starter over (Z_m×Z_2) ∪ W_w. Points are `x_b`; `c[i]` is C_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IgbtpZ2Starter {
    pub m: u32,
    pub w: u32,
    pub a: Vec<Block>,
    pub b: Vec<Block>,
    pub c: Vec<Block>,
}

/// Starter over (Z_m×Z_4) ∪ W_9 with the seed columns x and y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IgbtpZ4Starter {
    pub m: u32,
    pub x: u32,
    pub y: u32,
    pub a: Block,
    pub b: Vec<Block>,
    pub c: Vec<Block>,
    pub d: Vec<Block>,
}

fn pt(x: u32, b: u32) -> PointLabel {
    PointLabel::sub(x, b)
}

fn finite(m: u32, copies: u32) -> Vec<PointLabel> {
    let mut v: Vec<PointLabel> = (0..m).flat_map(|x| (0..copies).map(move |b| pt(x, b))).collect();
    v.sort();
    v
}

fn point_set(m: u32, copies: u32, w: u32) -> Vec<PointLabel> {
    let mut v = finite(m, copies);
    v.extend(infinite_points(w));
    v
}

fn tr(b: &Block, g: &AbelianGroup, x: i64, c: i64) -> Block {
    translate_block(b, g, &g.reduce(&[x, c])).expect("points checked against the group")
}

fn nonzero_offsets(g: &AbelianGroup) -> Vec<Vec<u32>> {
    g.elements().into_iter().filter(|e| e[0] != 0).collect()
}

fn check_points(blocks: &[&Block], uni: &[PointLabel], w: &mut Witnesses) {
    for p in blocks.iter().flat_map(|b| b.iter()) {
        if uni.binary_search(p).is_err() {
            w.push(format!("point {p} is not in the point set"));
        }
    }
}

fn w_hits(b: &Block) -> usize {
    b.iter().filter(|p| p.is_infinite()).count()
}

impl IgbtpZ2Starter {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::new(vec![self.m, 2])
    }

    pub fn row_zero(&self) -> Vec<PointLabel> {
        let g = self.group();
        let mut r = vec![pt(0, 0), pt(0, 1)];
        for a in &self.a {
            for j in 0..2 {
                r.extend(tr(a, &g, 0, j));
            }
        }
        for (i, c) in self.c.iter().enumerate() {
            for j in 0..2 {
                r.extend(tr(c, &g, -(i as i64), -j));
            }
        }
        r
    }
}

pub fn verify_igbtp_z2_starter(s: &IgbtpZ2Starter) -> VerifyReport {
    let mut rep = VerifyReport::new();
    let (m, wn) = (s.m, s.w);
    let mut shape = Witnesses::new("shape");
    if m % 2 == 0 || m < 3 || wn % 2 == 0 || wn < 5 {
        shape.push(format!("m = {m} and w = {wn} must be odd with m >= 3, w >= 5"));
        rep.add(shape);
        return rep;
    }
    if s.a.len() != (wn as usize - 5) / 2 || s.b.len() != (wn as usize - 1) / 2 || s.c.len() != m as usize {
        shape.push(format!("family sizes {} / {} / {}", s.a.len(), s.b.len(), s.c.len()));
    }
    sizes(&s.a, |_| 2, "A", &mut shape);
    sizes(&s.b, |_| 2, "B", &mut shape);
    sizes(&s.c, |i| if i == 0 { 3 } else { 2 }, "C", &mut shape);
    let uni = point_set(m, 2, wn);
    let all: Vec<&Block> = s.a.iter().chain(&s.b).chain(&s.c).collect();
    check_points(&all, &uni, &mut shape);
    let ok = shape.is_clean();
    rep.add(shape);
    if !ok {
        return rep;
    }
    if m < 11 {
        rep.warnings.push(format!("m = {m} is below 11"));
    }
    let g = s.group();
    let owned: Vec<Block> = all.iter().map(|b| (*b).clone()).collect();
    let mut w = Witnesses::new("i");
    let d = difference_list(&owned, &g, DiffMode::Plain).expect("points checked");
    exactly_once(&d, &nonzero_offsets(&g), &mut w);
    rep.add(w);
    let mut w = Witnesses::new("ii");
    for (i, a) in s.a.iter().enumerate() {
        let copies: BTreeSet<u32> = a.iter().filter_map(|p| p.copy()).collect();
        if copies != BTreeSet::from([0, 1]) {
            w.push(format!("A_{} meets copies {copies:?}", i + 1));
        }
    }
    rep.add(w);
    let mut w = Witnesses::new("iii");
    partitions(&s.b.iter().chain(&s.c).collect::<Vec<_>>(), &uni, &mut w);
    rep.add(w);
    let mut w = Witnesses::new("iv");
    for (i, c) in s.c.iter().enumerate() {
        if w_hits(c) > 1 {
            w.push(format!("C_{i} meets W in {} points", w_hits(c)));
        }
    }
    rep.add(w);
    let mut w = Witnesses::new("v");
    once_or_twice(&s.row_zero(), &uni, &mut w);
    rep.add(w);
    let mut w = Witnesses::new("b_finite");
    for (i, b) in s.b.iter().enumerate() {
        if w_hits(b) > 0 {
            w.push(format!("B_{} meets W", i + 1));
        }
    }
    rep.add(w);
    rep
}

/// Rows: hole rows `1..(w-1)/2`, then `r_0` for r in Z_m. Columns: hole
/// columns `1..w-4`, then `j_b` for b in Z_2, j in Z_m.
pub fn develop_igbtp_z2(s: &IgbtpZ2Starter) -> Result<DesignGrid> {
    refuse_unless_valid(&verify_igbtp_z2_starter(s))?;
    let g = s.group();
    let (m, wn) = (s.m as usize, s.w as usize);
    let h = (wn - 1) / 2;
    let hc = wn - 4;
    let mut rows: Vec<PointLabel> = (1..=h as u32).map(PointLabel::int).collect();
    rows.extend((0..s.m).map(|r| pt(r, 0)));
    let mut cols: Vec<PointLabel> = (1..=hc as u32).map(PointLabel::int).collect();
    for b in 0..2 {
        cols.extend((0..s.m).map(|j| pt(j, b)));
    }
    let mut d = DesignGrid::new(DesignKind::Igbtp, 1, vec![2, 3], point_set(s.m, 2, s.w), rows, cols);
    d.k_star = vec![3];
    let col = |j: usize, b: usize| hc + b * m + j;
    for (i, bb) in s.b.iter().enumerate() {
        for b in 0..2 {
            for j in 0..m {
                d.set(i, col(j, b), tr(bb, &g, j as i64, b as i64), None);
            }
        }
    }
    for r in 0..m {
        let row = h + r;
        d.set(row, 0, vec![pt(r as u32, 0), pt(r as u32, 1)], None);
        for (i, a) in s.a.iter().enumerate() {
            for b in 0..2 {
                d.set(row, 1 + 2 * i + b, tr(a, &g, r as i64, b as i64), None);
            }
        }
        for b in 0..2 {
            for j in 0..m {
                let ci = (r + m - j) % m;
                d.set(row, col(j, b), tr(&s.c[ci], &g, j as i64, b as i64), None);
            }
        }
    }
    d.hole = Some(Hole { w: infinite_points(s.w), p_rows: (0..h).collect(), q_cols: (0..hc).collect() });
    Ok(d)
}

impl IgbtpZ4Starter {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::new(vec![self.m, 4])
    }

    /// Row multisets R_∘ (`second = false`) and R_• (`second = true`).
    pub fn row_zero(&self, second: bool) -> Vec<PointLabel> {
        let g = self.group();
        let (x, y) = (self.x, self.y);
        let (mut r, a_off, c_off, d_off) = if !second {
            (vec![pt(0, 0), pt(0, 1), pt(x, 0), pt(x, 2), pt(y, 0), pt(y, 3)], [0, 2], [0, 2], [1, 3])
        } else {
            (vec![pt(0, 2), pt(0, 3), pt(x, 1), pt(x, 3), pt(y, 1), pt(y, 2)], [1, 3], [1, 3], [0, 2])
        };
        for o in a_off {
            r.extend(tr(&self.a, &g, 0, o));
        }
        for (i, c) in self.c.iter().enumerate() {
            for j in c_off {
                r.extend(tr(c, &g, -(i as i64), -j));
            }
        }
        for (i, dd) in self.d.iter().enumerate() {
            for j in d_off {
                r.extend(tr(dd, &g, -(i as i64), -j));
            }
        }
        r
    }
}

pub fn verify_igbtp_z4_starter(s: &IgbtpZ4Starter) -> VerifyReport {
    let mut rep = VerifyReport::new();
    let m = s.m;
    let mut shape = Witnesses::new("shape");
    if m % 2 == 0 || m < 3 || s.x >= m || s.y >= m {
        shape.push(format!("m = {m} must be odd and at least 3, with x, y in Z_m"));
        rep.add(shape);
        return rep;
    }
    if s.b.len() != 4 || s.c.len() != m as usize || s.d.len() != m as usize {
        shape.push(format!("family sizes {} / {} / {}", s.b.len(), s.c.len(), s.d.len()));
    }
    sizes(std::slice::from_ref(&s.a), |_| 2, "A", &mut shape);
    sizes(&s.b, |_| 2, "B", &mut shape);
    sizes(&s.c, |i| if i == 0 { 3 } else { 2 }, "C", &mut shape);
    sizes(&s.d, |_| 2, "D", &mut shape);
    let uni = point_set(m, 4, 9);
    let all: Vec<&Block> = std::iter::once(&s.a).chain(&s.b).chain(&s.c).chain(&s.d).collect();
    check_points(&all, &uni, &mut shape);
    let ok = shape.is_clean();
    rep.add(shape);
    if !ok {
        return rep;
    }
    let g = s.group();
    let owned: Vec<Block> = all.iter().map(|b| (*b).clone()).collect();
    let mut w = Witnesses::new("i");
    let d = difference_list(&owned, &g, DiffMode::Plain).expect("points checked");
    exactly_once(&d, &nonzero_offsets(&g), &mut w);
    rep.add(w);
    let copies: BTreeSet<u32> = s.a.iter().filter_map(|p| p.copy()).collect();
    rep.add_flag("ii", copies == BTreeSet::from([0, 2]), || format!("A meets copies {copies:?}"));
    let mut w = Witnesses::new("iii");
    partitions(&s.b.iter().chain(&s.c).chain(&s.d).collect::<Vec<_>>(), &uni, &mut w);
    rep.add(w);
    let mut w = Witnesses::new("iv");
    for (name, fam) in [("C", &s.c), ("D", &s.d)] {
        for (i, b) in fam.iter().enumerate() {
            if w_hits(b) > 1 {
                w.push(format!("{name}_{i} meets W in {} points", w_hits(b)));
            }
        }
    }
    rep.add(w);
    let mut w = Witnesses::new("v");
    once_or_twice(&s.row_zero(false), &uni, &mut w);
    once_or_twice(&s.row_zero(true), &uni, &mut w);
    rep.add(w);
    let mut w = Witnesses::new("b_finite");
    for (i, b) in s.b.iter().enumerate() {
        if w_hits(b) > 0 {
            w.push(format!("B_{} meets W", i + 1));
        }
    }
    rep.add(w);
    rep
}

/// Rows: `1..4`, then `r_0` (∘ rows) and `r_1` (• rows) for r in Z_m.
/// Columns: `1..5`, then `j_b` for b in Z_4, j in Z_m.
pub fn develop_igbtp_z4(s: &IgbtpZ4Starter) -> Result<DesignGrid> {
    refuse_unless_valid(&verify_igbtp_z4_starter(s))?;
    let g = s.group();
    let m = s.m as usize;
    let mut rows: Vec<PointLabel> = (1..=4).map(PointLabel::int).collect();
    for half in 0..2 {
        rows.extend((0..s.m).map(|r| pt(r, half)));
    }
    let mut cols: Vec<PointLabel> = (1..=5).map(PointLabel::int).collect();
    for b in 0..4 {
        cols.extend((0..s.m).map(|j| pt(j, b)));
    }
    let mut d = DesignGrid::new(DesignKind::Igbtp, 1, vec![2, 3], point_set(s.m, 4, 9), rows, cols);
    d.k_star = vec![3];
    let col = |j: usize, b: usize| 5 + b * m + j;
    for (i, bb) in s.b.iter().enumerate() {
        for b in 0..4 {
            for j in 0..m {
                d.set(i, col(j, b), tr(bb, &g, j as i64, b as i64), None);
            }
        }
    }
    let (x, y) = (s.x as usize, s.y as usize);
    let p = |v: usize, b: u32| pt((v % m) as u32, b);
    for r in 0..m {
        let ro = 4 + r;
        let rb = 4 + m + r;
        d.set(ro, 0, vec![p(r, 0), p(r, 1)], None);
        d.set(ro, 1, vec![p(x + r, 0), p(x + r, 2)], None);
        d.set(ro, 2, vec![p(y + r, 0), p(y + r, 3)], None);
        d.set(ro, 3, tr(&s.a, &g, r as i64, 0), None);
        d.set(ro, 4, tr(&s.a, &g, r as i64, 2), None);
        d.set(rb, 0, vec![p(r, 2), p(r, 3)], None);
        d.set(rb, 1, vec![p(x + r, 1), p(x + r, 3)], None);
        d.set(rb, 2, vec![p(y + r, 1), p(y + r, 2)], None);
        d.set(rb, 3, tr(&s.a, &g, r as i64, 1), None);
        d.set(rb, 4, tr(&s.a, &g, r as i64, 3), None);
        for b in 0..4 {
            for j in 0..m {
                let i = (r + m - j) % m;
                let (top, bottom) = if b % 2 == 0 { (&s.c[i], &s.d[i]) } else { (&s.d[i], &s.c[i]) };
                d.set(ro, col(j, b), tr(top, &g, j as i64, b as i64), None);
                d.set(rb, col(j, b), tr(bottom, &g, j as i64, b as i64), None);
            }
        }
    }
    d.hole = Some(Hole { w: infinite_points(9), p_rows: (0..4).collect(), q_cols: (0..5).collect() });
    Ok(d)
}
