use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::require;
use crate::algebra::PointLabel;
use crate::designs::{gbtd_params, int_labels, verify_frgbtd, verify_igbtp, Cell, DesignGrid, DesignKind, Hole};
use crate::error::{Error, Result};

/// Empty the special cell of a special GBTD, giving an IGBTP with a 1×1
/// hole whose point set is the removed block. Returns the removed cell.
pub fn demote_special(g: &DesignGrid) -> Result<(DesignGrid, Cell)> {
    let (r, c) = g.special.ok_or_else(|| Error::BadParameters("design has no special cell".into()))?;
    let mut out = g.clone();
    let cell = out.clear(r, c).ok_or_else(|| Error::BadParameters("special cell is empty".into()))?;
    out.kind = DesignKind::Igbtp;
    out.special = None;
    out.hole = Some(Hole { w: cell.block.clone(), p_rows: vec![r], q_cols: vec![c] });
    Ok((out, cell))
}

fn union_sizes(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().chain(b).copied().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Put `inner` into the empty hole of `outer`. `map` sends inner points to
/// hole points; by default the two sorted lists are paired in order.
pub fn fill_hole(
    outer: &DesignGrid,
    inner: &DesignGrid,
    map: Option<&BTreeMap<PointLabel, PointLabel>>,
) -> Result<DesignGrid> {
    let hole = outer.hole.as_ref().ok_or(Error::MissingHole)?;
    let (np, nq, nw) = (hole.p_rows.len(), hole.q_cols.len(), hole.w.len());
    if inner.nrows() != np || inner.ncols() != nq || inner.points.len() != nw {
        return Err(Error::HoleMismatch(format!(
            "hole is {np} x {nq} on {nw} points, inner is {} x {} on {}",
            inner.nrows(),
            inner.ncols(),
            inner.points.len()
        )));
    }
    if inner.lambda != outer.lambda {
        return Err(Error::HoleMismatch(format!("index {} vs {}", inner.lambda, outer.lambda)));
    }
    let pm: HashMap<PointLabel, PointLabel> = match map {
        None => inner.points.iter().cloned().zip(hole.w.iter().cloned()).collect(),
        Some(m) => {
            let image: BTreeSet<&PointLabel> = inner.points.iter().filter_map(|p| m.get(p)).collect();
            let want: BTreeSet<&PointLabel> = hole.w.iter().collect();
            if inner.points.iter().any(|p| !m.contains_key(p)) || image != want {
                return Err(Error::PointMapInvalid("map is not a bijection onto the hole points".into()));
            }
            m.iter().map(|(a, b)| (a.clone(), b.clone())).collect()
        }
    };
    let mut out = outer.clone();
    for (r, c, cell) in inner.occupied() {
        let (rr, cc) = (hole.p_rows[r], hole.q_cols[c]);
        if out.block(rr, cc).is_some() {
            return Err(Error::HoleMismatch(format!("hole cell ({rr},{cc}) is occupied")));
        }
        out.set(rr, cc, cell.block.iter().map(|p| pm[p].clone()).collect(), cell.color);
    }
    out.hole = None;
    out.k_set = union_sizes(&outer.k_set, &inner.k_set);
    out.k_star = union_sizes(&outer.k_star, &inner.k_star);
    out.kind = if out.k_set.len() == 1 && gbtd_params(&out).is_ok() { DesignKind::Gbtd } else { DesignKind::Gbtp };
    if out.kind == DesignKind::Gbtd && np == 1 && nq == 1 && inner.block_count() == 1 {
        out.special = Some((hole.p_rows[0], hole.q_cols[0]));
    }
    Ok(out)
}

/// What goes into the hole left by `frame_fill`.
#[derive(Debug, Clone)]
pub enum FinalFill {
    /// The hole points as one block (1×1 holes).
    Block,
    Grid(DesignGrid),
}

/// Replace each group of an FrGBTD by an IGBTP on that group plus a
/// common set W. Special GBTDs are accepted as inners and demoted first.
/// Rows are the hole rows P followed by the frame rows, all relabeled
/// `1..`; columns likewise.
pub fn frame_fill(frame: &DesignGrid, inners: &[DesignGrid], fill: Option<FinalFill>) -> Result<DesignGrid> {
    require(verify_frgbtd(frame)?, "frame")?;
    let groups = frame.groups.as_ref().unwrap();
    let (ri, ci) = (frame.row_group_index.as_ref().unwrap(), frame.col_group_index.as_ref().unwrap());
    if inners.len() != groups.len() {
        return Err(Error::GroupCountMismatch(groups.len(), inners.len()));
    }
    let mut holes = Vec::new();
    for (i, g) in inners.iter().enumerate() {
        let g = if g.hole.is_none() && g.special.is_some() { demote_special(g)?.0 } else { g.clone() };
        require(verify_igbtp(&g)?, &format!("inner {i}"))?;
        holes.push(g);
    }
    let h0 = holes[0].hole.clone().unwrap();
    let (m, n, w) = (h0.p_rows.len(), h0.q_cols.len(), h0.w.len());
    if holes.iter().any(|g| {
        let h = g.hole.as_ref().unwrap();
        (h.p_rows.len(), h.q_cols.len(), h.w.len()) != (m, n, w)
    }) {
        return Err(Error::WMismatch);
    }
    let base = frame.points.iter().filter_map(|p| if let PointLabel::Infinite(i) = p { Some(*i) } else { None }).max().unwrap_or(0);
    let wpts: Vec<PointLabel> = (1..=w as u32).map(|i| PointLabel::inf(base + i)).collect();
    let (nr, nc) = (m + frame.nrows(), n + frame.ncols());
    let mut points = frame.points.clone();
    points.extend(wpts.iter().cloned());
    let mut k_set = frame.k_set.clone();
    let mut k_star = Vec::new();
    for g in &holes {
        k_set = union_sizes(&k_set, &g.k_set);
        k_star = union_sizes(&k_star, &g.k_star);
    }
    let mut out = DesignGrid::new(DesignKind::Igbtp, 1, k_set, points, int_labels(nr, 1), int_labels(nc, 1));
    out.k_star = k_star;
    for (r, c, cell) in frame.occupied() {
        out.set(m + r, n + c, cell.block.clone(), None);
    }
    for (i, g) in holes.iter().enumerate() {
        let h = g.hole.as_ref().unwrap();
        let wset: BTreeSet<&PointLabel> = h.w.iter().collect();
        let own: Vec<&PointLabel> = g.points.iter().filter(|p| !wset.contains(p)).collect();
        let mut grp = groups[i].clone();
        grp.sort();
        if own.len() != grp.len() {
            return Err(Error::HoleMismatch(format!("inner {i} has {} points off W, group has {}", own.len(), grp.len())));
        }
        let mut pm: HashMap<&PointLabel, PointLabel> = own.into_iter().zip(grp).collect();
        let mut hw = h.w.clone();
        hw.sort();
        pm.extend(hw.iter().zip(wpts.iter().cloned()));
        let line_map = |len: usize, hole_lines: &[usize], own_lines: &[usize], off: usize| -> Result<Vec<usize>> {
            let rest: Vec<usize> = (0..len).filter(|x| !hole_lines.contains(x)).collect();
            if rest.len() != own_lines.len() {
                return Err(Error::HoleMismatch(format!("inner {i} has {} lines off the hole, frame has {}", rest.len(), own_lines.len())));
            }
            let mut v = vec![0; len];
            for (k, &x) in hole_lines.iter().enumerate() {
                v[x] = k;
            }
            for (k, &x) in rest.iter().enumerate() {
                v[x] = off + own_lines[k];
            }
            Ok(v)
        };
        let rmap = line_map(g.nrows(), &h.p_rows, &ri[i], m)?;
        let cmap = line_map(g.ncols(), &h.q_cols, &ci[i], n)?;
        for (r, c, cell) in g.occupied() {
            let (rr, cc) = (rmap[r], cmap[c]);
            if out.block(rr, cc).is_some() {
                return Err(Error::HoleMismatch(format!("inner {i} collides at cell ({rr},{cc})")));
            }
            out.set(rr, cc, cell.block.iter().map(|p| pm[p].clone()).collect(), None);
        }
    }
    out.hole = Some(Hole { w: wpts.clone(), p_rows: (0..m).collect(), q_cols: (0..n).collect() });
    out.source = Some(format!("frame filled with {} inners", inners.len()));
    match fill {
        None => Ok(out),
        Some(FinalFill::Block) => {
            if m != 1 || n != 1 {
                return Err(Error::HoleMismatch(format!("a single block cannot fill a {m} x {n} hole")));
            }
            let mut one = DesignGrid::new(DesignKind::Gbtp, 1, vec![w], wpts.clone(), int_labels(1, 1), int_labels(1, 1));
            one.set(0, 0, wpts, None);
            fill_hole(&out, &one, None)
        }
        Some(FinalFill::Grid(g)) => fill_hole(&out, &g, None),
    }
}
