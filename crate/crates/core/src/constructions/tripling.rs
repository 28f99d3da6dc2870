use std::collections::HashMap;

use super::require;
use crate::algebra::PointLabel;
use crate::designs::{int_labels, pi_witnesses, td_params, verify_coloring, verify_drtd, verify_rbibd, DesignGrid, DesignKind};
use crate::error::{Error, Result};

/// Three color-shifted copies of a 3-colored RBIBD(m,3,1) stacked over a
/// DRTD(3,m). Point `i_j` is the i-th RBIBD point (sorted order) in copy j.
/// With `special`, the DRTD is relabeled so that {x_0,y_1,z_2} lands in the
/// first Π row, and that cell becomes the special cell.
pub fn tripling(rbibd: &DesignGrid, drtd: &DesignGrid, special: bool) -> Result<DesignGrid> {
    if !rbibd.is_colored() {
        return Err(Error::ColorMissing);
    }
    if rbibd.k_set != vec![3] || rbibd.lambda != 1 {
        return Err(Error::BadParameters("tripling needs an RBIBD(m,3,1)".into()));
    }
    let mut plain = rbibd.clone();
    plain.kind = DesignKind::Rbibd;
    plain.special = None;
    require(verify_rbibd(&plain)?, "RBIBD")?;
    require(verify_coloring(rbibd, 3, false)?, "3-coloring")?;
    let m = rbibd.points.len();
    let (k, n) = td_params(drtd)?;
    if k != 3 || n != m {
        return Err(Error::BadParameters(format!("need a DRTD(3,{m}), got DRTD({k},{n})")));
    }
    require(verify_drtd(drtd)?, "DRTD")?;
    let ix: HashMap<&PointLabel, u32> = rbibd.points.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let h = m / 3;
    let wcols = (m - 1) / 2;
    let points: Vec<PointLabel> = (0..m as u32).flat_map(|x| (0..3).map(move |j| PointLabel::sub(x, j))).collect();
    let mut d = DesignGrid::new(DesignKind::Gbtd, 1, vec![3], points, int_labels(m, 1), int_labels(wcols + m, 1));
    for j in 0..3u32 {
        for (r, c, cell) in rbibd.occupied() {
            let shift = (cell.color.unwrap() + j) % 3;
            let blk = cell.block.iter().map(|p| PointLabel::sub(ix[p], shift)).collect();
            d.set(j as usize * h + r, c, blk, Some(0));
        }
    }
    let groups = drtd.groups.as_ref().unwrap();
    let gof = drtd.group_of().unwrap();
    let mut sigma: Vec<Vec<u32>> = vec![(0..m as u32).collect(); 3];
    let mut row_of: Vec<usize> = (0..m).collect();
    let mut special_cell = None;
    if special {
        let (r, wit) = pi_witnesses(rbibd, 3).ok_or(Error::NoWitnessBlock)?;
        let (br, bc, cell) = drtd.occupied().next().ok_or(Error::NoWitnessBlock)?;
        for p in &cell.block {
            let g = gof[p];
            let pos = groups[g].iter().position(|x| x == p).unwrap();
            let target = ix[&wit[g]];
            let other = sigma[g].iter().position(|&x| x == target).unwrap();
            sigma[g].swap(pos, other);
        }
        row_of.swap(br, r);
        special_cell = Some((r, wcols + bc));
    }
    for (r, c, cell) in drtd.occupied() {
        let blk = cell
            .block
            .iter()
            .map(|p| {
                let g = gof[p];
                let pos = groups[g].iter().position(|x| x == p).unwrap();
                PointLabel::sub(sigma[g][pos], g as u32)
            })
            .collect();
        d.set(row_of[r], wcols + c, blk, Some(1));
    }
    d.special = special_cell;
    d.source = Some(format!("tripled GBTD_1(3,{m})"));
    Ok(d)
}
