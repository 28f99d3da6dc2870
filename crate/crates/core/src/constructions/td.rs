use std::collections::BTreeSet;

use super::require;
use crate::algebra::{Field, PointLabel};
use crate::designs::{int_labels, td_params, verify_drtd, verify_td, DesignGrid, DesignKind};
use crate::error::{Error, Result};

/// TD(k,q) over F_q×[k] from the lines of the affine plane. Point `v_i` is
/// field element v in group i (1-based). Block (x, b) sits in cell (x, b).
pub fn build_td(k: usize, q: u64) -> Result<DesignGrid> {
    let f = Field::from_order(q)?;
    let qn = q as usize;
    if k > qn + 1 {
        return Err(Error::KTooLarge(k, qn + 1));
    }
    if k < 2 {
        return Err(Error::BadParameters(format!("k = {k} is below 2")));
    }
    let groups: Vec<Vec<PointLabel>> =
        (1..=k as u32).map(|i| f.elements().map(|v| PointLabel::sub(v, i)).collect()).collect();
    let points: Vec<PointLabel> = groups.iter().flatten().cloned().collect();
    let mut d = DesignGrid::new(DesignKind::Td, 1, vec![k], points, int_labels(qn, 0), int_labels(qn, 0));
    for x in f.elements() {
        for b in f.elements() {
            let blk = (0..k as u32)
                .map(|i| {
                    let v = if (i as usize) < qn { f.add(f.mul(i, x), b) } else { x };
                    PointLabel::sub(v, i + 1)
                })
                .collect();
            d.set(x as usize, b as usize, blk, None);
        }
    }
    d.groups = Some(groups);
    d.source = Some(format!("TD({k},{q}) from F_{q}"));
    Ok(d)
}

/// DRTD(k,n) from a TD(k+2,n): the last two groups index rows and columns.
pub fn drtd_from_td(td: &DesignGrid) -> Result<DesignGrid> {
    require(verify_td(td)?, "TD")?;
    let (kk, n) = td_params(td)?;
    let k = kk - 2;
    let groups = td.groups.clone().unwrap();
    let gof = td.group_of().unwrap();
    let pos = |p: &PointLabel| groups[gof[p]].iter().position(|x| x == p).unwrap();
    let keep: Vec<Vec<PointLabel>> = groups[..k].to_vec();
    let points: Vec<PointLabel> = keep.iter().flatten().cloned().collect();
    let mut d = DesignGrid::new(DesignKind::Drtd, 1, vec![k], points, int_labels(n, 0), int_labels(n, 0));
    for (_, _, cell) in td.occupied() {
        let mut r = 0;
        let mut c = 0;
        let mut blk = Vec::new();
        for p in &cell.block {
            match gof[p] {
                g if g == k => r = pos(p),
                g if g == k + 1 => c = pos(p),
                _ => blk.push(p.clone()),
            }
        }
        d.set(r, c, blk, None);
    }
    d.groups = Some(keep);
    d.source = Some(format!("DRTD({k},{n})"));
    require(verify_drtd(&d)?, "DRTD")?;
    Ok(d)
}

fn shrink(td: &DesignGrid, gone: &BTreeSet<PointLabel>) -> DesignGrid {
    let groups: Vec<Vec<PointLabel>> = td
        .groups
        .as_ref()
        .unwrap()
        .iter()
        .map(|g| g.iter().filter(|p| !gone.contains(p)).cloned().collect::<Vec<_>>())
        .filter(|g| !g.is_empty())
        .collect();
    let points: Vec<PointLabel> = groups.iter().flatten().cloned().collect();
    let mut d = DesignGrid::new(DesignKind::Gdd, 1, vec![], points, td.rows.clone(), td.cols.clone());
    let mut sizes = BTreeSet::new();
    for (r, c, cell) in td.occupied() {
        let blk: Vec<PointLabel> = cell.block.iter().filter(|p| !gone.contains(p)).cloned().collect();
        if blk.len() >= 2 {
            sizes.insert(blk.len());
            d.set(r, c, blk, None);
        }
    }
    d.k_set = sizes.into_iter().collect();
    d.groups = Some(groups);
    d
}

/// Keep the first `keeps[i]` points of group `u+i` of a TD(u+s,m), where
/// s = keeps.len(). The result is a {u,..,u+s}-GDD of type m^u g_1..g_s.
pub fn truncate_td(td: &DesignGrid, keeps: &[usize]) -> Result<DesignGrid> {
    let (kk, m) = td_params(td)?;
    if keeps.len() > kk {
        return Err(Error::BadParameters(format!("{} keep values for {kk} groups", keeps.len())));
    }
    let u = kk - keeps.len();
    let groups = td.groups.as_ref().unwrap();
    let mut gone = BTreeSet::new();
    for (i, &g) in keeps.iter().enumerate() {
        if g > m {
            return Err(Error::KeepOutOfRange(g, m));
        }
        gone.extend(groups[u + i][g..].iter().cloned());
    }
    let mut d = shrink(td, &gone);
    d.source = Some(format!("truncated TD({kk},{m}) keeping {keeps:?}"));
    Ok(d)
}

/// Delete the points of one block that lie in the first `count` groups.
pub fn delete_block_points(td: &DesignGrid, r: usize, c: usize, count: usize) -> Result<DesignGrid> {
    let (kk, _) = td_params(td)?;
    if count > kk {
        return Err(Error::KeepOutOfRange(count, kk));
    }
    let blk = td.block(r, c).ok_or_else(|| Error::BadParameters(format!("cell ({r},{c}) is empty")))?;
    let gof = td.group_of().unwrap();
    let gone: BTreeSet<PointLabel> = blk.iter().filter(|p| gof[*p] < count).cloned().collect();
    let mut d = shrink(td, &gone);
    d.source = Some(format!("TD({kk}) minus {count} points of one block"));
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::verify_gdd;

    #[test]
    fn td_small() {
        let d = build_td(5, 4).unwrap();
        assert_eq!(d.block_count(), 16);
        assert!(verify_td(&d).unwrap().pass);
        assert!(verify_td(&build_td(5, 9).unwrap()).unwrap().pass);
        assert_eq!(build_td(6, 4).unwrap_err(), Error::KTooLarge(6, 5));
        assert_eq!(build_td(3, 6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn drtd_small() {
        let d = drtd_from_td(&build_td(5, 4).unwrap()).unwrap();
        assert_eq!((d.nrows(), d.ncols(), d.points.len()), (4, 4, 12));
        let mut bad = build_td(5, 4).unwrap();
        bad.clear(0, 0);
        assert!(matches!(drtd_from_td(&bad), Err(Error::NotVerified(_))));
    }

    #[test]
    fn truncation() {
        let td = build_td(6, 5).unwrap();
        let d = truncate_td(&td, &[0]).unwrap();
        assert_eq!(d.k_set, vec![5]);
        assert_eq!(d.groups.as_ref().unwrap().len(), 5);
        assert!(verify_gdd(&d).unwrap().pass);
        let same = truncate_td(&td, &[5]).unwrap();
        assert_eq!(same.blocks(), td.blocks());
        let d = truncate_td(&td, &[3]).unwrap();
        assert_eq!(d.k_set, vec![5, 6]);
        assert!(verify_gdd(&d).unwrap().pass);
        assert_eq!(truncate_td(&td, &[6]).unwrap_err(), Error::KeepOutOfRange(6, 5));
    }

    #[test]
    fn block_deletion() {
        let td = build_td(5, 11).unwrap();
        let d = delete_block_points(&td, 0, 0, 4).unwrap();
        let sizes: Vec<usize> = d.groups.as_ref().unwrap().iter().map(|g| g.len()).collect();
        assert_eq!(sizes, vec![10, 10, 10, 10, 11]);
        assert_eq!(d.k_set, vec![4, 5]);
        assert!(verify_gdd(&d).unwrap().pass);
    }
}
