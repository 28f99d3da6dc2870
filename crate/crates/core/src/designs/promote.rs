use super::grid::DesignGrid;
use crate::error::{Error, Result};

/// Turn a (k-1)-colored resolvable design into a k-colored one with
/// property Π by giving a fresh color to the block that holds the least
/// point appearing exactly once in the first row.
pub fn promote_coloring(g: &DesignGrid) -> Result<DesignGrid> {
    if !g.is_colored() {
        return Err(Error::MissingColoring);
    }
    let k = g.k_set.iter().copied().max().unwrap_or(0);
    let used = g.colors_used();
    if used.len() >= k {
        return Err(Error::AlreadyColored(used.len()));
    }
    let fresh = used.iter().max().map_or(0, |&c| c + 1);
    let mut count = std::collections::BTreeMap::new();
    for c in 0..g.ncols() {
        for p in g.block(0, c).into_iter().flatten() {
            *count.entry(p.clone()).or_insert(0usize) += 1;
        }
    }
    let x = count
        .into_iter()
        .find(|&(_, n)| n == 1)
        .map(|(p, _)| p)
        .ok_or(Error::NoSingletonPoint)?;
    let col = (0..g.ncols())
        .find(|&c| g.block(0, c).is_some_and(|b| b.contains(&x)))
        .expect("point was counted in row 0");
    let mut out = g.clone();
    out.cell_mut(0, col).unwrap().color = Some(fresh);
    Ok(out)
}
