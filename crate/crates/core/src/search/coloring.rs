use crate::designs::{verify_coloring, DesignGrid};
use crate::error::Result;

/// Colorings of one row's blocks: same-colored blocks are disjoint.
/// With `pi`, every color must also leave some design point uncovered.
fn color_row(blocks: &[Vec<usize>], npts: usize, colors: u32, pi: bool) -> Option<Vec<u32>> {
    let k = blocks.len();
    let clash: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| i != j && blocks[i].iter().any(|p| blocks[j].contains(p))).collect())
        .collect();
    let mut col = vec![u32::MAX; k];
    fn rec(i: usize, top: u32, col: &mut Vec<u32>, clash: &[Vec<bool>], blocks: &[Vec<usize>], npts: usize, colors: u32, pi: bool) -> bool {
        if i == col.len() {
            if !pi {
                return true;
            }
            return (0..colors).all(|c| {
                let mut cov = vec![false; npts];
                for (b, _) in blocks.iter().zip(col.iter()).filter(|(_, &x)| x == c) {
                    for &p in b {
                        cov[p] = true;
                    }
                }
                cov.iter().any(|&x| !x)
            });
        }
        for c in 0..colors.min(top + 1) {
            if (0..i).any(|j| clash[i][j] && col[j] == c) {
                continue;
            }
            col[i] = c;
            if rec(i + 1, top.max(c + 1), col, clash, blocks, npts, colors, pi) {
                return true;
            }
        }
        col[i] = u32::MAX;
        false
    }
    rec(0, 0, &mut col, &clash, blocks, npts, colors, pi).then_some(col)
}

/// A coloring of `g` with at most `colors` colors, row by row; with
/// `want_pi` the first row that admits witnesses for every color is
/// colored to have them.
pub fn search_coloring(g: &DesignGrid, colors: u32, want_pi: bool) -> Result<Option<DesignGrid>> {
    if colors == 0 {
        return Ok(None);
    }
    let idx = g.point_index();
    let mut out = g.clone();
    let mut pi_row = None;
    let mut rows = Vec::new();
    for r in 0..g.nrows() {
        let cells: Vec<usize> = (0..g.ncols()).filter(|&c| g.block(r, c).is_some()).collect();
        let blocks: Vec<Vec<usize>> = cells.iter().map(|&c| g.block(r, c).unwrap().iter().map(|p| idx[p]).collect()).collect();
        rows.push((cells, blocks));
    }
    if want_pi {
        pi_row = (0..rows.len()).find_map(|r| color_row(&rows[r].1, g.points.len(), colors, true).map(|c| (r, c)));
        if pi_row.is_none() {
            return Ok(None);
        }
    }
    for (r, (cells, blocks)) in rows.iter().enumerate() {
        let col = match &pi_row {
            Some((pr, c)) if *pr == r => c.clone(),
            _ => match color_row(blocks, g.points.len(), colors, false) {
                Some(c) => c,
                None => return Ok(None),
            },
        };
        for (&c, &x) in cells.iter().zip(&col) {
            out.cell_mut(r, c).unwrap().color = Some(x);
        }
    }
    if out.block_count() == 0 {
        return Ok(None);
    }
    let rep = verify_coloring(&out, colors, want_pi)?;
    assert!(rep.pass, "coloring search produced an invalid coloring: {rep}");
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::fixtures::{load, FIG2, FIG3};

    #[test]
    fn fixtures_recolor() {
        let mut g = load(FIG3);
        g.strip_colors();
        assert!(search_coloring(&g, 2, false).unwrap().is_some());
        let mut g = load(FIG2);
        g.strip_colors();
        let c = search_coloring(&g, 3, true).unwrap().unwrap();
        assert!(verify_coloring(&c, 3, true).unwrap().pass);
        assert!(search_coloring(&g, 1, false).unwrap().is_none());
    }
}
