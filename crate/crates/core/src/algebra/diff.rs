use super::group::AbelianGroup;
use super::label::PointLabel;
use crate::error::{Error, Result};

/// A block is a sorted, duplicate-free list of points.
pub type Block = Vec<PointLabel>;

pub fn make_block(mut pts: Vec<PointLabel>) -> Block {
    pts.sort();
    pts.dedup();
    pts
}

pub fn translate_block(b: &[PointLabel], g: &AbelianGroup, gamma: &[u32]) -> Result<Block> {
    let out = b.iter().map(|p| p.translate(g, gamma)).collect::<Result<Vec<_>>>()?;
    Ok(make_block(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffMode {
    Plain,
    Pure(u32),
    Mixed(u32, u32),
}

/// Differences `x - y` over ordered pairs of distinct points in each block,
/// returned sorted. Infinite points never contribute.
pub fn difference_list(blocks: &[Block], g: &AbelianGroup, mode: DiffMode) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for b in blocks {
        let fin: Vec<&PointLabel> = b.iter().filter(|p| !p.is_infinite()).collect();
        match mode {
            DiffMode::Plain => {
                let els = fin.iter().map(|p| p.element(g).map(|e| e.unwrap())).collect::<Result<Vec<_>>>()?;
                for (i, x) in els.iter().enumerate() {
                    for (j, y) in els.iter().enumerate() {
                        if i != j {
                            out.push(g.sub(x, y));
                        }
                    }
                }
            }
            DiffMode::Pure(a) | DiffMode::Mixed(a, _) => {
                let bcopy = match mode {
                    DiffMode::Mixed(_, b) => b,
                    _ => a,
                };
                for p in &fin {
                    if p.copy().is_none() {
                        return Err(Error::MissingCopyIndex(p.to_string()));
                    }
                    let c = p.coords().unwrap();
                    if c.len() != g.arity() || !g.contains(c) {
                        return Err(Error::GroupMismatch(p.to_string()));
                    }
                }
                for (i, x) in fin.iter().enumerate() {
                    for (j, y) in fin.iter().enumerate() {
                        if i != j && x.copy() == Some(a) && y.copy() == Some(bcopy) {
                            out.push(g.sub(x.coords().unwrap(), y.coords().unwrap()));
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::label::pl;

    fn blk(s: &str) -> Block {
        make_block(s.split_whitespace().map(pl).collect())
    }

    #[test]
    fn plain_difference_of_124() {
        let g = AbelianGroup::cyclic(7);
        let d = difference_list(&[blk("1 2 4")], &g, DiffMode::Plain).unwrap();
        let want: Vec<Vec<u32>> = (1..7).map(|x| vec![x]).collect();
        assert_eq!(d, want);
    }

    #[test]
    fn singleton_has_no_differences() {
        let g = AbelianGroup::cyclic(7);
        assert!(difference_list(&[blk("3")], &g, DiffMode::Plain).unwrap().is_empty());
    }

    #[test]
    fn mixed_needs_copies() {
        let g = AbelianGroup::cyclic(7);
        let e = difference_list(&[blk("1 2_0")], &g, DiffMode::Mixed(0, 1));
        assert_eq!(e, Err(Error::MissingCopyIndex("1".into())));
        let d = difference_list(&[blk("1_0 3_1 inf0")], &g, DiffMode::Mixed(0, 1)).unwrap();
        assert_eq!(d, vec![vec![5]]);
    }

    #[test]
    fn translate_examples() {
        let g = AbelianGroup::new(vec![5, 2]);
        assert_eq!(translate_block(&blk("0_0 0_1"), &g, &[1, 0]).unwrap(), blk("1_0 1_1"));
        let h = AbelianGroup::new(vec![3, 8]);
        assert_eq!(translate_block(&blk("2_7 inf7"), &h, &[1, 0]).unwrap(), blk("0_7 inf7"));
        let z = AbelianGroup::cyclic(9);
        assert_eq!(translate_block(&blk("4"), &z, &[0]).unwrap(), blk("4"));
    }
}
