use super::{exactly_once, partitions, refuse_unless_valid, sizes};
use crate::algebra::{difference_list, translate_block, AbelianGroup, Block, DiffMode, PointLabel};
use crate::designs::{DesignGrid, DesignKind, VerifyReport, Witnesses};
use crate::error::Result;

/// Starter over Z_3t×[2]. `a1[i-1]` is A_(i,1) and `a2[i-1]` is A_(i,2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrGbtdStarter {
    pub t: u32,
    pub a1: Vec<Block>,
    pub a2: Vec<Block>,
}

impl FrGbtdStarter {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::cyclic(3 * self.t)
    }

    pub fn family(&self, j: u32) -> &[Block] {
        if j == 1 {
            &self.a1
        } else {
            &self.a2
        }
    }

    /// R_j before reduction: the blocks A_(i,j) - i over Z_3t.
    pub fn row_blocks(&self, j: u32) -> Vec<Block> {
        let g = self.group();
        self.family(j)
            .iter()
            .enumerate()
            .map(|(i, b)| translate_block(b, &g, &g.reduce(&[-(i as i64 + 1)])).expect("points checked"))
            .collect()
    }

    /// R_j reduced mod t.
    pub fn row_residues(&self, j: u32) -> Vec<PointLabel> {
        let t = self.t;
        self.row_blocks(j)
            .iter()
            .flatten()
            .map(|p| PointLabel::sub(p.coords().unwrap()[0] % t, p.copy().unwrap()))
            .collect()
    }
}

pub(crate) fn frame_points(t: u32) -> Vec<PointLabel> {
    let mut v: Vec<PointLabel> = (0..3 * t).flat_map(|x| (1..=2).map(move |j| PointLabel::sub(x, j))).collect();
    v.sort();
    v
}

pub fn verify_frgbtd_starter(s: &FrGbtdStarter) -> VerifyReport {
    let mut rep = VerifyReport::new();
    let t = s.t;
    let mut shape = Witnesses::new("shape");
    let n = t.saturating_sub(1) as usize;
    if t == 0 || s.a1.len() != n || s.a2.len() != n {
        shape.push(format!("t = {t} with {} + {} blocks, want {n} each", s.a1.len(), s.a2.len()));
        rep.add(shape);
        return rep;
    }
    sizes(&s.a1, |_| 3, "A_(.,1)", &mut shape);
    sizes(&s.a2, |_| 3, "A_(.,2)", &mut shape);
    let pts = frame_points(t);
    for p in s.a1.iter().chain(&s.a2).flatten() {
        if pts.binary_search(p).is_err() {
            shape.push(format!("point {p} is not in Z_{}x[2]", 3 * t));
        }
    }
    let ok = shape.is_clean();
    rep.add(shape);
    if !ok {
        return rep;
    }
    let g = s.group();
    let all: Vec<Block> = s.a1.iter().chain(&s.a2).cloned().collect();
    let allowed: Vec<Vec<u32>> = (0..3 * t).filter(|x| x % t != 0).map(|x| vec![x]).collect();
    let mut w = Witnesses::new("i");
    for i in 1..=2 {
        for j in 1..=2 {
            let mode = if i == j { DiffMode::Pure(i) } else { DiffMode::Mixed(i, j) };
            let d = difference_list(&all, &g, mode).expect("points checked");
            exactly_once(&d, &allowed, &mut w);
        }
    }
    rep.add(w);
    let mut w = Witnesses::new("ii");
    let outside: Vec<PointLabel> = pts.iter().filter(|p| p.coords().unwrap()[0] % t != 0).cloned().collect();
    partitions(&all.iter().collect::<Vec<_>>(), &outside, &mut w);
    rep.add(w);
    let mut iii = Witnesses::new("iii");
    let mut iv = Witnesses::new("iv");
    for j in 1..=2 {
        let r = s.row_residues(j);
        for x in 1..t {
            for c in 1..=2 {
                let p = PointLabel::sub(x, c);
                let k = r.iter().filter(|q| **q == p).count();
                if k != 1 && k != 2 {
                    iii.push(format!("{p} occurs {k} times in R_{j}"));
                }
            }
        }
        for p in r.iter().filter(|p| p.coords().unwrap()[0] == 0) {
            iv.push(format!("R_{j} contains {p}"));
        }
    }
    rep.add(iii);
    rep.add(iv);
    rep
}

/// Rows are `i_j` for (i, j) in Z_t×[2], i-major; columns are Z_3t.
pub fn develop_frgbtd(s: &FrGbtdStarter) -> Result<DesignGrid> {
    refuse_unless_valid(&verify_frgbtd_starter(s))?;
    let g = s.group();
    let t = s.t;
    let rows: Vec<PointLabel> = (0..t).flat_map(|i| (1..=2).map(move |j| PointLabel::sub(i, j))).collect();
    let cols: Vec<PointLabel> = (0..3 * t).map(PointLabel::int).collect();
    let mut d = DesignGrid::new(DesignKind::FrGbtd, 1, vec![3], frame_points(t), rows, cols);
    for j in 1..=2u32 {
        for (i, a) in s.family(j).iter().enumerate() {
            for k in 0..3 * t {
                let r = ((i as u32 + 1 + k) % t) as usize * 2 + (j as usize - 1);
                d.set(r, k as usize, translate_block(a, &g, &[k])?, None);
            }
        }
    }
    d.groups = Some(
        (0..t)
            .map(|i| {
                let mut grp: Vec<PointLabel> =
                    (0..3).flat_map(|s| (1..=2).map(move |j| PointLabel::sub(i + s * t, j))).collect();
                grp.sort();
                grp
            })
            .collect(),
    );
    d.row_group_index = Some((0..t as usize).map(|i| vec![2 * i, 2 * i + 1]).collect());
    d.col_group_index = Some((0..t as usize).map(|i| (0..3).map(|s| i + s * t as usize).collect()).collect());
    Ok(d)
}
