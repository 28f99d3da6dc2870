use std::collections::BTreeSet;

use super::{exactly_once, once_or_twice, partitions, refuse_unless_valid, sizes};
use crate::algebra::{difference_list, make_block, translate_block, AbelianGroup, Block, DiffMode, Field, PointLabel};
use crate::designs::{DesignGrid, DesignKind, VerifyReport, Witnesses};
use crate::error::{Error, Result};

/// Starter over Γ×[3]. `a[i]` is A_α for α = `group.element(i)`; `b[t-1]`
/// is B_t. Colors, when present, belong to A_α-α and B_t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbtdStarter {
    pub group: AbelianGroup,
    pub a: Vec<Block>,
    pub b: Vec<Block>,
    pub special: bool,
    pub colors: Option<(Vec<u32>, Vec<u32>)>,
}

pub(crate) fn point(g: &[u32], copy: u32) -> PointLabel {
    PointLabel::vec(g.to_vec(), Some(copy))
}

fn universe(group: &AbelianGroup) -> Vec<PointLabel> {
    let mut u: Vec<PointLabel> = group.elements().iter().flat_map(|x| (1..=3).map(move |i| point(x, i))).collect();
    u.sort();
    u
}

impl GbtdStarter {
    /// The row-zero multiset blocks: A_α-α for every α, then every B_t.
    pub fn row_zero(&self) -> Result<Vec<Block>> {
        let els = self.group.elements();
        let mut out = Vec::new();
        for (i, a) in self.a.iter().enumerate() {
            out.push(translate_block(a, &self.group, &self.group.neg(&els[i]))?);
        }
        out.extend(self.b.iter().cloned());
        Ok(out)
    }
}

pub fn verify_gbtd_starter(s: &GbtdStarter) -> VerifyReport {
    let mut rep = VerifyReport::new();
    let g = &s.group;
    let m = g.order();
    let mut shape = Witnesses::new("shape");
    if m % 2 == 0 {
        shape.push(format!("group order {m} is even"));
    }
    if s.a.len() != m || s.b.len() != m / 2 {
        shape.push(format!("{} A blocks and {} B blocks, want {m} and {}", s.a.len(), s.b.len(), m / 2));
    }
    sizes(&s.a, |_| 3, "A", &mut shape);
    sizes(&s.b, |_| 3, "B", &mut shape);
    let uni = universe(g);
    for p in s.a.iter().chain(&s.b).flatten() {
        if uni.binary_search(p).is_err() {
            shape.push(format!("point {p} is not in the group times [3]"));
        }
    }
    let ok = shape.is_clean();
    rep.add(shape);
    if !ok {
        return rep;
    }
    let all: Vec<Block> = s.a.iter().chain(&s.b).cloned().collect();
    let nonzero: Vec<Vec<u32>> = g.elements().into_iter().filter(|x| *x != g.zero()).collect();
    let mut w = Witnesses::new("i");
    for i in 1..=3 {
        let d = difference_list(&all, g, DiffMode::Pure(i)).expect("points checked");
        exactly_once(&d, &nonzero, &mut w);
    }
    rep.add(w);
    let mut w = Witnesses::new("ii");
    for i in 1..=3 {
        for j in (1..=3).filter(|&j| j != i) {
            let d = difference_list(&all, g, DiffMode::Mixed(i, j)).expect("points checked");
            exactly_once(&d, &g.elements(), &mut w);
        }
    }
    rep.add(w);
    let mut w = Witnesses::new("iii");
    partitions(&s.a.iter().collect::<Vec<_>>(), &uni, &mut w);
    rep.add(w);
    let mut w = Witnesses::new("iv");
    for (t, b) in s.b.iter().enumerate() {
        let copies: BTreeSet<u32> = b.iter().filter_map(|p| p.copy()).collect();
        if copies.len() != 3 {
            w.push(format!("B_{} meets copies {copies:?}", t + 1));
        }
    }
    rep.add(w);
    let r = s.row_zero().expect("points checked");
    let flat: Vec<PointLabel> = r.iter().flatten().cloned().collect();
    let mut w = Witnesses::new("v");
    once_or_twice(&flat, &uni, &mut w);
    rep.add(w);
    if s.special {
        let zero = g.index(&g.zero());
        let mut w = Witnesses::new("vi");
        for p in &s.a[zero] {
            let c = flat.iter().filter(|x| *x == p).count();
            if c != 1 {
                w.push(format!("point {p} of A_0 occurs {c} times in row zero"));
            }
        }
        rep.add(w);
    }
    if let Some((ca, cb)) = &s.colors {
        let colors: Vec<u32> = ca.iter().chain(cb).copied().collect();
        let mut w = Witnesses::new("vii");
        if colors.len() != r.len() {
            w.push(format!("{} colors for {} blocks", colors.len(), r.len()));
        } else {
            for i in 0..r.len() {
                for j in i + 1..r.len() {
                    if colors[i] == colors[j] && r[i].iter().any(|p| r[j].contains(p)) {
                        w.push(format!("blocks {i} and {j} share color {} and meet", colors[i]));
                    }
                }
            }
        }
        rep.add(w);
        let mut w = Witnesses::new("viii");
        for c in 0..3 {
            let covered: BTreeSet<&PointLabel> =
                r.iter().zip(&colors).filter(|(_, &x)| x == c).flat_map(|(b, _)| b.iter()).collect();
            if uni.iter().all(|p| covered.contains(p)) {
                w.push(format!("color {c} has no witness"));
            }
        }
        if colors.iter().any(|&c| c >= 3) {
            w.push("more than three colors".into());
        }
        rep.add(w);
    }
    rep
}

/// Rows are Γ; columns are Γ (labelled `β_0`) followed by T (labelled `t_1`).
pub fn develop_gbtd(s: &GbtdStarter) -> Result<DesignGrid> {
    refuse_unless_valid(&verify_gbtd_starter(s))?;
    let g = &s.group;
    let els = g.elements();
    let m = els.len();
    let rows: Vec<PointLabel> = els.iter().map(|x| PointLabel::vec(x.clone(), None)).collect();
    let mut cols: Vec<PointLabel> = els.iter().map(|x| PointLabel::vec(x.clone(), Some(0))).collect();
    cols.extend((1..=s.b.len() as u32).map(|t| PointLabel::sub(t, 1)));
    let mut d = DesignGrid::new(DesignKind::Gbtd, 1, vec![3], universe(g), rows, cols);
    for (ai, a) in s.a.iter().enumerate() {
        for (bi, beta) in els.iter().enumerate() {
            let r = g.index(&g.add(&els[ai], beta));
            let color = s.colors.as_ref().map(|c| c.0[ai]);
            d.set(r, bi, translate_block(a, g, beta)?, color);
        }
    }
    for (t, b) in s.b.iter().enumerate() {
        for (ai, alpha) in els.iter().enumerate() {
            let color = s.colors.as_ref().map(|c| c.1[t]);
            d.set(ai, m + t, translate_block(b, g, alpha)?, color);
        }
    }
    if s.special {
        let z = g.index(&g.zero());
        d.special = Some((z, z));
    }
    Ok(d)
}

/// The parameters chosen by `build_fq_gbtd_starter`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqStarterInfo {
    pub s: u32,
    pub omega: u32,
    pub gamma: u32,
    pub forbidden_a: Vec<u32>,
    pub lambda: Vec<u32>,
}

/// Special, 3-colorable starter over F_q×[3] for q ≡ 1 (mod 6).
pub fn build_fq_gbtd_starter(q: u64) -> Result<(GbtdStarter, FqStarterInfo)> {
    let f = Field::from_order(q)?;
    if q % 6 != 1 {
        return Err(Error::NotOneMod6(q));
    }
    let s = ((q - 1) / 6) as i64;
    let w = |k: i64| f.omega_pow(k);
    let forbidden_a = vec![0, f.neg(1), f.neg(w(2 * s)), f.neg(w(4 * s))];
    let mut forbidden: BTreeSet<u32> = forbidden_a.iter().copied().collect();
    for i in 1..=3 {
        for j in (1..=3).filter(|&j| j != i) {
            for t in 1..s {
                let num = f.sub(w(2 * i * s), w(t + 2 * j * s));
                let den = f.sub(w(t), 1);
                forbidden.insert(f.div(num, den).expect("ω^t ≠ 1 for 0 < t < q-1"));
            }
        }
    }
    let gamma = f.elements().find(|x| !forbidden.contains(x)).expect("a valid γ exists");
    let lam_of = |t: i64, i: i64| f.neg(f.mul(gamma, w(t - 1 + 2 * (i - 1) * s)));
    let mut lambda = Vec::new();
    for t in 1..=s {
        for j in 1..=3 {
            lambda.push(lam_of(t, j));
        }
    }
    let group = f.additive_group();
    let pt = |x: u32, i: u32| point(&f.coords(x), i);
    let mut a = Vec::new();
    let mut ca = Vec::new();
    for el in group.elements() {
        let alpha = f.from_coords(&el);
        let mut hit = None;
        for t in 1..=s {
            for i in 1..=3 {
                if lam_of(t, i) == alpha {
                    hit = Some((t, i));
                }
            }
        }
        let blk = match hit {
            Some((t, i)) => (1..=3).map(|j| pt(w(t - 1 + 2 * (j - 1) * s), i as u32)).collect(),
            None => {
                let base = f.neg(f.div(alpha, gamma).unwrap());
                (1..=3).map(|i| pt(f.mul(base, w(2 * (i - 1) * s)), i as u32)).collect()
            }
        };
        a.push(make_block(blk));
        ca.push(if alpha == 0 {
            0
        } else if hit.is_some() {
            1
        } else {
            2
        });
    }
    let mut b = Vec::new();
    for t in 1..=s {
        for j in 1..=3 {
            let blk = (1..=3)
                .map(|i| pt(f.mul(w(t - 1 + 2 * (j - 1) * s), f.add(w(2 * (i - 1) * s), gamma)), i as u32))
                .collect();
            b.push(make_block(blk));
        }
    }
    let cb = vec![2; b.len()];
    let st = GbtdStarter { group, a, b, special: true, colors: Some((ca, cb)) };
    let info = FqStarterInfo { s: s as u32, omega: f.omega, gamma, forbidden_a, lambda };
    Ok((st, info))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q7_parameters() {
        let (st, info) = build_fq_gbtd_starter(7).unwrap();
        assert_eq!((info.s, info.omega, info.gamma), (1, 3, 1));
        assert_eq!(info.forbidden_a, vec![0, 6, 5, 3]);
        assert_eq!(info.lambda, vec![6, 5, 3]);
        let rep = verify_gbtd_starter(&st);
        assert!(rep.pass, "{rep}");
        assert_eq!(rep.conditions.len(), 9);
    }

    #[test]
    fn q13_verifies() {
        let (st, _) = build_fq_gbtd_starter(13).unwrap();
        assert!(verify_gbtd_starter(&st).pass);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(build_fq_gbtd_starter(11).unwrap_err(), Error::NotOneMod6(11));
        assert_eq!(build_fq_gbtd_starter(21).unwrap_err(), Error::NotPrimePower(21));
    }

    #[test]
    fn shifted_block_fails_cover() {
        let (mut st, _) = build_fq_gbtd_starter(7).unwrap();
        st.a[1] = translate_block(&st.a[1], &st.group, &[1]).unwrap();
        let rep = verify_gbtd_starter(&st);
        assert!(!rep.condition("iii").unwrap().pass);
    }

    #[test]
    fn trivial_group() {
        let g = AbelianGroup::cyclic(1);
        let st = GbtdStarter {
            group: g,
            a: vec![make_block((1..=3).map(|i| point(&[0], i)).collect())],
            b: vec![],
            special: true,
            colors: None,
        };
        let d = develop_gbtd(&st).unwrap();
        assert_eq!((d.nrows(), d.ncols()), (1, 1));
        assert!(crate::designs::verify_gbtd(&d).unwrap().pass);
    }
}
