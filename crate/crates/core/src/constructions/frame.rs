use std::collections::HashMap;

use super::require;
use crate::algebra::PointLabel;
use crate::designs::{td_params, verify_drtd, verify_frgbtd, DesignGrid, DesignKind};
use crate::error::{Error, Result};

/// FrGBTD(k,nT) from an FrGBTD(k,T) and a DRTD(k,n). Point `i_b` is the
/// i-th frame point (sorted order) in copy b; row `r_a` is frame row r,
/// DRTD row a.
pub fn inflate(frame: &DesignGrid, drtd: &DesignGrid) -> Result<DesignGrid> {
    require(verify_frgbtd(frame)?, "frame")?;
    require(verify_drtd(drtd)?, "DRTD")?;
    let (k, n) = td_params(drtd)?;
    if frame.k_set != vec![k] {
        return Err(Error::BadParameters(format!("frame block size {:?} vs DRTD({k},{n})", frame.k_set)));
    }
    let ix: HashMap<&PointLabel, u32> = frame.points.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let nn = n as u32;
    let points: Vec<PointLabel> = (0..frame.points.len() as u32).flat_map(|x| (0..nn).map(move |b| PointLabel::sub(x, b))).collect();
    let rows: Vec<PointLabel> = (0..frame.nrows() as u32).flat_map(|r| (0..nn).map(move |a| PointLabel::sub(r, a))).collect();
    let cols: Vec<PointLabel> = (0..frame.ncols() as u32).flat_map(|c| (0..nn).map(move |b| PointLabel::sub(c, b))).collect();
    let mut d = DesignGrid::new(DesignKind::FrGbtd, 1, vec![k], points, rows, cols);
    let dg = drtd.groups.as_ref().unwrap();
    let dgof = drtd.group_of().unwrap();
    let dpos: HashMap<&PointLabel, u32> =
        dg.iter().flat_map(|g| g.iter().enumerate().map(|(i, p)| (p, i as u32))).collect();
    for (i, j, cell) in frame.occupied() {
        for (a, b, dc) in drtd.occupied() {
            let blk = dc.block.iter().map(|p| PointLabel::sub(ix[&cell.block[dgof[p]]], dpos[p])).collect();
            d.set(i * n + a, j * n + b, blk, None);
        }
    }
    let fg = frame.groups.as_ref().unwrap();
    d.groups = Some(
        fg.iter()
            .map(|g| {
                let mut v: Vec<PointLabel> = g.iter().flat_map(|p| {
                    let x = ix[p];
                    (0..nn).map(move |b| PointLabel::sub(x, b))
                }).collect();
                v.sort();
                v
            })
            .collect(),
    );
    let spread = |idx: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        idx.iter().map(|l| l.iter().flat_map(|&r| (0..n).map(move |a| r * n + a)).collect()).collect()
    };
    d.row_group_index = Some(spread(frame.row_group_index.as_ref().unwrap()));
    d.col_group_index = Some(spread(frame.col_group_index.as_ref().unwrap()));
    d.source = Some(format!("inflation by DRTD({k},{n})"));
    Ok(d)
}

/// Frames looked up by their multiset of group sizes.
#[derive(Debug, Clone, Default)]
pub struct IngredientRegistry {
    entries: Vec<(Vec<usize>, DesignGrid)>,
}

fn type_of(g: &DesignGrid) -> Vec<usize> {
    let mut t: Vec<usize> = g.groups.as_ref().map_or(vec![], |gs| gs.iter().map(|x| x.len()).collect());
    t.sort();
    t
}

impl IngredientRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register a frame; it must verify.
    pub fn add(&mut self, g: DesignGrid) -> Result<()> {
        require(verify_frgbtd(&g)?, "ingredient")?;
        self.entries.push((type_of(&g), g));
        Ok(())
    }

    pub fn get(&self, sizes: &[usize]) -> Option<&DesignGrid> {
        let mut t = sizes.to_vec();
        t.sort();
        self.entries.iter().find(|(x, _)| *x == t).map(|(_, g)| g)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Weighted fundamental construction. Point `i_s` is copy s of the i-th
/// master point (sorted order); rows `i_a` and columns `i_b` likewise.
/// Points of weight 0 vanish.
pub fn fundamental(
    master: &DesignGrid,
    weight: &dyn Fn(&PointLabel) -> usize,
    k: usize,
    ingredients: &IngredientRegistry,
) -> Result<DesignGrid> {
    let mgroups = master.groups.as_ref().ok_or_else(|| Error::BadShape("master has no groups".into()))?;
    if k < 2 {
        return Err(Error::BadParameters(format!("k = {k} is below 2")));
    }
    let ix: HashMap<&PointLabel, u32> = master.points.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let w: Vec<usize> = master.points.iter().map(weight).collect();
    if let Some(i) = w.iter().position(|&x| x % (k * (k - 1)) != 0) {
        return Err(Error::BadParameters(format!("weight {} of {} is not a multiple of {}", w[i], master.points[i], k * (k - 1))));
    }
    let live: Vec<u32> = (0..w.len() as u32).filter(|&i| w[i as usize] > 0).collect();
    let lines = |div: usize| -> Vec<PointLabel> {
        live.iter().flat_map(|&i| (0..(w[i as usize] / div) as u32).map(move |a| PointLabel::sub(i, a))).collect()
    };
    let (rows, cols) = (lines(k), lines(k - 1));
    let rpos: HashMap<&PointLabel, usize> = rows.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let cpos: HashMap<&PointLabel, usize> = cols.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let points: Vec<PointLabel> = lines(1);
    let mut d = DesignGrid::new(DesignKind::FrGbtd, 1, vec![k], points, rows.clone(), cols.clone());
    for (_, _, cell) in master.occupied() {
        let a: Vec<u32> = cell.block.iter().map(|p| ix[p]).filter(|&i| w[i as usize] > 0).collect();
        if a.len() < 2 {
            continue;
        }
        let want: Vec<usize> = a.iter().map(|&i| w[i as usize]).collect();
        let ing = ingredients.get(&want).ok_or_else(|| Error::MissingIngredient(format!("FrGBTD({k}) of type {want:?}")))?;
        if ing.k_set != vec![k] {
            return Err(Error::MissingIngredient(format!("ingredient for {want:?} has block sizes {:?}", ing.k_set)));
        }
        let ig = ing.groups.as_ref().unwrap();
        let (iri, ici) = (ing.row_group_index.as_ref().unwrap(), ing.col_group_index.as_ref().unwrap());
        let mut used = vec![false; ig.len()];
        let mut pmap: HashMap<&PointLabel, PointLabel> = HashMap::new();
        let mut rmap: HashMap<usize, usize> = HashMap::new();
        let mut cmap: HashMap<usize, usize> = HashMap::new();
        for &x in &a {
            let wx = w[x as usize];
            let g = (0..ig.len()).find(|&g| !used[g] && ig[g].len() == wx).expect("registry matched the type");
            used[g] = true;
            let mut pts: Vec<&PointLabel> = ig[g].iter().collect();
            pts.sort();
            for (s, p) in pts.into_iter().enumerate() {
                pmap.insert(p, PointLabel::sub(x, s as u32));
            }
            for (s, &r) in iri[g].iter().enumerate() {
                rmap.insert(r, rpos[&PointLabel::sub(x, s as u32)]);
            }
            for (s, &c) in ici[g].iter().enumerate() {
                cmap.insert(c, cpos[&PointLabel::sub(x, s as u32)]);
            }
        }
        for (r, c, bc) in ing.occupied() {
            let (rr, cc) = (rmap[&r], cmap[&c]);
            if d.block(rr, cc).is_some() {
                return Err(Error::BadParameters(format!("master blocks overlap in cell ({rr},{cc})")));
            }
            d.set(rr, cc, bc.block.iter().map(|p| pmap[p].clone()).collect(), None);
        }
    }
    let mut groups = Vec::new();
    let (mut rgi, mut cgi) = (Vec::new(), Vec::new());
    for g in mgroups {
        let xs: Vec<u32> = g.iter().map(|p| ix[p]).filter(|&i| w[i as usize] > 0).collect();
        if xs.is_empty() {
            continue;
        }
        let mut pts: Vec<PointLabel> =
            xs.iter().flat_map(|&x| (0..w[x as usize] as u32).map(move |s| PointLabel::sub(x, s))).collect();
        pts.sort();
        groups.push(pts);
        let pick = |div: usize, pos: &HashMap<&PointLabel, usize>| -> Vec<usize> {
            xs.iter().flat_map(|&x| (0..(w[x as usize] / div) as u32).map(move |a| pos[&PointLabel::sub(x, a)])).collect()
        };
        rgi.push(pick(k, &rpos));
        cgi.push(pick(k - 1, &cpos));
    }
    d.groups = Some(groups);
    d.row_group_index = Some(rgi);
    d.col_group_index = Some(cgi);
    d.source = Some("fundamental construction".into());
    Ok(d)
}
