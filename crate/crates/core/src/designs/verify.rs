//! Exhaustive verifiers. Each returns a report with one entry per
//! condition and up to ten violation witnesses.

use std::collections::{BTreeSet, HashMap};

use super::grid::{DesignGrid, DesignKind, Hole};
use super::report::{VerifyReport, Witnesses};
use crate::algebra::PointLabel;
use crate::error::{Error, Result};

fn fmt_block(b: &[PointLabel]) -> String {
    let s: Vec<String> = b.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", s.join(","))
}

fn cell_name(g: &DesignGrid, r: usize, c: usize) -> String {
    format!("({},{})", g.rows[r], g.cols[c])
}

/// Expected coverage of a pair, used by exact-mode pair checks.
type PairRule<'a> = &'a dyn Fn(&PointLabel, &PointLabel) -> u32;

fn check_blocks(g: &DesignGrid, rep: &mut VerifyReport) {
    let idx = g.point_index();
    let mut known = Witnesses::new("points_known");
    let mut uni = Witnesses::new("k_uniform");
    for (r, c, cell) in g.occupied() {
        for p in &cell.block {
            if !idx.contains_key(p) {
                known.push(format!("point {p} in cell {} is not a design point", cell_name(g, r, c)));
            }
        }
        if !g.k_set.contains(&cell.block.len()) {
            uni.push(format!("cell {} holds a block of size {}", cell_name(g, r, c), cell.block.len()));
        }
    }
    rep.add(known);
    rep.add(uni);
}

/// Pair coverage: at most λ, or exactly `rule(x, y)` when a rule is given.
fn check_pairs(g: &DesignGrid, rep: &mut VerifyReport, rule: Option<PairRule>) {
    let idx = g.point_index();
    let v = g.points.len();
    let mut count = vec![0u32; v * v];
    let mut same_col = Witnesses::new("lambda_columns");
    let mut seen_in_col: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (r, c, cell) in g.occupied() {
        let ids: Vec<usize> = cell.block.iter().filter_map(|p| idx.get(p).copied()).collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let (x, y) = if a < b { (a, b) } else { (b, a) };
                count[x * v + y] += 1;
                if g.lambda > 1 {
                    if let Some(r0) = seen_in_col.insert((x, y, c), r) {
                        same_col.push(format!(
                            "pair {{{},{}}} covered twice in column {} (rows {} and {})",
                            g.points[x], g.points[y], g.cols[c], g.rows[r0], g.rows[r]
                        ));
                    }
                }
            }
        }
    }
    let mut w = Witnesses::new("pair_coverage");
    for x in 0..v {
        for y in x + 1..v {
            let got = count[x * v + y];
            let bad = match rule {
                Some(f) => got != f(&g.points[x], &g.points[y]),
                None => got > g.lambda,
            };
            if bad {
                let want = match rule {
                    Some(f) => format!("exactly {}", f(&g.points[x], &g.points[y])),
                    None => format!("at most {}", g.lambda),
                };
                w.push(format!("pair {{{},{}}} covered {got} times, want {want}", g.points[x], g.points[y]));
            }
        }
    }
    rep.add(w);
    if g.lambda > 1 {
        rep.add(same_col);
    }
}

pub fn verify_packing(g: &DesignGrid, exact: bool) -> VerifyReport {
    let mut rep = VerifyReport::new();
    check_blocks(g, &mut rep);
    let lam = g.lambda;
    let rule = move |_: &PointLabel, _: &PointLabel| lam;
    check_pairs(g, &mut rep, if exact { Some(&rule) } else { None });
    rep
}

fn floor_ceil(n: usize, m: usize) -> (usize, usize) {
    if m == 0 {
        return (0, 0);
    }
    (n / m, n.div_ceil(m))
}

/// Column partition, row equity and starred block sizes, honoring an
/// optional hole.
fn check_array(g: &DesignGrid, rep: &mut VerifyReport, hole: Option<&Hole>) {
    let idx = g.point_index();
    let v = g.points.len();
    let (m, n) = (g.nrows(), g.ncols());
    let (lo, hi) = floor_ceil(n, m);
    let in_w: Vec<bool> = match hole {
        Some(h) => g.points.iter().map(|p| h.w.contains(p)).collect(),
        None => vec![false; v],
    };
    let p_rows: BTreeSet<usize> = hole.map(|h| h.p_rows.iter().copied().collect()).unwrap_or_default();
    let q_cols: BTreeSet<usize> = hole.map(|h| h.q_cols.iter().copied().collect()).unwrap_or_default();

    let mut cols = Witnesses::new("columns");
    for c in 0..n {
        let mut cnt = vec![0u32; v];
        for r in 0..m {
            if let Some(b) = g.block(r, c) {
                for p in b {
                    if let Some(&i) = idx.get(p) {
                        cnt[i] += 1;
                    }
                }
            }
        }
        let partial = q_cols.contains(&c);
        for i in 0..v {
            let want = if partial && in_w[i] { 0 } else { 1 };
            if cnt[i] != want {
                cols.push(format!("column {}: point {} appears {} times, want {want}", g.cols[c], g.points[i], cnt[i]));
            }
        }
    }
    rep.add(cols);

    let mut rows = Witnesses::new("rows");
    for r in 0..m {
        let mut cnt = vec![0usize; v];
        for c in 0..n {
            if let Some(b) = g.block(r, c) {
                for p in b {
                    if let Some(&i) = idx.get(p) {
                        cnt[i] += 1;
                    }
                }
            }
        }
        let partial = p_rows.contains(&r);
        for i in 0..v {
            let ok = if partial && in_w[i] { cnt[i] == 0 } else { cnt[i] == lo || cnt[i] == hi };
            if !ok {
                rows.push(format!(
                    "row {}: point {} appears in {} cells, want {}",
                    g.rows[r],
                    g.points[i],
                    cnt[i],
                    if partial && in_w[i] { "0".to_string() } else { format!("{lo} or {hi}") }
                ));
            }
        }
    }
    rep.add(rows);

    if !g.k_star.is_empty() {
        let mut star = Witnesses::new("starred_sizes");
        for c in (0..n).filter(|c| !q_cols.contains(c)) {
            for &s in &g.k_star {
                let k = (0..m).filter(|&r| g.block(r, c).is_some_and(|b| b.len() == s)).count();
                if k != 1 {
                    star.push(format!("column {}: {k} blocks of size {s}, want 1", g.cols[c]));
                }
            }
        }
        rep.add(star);
    }
}

pub fn verify_gbtp(g: &DesignGrid) -> VerifyReport {
    let mut rep = verify_packing(g, false);
    check_array(g, &mut rep, None);
    rep
}

/// GBTD parameters `(k, m)` with `v = km` and `n = λ(km-1)/(k-1)`.
pub fn gbtd_params(g: &DesignGrid) -> Result<(usize, usize)> {
    if g.k_set.len() != 1 || g.k_set[0] < 2 {
        return Err(Error::BadParameters(format!("block sizes {:?} are not a single k >= 2", g.k_set)));
    }
    let k = g.k_set[0];
    let (v, m, n) = (g.points.len(), g.nrows(), g.ncols());
    let lam = g.lambda as usize;
    if v != k * m || lam * (k * m - 1) != n * (k - 1) {
        return Err(Error::BadParameters(format!(
            "v = {v}, {m} x {n} does not match a GBTD_{lam}({k},{m})"
        )));
    }
    Ok((k, m))
}

pub fn verify_gbtd(g: &DesignGrid) -> Result<VerifyReport> {
    gbtd_params(g)?;
    let mut rep = verify_packing(g, true);
    check_array(g, &mut rep, None);
    if g.special.is_some() {
        rep.merge(verify_special(g));
    }
    Ok(rep)
}

/// A special cell holds a block whose points appear nowhere else in its
/// row; emptying it leaves a 1x1 hole.
pub fn verify_special(g: &DesignGrid) -> VerifyReport {
    let mut rep = VerifyReport::new();
    let Some((r, c)) = g.special else {
        rep.add_flag("special", false, || "no special cell recorded".into());
        return rep;
    };
    let Some(w) = g.block(r, c) else {
        rep.add_flag("special", false, || format!("special cell {} is empty", cell_name(g, r, c)));
        return rep;
    };
    let mut wit = Witnesses::new("special");
    for c2 in (0..g.ncols()).filter(|&x| x != c) {
        if let Some(b) = g.block(r, c2) {
            for p in b.iter().filter(|p| w.contains(p)) {
                wit.push(format!("special point {p} reappears in cell {}", cell_name(g, r, c2)));
            }
        }
    }
    rep.add(wit);
    rep
}

pub fn verify_igbtp(g: &DesignGrid) -> Result<VerifyReport> {
    let hole = g.hole.as_ref().ok_or(Error::MissingHole)?;
    let mut rep = VerifyReport::new();
    check_blocks(g, &mut rep);
    let mut hw = Witnesses::new("hole_points");
    for p in &hole.w {
        if !g.points.contains(p) {
            hw.push(format!("hole point {p} is not a design point"));
        }
    }
    rep.add(hw);
    let mut empty = Witnesses::new("hole_empty");
    for &r in &hole.p_rows {
        for &c in &hole.q_cols {
            if let Some(b) = g.block(r, c) {
                empty.push(format!("hole cell {} holds {}", cell_name(g, r, c), fmt_block(b)));
            }
        }
    }
    rep.add(empty);
    let w = hole.w.clone();
    check_pairs(g, &mut rep, None);
    let mut wp = Witnesses::new("hole_pairs");
    for (r, c, cell) in g.occupied() {
        let k = cell.block.iter().filter(|p| w.contains(p)).count();
        if k > 1 {
            wp.push(format!("cell {} covers a pair inside the hole: {}", cell_name(g, r, c), fmt_block(&cell.block)));
        }
    }
    rep.add(wp);
    check_array(g, &mut rep, Some(hole));
    Ok(rep)
}

pub fn verify_rbibd(g: &DesignGrid) -> Result<VerifyReport> {
    if g.k_set.len() != 1 {
        return Err(Error::BadParameters("RBIBD needs a single block size".into()));
    }
    let k = g.k_set[0];
    let v = g.points.len();
    let lam = g.lambda as usize;
    if k < 2 || v % k != 0 || (lam * (v - 1)) % (k - 1) != 0 || g.nrows() != v / k || g.ncols() != lam * (v - 1) / (k - 1) {
        return Err(Error::BadParameters(format!("{} x {} array does not fit RBIBD({v},{k},{lam})", g.nrows(), g.ncols())));
    }
    let mut rep = verify_packing(g, true);
    let mut tmp = VerifyReport::new();
    check_array(g, &mut tmp, None);
    // Row equity is not part of the definition.
    tmp.conditions.retain(|c| c.id != "rows");
    tmp.pass = tmp.conditions.iter().all(|c| c.pass);
    rep.merge(tmp);
    Ok(rep)
}

/// Same-color blocks are disjoint within every row; optionally property Π.
pub fn verify_coloring(g: &DesignGrid, colors: u32, want_pi: bool) -> Result<VerifyReport> {
    if g.block_count() == 0 || g.occupied().any(|(_, _, c)| c.color.is_none()) {
        return Err(Error::MissingColoring);
    }
    let mut rep = VerifyReport::new();
    let mut range = Witnesses::new("color_range");
    for (r, c, cell) in g.occupied() {
        let col = cell.color.unwrap();
        if col >= colors {
            range.push(format!("cell {} has color {col}, only {colors} allowed", cell_name(g, r, c)));
        }
    }
    rep.add(range);
    let mut dis = Witnesses::new("color_disjoint");
    for r in 0..g.nrows() {
        let mut owner: HashMap<(u32, &PointLabel), usize> = HashMap::new();
        for c in 0..g.ncols() {
            if let Some(cell) = g.cell(r, c) {
                for p in &cell.block {
                    if let Some(c0) = owner.insert((cell.color.unwrap(), p), c) {
                        dis.push(format!(
                            "row {}: color {} blocks in columns {} and {} share point {p}",
                            g.rows[r],
                            cell.color.unwrap(),
                            g.cols[c0],
                            g.cols[c]
                        ));
                    }
                }
            }
        }
    }
    rep.add(dis);
    if want_pi {
        let found = pi_witnesses(g, colors);
        rep.add_flag("property_pi", found.is_some(), || "no row has a witness for every color".into());
    }
    Ok(rep)
}

/// First row with a witness for every color, and the least witness per color.
pub fn pi_witnesses(g: &DesignGrid, colors: u32) -> Option<(usize, Vec<PointLabel>)> {
    (0..g.nrows()).find_map(|r| {
        let mut wit = Vec::new();
        for col in 0..colors {
            let covered: BTreeSet<&PointLabel> = (0..g.ncols())
                .filter_map(|c| g.cell(r, c))
                .filter(|cell| cell.color == Some(col))
                .flat_map(|cell| cell.block.iter())
                .collect();
            wit.push(g.points.iter().find(|p| !covered.contains(p))?.clone());
        }
        Some((r, wit))
    })
}

/// GDD axioms over all blocks of the grid, with groups from metadata.
pub fn verify_gdd(g: &DesignGrid) -> Result<VerifyReport> {
    let groups = g.groups.as_ref().ok_or_else(|| Error::BadShape("design has no groups".into()))?;
    let gof = g.group_of().unwrap();
    let mut rep = VerifyReport::new();
    let mut part = Witnesses::new("groups_partition");
    let total: usize = groups.iter().map(|x| x.len()).sum();
    if total != g.points.len() || gof.len() != g.points.len() || g.points.iter().any(|p| !gof.contains_key(p)) {
        part.push("groups do not partition the point set".into());
    }
    rep.add(part);
    check_blocks(g, &mut rep);
    let mut tr = Witnesses::new("group_transversal");
    for (r, c, cell) in g.occupied() {
        let mut seen = BTreeSet::new();
        for p in &cell.block {
            if let Some(&gi) = gof.get(p) {
                if !seen.insert(gi) {
                    tr.push(format!("cell {} meets group {gi} twice", cell_name(g, r, c)));
                }
            }
        }
    }
    rep.add(tr);
    let rule = |x: &PointLabel, y: &PointLabel| u32::from(gof.get(x) != gof.get(y));
    check_pairs(g, &mut rep, Some(&rule));
    Ok(rep)
}

/// TD(k,n): GDD with k groups of size n and blocks of size k.
pub fn td_params(g: &DesignGrid) -> Result<(usize, usize)> {
    let groups = g.groups.as_ref().ok_or_else(|| Error::BadShape("design has no groups".into()))?;
    let k = groups.len();
    let n = groups.first().map_or(0, |x| x.len());
    if k < 2 || n == 0 || groups.iter().any(|x| x.len() != n) || g.k_set != vec![k] {
        return Err(Error::BadShape(format!("groups/blocks do not form a TD(k,n) (k = {k}, k_set = {:?})", g.k_set)));
    }
    Ok((k, n))
}

pub fn verify_td(g: &DesignGrid) -> Result<VerifyReport> {
    td_params(g)?;
    verify_gdd(g)
}

pub fn verify_drtd(g: &DesignGrid) -> Result<VerifyReport> {
    let (_, n) = td_params(g)?;
    if g.nrows() != n || g.ncols() != n {
        return Err(Error::BadShape(format!("DRTD array must be {n} x {n}")));
    }
    let mut rep = verify_gdd(g)?;
    let idx = g.point_index();
    let v = g.points.len();
    for (id, by_row) in [("drtd_rows", true), ("drtd_columns", false)] {
        let mut w = Witnesses::new(id);
        for a in 0..n {
            let mut cnt = vec![0u32; v];
            for b in 0..n {
                let (r, c) = if by_row { (a, b) } else { (b, a) };
                for p in g.block(r, c).into_iter().flatten() {
                    if let Some(&i) = idx.get(p) {
                        cnt[i] += 1;
                    }
                }
            }
            for i in 0..v {
                if cnt[i] != 1 {
                    let line = if by_row { &g.rows[a] } else { &g.cols[a] };
                    w.push(format!("{} {line}: point {} appears {} times", if by_row { "row" } else { "column" }, g.points[i], cnt[i]));
                }
            }
        }
        rep.add(w);
    }
    Ok(rep)
}

/// FrGBTD frame checks: GDD axioms, empty R_i x C_i cells, and per-row /
/// per-column coverage of X minus the matching group.
pub fn verify_frgbtd(g: &DesignGrid) -> Result<VerifyReport> {
    let groups = g.groups.as_ref().ok_or_else(|| Error::BadGroupSizes("design has no groups".into()))?;
    if g.k_set.len() != 1 || g.k_set[0] < 2 {
        return Err(Error::BadParameters(format!("block sizes {:?} are not a single k >= 2", g.k_set)));
    }
    let k = g.k_set[0];
    let (ri, ci) = match (&g.row_group_index, &g.col_group_index) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::BadGroupSizes("row/column group index missing".into())),
    };
    if ri.len() != groups.len() || ci.len() != groups.len() {
        return Err(Error::BadGroupSizes("group index lists do not match the groups".into()));
    }
    for (i, grp) in groups.iter().enumerate() {
        let s = grp.len();
        if s % (k * (k - 1)) != 0 || ri[i].len() != s / k || ci[i].len() != s / (k - 1) {
            return Err(Error::BadGroupSizes(format!(
                "group {i} of size {s} with {} rows and {} columns",
                ri[i].len(),
                ci[i].len()
            )));
        }
    }
    let total: usize = groups.iter().map(|x| x.len()).sum();
    if g.nrows() != total / k || g.ncols() != total / (k - 1) {
        return Err(Error::BadGroupSizes(format!("array is {} x {}, want {} x {}", g.nrows(), g.ncols(), total / k, total / (k - 1))));
    }
    let mut rep = verify_gdd(g)?;
    let mut part = Witnesses::new("frame_index");
    for (lists, len, what) in [(ri, g.nrows(), "row"), (ci, g.ncols(), "column")] {
        let mut seen = vec![0u32; len];
        for l in lists {
            for &x in l {
                seen[x] += 1;
            }
        }
        if seen.iter().any(|&s| s != 1) {
            part.push(format!("{what} index lists do not partition the {what}s"));
        }
    }
    rep.add(part);
    let gof = g.group_of().unwrap();
    let row_group: HashMap<usize, usize> = ri.iter().enumerate().flat_map(|(i, l)| l.iter().map(move |&r| (r, i))).collect();
    let col_group: HashMap<usize, usize> = ci.iter().enumerate().flat_map(|(i, l)| l.iter().map(move |&c| (c, i))).collect();
    let mut empty = Witnesses::new("frame_empty");
    for (i, rows) in ri.iter().enumerate() {
        for &r in rows {
            for &c in &ci[i] {
                if let Some(b) = g.block(r, c) {
                    empty.push(format!("cell {} in R_{i} x C_{i} holds {}", cell_name(g, r, c), fmt_block(b)));
                }
            }
        }
    }
    rep.add(empty);
    let idx = g.point_index();
    let v = g.points.len();
    let mut rows = Witnesses::new("frame_rows");
    for r in 0..g.nrows() {
        let Some(&gi) = row_group.get(&r) else { continue };
        let mut cnt = vec![0u32; v];
        for b in (0..g.ncols()).filter_map(|c| g.block(r, c)) {
            for p in b {
                if let Some(&i) = idx.get(p) {
                    cnt[i] += 1;
                }
            }
        }
        for i in 0..v {
            let own = gof.get(&g.points[i]) == Some(&gi);
            let ok = if own { cnt[i] == 0 } else { cnt[i] == 1 || cnt[i] == 2 };
            if !ok {
                rows.push(format!("row {}: point {} appears {} times", g.rows[r], g.points[i], cnt[i]));
            }
        }
    }
    rep.add(rows);
    let mut cols = Witnesses::new("frame_columns");
    for c in 0..g.ncols() {
        let Some(&gi) = col_group.get(&c) else { continue };
        let mut cnt = vec![0u32; v];
        for b in (0..g.nrows()).filter_map(|r| g.block(r, c)) {
            for p in b {
                if let Some(&i) = idx.get(p) {
                    cnt[i] += 1;
                }
            }
        }
        for i in 0..v {
            let own = gof.get(&g.points[i]) == Some(&gi);
            let want = u32::from(!own);
            if cnt[i] != want {
                cols.push(format!("column {}: point {} appears {} times, want {want}", g.cols[c], g.points[i], cnt[i]));
            }
        }
    }
    rep.add(cols);
    Ok(rep)
}

/// Dispatch on the design kind. Colorings and special cells found in the
/// file are checked too.
pub fn verify_auto(g: &DesignGrid) -> Result<VerifyReport> {
    let mut rep = match g.kind {
        DesignKind::Gbtp => {
            if g.hole.is_some() {
                verify_igbtp(g)?
            } else {
                verify_gbtp(g)
            }
        }
        DesignKind::Gbtd => verify_gbtd(g)?,
        DesignKind::Igbtp => verify_igbtp(g)?,
        DesignKind::FrGbtd => verify_frgbtd(g)?,
        DesignKind::Rbibd => verify_rbibd(g)?,
        DesignKind::Td => verify_td(g)?,
        DesignKind::Drtd => verify_drtd(g)?,
        DesignKind::Gdd => verify_gdd(g)?,
        DesignKind::Raw => verify_packing(g, false),
    };
    if g.is_colored() {
        let colors = g.colors_used().iter().max().map_or(0, |&m| m + 1);
        rep.merge(verify_coloring(g, colors, false)?);
    }
    if g.special.is_some() {
        rep.merge(verify_special(g));
    }
    Ok(rep)
}
