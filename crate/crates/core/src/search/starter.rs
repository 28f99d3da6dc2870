use serde::{Deserialize, Serialize};

use super::{Budget, Outcome};
use crate::algebra::{make_block, AbelianGroup, Block, PointLabel};
use crate::error::{Error, Result};
use crate::starters::{verify_starter, FrGbtdStarter, GbtdStarter, IgbtpZ2Starter, IgbtpZ4Starter, Starter, StarterKind};

/// `m` is the group order (t for frgbtd); `w` is |W| for igbtp_z2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarterParams {
    pub m: u32,
    #[serde(default)]
    pub w: u32,
    #[serde(default)]
    pub special: bool,
}

struct Ctx<'a> {
    budget: &'a mut Budget,
    found: Vec<Starter>,
    limit: usize,
    halted: bool,
}

impl Ctx<'_> {
    fn tick(&mut self) -> bool {
        if self.halted {
            return false;
        }
        if !self.budget.tick() {
            self.halted = true;
            return false;
        }
        true
    }

    fn push(&mut self, s: Starter) {
        self.found.push(s);
        if self.found.len() >= self.limit {
            self.halted = true;
        }
    }
}

fn md(a: i64, m: usize) -> usize {
    a.rem_euclid(m as i64) as usize
}

// ---------------------------------------------------------------------
// (Z_m × Z_c) ∪ W starters for IGBTPs.

#[derive(Clone, Copy, PartialEq)]
enum P {
    Fin(usize),
    Inf(u32),
}

struct RSpec {
    a_off: Vec<usize>,
    c_off: Vec<usize>,
    d_off: Vec<usize>,
}

struct Holey<'c, 'b> {
    ctx: &'c mut Ctx<'b>,
    m: usize,
    c: usize,
    w: u32,
    na: usize,
    nb: usize,
    a_db: usize,
    has_d: bool,
    rs: Vec<RSpec>,
    covered: Vec<bool>,
    used: Vec<bool>,
    cfam: Vec<Option<Vec<P>>>,
    dfam: Vec<Option<Vec<P>>>,
    bfam: Vec<[usize; 2]>,
    afam: Vec<[usize; 2]>,
    inf_used: u32,
    rc: Vec<Vec<u8>>,
}

#[derive(Clone, Copy, PartialEq)]
enum Fam {
    C,
    D,
}

impl Holey<'_, '_> {
    fn diff(&self, p: usize, q: usize) -> usize {
        let (c, m) = (self.c, self.m);
        md((q / c) as i64 - (p / c) as i64, m) * c + md((q % c) as i64 - (p % c) as i64, c)
    }

    fn pair_ok(&self, p: usize, q: usize) -> bool {
        let d = self.diff(p, q);
        d / self.c != 0 && !self.used[d] && !self.used[self.diff(q, p)]
    }

    fn mark(&mut self, blk: &[P], on: bool) {
        let fin: Vec<usize> = blk.iter().filter_map(|x| if let P::Fin(p) = x { Some(*p) } else { None }).collect();
        for (i, &p) in fin.iter().enumerate() {
            self.covered[p] = on;
            for &q in &fin[i + 1..] {
                let (d, e) = (self.diff(p, q), self.diff(q, p));
                self.used[d] = on;
                self.used[e] = on;
            }
        }
    }

    /// Adds (or removes) the R contributions of a family block; false if
    /// some count would exceed 2.
    fn r_family(&mut self, fam: Fam, i: usize, blk: &[P], sign: i8) -> bool {
        let (c, m) = (self.c, self.m);
        let mut ok = true;
        for k in 0..self.rs.len() {
            let offs = if fam == Fam::C { self.rs[k].c_off.clone() } else { self.rs[k].d_off.clone() };
            for x in blk {
                let P::Fin(p) = *x else { continue };
                for &j in &offs {
                    let y = md((p / c) as i64 - i as i64, m) * c + md((p % c) as i64 - j as i64, c);
                    if sign > 0 {
                        self.rc[k][y] += 1;
                        ok &= self.rc[k][y] <= 2;
                    } else {
                        self.rc[k][y] -= 1;
                    }
                }
            }
        }
        ok
    }

    fn r_a(&mut self, a: usize, u: usize, sign: i8) -> bool {
        let c = self.c;
        let mut ok = true;
        for k in 0..self.rs.len() {
            for s in self.rs[k].a_off.clone() {
                for y in [a * c + s, u * c + (self.a_db + s) % c] {
                    if sign > 0 {
                        self.rc[k][y] += 1;
                        ok &= self.rc[k][y] <= 2;
                    } else {
                        self.rc[k][y] -= 1;
                    }
                }
            }
        }
        ok
    }

    fn try_family(&mut self, fam: Fam, i: usize, blk: Vec<P>) {
        self.mark(&blk, true);
        let infs = blk.iter().filter(|x| matches!(x, P::Inf(_))).count() as u32;
        self.inf_used += infs;
        if self.r_family(fam, i, &blk, 1) {
            let slot = if fam == Fam::C { &mut self.cfam[i] } else { &mut self.dfam[i] };
            *slot = Some(blk.clone());
            self.go();
            let slot = if fam == Fam::C { &mut self.cfam[i] } else { &mut self.dfam[i] };
            *slot = None;
        }
        self.r_family(fam, i, &blk, -1);
        self.inf_used -= infs;
        self.mark(&blk, false);
    }

    fn counts_ok(&self) -> bool {
        let u = self.covered.iter().filter(|&&x| !x).count();
        let c0 = usize::from(self.cfam[0].is_none());
        let open = self.cfam[1..].iter().filter(|x| x.is_none()).count() + self.dfam.iter().filter(|x| x.is_none()).count();
        let left_inf = (self.w - self.inf_used) as usize;
        let b_left = self.nb - self.bfam.len();
        if left_inf > open || 3 * c0 + 2 * (open + b_left) - left_inf != u {
            return false;
        }
        let a_free = (0..self.m * self.c).filter(|&d| d % self.c == self.a_db && d / self.c != 0 && !self.used[d]).count();
        a_free >= 2 * self.na
    }

    fn go(&mut self) {
        if !self.ctx.tick() || !self.counts_ok() {
            return;
        }
        let Some(p) = self.covered.iter().position(|&x| !x) else {
            self.leaf_a(0);
            return;
        };
        let n = self.m * self.c;
        if self.cfam[0].is_none() {
            for q in p + 1..n {
                if self.covered[q] || !self.pair_ok(p, q) {
                    continue;
                }
                for r in q + 1..n {
                    if self.covered[r] || !self.pair_ok(p, r) || !self.pair_ok(q, r) {
                        continue;
                    }
                    let dpq = [self.diff(p, q), self.diff(q, p)];
                    let dpr = [self.diff(p, r), self.diff(r, p)];
                    let dqr = [self.diff(q, r), self.diff(r, q)];
                    if dpq.iter().any(|d| dpr.contains(d) || dqr.contains(d)) || dpr.iter().any(|d| dqr.contains(d)) {
                        continue;
                    }
                    self.try_family(Fam::C, 0, vec![P::Fin(p), P::Fin(q), P::Fin(r)]);
                    if self.ctx.halted {
                        return;
                    }
                }
            }
        }
        let fams: Vec<Fam> = if self.has_d { vec![Fam::C, Fam::D] } else { vec![Fam::C] };
        for fam in fams {
            let start = if fam == Fam::C { 1 } else { 0 };
            for i in start..self.m {
                let open = if fam == Fam::C { self.cfam[i].is_none() } else { self.dfam[i].is_none() };
                if !open {
                    continue;
                }
                if self.inf_used < self.w {
                    self.try_family(fam, i, vec![P::Fin(p), P::Inf(self.inf_used)]);
                    if self.ctx.halted {
                        return;
                    }
                }
                for q in p + 1..n {
                    if !self.covered[q] && self.pair_ok(p, q) {
                        self.try_family(fam, i, vec![P::Fin(p), P::Fin(q)]);
                        if self.ctx.halted {
                            return;
                        }
                    }
                }
            }
        }
        if self.bfam.len() < self.nb {
            for q in p + 1..n {
                if !self.covered[q] && self.pair_ok(p, q) {
                    let blk = [P::Fin(p), P::Fin(q)];
                    self.mark(&blk, true);
                    self.bfam.push([p, q]);
                    self.go();
                    self.bfam.pop();
                    self.mark(&blk, false);
                    if self.ctx.halted {
                        return;
                    }
                }
            }
        }
    }

    fn leaf_a(&mut self, k: usize) {
        let (m, c) = (self.m, self.c);
        if k == self.na {
            self.leaf_seeds();
            return;
        }
        let Some(d) = (0..m * c).find(|&d| d % c == self.a_db && d / c != 0 && !self.used[d]) else {
            return;
        };
        if (0..m * c).any(|e| !self.used[e] && e / c != 0 && e % c != self.a_db && e % c != (c - self.a_db) % c) {
            return;
        }
        let x = d / c;
        for a in 0..m {
            for u in [(a + x) % m, (a + m - x) % m] {
                let blk = [P::Fin(a * c), P::Fin(u * c + self.a_db)];
                self.mark(&blk, true);
                if self.r_a(a, u, 1) {
                    self.afam.push([a, u]);
                    self.leaf_a(k + 1);
                    self.afam.pop();
                }
                self.r_a(a, u, -1);
                self.mark(&blk, false);
                for p in [a * c, u * c + self.a_db] {
                    self.covered[p] = true;
                }
                if self.ctx.halted {
                    return;
                }
            }
        }
    }

    fn leaf_seeds(&mut self) {
        let (m, c) = (self.m, self.c);
        let seeds: Vec<(u32, u32, Vec<Vec<usize>>)> = if c == 2 {
            vec![(0, 0, vec![vec![0, 1]])]
        } else {
            let mut v = Vec::new();
            for x in 0..m {
                for y in 0..m {
                    let r0 = vec![0, 1, x * 4, x * 4 + 2, y * 4, y * 4 + 3];
                    let r1 = vec![2, 3, x * 4 + 1, x * 4 + 3, y * 4 + 1, y * 4 + 2];
                    v.push((x as u32, y as u32, vec![r0, r1]));
                }
            }
            v
        };
        for (x, y, add) in seeds {
            let ok = (0..self.rs.len()).all(|k| {
                let mut cnt = self.rc[k].clone();
                for &p in &add[k] {
                    cnt[p] += 1;
                }
                cnt.iter().all(|&v| v == 1 || v == 2)
            });
            if ok {
                let s = self.build(x, y);
                self.ctx.push(s);
                if self.ctx.halted {
                    return;
                }
            }
        }
    }

    fn build(&self, x: u32, y: u32) -> Starter {
        let c = self.c as u32;
        let lab = |p: &P| match *p {
            P::Fin(i) => PointLabel::sub(i as u32 / c, i as u32 % c),
            P::Inf(k) => PointLabel::inf(k + 1),
        };
        let blk = |v: &[P]| -> Block { make_block(v.iter().map(lab).collect()) };
        let fam = |f: &[Option<Vec<P>>]| -> Vec<Block> { f.iter().map(|b| blk(b.as_ref().unwrap())).collect() };
        let a: Vec<Block> =
            self.afam.iter().map(|&[a, u]| blk(&[P::Fin(a * self.c), P::Fin(u * self.c + self.a_db)])).collect();
        let b: Vec<Block> = self.bfam.iter().map(|&[p, q]| blk(&[P::Fin(p), P::Fin(q)])).collect();
        if self.c == 2 {
            Starter::IgbtpZ2(IgbtpZ2Starter { m: self.m as u32, w: self.w, a, b, c: fam(&self.cfam) })
        } else {
            Starter::IgbtpZ4(IgbtpZ4Starter {
                m: self.m as u32,
                x,
                y,
                a: a[0].clone(),
                b,
                c: fam(&self.cfam),
                d: fam(&self.dfam),
            })
        }
    }
}

fn search_holey(m: u32, w: u32, z4: bool, ctx: &mut Ctx) -> Result<()> {
    if m % 2 == 0 || m < 3 {
        return Err(Error::InconsistentParams(format!("m = {m} must be odd and at least 3")));
    }
    let (c, w) = if z4 { (4usize, 9u32) } else { (2, w) };
    if !z4 && (w % 2 == 0 || w < 5 || w > m - 1) {
        return Err(Error::InconsistentParams(format!("w = {w} must be odd with 5 <= w <= m - 1")));
    }
    let m = m as usize;
    let rs = if z4 {
        vec![
            RSpec { a_off: vec![0, 2], c_off: vec![0, 2], d_off: vec![1, 3] },
            RSpec { a_off: vec![1, 3], c_off: vec![1, 3], d_off: vec![0, 2] },
        ]
    } else {
        vec![RSpec { a_off: vec![0, 1], c_off: vec![0, 1], d_off: vec![] }]
    };
    let nr = rs.len();
    let mut h = Holey {
        ctx,
        m,
        c,
        w,
        na: if z4 { 1 } else { (w as usize - 5) / 2 },
        nb: if z4 { 4 } else { (w as usize - 1) / 2 },
        a_db: c / 2,
        has_d: z4,
        rs,
        covered: vec![false; m * c],
        used: vec![false; m * c],
        cfam: vec![None; m],
        dfam: if z4 { vec![None; m] } else { vec![] },
        bfam: vec![],
        afam: vec![],
        inf_used: 0,
        rc: vec![vec![0; m * c]; nr],
    };
    h.go();
    Ok(())
}

// ---------------------------------------------------------------------
// (Z_m × [3]) starters for GBTDs.

struct Tri<'c, 'b> {
    ctx: &'c mut Ctx<'b>,
    m: usize,
    special: bool,
    covered: Vec<bool>,
    pure: [Vec<bool>; 3],
    mixed: [Vec<bool>; 3],
    mixed_n: [usize; 3],
    alpha: Vec<Option<[usize; 3]>>,
    bfam: Vec<[usize; 3]>,
    rc: Vec<u8>,
}

fn mixed_slot(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 1) => 0,
        (0, 2) => 1,
        _ => 2,
    }
}

impl Tri<'_, '_> {
    /// Difference bookkeeping for a pair; points are x*3 + copy.
    fn pair(&mut self, p: usize, q: usize, on: bool) -> bool {
        let m = self.m;
        let (x, i, y, j) = (p / 3, p % 3, q / 3, q % 3);
        if i == j {
            if x == y {
                return false;
            }
            let (d, e) = (md(y as i64 - x as i64, m), md(x as i64 - y as i64, m));
            if on && (self.pure[i][d] || self.pure[i][e]) {
                return false;
            }
            self.pure[i][d] = on;
            self.pure[i][e] = on;
        } else {
            let (lo, hi) = if i < j { (x, y) } else { (y, x) };
            let d = md(hi as i64 - lo as i64, m);
            let s = mixed_slot(i, j);
            if on && self.mixed[s][d] {
                return false;
            }
            self.mixed[s][d] = on;
            if on {
                self.mixed_n[s] += 1;
            } else {
                self.mixed_n[s] -= 1;
            }
        }
        true
    }

    fn block(&mut self, b: &[usize], on: bool) -> bool {
        let mut done = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !self.pair(b[i], b[j], on) {
                    for &(x, y) in done.iter().rev() {
                        self.pair(x, y, false);
                    }
                    return false;
                }
                done.push((b[i], b[j]));
            }
        }
        true
    }

    fn r(&mut self, b: &[usize], shift: usize, on: bool) -> bool {
        let m = self.m;
        let mut ok = true;
        for &p in b {
            let y = md((p / 3) as i64 - shift as i64, m) * 3 + p % 3;
            if on {
                self.rc[y] += 1;
                ok &= self.rc[y] <= 2;
            } else {
                self.rc[y] -= 1;
            }
        }
        ok
    }

    fn go(&mut self) {
        if !self.ctx.tick() {
            return;
        }
        let m = self.m;
        let half = m.div_ceil(2);
        if self.mixed_n.iter().any(|&k| k > half) {
            return;
        }
        let Some(p) = self.covered.iter().position(|&x| !x) else {
            if self.pure.iter().all(|v| v.iter().skip(1).all(|&u| u)) {
                self.leaf_b();
            }
            return;
        };
        let n = 3 * m;
        for q in p + 1..n {
            if self.covered[q] {
                continue;
            }
            for r in q + 1..n {
                if self.covered[r] {
                    continue;
                }
                let b = [p, q, r];
                if !self.block(&b, true) {
                    continue;
                }
                for &x in &b {
                    self.covered[x] = true;
                }
                for a in 0..m {
                    if self.alpha[a].is_some() {
                        continue;
                    }
                    if self.r(&b, a, true) {
                        self.alpha[a] = Some(b);
                        self.go();
                        self.alpha[a] = None;
                    }
                    self.r(&b, a, false);
                    if self.ctx.halted {
                        break;
                    }
                }
                for &x in &b {
                    self.covered[x] = false;
                }
                self.block(&b, false);
                if self.ctx.halted {
                    return;
                }
            }
        }
    }

    fn leaf_b(&mut self) {
        if self.ctx.halted {
            return;
        }
        let m = self.m;
        if self.bfam.len() == m / 2 {
            self.finish();
            return;
        }
        let Some(d12) = (0..m).find(|&d| !self.mixed[0][d]) else { return };
        for d13 in 0..m {
            if self.mixed[1][d13] || self.mixed[2][md(d13 as i64 - d12 as i64, m)] {
                continue;
            }
            for a in 0..m {
                let b = [a * 3, ((a + d12) % m) * 3 + 1, ((a + d13) % m) * 3 + 2];
                if !self.block(&b, true) {
                    continue;
                }
                if self.r(&b, 0, true) {
                    self.bfam.push(b);
                    self.leaf_b();
                    self.bfam.pop();
                }
                self.r(&b, 0, false);
                self.block(&b, false);
                if self.ctx.halted {
                    return;
                }
            }
        }
    }

    fn finish(&mut self) {
        if self.rc.iter().any(|&c| c == 0) {
            return;
        }
        if self.special && self.alpha[0].unwrap().iter().any(|&p| self.rc[p] != 1) {
            return;
        }
        let m = self.m;
        let lab = |p: usize| PointLabel::vec(vec![(p / 3) as u32], Some((p % 3) as u32 + 1));
        let blk = |b: &[usize; 3]| make_block(b.iter().map(|&p| lab(p)).collect());
        let s = GbtdStarter {
            group: AbelianGroup::cyclic(m as u32),
            a: self.alpha.iter().map(|b| blk(b.as_ref().unwrap())).collect(),
            b: self.bfam.iter().map(blk).collect(),
            special: self.special,
            colors: None,
        };
        self.ctx.push(Starter::Gbtd(s));
    }
}

fn search_tri(m: u32, special: bool, ctx: &mut Ctx) -> Result<()> {
    if m % 2 == 0 {
        return Err(Error::InconsistentParams(format!("group order {m} is even")));
    }
    let m = m as usize;
    let mut t = Tri {
        ctx,
        m,
        special,
        covered: vec![false; 3 * m],
        pure: [vec![false; m], vec![false; m], vec![false; m]],
        mixed: [vec![false; m], vec![false; m], vec![false; m]],
        mixed_n: [0; 3],
        alpha: vec![None; m],
        bfam: vec![],
        rc: vec![0; 3 * m],
    };
    t.go();
    Ok(())
}

// ---------------------------------------------------------------------
// Z_3t × [2] frame starters.

struct Frame<'c, 'b> {
    ctx: &'c mut Ctx<'b>,
    t: usize,
    covered: Vec<bool>,
    pure: [Vec<bool>; 2],
    mixed: Vec<bool>,
    fam: [Vec<Option<[usize; 3]>>; 2],
    rc: [Vec<u8>; 2],
}

impl Frame<'_, '_> {
    fn n(&self) -> usize {
        3 * self.t
    }

    fn pair(&mut self, p: usize, q: usize, on: bool) -> bool {
        let n = self.n();
        let (x, i, y, j) = (p / 2, p % 2, q / 2, q % 2);
        if i == j {
            let (d, e) = (md(y as i64 - x as i64, n), md(x as i64 - y as i64, n));
            if d % self.t == 0 || (on && (self.pure[i][d] || self.pure[i][e])) {
                return false;
            }
            self.pure[i][d] = on;
            self.pure[i][e] = on;
        } else {
            let (a, b) = if i == 0 { (x, y) } else { (y, x) };
            let d = md(b as i64 - a as i64, n);
            if d % self.t == 0 || (on && self.mixed[d]) {
                return false;
            }
            self.mixed[d] = on;
        }
        true
    }

    fn block(&mut self, b: &[usize; 3], on: bool) -> bool {
        let prs = [(b[0], b[1]), (b[0], b[2]), (b[1], b[2])];
        for k in 0..3 {
            if !self.pair(prs[k].0, prs[k].1, on) {
                for &(x, y) in prs[..k].iter().rev() {
                    self.pair(x, y, false);
                }
                return false;
            }
        }
        true
    }

    fn r(&mut self, j: usize, b: &[usize; 3], i: usize, on: bool) -> bool {
        let t = self.t;
        let mut ok = true;
        for &p in b {
            let y = md((p / 2) as i64 - i as i64, t);
            if y == 0 {
                ok = false;
                continue;
            }
            let k = y * 2 + p % 2;
            if on {
                self.rc[j][k] += 1;
                ok &= self.rc[j][k] <= 2;
            } else {
                self.rc[j][k] -= 1;
            }
        }
        ok
    }

    fn go(&mut self) {
        if !self.ctx.tick() {
            return;
        }
        let Some(p) = self.covered.iter().position(|&x| !x) else {
            self.finish();
            return;
        };
        let len = self.covered.len();
        let first = self.fam.iter().all(|f| f.iter().all(|x| x.is_none()));
        for q in p + 1..len {
            if self.covered[q] {
                continue;
            }
            for r in q + 1..len {
                if self.covered[r] {
                    continue;
                }
                let b = [p, q, r];
                if !self.block(&b, true) {
                    continue;
                }
                for &x in &b {
                    self.covered[x] = true;
                }
                for j in 0..if first { 1 } else { 2 } {
                    for i in 1..self.t {
                        if self.fam[j][i - 1].is_some() {
                            continue;
                        }
                        if self.r(j, &b, i, true) {
                            self.fam[j][i - 1] = Some(b);
                            self.go();
                            self.fam[j][i - 1] = None;
                        }
                        self.r(j, &b, i, false);
                        if self.ctx.halted {
                            break;
                        }
                    }
                }
                for &x in &b {
                    self.covered[x] = false;
                }
                self.block(&b, false);
                if self.ctx.halted {
                    return;
                }
            }
        }
    }

    fn finish(&mut self) {
        let t = self.t;
        if self.rc.iter().any(|r| (2..2 * t).any(|k| r[k] == 0)) {
            return;
        }
        let lab = |p: usize| PointLabel::sub((p / 2) as u32, (p % 2) as u32 + 1);
        let fam = |f: &[Option<[usize; 3]>]| -> Vec<Block> {
            f.iter().map(|b| make_block(b.unwrap().iter().map(|&p| lab(p)).collect())).collect()
        };
        let s = FrGbtdStarter { t: t as u32, a1: fam(&self.fam[0]), a2: fam(&self.fam[1]) };
        self.ctx.push(Starter::FrGbtd(s));
    }
}

fn search_frame(t: u32, ctx: &mut Ctx) -> Result<()> {
    if t < 2 {
        return Err(Error::InconsistentParams(format!("t = {t} is below 2")));
    }
    let t = t as usize;
    let n = 3 * t;
    let covered: Vec<bool> = (0..2 * n).map(|p| (p / 2) % t == 0).collect();
    let mut f = Frame {
        ctx,
        t,
        covered,
        pure: [vec![false; n], vec![false; n]],
        mixed: vec![false; n],
        fam: [vec![None; t - 1], vec![None; t - 1]],
        rc: [vec![0; 2 * t], vec![0; 2 * t]],
    };
    f.go();
    Ok(())
}

// ---------------------------------------------------------------------

/// Up to `limit` starters of the given kind, in search order. `exhausted`
/// is set when the whole space was covered.
pub fn search_starters(kind: &str, params: &StarterParams, budget: u64, limit: usize) -> Result<Outcome<Vec<Starter>>> {
    let kind: StarterKind = kind.parse()?;
    if budget == 0 {
        return Err(Error::BudgetZero);
    }
    let mut b = Budget::new(budget);
    let mut ctx = Ctx { budget: &mut b, found: Vec::new(), limit: limit.max(1), halted: false };
    match kind {
        StarterKind::Gbtd => search_tri(params.m, params.special, &mut ctx)?,
        StarterKind::IgbtpZ2 => search_holey(params.m, params.w, false, &mut ctx)?,
        StarterKind::IgbtpZ4 => search_holey(params.m, 9, true, &mut ctx)?,
        StarterKind::FrGbtd => search_frame(params.m, &mut ctx)?,
    }
    let found = std::mem::take(&mut ctx.found);
    let full = !ctx.halted;
    for s in &found {
        let rep = verify_starter(s);
        if !rep.pass {
            return Err(Error::NotVerified(format!("searched {} starter: {}", kind.name(), rep.failed().join(", "))));
        }
    }
    let nodes = b.used();
    let exhausted = full;
    Ok(Outcome { value: if found.is_empty() { None } else { Some(found) }, exhausted, nodes })
}

/// First starter in search order.
pub fn search_starter(kind: &str, params: &StarterParams, budget: u64) -> Result<Outcome<Starter>> {
    let o = search_starters(kind, params, budget, 1)?;
    Ok(Outcome { value: o.value.and_then(|mut v| v.pop()), exhausted: o.exhausted, nodes: o.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starters::develop;

    fn p(m: u32, w: u32) -> StarterParams {
        StarterParams { m, w, special: false }
    }

    #[test]
    fn frame_starters() {
        let s = search_starter("frgbtd", &p(5, 0), 10_000_000).unwrap().value.unwrap();
        assert!(crate::designs::verify_frgbtd(&develop(&s).unwrap()).unwrap().pass);
        let o = search_starter("frgbtd", &p(2, 0), 1_000_000).unwrap();
        assert!(o.value.is_none() && o.exhausted);
    }

    #[test]
    fn gbtd_starters() {
        let s = search_starter("gbtd", &p(7, 0), 10_000_000).unwrap().value.unwrap();
        assert!(crate::designs::verify_gbtd(&develop(&s).unwrap()).unwrap().pass);
        let o = search_starter("gbtd", &p(5, 0), 50_000_000).unwrap();
        assert!(o.value.is_none() && o.exhausted);
    }

    #[test]
    fn z4_starter() {
        let s = search_starter("igbtp_z4", &p(5, 9), 20_000_000).unwrap().value.unwrap();
        let g = develop(&s).unwrap();
        assert_eq!((g.points.len(), g.nrows(), g.ncols()), (29, 14, 25));
    }

    #[test]
    fn bad_kind() {
        assert_eq!(search_starter("btd", &p(5, 0), 10).unwrap_err(), Error::BadKind("btd".into()));
    }
}
