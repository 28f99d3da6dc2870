use std::collections::HashMap;

use serde::Serialize;

use super::gbtp::{search_gbtp, GbtpParams};
use super::Budget;
use crate::codes::{gbtp_to_code, plotkin_check, Code};
use crate::error::{Error, Result};

/// Word spaces above this size skip the clique search and go straight to
/// the design-side search.
pub const CLIQUE_WORD_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct EswcResult {
    pub n: usize,
    pub d: usize,
    pub q: usize,
    pub max_m: usize,
    pub exact: bool,
    pub plotkin_cap: Option<usize>,
    pub nodes: u64,
    pub method: String,
    #[serde(skip)]
    pub witness: Code,
}

/// All equitable words of length n over q symbols, in lexicographic order.
pub fn equitable_words(n: usize, q: usize) -> Vec<Vec<u8>> {
    let (lo, hi) = (n / q, n.div_ceil(q));
    let n_hi = n - lo * q;
    let mut out = Vec::new();
    let mut w = vec![0u8; n];
    let mut cnt = vec![0usize; q];
    fn rec(i: usize, w: &mut Vec<u8>, cnt: &mut Vec<usize>, lo: usize, hi: usize, n_hi: usize, out: &mut Vec<Vec<u8>>) {
        let n = w.len();
        if i == n {
            if cnt.iter().all(|&c| c >= lo) {
                out.push(w.clone());
            }
            return;
        }
        let rest = n - i;
        let need: usize = cnt.iter().map(|&c| lo.saturating_sub(c)).sum();
        if need > rest {
            return;
        }
        for s in 0..cnt.len() {
            let lim = if hi > lo && cnt.iter().filter(|&&c| c == hi).count() >= n_hi { lo } else { hi };
            if cnt[s] < lim {
                w[i] = s as u8;
                cnt[s] += 1;
                rec(i + 1, w, cnt, lo, hi, n_hi, out);
                cnt[s] -= 1;
            }
        }
    }
    rec(0, &mut w, &mut cnt, lo, hi, n_hi, &mut out);
    out
}

pub(super) fn dist(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Largest M allowed by the generalized Plotkin bound, or None when the
/// bound never bites.
pub fn plotkin_cap(n: usize, d: usize, q: usize) -> Option<usize> {
    const FAR: usize = 100_000;
    let mut m = 1;
    while plotkin_check(n as u64, d as u64, q as u64, m as u64 + 1).holds {
        m += 1;
        if m >= FAR {
            return None;
        }
    }
    Some(m)
}

fn min_sq(counts: &[usize], total: usize) -> usize {
    let mut c = counts.to_vec();
    let used: usize = c.iter().sum();
    for _ in used..total {
        let i = (0..c.len()).min_by_key(|&i| c[i]).unwrap();
        c[i] += 1;
    }
    c.iter().map(|x| x * x).sum()
}

/// Slack bookkeeping for a target size T: the Plotkin sum leaves
/// `slack` units, consumed by pairs at distance above d and by columns
/// whose symbol counts are forced away from balance.
struct Slack {
    q: usize,
    d: usize,
    t: usize,
    slack: i64,
    base_sq: usize,
}

impl Slack {
    fn new(n: usize, d: usize, q: usize, t: usize) -> Self {
        let p = plotkin_check(n as u64, d as u64, q as u64, t as u64);
        Slack { q, d, t, slack: p.rhs as i64 - p.lhs as i64, base_sq: min_sq(&vec![0; q], t) }
    }

    fn deficit(&self, counts: &[usize]) -> i64 {
        ((min_sq(counts, self.t) - self.base_sq) / 2) as i64
    }
}

/// Coordinate and symbol permutation acting as w'[σ(i)] = π(w[i]).
#[derive(Clone)]
pub(super) struct Sym {
    sigma: Vec<usize>,
    pi: Vec<u8>,
}

impl Sym {
    pub(super) fn apply(&self, w: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; w.len()];
        for (i, &s) in w.iter().enumerate() {
            out[self.sigma[i]] = self.pi[s as usize];
        }
        out
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Stabilizer of `w` in S_n × S_q, or None when it is too large to list.
pub(super) fn stabilizer(w: &[u8], q: usize, cap: usize) -> Option<Vec<Sym>> {
    let n = w.len();
    let pos: Vec<Vec<usize>> = (0..q).map(|s| (0..n).filter(|&i| w[i] as usize == s).collect()).collect();
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for s in 0..q {
        classes.entry(pos[s].len()).or_default().push(s);
    }
    let fact = |k: usize| (1..=k).product::<usize>();
    let size: usize = classes.values().map(|c| fact(c.len())).product::<usize>()
        * pos.iter().map(|p| fact(p.len())).product::<usize>();
    if size > cap {
        return None;
    }
    let mut pis: Vec<Vec<u8>> = vec![vec![0; q]];
    let mut keys: Vec<usize> = classes.keys().copied().collect();
    keys.sort();
    for k in keys {
        let cls = &classes[&k];
        let mut next = Vec::new();
        for pi in &pis {
            for perm in permutations(cls) {
                let mut p = pi.clone();
                for (a, &b) in cls.iter().zip(&perm) {
                    p[*a] = b as u8;
                }
                next.push(p);
            }
        }
        pis = next;
    }
    let mut out = Vec::new();
    for pi in pis {
        let mut sigmas: Vec<Vec<usize>> = vec![vec![0; n]];
        for s in 0..q {
            let (from, to) = (&pos[s], &pos[pi[s] as usize]);
            let mut next = Vec::new();
            for sg in &sigmas {
                for perm in permutations(to) {
                    let mut g = sg.clone();
                    for (a, &b) in from.iter().zip(&perm) {
                        g[*a] = b;
                    }
                    next.push(g);
                }
            }
            sigmas = next;
        }
        out.extend(sigmas.into_iter().map(|sigma| Sym { sigma, pi: pi.clone() }));
    }
    Some(out)
}

enum Decide {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

struct Clique<'a> {
    words: &'a [Vec<u8>],
    index: HashMap<&'a [u8], usize>,
    sl: Slack,
    budget: &'a mut Budget,
}

#[derive(Clone)]
struct Cand {
    w: usize,
    excess: i64,
}

impl<'a> Clique<'a> {
    fn col_deltas(&self, counts: &[Vec<usize>]) -> Vec<Vec<i64>> {
        counts
            .iter()
            .map(|c| {
                let base = self.sl.deficit(c);
                (0..self.sl.q)
                    .map(|s| {
                        let mut c2 = c.clone();
                        c2[s] += 1;
                        self.sl.deficit(&c2) - base
                    })
                    .collect()
            })
            .collect()
    }

    /// With no slack left every column must end balanced; check that the
    /// candidates can still fill each column.
    fn balanced_ok(&self, have: usize, counts: &[Vec<usize>], cand: &[usize]) -> bool {
        let (t, q) = (self.sl.t, self.sl.q);
        let (lo, hi) = (t / q, t.div_ceil(q));
        let need = t - have;
        for (c, cnt) in counts.iter().enumerate() {
            let mut avail = vec![0usize; q];
            for &u in cand {
                avail[self.words[u][c] as usize] += 1;
            }
            let mut cap = 0;
            let mut floor = 0;
            for s in 0..q {
                if cnt[s] + avail[s] < lo {
                    return false;
                }
                cap += avail[s].min(hi.saturating_sub(cnt[s]));
                floor += lo.saturating_sub(cnt[s]);
            }
            if cap < need || floor > need {
                return false;
            }
        }
        true
    }

    /// Zero slack left: all remaining distances are exactly d and every
    /// column ends balanced. Branch on the (column, symbol) slot with the
    /// fewest candidates that must still be filled.
    fn tight(&mut self, chosen: &mut Vec<usize>, counts: &mut Vec<Vec<usize>>, cand: Vec<usize>) -> Decide {
        let t = self.sl.t;
        if chosen.len() == t {
            return Decide::Found(chosen.clone());
        }
        if chosen.len() + cand.len() < t {
            return Decide::Exhausted;
        }
        if !self.budget.tick() {
            return Decide::OutOfBudget;
        }
        if !self.balanced_ok(chosen.len(), counts, &cand) {
            return Decide::Exhausted;
        }
        let lo = t / self.sl.q;
        let mut branch: Option<Vec<usize>> = None;
        for (c, cnt) in counts.iter().enumerate() {
            for (s, &k) in cnt.iter().enumerate() {
                if k >= lo {
                    continue;
                }
                let l: Vec<usize> = cand.iter().copied().filter(|&u| self.words[u][c] as usize == s).collect();
                if branch.as_ref().is_none_or(|b| l.len() < b.len()) {
                    branch = Some(l);
                }
            }
        }
        let branch = branch.unwrap_or_else(|| cand.clone());
        let mut gone = std::collections::HashSet::new();
        for &v in &branch {
            gone.insert(v);
            let vw = &self.words[v];
            for (c, &s) in vw.iter().enumerate() {
                counts[c][s as usize] += 1;
            }
            let deltas = self.col_deltas(counts);
            let next: Vec<usize> = cand
                .iter()
                .copied()
                .filter(|u| !gone.contains(u))
                .filter(|&u| {
                    let uw = &self.words[u];
                    dist(vw, uw) == self.sl.d && uw.iter().enumerate().all(|(c, &s)| deltas[c][s as usize] == 0)
                })
                .collect();
            chosen.push(v);
            let r = self.tight(chosen, counts, next);
            chosen.pop();
            for (c, &s) in vw.iter().enumerate() {
                counts[c][s as usize] -= 1;
            }
            match r {
                Decide::Exhausted => {}
                other => return other,
            }
        }
        Decide::Exhausted
    }

    fn node(&mut self, chosen: &mut Vec<usize>, counts: &mut Vec<Vec<usize>>, used: i64, cand: Vec<Cand>, group: Vec<Sym>) -> Decide {
        if chosen.len() == self.sl.t {
            return Decide::Found(chosen.clone());
        }
        if chosen.len() + cand.len() < self.sl.t {
            return Decide::Exhausted;
        }
        if !self.budget.tick() {
            return Decide::OutOfBudget;
        }
        if used == self.sl.slack && group.len() <= 1 {
            let ws: Vec<usize> = cand.iter().map(|c| c.w).collect();
            return self.tight(chosen, counts, ws);
        }
        let deltas = self.col_deltas(counts);
        let mut excluded = vec![false; cand.len()];
        let pos: HashMap<usize, usize> = cand.iter().enumerate().map(|(i, c)| (c.w, i)).collect();
        for i in 0..cand.len() {
            if excluded[i] {
                continue;
            }
            if chosen.len() + (cand.len() - i) < self.sl.t {
                break;
            }
            let v = cand[i].w;
            let vw = &self.words[v];
            let mut stab = Vec::new();
            let mut images = Vec::new();
            excluded[i] = true;
            for g in &group {
                let img = g.apply(vw);
                let j = self.index[img.as_slice()];
                if j == v {
                    stab.push(g.clone());
                } else if let Some(&k) = pos.get(&j) {
                    images.push(k);
                }
            }
            let col_add: i64 = vw.iter().enumerate().map(|(c, &s)| deltas[c][s as usize]).sum();
            let used2 = used + cand[i].excess + col_add;
            if used2 > self.sl.slack {
                for k in images {
                    excluded[k] = true;
                }
                continue;
            }
            for (c, &s) in vw.iter().enumerate() {
                counts[c][s as usize] += 1;
            }
            let deltas2 = self.col_deltas(counts);
            let mut next = Vec::new();
            for (k, u) in cand.iter().enumerate() {
                if excluded[k] {
                    continue;
                }
                let uw = &self.words[u.w];
                let dd = dist(vw, uw);
                if dd < self.sl.d {
                    continue;
                }
                let ex = u.excess + (dd - self.sl.d) as i64;
                let col: i64 = uw.iter().enumerate().map(|(c, &s)| deltas2[c][s as usize]).sum();
                if used2 + ex + col <= self.sl.slack {
                    next.push(Cand { w: u.w, excess: ex });
                }
            }
            chosen.push(v);
            let r = self.node(chosen, counts, used2, next, stab);
            chosen.pop();
            for (c, &s) in vw.iter().enumerate() {
                counts[c][s as usize] -= 1;
            }
            match r {
                Decide::Exhausted => {}
                other => return other,
            }
            // later siblings skip the orbit of this word
            for k in images {
                excluded[k] = true;
            }
        }
        Decide::Exhausted
    }
}

fn decide(words: &[Vec<u8>], n: usize, d: usize, q: usize, t: usize, budget: &mut Budget) -> Decide {
    let sl = Slack::new(n, d, q, t);
    if sl.slack < 0 {
        return Decide::Exhausted;
    }
    let index: HashMap<&[u8], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let w0 = &words[0];
    let group = stabilizer(w0, q, 50_000).unwrap_or_default();
    let mut counts = vec![vec![0usize; q]; n];
    for (c, &s) in w0.iter().enumerate() {
        counts[c][s as usize] += 1;
    }
    let base = sl.deficit(&vec![0; q]) * n as i64;
    let used: i64 = counts.iter().map(|c| sl.deficit(c)).sum::<i64>() - base;
    let mut cl = Clique { words, index, sl, budget };
    let deltas = cl.col_deltas(&counts);
    let cand: Vec<Cand> = (1..words.len())
        .filter_map(|u| {
            let dd = dist(w0, &words[u]);
            if dd < d {
                return None;
            }
            let ex = (dd - d) as i64;
            let col: i64 = words[u].iter().enumerate().map(|(c, &s)| deltas[c][s as usize]).sum();
            (used + ex + col <= cl.sl.slack).then_some(Cand { w: u, excess: ex })
        })
        .collect();
    let mut chosen = vec![0];
    cl.node(&mut chosen, &mut counts, used, cand, group)
}

fn greedy(words: &[Vec<u8>], d: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if out.iter().all(|&j| dist(&words[j], w) >= d) {
            out.push(i);
        }
    }
    out
}

fn to_code(words: &[Vec<u8>], idx: &[usize], q: usize, n: usize) -> Code {
    let ws = idx.iter().map(|&i| words[i].iter().map(|&s| s as u32).collect()).collect();
    Code::new(q as u32, n, ws).expect("words are valid")
}

/// Maximum size of an equitable symbol weight code of length n, distance
/// d over q symbols. Exact when the search finishes or the witness meets
/// the Plotkin cap.
pub fn max_eswc(n: usize, d: usize, q: usize, budget: u64) -> Result<EswcResult> {
    if budget == 0 {
        return Err(Error::BudgetZero);
    }
    if n == 0 || d == 0 || q == 0 || d > n {
        return Err(Error::InconsistentParams(format!("n = {n}, d = {d}, q = {q}")));
    }
    let cap = plotkin_cap(n, d, q);
    let mut b = Budget::new(budget);
    let count = count_equitable(n, q);
    if count <= CLIQUE_WORD_LIMIT as u128 {
        let words = equitable_words(n, q);
        let mut best = greedy(&words, d);
        let top = cap.unwrap_or(words.len()).min(words.len());
        let mut exact = best.len() >= top;
        let mut t = best.len() + 1;
        while !exact && t <= top {
            match decide(&words, n, d, q, t, &mut b) {
                Decide::Found(c) => {
                    best = c;
                    exact = best.len() >= top;
                    t += 1;
                }
                Decide::Exhausted => exact = true,
                Decide::OutOfBudget => break,
            }
        }
        let witness = to_code(&words, &best, q, n);
        return Ok(EswcResult {
            n,
            d,
            q,
            max_m: best.len(),
            exact,
            plotkin_cap: cap,
            nodes: b.used(),
            method: "clique".into(),
            witness,
        });
    }
    // Large word spaces: look for the matching packing array directly,
    // from the Plotkin cap downwards. Never exhaustive.
    let lambda = n - d;
    let Some(cap) = cap else {
        return Err(Error::NotFound(format!("ESWC({n},{d})_{q}: no Plotkin cap to search down from")));
    };
    for t in (2..=cap).rev() {
        let mut k_set = vec![t / q, t.div_ceil(q)];
        k_set.retain(|&k| k > 0);
        k_set.dedup();
        let params = GbtpParams::gbtp(&k_set, &[], t, q, n, lambda as u32);
        let each = (b.left() / 2).max(1);
        let out = search_gbtp(&params, each)?;
        b.spend(out.nodes);
        if let Some(g) = out.value {
            let c = gbtp_to_code(&g)?;
            return Ok(EswcResult { n, d, q, max_m: t, exact: false, plotkin_cap: Some(cap), nodes: b.used(), method: "design".into(), witness: c });
        }
        if b.left() == 0 {
            break;
        }
    }
    Err(Error::NotFound(format!("no ESWC({n},{d})_{q} witness within budget")))
}

pub(super) fn count_equitable(n: usize, q: usize) -> u128 {
    let (lo, hi) = (n / q, n.div_ceil(q));
    let n_hi = n - lo * q;
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut c = fact(n) / (fact(lo).pow((q - n_hi) as u32) * fact(hi).pow(n_hi as u32));
    c *= fact(q) / (fact(n_hi) * fact(q - n_hi));
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        assert_eq!(equitable_words(3, 2).len(), 6);
        assert_eq!(equitable_words(4, 3).len(), 36);
        assert_eq!(equitable_words(5, 4).len(), 240);
        for (n, q) in [(3, 2), (4, 3), (5, 4), (7, 5), (2, 3)] {
            assert_eq!(equitable_words(n, q).len() as u128, count_equitable(n, q));
        }
    }

    #[test]
    fn stabilizer_fixes_word() {
        let w = [0u8, 0, 1, 1, 2, 3, 4];
        let g = stabilizer(&w, 5, 1000).unwrap();
        assert_eq!(g.len(), 48);
        assert!(g.iter().all(|s| s.apply(&w) == w));
    }

    fn brute_max(words: &[Vec<u8>], d: usize) -> usize {
        fn rec(words: &[Vec<u8>], d: usize, chosen: &mut Vec<usize>, from: usize, best: &mut usize) {
            *best = (*best).max(chosen.len());
            for i in from..words.len() {
                if chosen.len() + (words.len() - i) <= *best {
                    return;
                }
                if chosen.iter().all(|&j| dist(&words[j], &words[i]) >= d) {
                    chosen.push(i);
                    rec(words, d, chosen, i + 1, best);
                    chosen.pop();
                }
            }
        }
        let mut best = 0;
        rec(words, d, &mut Vec::new(), 0, &mut best);
        best
    }

    #[test]
    fn matches_brute_force() {
        for (n, q) in [(3, 2), (4, 2), (5, 2), (6, 2), (2, 3), (3, 3), (4, 3), (5, 3), (3, 4), (4, 4)] {
            let words = equitable_words(n, q);
            for d in (1..=n).filter(|&d| plotkin_cap(n, d, q).is_some()) {
                let r = max_eswc(n, d, q, 10_000_000).unwrap();
                assert!(r.exact, "({n},{d},{q})");
                assert_eq!(r.max_m, brute_max(&words, d), "({n},{d},{q})");
                if r.max_m > 1 {
                    assert!(crate::codes::min_distance(&r.witness).unwrap() >= d);
                }
            }
        }
    }

    #[test]
    fn small_values() {
        for (n, d, q, want) in [(3, 2, 2, 3), (5, 3, 2, 4), (3, 2, 3, 6), (4, 3, 3, 6)] {
            let r = max_eswc(n, d, q, 1_000_000).unwrap();
            assert_eq!((r.max_m, r.exact), (want, true), "({n},{d},{q})");
            assert_eq!(r.witness.size(), want);
        }
        assert_eq!(max_eswc(3, 2, 2, 0).unwrap_err(), Error::BudgetZero);
    }
}
