use std::collections::{HashMap, HashSet};

use super::eswc::{dist, equitable_words, stabilizer, Sym};
use super::Budget;

/// Point-by-point search for a packing array. Each point is the word of
/// its rows across the columns, so pairs meet at most λ times exactly when
/// words are at distance n - λ or more; column compositions must end in
/// the allowed block sizes.
pub(super) enum WordRun {
    Found(Vec<Vec<u8>>),
    Exhausted,
    Stopped,
}

#[derive(Clone, Copy)]
struct Cand {
    w: usize,
    ex: i64,
}

struct Eng<'a> {
    words: &'a [Vec<u8>],
    index: HashMap<&'a [u8], usize>,
    q: usize,
    v: usize,
    d: usize,
    kmax: usize,
    slack: i64,
    allowed: Vec<bool>,
    star: Vec<usize>,
    budget: &'a mut Budget,
    stopped: bool,
}

impl Eng<'_> {
    fn bits(&self, f: usize) -> usize {
        self.star.iter().position(|&s| s == f).map_or(0, |j| 1 << j)
    }

    /// None if column `cnt` cannot be completed with `r` more words drawn
    /// from `avail`; otherwise which symbols must still grow.
    fn column(&self, cnt: &[usize], avail: &[usize], r: usize) -> Option<Vec<bool>> {
        let q = self.q;
        let masks = 1usize << self.star.len();
        let full = masks - 1;
        let opts: Vec<Vec<(usize, usize)>> = (0..q)
            .map(|s| {
                (0..=avail[s].min(r))
                    .filter(|&e| self.allowed[cnt[s] + e])
                    .map(|e| (e, self.bits(cnt[s] + e)))
                    .collect()
            })
            .collect();
        let at = |sum: usize, mask: usize| sum * masks + mask;
        let sz = (r + 1) * masks;
        let mut fw = vec![vec![false; sz]; q + 1];
        fw[0][at(0, 0)] = true;
        for s in 0..q {
            for sum in 0..=r {
                for mask in 0..masks {
                    if !fw[s][at(sum, mask)] {
                        continue;
                    }
                    for &(e, b) in &opts[s] {
                        if sum + e <= r && mask & b == 0 {
                            fw[s + 1][at(sum + e, mask | b)] = true;
                        }
                    }
                }
            }
        }
        if !fw[q][at(r, full)] {
            return None;
        }
        let mut bw = vec![vec![false; sz]; q + 1];
        bw[q][at(0, 0)] = true;
        for s in (0..q).rev() {
            for sum in 0..=r {
                for mask in 0..masks {
                    if !bw[s + 1][at(sum, mask)] {
                        continue;
                    }
                    for &(e, b) in &opts[s] {
                        if sum + e <= r && mask & b == 0 {
                            bw[s][at(sum + e, mask | b)] = true;
                        }
                    }
                }
            }
        }
        let grow = (0..q)
            .map(|s| {
                let Some(&(_, b)) = opts[s].iter().find(|o| o.0 == 0) else {
                    return true;
                };
                for a in 0..=r {
                    for m1 in 0..masks {
                        if !fw[s][at(a, m1)] || m1 & b != 0 {
                            continue;
                        }
                        for m2 in 0..masks {
                            if m2 & (m1 | b) == 0 && m1 | m2 | b == full && bw[s + 1][at(r - a, m2)] {
                                return false;
                            }
                        }
                    }
                }
                true
            })
            .collect();
        Some(grow)
    }

    /// Candidates left after adding word `w` with `used` slack spent;
    /// each carries the slack it would cost, one unit per missed meeting.
    fn child(&self, counts: &[Vec<usize>], w: &[u8], used: i64, from: impl Iterator<Item = Cand>) -> Vec<Cand> {
        from.filter_map(|u| {
            let uw = &self.words[u.w];
            let dd = dist(w, uw);
            if dd < self.d || uw.iter().enumerate().any(|(c, &s)| counts[c][s as usize] >= self.kmax) {
                return None;
            }
            let ex = u.ex + (dd - self.d) as i64;
            (used + ex <= self.slack).then_some(Cand { w: u.w, ex })
        })
        .collect()
    }

    fn add(counts: &mut [Vec<usize>], w: &[u8], sign: bool) {
        for (c, &s) in w.iter().enumerate() {
            if sign {
                counts[c][s as usize] += 1;
            } else {
                counts[c][s as usize] -= 1;
            }
        }
    }

    fn node(&mut self, chosen: &mut Vec<usize>, counts: &mut Vec<Vec<usize>>, used: i64, cand: Vec<Cand>, group: Vec<Sym>) -> bool {
        if chosen.len() == self.v {
            return true;
        }
        let r = self.v - chosen.len();
        if cand.len() < r {
            return false;
        }
        if !self.budget.tick() {
            self.stopped = true;
            return false;
        }
        let mut slot: Option<(usize, u8, usize)> = None;
        for (c, cnt) in counts.iter().enumerate() {
            let mut avail = vec![0usize; self.q];
            for u in &cand {
                avail[self.words[u.w][c] as usize] += 1;
            }
            let Some(grow) = self.column(cnt, &avail, r) else {
                return false;
            };
            for s in (0..self.q).filter(|&s| grow[s]) {
                if slot.is_none_or(|(_, _, k)| avail[s] < k) {
                    slot = Some((c, s as u8, avail[s]));
                }
            }
        }
        if group.len() <= 1 {
            if let Some((c, s, _)) = slot {
                let branch: Vec<Cand> = cand.iter().copied().filter(|u| self.words[u.w][c] == s).collect();
                let mut gone = HashSet::new();
                for x in branch {
                    gone.insert(x.w);
                    let w = self.words[x.w].clone();
                    let used2 = used + x.ex;
                    Self::add(counts, &w, true);
                    let next = self.child(counts, &w, used2, cand.iter().copied().filter(|u| !gone.contains(&u.w)));
                    chosen.push(x.w);
                    if self.node(chosen, counts, used2, next, Vec::new()) {
                        return true;
                    }
                    chosen.pop();
                    Self::add(counts, &w, false);
                    if self.stopped {
                        return false;
                    }
                }
                return false;
            }
        }
        let pos: HashMap<usize, usize> = cand.iter().enumerate().map(|(i, u)| (u.w, i)).collect();
        let mut excluded = vec![false; cand.len()];
        for i in 0..cand.len() {
            if excluded[i] {
                continue;
            }
            if chosen.len() + (cand.len() - i) < self.v {
                break;
            }
            let x = cand[i];
            let w = self.words[x.w].clone();
            excluded[i] = true;
            let mut stab = Vec::new();
            let mut images = Vec::new();
            for g in &group {
                let j = self.index[g.apply(&w).as_slice()];
                if j == x.w {
                    stab.push(g.clone());
                } else if let Some(&k) = pos.get(&j) {
                    images.push(k);
                }
            }
            let used2 = used + x.ex;
            Self::add(counts, &w, true);
            let next = self.child(counts, &w, used2, (0..cand.len()).filter(|&k| !excluded[k]).map(|k| cand[k]));
            chosen.push(x.w);
            if self.node(chosen, counts, used2, next, stab) {
                return true;
            }
            chosen.pop();
            Self::add(counts, &w, false);
            if self.stopped {
                return false;
            }
            // later siblings skip the orbit of this word
            for k in images {
                excluded[k] = true;
            }
        }
        false
    }

    /// Fewest agreeing pairs a finished column can hold.
    fn min_column_pairs(&self) -> Option<usize> {
        let v = self.v;
        let masks = 1usize << self.star.len();
        let mut best: Vec<Option<usize>> = vec![None; (v + 1) * masks];
        best[0] = Some(0);
        for _ in 0..self.q {
            let mut next = vec![None; (v + 1) * masks];
            for sum in 0..=v {
                for mask in 0..masks {
                    let Some(p) = best[sum * masks + mask] else { continue };
                    for f in (0..=v - sum).filter(|&f| self.allowed[f]) {
                        let b = self.bits(f);
                        if mask & b != 0 {
                            continue;
                        }
                        let at = (sum + f) * masks + (mask | b);
                        let val = p + f * f.saturating_sub(1) / 2;
                        if next[at].is_none_or(|x| val < x) {
                            next[at] = Some(val);
                        }
                    }
                }
            }
            best = next;
        }
        best[v * masks + masks - 1]
    }
}

/// Words of length n over m rows for v points; returns each column as the
/// row of every point.
pub(super) fn word_search(v: usize, m: usize, n: usize, lambda: usize, k_set: &[usize], star: &[usize], budget: &mut Budget) -> WordRun {
    let words = equitable_words(n, m);
    let kmax = *k_set.iter().max().unwrap_or(&0);
    let mut allowed = vec![false; v + 1];
    allowed[0] = true;
    for &k in k_set.iter().filter(|&&k| k <= v) {
        allowed[k] = true;
    }
    let index = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut eng = Eng { words: &words, index, q: m, v, d: n - lambda, kmax, slack: 0, allowed, star: star.to_vec(), budget, stopped: false };
    // Pairs meet at most λ times in all, and the columns force at least
    // this many meetings; the difference bounds the missed ones.
    let Some(per_col) = eng.min_column_pairs() else {
        return WordRun::Exhausted;
    };
    eng.slack = (lambda * v * (v - 1) / 2) as i64 - (n * per_col) as i64;
    if eng.slack < 0 {
        return WordRun::Exhausted;
    }
    let w0 = words[0].clone();
    let mut counts = vec![vec![0usize; m]; n];
    Eng::add(&mut counts, &w0, true);
    let group = stabilizer(&w0, m, 50_000).unwrap_or_default();
    let cand = eng.child(&counts, &w0, 0, (1..words.len()).map(|w| Cand { w, ex: 0 }));
    let mut chosen = vec![0];
    if eng.node(&mut chosen, &mut counts, 0, cand, group) {
        let cols = (0..n).map(|c| chosen.iter().map(|&x| words[x][c]).collect()).collect();
        WordRun::Found(cols)
    } else if eng.stopped {
        WordRun::Stopped
    } else {
        WordRun::Exhausted
    }
}
