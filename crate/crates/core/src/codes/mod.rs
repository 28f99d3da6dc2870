//! q-ary codes: symbol weights, distance, narrowband capability, the
//! generalized Plotkin bound, and the correspondence with GBTPs.

mod plotkin;

pub use plotkin::{optimality_cert_2q3, plotkin_check, Plotkin, PlotkinCert};

use serde::{Deserialize, Serialize};

use crate::algebra::PointLabel;
use crate::designs::{self, int_labels, DesignGrid, DesignKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    pub q: u32,
    pub n: usize,
    pub words: Vec<Vec<u32>>,
    /// Display label of each symbol.
    pub labels: Option<Vec<String>>,
    /// Design point each word came from, aligned with `words`.
    pub points: Option<Vec<PointLabel>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeStats {
    pub n: usize,
    pub q: u32,
    pub m: usize,
    pub d: usize,
    pub equitable: bool,
    pub ec_table: Vec<usize>,
    pub capability: usize,
    pub plotkin: Plotkin,
}

impl Code {
    pub fn new(q: u32, n: usize, words: Vec<Vec<u32>>) -> Result<Code> {
        for w in &words {
            if w.len() != n {
                return Err(Error::Format(format!("word of length {} in a length-{n} code", w.len())));
            }
            if let Some(&s) = w.iter().find(|&&s| s >= q) {
                return Err(Error::SymbolOutOfRange(s, q));
            }
        }
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != words.len() {
            return Err(Error::Format("repeated codeword".into()));
        }
        Ok(Code { q, n, words, labels: None, points: None })
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// Word rendered with symbol labels when present.
    pub fn show_word(&self, i: usize) -> Vec<String> {
        self.words[i]
            .iter()
            .map(|&s| match &self.labels {
                Some(l) => l[s as usize].clone(),
                None => s.to_string(),
            })
            .collect()
    }
}

pub fn symbol_weights(u: &[u32], q: u32) -> Result<Vec<usize>> {
    let mut w = vec![0usize; q as usize];
    for &s in u {
        if s >= q {
            return Err(Error::SymbolOutOfRange(s, q));
        }
        w[s as usize] += 1;
    }
    Ok(w)
}

pub fn is_equitable_word(u: &[u32], q: u32) -> bool {
    let n = u.len();
    let (lo, hi) = (n / q as usize, n.div_ceil(q as usize));
    symbol_weights(u, q).is_ok_and(|w| w.iter().all(|&x| x == lo || x == hi))
}

pub fn is_equitable(c: &Code) -> bool {
    c.words.iter().all(|u| is_equitable_word(u, c.q))
}

pub fn hamming(u: &[u32], v: &[u32]) -> usize {
    u.iter().zip(v).filter(|(a, b)| a != b).count()
}

pub fn min_distance(c: &Code) -> Result<usize> {
    if c.size() < 2 {
        return Err(Error::TooFewWords);
    }
    let mut d = usize::MAX;
    for (i, u) in c.words.iter().enumerate() {
        for v in &c.words[i + 1..] {
            d = d.min(hamming(u, v));
        }
    }
    Ok(d)
}

/// E_C(e) for e = 1..q: the largest number of coordinates of one codeword
/// covered by e symbols, i.e. the sum of its e largest symbol weights.
pub fn ec_table(c: &Code) -> Vec<usize> {
    let q = c.q as usize;
    let mut best = vec![0usize; q];
    for u in &c.words {
        let mut w = symbol_weights(u, c.q).expect("code symbols are in range");
        w.sort_unstable_by(|a, b| b.cmp(a));
        let mut acc = 0;
        for e in 0..q {
            acc += w[e];
            best[e] = best[e].max(acc);
        }
    }
    best
}

/// E_C by enumerating every symbol subset of each size. Exponential in q.
pub fn ec_table_exhaustive(c: &Code) -> Vec<usize> {
    let q = c.q as usize;
    let mut best = vec![0usize; q];
    for mask in 1u32..(1 << q) {
        let e = mask.count_ones() as usize;
        for u in &c.words {
            let hit = u.iter().filter(|&&s| mask >> s & 1 == 1).count();
            best[e - 1] = best[e - 1].max(hit);
        }
    }
    best
}

/// Returns the E_C table and c(C) = min{e : E_C(e) >= d}.
pub fn capability(c: &Code, d: usize) -> (Vec<usize>, usize) {
    let t = ec_table(c);
    let cap = t.iter().position(|&x| x >= d).map_or(c.q as usize, |i| i + 1);
    (t, cap)
}

pub fn stats(c: &Code) -> Result<CodeStats> {
    let d = min_distance(c)?;
    let (ec, cap) = capability(c, d);
    Ok(CodeStats {
        n: c.n,
        q: c.q,
        m: c.size(),
        d,
        equitable: is_equitable(c),
        ec_table: ec,
        capability: cap,
        plotkin: plotkin_check(c.n as u64, d as u64, c.q as u64, c.size() as u64),
    })
}

/// One word per design point: coordinate i is the row of the cell in
/// column i that holds the point.
pub fn gbtp_to_code(g: &DesignGrid) -> Result<Code> {
    if g.hole.is_some() {
        return Err(Error::NotVerified("design has a hole".into()));
    }
    let rep = designs::verify_gbtp(g);
    if !rep.pass {
        return Err(Error::NotVerified(rep.failed().join(", ")));
    }
    let idx = g.point_index();
    let mut words = vec![vec![0u32; g.ncols()]; g.points.len()];
    for (r, c, cell) in g.occupied() {
        for p in &cell.block {
            words[idx[p]][c] = r as u32;
        }
    }
    let mut code = Code::new(g.nrows() as u32, g.ncols(), words)?;
    code.labels = Some(g.rows.iter().map(|r| r.to_string()).collect());
    code.points = Some(g.points.clone());
    Ok(code)
}

/// Inverse of `gbtp_to_code`: cell (r, i) holds the points whose word has
/// symbol r at coordinate i.
pub fn code_to_gbtp(c: &Code, k_set: &[usize], lambda: u32) -> Result<DesignGrid> {
    if !is_equitable(c) {
        return Err(Error::NotEquitable);
    }
    let d = min_distance(c)?;
    let need = c.n.saturating_sub(lambda as usize);
    if d < need {
        return Err(Error::DistanceTooSmall(d, need));
    }
    let points = match &c.points {
        Some(p) => p.clone(),
        None => int_labels(c.size(), 1),
    };
    let rows: Vec<PointLabel> = match &c.labels {
        Some(l) => l.iter().map(|s| s.parse()).collect::<Result<_>>()?,
        None => int_labels(c.q as usize, 1),
    };
    let mut g = DesignGrid::new(DesignKind::Gbtp, lambda, k_set.to_vec(), points.clone(), rows, int_labels(c.n, 1));
    for col in 0..c.n {
        for r in 0..c.q {
            let b: Vec<PointLabel> = (0..c.size()).filter(|&x| c.words[x][col] == r).map(|x| points[x].clone()).collect();
            if !b.is_empty() {
                g.set(r as usize, col, b, None);
            }
        }
    }
    Ok(g)
}

#[derive(Serialize, Deserialize)]
struct CodeFile {
    q: u32,
    n: usize,
    words: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    points: Option<Vec<PointLabel>>,
}

pub fn code_from_json(s: &str) -> Result<Code> {
    let f: CodeFile = serde_json::from_str(s)?;
    let mut c = Code::new(f.q, f.n, f.words)?;
    if let Some(l) = &f.labels {
        if l.len() != f.q as usize {
            return Err(Error::Format("label count differs from q".into()));
        }
    }
    if let Some(p) = &f.points {
        if p.len() != c.size() {
            return Err(Error::Format("point count differs from word count".into()));
        }
    }
    c.labels = f.labels;
    c.points = f.points;
    Ok(c)
}

/// Canonical output: words sorted lexicographically, points kept aligned.
pub fn code_to_json(c: &Code) -> String {
    let mut order: Vec<usize> = (0..c.size()).collect();
    order.sort_by(|&a, &b| c.words[a].cmp(&c.words[b]));
    let f = CodeFile {
        q: c.q,
        n: c.n,
        words: order.iter().map(|&i| c.words[i].clone()).collect(),
        labels: c.labels.clone(),
        points: c.points.as_ref().map(|p| order.iter().map(|&i| p[i].clone()).collect()),
    };
    let v = serde_json::to_value(f).expect("code serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex31() -> Code {
        // Example code of length 4 over {1,2,3}, shifted to 0-based symbols.
        let w = [[2, 1, 3, 2], [2, 2, 1, 3], [2, 3, 2, 1], [3, 1, 2, 3], [3, 2, 3, 1], [3, 3, 1, 2]];
        Code::new(3, 4, w.iter().map(|x| x.iter().map(|s| s - 1).collect()).collect()).unwrap()
    }

    #[test]
    fn weights_and_equity() {
        assert_eq!(symbol_weights(&[1, 0, 2, 1], 3).unwrap(), vec![1, 2, 1]);
        assert_eq!(symbol_weights(&[0; 5], 2).unwrap(), vec![5, 0]);
        assert_eq!(symbol_weights(&[0, 1, 2, 3, 4], 5).unwrap(), vec![1; 5]);
        assert_eq!(symbol_weights(&[3], 3), Err(Error::SymbolOutOfRange(3, 3)));
        assert!(!is_equitable_word(&[0, 0, 0, 1], 3));
        assert!(is_equitable(&ex31()));
    }

    #[test]
    fn example_code_stats() {
        let c = ex31();
        let s = stats(&c).unwrap();
        assert_eq!(s.d, 3);
        assert_eq!(s.ec_table, vec![2, 3, 4]);
        assert_eq!(s.capability, 2);
        assert_eq!(ec_table_exhaustive(&c), s.ec_table);
    }

    #[test]
    fn repeated_symbol_code() {
        let c = Code::new(2, 4, vec![vec![0; 4], vec![1; 4]]).unwrap();
        let d = min_distance(&c).unwrap();
        assert_eq!(d, 4);
        assert_eq!(capability(&c, d), (vec![4, 4], 1));
    }

    #[test]
    fn too_few_words() {
        let c = Code::new(2, 3, vec![vec![0, 1, 0]]).unwrap();
        assert_eq!(min_distance(&c), Err(Error::TooFewWords));
    }

    #[test]
    fn json_round_trip() {
        let mut c = ex31();
        c.labels = Some(vec!["1".into(), "2".into(), "3".into()]);
        let s = code_to_json(&c);
        let back = code_from_json(&s).unwrap();
        assert_eq!(code_to_json(&back), s);
        assert_eq!(back.size(), 6);
    }
}
