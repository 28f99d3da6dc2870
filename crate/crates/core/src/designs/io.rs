//! Design file format. Output is canonical: sorted keys, sorted blocks,
//! cells in row-major order.

use serde::{Deserialize, Serialize};

use super::grid::{DesignGrid, DesignKind, Hole};
use crate::algebra::{make_block, PointLabel};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct CellFile {
    r: PointLabel,
    c: PointLabel,
    block: Vec<PointLabel>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    color: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct HoleFile {
    w: Vec<PointLabel>,
    p_rows: Vec<PointLabel>,
    q_cols: Vec<PointLabel>,
}

#[derive(Serialize, Deserialize)]
struct RC {
    r: PointLabel,
    c: PointLabel,
}

#[derive(Serialize, Deserialize)]
struct DesignFile {
    kind: DesignKind,
    lambda: u32,
    k_set: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    k_star: Vec<usize>,
    points: Vec<PointLabel>,
    rows: Vec<PointLabel>,
    cols: Vec<PointLabel>,
    cells: Vec<CellFile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    hole: Option<HoleFile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    groups: Option<Vec<Vec<PointLabel>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    row_group_index: Option<Vec<Vec<PointLabel>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    col_group_index: Option<Vec<Vec<PointLabel>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    special: Option<RC>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    source: Option<String>,
}

fn positions(labels: &[PointLabel], of: &[PointLabel], what: &str) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| {
            of.iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::Format(format!("unknown {what} label {l}")))
        })
        .collect()
}

fn unique(labels: &[PointLabel], what: &str) -> Result<()> {
    let mut s = labels.to_vec();
    s.sort();
    s.dedup();
    if s.len() != labels.len() {
        return Err(Error::Format(format!("duplicate {what} labels")));
    }
    Ok(())
}

pub fn from_json(s: &str) -> Result<DesignGrid> {
    let f: DesignFile = serde_json::from_str(s)?;
    unique(&f.rows, "row")?;
    unique(&f.cols, "column")?;
    let mut g = DesignGrid::new(f.kind, f.lambda, f.k_set, f.points, f.rows, f.cols);
    g.k_star = f.k_star;
    for c in f.cells {
        let r = g.row_pos(&c.r).ok_or_else(|| Error::Format(format!("unknown row {}", c.r)))?;
        let k = g.col_pos(&c.c).ok_or_else(|| Error::Format(format!("unknown column {}", c.c)))?;
        if g.cell(r, k).is_some() {
            return Err(Error::Format(format!("cell ({}, {}) given twice", c.r, c.c)));
        }
        let n = c.block.len();
        let b = make_block(c.block);
        if b.len() != n {
            return Err(Error::Format(format!("repeated point in cell ({}, {})", c.r, c.c)));
        }
        g.set(r, k, b, c.color);
    }
    if let Some(h) = f.hole {
        g.hole = Some(Hole {
            w: make_block(h.w),
            p_rows: positions(&h.p_rows, &g.rows, "row")?,
            q_cols: positions(&h.q_cols, &g.cols, "column")?,
        });
    }
    g.groups = f.groups.map(|gs| gs.into_iter().map(make_block).collect());
    if let Some(ri) = f.row_group_index {
        g.row_group_index = Some(ri.iter().map(|v| positions(v, &g.rows, "row")).collect::<Result<_>>()?);
    }
    if let Some(ci) = f.col_group_index {
        g.col_group_index = Some(ci.iter().map(|v| positions(v, &g.cols, "column")).collect::<Result<_>>()?);
    }
    if let Some(rc) = f.special {
        let r = g.row_pos(&rc.r).ok_or_else(|| Error::Format("unknown special row".into()))?;
        let c = g.col_pos(&rc.c).ok_or_else(|| Error::Format("unknown special column".into()))?;
        g.special = Some((r, c));
    }
    g.source = f.source;
    Ok(g)
}

pub fn to_value(g: &DesignGrid) -> serde_json::Value {
    let cells = g
        .occupied()
        .map(|(r, c, cell)| CellFile {
            r: g.rows[r].clone(),
            c: g.cols[c].clone(),
            block: cell.block.clone(),
            color: cell.color,
        })
        .collect();
    let pick = |v: &[usize], of: &[PointLabel]| v.iter().map(|&i| of[i].clone()).collect::<Vec<_>>();
    let f = DesignFile {
        kind: g.kind,
        lambda: g.lambda,
        k_set: g.k_set.clone(),
        k_star: g.k_star.clone(),
        points: g.points.clone(),
        rows: g.rows.clone(),
        cols: g.cols.clone(),
        cells,
        hole: g.hole.as_ref().map(|h| HoleFile {
            w: h.w.clone(),
            p_rows: pick(&h.p_rows, &g.rows),
            q_cols: pick(&h.q_cols, &g.cols),
        }),
        groups: g.groups.clone(),
        row_group_index: g
            .row_group_index
            .as_ref()
            .map(|ri| ri.iter().map(|v| pick(v, &g.rows)).collect()),
        col_group_index: g
            .col_group_index
            .as_ref()
            .map(|ci| ci.iter().map(|v| pick(v, &g.cols)).collect()),
        special: g.special.map(|(r, c)| RC { r: g.rows[r].clone(), c: g.cols[c].clone() }),
        source: g.source.clone(),
    };
    // Round-tripping through Value sorts object keys.
    serde_json::to_value(f).expect("design serializes")
}

pub fn to_json(g: &DesignGrid) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(g)).expect("value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::fixtures;

    #[test]
    fn fixtures_are_canonical() {
        for (name, text) in fixtures::ALL {
            let g = from_json(text).unwrap();
            assert_eq!(&to_json(&g), text, "{name} is not in canonical form");
        }
    }

    #[test]
    fn rejects_duplicate_cells() {
        let s = r#"{"kind":"raw","lambda":1,"k_set":[2],"points":["1","2"],"rows":["1"],"cols":["1"],
            "cells":[{"r":"1","c":"1","block":["1","2"]},{"r":"1","c":"1","block":["1","2"]}]}"#;
        assert!(matches!(from_json(s), Err(Error::Format(_))));
    }
}
