use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{make_block, Block, PointLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DesignKind {
    #[serde(rename = "GBTP")]
    Gbtp,
    #[serde(rename = "GBTD")]
    Gbtd,
    #[serde(rename = "IGBTP")]
    Igbtp,
    #[serde(rename = "FrGBTD")]
    FrGbtd,
    #[serde(rename = "RBIBD")]
    Rbibd,
    #[serde(rename = "TD")]
    Td,
    #[serde(rename = "DRTD")]
    Drtd,
    #[serde(rename = "GDD")]
    Gdd,
    #[serde(rename = "raw")]
    Raw,
}

impl DesignKind {
    pub fn name(self) -> &'static str {
        match self {
            DesignKind::Gbtp => "GBTP",
            DesignKind::Gbtd => "GBTD",
            DesignKind::Igbtp => "IGBTP",
            DesignKind::FrGbtd => "FrGBTD",
            DesignKind::Rbibd => "RBIBD",
            DesignKind::Td => "TD",
            DesignKind::Drtd => "DRTD",
            DesignKind::Gdd => "GDD",
            DesignKind::Raw => "raw",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub block: Block,
    pub color: Option<u32>,
}

/// Hole rows and columns are stored as positions into `rows` / `cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hole {
    pub w: Vec<PointLabel>,
    pub p_rows: Vec<usize>,
    pub q_cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignGrid {
    pub kind: DesignKind,
    pub lambda: u32,
    pub k_set: Vec<usize>,
    /// Block sizes that must occur exactly once in every full column.
    pub k_star: Vec<usize>,
    pub points: Vec<PointLabel>,
    pub rows: Vec<PointLabel>,
    pub cols: Vec<PointLabel>,
    cells: Vec<Option<Cell>>,
    pub hole: Option<Hole>,
    pub groups: Option<Vec<Vec<PointLabel>>>,
    pub row_group_index: Option<Vec<Vec<usize>>>,
    pub col_group_index: Option<Vec<Vec<usize>>>,
    pub special: Option<(usize, usize)>,
    pub source: Option<String>,
}

pub fn int_labels(n: usize, base: u32) -> Vec<PointLabel> {
    (0..n as u32).map(|i| PointLabel::int(i + base)).collect()
}

impl DesignGrid {
    pub fn new(
        kind: DesignKind,
        lambda: u32,
        k_set: Vec<usize>,
        points: Vec<PointLabel>,
        rows: Vec<PointLabel>,
        cols: Vec<PointLabel>,
    ) -> Self {
        let mut points = points;
        points.sort();
        points.dedup();
        let n = rows.len() * cols.len();
        DesignGrid {
            kind,
            lambda,
            k_set,
            k_star: Vec::new(),
            points,
            rows,
            cols,
            cells: vec![None; n],
            hole: None,
            groups: None,
            row_group_index: None,
            col_group_index: None,
            special: None,
            source: None,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn cell(&self, r: usize, c: usize) -> Option<&Cell> {
        self.cells[r * self.cols.len() + c].as_ref()
    }

    pub fn cell_mut(&mut self, r: usize, c: usize) -> Option<&mut Cell> {
        let n = self.cols.len();
        self.cells[r * n + c].as_mut()
    }

    pub fn block(&self, r: usize, c: usize) -> Option<&Block> {
        self.cell(r, c).map(|x| &x.block)
    }

    pub fn set(&mut self, r: usize, c: usize, block: Vec<PointLabel>, color: Option<u32>) {
        let n = self.cols.len();
        self.cells[r * n + c] = Some(Cell { block: make_block(block), color });
    }

    pub fn clear(&mut self, r: usize, c: usize) -> Option<Cell> {
        let n = self.cols.len();
        self.cells[r * n + c].take()
    }

    /// Occupied cells in row-major order.
    pub fn occupied(&self) -> impl Iterator<Item = (usize, usize, &Cell)> {
        let n = self.cols.len();
        self.cells
            .iter()
            .enumerate()
            .filter_map(move |(i, c)| c.as_ref().map(|c| (i / n, i % n, c)))
    }

    pub fn blocks(&self) -> Vec<Block> {
        self.occupied().map(|(_, _, c)| c.block.clone()).collect()
    }

    pub fn block_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn row_pos(&self, l: &PointLabel) -> Option<usize> {
        self.rows.iter().position(|x| x == l)
    }

    pub fn col_pos(&self, l: &PointLabel) -> Option<usize> {
        self.cols.iter().position(|x| x == l)
    }

    pub fn point_index(&self) -> HashMap<PointLabel, usize> {
        self.points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
    }

    pub fn colors_used(&self) -> BTreeSet<u32> {
        self.occupied().filter_map(|(_, _, c)| c.color).collect()
    }

    pub fn is_colored(&self) -> bool {
        self.block_count() > 0 && self.occupied().all(|(_, _, c)| c.color.is_some())
    }

    pub fn strip_colors(&mut self) {
        for c in self.cells.iter_mut().flatten() {
            c.color = None;
        }
    }

    /// Group index of every point, when groups are present.
    pub fn group_of(&self) -> Option<HashMap<PointLabel, usize>> {
        self.groups.as_ref().map(|gs| {
            gs.iter()
                .enumerate()
                .flat_map(|(i, g)| g.iter().map(move |p| (p.clone(), i)))
                .collect()
        })
    }

    /// Apply a point relabeling to every field that names points.
    pub fn relabel(&self, f: &dyn Fn(&PointLabel) -> PointLabel) -> DesignGrid {
        let mut g = self.clone();
        g.points = make_block(self.points.iter().map(f).collect());
        for c in g.cells.iter_mut().flatten() {
            c.block = make_block(c.block.iter().map(f).collect());
        }
        if let Some(h) = g.hole.as_mut() {
            h.w = make_block(h.w.iter().map(f).collect());
        }
        if let Some(gs) = g.groups.as_mut() {
            for grp in gs.iter_mut() {
                *grp = make_block(grp.iter().map(f).collect());
            }
        }
        g
    }

    /// Number of blocks of each size.
    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for (_, _, c) in self.occupied() {
            *h.entry(c.block.len()).or_insert(0) += 1;
        }
        h
    }
}
