//! Starters: small block families whose translates, placed by a fixed
//! rule, fill a whole design array.

mod explicit;
mod frgbtd;
mod gbtd;
mod igbtp;

pub use explicit::{build_frgbtd_6_8, build_igbtp_33, frgbtd_6_8_blocks, igbtp_33_families, verify_cyclic_frame};
pub use frgbtd::{develop_frgbtd, verify_frgbtd_starter, FrGbtdStarter};
pub use gbtd::{build_fq_gbtd_starter, develop_gbtd, verify_gbtd_starter, FqStarterInfo, GbtdStarter};
pub use igbtp::{
    develop_igbtp_z2, develop_igbtp_z4, verify_igbtp_z2_starter, verify_igbtp_z4_starter, IgbtpZ2Starter,
    IgbtpZ4Starter,
};

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{AbelianGroup, Block, PointLabel};
use crate::designs::{DesignGrid, VerifyReport, Witnesses};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarterKind {
    Gbtd,
    IgbtpZ2,
    IgbtpZ4,
    FrGbtd,
}

impl StarterKind {
    pub fn name(self) -> &'static str {
        match self {
            StarterKind::Gbtd => "gbtd",
            StarterKind::IgbtpZ2 => "igbtp_z2",
            StarterKind::IgbtpZ4 => "igbtp_z4",
            StarterKind::FrGbtd => "frgbtd",
        }
    }
}

impl std::str::FromStr for StarterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gbtd" => Ok(StarterKind::Gbtd),
            "igbtp_z2" => Ok(StarterKind::IgbtpZ2),
            "igbtp_z4" => Ok(StarterKind::IgbtpZ4),
            "frgbtd" => Ok(StarterKind::FrGbtd),
            _ => Err(Error::BadKind(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Starter {
    Gbtd(GbtdStarter),
    IgbtpZ2(IgbtpZ2Starter),
    IgbtpZ4(IgbtpZ4Starter),
    FrGbtd(FrGbtdStarter),
}

impl Starter {
    pub fn kind(&self) -> StarterKind {
        match self {
            Starter::Gbtd(_) => StarterKind::Gbtd,
            Starter::IgbtpZ2(_) => StarterKind::IgbtpZ2,
            Starter::IgbtpZ4(_) => StarterKind::IgbtpZ4,
            Starter::FrGbtd(_) => StarterKind::FrGbtd,
        }
    }
}

pub fn verify_starter(s: &Starter) -> VerifyReport {
    match s {
        Starter::Gbtd(x) => verify_gbtd_starter(x),
        Starter::IgbtpZ2(x) => verify_igbtp_z2_starter(x),
        Starter::IgbtpZ4(x) => verify_igbtp_z4_starter(x),
        Starter::FrGbtd(x) => verify_frgbtd_starter(x),
    }
}

pub fn develop(s: &Starter) -> Result<DesignGrid> {
    match s {
        Starter::Gbtd(x) => develop_gbtd(x),
        Starter::IgbtpZ2(x) => develop_igbtp_z2(x),
        Starter::IgbtpZ4(x) => develop_igbtp_z4(x),
        Starter::FrGbtd(x) => develop_frgbtd(x),
    }
}

pub(crate) fn refuse_unless_valid(rep: &VerifyReport) -> Result<()> {
    if rep.pass {
        Ok(())
    } else {
        Err(Error::StarterInvalid(rep.failed().join(", ")))
    }
}

/// Every element of `want` occurs exactly once in `got`, and nothing else does.
pub(crate) fn exactly_once(got: &[Vec<u32>], want: &[Vec<u32>], w: &mut Witnesses) {
    let mut cnt: BTreeMap<&Vec<u32>, i64> = want.iter().map(|x| (x, 0)).collect();
    for g in got {
        match cnt.get_mut(g) {
            Some(c) => *c += 1,
            None => w.push(format!("difference {g:?} is not allowed")),
        }
    }
    for (x, c) in cnt {
        if c != 1 {
            w.push(format!("difference {x:?} occurs {c} times"));
        }
    }
}

/// Every point of `universe` occurs once or twice in `items`, and nothing
/// outside `universe` occurs.
pub(crate) fn once_or_twice(items: &[PointLabel], universe: &[PointLabel], w: &mut Witnesses) {
    let mut cnt: HashMap<&PointLabel, usize> = universe.iter().map(|p| (p, 0)).collect();
    for p in items {
        match cnt.get_mut(p) {
            Some(c) => *c += 1,
            None => w.push(format!("point {p} is outside the allowed set")),
        }
    }
    for p in universe {
        let c = cnt[p];
        if c != 1 && c != 2 {
            w.push(format!("point {p} occurs {c} times"));
        }
    }
}

/// The blocks partition `universe` exactly.
pub(crate) fn partitions(blocks: &[&Block], universe: &[PointLabel], w: &mut Witnesses) {
    let mut cnt: HashMap<&PointLabel, usize> = universe.iter().map(|p| (p, 0)).collect();
    for b in blocks {
        for p in b.iter() {
            match cnt.get_mut(p) {
                Some(c) => *c += 1,
                None => w.push(format!("point {p} is outside the point set")),
            }
        }
    }
    for p in universe {
        if cnt[p] != 1 {
            w.push(format!("point {p} is covered {} times", cnt[p]));
        }
    }
}

pub(crate) fn sizes(blocks: &[Block], want: impl Fn(usize) -> usize, family: &str, w: &mut Witnesses) {
    for (i, b) in blocks.iter().enumerate() {
        if b.len() != want(i) {
            w.push(format!("{family} block {i} has size {}, want {}", b.len(), want(i)));
        }
    }
}

pub(crate) fn infinite_points(w: u32) -> Vec<PointLabel> {
    (1..=w).map(PointLabel::inf).collect()
}

#[derive(Serialize, Deserialize)]
struct StarterFile {
    starter_kind: String,
    group: AbelianGroup,
    params: BTreeMap<String, u32>,
    families: BTreeMap<String, Vec<Vec<PointLabel>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    colors: Option<BTreeMap<String, Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    special: Option<bool>,
}

fn family(f: &mut BTreeMap<String, Vec<Vec<PointLabel>>>, name: &str) -> Result<Vec<Block>> {
    let v = f.remove(name).ok_or_else(|| Error::Format(format!("starter family {name} missing")))?;
    Ok(v.into_iter().map(crate::algebra::make_block).collect())
}

fn param(p: &BTreeMap<String, u32>, name: &str) -> Result<u32> {
    p.get(name).copied().ok_or_else(|| Error::Format(format!("starter parameter {name} missing")))
}

pub fn starter_from_json(s: &str) -> Result<Starter> {
    let mut f: StarterFile = serde_json::from_str(s)?;
    let kind: StarterKind = f.starter_kind.parse()?;
    Ok(match kind {
        StarterKind::Gbtd => {
            let colors = match &f.colors {
                Some(c) => Some((
                    c.get("A").cloned().ok_or_else(|| Error::Format("colors.A missing".into()))?,
                    c.get("B").cloned().ok_or_else(|| Error::Format("colors.B missing".into()))?,
                )),
                None => None,
            };
            Starter::Gbtd(GbtdStarter {
                group: f.group,
                a: family(&mut f.families, "A")?,
                b: family(&mut f.families, "B")?,
                special: f.special.unwrap_or(false),
                colors,
            })
        }
        StarterKind::IgbtpZ2 => Starter::IgbtpZ2(IgbtpZ2Starter {
            m: param(&f.params, "m")?,
            w: param(&f.params, "w")?,
            a: family(&mut f.families, "A")?,
            b: family(&mut f.families, "B")?,
            c: family(&mut f.families, "C")?,
        }),
        StarterKind::IgbtpZ4 => {
            let a = family(&mut f.families, "A")?;
            if a.len() != 1 {
                return Err(Error::Format("family A must hold one block".into()));
            }
            Starter::IgbtpZ4(IgbtpZ4Starter {
                m: param(&f.params, "m")?,
                x: param(&f.params, "x")?,
                y: param(&f.params, "y")?,
                a: a.into_iter().next().unwrap(),
                b: family(&mut f.families, "B")?,
                c: family(&mut f.families, "C")?,
                d: family(&mut f.families, "D")?,
            })
        }
        StarterKind::FrGbtd => {
            let t = param(&f.params, "t")?;
            let mut a = family(&mut f.families, "A")?;
            let n = t.saturating_sub(1) as usize;
            if a.len() != 2 * n {
                return Err(Error::Format(format!("family A must hold {} blocks", 2 * n)));
            }
            let a2 = a.split_off(n);
            Starter::FrGbtd(FrGbtdStarter { t, a1: a, a2 })
        }
    })
}

pub fn starter_to_json(s: &Starter) -> String {
    let mut params = BTreeMap::new();
    let mut families = BTreeMap::new();
    let mut colors = None;
    let mut special = None;
    let group = match s {
        Starter::Gbtd(x) => {
            params.insert("m".to_string(), x.group.order() as u32);
            families.insert("A".to_string(), x.a.clone());
            families.insert("B".to_string(), x.b.clone());
            if let Some((ca, cb)) = &x.colors {
                colors = Some(BTreeMap::from([("A".to_string(), ca.clone()), ("B".to_string(), cb.clone())]));
            }
            special = Some(x.special);
            x.group.clone()
        }
        Starter::IgbtpZ2(x) => {
            params.insert("m".to_string(), x.m);
            params.insert("w".to_string(), x.w);
            families.insert("A".to_string(), x.a.clone());
            families.insert("B".to_string(), x.b.clone());
            families.insert("C".to_string(), x.c.clone());
            AbelianGroup::new(vec![x.m, 2])
        }
        Starter::IgbtpZ4(x) => {
            params.insert("m".to_string(), x.m);
            params.insert("x".to_string(), x.x);
            params.insert("y".to_string(), x.y);
            families.insert("A".to_string(), vec![x.a.clone()]);
            families.insert("B".to_string(), x.b.clone());
            families.insert("C".to_string(), x.c.clone());
            families.insert("D".to_string(), x.d.clone());
            AbelianGroup::new(vec![x.m, 4])
        }
        Starter::FrGbtd(x) => {
            params.insert("t".to_string(), x.t);
            families.insert("A".to_string(), x.a1.iter().chain(&x.a2).cloned().collect());
            AbelianGroup::cyclic(3 * x.t)
        }
    };
    let f = StarterFile { starter_kind: s.kind().name().to_string(), group, params, families, colors, special };
    let v = serde_json::to_value(f).expect("starter serializes");
    let mut out = serde_json::to_string_pretty(&v).expect("value serializes");
    out.push('\n');
    out
}
