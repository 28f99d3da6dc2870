//! Derivation recipes: a list of construction steps over named designs.
//!
//! ```json
//! { "steps": [ { "op": "tripling", "in": ["rb", "drtd"], "params": {}, "out": "g27" } ] }
//! ```
//!
//! An input name refers to an earlier step's output, or else to a design
//! file relative to the recipe's directory. Every output is verified before
//! the next step runs.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{pl, PointLabel};
use crate::constructions::{
    build_td, demote_special, drtd_from_td, fill_hole, frame_fill, fundamental, inflate, tripling, truncate_td, FinalFill,
    IngredientRegistry,
};
use crate::designs::{from_json, promote_coloring, verify_auto, DesignGrid};
use crate::error::{Error, Result};
use crate::search::{search_gbtp, GbtpParams};
use crate::starters::{build_fq_gbtd_starter, build_frgbtd_6_8, build_igbtp_33, develop, develop_gbtd, starter_from_json};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Step {
    pub op: String,
    #[serde(default, rename = "in")]
    pub inputs: Vec<String>,
    #[serde(default)]
    pub params: Value,
    pub out: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Recipe {
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub out: String,
    pub op: String,
    pub kind: String,
    pub points: usize,
    pub rows: usize,
    pub cols: usize,
    pub pass: bool,
    pub failed: Vec<String>,
}

/// Outputs in step order, with one report per executed step. A step whose
/// output fails verification ends the run; its report is the last one.
#[derive(Debug, Clone)]
pub struct RecipeRun {
    pub outputs: Vec<(String, DesignGrid)>,
    pub reports: Vec<StepReport>,
}

impl RecipeRun {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn get(&self, name: &str) -> Option<&DesignGrid> {
        self.outputs.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }
}

pub fn recipe_from_json(s: &str) -> Result<Recipe> {
    Ok(serde_json::from_str(s)?)
}

struct Env<'a> {
    base: &'a Path,
    named: HashMap<String, DesignGrid>,
    budget: u64,
}

impl Env<'_> {
    fn file(&self, name: &str) -> PathBuf {
        self.base.join(name)
    }

    fn design(&self, name: &str) -> Result<DesignGrid> {
        if let Some(g) = self.named.get(name) {
            return Ok(g.clone());
        }
        let text = std::fs::read_to_string(self.file(name)).map_err(|e| Error::Io(format!("{name}: {e}")))?;
        from_json(&text)
    }

    fn input(&self, step: &Step, i: usize) -> Result<DesignGrid> {
        let name = step.inputs.get(i).ok_or_else(|| Error::Format(format!("step {}: input {} missing", step.out, i + 1)))?;
        self.design(name)
    }
}

fn num(p: &Value, key: &str) -> Result<u64> {
    p.get(key).and_then(Value::as_u64).ok_or_else(|| Error::Format(format!("parameter {key} missing or not a number")))
}

fn flag(p: &Value, key: &str, default: bool) -> bool {
    p.get(key).and_then(Value::as_bool).unwrap_or(default)
}

fn run_step(env: &Env, step: &Step) -> Result<DesignGrid> {
    let p = &step.params;
    let all_inputs = || step.inputs.iter().map(|n| env.design(n)).collect::<Result<Vec<_>>>();
    match step.op.as_str() {
        "load" => env.input(step, 0),
        "promote" => promote_coloring(&env.input(step, 0)?),
        "demote_special" => Ok(demote_special(&env.input(step, 0)?)?.0),
        "td" => build_td(num(p, "k")? as usize, num(p, "q")?),
        "drtd" => match step.inputs.first() {
            Some(_) => drtd_from_td(&env.input(step, 0)?),
            None => drtd_from_td(&build_td(num(p, "k")? as usize, num(p, "q")?)?),
        },
        "truncate_td" => {
            let keeps: Vec<usize> = serde_json::from_value(p.get("keeps").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Format(format!("keeps: {e}")))?;
            truncate_td(&env.input(step, 0)?, &keeps)
        }
        "tripling" => tripling(&env.input(step, 0)?, &env.input(step, 1)?, flag(p, "special", true)),
        "inflate" => inflate(&env.input(step, 0)?, &env.input(step, 1)?),
        "frame_fill" => {
            let mut ins = all_inputs()?;
            if ins.is_empty() {
                return Err(Error::Format("frame_fill needs a frame".into()));
            }
            let frame = ins.remove(0);
            let fill = match p.get("final").and_then(Value::as_str) {
                None | Some("none") => None,
                Some("block") => Some(FinalFill::Block),
                Some(name) => Some(FinalFill::Grid(env.design(name)?)),
            };
            frame_fill(&frame, &ins, fill)
        }
        "fill_hole" => {
            let map: Option<BTreeMap<PointLabel, PointLabel>> = match p.get("map") {
                Some(Value::Object(m)) => Some(
                    m.iter()
                        .map(|(k, v)| Ok((pl(k), pl(v.as_str().ok_or_else(|| Error::Format("map values are labels".into()))?))))
                        .collect::<Result<_>>()?,
                ),
                _ => None,
            };
            fill_hole(&env.input(step, 0)?, &env.input(step, 1)?, map.as_ref())
        }
        "fundamental" => {
            let mut ins = all_inputs()?;
            if ins.is_empty() {
                return Err(Error::Format("fundamental needs a master design".into()));
            }
            let master = ins.remove(0);
            let mut reg = IngredientRegistry::new();
            for g in ins {
                reg.add(g)?;
            }
            let k = num(p, "k")? as usize;
            let weights: HashMap<PointLabel, usize> = match p.get("weights") {
                Some(Value::Object(m)) => m.iter().map(|(k, v)| (pl(k), v.as_u64().unwrap_or(0) as usize)).collect(),
                _ => HashMap::new(),
            };
            let uniform = p.get("weight").and_then(Value::as_u64).unwrap_or(0) as usize;
            let w = |x: &PointLabel| weights.get(x).copied().unwrap_or(uniform);
            fundamental(&master, &w, k, &reg)
        }
        "fq_gbtd" => develop_gbtd(&build_fq_gbtd_starter(num(p, "q")?)?.0),
        "frgbtd_6_8" => Ok(build_frgbtd_6_8()),
        "igbtp_33" => Ok(build_igbtp_33()),
        "develop" => {
            let name = step.inputs.first().ok_or_else(|| Error::Format("develop needs a starter file".into()))?;
            let text = std::fs::read_to_string(env.file(name)).map_err(|e| Error::Io(format!("{name}: {e}")))?;
            develop(&starter_from_json(&text)?)
        }
        "search_gbtp" => {
            let params: GbtpParams = serde_json::from_value(p.clone()).map_err(|e| Error::Format(format!("search parameters: {e}")))?;
            let budget = p.get("budget").and_then(Value::as_u64).unwrap_or(env.budget);
            search_gbtp(&params, budget)?.into_result("search_gbtp")
        }
        other => Err(Error::BadKind(format!("recipe op {other}"))),
    }
}

/// Run `recipe`, resolving file inputs against `base`. Plumbing problems
/// (missing files, bad parameters, construction errors) are errors; a
/// failed verification is reported in the run.
pub fn run_recipe(recipe: &Recipe, base: &Path, budget: u64) -> Result<RecipeRun> {
    let mut env = Env { base, named: HashMap::new(), budget };
    let mut run = RecipeRun { outputs: Vec::new(), reports: Vec::new() };
    for step in &recipe.steps {
        let g = run_step(&env, step)?;
        let rep = verify_auto(&g)?;
        run.reports.push(StepReport {
            out: step.out.clone(),
            op: step.op.clone(),
            kind: g.kind.name().to_string(),
            points: g.points.len(),
            rows: g.nrows(),
            cols: g.ncols(),
            pass: rep.pass,
            failed: rep.failed().into_iter().map(String::from).collect(),
        });
        run.outputs.push((step.out.clone(), g.clone()));
        if !rep.pass {
            break;
        }
        env.named.insert(step.out.clone(), g);
    }
    Ok(run)
}
