use std::path::{Path, PathBuf};

use tforge::codes::{gbtp_to_code, stats};
use tforge::recipe::{recipe_from_json, run_recipe};
use tforge::search::DEFAULT_BUDGET;
use tforge::Error;

fn recipes() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../recipes")
}

fn run(name: &str) -> tforge::recipe::RecipeRun {
    let text = std::fs::read_to_string(recipes().join(name)).unwrap();
    run_recipe(&recipe_from_json(&text).unwrap(), &recipes(), DEFAULT_BUDGET).unwrap()
}

#[test]
fn shipped_recipes_reach_their_codes() {
    for (name, last, want) in [
        ("gbtd_3_27.json", "gbtd_3_27", (40, 39, 27, 81)),
        ("gbtd_3_49.json", "gbtd_3_49", (73, 72, 49, 147)),
        ("gbtp_33.json", "gbtp_33", (29, 28, 16, 33)),
    ] {
        let r = run(name);
        assert!(r.pass(), "{name}: {:?}", r.reports.last());
        let s = stats(&gbtp_to_code(r.get(last).unwrap()).unwrap()).unwrap();
        assert_eq!((s.n, s.d, s.q, s.m), want, "{name}");
    }
}

#[test]
fn run_stops_at_first_failure() {
    let text = r#"{"steps":[
        {"op":"load","in":["../fixtures/fig3_mutated.json"],"out":"bad"},
        {"op":"promote","in":["bad"],"out":"never"}]}"#;
    let r = run_recipe(&recipe_from_json(text).unwrap(), &recipes(), 1000).unwrap();
    assert!(!r.pass());
    assert_eq!(r.reports.len(), 1);
    assert!(r.get("never").is_none());
}

#[test]
fn plumbing_errors() {
    let bad_op = recipe_from_json(r#"{"steps":[{"op":"melt","out":"x"}]}"#).unwrap();
    assert!(matches!(run_recipe(&bad_op, &recipes(), 1000), Err(Error::BadKind(_))));
    let missing = recipe_from_json(r#"{"steps":[{"op":"td","params":{"k":5},"out":"x"}]}"#).unwrap();
    assert!(matches!(run_recipe(&missing, &recipes(), 1000), Err(Error::Format(_))));
    assert!(recipe_from_json("{").is_err());
}
