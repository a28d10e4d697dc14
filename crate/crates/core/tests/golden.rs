//! Self-regression of the exceptional lists against checked-in files.
//! Set `QUIVERCONF_BLESS=1` to rewrite them.

use std::fs;
use std::path::PathBuf;

use quiverconf::config::SearchOptions;
use quiverconf::exceptional::{run_exceptional, EXCEPTIONAL_KINDS};
use serde_json::json;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

#[test]
fn exceptional_lists_match_golden_files() {
    let bless = std::env::var_os("QUIVERCONF_BLESS").is_some();
    for kind in EXCEPTIONAL_KINDS {
        let r = run_exceptional(kind, SearchOptions::default()).unwrap();
        let doc = json!({
            "kind": kind,
            "total": r.total,
            "mod_tau": r.mod_tau,
            "configurations": r.configurations.iter().map(|c| &c.members).collect::<Vec<_>>(),
        });
        let text = serde_json::to_string(&doc).unwrap() + "\n";
        let path = golden_path(&kind.to_string());
        if bless {
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, &text).unwrap();
        }
        let stored = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(stored, text, "{kind} differs from its golden file");
    }
}
