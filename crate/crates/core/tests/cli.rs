//! The binary reports exactly what the library computes.

mod common;

use std::process::{Command, Output};

use serde_json::Value;

use common::*;
use matchbound::bounds::{
    coloring_bound_ln, finite_matching_bound, reference_envelope_ln, transversal_bound_ln,
    BoundParameters, ColoringMode, DEFAULT_TOL,
};
use matchbound::cli::report::num;
use matchbound::constructions::{cayley_cyclic, incidence_hypergraph, kdd_union, ls_to_hypergraph, CellSet};
use matchbound::enumeration::{
    count_a_perfect_matchings, count_proper_colorings, count_transversals, per_entry_transversal_counts,
    CountOptions,
};
use matchbound::hypercore::degree_stats;
use matchbound::verify::{verify_bound_dominance, verify_lemma31, verify_lemma33, VerifyOptions};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchbound"))
        .args(args)
        .current_dir(fixtures_dir().join(".."))
        .env_remove("MATCHBOUND_THREADS")
        .output()
        .unwrap()
}

fn results(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["results"].clone()
}

#[test]
fn counts_match_library() {
    let opts = CountOptions::default();
    for n in [1, 3, 5, 7] {
        let r = results(&["count", "transversals", "--cayley", &n.to_string()]);
        let lib = count_transversals(&cayley_cyclic(n).unwrap(), &opts).unwrap();
        assert_eq!(r["transversals"]["count"], lib.count.to_string());
        assert_eq!(r["transversals"]["ln_count"], num(lib.ln_count));
    }
    for name in ["h1.hg", "hs.hg", "ht.hg", "h3x2.hg"] {
        let r = results(&["count", "matchings", "--hypergraph", &format!("fixtures/{name}")]);
        let lib = count_a_perfect_matchings(&hypergraph_fixture(name), &opts).unwrap();
        assert_eq!(r["matchings"]["count"], lib.count.to_string(), "{name}");
    }
    let r = results(&["count", "colorings", "--kdd", "4", "--q", "4"]);
    let lib = count_proper_colorings(&kdd_union(4, 1).unwrap(), 4, &opts).unwrap();
    assert_eq!(r["colorings"]["count"], lib.count.to_string());
    let r = results(&["count", "per-entry", "--square", "fixtures/klein4.ls"]);
    let lib = per_entry_transversal_counts(&square_fixture("klein4.ls"), &opts).unwrap();
    assert_eq!(r["per_entry"][2][3], lib[2][3].to_string());
}

#[test]
fn bounds_match_library() {
    let h = hypergraph_fixture("hs.hg");
    let p = BoundParameters::from_stats(&h, &degree_stats(&h));
    let lib = finite_matching_bound(&p, DEFAULT_TOL).unwrap();
    let r = results(&["bound", "finite", "--hypergraph", "fixtures/hs.hg"]);
    assert_eq!(r["bound"]["ln_bound"], num(lib.ln_bound));

    let r = results(&["bound", "transversal-envelope", "--n", "600"]);
    assert_eq!(r["ln_bound_2117"], num(transversal_bound_ln(600)));
    assert_eq!(r["ln_envelope_e2"], num(reference_envelope_ln(600)));

    let g = kdd_union(3, 2).unwrap();
    for (mode, flag) in [(ColoringMode::Finite, "finite"), (ColoringMode::Asymptotic, "asymptotic")] {
        let lib = coloring_bound_ln(&g.stats(), 3, mode, DEFAULT_TOL).unwrap();
        let r = results(&["bound", "coloring", "--kdd", "3", "--copies", "2", "--q", "3", "--mode", flag]);
        assert_eq!(r["ln_bound"], num(lib));
    }
}

#[test]
fn verification_matches_library() {
    let vo = VerifyOptions::default();
    let h3 = ls_to_hypergraph(&square_fixture("z3.ls"), &CellSet::new()).unwrap();
    let lib = verify_lemma31(&h3, &vo).unwrap();
    let r = results(&["verify", "lemma31", "--square", "fixtures/z3.ls"]);
    assert_eq!(r["lhs"], num(lib.lhs_bits));
    assert_eq!(r["rhs"], num(lib.rhs_bits));
    assert_eq!(r["pass"], true);
    assert!((r["lhs"].as_f64().unwrap() - 1.58496).abs() < 1e-5);

    let g = incidence_hypergraph(&kdd_union(3, 1).unwrap(), 3).unwrap();
    let lib = verify_lemma33(&g, &vo).unwrap();
    let r = results(&["verify", "lemma33", "--kdd", "3", "--q", "3"]);
    assert_eq!(r["worst_s_slack"], num(lib.worst_s_slack));
    assert_eq!(r["pass"], lib.pass);

    let lib = verify_bound_dominance(&hypergraph_fixture("ht.hg"), &vo).unwrap();
    let r = results(&["verify", "dominance", "--hypergraph", "fixtures/ht.hg"]);
    assert_eq!(r["rhs"], num(lib.bound.ln_bound));
    assert_eq!(r["count"], "2");
}

#[test]
fn same_seed_same_bytes() {
    let args = ["--seed", "9", "verify", "sampler", "--hypergraph", "fixtures/h3.hg", "--trials", "600"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn written_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("matchbound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z5.hg");
    let path_str = path.to_str().unwrap();
    results(&["encode", "square", "--square", "fixtures/z5.ls", "--out", path_str]);
    let r = results(&["count", "matchings", "--hypergraph", path_str]);
    assert_eq!(r["matchings"]["count"], "15");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn diagnostics_name_the_input() {
    let dir = std::env::temp_dir().join(format!("matchbound-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.ls");
    std::fs::write(&bad, "3\n0 1 2\n1 2 0\n1 2 0\n").unwrap();
    let out = run(&["count", "transversals", "--square", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.ls") && err.contains("line"), "{err}");
    assert_eq!(err.trim_end().lines().count(), 1);
    std::fs::remove_dir_all(&dir).unwrap();

    let out = run(&["count", "transversals", "--cayley", "5", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "lemma31", "--square", "fixtures/z4.ls"]);
    assert_eq!(out.status.code(), Some(1));
}
