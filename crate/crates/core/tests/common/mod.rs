//! Independent oracles and fixture loading shared by the integration tests.
//! Nothing here calls the counting or bound code under test.

#![allow(dead_code)]

use std::path::PathBuf;

use matchbound::constructions::{incidence_hypergraph, kdd_union, ls_to_hypergraph, CellSet, LatinSquare};
use matchbound::hypercore::BipartiteHypergraph;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn read_fixture(name: &str) -> String {
    let path = fixtures_dir().join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn square_fixture(name: &str) -> LatinSquare {
    LatinSquare::parse(&read_fixture(name)).unwrap()
}

pub fn hypergraph_fixture(name: &str) -> BipartiteHypergraph {
    BipartiteHypergraph::parse(&read_fixture(name)).unwrap()
}

/// All Latin square fixtures, sorted by file name.
pub fn square_fixtures() -> Vec<(String, LatinSquare)> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".ls"))
        .collect();
    names.sort();
    names.into_iter().map(|n| {
        let l = square_fixture(&n);
        (n, l)
    }).collect()
}

/// Square encodings of order at most `max_order`, the small hand-made
/// hypergraphs, and `K_{D,D}` incidence hypergraphs with `q = D` for
/// `D <= max_d`.
pub fn corpus(max_order: usize, max_d: usize) -> Vec<(String, BipartiteHypergraph)> {
    let mut out = Vec::new();
    for (name, l) in square_fixtures() {
        if l.order() <= max_order {
            out.push((name, ls_to_hypergraph(&l, &CellSet::new()).unwrap()));
        }
    }
    for name in ["h1.hg", "hs.hg", "ht.hg", "h3x2.hg"] {
        out.push((name.to_string(), hypergraph_fixture(name)));
    }
    for d in 1..=max_d {
        let g = kdd_union(d, 1).unwrap();
        out.push((format!("K{d}{d}/q={d}"), incidence_hypergraph(&g, d).unwrap()));
    }
    out
}

/// Calls `visit` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            visit(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Transversals by checking every column permutation.
pub fn brute_transversals(rows: &[Vec<usize>]) -> u64 {
    let n = rows.len();
    let mut count = 0;
    for_each_permutation(n, |cols| {
        let mut seen = vec![false; n];
        if (0..n).all(|r| !std::mem::replace(&mut seen[rows[r][cols[r]]], true)) {
            count += 1;
        }
    });
    count
}

/// Cyclic Cayley table, built directly.
pub fn cyclic_rows(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|r| (0..n).map(|c| (r + c) % n).collect()).collect()
}

/// Number of Latin squares of order `d`, by stacking permutation rows.
pub fn brute_latin_squares(d: usize) -> u64 {
    let mut perms = Vec::new();
    for_each_permutation(d, |p| perms.push(p.to_vec()));
    fn extend(rows: &mut Vec<usize>, perms: &[Vec<usize>], d: usize) -> u64 {
        if rows.len() == d {
            return 1;
        }
        let mut total = 0;
        for (i, p) in perms.iter().enumerate() {
            let fits = rows.iter().all(|&j| (0..d).all(|c| perms[j][c] != p[c]));
            if fits {
                rows.push(i);
                total += extend(rows, perms, d);
                rows.pop();
            }
        }
        total
    }
    if d == 0 {
        return 1;
    }
    extend(&mut Vec::new(), &perms, d)
}

/// `∫_0^1 ln(a + q x^2) dx` in closed form.
pub fn closed_k2(a: f64, q: f64) -> f64 {
    (a + q).ln() - 2.0 + 2.0 * (a / q).sqrt() * (q / a).sqrt().atan()
}

/// Composite Simpson rule on a fixed grid with `2 * half` panels.
pub fn fixed_simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, half: usize) -> f64 {
    let n = 2 * half;
    let h = (hi - lo) / n as f64;
    let mut s = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(lo + i as f64 * h);
    }
    s * h / 3.0
}

/// Simpson on `[0, 1]` with pieces that double in width away from `knee`,
/// for integrands that change scale there.
pub fn graded_simpson(f: impl Fn(f64) -> f64, knee: f64) -> f64 {
    let knee = knee.clamp(1e-300, 1.0);
    let mut total = fixed_simpson(&f, 0.0, knee, 500);
    let mut lo = knee;
    while lo < 1.0 {
        let hi = (2.0 * lo).min(1.0);
        total += fixed_simpson(&f, lo, hi, 500);
        lo = hi;
    }
    total
}
