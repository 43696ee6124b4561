//! Parameter sets for the standard figure panels.
//!
//! `fig2-{a..d}` and `fig3-{a..d}` are Husimi grids and photon distributions of
//! the exactly displaced vacuum at x = 1, 5, 10, 20; `fig5-{a..d}-{i..iv}` and
//! `fig6-{a..d}-{i..iv}` the same for the evolved state with rows m = 0, 1, 5, 10
//! and columns τ = 1, 2.32, 5, 20; `fig4` and `fig7-{a..d}` are Mandel scans.

use crate::args::RecipeArg;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Qfunc,
    Pdist,
    Mandel,
}

impl Kind {
    pub fn command(self) -> &'static str {
        match self {
            Kind::Qfunc => "qfunc",
            Kind::Pdist => "pdist",
            Kind::Mandel => "mandel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub kind: Kind,
    pub recipe: RecipeArg,
    pub m: usize,
    pub tau: f64,
}

const DISPLACEMENTS: [f64; 4] = [1.0, 5.0, 10.0, 20.0];
const ROWS_M: [usize; 4] = [0, 1, 5, 10];
const COLS_TAU: [f64; 4] = [1.0, 2.32, 5.0, 20.0];
const LETTERS: [&str; 4] = ["a", "b", "c", "d"];
const NUMERALS: [&str; 4] = ["i", "ii", "iii", "iv"];

/// Scans run over (0, 20].
pub const SCAN_TAU_MAX: f64 = 20.0;

pub fn lookup(name: &str) -> Option<Preset> {
    let parts: Vec<&str> = name.split('-').collect();
    let row = |s: &str| LETTERS.iter().position(|l| *l == s);
    let col = |s: &str| NUMERALS.iter().position(|l| *l == s);
    let exact = |kind, k: usize| Preset {
        kind,
        recipe: RecipeArg::ExactDisplaced,
        m: 0,
        tau: DISPLACEMENTS[k],
    };
    let evolved = |kind, r: usize, c: usize| Preset {
        kind,
        recipe: RecipeArg::Evolved,
        m: ROWS_M[r],
        tau: COLS_TAU[c],
    };
    let scan = |m| Preset {
        kind: Kind::Mandel,
        recipe: RecipeArg::Evolved,
        m,
        tau: SCAN_TAU_MAX,
    };
    match parts.as_slice() {
        ["fig2", r] => row(r).map(|k| exact(Kind::Qfunc, k)),
        ["fig3", r] => row(r).map(|k| exact(Kind::Pdist, k)),
        ["fig4"] => Some(scan(0)),
        ["fig5", r, c] => Some(evolved(Kind::Qfunc, row(r)?, col(c)?)),
        ["fig6", r, c] => Some(evolved(Kind::Pdist, row(r)?, col(c)?)),
        ["fig7", r] => row(r).map(|k| scan(ROWS_M[k])),
        _ => None,
    }
}

pub fn names() -> Vec<String> {
    let mut out = Vec::new();
    for fig in ["fig2", "fig3"] {
        out.extend(LETTERS.iter().map(|r| format!("{fig}-{r}")));
    }
    out.push("fig4".into());
    for fig in ["fig5", "fig6"] {
        for r in LETTERS {
            out.extend(NUMERALS.iter().map(|c| format!("{fig}-{r}-{c}")));
        }
    }
    out.extend(LETTERS.iter().map(|r| format!("fig7-{r}")));
    out
}
