//! Built-in arrangements.

use crate::arrangement::ProjArrangement;
use crate::{Error, Result};

pub struct CatalogEntry {
    pub name: &'static str,
    /// Whether the entry takes the `m` parameter.
    pub parameterized: bool,
    pub generator: fn(usize) -> Result<ProjArrangement>,
    pub summary: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "braid-a3",
        parameterized: false,
        generator: |_| Ok(braid_a3()),
        summary: "xyz(x-y)(x-z)(y-z)",
    },
    CatalogEntry {
        name: "pencil",
        parameterized: true,
        generator: pencil,
        summary: "m concurrent lines",
    },
    CatalogEntry {
        name: "near-pencil",
        parameterized: true,
        generator: near_pencil,
        summary: "m-1 concurrent lines and one general line",
    },
    CatalogEntry {
        name: "generic",
        parameterized: true,
        generator: generic,
        summary: "m lines, only double points",
    },
    CatalogEntry {
        name: "fermat",
        parameterized: true,
        generator: fermat,
        summary: "linear factors of (x^m-y^m)(y^m-z^m)(x^m-z^m), rational for m <= 2",
    },
    CatalogEntry {
        name: "fig3",
        parameterized: false,
        generator: |_| Ok(fig3()),
        summary: "line at infinity, two horizontal, one diagonal, two vertical lines",
    },
];

pub fn lookup(name: &str, m: Option<usize>) -> Result<ProjArrangement> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
    let m = match (entry.parameterized, m) {
        (true, Some(m)) => m,
        (true, None) => {
            return Err(Error::Parse { line: 0, message: format!("builtin `{name}` needs --m") })
        }
        (false, _) => 0,
    };
    (entry.generator)(m)
}

pub fn braid_a3() -> ProjArrangement {
    ProjArrangement::from_triples(&[
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, -1, 0],
        [1, 0, -1],
        [0, 1, -1],
    ])
    .expect("valid arrangement")
}

/// Line 0 is `z = 0`; deconing there gives horizontal lines `y = 2`,
/// `y = 1`, the diagonal `y = x` and vertical lines `x = 1`, `x = 2`.
pub fn fig3() -> ProjArrangement {
    ProjArrangement::from_triples(&[
        [0, 0, 1],
        [0, 1, -2],
        [0, 1, -1],
        [1, -1, 0],
        [1, 0, -1],
        [1, 0, -2],
    ])
    .expect("valid arrangement")
}

fn unrealizable(name: &str, m: usize) -> Error {
    Error::Unrealizable { name: name.to_string(), m }
}

/// `m` lines through `(0:0:1)`.
pub fn pencil(m: usize) -> Result<ProjArrangement> {
    if m < 3 {
        return Err(unrealizable("pencil", m));
    }
    let mut t = vec![[0, 1, 0]];
    t.extend((0..m as i64 - 1).map(|k| [1, -k, 0]));
    ProjArrangement::from_triples(&t)
}

/// A pencil of `m - 1` lines plus `z = 0`.
pub fn near_pencil(m: usize) -> Result<ProjArrangement> {
    if m < 3 {
        return Err(unrealizable("near-pencil", m));
    }
    let mut t = vec![[0, 1, 0]];
    t.extend((0..m as i64 - 2).map(|k| [1, -k, 0]));
    t.push([0, 0, 1]);
    ProjArrangement::from_triples(&t)
}

/// Lines `x + k y + k² z = 0`; three of them never share a point
/// (Vandermonde).
pub fn generic(m: usize) -> Result<ProjArrangement> {
    if m < 3 {
        return Err(unrealizable("generic", m));
    }
    let t: Vec<[i64; 3]> = (0..m as i64).map(|k| [1, k, k * k]).collect();
    ProjArrangement::from_triples(&t)
}

/// Linear factors of `x^m − y^m`, `y^m − z^m`, `x^m − z^m`. Over the
/// rationals only the roots of unity ±1 are available, so `m ∈ {1, 2}`.
pub fn fermat(m: usize) -> Result<ProjArrangement> {
    let roots: &[i64] = match m {
        1 => &[1],
        2 => &[1, -1],
        _ => return Err(unrealizable("fermat", m)),
    };
    let mut t = Vec::new();
    for &z in roots {
        t.push([1, -z, 0]);
    }
    for &z in roots {
        t.push([0, 1, -z]);
    }
    for &z in roots {
        t.push([1, 0, -z]);
    }
    ProjArrangement::from_triples(&t)
}

/// Every catalog member with at most `max_lines` lines, labelled.
pub fn members(max_lines: usize) -> Vec<(String, ProjArrangement)> {
    let mut out = Vec::new();
    for e in ENTRIES {
        if e.parameterized {
            for m in 1..=max_lines {
                if let Ok(a) = (e.generator)(m) {
                    if a.len() <= max_lines {
                        out.push((format!("{}({m})", e.name), a));
                    }
                }
            }
        } else {
            let a = (e.generator)(0).expect("fixed entries are valid");
            if a.len() <= max_lines {
                out.push((e.name.to_string(), a));
            }
        }
    }
    out
}
