//! Spin structures on the p-torus: an affine Z2^p over the Lie structure,
//! acted on by the mod-2 image of the modular subgroup via Dehn twists,
//! plus the T^3 signature gate.
//!
//! Convention: matrices act on H_1 column vectors; the twist along factor
//! i in the (i, j) direction sends e_i to e_i + e_j, so its matrix carries
//! the extra 1 at (row j, col i). Spin differences live in H^1 and
//! transform by the transpose.

use crate::error::{Error, Result};
use crate::f2::{F2Mat, F2Vec};
use crate::group::{orbit_closure, OrbitResult, DEFAULT_STATE_BUDGET};

pub const P_MAX: usize = 16;

/// A spin structure on T^p, stored as its difference from the Lie structure.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusSpin {
    p: usize,
    diff: F2Vec,
}

impl std::fmt::Debug for TorusSpin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TorusSpin({})", self.diff.to_bit_string())
    }
}

impl TorusSpin {
    pub fn new(diff: F2Vec) -> Result<Self> {
        if diff.dim() == 0 {
            return Err(Error::BadBitString("empty spin difference".into()));
        }
        Ok(TorusSpin {
            p: diff.dim(),
            diff,
        })
    }

    pub fn lie(p: usize) -> Self {
        assert!(p >= 1);
        TorusSpin {
            p,
            diff: F2Vec::zeros(p),
        }
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn diff(&self) -> &F2Vec {
        &self.diff
    }

    pub fn is_lie(&self) -> bool {
        self.diff.is_zero()
    }
}

/// Mod-2 matrix of the Dehn twist along factor i in the (i, j) direction;
/// indices are 1-based as in the parametrization of the torus factors.
pub fn dehn_twist_matrix(p: usize, i: usize, j: usize) -> Result<F2Mat> {
    if i == j || i < 1 || j < 1 || i > p || j > p {
        return Err(Error::OutOfRange {
            what: "twist index pair",
            value: if i == j || i > p { i } else { j },
            max: p,
        });
    }
    let mut m = F2Mat::identity(p);
    m.set(j - 1, i - 1, true);
    Ok(m)
}

/// All p(p-1) twist generators, (i, j) in lexicographic order.
pub fn torus_generators(p: usize) -> Vec<(usize, usize, F2Mat)> {
    let mut out = Vec::new();
    for i in 1..=p {
        for j in 1..=p {
            if i != j {
                out.push((i, j, dehn_twist_matrix(p, i, j).unwrap()));
            }
        }
    }
    out
}

/// Action on spin structures: diff' = A^T diff. Fixes the Lie structure.
pub fn torus_act(a: &F2Mat, s: &TorusSpin) -> Result<TorusSpin> {
    if a.rows() != s.p || a.cols() != s.p {
        return Err(Error::DimensionMismatch {
            expected: s.p,
            got: a.rows().max(a.cols()),
        });
    }
    if !a.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    Ok(TorusSpin {
        p: s.p,
        diff: a.transpose().apply(&s.diff)?,
    })
}

/// BFS closure under the twist generators: size 1 for the Lie structure,
/// 2^p - 1 for any non-Lie seed.
pub fn torus_orbit(p: usize, s: &TorusSpin) -> Result<OrbitResult<TorusSpin>> {
    torus_orbit_with_budget(p, s, DEFAULT_STATE_BUDGET)
}

pub fn torus_orbit_with_budget(
    p: usize,
    s: &TorusSpin,
    budget: usize,
) -> Result<OrbitResult<TorusSpin>> {
    if p < 1 || p > P_MAX {
        return Err(Error::OutOfRange {
            what: "torus dimension",
            value: p,
            max: P_MAX,
        });
    }
    if s.p != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            got: s.p,
        });
    }
    // acting by the transpose of each twist; precompute them
    let transposed: Vec<F2Mat> = torus_generators(p)
        .into_iter()
        .map(|(_, _, m)| m.transpose())
        .collect();
    orbit_closure(
        std::slice::from_ref(s),
        transposed.len(),
        |i, state: &TorusSpin| TorusSpin {
            p,
            diff: transposed[i].apply(&state.diff).unwrap(),
        },
        budget,
        true,
    )
}

/// 1 for the Lie structure (the bound is vacuous there), else 2^p - 1.
pub fn index_lower_bound_torus(s: &TorusSpin) -> u64 {
    assert!(s.p < 64);
    if s.is_lie() {
        1
    } else {
        (1u64 << s.p) - 1
    }
}

/// Verdict of the Seifert-hypersurface signature test for T^3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T3Verdict {
    /// Signature 0 mod 16: the induced structure cannot be Lie, index >= 7.
    BoundApplies { bound: u64 },
    /// Signature 8 mod 16: a Lie-inducing embedding is consistent.
    Indeterminate,
    /// Signature not 0 mod 8: no such hypersurface exists.
    InvalidSignature,
}

impl T3Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            T3Verdict::BoundApplies { .. } => "BoundApplies",
            T3Verdict::Indeterminate => "Indeterminate",
            T3Verdict::InvalidSignature => "InvalidSignature",
        }
    }

    pub fn bound(&self) -> Option<u64> {
        match self {
            T3Verdict::BoundApplies { bound } => Some(*bound),
            _ => None,
        }
    }
}

pub fn t3_signature_gate(signature: i64) -> T3Verdict {
    match signature.rem_euclid(16) {
        0 => T3Verdict::BoundApplies { bound: 7 },
        8 => T3Verdict::Indeterminate,
        _ => T3Verdict::InvalidSignature,
    }
}
