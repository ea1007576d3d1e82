//! Margin of victory: exact values with reversal-set witnesses.
//!
//! For a winner the value is the size of a smallest destructive reversal set
//! (positive); for a non-winner it is minus the size of a smallest
//! constructive one.

mod brute;
mod copeland;
mod kings;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::AltSet;
use crate::error::{Error, Result};
use crate::solutions::{is_winner, SolutionId, BANKS_GUARD};
use crate::tournament::{AlternativeId, ReversalSet, Tournament};

pub use brute::{brute_force_mov, brute_force_solution, default_probe_cap};
pub use copeland::mov_co;
pub use kings::{mov_3kings, mov_tc, mov_uc};

/// Size limit for Banks-set margins computed by exhaustive search.
pub const BA_GUARD: usize = 9;

/// Size limit for k-kings margins (`4 <= k < n-1`) computed by exhaustive search.
pub const BRUTE_GUARD: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MovValue {
    Finite(i64),
    /// No reversal set changes membership.
    Infinite,
}

impl MovValue {
    pub fn finite(self) -> Option<i64> {
        match self {
            MovValue::Finite(v) => Some(v),
            MovValue::Infinite => None,
        }
    }

    pub fn is_positive(self) -> bool {
        match self {
            MovValue::Finite(v) => v > 0,
            MovValue::Infinite => true,
        }
    }
}

impl fmt::Display for MovValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MovValue::Finite(v) => write!(f, "{v}"),
            MovValue::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovResult {
    pub value: MovValue,
    pub witness: ReversalSet,
}

impl MovResult {
    pub fn finite(value: i64, witness: ReversalSet) -> Self {
        MovResult {
            value: MovValue::Finite(value),
            witness,
        }
    }

    pub fn infinite() -> Self {
        MovResult {
            value: MovValue::Infinite,
            witness: ReversalSet::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovProfile {
    pub results: Vec<MovResult>,
    pub argmax: AltSet,
    pub unique_values: usize,
}

impl MovProfile {
    fn from_results(results: Vec<MovResult>) -> Self {
        let best = results.iter().map(|r| r.value).max().expect("empty profile");
        let argmax = results
            .iter()
            .enumerate()
            .filter(|(_, r)| r.value == best)
            .map(|(i, _)| i)
            .collect();
        let unique_values = results.iter().map(|r| r.value).collect::<BTreeSet<_>>().len();
        MovProfile {
            results,
            argmax,
            unique_values,
        }
    }

    pub fn values(&self) -> impl Iterator<Item = MovValue> + '_ {
        self.results.iter().map(|r| r.value)
    }
}

/// Margin of victory of `x` under `s`, dispatching to the exact polynomial
/// routine where one exists and to exhaustive search otherwise.
pub fn mov(t: &Tournament, s: SolutionId, x: AlternativeId) -> Result<MovResult> {
    match s {
        SolutionId::Co => Ok(mov_co(t, x)),
        SolutionId::Tc => Ok(mov_tc(t, x)),
        SolutionId::Uc => Ok(mov_uc(t, x)),
        SolutionId::Kings(3) => Ok(mov_3kings(t, x)),
        SolutionId::Kings(k) if k < 3 => Err(Error::KOutOfRange { k, n: t.n() }),
        SolutionId::Kings(k) if k >= t.n() - 1 => Ok(mov_tc(t, x)),
        SolutionId::Kings(_) => {
            if t.n() > BRUTE_GUARD {
                return Err(Error::GuardExceeded {
                    what: "k-kings margin of victory",
                    n: t.n(),
                    guard: BRUTE_GUARD,
                });
            }
            brute_force_solution(t, s, x, t.edge_count())
        }
        SolutionId::Ba => mov_ba_small(t, x),
    }
}

pub fn mov_ba_small(t: &Tournament, x: AlternativeId) -> Result<MovResult> {
    mov_ba_with_guard(t, x, BA_GUARD)
}

pub fn mov_ba_with_guard(t: &Tournament, x: AlternativeId, guard: usize) -> Result<MovResult> {
    if t.n() > guard {
        return Err(Error::GuardExceeded {
            what: "Banks margin of victory",
            n: t.n(),
            guard,
        });
    }
    brute_force_mov(
        t,
        |u, a| crate::solutions::is_banks_member(u, a, guard.max(BANKS_GUARD)),
        x,
        t.edge_count(),
    )
}

/// Degree-based estimate of the top-cycle margin:
/// `min(outdeg(x), min over y != x of indeg(y))`.
pub fn tc_formula(t: &Tournament, x: AlternativeId) -> i64 {
    let min_in = t
        .alternatives()
        .filter(|&y| y != x)
        .map(|y| t.indegree(y))
        .min()
        .unwrap_or(0);
    t.outdegree(x).min(min_in) as i64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateCheck {
    Valid,
    Invalid(String),
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateCheck::Valid)
    }
}

/// Checks that the witness has the claimed size and flips the membership of `x`.
pub fn verify_certificate(
    t: &Tournament,
    s: SolutionId,
    x: AlternativeId,
    result: &MovResult,
) -> Result<CertificateCheck> {
    let v = match result.value {
        MovValue::Finite(v) => v,
        MovValue::Infinite => {
            return Ok(CertificateCheck::Invalid(
                "infinite margin has no certificate".into(),
            ))
        }
    };
    if result.witness.len() as i64 != v.abs() {
        return Ok(CertificateCheck::Invalid(format!(
            "witness has {} edges but |value| is {}",
            result.witness.len(),
            v.abs()
        )));
    }
    let before = is_winner(t, s, x)?;
    if before != (v > 0) {
        return Ok(CertificateCheck::Invalid(format!(
            "sign {v} disagrees with membership {before}"
        )));
    }
    let reversed = match t.reverse(&result.witness) {
        Ok(r) => r,
        Err(e) => return Ok(CertificateCheck::Invalid(e.to_string())),
    };
    if is_winner(&reversed, s, x)? == before {
        return Ok(CertificateCheck::Invalid(
            "reversing the witness does not change membership".into(),
        ));
    }
    Ok(CertificateCheck::Valid)
}

pub fn mov_profile(t: &Tournament, s: SolutionId) -> Result<MovProfile> {
    let results = t
        .alternatives()
        .map(|x| mov(t, s, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(MovProfile::from_results(results))
}

/// [`mov_profile`] with alternatives evaluated on the rayon pool.
pub fn mov_profile_parallel(t: &Tournament, s: SolutionId) -> Result<MovProfile> {
    let results = (0..t.n())
        .into_par_iter()
        .map(|i| mov(t, s, AlternativeId(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MovProfile::from_results(results))
}
