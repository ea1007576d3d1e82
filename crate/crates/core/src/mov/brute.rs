use crate::error::{Error, Result};
use crate::solutions::{is_winner, SolutionId};
use crate::tournament::{AlternativeId, Edge, ReversalSet, Tournament};

use super::MovResult;

/// Default subset-size cap for bounded constructive probes:
/// `ceil(log2 n) + 3`.
pub fn default_probe_cap(n: usize) -> usize {
    (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize + 3
}

/// Exhaustive margin of victory: tries every reversal set of size
/// 1, 2, ..., `cap` and returns the first size that flips membership.
///
/// Returns an infinite margin only when `cap` covers every edge and nothing
/// flips; otherwise failing to flip is [`Error::UndeterminedAtCap`].
pub fn brute_force_mov<F>(t: &Tournament, membership: F, x: AlternativeId, cap: usize) -> Result<MovResult>
where
    F: Fn(&Tournament, AlternativeId) -> Result<bool>,
{
    let edges = t.edges();
    let cap = cap.min(edges.len());
    let member = membership(t, x)?;
    let mut work = t.clone();
    let mut chosen = Vec::new();
    for size in 1..=cap {
        if search(&mut work, &edges, 0, size, &mut chosen, &membership, x, member)? {
            let witness: ReversalSet = chosen.iter().copied().collect();
            let v = size as i64;
            return Ok(MovResult::finite(if member { v } else { -v }, witness));
        }
    }
    if cap == edges.len() {
        Ok(MovResult::infinite())
    } else {
        Err(Error::UndeterminedAtCap { cap })
    }
}

/// [`brute_force_mov`] with membership in a named solution.
pub fn brute_force_solution(
    t: &Tournament,
    s: SolutionId,
    x: AlternativeId,
    cap: usize,
) -> Result<MovResult> {
    brute_force_mov(t, |u, a| is_winner(u, s, a), x, cap)
}

#[allow(clippy::too_many_arguments)]
fn search<F>(
    work: &mut Tournament,
    edges: &[Edge],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<Edge>,
    membership: &F,
    x: AlternativeId,
    member: bool,
) -> Result<bool>
where
    F: Fn(&Tournament, AlternativeId) -> Result<bool>,
{
    if remaining == 0 {
        return Ok(membership(work, x)? != member);
    }
    for i in start..=edges.len() - remaining {
        let e = edges[i];
        work.flip(e);
        chosen.push(e);
        let found = search(work, edges, i + 1, remaining - 1, chosen, membership, x, member)?;
        if found {
            work.flip(e.reversed());
            return Ok(true);
        }
        chosen.pop();
        work.flip(e.reversed());
    }
    Ok(false)
}
