//! Margins for the reachability solutions: top cycle, uncovered set (2-kings)
//! and 3-kings.

use crate::bits::AltSet;
use crate::flow::{mincut_bounded, CutMode};
use crate::solutions::top_cycle;
use crate::tournament::{AlternativeId, Edge, ReversalSet, Tournament};

use super::MovResult;

pub fn mov_tc(t: &Tournament, x: AlternativeId) -> MovResult {
    let tc = top_cycle(t);
    if tc.contains(x.0) {
        return destructive(t, x, CutMode::Unbounded);
    }
    // Beating any top-cycle member lifts x into the top cycle.
    let w = tc.first().expect("top cycle is nonempty");
    MovResult::finite(-1, [Edge::new(w, x.0)].into_iter().collect())
}

pub fn mov_uc(t: &Tournament, x: AlternativeId) -> MovResult {
    reach_margin(t, x, 2, CutMode::Len2)
}

pub fn mov_3kings(t: &Tournament, x: AlternativeId) -> MovResult {
    reach_margin(t, x, 3, CutMode::Len3)
}

fn reach_margin(t: &Tournament, x: AlternativeId, k: usize, mode: CutMode) -> MovResult {
    if t.is_king(x, k) {
        destructive(t, x, mode)
    } else {
        constructive(t, x, k)
    }
}

/// A winner drops out exactly when some `y` becomes unreachable within the
/// bound, so the margin is the smallest bounded `x`-`y` cut over all `y`.
fn destructive(t: &Tournament, x: AlternativeId, mode: CutMode) -> MovResult {
    let mut best: Option<(usize, ReversalSet)> = None;
    for y in t.alternatives().filter(|&y| y != x) {
        // Every bounded cut is at least the unbounded one, which exceeds the
        // reverse cut by outdeg(x) - outdeg(y).
        let lower = t.outdegree(x).saturating_sub(t.outdegree(y));
        if best.as_ref().is_some_and(|(b, _)| lower >= *b) {
            continue;
        }
        let cut = mincut_bounded(t, x, y, mode).expect("x != y");
        if best.as_ref().is_none_or(|(b, _)| cut.value < *b) {
            best = Some((cut.value, cut.cut_edges));
        }
    }
    let (value, witness) = best.expect("at least one other alternative");
    MovResult::finite(value as i64, witness)
}

/// Smallest set of incoming edges of `x` whose reversal makes `x` reach
/// every alternative within `k` steps.
fn constructive(t: &Tournament, x: AlternativeId, k: usize) -> MovResult {
    let others = t.all().difference(&AltSet::singleton(x.0));
    let dominators: Vec<usize> = t.dominators(x).iter().collect();
    let covers = |start: AltSet| reach_from(t, x, start, k - 1) == others;
    let mut chosen = Vec::new();
    for size in 1..=dominators.len() {
        if pick(&dominators, 0, size, &mut chosen, t.dominion(x), &covers) {
            let witness = chosen.iter().map(|&u| Edge::new(u, x.0)).collect();
            return MovResult::finite(-(size as i64), witness);
        }
    }
    unreachable!("reversing every incoming edge makes x a Condorcet winner")
}

fn pick(
    pool: &[usize],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    base: AltSet,
    covers: &impl Fn(AltSet) -> bool,
) -> bool {
    if remaining == 0 {
        return covers(base);
    }
    for i in start..=pool.len() - remaining {
        chosen.push(pool[i]);
        let mut next = base;
        next.insert(pool[i]);
        if pick(pool, i + 1, remaining - 1, chosen, next, covers) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Alternatives other than `x` reachable from `start` in at most `extra`
/// further steps, together with `start`. Edges into `x` are irrelevant.
fn reach_from(t: &Tournament, x: AlternativeId, start: AltSet, extra: usize) -> AltSet {
    let mut reached = start;
    let mut frontier = start;
    for _ in 0..extra {
        let mut next = AltSet::empty();
        for v in frontier.iter() {
            next = next.union(&t.dominion(AlternativeId(v)));
        }
        next.remove(x.0);
        let fresh = next.difference(&reached);
        if fresh.is_empty() {
            break;
        }
        reached = reached.union(&fresh);
        frontier = fresh;
    }
    reached
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cyclone, cyclone_chain, fig4, fig5, fig7, transitive};
    use crate::mov::MovValue;

    fn v(r: MovResult) -> i64 {
        r.value.finite().unwrap()
    }

    #[test]
    fn uc_fixtures() {
        let f = fig4();
        assert_eq!(v(mov_uc(&f.tournament, f.alt("g"))), 2);
        assert_eq!(v(mov_uc(&f.tournament, f.alt("d"))), 1);
        let f = fig5();
        assert_eq!(v(mov_uc(&f.tournament, f.alt("x"))), 1);
        assert_eq!(v(mov_uc(&f.tournament, f.alt("y4"))), 2);
        assert_eq!(v(mov_uc(&transitive(3), AlternativeId(2))), -1);
    }

    #[test]
    fn three_kings_construction() {
        let f = fig7(3, 5, 4).unwrap();
        assert_eq!(v(mov_3kings(&f.tournament, f.alt("y"))), 1);
        assert!(v(mov_3kings(&f.tournament, f.alt("x"))) >= 3);
    }

    #[test]
    fn tc_values() {
        for x in 1..5 {
            assert_eq!(
                mov_tc(&transitive(5), AlternativeId(x)).value,
                MovValue::Finite(-1)
            );
        }
        let c = cyclone(5);
        assert!(c.alternatives().all(|x| v(mov_tc(&c, x)) == 2));
        let f = cyclone_chain(3, 9).unwrap();
        assert_eq!(v(mov_tc(&f.tournament, f.alt("T2_3"))), 2);
        assert_eq!(v(mov_tc(&f.tournament, f.alt("T3_3"))), 1);
    }
}
