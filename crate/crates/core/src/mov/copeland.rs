use crate::flow::MinCostFlow;
use crate::tournament::{AlternativeId, Edge, ReversalSet, Tournament};

use super::MovResult;

/// Copeland margin of victory.
///
/// Winners: some `y` must overtake `x`. Each reversal closes the score gap to
/// `y` by one, except the edge `x -> y` itself which closes it by two.
///
/// Non-winners: `x` gains `k` points by reversing incoming edges; every
/// alternative scoring above `outdeg(x) + k` must shed its excess along
/// reversed edges. For each `k` the cheapest shedding is a min-cost flow.
pub fn mov_co(t: &Tournament, x: AlternativeId) -> MovResult {
    let max = t.alternatives().map(|a| t.outdegree(a)).max().unwrap_or(0);
    if t.outdegree(x) == max {
        destructive(t, x)
    } else {
        constructive(t, x, max)
    }
}

fn destructive(t: &Tournament, x: AlternativeId) -> MovResult {
    let ox = t.outdegree(x) as i64;
    let cost = |y: AlternativeId| {
        let direct = t.dominates(x, y) as i64;
        (ox - t.outdegree(y) as i64 + 1 - direct).max(1)
    };
    let target = t
        .alternatives()
        .filter(|&y| y != x)
        .min_by_key(|&y| (cost(y), y))
        .expect("tournament has at least two alternatives");
    let need = cost(target) as usize;

    let mut witness = ReversalSet::new();
    let mut gap = ox - t.outdegree(target) as i64;
    if t.dominates(x, target) {
        witness.insert(Edge { from: x, to: target });
        gap -= 2;
    }
    for z in t.dominion(x).iter() {
        if gap < 0 {
            break;
        }
        if z != target.0 {
            witness.insert(Edge::new(x.0, z));
            gap -= 1;
        }
    }
    for z in t.dominators(target).iter() {
        if gap < 0 {
            break;
        }
        if z != x.0 {
            witness.insert(Edge::new(z, target.0));
            gap -= 1;
        }
    }
    debug_assert_eq!(witness.len(), need);
    MovResult::finite(need as i64, witness)
}

fn constructive(t: &Tournament, x: AlternativeId, max: usize) -> MovResult {
    let ox = t.outdegree(x);
    let delta = max - ox;
    let mut best: Option<(usize, ReversalSet)> = None;
    for k in 0..=delta {
        if best.as_ref().is_some_and(|(b, _)| *b <= k) {
            break;
        }
        if let Some(set) = route_excess(t, x, k) {
            if best.as_ref().is_none_or(|(b, _)| set.len() < *b) {
                best = Some((set.len(), set));
            }
        }
    }
    let (size, witness) = best.expect("reversing delta incoming edges always suffices");
    MovResult::finite(-(size as i64), witness)
}

/// Cheapest reversal set making `x` a Copeland winner while reversing
/// exactly `k` of its incoming edges, if one exists.
fn route_excess(t: &Tournament, x: AlternativeId, k: usize) -> Option<ReversalSet> {
    let n = t.n();
    let s = t.outdegree(x) + k;
    let (source, sink) = (n, n + 1);
    let mut g = MinCostFlow::new(n + 2);
    let mut total_excess = 0i64;
    let mut arcs = Vec::new();
    for u in t.alternatives() {
        if u == x {
            continue;
        }
        let d = t.outdegree(u);
        if d > s {
            g.add_arc(source, u.0, (d - s) as i64, 0);
            total_excess += (d - s) as i64;
        } else if d < s {
            g.add_arc(u.0, sink, (s - d) as i64, 0);
        }
        for v in t.dominion(u).iter() {
            let cost = if v == x.0 { 0 } else { 1 };
            arcs.push((g.add_arc(u.0, v, 1, cost), Edge::new(u.0, v)));
        }
    }
    if total_excess == 0 && k == 0 {
        return Some(ReversalSet::new());
    }
    g.add_arc(x.0, sink, k as i64, 0);
    let (flow, _) = g.run(source, sink, total_excess);
    if flow < total_excess {
        return None;
    }
    let mut witness: ReversalSet = arcs
        .iter()
        .filter(|(a, _)| g.flow_on(*a) > 0)
        .map(|&(_, e)| e)
        .collect();
    let mut into_x = witness.iter().filter(|e| e.to == x).count();
    for u in t.dominators(x).iter() {
        if into_x >= k {
            break;
        }
        if witness.insert(Edge::new(u, x.0)) {
            into_x += 1;
        }
    }
    Some(witness)
}
