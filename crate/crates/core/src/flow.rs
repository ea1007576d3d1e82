//! Unit-capacity max-flow, tournament min cuts (plain and length-bounded),
//! and a small min-cost flow used by the Copeland routines.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::tournament::{AlternativeId, Edge, ReversalSet, Tournament};

/// Capacity used for uncuttable arcs in a network built from an
/// `n`-alternative tournament; exceeds any finite cut.
pub fn infinite_capacity(n: usize) -> usize {
    n * n + 1
}

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: usize,
    label: Option<Edge>,
}

/// A directed network. Arcs may carry the tournament edge they stand for;
/// only labelled arcs are reported in cuts.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    // arcs[2i] is the forward arc, arcs[2i+1] its residual twin.
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: usize, label: Option<Edge>) {
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, label });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            label: None,
        });
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub value: usize,
    pub cut_edges: ReversalSet,
}

/// Dinic's algorithm. The returned cut consists of the saturated labelled
/// arcs leaving the residual-reachable side of the source.
pub fn max_flow_unit(net: &FlowNetwork) -> Result<CutResult> {
    if net.source == net.sink {
        return Err(Error::SameEndpoints);
    }
    let mut res: Vec<usize> = net.arcs.iter().map(|a| a.cap).collect();
    let mut flow = 0usize;
    let mut level = vec![usize::MAX; net.nodes];
    let mut cursor = vec![0usize; net.nodes];
    while bfs_levels(net, &res, &mut level) {
        cursor.iter_mut().for_each(|c| *c = 0);
        loop {
            let pushed = augment(net, &mut res, &level, &mut cursor, net.source, usize::MAX);
            if pushed == 0 {
                break;
            }
            flow += pushed;
        }
    }

    // Residual reachability from the source.
    bfs_levels(net, &res, &mut level);
    let mut cut_edges = ReversalSet::new();
    let mut cut_cap = 0;
    for (u, arcs) in net.adj.iter().enumerate() {
        if level[u] == usize::MAX {
            continue;
        }
        for &ai in arcs {
            let arc = &net.arcs[ai];
            if ai % 2 == 0 && level[arc.to] == usize::MAX {
                cut_cap += arc.cap;
                if let Some(e) = arc.label {
                    cut_edges.insert(e);
                }
            }
        }
    }
    debug_assert_eq!(cut_cap, flow);
    Ok(CutResult {
        value: flow,
        cut_edges,
    })
}

fn bfs_levels(net: &FlowNetwork, res: &[usize], level: &mut [usize]) -> bool {
    level.iter_mut().for_each(|l| *l = usize::MAX);
    level[net.source] = 0;
    let mut queue = VecDeque::from([net.source]);
    while let Some(u) = queue.pop_front() {
        for &ai in &net.adj[u] {
            let v = net.arcs[ai].to;
            if res[ai] > 0 && level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    level[net.sink] != usize::MAX
}

fn augment(
    net: &FlowNetwork,
    res: &mut [usize],
    level: &[usize],
    cursor: &mut [usize],
    u: usize,
    limit: usize,
) -> usize {
    if u == net.sink {
        return limit;
    }
    while cursor[u] < net.adj[u].len() {
        let ai = net.adj[u][cursor[u]];
        let v = net.arcs[ai].to;
        if res[ai] > 0 && level[v] == level[u] + 1 {
            let pushed = augment(net, res, level, cursor, v, limit.min(res[ai]));
            if pushed > 0 {
                res[ai] -= pushed;
                res[ai ^ 1] += pushed;
                return pushed;
            }
        }
        cursor[u] += 1;
    }
    0
}

/// Length bound for [`mincut_bounded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutMode {
    /// Paths of length at most 2.
    Len2,
    /// Paths of length at most 3.
    Len3,
    /// All paths.
    Unbounded,
}

impl CutMode {
    /// Length bound used by a solution whose winners reach everything
    /// within `k` steps.
    pub fn for_kings(k: usize, n: usize) -> Option<CutMode> {
        match k {
            2 => Some(CutMode::Len2),
            3 => Some(CutMode::Len3),
            k if k >= n - 1 => Some(CutMode::Unbounded),
            _ => None,
        }
    }
}

/// Minimum set of edges whose removal leaves no `x -> y` path within the
/// mode's length bound.
pub fn mincut_bounded(
    t: &Tournament,
    x: AlternativeId,
    y: AlternativeId,
    mode: CutMode,
) -> Result<CutResult> {
    if x == y {
        return Err(Error::SameEndpoints);
    }
    match mode {
        CutMode::Len2 => Ok(cut_len2(t, x, y)),
        CutMode::Len3 => cut_len3(t, x, y),
        CutMode::Unbounded => cut_unbounded(t, x, y),
    }
}

fn cut_len2(t: &Tournament, x: AlternativeId, y: AlternativeId) -> CutResult {
    // Paths of length <= 2 are pairwise edge-disjoint, so hit each one once.
    let mut cut_edges = ReversalSet::new();
    if t.dominates(x, y) {
        cut_edges.insert(Edge { from: x, to: y });
    }
    for z in t.dominion(x).intersection(&t.dominators(y)).iter() {
        cut_edges.insert(Edge::new(x.0, z));
    }
    CutResult {
        value: cut_edges.len(),
        cut_edges,
    }
}

fn cut_len3(t: &Tournament, x: AlternativeId, y: AlternativeId) -> Result<CutResult> {
    let n = t.n();
    let inf = infinite_capacity(n);
    let (source, sink) = (2 * n, 2 * n + 1);
    let a = |v: usize| v;
    let b = |w: usize| n + w;
    let mut net = FlowNetwork::new(2 * n + 2, source, sink);

    let mut out = t.dominion(x);
    out.remove(y.0);
    let mut inn = t.dominators(y);
    inn.remove(x.0);

    for v in out.iter() {
        net.add_arc(source, a(v), 1, Some(Edge::new(x.0, v)));
    }
    for w in inn.iter() {
        net.add_arc(b(w), sink, 1, Some(Edge::new(w, y.0)));
    }
    for u in out.iter() {
        for w in t.dominion(AlternativeId(u)).intersection(&inn).iter() {
            net.add_arc(a(u), b(w), 1, Some(Edge::new(u, w)));
        }
    }
    for v in out.intersection(&inn).iter() {
        net.add_arc(a(v), b(v), inf, None);
    }

    let mut cut = max_flow_unit(&net)?;
    if t.dominates(x, y) {
        cut.cut_edges.insert(Edge { from: x, to: y });
        cut.value += 1;
    }
    Ok(cut)
}

fn cut_unbounded(t: &Tournament, x: AlternativeId, y: AlternativeId) -> Result<CutResult> {
    let mut net = FlowNetwork::new(t.n(), x.0, y.0);
    for e in t.edges() {
        net.add_arc(e.from.0, e.to.0, 1, Some(e));
    }
    max_flow_unit(&net)
}

/// Min-cost flow by successive shortest paths (Bellman-Ford on the residual
/// graph), for small networks with integral costs.
#[derive(Clone, Debug)]
pub struct MinCostFlow {
    nodes: usize,
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl MinCostFlow {
    pub fn new(nodes: usize) -> Self {
        MinCostFlow {
            nodes,
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    /// Adds an arc and returns its handle for [`MinCostFlow::flow_on`].
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let id = self.to.len();
        self.adj[from].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.cost.push(cost);
        self.adj[to].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
        self.cost.push(-cost);
        id
    }

    /// Pushes up to `limit` units from `s` to `t` at minimum cost.
    /// Returns `(flow, cost)`.
    pub fn run(&mut self, s: usize, t: usize, limit: i64) -> (i64, i64) {
        let (mut flow, mut total) = (0i64, 0i64);
        while flow < limit {
            let mut dist = vec![i64::MAX; self.nodes];
            let mut prev = vec![usize::MAX; self.nodes];
            let mut in_queue = vec![false; self.nodes];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                in_queue[u] = false;
                for &ai in &self.adj[u] {
                    let v = self.to[ai];
                    if self.cap[ai] > 0 && dist[u] + self.cost[ai] < dist[v] {
                        dist[v] = dist[u] + self.cost[ai];
                        prev[v] = ai;
                        if !in_queue[v] {
                            in_queue[v] = true;
                            queue.push_back(v);
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut push = limit - flow;
            let mut v = t;
            while v != s {
                let ai = prev[v];
                push = push.min(self.cap[ai]);
                v = self.to[ai ^ 1];
            }
            let mut v = t;
            while v != s {
                let ai = prev[v];
                self.cap[ai] -= push;
                self.cap[ai ^ 1] += push;
                v = self.to[ai ^ 1];
            }
            flow += push;
            total += push * dist[t];
        }
        (flow, total)
    }

    /// Flow currently routed on an arc returned by [`MinCostFlow::add_arc`].
    pub fn flow_on(&self, arc: usize) -> i64 {
        self.cap[arc + 1]
    }
}
