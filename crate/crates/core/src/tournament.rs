//! Tournament representation and the basic dominance relations.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{AltSet, MAX_ALTERNATIVES};
use crate::error::{Error, Result};

/// Index of an alternative within a tournament.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlternativeId(pub usize);

impl AlternativeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for AlternativeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for AlternativeId {
    fn from(i: usize) -> Self {
        AlternativeId(i)
    }
}

/// A directed edge `from -> to`, meaning `from` dominates `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: AlternativeId,
    pub to: AlternativeId,
}

impl Edge {
    pub fn new(from: usize, to: usize) -> Self {
        debug_assert_ne!(from, to);
        Edge {
            from: AlternativeId(from),
            to: AlternativeId(to),
        }
    }

    pub fn reversed(self) -> Self {
        Edge {
            from: self.to,
            to: self.from,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

/// A set of tournament edges to be reversed together.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReversalSet {
    edges: BTreeSet<Edge>,
}

impl ReversalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }
}

impl FromIterator<Edge> for ReversalSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        ReversalSet {
            edges: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for ReversalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.edges {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CondorcetStatus {
    Winner,
    Loser,
    Neither,
}

/// A complete asymmetric dominance relation over `n >= 2` alternatives.
///
/// Row `i` of `dominion` holds the alternatives dominated by `i`; `dominators`
/// is kept as the transposed view so that both neighbourhoods are O(1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    dominion: Vec<AltSet>,
    dominators: Vec<AltSet>,
}

impl Tournament {
    /// Builds a tournament from an `n x n` matrix where `adjacency[i][j]`
    /// is true iff `i` dominates `j`.
    pub fn from_matrix(n: usize, adjacency: &[Vec<bool>]) -> Result<Self> {
        check_size(n)?;
        if adjacency.len() != n || adjacency.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTournament(format!(
                "adjacency matrix must be {n}x{n}"
            )));
        }
        let mut dominion = vec![AltSet::empty(); n];
        for (i, row) in adjacency.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b {
                    dominion[i].insert(j);
                }
            }
        }
        Self::from_dominions(dominion)
    }

    /// Builds a tournament from per-alternative dominion sets.
    pub fn from_dominions(dominion: Vec<AltSet>) -> Result<Self> {
        let n = dominion.len();
        check_size(n)?;
        let mut dominators = vec![AltSet::empty(); n];
        for i in 0..n {
            if dominion[i].contains(i) {
                return Err(Error::InvalidTournament(format!(
                    "alternative {i} dominates itself"
                )));
            }
            if !dominion[i].is_subset(&AltSet::full(n)) {
                return Err(Error::InvalidTournament(format!(
                    "row {i} references alternatives beyond n={n}"
                )));
            }
            for j in dominion[i].iter() {
                dominators[j].insert(i);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                match (dominion[i].contains(j), dominion[j].contains(i)) {
                    (true, true) => {
                        return Err(Error::InvalidTournament(format!(
                            "pair ({i},{j}) is oriented both ways"
                        )))
                    }
                    (false, false) => {
                        return Err(Error::InvalidTournament(format!(
                            "pair ({i},{j}) has no orientation"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(Tournament {
            n,
            dominion,
            dominators,
        })
    }

    /// Builds a tournament where `i` dominates `j` iff `beats(i, j)`, for `i < j`.
    pub fn from_fn(n: usize, mut beats: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_size(n)?;
        let mut dominion = vec![AltSet::empty(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if beats(i, j) {
                    dominion[i].insert(j);
                } else {
                    dominion[j].insert(i);
                }
            }
        }
        Self::from_dominions(dominion)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, `n(n-1)/2`.
    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn alternatives(&self) -> impl Iterator<Item = AlternativeId> {
        (0..self.n).map(AlternativeId)
    }

    pub fn all(&self) -> AltSet {
        AltSet::full(self.n)
    }

    #[inline]
    pub fn dominates(&self, x: AlternativeId, y: AlternativeId) -> bool {
        self.dominion[x.0].contains(y.0)
    }

    /// D(x): the alternatives dominated by `x`.
    #[inline]
    pub fn dominion(&self, x: AlternativeId) -> AltSet {
        self.dominion[x.0]
    }

    /// The alternatives dominating `x`.
    #[inline]
    pub fn dominators(&self, x: AlternativeId) -> AltSet {
        self.dominators[x.0]
    }

    #[inline]
    pub fn outdegree(&self, x: AlternativeId) -> usize {
        self.dominion[x.0].len()
    }

    #[inline]
    pub fn indegree(&self, x: AlternativeId) -> usize {
        self.dominators[x.0].len()
    }

    /// Per-alternative `(outdegree, indegree)`.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        self.alternatives()
            .map(|x| (self.outdegree(x), self.indegree(x)))
            .collect()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.from != e.to && e.from.0 < self.n && e.to.0 < self.n && self.dominates(e.from, e.to)
    }

    /// All edges, ordered by `(from, to)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in self.dominion[i].iter() {
                out.push(Edge::new(i, j));
            }
        }
        out
    }

    /// True iff `D(y) ⊆ D(x)`. Requires `x != y`.
    pub fn covers(&self, x: AlternativeId, y: AlternativeId) -> bool {
        debug_assert_ne!(x, y);
        self.dominion[y.0].is_subset(&self.dominion[x.0])
    }

    /// Alternatives reachable from `x` by a directed path of length at most `k`.
    /// `x` itself is never included.
    pub fn reach_within(&self, x: AlternativeId, k: usize) -> AltSet {
        let mut reached = self.dominion[x.0];
        let mut frontier = reached;
        for _ in 1..k {
            let mut next = AltSet::empty();
            for v in frontier.iter() {
                next = next.union(&self.dominion[v]);
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

    /// True iff `x` reaches every other alternative within `k` steps.
    pub fn is_king(&self, x: AlternativeId, k: usize) -> bool {
        self.reach_within(x, k).len() == self.n - 1
    }

    pub fn condorcet_status(&self, x: AlternativeId) -> CondorcetStatus {
        match self.outdegree(x) {
            d if d == self.n - 1 => CondorcetStatus::Winner,
            0 => CondorcetStatus::Loser,
            _ => CondorcetStatus::Neither,
        }
    }

    pub fn condorcet_winner(&self) -> Option<AlternativeId> {
        self.alternatives().find(|&x| self.outdegree(x) == self.n - 1)
    }

    /// Flips a single present edge in place.
    pub(crate) fn flip(&mut self, e: Edge) {
        let (u, v) = (e.from.0, e.to.0);
        debug_assert!(self.dominion[u].contains(v));
        self.dominion[u].remove(v);
        self.dominion[v].insert(u);
        self.dominators[v].remove(u);
        self.dominators[u].insert(v);
    }

    /// The tournament obtained by reversing every edge of `r`.
    pub fn reverse(&self, r: &ReversalSet) -> Result<Tournament> {
        for e in r.iter() {
            if !self.has_edge(*e) {
                return Err(Error::EdgeNotPresent(*e));
            }
        }
        let mut out = self.clone();
        for e in r.iter() {
            out.flip(*e);
        }
        Ok(out)
    }

    /// The tournament obtained by reversing a single present edge.
    pub fn reverse_edge(&self, e: Edge) -> Result<Tournament> {
        if !self.has_edge(e) {
            return Err(Error::EdgeNotPresent(e));
        }
        let mut out = self.clone();
        out.flip(e);
        Ok(out)
    }

    /// Adjacency as a dense boolean matrix.
    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.dominion[i].contains(j)).collect())
            .collect()
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={}", self.n)?;
        for i in 0..self.n {
            write!(f, "; {i}>{:?}", self.dominion[i])?;
        }
        f.write_str(")")
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidTournament(format!(
            "need at least 2 alternatives, got {n}"
        )));
    }
    if n > MAX_ALTERNATIVES {
        return Err(Error::InvalidTournament(format!(
            "at most {MAX_ALTERNATIVES} alternatives supported, got {n}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cyclone, transitive};

    fn a(i: usize) -> AlternativeId {
        AlternativeId(i)
    }

    #[test]
    fn three_cycle_is_valid() {
        let m = vec![
            vec![false, true, false],
            vec![false, false, true],
            vec![true, false, false],
        ];
        let t = Tournament::from_matrix(3, &m).unwrap();
        assert!(t.dominates(a(0), a(1)));
        assert!(t.dominates(a(2), a(0)));
    }

    #[test]
    fn rejects_doubly_oriented_pair() {
        let m = vec![
            vec![false, true, false],
            vec![true, false, true],
            vec![true, false, false],
        ];
        assert!(matches!(
            Tournament::from_matrix(3, &m),
            Err(Error::InvalidTournament(_))
        ));
    }

    #[test]
    fn rejects_missing_pair() {
        let m = vec![
            vec![false, false, false],
            vec![false, false, true],
            vec![true, false, false],
        ];
        assert!(Tournament::from_matrix(3, &m).is_err());
    }

    #[test]
    fn rejects_diagonal_and_tiny() {
        let m = vec![vec![true, true], vec![false, false]];
        assert!(Tournament::from_matrix(2, &m).is_err());
        assert!(Tournament::from_matrix(1, &[vec![false]]).is_err());
        assert!(Tournament::from_matrix(2, &[vec![false, true]]).is_err());
    }

    #[test]
    fn reverse_empty_and_involution() {
        let t = transitive(4);
        assert_eq!(t.reverse(&ReversalSet::new()).unwrap(), t);
        let e = Edge::new(0, 2);
        let once = t.reverse_edge(e).unwrap();
        assert_ne!(once, t);
        assert_eq!(once.reverse_edge(e.reversed()).unwrap(), t);
    }

    #[test]
    fn reverse_top_edge_of_transitive_three() {
        let t = transitive(3);
        let r: ReversalSet = [Edge::new(0, 1)].into_iter().collect();
        let u = t.reverse(&r).unwrap();
        assert!(u.dominates(a(1), a(0)));
        assert!(u.dominates(a(0), a(2)));
        assert!(u.dominates(a(1), a(2)));
        assert_eq!(u.condorcet_winner(), Some(a(1)));
        // Brute comparison against the edge list.
        let mut expected = t.edges();
        expected.retain(|e| *e != Edge::new(0, 1));
        expected.push(Edge::new(1, 0));
        expected.sort();
        assert_eq!(u.edges(), expected);
        // input untouched
        assert!(t.dominates(a(0), a(1)));
    }

    #[test]
    fn reverse_rejects_absent_edge() {
        let t = transitive(3);
        let r: ReversalSet = [Edge::new(2, 0)].into_iter().collect();
        match t.reverse(&r) {
            Err(Error::EdgeNotPresent(e)) => assert_eq!(e, Edge::new(2, 0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cyclone_is_regular() {
        let t = cyclone(5);
        for (out, inn) in t.degrees() {
            assert_eq!(out, 2);
            assert_eq!(inn, 2);
        }
    }

    #[test]
    fn covering_in_transitive_chain() {
        let t = transitive(3);
        assert!(t.covers(a(0), a(1)));
        assert!(!t.covers(a(1), a(0)));
    }

    #[test]
    fn reach_within_transitive_top() {
        let t = transitive(3);
        assert_eq!(t.reach_within(a(0), 1).iter().collect::<Vec<_>>(), vec![1, 2]);
        assert!(t.reach_within(a(2), 2).is_empty());
    }

    #[test]
    fn condorcet_statuses() {
        let t = transitive(4);
        assert_eq!(t.condorcet_status(a(0)), CondorcetStatus::Winner);
        assert_eq!(t.condorcet_status(a(3)), CondorcetStatus::Loser);
        assert_eq!(t.condorcet_status(a(1)), CondorcetStatus::Neither);
        let c = cyclone(5);
        assert!(c
            .alternatives()
            .all(|x| c.condorcet_status(x) == CondorcetStatus::Neither));
    }
}
