//! Tournament solutions: Copeland, top cycle, uncovered set, k-kings and the
//! Banks set.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::AltSet;
use crate::error::{Error, Result};
use crate::tournament::{AlternativeId, Tournament};

/// Default size limit for exact Banks-set computation.
pub const BANKS_GUARD: usize = 16;

/// Winner sets are plain alternative sets; every solution returns a nonempty one.
pub type WinnerSet = AltSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SolutionId {
    Co,
    Tc,
    Uc,
    Kings(usize),
    Ba,
}

impl SolutionId {
    /// The solutions used by default in experiments.
    pub const FAST: [SolutionId; 4] = [
        SolutionId::Co,
        SolutionId::Uc,
        SolutionId::Kings(3),
        SolutionId::Tc,
    ];

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SolutionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionId::Co => f.write_str("co"),
            SolutionId::Tc => f.write_str("tc"),
            SolutionId::Uc => f.write_str("uc"),
            SolutionId::Kings(k) => write!(f, "kings{k}"),
            SolutionId::Ba => f.write_str("ba"),
        }
    }
}

impl FromStr for SolutionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "co" => Ok(SolutionId::Co),
            "tc" => Ok(SolutionId::Tc),
            "uc" => Ok(SolutionId::Uc),
            "ba" => Ok(SolutionId::Ba),
            other => other
                .strip_prefix("kings")
                .and_then(|k| k.parse().ok())
                .map(SolutionId::Kings)
                .ok_or_else(|| Error::UnknownSolution(s.to_string())),
        }
    }
}

impl TryFrom<String> for SolutionId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SolutionId> for String {
    fn from(s: SolutionId) -> String {
        s.to_string()
    }
}

pub fn copeland_set(t: &Tournament) -> WinnerSet {
    let max = t.alternatives().map(|x| t.outdegree(x)).max().unwrap_or(0);
    t.alternatives()
        .filter(|&x| t.outdegree(x) == max)
        .map(AlternativeId::index)
        .collect()
}

/// Strongly connected components in topological order of the condensation,
/// source component first.
pub fn strong_components(t: &Tournament) -> Vec<AltSet> {
    struct State<'a> {
        t: &'a Tournament,
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<AltSet>,
    }

    fn visit(s: &mut State<'_>, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for w in s.t.dominion(AlternativeId(v)).iter() {
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                Some(_) => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            let mut comp = AltSet::empty();
            loop {
                let w = s.stack.pop().expect("tarjan stack underflow");
                s.on_stack[w] = false;
                comp.insert(w);
                if w == v {
                    break;
                }
            }
            s.out.push(comp);
        }
    }

    let n = t.n();
    let mut s = State {
        t,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::with_capacity(n),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    // Tarjan emits components sink-first.
    s.out.reverse();
    s.out
}

pub fn top_cycle(t: &Tournament) -> WinnerSet {
    strong_components(t)[0]
}

pub fn uncovered_set(t: &Tournament) -> WinnerSet {
    t.alternatives()
        .filter(|&x| !is_covered(t, x))
        .map(AlternativeId::index)
        .collect()
}

/// Whether some other alternative covers `x`. Any coverer must dominate `x`.
pub fn is_covered(t: &Tournament, x: AlternativeId) -> bool {
    t.dominators(x).iter().any(|y| t.covers(AlternativeId(y), x))
}

/// Alternatives reaching all others within `k` steps. Bounds above `n-1`
/// behave like `n-1`.
pub fn k_kings(t: &Tournament, k: usize) -> Result<WinnerSet> {
    if k < 2 {
        return Err(Error::KOutOfRange { k, n: t.n() });
    }
    Ok(t.alternatives()
        .filter(|&x| t.is_king(x, k))
        .map(AlternativeId::index)
        .collect())
}

pub fn banks_set(t: &Tournament) -> Result<WinnerSet> {
    banks_set_with_guard(t, BANKS_GUARD)
}

pub fn banks_set_with_guard(t: &Tournament, guard: usize) -> Result<WinnerSet> {
    check_banks_guard(t, guard)?;
    Ok(t.alternatives()
        .filter(|&x| banks_member_unchecked(t, x))
        .map(AlternativeId::index)
        .collect())
}

/// Banks-set membership of a single alternative.
pub fn is_banks_member(t: &Tournament, x: AlternativeId, guard: usize) -> Result<bool> {
    check_banks_guard(t, guard)?;
    Ok(banks_member_unchecked(t, x))
}

fn check_banks_guard(t: &Tournament, guard: usize) -> Result<()> {
    if t.n() > guard {
        return Err(Error::GuardExceeded {
            what: "Banks set",
            n: t.n(),
            guard,
        });
    }
    Ok(())
}

/// `x` is a Banks winner iff some transitive chain topped by `x` has no
/// alternative dominating all of it. Chains grow at the bottom; the search
/// state is the pair (common dominion, common dominators).
fn banks_member_unchecked(t: &Tournament, x: AlternativeId) -> bool {
    fn search(t: &Tournament, common: AltSet, above: AltSet, failed: &mut HashSet<(AltSet, AltSet)>) -> bool {
        if above.is_empty() {
            return true;
        }
        // An alternative above the chain that also dominates every candidate
        // can never be removed.
        if above
            .iter()
            .any(|u| common.is_subset(&t.dominion(AlternativeId(u))))
        {
            return false;
        }
        if failed.contains(&(common, above)) {
            return false;
        }
        for v in common.iter() {
            let v = AlternativeId(v);
            let next_common = common.intersection(&t.dominion(v));
            let next_above = above.intersection(&t.dominators(v));
            if search(t, next_common, next_above, failed) {
                return true;
            }
        }
        failed.insert((common, above));
        false
    }
    let mut failed = HashSet::new();
    search(t, t.dominion(x), t.dominators(x), &mut failed)
}

pub fn winners(t: &Tournament, s: SolutionId) -> Result<WinnerSet> {
    match s {
        SolutionId::Co => Ok(copeland_set(t)),
        SolutionId::Tc => Ok(top_cycle(t)),
        SolutionId::Uc => Ok(uncovered_set(t)),
        SolutionId::Kings(k) if k < 3 => Err(Error::KOutOfRange { k, n: t.n() }),
        SolutionId::Kings(k) => k_kings(t, k),
        SolutionId::Ba => banks_set(t),
    }
}

/// Membership of a single alternative, cheaper than a full winner set for
/// the reachability-based solutions.
pub fn is_winner(t: &Tournament, s: SolutionId, x: AlternativeId) -> Result<bool> {
    match s {
        SolutionId::Co => Ok(copeland_set(t).contains(x.0)),
        SolutionId::Tc => Ok(t.is_king(x, t.n() - 1)),
        SolutionId::Uc => Ok(!is_covered(t, x)),
        SolutionId::Kings(k) if k < 3 => Err(Error::KOutOfRange { k, n: t.n() }),
        SolutionId::Kings(k) => Ok(t.is_king(x, k)),
        SolutionId::Ba => is_banks_member(t, x, BANKS_GUARD),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cyclone, cyclone_chain, fig2, fig4, fig5, fig7, transitive};

    fn ids(s: AltSet) -> Vec<usize> {
        s.iter().collect()
    }

    #[test]
    fn names_roundtrip() {
        for s in [
            SolutionId::Co,
            SolutionId::Tc,
            SolutionId::Uc,
            SolutionId::Kings(3),
            SolutionId::Kings(12),
            SolutionId::Ba,
        ] {
            assert_eq!(s.to_string().parse::<SolutionId>().unwrap(), s);
        }
        assert!("kings".parse::<SolutionId>().is_err());
        assert!("xyz".parse::<SolutionId>().is_err());
    }

    #[test]
    fn copeland_examples() {
        let f = fig2();
        assert_eq!(ids(copeland_set(&f.tournament)), vec![f.alt("z").0]);
        assert_eq!(ids(copeland_set(&transitive(4))), vec![0]);
        assert_eq!(copeland_set(&cyclone(5)).len(), 5);
    }

    #[test]
    fn top_cycle_examples() {
        assert_eq!(ids(top_cycle(&transitive(5))), vec![0]);
        assert_eq!(top_cycle(&cyclone(7)).len(), 7);
        let chain = cyclone_chain(3, 9).unwrap();
        assert_eq!(top_cycle(&chain.tournament).len(), 27);
        assert_eq!(strong_components(&transitive(4)).len(), 4);
    }

    #[test]
    fn uncovered_examples() {
        assert_eq!(uncovered_set(&fig4().tournament).len(), 7);
        let f = fig5();
        let uc = uncovered_set(&f.tournament);
        assert!(uc.contains(f.alt("x").0) && uc.contains(f.alt("y4").0));
        assert_eq!(ids(uncovered_set(&transitive(4))), vec![0]);
    }

    #[test]
    fn kings_examples() {
        let f = fig7(3, 5, 4).unwrap();
        let kings = k_kings(&f.tournament, 3).unwrap();
        assert!(kings.contains(f.alt("x").0) && kings.contains(f.alt("y").0));
        assert_eq!(ids(k_kings(&transitive(5), 3).unwrap()), vec![0]);
        assert!(k_kings(&transitive(5), 1).is_err());
        assert!(winners(&transitive(5), SolutionId::Kings(2)).is_err());
    }

    #[test]
    fn banks_examples() {
        let f = fig4();
        let ba = banks_set(&f.tournament).unwrap();
        assert!(ba.contains(f.alt("g").0) && ba.contains(f.alt("d").0));
        let f = fig5();
        let ba = banks_set(&f.tournament).unwrap();
        assert!(ba.contains(f.alt("x").0) && ba.contains(f.alt("y4").0));
        assert_eq!(ids(banks_set(&transitive(3)).unwrap()), vec![0]);
        assert!(banks_set(&transitive(17)).unwrap_err().is_guard());
        assert_eq!(banks_set(&cyclone(7)).unwrap().len(), 7);
    }
}
