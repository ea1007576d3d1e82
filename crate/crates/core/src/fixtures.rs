//! Named example tournaments: structured families plus the hand-built
//! counterexamples used by the verification suites.

use crate::bits::AltSet;
use crate::error::{Error, Result};
use crate::tournament::{AlternativeId, Tournament};

/// A tournament together with human-readable labels for its alternatives.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub tournament: Tournament,
    pub labels: Vec<String>,
}

impl Fixture {
    /// Looks up an alternative by label. Panics on unknown labels.
    pub fn alt(&self, label: &str) -> AlternativeId {
        self.find(label)
            .unwrap_or_else(|| panic!("fixture {} has no alternative `{label}`", self.name))
    }

    pub fn find(&self, label: &str) -> Option<AlternativeId> {
        self.labels.iter().position(|l| l == label).map(AlternativeId)
    }

    pub fn label(&self, x: AlternativeId) -> &str {
        &self.labels[x.0]
    }
}

pub const FIXTURE_NAMES: &[&str] = &[
    "fig2",
    "fig4",
    "fig5",
    "fig7",
    "cyclone",
    "cyclone_chain",
    "transitive",
    "regular_plus_sink",
];

/// Builds a named fixture.
///
/// | name | params |
/// |------|--------|
/// | `fig2`, `fig4`, `fig5` | none |
/// | `fig7` | `k, alpha, beta` (default `3, 5, 4`; `alpha` odd) |
/// | `cyclone` | odd `m >= 3` |
/// | `cyclone_chain` | `l, m` with `m` odd and `m > 2l + 1` |
/// | `transitive` | `n >= 2` |
/// | `regular_plus_sink` | `k >= 1` |
pub fn build_fixture(name: &str, params: &[usize]) -> Result<Fixture> {
    let expect = |count: usize| -> Result<()> {
        if params.len() == count {
            Ok(())
        } else {
            Err(Error::InvalidFixture(format!(
                "{name} takes {count} parameter(s), got {}",
                params.len()
            )))
        }
    };
    let numbered = |prefix: &str, n: usize| (0..n).map(|i| format!("{prefix}{i}")).collect();
    let fixture = match name {
        "fig2" => {
            expect(0)?;
            fig2()
        }
        "fig4" => {
            expect(0)?;
            fig4()
        }
        "fig5" => {
            expect(0)?;
            fig5()
        }
        "fig7" => {
            let (k, alpha, beta) = match params {
                [] => (3, 5, 4),
                [k, a, b] => (*k, *a, *b),
                _ => return Err(Error::InvalidFixture("fig7 takes k, alpha, beta".into())),
            };
            fig7(k, alpha, beta)?
        }
        "cyclone" => {
            expect(1)?;
            Fixture {
                name: name.into(),
                tournament: try_cyclone(params[0])?,
                labels: numbered("c", params[0]),
            }
        }
        "cyclone_chain" => {
            expect(2)?;
            cyclone_chain(params[0], params[1])?
        }
        "transitive" => {
            expect(1)?;
            Fixture {
                name: name.into(),
                tournament: Tournament::from_fn(params[0], |_, _| true)
                    .map_err(|e| Error::InvalidFixture(e.to_string()))?,
                labels: numbered("t", params[0]),
            }
        }
        "regular_plus_sink" => {
            expect(1)?;
            regular_plus_sink(params[0])?
        }
        other => return Err(Error::UnknownFixture(other.into())),
    };
    Ok(fixture)
}

/// Transitive tournament `0 > 1 > ... > n-1`. Panics if `n < 2`.
pub fn transitive(n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| true).expect("transitive tournament needs n >= 2")
}

/// Regular tournament on odd `m`: each alternative dominates its `(m-1)/2`
/// cyclic successors. Panics on invalid `m`.
pub fn cyclone(m: usize) -> Tournament {
    try_cyclone(m).expect("cyclone needs odd m >= 3")
}

fn try_cyclone(m: usize) -> Result<Tournament> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidFixture(format!(
            "cyclone size must be odd and >= 3, got {m}"
        )));
    }
    let half = (m - 1) / 2;
    Tournament::from_fn(m, |i, j| j - i <= half)
}

fn from_pairs(labels: &[&str], wins: &[(&str, &[&str])]) -> Tournament {
    let idx = |l: &str| labels.iter().position(|x| *x == l).unwrap();
    let mut dominion = vec![AltSet::empty(); labels.len()];
    for (winner, losers) in wins {
        for loser in *losers {
            dominion[idx(winner)].insert(idx(loser));
        }
    }
    Tournament::from_dominions(dominion).expect("hand-built fixture must be a tournament")
}

fn fixture(name: &str, labels: &[&str], wins: &[(&str, &[&str])]) -> Fixture {
    Fixture {
        name: name.into(),
        tournament: from_pairs(labels, wins),
        labels: labels.iter().map(|s| s.to_string()).collect(),
    }
}

/// Seven alternatives where `x` and `y3` tie on outdegree but differ in
/// their constructive Copeland margin.
pub fn fig2() -> Fixture {
    fixture(
        "fig2",
        &["x", "z", "y1", "y2", "y3", "y4", "y5"],
        &[
            ("x", &["y1", "y2", "z"]),
            ("z", &["y1", "y2", "y3", "y4", "y5"]),
            ("y1", &["y2", "y3"]),
            ("y2", &["y3", "y4"]),
            ("y3", &["y4", "y5", "x"]),
            ("y4", &["y5", "y1", "x"]),
            ("y5", &["y1", "y2", "x"]),
        ],
    )
}

/// Seven alternatives of equal outdegree, all uncovered.
pub fn fig4() -> Fixture {
    fixture(
        "fig4",
        &["a", "b", "c", "d", "e", "f", "g"],
        &[
            ("a", &["b", "d", "g"]),
            ("b", &["c", "e", "g"]),
            ("c", &["a", "f", "g"]),
            ("d", &["e", "b", "c"]),
            ("e", &["f", "a", "c"]),
            ("f", &["d", "a", "b"]),
            ("g", &["d", "e", "f"]),
        ],
    )
}

/// Nine alternatives where `x` out-scores `y4` but has the smaller
/// uncovered-set margin.
pub fn fig5() -> Fixture {
    fixture(
        "fig5",
        &["x", "z", "y1", "y2", "y3", "y4", "y5", "y6", "y7"],
        &[
            ("x", &["y1", "y2", "y3", "y4"]),
            ("z", &["x", "y2", "y3", "y4"]),
            ("y1", &["y2", "y3", "y4", "z"]),
            ("y2", &["y3", "y4"]),
            ("y3", &["y4"]),
            ("y4", &["y5", "y6", "y7"]),
            ("y5", &["y6", "y1", "y2", "y3", "z", "x"]),
            ("y6", &["y7", "y1", "y2", "y3", "z", "x"]),
            ("y7", &["y5", "y1", "y2", "y3", "z", "x"]),
        ],
    )
}

/// The k-kings construction: singletons `x, y, z, t`, cyclone supernodes
/// `A1..A(k-1)` of size `alpha` and transitive supernodes `B1..B(k-2)` of
/// size `beta`.
///
/// Alternatives are laid out in columns `x,y | A1,B1 | ... | A(k-2),B(k-2) |
/// A(k-1) | z | t`. Listed edges are placed explicitly; every other pair
/// between distinct groups points from the later column to the earlier one.
pub fn fig7(k: usize, alpha: usize, beta: usize) -> Result<Fixture> {
    if k < 3 {
        return Err(Error::InvalidFixture(format!("fig7 needs k >= 3, got {k}")));
    }
    if alpha.is_multiple_of(2) || alpha == 0 {
        return Err(Error::InvalidFixture(format!(
            "fig7 needs odd alpha >= 1, got {alpha}"
        )));
    }
    if beta == 0 {
        return Err(Error::InvalidFixture("fig7 needs beta >= 1".into()));
    }

    // Groups: 0 = x, 1 = y, then A_i / B_i, then z, t.
    struct Group {
        label: String,
        column: usize,
        members: Vec<usize>,
        internal: Internal,
    }
    enum Internal {
        Single,
        Cyclone,
        Transitive,
    }
    let mut groups: Vec<Group> = Vec::new();
    let mut next = 0usize;
    let mut add = |groups: &mut Vec<Group>, label: String, column: usize, size: usize, internal| {
        groups.push(Group {
            label,
            column,
            members: (next..next + size).collect(),
            internal,
        });
        next += size;
        groups.len() - 1
    };
    let gx = add(&mut groups, "x".into(), 0, 1, Internal::Single);
    let gy = add(&mut groups, "y".into(), 0, 1, Internal::Single);
    let mut ga = Vec::new();
    let mut gb = Vec::new();
    for i in 1..k {
        ga.push(add(&mut groups, format!("A{i}"), i, alpha, Internal::Cyclone));
        if i <= k - 2 {
            gb.push(add(&mut groups, format!("B{i}"), i, beta, Internal::Transitive));
        }
    }
    let gz = add(&mut groups, "z".into(), k, 1, Internal::Single);
    let gt = add(&mut groups, "t".into(), k + 1, 1, Internal::Single);
    let n = next;

    let mut drawn: Vec<(usize, usize)> = vec![(gy, gx), (gx, ga[0]), (gy, gb[0])];
    for i in 0..k - 2 {
        drawn.push((ga[i], ga[i + 1]));
        drawn.push((ga[i], gb[i]));
    }
    for i in 0..k.saturating_sub(3) {
        drawn.push((gb[i], gb[i + 1]));
    }
    let last_a = ga[k - 2];
    drawn.push((last_a, gz));
    drawn.push((last_a, gt));
    drawn.push((gb[k - 3], gz));
    drawn.push((gz, gt));

    let mut dominion = vec![AltSet::empty(); n];
    for g in &groups {
        let m = g.members.len();
        for (a, &u) in g.members.iter().enumerate() {
            for (b, &v) in g.members.iter().enumerate() {
                let wins = match g.internal {
                    Internal::Single => false,
                    Internal::Transitive => a < b,
                    Internal::Cyclone => a != b && (b + m - a) % m <= (m - 1) / 2,
                };
                if wins {
                    dominion[u].insert(v);
                }
            }
        }
    }
    for (gi, g) in groups.iter().enumerate() {
        for (hi, h) in groups.iter().enumerate() {
            if gi == hi {
                continue;
            }
            let wins = if drawn.contains(&(gi, hi)) {
                true
            } else if drawn.contains(&(hi, gi)) {
                false
            } else {
                assert_ne!(g.column, h.column, "undrawn pair within a column");
                g.column > h.column
            };
            if wins {
                for &u in &g.members {
                    for &v in &h.members {
                        dominion[u].insert(v);
                    }
                }
            }
        }
    }

    let mut labels = vec![String::new(); n];
    for g in &groups {
        if g.members.len() == 1 && matches!(g.internal, Internal::Single) {
            labels[g.members[0]] = g.label.clone();
        } else {
            for (i, &u) in g.members.iter().enumerate() {
                labels[u] = format!("{}_{}", g.label, i);
            }
        }
    }
    Ok(Fixture {
        name: "fig7".into(),
        tournament: Tournament::from_dominions(dominion)?,
        labels,
    })
}

/// `l` cyclones of size `m` chained transitively, plus backward edges from
/// each distinguished alternative `v_i` (the first member of block `i`) to
/// `v_1`.
pub fn cyclone_chain(l: usize, m: usize) -> Result<Fixture> {
    if l < 1 {
        return Err(Error::InvalidFixture("cyclone_chain needs l >= 1".into()));
    }
    if m.is_multiple_of(2) || m <= 2 * l + 1 {
        return Err(Error::InvalidFixture(format!(
            "cyclone_chain needs odd m > 2l+1, got l={l}, m={m}"
        )));
    }
    let half = (m - 1) / 2;
    let t = Tournament::from_fn(l * m, |i, j| {
        let (bi, bj) = (i / m, j / m);
        if bi == bj {
            j - i <= half
        } else {
            // Earlier blocks beat later ones, except v_i -> v_1.
            !(bi == 0 && i % m == 0 && j % m == 0)
        }
    })?;
    let labels = (0..l * m)
        .map(|i| {
            if i % m == 0 {
                format!("v{}", i / m + 1)
            } else {
                format!("T{}_{}", i / m + 1, i % m)
            }
        })
        .collect();
    Ok(Fixture {
        name: "cyclone_chain".into(),
        tournament: t,
        labels,
    })
}

/// Block index (1-based) of an alternative in [`cyclone_chain`].
pub fn cyclone_chain_block(m: usize, x: AlternativeId) -> usize {
    x.0 / m + 1
}

/// A cyclone on `2k+1` alternatives plus one alternative `x` dominated by all.
pub fn regular_plus_sink(k: usize) -> Result<Fixture> {
    if k < 1 {
        return Err(Error::InvalidFixture("regular_plus_sink needs k >= 1".into()));
    }
    let m = 2 * k + 1;
    let half = k;
    let t = Tournament::from_fn(m + 1, |i, j| j == m || j - i <= half)?;
    let mut labels: Vec<String> = (0..m).map(|i| format!("c{i}")).collect();
    labels.push("x".into());
    Ok(Fixture {
        name: "regular_plus_sink".into(),
        tournament: t,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outdeg(f: &Fixture, l: &str) -> usize {
        f.tournament.outdegree(f.alt(l))
    }

    #[test]
    fn copeland_fixture_degrees() {
        let f = fig2();
        assert_eq!(outdeg(&f, "z"), 5);
        for l in ["x", "y3", "y4", "y5"] {
            assert_eq!(outdeg(&f, l), 3, "{l}");
        }
        assert_eq!(outdeg(&f, "y1"), 2);
        assert_eq!(outdeg(&f, "y2"), 2);
    }

    #[test]
    fn regular_seven_is_regular() {
        let f = fig4();
        assert!(f
            .tournament
            .alternatives()
            .all(|x| f.tournament.outdegree(x) == 3));
    }

    #[test]
    fn regular_seven_d_reaches_b_only_directly() {
        let f = fig4();
        let t = &f.tournament;
        let (d, b) = (f.alt("d"), f.alt("b"));
        assert!(t.dominates(d, b));
        let two_step = t
            .dominion(d)
            .iter()
            .filter(|&v| t.dominion(AlternativeId(v)).contains(b.0));
        assert_eq!(two_step.count(), 0);
        assert!(t.reach_within(d, 2).contains(b.0));
    }

    #[test]
    fn nine_alternatives_degrees_and_cover() {
        let f = fig5();
        let expected = [
            ("x", 4),
            ("z", 4),
            ("y1", 4),
            ("y2", 2),
            ("y3", 1),
            ("y4", 3),
            ("y5", 6),
            ("y6", 6),
            ("y7", 6),
        ];
        for (l, d) in expected {
            assert_eq!(outdeg(&f, l), d, "{l}");
        }
        assert!(f.tournament.covers(f.alt("x"), f.alt("y2")));
    }

    #[test]
    fn kings_construction_degrees() {
        let f = fig7(3, 5, 4).unwrap();
        assert_eq!(f.tournament.n(), 4 + 2 * 5 + 4);
        assert_eq!(outdeg(&f, "x"), 5);
        assert_eq!(outdeg(&f, "y"), 5);
        for k in 3..6 {
            let f = fig7(k, 3, 6).unwrap();
            assert_eq!(outdeg(&f, "x"), 3);
            assert_eq!(outdeg(&f, "y"), 7);
        }
    }

    #[test]
    fn kings_construction_rejects_even_alpha() {
        assert!(fig7(3, 4, 4).is_err());
        assert!(fig7(2, 5, 4).is_err());
    }

    #[test]
    fn cyclone_chain_shape() {
        let f = cyclone_chain(3, 9).unwrap();
        let t = &f.tournament;
        assert_eq!(t.n(), 27);
        let v1 = f.alt("v1");
        assert!(t.dominates(f.alt("v2"), v1));
        assert!(t.dominates(f.alt("v3"), v1));
        assert!(t.dominates(v1, f.alt("T2_1")));
        assert!(cyclone_chain(3, 7).is_err());
        assert!(cyclone_chain(3, 10).is_err());
    }

    #[test]
    fn regular_plus_sink_shape() {
        let f = regular_plus_sink(3).unwrap();
        let t = &f.tournament;
        assert_eq!(t.n(), 8);
        assert_eq!(t.outdegree(f.alt("x")), 0);
        for i in 0..7 {
            assert_eq!(t.outdegree(AlternativeId(i)), 4);
        }
    }

    #[test]
    fn build_fixture_dispatch() {
        assert_eq!(build_fixture("cyclone", &[5]).unwrap().tournament, cyclone(5));
        assert!(build_fixture("cyclone", &[4]).is_err());
        assert!(build_fixture("nope", &[]).is_err());
        assert!(build_fixture("fig2", &[1]).is_err());
        assert_eq!(build_fixture("fig7", &[]).unwrap().tournament.n(), 18);
    }
}
