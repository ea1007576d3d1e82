//! Randomized and fixture-based property checks, plus two artificial
//! solutions showing that neither monotonicity condition can be dropped
//! from cover-consistency.

use rayon::prelude::*;
use serde::Serialize;

use crate::codec;
use crate::error::{Error, Result};
use crate::fixtures::{cyclone_chain, regular_plus_sink, transitive};
use crate::flow::{mincut_bounded, CutMode};
use crate::generators::{generate, GeneratorConfig, Model};
use crate::mov::{brute_force_mov, mov, mov_co, mov_tc, mov_uc, tc_formula, verify_certificate, MovValue};
use crate::rng::{mix, Xoshiro256};
use crate::solutions::{banks_set, is_winner, k_kings, winners, SolutionId, WinnerSet};
use crate::tournament::{AlternativeId, Edge, ReversalSet, Tournament};
use crate::AltSet;

/// Largest size at which Banks-set margins enter the random checks.
pub const BA_CHECK_LIMIT: usize = 7;

pub const CATALOG: &[&str] = &[
    "mov_monotonicity",
    "solution_monotonicity",
    "transfer_monotonicity",
    "cover_consistency",
    "co_degree_consistency",
    "co_bracket",
    "tc_strong_degree",
    "lemma3_identity",
    "inclusion_chain",
    "tc_nonwinner_minus_one",
    "uc_log_bound",
    "lipschitz_reversal",
    "tc_formula_agreement",
    "prop8_counterexample",
    "prop9_counterexample",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Offending tournament in TRN1 form.
    pub tournament: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    /// Random model used, or a note that the check is fixture-based.
    pub model: String,
    pub trials: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyOptions {
    pub trials: usize,
    pub seed: u64,
    pub min_n: usize,
    pub max_n: usize,
}

impl Default for PropertyOptions {
    fn default() -> Self {
        PropertyOptions {
            trials: 500,
            seed: 0,
            min_n: 3,
            max_n: 25,
        }
    }
}

/// Excludes `x` iff some outdegree-1 alternative dominates it and `n >= 4`.
pub fn s1_winners(t: &Tournament) -> WinnerSet {
    t.alternatives()
        .filter(|&x| s1_member(t, x))
        .map(AlternativeId::index)
        .collect()
}

fn s1_member(t: &Tournament, x: AlternativeId) -> bool {
    t.n() < 4 || !t.dominators(x).iter().any(|y| t.outdegree(AlternativeId(y)) == 1)
}

/// Excludes `x` iff it has outdegree 1 and another alternative has outdegree 0.
pub fn s2_winners(t: &Tournament) -> WinnerSet {
    t.alternatives()
        .filter(|&x| s2_member(t, x))
        .map(AlternativeId::index)
        .collect()
}

fn s2_member(t: &Tournament, x: AlternativeId) -> bool {
    !(t.outdegree(x) == 1 && t.alternatives().any(|y| y != x && t.outdegree(y) == 0))
}

pub fn run_property(name: &str, opts: &PropertyOptions) -> Result<PropertyReport> {
    if opts.min_n < 3 || opts.max_n < opts.min_n {
        return Err(Error::InvalidConfig(format!(
            "size range [{}, {}] is invalid",
            opts.min_n, opts.max_n
        )));
    }
    let uniform = Sampler::new(Model::Uniform, 0.5);
    let noisy = Sampler::new(Model::CondorcetNoise, 0.7);
    let report = match name {
        "mov_monotonicity" => random(name, opts, uniform, check_mov_monotonicity),
        "solution_monotonicity" => random(name, opts, noisy, check_solution_monotonicity),
        "transfer_monotonicity" => random(name, opts, noisy, check_transfer_monotonicity),
        "cover_consistency" => random(name, opts, uniform, check_cover_consistency),
        "co_degree_consistency" => random(name, opts, uniform, check_co_degree),
        "co_bracket" => random(name, opts, uniform, check_co_bracket),
        "tc_strong_degree" => random(name, opts, noisy, check_tc_strong_degree),
        "lemma3_identity" => random(name, opts, uniform, check_cut_identity),
        "inclusion_chain" => random(name, opts, noisy, check_inclusion_chain),
        "tc_nonwinner_minus_one" => random(name, opts, noisy, check_tc_nonwinner),
        "uc_log_bound" => random(name, opts, noisy, check_uc_log_bound),
        "lipschitz_reversal" => random(name, opts, uniform, check_lipschitz),
        "tc_formula_agreement" => tc_formula_agreement(opts, &[10, 20, 30, 40]),
        "prop8_counterexample" => s1_counterexample(),
        "prop9_counterexample" => s2_counterexample(),
        other => return Err(Error::UnknownProperty(other.to_string())),
    }?;
    Ok(report)
}

#[derive(Clone, Copy)]
struct Sampler {
    model: Model,
    p: f64,
}

impl Sampler {
    fn new(model: Model, p: f64) -> Self {
        Sampler { model, p }
    }

    fn describe(&self) -> String {
        match self.model {
            Model::CondorcetNoise => format!("cnoise p={}", self.p),
            m => m.name().to_string(),
        }
    }

    fn draw(&self, n: usize, seed: u64) -> Tournament {
        let mut cfg = GeneratorConfig::new(self.model, n, seed);
        cfg.p = self.p;
        generate(&cfg).expect("sampler parameters are valid")
    }
}

type Check = fn(&Tournament, &mut Xoshiro256) -> Result<Option<String>>;

fn random(name: &str, opts: &PropertyOptions, sampler: Sampler, check: Check) -> Result<PropertyReport> {
    let outcomes = (0..opts.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = Xoshiro256::seed_from(mix(opts.seed, trial as u64));
            let span = (opts.max_n - opts.min_n + 1) as u64;
            let n = opts.min_n + rng.below(span) as usize;
            let t = sampler.draw(n, rng.next_u64());
            check(&t, &mut rng).map(|v| {
                v.map(|detail| Violation {
                    tournament: codec::serialize(&t),
                    detail: format!("trial {trial}: {detail}"),
                })
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<Violation> = outcomes.into_iter().flatten().collect();
    Ok(PropertyReport {
        name: name.to_string(),
        model: sampler.describe(),
        trials: opts.trials,
        passed: violations.is_empty(),
        violations,
        notes: Vec::new(),
    })
}

fn pick(rng: &mut Xoshiro256, set: AltSet) -> Option<usize> {
    let items: Vec<usize> = set.iter().collect();
    if items.is_empty() {
        None
    } else {
        Some(items[rng.below(items.len() as u64) as usize])
    }
}

fn pick_alt(t: &Tournament, rng: &mut Xoshiro256) -> AlternativeId {
    AlternativeId(rng.below(t.n() as u64) as usize)
}

/// Solutions whose margins are checked at size `n`.
fn mov_solutions(n: usize) -> Vec<SolutionId> {
    let mut out = SolutionId::FAST.to_vec();
    if n <= BA_CHECK_LIMIT {
        out.push(SolutionId::Ba);
        if n >= 6 {
            out.push(SolutionId::Kings(4));
        }
    }
    out
}

/// Solutions whose winner sets are checked at size `n`.
fn winner_solutions(n: usize) -> Vec<SolutionId> {
    let mut out = SolutionId::FAST.to_vec();
    out.extend((4..n.saturating_sub(1)).map(SolutionId::Kings));
    if n <= 12 {
        out.push(SolutionId::Ba);
    }
    out
}

fn value(t: &Tournament, s: SolutionId, x: AlternativeId) -> Result<MovValue> {
    Ok(mov(t, s, x)?.value)
}

/// An alternative with at least one dominator, and a random dominator.
fn pick_dominated(t: &Tournament, rng: &mut Xoshiro256) -> Option<(AlternativeId, AlternativeId)> {
    for _ in 0..4 * t.n() {
        let x = pick_alt(t, rng);
        if let Some(y) = pick(rng, t.dominators(x)) {
            return Some((x, AlternativeId(y)));
        }
    }
    None
}

fn check_mov_monotonicity(t: &Tournament, rng: &mut Xoshiro256) -> Result<Option<String>> {
    let Some((x, y)) = pick_dominated(t, rng) else {
        return Ok(None);
    };
    let u = t.reverse_edge(Edge { from: y, to: x })?;
    for s in mov_solutions(t.n()) {
        let (before, after) = (value(t, s, x)?, value(&u, s, x)?);
        if after < before {
            return Ok(Some(format!(
                "{s}: reversing {y}->{x} lowers margin of {x} from {before} to {after}"
            )));
        }
    }
    Ok(None)
}

fn check_solution_monotonicity(t: &Tournament, rng: &mut Xoshiro256) -> Result<Option<String>> {
    let Some((x, y)) = pick_dominated(t, rng) else {
        return Ok(None);
    };
    let u = t.reverse_edge(Edge { from: y, to: x })?;
    for s in winner_solutions(t.n()) {
        if is_winner(t, s, x)? && !is_winner(&u, s, x)? {
            return Ok(Some(format!("{s}: {x} drops out after reversing {y}->{x}")));
        }
    }
    Ok(None)
}

fn check_transfer_monotonicity(t: &Tournament, rng: &mut Xoshiro256) -> Result<Option<String>> {
    // Need y -> z -> x with y != x.
    for _ in 0..4 * t.n() {
        let x = pick_alt(t, rng);
        let Some(z) = pick(rng, t.dominators(x)) else {
            continue;
        };
        let mut ys = t.dominators(AlternativeId(z));
        ys.remove(x.0);
        let Some(y) = pick(rng, ys) else {
            continue;
        };
        let r: ReversalSet = [Edge::new(y, z), Edge::new(z, x.0)].into_iter().collect();
        let u = t.reverse(&r)?;
        for s in winner_solutions(t.n()) {
            if is_winner(t, s, x)? && !is_winner(&u, s, x)? {
                return Ok(Some(format!(
                    "{s}: {x} drops out after transferring {z} from {y}"
                )));
            }
        }
        return Ok(None);
    }
    Ok(None)
}

fn check_cover_consistency(t: &Tournament, _: &mut Xoshiro256) -> Result<Option<String>> {
    for s in mov_solutions(t.n()) {
        let vals = t
            .alternatives()
            .map(|x| value(t, s, x))
            .collect::<Result<Vec<_>>>()?;
        for x in t.alternatives() {
            for y in t.dominion(x).iter() {
                let y = AlternativeId(y);
                if t.covers(x, y) && vals[x.0] < vals[y.0] {
                    return Ok(Some(format!(
                        "{s}: {x} covers {y} but margins are {} < {}",
                        vals[x.0], vals[y.0]
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn co_values(t: &Tournament) -> Vec<i64> {
    t.alternatives()
        .map(|x| mov_co(t, x).value.finite().expect("copeland margins are finite"))
        .collect()
}

fn check_co_degree(t: &Tournament, _: &mut Xoshiro256) -> Result<Option<String>> {
    let vals = co_values(t);
    for x in t.alternatives() {
        for y in t.alternatives() {
            if t.outdegree(x) > t.outdegree(y) && vals[x.0] < vals[y.0] {
                return Ok(Some(format!(
                    "outdeg {x} > outdeg {y} but margins {} < {}",
                    vals[x.0], vals[y.0]
                )));
            }
        }
    }
    Ok(None)
}

fn check_co_bracket(t: &Tournament, _: &mut Xoshiro256) -> Result<Option<String>> {
    let vals = co_values(t);
    let max = t.alternatives().map(|x| t.outdegree(x)).max().unwrap() as i64;
    for x in t.alternatives() {
        let delta = max - t.outdegree(x) as i64;
        if delta > 0 && !(-delta <= vals[x.0] && vals[x.0] <= -(delta - 1)) {
            return Ok(Some(format!(
                "{x}: margin {} outside [-{delta}, -{}]",
                vals[x.0],
                delta - 1
            )));
        }
    }
    Ok(None)
}

fn check_tc_strong_degree(t: &Tournament, _: &mut Xoshiro256) -> Result<Option<String>> {
    let vals: Vec<MovValue> = t.alternatives().map(|x| mov_tc(t, x).value).collect();
    for x in t.alternatives() {
        for y in t.alternatives() {
            if x != y && t.outdegree(x) >= t.outdegree(y) && vals[x.0] < vals[y.0] {
                return Ok(Some(format!(
                    "outdeg {x} >= outdeg {y} but margins {} < {}",
                    vals[x.0], vals[y.0]
                )));
            }
        }
    }
    Ok(None)
}

fn check_cut_identity(t: &Tournament, _: &mut Xoshiro256) -> Result<Option<String>> {
    let n = t.n();
    let mut cut = vec![vec![0i64; n]; n];
    for x in 0..n {
        for y in 0..n {
            if x != y {
                cut[x][y] =
                    mincut_bounded(t, AlternativeId(x), AlternativeId(y), CutMode::Unbounded)?.value as i64;
            }
        }
    }
    for x in t.alternatives() {
        for y in t.alternatives() {
            let lhs = cut[x.0][y.0] - cut[y.0][x.0];
            let rhs = t.outdegree(x) as i64 - t.outdegree(y) as i64;
            if x != y && lhs != rhs {
                return Ok(Some(format!(
                    "pair ({x},{y}): cut difference {lhs} != degree difference {rhs}"
                )));
            }
        }
    }
    Ok(None)
}

fn check_inclusion_chain(t: &Tournament, _: &mut Xoshiro256) -> Result<Option<String>> {
    let n = t.n();
    let uc = winners(t, SolutionId::Uc)?;
    let tc = winners(t, SolutionId::Tc)?;
    let co = winners(t, SolutionId::Co)?;
    if !co.is_subset(&uc) {
        return Ok(Some(format!("CO {co:?} not inside UC {uc:?}")));
    }
    if n <= 12 {
        let ba = banks_set(t)?;
        if !ba.is_subset(&uc) {
            return Ok(Some(format!("BA {ba:?} not inside UC {uc:?}")));
        }
    }
    let mut prev = uc;
    for k in 3..n {
        let kings = k_kings(t, k)?;
        if !prev.is_subset(&kings) || !kings.is_subset(&tc) {
            return Ok(Some(format!("{k}-kings {kings:?} breaks the chain")));
        }
        prev = kings;
    }
    if prev != tc {
        return Ok(Some(format!("(n-1)-kings {prev:?} differ from TC {tc:?}")));
    }
    Ok(None)
}

fn check_tc_nonwinner(t: &Tournament, _: &mut Xoshiro256) -> Result<Option<String>> {
    let tc = winners(t, SolutionId::Tc)?;
    for x in t.alternatives().filter(|x| !tc.contains(x.0)) {
        let r = mov_tc(t, x);
        if r.value != MovValue::Finite(-1) || !verify_certificate(t, SolutionId::Tc, x, &r)?.is_valid() {
            return Ok(Some(format!("{x}: top-cycle margin {} instead of -1", r.value)));
        }
    }
    Ok(None)
}

fn check_uc_log_bound(t: &Tournament, _: &mut Xoshiro256) -> Result<Option<String>> {
    let n = t.n();
    let bound = -((usize::BITS - (n - 1).leading_zeros()) as i64);
    for x in t.alternatives() {
        let v = mov_uc(t, x).value;
        if v < MovValue::Finite(bound) {
            return Ok(Some(format!("{x}: uncovered-set margin {v} below {bound}")));
        }
    }
    Ok(None)
}

fn check_lipschitz(t: &Tournament, rng: &mut Xoshiro256) -> Result<Option<String>> {
    let edges = t.edges();
    let e = edges[rng.below(edges.len() as u64) as usize];
    let u = t.reverse_edge(e)?;
    let x = pick_alt(t, rng);
    for s in mov_solutions(t.n()) {
        let (a, b) = (value(t, s, x)?, value(&u, s, x)?);
        let (Some(a), Some(b)) = (a.finite(), b.finite()) else {
            continue;
        };
        let flipped = (a > 0) != (b > 0);
        let diff = (a - b).abs();
        if (flipped && diff != 2) || (!flipped && diff > 1) {
            return Ok(Some(format!(
                "{s}: reversing {e} moves margin of {x} from {a} to {b}"
            )));
        }
    }
    Ok(None)
}

/// Fraction of uniform tournaments, per size, on which the degree formula
/// matches the exact top-cycle margin for every alternative.
pub fn tc_formula_fractions(samples: usize, seed: u64, sizes: &[usize]) -> Vec<(usize, f64)> {
    let sampler = Sampler::new(Model::Uniform, 0.5);
    sizes
        .iter()
        .map(|&n| {
            let hits = (0..samples)
                .into_par_iter()
                .filter(|&i| {
                    let t = sampler.draw(n, mix(mix(seed, n as u64), i as u64));
                    formula_matches(&t)
                })
                .count();
            (n, hits as f64 / samples as f64)
        })
        .collect()
}

pub fn formula_matches(t: &Tournament) -> bool {
    t.alternatives()
        .all(|x| mov_tc(t, x).value == MovValue::Finite(tc_formula(t, x)))
}

fn tc_formula_agreement(opts: &PropertyOptions, sizes: &[usize]) -> Result<PropertyReport> {
    let fractions = tc_formula_fractions(opts.trials.clamp(1, 100), opts.seed, sizes);
    let mut violations = Vec::new();
    let mut notes: Vec<String> = fractions
        .iter()
        .map(|(n, f)| format!("n={n}: agreement {f:.2}"))
        .collect();
    for w in fractions.windows(2) {
        if w[1].1 < w[0].1 {
            violations.push(Violation {
                tournament: String::new(),
                detail: format!(
                    "agreement drops from {:.2} at n={} to {:.2} at n={}",
                    w[0].1, w[0].0, w[1].1, w[1].0
                ),
            });
        }
    }
    for (l, m) in [(3, 9), (4, 11)] {
        let f = cyclone_chain(l, m)?;
        if formula_matches(&f.tournament) {
            violations.push(Violation {
                tournament: codec::serialize(&f.tournament),
                detail: format!("cyclone_chain({l},{m}) should disagree with the formula"),
            });
        } else {
            notes.push(format!("cyclone_chain({l},{m}): known disagreement confirmed"));
        }
    }
    Ok(PropertyReport {
        name: "tc_formula_agreement".into(),
        model: "uniform".into(),
        trials: opts.trials.clamp(1, 100) * sizes.len(),
        passed: violations.is_empty(),
        violations,
        notes,
    })
}

fn s1_mov(t: &Tournament, x: AlternativeId, cap: usize) -> Result<crate::mov::MovResult> {
    brute_force_mov(t, |u, a| Ok(s1_member(u, a)), x, cap)
}

fn s2_mov(t: &Tournament, x: AlternativeId) -> Result<crate::mov::MovResult> {
    brute_force_mov(t, |u, a| Ok(s2_member(u, a)), x, t.edge_count())
}

fn fixture_report(name: &str, trials: usize, violations: Vec<Violation>) -> PropertyReport {
    PropertyReport {
        name: name.into(),
        model: "fixtures".into(),
        trials,
        passed: violations.is_empty(),
        violations,
        notes: Vec::new(),
    }
}

/// On a regular tournament plus a sink `x`, every regular `y` covers `x`
/// and has margin 1 via the edge `(y, x)`, while `x` needs at least two
/// reversals.
fn s1_counterexample() -> Result<PropertyReport> {
    let mut violations = Vec::new();
    let mut trials = 0;
    for k in [3, 4] {
        let f = regular_plus_sink(k)?;
        let t = &f.tournament;
        let x = f.alt("x");
        let fail = |detail: String| Violation {
            tournament: codec::serialize(t),
            detail,
        };
        trials += 1;
        if s1_winners(t).len() != t.n() {
            violations.push(fail("S1 should select every alternative".into()));
        }
        for y in t.dominators(x).iter().map(AlternativeId) {
            let witness: ReversalSet = [Edge { from: y, to: x }].into_iter().collect();
            let u = t.reverse(&witness)?;
            if !t.covers(y, x) || s1_member(&u, y) || s1_mov(t, y, 1)?.value != MovValue::Finite(1) {
                violations.push(fail(format!(
                    "k={k}: edge ({y},{x}) should be a minimum DRS for {y}"
                )));
            }
        }
        match s1_mov(t, x, 1) {
            Err(Error::UndeterminedAtCap { .. }) => {}
            other => violations.push(fail(format!("k={k}: x should need two reversals, got {other:?}"))),
        }
    }
    Ok(fixture_report("prop8_counterexample", trials, violations))
}

/// On transitive tournaments the outdegree-1 alternative covers the
/// outdegree-0 one yet has the smaller margin under S2.
fn s2_counterexample() -> Result<PropertyReport> {
    let mut violations = Vec::new();
    for n in 3..=7 {
        let t = transitive(n);
        let (x, y) = (AlternativeId(n - 2), AlternativeId(n - 1));
        let (vx, vy) = (s2_mov(&t, x)?.value, s2_mov(&t, y)?.value);
        if !(t.covers(x, y) && vx < MovValue::Finite(0) && MovValue::Finite(0) < vy) {
            violations.push(Violation {
                tournament: codec::serialize(&t),
                detail: format!("n={n}: expected margin({x}) < 0 < margin({y}), got {vx} and {vy}"),
            });
        }
    }
    Ok(fixture_report("prop9_counterexample", 5, violations))
}
