//! Random tournament models: direct edge models and voter profiles
//! aggregated by pairwise majority.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{AltSet, MAX_ALTERNATIVES};
use crate::error::{Error, Result};
use crate::rng::{mix, Xoshiro256};
use crate::tournament::Tournament;

pub const DEFAULT_P: f64 = 0.55;
pub const DEFAULT_VOTERS: usize = 51;
pub const DEFAULT_ALPHA_FACTOR: f64 = 1.0;
pub const DEFAULT_PHI: f64 = 0.95;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "uniform")]
    Uniform,
    #[serde(rename = "cnoise")]
    CondorcetNoise,
    #[serde(rename = "cnoise-voters")]
    CondorcetNoiseVoters,
    #[serde(rename = "ic")]
    ImpartialCulture,
    #[serde(rename = "urn")]
    Urn,
    #[serde(rename = "mallows")]
    Mallows,
}

impl Model {
    pub const ALL: [Model; 6] = [
        Model::Uniform,
        Model::CondorcetNoise,
        Model::CondorcetNoiseVoters,
        Model::ImpartialCulture,
        Model::Urn,
        Model::Mallows,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::Uniform => "uniform",
            Model::CondorcetNoise => "cnoise",
            Model::CondorcetNoiseVoters => "cnoise-voters",
            Model::ImpartialCulture => "ic",
            Model::Urn => "urn",
            Model::Mallows => "mallows",
        }
    }

    /// Whether the model samples voters and aggregates by majority.
    pub fn has_voters(self) -> bool {
        !matches!(self, Model::Uniform | Model::CondorcetNoise)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidGenerator(format!("unknown model `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub model: Model,
    pub n: usize,
    /// Agreement probability for the Condorcet noise models.
    pub p: f64,
    /// Odd number of voters for profile models.
    pub voters: usize,
    /// Urn replacement count as a multiple of `n!`.
    pub alpha_factor: f64,
    /// Mallows dispersion.
    pub phi: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(model: Model, n: usize, seed: u64) -> Self {
        GeneratorConfig {
            model,
            n,
            p: DEFAULT_P,
            voters: DEFAULT_VOTERS,
            alpha_factor: DEFAULT_ALPHA_FACTOR,
            phi: DEFAULT_PHI,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGenerator(m));
        if self.n < 2 || self.n > MAX_ALTERNATIVES {
            return bad(format!("n must be in [2, {MAX_ALTERNATIVES}], got {}", self.n));
        }
        match self.model {
            Model::CondorcetNoise | Model::CondorcetNoiseVoters if !(0.5..=1.0).contains(&self.p) => {
                return bad(format!("p must be in [0.5, 1], got {}", self.p));
            }
            Model::Mallows if !(self.phi > 0.0 && self.phi <= 1.0) => {
                return bad(format!("phi must be in (0, 1], got {}", self.phi));
            }
            Model::Urn if !(self.alpha_factor >= 0.0 && self.alpha_factor.is_finite()) => {
                return bad(format!(
                    "alpha_factor must be finite and >= 0, got {}",
                    self.alpha_factor
                ));
            }
            _ => {}
        }
        if self.model.has_voters() && self.voters.is_multiple_of(2) {
            return bad(format!("voter count must be odd, got {}", self.voters));
        }
        Ok(())
    }

    /// Model parameters as `key=value` pairs joined by `;`, in the fixed
    /// order p, voters, alpha_factor, phi, listing only those that apply.
    pub fn params(&self) -> String {
        let mut parts = Vec::new();
        if matches!(self.model, Model::CondorcetNoise | Model::CondorcetNoiseVoters) {
            parts.push(format!("p={}", self.p));
        }
        if self.model.has_voters() {
            parts.push(format!("voters={}", self.voters));
        }
        if self.model == Model::Urn {
            parts.push(format!("alpha_factor={}", self.alpha_factor));
        }
        if self.model == Model::Mallows {
            parts.push(format!("phi={}", self.phi));
        }
        parts.join(";")
    }
}

/// Pairwise preferences of each voter. `relations[v][i]` holds the
/// alternatives voter `v` ranks below `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceProfile {
    pub n: usize,
    pub relations: Vec<Vec<AltSet>>,
}

impl PreferenceProfile {
    /// Profile of linear orders, each listed best first.
    pub fn from_rankings(n: usize, rankings: &[Vec<usize>]) -> Result<Self> {
        let relations = rankings
            .iter()
            .map(|r| ranking_relation(n, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(PreferenceProfile { n, relations })
    }

    pub fn voters(&self) -> usize {
        self.relations.len()
    }
}

fn ranking_relation(n: usize, ranking: &[usize]) -> Result<Vec<AltSet>> {
    let mut seen = AltSet::empty();
    if ranking.len() != n || ranking.iter().any(|&a| a >= n) {
        return Err(Error::InvalidGenerator(format!(
            "ranking {ranking:?} is not a permutation of 0..{n}"
        )));
    }
    let mut rel = vec![AltSet::empty(); n];
    for &a in ranking.iter().rev() {
        if seen.contains(a) {
            return Err(Error::InvalidGenerator(format!(
                "ranking {ranking:?} repeats {a}"
            )));
        }
        rel[a] = seen;
        seen.insert(a);
    }
    Ok(rel)
}

/// Draws a tournament from the configured model.
pub fn generate(cfg: &GeneratorConfig) -> Result<Tournament> {
    if cfg.model.has_voters() {
        majority_tournament(&sample_profile(cfg)?)
    } else {
        gen_direct(cfg)
    }
}

/// Uniform and Condorcet-noise tournaments, one draw per pair `i < j` in
/// lexicographic order.
pub fn gen_direct(cfg: &GeneratorConfig) -> Result<Tournament> {
    cfg.validate()?;
    let mut rng = Xoshiro256::seed_from(cfg.seed);
    match cfg.model {
        Model::Uniform => Tournament::from_fn(cfg.n, |_, _| rng.next_bool()),
        Model::CondorcetNoise => Tournament::from_fn(cfg.n, |_, _| rng.bernoulli(cfg.p)),
        other => Err(Error::InvalidGenerator(format!(
            "{other} is a voter model; use sample_profile"
        ))),
    }
}

pub fn sample_profile(cfg: &GeneratorConfig) -> Result<PreferenceProfile> {
    cfg.validate()?;
    let n = cfg.n;
    let voter_rng = |v: usize| Xoshiro256::seed_from(mix(cfg.seed, v as u64));
    let relations = match cfg.model {
        Model::CondorcetNoiseVoters => {
            let mut instance = Xoshiro256::seed_from(cfg.seed);
            let base = instance.permutation(n);
            (0..cfg.voters)
                .map(|v| {
                    let mut rng = voter_rng(v);
                    let mut rel = vec![AltSet::empty(); n];
                    for i in 0..n {
                        for j in (i + 1)..n {
                            let (a, b) = (base[i], base[j]);
                            if rng.bernoulli(cfg.p) {
                                rel[a].insert(b);
                            } else {
                                rel[b].insert(a);
                            }
                        }
                    }
                    rel
                })
                .collect()
        }
        Model::ImpartialCulture => (0..cfg.voters)
            .map(|v| ranking_relation(n, &voter_rng(v).permutation(n)))
            .collect::<Result<Vec<_>>>()?,
        Model::Urn => {
            let mut instance = Xoshiro256::seed_from(cfg.seed);
            let mut drawn: Vec<Vec<usize>> = Vec::with_capacity(cfg.voters);
            for v in 0..cfg.voters {
                // Fresh ranking with probability n! / (n! + v * alpha).
                let fresh = 1.0 / (1.0 + v as f64 * cfg.alpha_factor);
                let ranking = if v == 0 || instance.next_f64() < fresh {
                    voter_rng(v).permutation(n)
                } else {
                    drawn[instance.below(v as u64) as usize].clone()
                };
                drawn.push(ranking);
            }
            drawn
                .iter()
                .map(|r| ranking_relation(n, r))
                .collect::<Result<Vec<_>>>()?
        }
        Model::Mallows => (0..cfg.voters)
            .map(|v| ranking_relation(n, &mallows_ranking(&mut voter_rng(v), n, cfg.phi)))
            .collect::<Result<Vec<_>>>()?,
        other => {
            return Err(Error::InvalidGenerator(format!(
                "{other} has no voters; use gen_direct"
            )))
        }
    };
    Ok(PreferenceProfile { n, relations })
}

/// Repeated insertion around the reference order `0, 1, ..., n-1`: the
/// `i`-th item goes to position `j` in `1..=i` with weight `phi^(i-j)`.
fn mallows_ranking(rng: &mut Xoshiro256, n: usize, phi: f64) -> Vec<usize> {
    let mut ranking = Vec::with_capacity(n);
    for item in 0..n {
        let i = item + 1;
        let weights: Vec<f64> = (1..=i).map(|j| phi.powi((i - j) as i32)).collect();
        let total: f64 = weights.iter().sum();
        let mut u = rng.next_f64() * total;
        let mut pos = i - 1;
        for (j, w) in weights.iter().enumerate() {
            if u < *w {
                pos = j;
                break;
            }
            u -= w;
        }
        ranking.insert(pos, item);
    }
    ranking
}

/// Pairwise majority relation of an odd-sized profile.
pub fn majority_tournament(profile: &PreferenceProfile) -> Result<Tournament> {
    let voters = profile.voters();
    if voters.is_multiple_of(2) {
        return Err(Error::InvalidGenerator(format!(
            "majority needs an odd number of voters, got {voters}"
        )));
    }
    let n = profile.n;
    let mut wins = vec![vec![0usize; n]; n];
    for rel in &profile.relations {
        for (i, row) in rel.iter().enumerate() {
            for j in row.iter() {
                wins[i][j] += 1;
            }
        }
    }
    Tournament::from_fn(n, |i, j| wins[i][j] > wins[j][i])
}
