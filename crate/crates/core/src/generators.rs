//! Synthetic directed networks: uniform random (ER) and static-model
//! scale-free (SF). Every generator draws from a single ChaCha stream seeded
//! by the `GenSpec`, so a seed fully determines the edge list.

use std::collections::HashSet;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedNetwork, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Model {
    #[serde(rename = "ER")]
    Er,
    #[serde(rename = "SF")]
    Sf,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Er => "ER",
            Model::Sf => "SF",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GenSpec {
    pub model: Model,
    pub nodes: usize,
    /// Target `2L/N`.
    pub avg_degree: f64,
    pub gamma_in: f64,
    pub gamma_out: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn er(nodes: usize, avg_degree: f64, seed: u64) -> Self {
        GenSpec { model: Model::Er, nodes, avg_degree, gamma_in: 0.0, gamma_out: 0.0, seed }
    }

    pub fn sf(nodes: usize, avg_degree: f64, gamma: f64, seed: u64) -> Self {
        GenSpec { model: Model::Sf, nodes, avg_degree, gamma_in: gamma, gamma_out: gamma, seed }
    }

    /// `round(<k> N / 2)`.
    pub fn target_edges(&self) -> usize {
        (self.avg_degree * self.nodes as f64 / 2.0).round() as usize
    }

    fn validate(&self) -> Result<()> {
        if self.nodes == 0 {
            return Err(Error::InvalidSpec("N must be at least 1".into()));
        }
        if !(self.avg_degree >= 0.0) || !self.avg_degree.is_finite() {
            return Err(Error::InvalidSpec(format!("average degree {} must be finite and >= 0", self.avg_degree)));
        }
        if self.model == Model::Sf && !(self.gamma_in > 2.0 && self.gamma_out > 2.0) {
            return Err(Error::InvalidSpec(format!(
                "degree exponents must exceed 2 (got in {}, out {})",
                self.gamma_in, self.gamma_out
            )));
        }
        let max = self.nodes as u128 * (self.nodes as u128 - 1);
        if self.target_edges() as u128 > max {
            return Err(Error::InvalidSpec(format!(
                "{} edges requested but at most {max} fit without self-loops",
                self.target_edges()
            )));
        }
        Ok(())
    }

    /// `# key: value` lines describing the parameters, for edge-list headers.
    pub fn header(&self) -> String {
        let mut out = format!(
            "# model: {}\n# nodes: {}\n# avg_degree: {}\n# edges: {}\n",
            self.model.name(),
            self.nodes,
            self.avg_degree,
            self.target_edges()
        );
        if self.model == Model::Sf {
            out.push_str(&format!("# gamma_in: {}\n# gamma_out: {}\n", self.gamma_in, self.gamma_out));
        }
        out.push_str(&format!("# seed: {}\n", self.seed));
        out
    }
}

pub fn generate(spec: &GenSpec) -> Result<DirectedNetwork> {
    match spec.model {
        Model::Er => er_directed(spec),
        Model::Sf => scale_free_directed(spec),
    }
}

/// Exactly `round(<k> N / 2)` distinct non-loop edges, uniformly without
/// replacement.
pub fn er_directed(spec: &GenSpec) -> Result<DirectedNetwork> {
    spec.validate()?;
    let n = spec.nodes;
    let l = spec.target_edges();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let slots = n * (n - 1);
    let edges = index::sample(&mut rng, slots, l).into_iter().map(|k| {
        let u = k / (n - 1);
        let r = k % (n - 1);
        let v = if r >= u { r + 1 } else { r };
        (NodeId::from(u), NodeId::from(v))
    });
    DirectedNetwork::from_edges(n, edges)
}

/// Static model: source drawn with weight `(i+1)^(-1/(gamma_out-1))`, target
/// with `(i+1)^(-1/(gamma_in-1))`; self-loops and repeats are redrawn.
pub fn scale_free_directed(spec: &GenSpec) -> Result<DirectedNetwork> {
    spec.validate()?;
    let n = spec.nodes;
    let l = spec.target_edges();
    let weights = |gamma: f64| {
        let alpha = 1.0 / (gamma - 1.0);
        (0..n).map(move |i| ((i + 1) as f64).powf(-alpha))
    };
    let out_w = WeightedIndex::new(weights(spec.gamma_out)).expect("positive weights");
    let in_w = WeightedIndex::new(weights(spec.gamma_in)).expect("positive weights");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(l);
    let mut edges = Vec::with_capacity(l);
    let limit = (n as u64).saturating_mul(l as u64).max(1);
    let mut attempts = 0u64;
    let mut misses = 0u64;
    while edges.len() < l {
        attempts += 1;
        let u = out_w.sample(&mut rng) as u32;
        let v = in_w.sample(&mut rng) as u32;
        if u != v && seen.insert((u, v)) {
            edges.push((NodeId(u), NodeId(v)));
            misses = 0;
        } else {
            misses += 1;
            if misses >= limit {
                return Err(Error::GenerationStall { attempts, edges: edges.len(), target: l });
            }
        }
    }
    DirectedNetwork::from_edges(n, edges)
}

/// Directed G(n, p) without self-loops; used for small test corpora.
pub fn gnp_directed(nodes: usize, p: f64, seed: u64) -> Result<DirectedNetwork> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..nodes {
        for v in 0..nodes {
            if u != v && rng.gen_bool(p) {
                edges.push((NodeId::from(u), NodeId::from(v)));
            }
        }
    }
    DirectedNetwork::from_edges(nodes, edges)
}
