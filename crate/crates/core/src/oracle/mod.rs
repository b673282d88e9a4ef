//! Ground truth at desk scale: exact word metric, exact tours for small sets,
//! and the spanning-tree tour.

pub mod ball;
pub mod distance;
pub mod tour;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::rational_string;
use crate::witness::{build_grid_set, build_serpentine_path, lemma1_witness, Preset, SupportPair, WitnessReport};
use crate::word::GroupWord;

pub use ball::{cayley_ball, cayley_ball_capped, CayleyBall, ElementInterner, DEFAULT_RADIUS_CAP};
pub use distance::{graph_distance, word_length, BallMetric};
pub use tour::{
    brute_force_tour, exact_tour, exact_tour_capped, induced_adjacency, is_xi_related, spanning_tree_tour, Tour,
    TourInstance, TreeTour, BRUTE_FORCE_CAP, EXACT_TOUR_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    /// Bound on any pairwise distance searched for.
    pub max_radius: u32,
    pub max_tour: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_radius: DEFAULT_RADIUS_CAP,
            max_tour: EXACT_TOUR_CAP,
        }
    }
}

/// Exact `τ` of a set next to the covering walk it came with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub card: usize,
    pub tour_length: u64,
    pub tau_exact: String,
    pub tour_order: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_ratio: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_bound: Option<String>,
}

fn solve(inst: &TourInstance, caps: OracleCaps) -> Result<Tour> {
    exact_tour_capped(inst, caps.max_tour)
}

fn check_tour_cap(card: usize, caps: OracleCaps) -> Result<()> {
    if card > caps.max_tour {
        return Err(Error::CapExceeded {
            what: "tour size",
            value: card,
            cap: caps.max_tour,
        });
    }
    Ok(())
}

pub fn summarize_instance(inst: &TourInstance, caps: OracleCaps) -> Result<OracleSummary> {
    let tour = solve(inst, caps)?;
    Ok(OracleSummary {
        card: inst.len(),
        tour_length: tour.length,
        tau_exact: rational_string(&tour.tau()),
        tour_order: tour.order,
        witness_length: None,
        witness_ratio: None,
        ratio_bound: None,
    })
}

/// Exact tour of a finished witness set.
pub fn summarize_report(report: &WitnessReport, caps: OracleCaps) -> Result<OracleSummary> {
    check_tour_cap(report.card(), caps)?;
    let inst = TourInstance::from_points(report.set.clone(), report.xi.alphabet(), caps.max_radius)?;
    let mut summary = summarize_instance(&inst, caps)?;
    summary.witness_length = Some(report.path_length());
    summary.witness_ratio = Some(report.ratio_string());
    summary.ratio_bound = report.ratio_bound().as_ref().map(rational_string);
    Ok(summary)
}

/// The two-layer set for `ξ` at even `n` (deduplicated if the layers meet)
/// with its serpentine walk, solved exactly.
pub fn summarize_grid(xi: &GroupWord, pair: &SupportPair, n: usize, caps: OracleCaps) -> Result<OracleSummary> {
    let lw = lemma1_witness(xi, pair)?;
    let grid = build_grid_set(&lw, pair, n)?;
    check_tour_cap(grid.card(), caps)?;
    let path = build_serpentine_path(n, pair.u(), pair.v(), &lw.z_word)?;
    let inst = TourInstance::from_points(grid.elements().to_vec(), pair.alphabet(), caps.max_radius)?;
    let mut summary = summarize_instance(&inst, caps)?;
    summary.witness_length = Some(path.len());
    summary.witness_ratio = Some(format!("{}/{}", path.len(), grid.card()));
    summary.ratio_bound = Some(rational_string(&crate::witness::ratio_bound(
        &pair.ratio_constant(),
        xi.len(),
        n + 1,
    )));
    Ok(summary)
}

/// On-disk form of a [`TourInstance`]: points as words over a preset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub alphabet: String,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<u32>>>,
}

impl InstanceFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInstance(format!("{}: {e}", path.display())))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")
            .map_err(|e| Error::InvalidInstance(format!("{}: {e}", path.display())))
    }

    /// Evaluates the words; uses the stored matrix if present (after checking
    /// the metric axioms), otherwise computes it.
    pub fn resolve(&self, max_radius: u32) -> Result<TourInstance> {
        let preset: Preset = self.alphabet.parse()?;
        let alphabet = preset.alphabet();
        let points = self
            .points
            .iter()
            .map(|w| GroupWord::parse(&alphabet, w).map(|w| w.evaluate()))
            .collect::<Result<Vec<_>>>()?;
        match &self.metric {
            Some(m) => TourInstance::new(points, m.clone()),
            None => TourInstance::from_points(points, &alphabet, max_radius),
        }
    }
}
