//! Serialized forms of polytopes, suite reports, search results, and the
//! campaign CSV. Floats go through Rust's shortest round-trip formatting so
//! identical runs produce identical bytes.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::inequality::InequalityReport;
use crate::polytope::{Family, InscribedPolytope};
use crate::search::{CampaignRow, SearchResult, TightConfigReport};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub family: Family,
    pub vertices: Vec<Vec<f64>>,
    pub edges: Vec<(usize, usize)>,
    pub facets: Vec<Vec<usize>>,
    pub on_sphere: bool,
}

impl PolytopeJson {
    pub fn from_polytope(p: &InscribedPolytope) -> Self {
        PolytopeJson {
            dim: p.dim(),
            family: p.family(),
            vertices: p.vertices().to_vec(),
            edges: p.edges().to_vec(),
            facets: p.facets().to_vec(),
            on_sphere: p.on_sphere(),
        }
    }

    /// Revalidates everything; vertex coordinates pass through untouched.
    pub fn into_polytope(self) -> Result<InscribedPolytope> {
        let p = InscribedPolytope::from_parts(
            self.family,
            self.dim,
            self.vertices,
            self.edges,
            self.facets,
        )?;
        if p.on_sphere() != self.on_sphere {
            return Err(crate::error::Error::Validation(format!(
                "on_sphere flag is {} but the vertices say {}",
                self.on_sphere,
                p.on_sphere()
            )));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResultJson {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub relative_gap: f64,
    pub holds: bool,
    pub equality: bool,
}

impl From<&InequalityReport> for ResultJson {
    fn from(r: &InequalityReport) -> Self {
        ResultJson {
            id: r.id.clone(),
            lhs: r.lhs,
            rhs: r.rhs,
            gap: r.gap,
            relative_gap: r.relative_gap,
            holds: r.holds,
            equality: r.equality,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub polytope: PolytopeJson,
    pub results: Vec<ResultJson>,
}

impl ReportJson {
    pub fn new(p: &InscribedPolytope, reports: &[InequalityReport]) -> Self {
        ReportJson {
            polytope: PolytopeJson::from_polytope(p),
            results: reports.iter().map(ResultJson::from).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchJson {
    pub objective: String,
    pub family: Family,
    pub params: Vec<f64>,
    pub value: f64,
    pub iters: usize,
    pub converged: bool,
}

impl From<&SearchResult> for SearchJson {
    fn from(r: &SearchResult) -> Self {
        SearchJson {
            objective: r.objective.clone(),
            family: r.family,
            params: r.params.clone(),
            value: r.value,
            iters: r.iterations,
            converged: r.converged,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TightConfigJson {
    pub name: String,
    pub family: Family,
    pub frame_kind: String,
    pub params: Vec<f64>,
    pub deviation: f64,
    pub frame_constant: f64,
    pub pass: bool,
}

impl From<&TightConfigReport> for TightConfigJson {
    fn from(r: &TightConfigReport) -> Self {
        TightConfigJson {
            name: r.name.clone(),
            family: r.family,
            frame_kind: r.frame_kind.label().into(),
            params: r.params.clone(),
            deviation: r.deviation,
            frame_constant: r.frame_constant,
            pass: r.pass,
        }
    }
}

pub const CAMPAIGN_CSV_HEADER: &str =
    "sample_id,ineq_id,family,d,lhs,rhs,gap,relative_gap,holds";

pub fn campaign_csv(rows: &[CampaignRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CAMPAIGN_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.sample_id,
            r.id,
            r.family.name(),
            r.dim,
            r.lhs,
            r.rhs,
            r.gap,
            r.relative_gap,
            r.holds
        ));
    }
    out
}
