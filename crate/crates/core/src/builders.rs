//! Frames read off a polytope: vertex positions, oriented edges, facet
//! centroids, outward normals, and the diagonal-augmented edge sets.

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::geometry::{centroid, norm, outward_facet_normals, scale, sub};
use crate::polytope::{Family, InscribedPolytope};

fn edge_label(prefix: &str, e: (usize, usize)) -> String {
    format!("{}_{}_{}", prefix, e.0, e.1)
}

pub fn vertex_frame(p: &InscribedPolytope) -> Result<Frame> {
    let labels = (0..p.vertices().len()).map(|i| format!("v_{i}")).collect();
    Frame::with_labels(p.vertices().to_vec(), Some(labels))
}

/// One vector per combinatorial edge, oriented v_j - v_i for i < j.
pub fn edge_frame(p: &InscribedPolytope) -> Result<Frame> {
    let vectors = p.edges().iter().map(|&e| p.edge_vector(e)).collect();
    let labels = p.edges().iter().map(|&e| edge_label("e", e)).collect();
    Frame::with_labels(vectors, Some(labels))
}

/// Facet centroids of a simplex; facet j omits vertex j.
pub fn centroid_frame(p: &InscribedPolytope) -> Result<Frame> {
    if p.family() != Family::Simplex {
        return Err(Error::Family {
            family: p.family().name().into(),
            detail: "facet-centroid frames are defined for simplices".into(),
        });
    }
    let vectors: Vec<Vec<f64>> = p
        .facets()
        .iter()
        .map(|f| centroid(&f.iter().map(|&i| p.vertices()[i].clone()).collect::<Vec<_>>()))
        .collect();
    let labels = (0..vectors.len()).map(|i| format!("c_{i}")).collect();
    Frame::with_labels(vectors, Some(labels))
}

pub struct NormalFrames {
    /// Outward unit normals, one per facet.
    pub unit: Frame,
    /// Outward normals with norm equal to the facet content.
    pub scaled: Frame,
}

pub fn normal_frames(t: &InscribedPolytope) -> Result<NormalFrames> {
    if t.family() != Family::Simplex {
        return Err(Error::Family {
            family: t.family().name().into(),
            detail: "normal frames are defined for simplices".into(),
        });
    }
    let scaled_vectors = outward_facet_normals(t.vertices())?;
    let unit_vectors: Vec<Vec<f64>> =
        scaled_vectors.iter().map(|n| scale(n, 1.0 / norm(n))).collect();
    let labels: Vec<String> = (0..scaled_vectors.len()).map(|i| format!("n_F{i}")).collect();
    Ok(NormalFrames {
        unit: Frame::with_labels(unit_vectors, Some(labels.clone()))?,
        scaled: Frame::with_labels(scaled_vectors, Some(labels))?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalScaling {
    Unit,
    /// Norm equals the facet content.
    Scaled,
    /// Hodge duals of the facet edge matrices: (d-1)! times `Scaled`. The
    /// normalization under which determinant and hull-volume identities are
    /// polynomial in vol(T).
    Star,
}

/// The simplex spanned by the outward normals of `t`, taken as points. Not
/// inscribed in general; with `Unit` scaling the vertices are unit vectors.
pub fn normal_simplex(t: &InscribedPolytope, scaling: NormalScaling) -> Result<InscribedPolytope> {
    let frames = normal_frames(t)?;
    let points = match scaling {
        NormalScaling::Unit => frames.unit.vectors().to_vec(),
        NormalScaling::Scaled => frames.scaled.vectors().to_vec(),
        NormalScaling::Star => {
            let factor = crate::geometry::factorial(t.dim() - 1);
            frames.scaled.vectors().iter().map(|n| scale(n, factor)).collect()
        }
    };
    InscribedPolytope::simplex(points)
}

/// Edge vectors of a non-simplex family together with the synthetic edges
/// that complete its edge graph: both diagonals of a quadrilateral, the base
/// diagonals of the pyramid, the apex-apex segment of the bipyramid.
pub struct AugmentedEdgeSet {
    pub real: Vec<(usize, usize)>,
    pub synthetic: Vec<(usize, usize)>,
    pub real_vectors: Vec<Vec<f64>>,
    pub synthetic_vectors: Vec<Vec<f64>>,
}

impl AugmentedEdgeSet {
    /// Real edges followed by synthetic ones; synthetic labels use the "o"
    /// prefix so reports can split the two contributions.
    pub fn frame(&self) -> Result<Frame> {
        let mut vectors = self.real_vectors.clone();
        vectors.extend(self.synthetic_vectors.iter().cloned());
        let mut labels: Vec<String> = self.real.iter().map(|&e| edge_label("e", e)).collect();
        labels.extend(self.synthetic.iter().map(|&e| edge_label("o", e)));
        Frame::with_labels(vectors, Some(labels))
    }

    /// Sum of squared real edge lengths.
    pub fn real_norm_sq(&self) -> f64 {
        self.real_vectors.iter().map(|e| norm(e) * norm(e)).sum()
    }

    /// Sum of squared synthetic edge lengths.
    pub fn synthetic_norm_sq(&self) -> f64 {
        self.synthetic_vectors.iter().map(|e| norm(e) * norm(e)).sum()
    }
}

pub fn augmented_edge_frame(
    q: &InscribedPolytope,
    include_synthetic: bool,
) -> Result<AugmentedEdgeSet> {
    let synthetic_pairs: Vec<(usize, usize)> = match q.family() {
        Family::Quadrilateral | Family::PyramidQuad => vec![(0, 2), (1, 3)],
        Family::BipyramidTri => vec![(3, 4)],
        Family::Simplex => {
            return Err(Error::Family {
                family: "simplex".into(),
                detail: "the simplex edge graph is already complete".into(),
            })
        }
    };
    let synthetic = if include_synthetic { synthetic_pairs } else { Vec::new() };
    let real = q.edges().to_vec();
    let real_vectors = real.iter().map(|&e| q.edge_vector(e)).collect();
    let synthetic_vectors = synthetic
        .iter()
        .map(|&(i, j)| sub(&q.vertices()[j], &q.vertices()[i]))
        .collect();
    Ok(AugmentedEdgeSet { real, synthetic, real_vectors, synthetic_vectors })
}
