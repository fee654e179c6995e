//! Polytope families inscribed in the unit sphere, their canonical edge and
//! facet lists, and the simplex partitions their volume vectors come from.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{add, dot, norm, scale, simplex_volume, sub};
use crate::linalg::{solve, Matrix};
use crate::tolerances::{DEGENERACY_EPS, ORTHO_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Simplex,
    Quadrilateral,
    PyramidQuad,
    BipyramidTri,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Simplex => "simplex",
            Family::Quadrilateral => "quadrilateral",
            Family::PyramidQuad => "pyramid_quad",
            Family::BipyramidTri => "bipyramid_tri",
        }
    }
}

/// Construction parameters for `make_polytope`.
#[derive(Clone, Debug)]
pub enum PolytopeSpec {
    Simplex { vertices: Vec<Vec<f64>> },
    /// Four angles on the unit circle, strictly increasing within [0, 2*pi).
    Quadrilateral { angles: [f64; 4] },
    /// Square base in the plane z = z0 (cross-section angles 0/90/180/270
    /// degrees), apex at the north pole.
    PyramidQuad { z0: f64 },
    /// Triangle of circumradius r in the plane z = 0, apexes at z = +/- h.
    BipyramidTri { r: f64, h: f64 },
}

#[derive(Clone, Debug)]
pub struct InscribedPolytope {
    family: Family,
    dim: usize,
    vertices: Vec<Vec<f64>>,
    edges: Vec<(usize, usize)>,
    facets: Vec<Vec<usize>>,
    on_sphere: bool,
}

/// A decomposition of the polytope into labeled simplex cells meeting at
/// `base_point`. Cell order follows the family convention documented on
/// `InscribedPolytope::partition`.
#[derive(Clone, Debug)]
pub struct Partition {
    pub base_point: Vec<f64>,
    pub cells: Vec<Vec<Vec<f64>>>,
}

impl Partition {
    pub fn cell_volumes(&self) -> Vec<f64> {
        self.cells.iter().map(|c| simplex_volume(c).expect("cells are simplices")).collect()
    }
}

fn all_on_sphere(vertices: &[Vec<f64>]) -> bool {
    vertices.iter().all(|v| (norm(v) - 1.0).abs() <= ORTHO_TOL)
}

fn simplex_edges(n: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    e
}

/// Intersection point of segments (a0, a1) and (b0, b1), which must cross
/// properly in their common plane.
fn segment_intersection(a0: &[f64], a1: &[f64], b0: &[f64], b1: &[f64]) -> Result<Vec<f64>> {
    let u = sub(a1, a0);
    let w = sub(b1, b0);
    let rhs = sub(b0, a0);
    // least-squares on the 2x2 Gram system; residual check catches skew lines
    let g = Matrix::from_rows(&[vec![dot(&u, &u), -dot(&u, &w)], vec![-dot(&u, &w), dot(&w, &w)]]);
    let b = vec![dot(&u, &rhs), -dot(&w, &rhs)];
    let st = solve(&g, &b).map_err(|_| Error::Degenerate("parallel diagonals".into()))?;
    let (s, t) = (st[0], st[1]);
    let p = add(a0, &scale(&u, s));
    let q = add(b0, &scale(&w, t));
    if norm(&sub(&p, &q)) > 1e-9 * norm(&u).max(norm(&w)) {
        return Err(Error::Degenerate("diagonals do not intersect".into()));
    }
    if !(s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0) {
        return Err(Error::Degenerate("diagonals cross outside the polytope".into()));
    }
    Ok(p)
}

impl InscribedPolytope {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn on_sphere(&self) -> bool {
        self.on_sphere
    }

    /// Edge vector v_j - v_i for the edge (i, j).
    pub fn edge_vector(&self, e: (usize, usize)) -> Vec<f64> {
        sub(&self.vertices[e.1], &self.vertices[e.0])
    }

    pub fn simplex(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let d = vertices
            .first()
            .map(|v| v.len())
            .ok_or_else(|| Error::Arity("simplex needs vertices".into()))?;
        if d < 2 {
            return Err(Error::Dimension("simplex families start at d = 2".into()));
        }
        if vertices.len() != d + 1 {
            return Err(Error::Arity(format!("simplex in R^{d} needs {} vertices", d + 1)));
        }
        if vertices.iter().any(|v| v.len() != d) {
            return Err(Error::Dimension("mixed vertex dimensions".into()));
        }
        if simplex_volume(&vertices)? < DEGENERACY_EPS {
            return Err(Error::Degenerate("simplex volume below 1e-12".into()));
        }
        let on_sphere = all_on_sphere(&vertices);
        let facets = (0..=d).map(|j| (0..=d).filter(|&i| i != j).collect()).collect();
        Ok(InscribedPolytope {
            family: Family::Simplex,
            dim: d,
            edges: simplex_edges(d + 1),
            facets,
            vertices,
            on_sphere,
        })
    }

    /// Regular simplex inscribed in the unit sphere: unit vertices with
    /// pairwise inner products -1/d, realized by a Cholesky-style factorization
    /// of that Gram matrix (vertex 0 lands on the first coordinate axis).
    pub fn regular_simplex(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Dimension("regular simplex needs d >= 2".into()));
        }
        let gram = |i: usize, j: usize| if i == j { 1.0 } else { -1.0 / d as f64 };
        let mut vs: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let mut v = vec![0.0; d];
            for k in 0..j.min(d) {
                let s: f64 = (0..k).map(|m| v[m] * vs[k][m]).sum();
                v[k] = (gram(j, k) - s) / vs[k][k];
            }
            if j < d {
                let s: f64 = (0..j).map(|m| v[m] * v[m]).sum();
                v[j] = (gram(j, j) - s).max(0.0).sqrt();
            }
            vs.push(v);
        }
        Self::simplex(vs)
    }

    pub fn quadrilateral(angles: [f64; 4]) -> Result<Self> {
        let two_pi = 2.0 * std::f64::consts::PI;
        if angles.iter().any(|a| !(0.0..two_pi).contains(a)) {
            return Err(Error::Parameter("angles must lie in [0, 2*pi)".into()));
        }
        if !angles.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Ordering("angles must be strictly increasing".into()));
        }
        let vertices: Vec<Vec<f64>> = angles.iter().map(|a| vec![a.cos(), a.sin()]).collect();
        let poly = InscribedPolytope {
            family: Family::Quadrilateral,
            dim: 2,
            vertices,
            edges: vec![(0, 1), (1, 2), (2, 3), (0, 3)],
            facets: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
            on_sphere: true,
        };
        if poly.volume() < DEGENERACY_EPS {
            return Err(Error::Degenerate("quadrilateral area below 1e-12".into()));
        }
        Ok(poly)
    }

    pub fn pyramid_quad(z0: f64) -> Result<Self> {
        if !(-1.0..1.0).contains(&z0) || 1.0 - z0 * z0 <= 0.0 {
            return Err(Error::Parameter("pyramid base plane needs z0 in (-1, 1)".into()));
        }
        let r = (1.0 - z0 * z0).sqrt();
        let vertices = vec![
            vec![r, 0.0, z0],
            vec![0.0, r, z0],
            vec![-r, 0.0, z0],
            vec![0.0, -r, z0],
            vec![0.0, 0.0, 1.0],
        ];
        let poly = InscribedPolytope {
            family: Family::PyramidQuad,
            dim: 3,
            vertices,
            edges: vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (0, 3),
                (0, 4),
                (1, 4),
                (2, 4),
                (3, 4),
            ],
            facets: vec![
                vec![0, 1, 2, 3],
                vec![0, 1, 4],
                vec![1, 2, 4],
                vec![2, 3, 4],
                vec![0, 3, 4],
            ],
            on_sphere: true,
        };
        if poly.volume() < DEGENERACY_EPS {
            return Err(Error::Degenerate("pyramid volume below 1e-12".into()));
        }
        Ok(poly)
    }

    pub fn bipyramid_tri(r: f64, h: f64) -> Result<Self> {
        if r <= 0.0 || h <= 0.0 {
            return Err(Error::Parameter("bipyramid needs r > 0 and h > 0".into()));
        }
        let angles = [90.0_f64, 210.0, 330.0].map(|deg| deg.to_radians());
        let mut vertices: Vec<Vec<f64>> =
            angles.iter().map(|a| vec![r * a.cos(), r * a.sin(), 0.0]).collect();
        vertices.push(vec![0.0, 0.0, h]);
        vertices.push(vec![0.0, 0.0, -h]);
        let on_sphere = all_on_sphere(&vertices);
        let poly = InscribedPolytope {
            family: Family::BipyramidTri,
            dim: 3,
            vertices,
            edges: vec![
                (0, 1),
                (1, 2),
                (0, 2),
                (0, 3),
                (1, 3),
                (2, 3),
                (0, 4),
                (1, 4),
                (2, 4),
            ],
            facets: vec![
                vec![0, 1, 3],
                vec![1, 2, 3],
                vec![0, 2, 3],
                vec![0, 1, 4],
                vec![1, 2, 4],
                vec![0, 2, 4],
            ],
            on_sphere,
        };
        if poly.volume() < DEGENERACY_EPS {
            return Err(Error::Degenerate("bipyramid volume below 1e-12".into()));
        }
        Ok(poly)
    }

    /// Rebuilds a polytope from serialized parts, enforcing the family's
    /// canonical combinatorics and geometric preconditions.
    pub fn from_parts(
        family: Family,
        dim: usize,
        vertices: Vec<Vec<f64>>,
        edges: Vec<(usize, usize)>,
        facets: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::Validation("vertex dimension differs from dim".into()));
        }
        let reference = match family {
            Family::Simplex => Self::simplex(vertices.clone())?,
            Family::Quadrilateral => {
                if dim != 2 || vertices.len() != 4 {
                    return Err(Error::Validation("quadrilateral needs 4 vertices in R^2".into()));
                }
                if !all_on_sphere(&vertices) {
                    return Err(Error::Validation("quadrilateral vertices must lie on the unit circle".into()));
                }
                let poly = InscribedPolytope {
                    family,
                    dim,
                    vertices: vertices.clone(),
                    edges: vec![(0, 1), (1, 2), (2, 3), (0, 3)],
                    facets: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
                    on_sphere: true,
                };
                poly.partition()?;
                poly
            }
            Family::PyramidQuad | Family::BipyramidTri => {
                if dim != 3 || vertices.len() != 5 {
                    return Err(Error::Validation(format!("{} needs 5 vertices in R^3", family.name())));
                }
                let template = if family == Family::PyramidQuad {
                    Self::pyramid_quad(0.0)?
                } else {
                    Self::bipyramid_tri(0.5, 0.5)?
                };
                let on_sphere = all_on_sphere(&vertices);
                let poly = InscribedPolytope {
                    family,
                    dim,
                    vertices: vertices.clone(),
                    edges: template.edges.clone(),
                    facets: template.facets.clone(),
                    on_sphere,
                };
                poly.partition()?;
                if poly.volume() < DEGENERACY_EPS {
                    return Err(Error::Degenerate("volume below 1e-12".into()));
                }
                poly
            }
        };
        let canon_edges: std::collections::BTreeSet<_> = reference.edges.iter().copied().collect();
        let given_edges: std::collections::BTreeSet<_> =
            edges.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
        if canon_edges != given_edges {
            return Err(Error::Validation("edge list differs from the family's canonical edges".into()));
        }
        let canon_facets: std::collections::BTreeSet<Vec<usize>> = reference
            .facets
            .iter()
            .map(|f| {
                let mut f = f.clone();
                f.sort_unstable();
                f
            })
            .collect();
        let given_facets: std::collections::BTreeSet<Vec<usize>> = facets
            .iter()
            .map(|f| {
                let mut f = f.clone();
                f.sort_unstable();
                f
            })
            .collect();
        if canon_facets != given_facets {
            return Err(Error::Validation("facet list differs from the family's canonical facets".into()));
        }
        Ok(reference)
    }

    pub fn volume(&self) -> f64 {
        match self.family {
            Family::Simplex => simplex_volume(&self.vertices).expect("validated at construction"),
            Family::Quadrilateral => {
                let mut acc = 0.0;
                for i in 0..4 {
                    let a = &self.vertices[i];
                    let b = &self.vertices[(i + 1) % 4];
                    acc += a[0] * b[1] - b[0] * a[1];
                }
                acc.abs() / 2.0
            }
            Family::PyramidQuad | Family::BipyramidTri => self
                .partition()
                .expect("partition exists for validated pyramids")
                .cell_volumes()
                .iter()
                .sum(),
        }
    }

    /// Family partitions:
    ///
    /// * Simplex: origin cones; cell j replaces vertex j by the origin
    ///   (errors unless the origin is strictly interior).
    /// * Quadrilateral: cells (p, v_j, v_{j+1}) about the diagonal crossing p.
    /// * PyramidQuad: cells (p, v_j, v_{j+1}, apex) about the base diagonal
    ///   crossing p.
    /// * BipyramidTri: cells j = (p, v_j, v_{j+1}, top) and j+3 =
    ///   (p, v_j, v_{j+1}, bottom), where p is the apex segment crossing the
    ///   triangle plane; cells j and j+3 share triangle edge j.
    pub fn partition(&self) -> Result<Partition> {
        match self.family {
            Family::Simplex => {
                let bary = self.barycentric_of_origin()?;
                if bary.iter().any(|&l| l <= 1e-12) {
                    return Err(Error::Containment(
                        "origin-cone partition needs the origin strictly inside the simplex".into(),
                    ));
                }
                let d = self.dim;
                let cells = (0..=d)
                    .map(|j| {
                        let mut cell = self.vertices.clone();
                        cell[j] = vec![0.0; d];
                        cell
                    })
                    .collect();
                Ok(Partition { base_point: vec![0.0; d], cells })
            }
            Family::Quadrilateral => {
                let v = &self.vertices;
                let p = segment_intersection(&v[0], &v[2], &v[1], &v[3])?;
                let cells = (0..4)
                    .map(|j| vec![p.clone(), v[j].clone(), v[(j + 1) % 4].clone()])
                    .collect();
                Ok(Partition { base_point: p, cells })
            }
            Family::PyramidQuad => {
                let v = &self.vertices;
                let p = segment_intersection(&v[0], &v[2], &v[1], &v[3])?;
                let cells = (0..4)
                    .map(|j| vec![p.clone(), v[j].clone(), v[(j + 1) % 4].clone(), v[4].clone()])
                    .collect();
                Ok(Partition { base_point: p, cells })
            }
            Family::BipyramidTri => {
                let v = &self.vertices;
                let e1 = sub(&v[1], &v[0]);
                let e2 = sub(&v[2], &v[0]);
                let n = crate::geometry::hodge_complement(&[e1, e2])?;
                let denom = dot(&n, &sub(&v[4], &v[3]));
                if denom.abs() < 1e-14 {
                    return Err(Error::Degenerate("apex segment parallel to the triangle plane".into()));
                }
                let t = dot(&n, &sub(&v[0], &v[3])) / denom;
                if !(t > 0.0 && t < 1.0) {
                    return Err(Error::Containment("apex segment does not cross the triangle plane".into()));
                }
                let p = add(&v[3], &scale(&sub(&v[4], &v[3]), t));
                // p must be interior to the triangle for the cells to tile
                let tri = [&v[0], &v[1], &v[2]];
                let mut m = Matrix::zeros(4, 3);
                for (j, vert) in tri.iter().enumerate() {
                    for k in 0..3 {
                        m[(k, j)] = vert[k];
                    }
                    m[(3, j)] = 1.0;
                }
                // least-squares barycentric solve via normal equations
                let rhs = [p[0], p[1], p[2], 1.0];
                let mut g = Matrix::zeros(3, 3);
                let mut b = vec![0.0; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        g[(i, j)] = (0..4).map(|k| m[(k, i)] * m[(k, j)]).sum();
                    }
                    b[i] = (0..4).map(|k| m[(k, i)] * rhs[k]).sum();
                }
                let bary = solve(&g, &b)
                    .map_err(|_| Error::Degenerate("degenerate triangle".into()))?;
                if bary.iter().any(|&l| l <= 1e-12) {
                    return Err(Error::Containment("apex segment misses the triangle interior".into()));
                }
                let mut cells = Vec::with_capacity(6);
                for apex in [3, 4] {
                    for j in 0..3 {
                        cells.push(vec![
                            p.clone(),
                            v[j].clone(),
                            v[(j + 1) % 3].clone(),
                            v[apex].clone(),
                        ]);
                    }
                }
                Ok(Partition { base_point: p, cells })
            }
        }
    }

    /// Barycentric coordinates of the origin with respect to a simplex.
    fn barycentric_of_origin(&self) -> Result<Vec<f64>> {
        debug_assert_eq!(self.family, Family::Simplex);
        let d = self.dim;
        let mut m = Matrix::zeros(d + 1, d + 1);
        for (j, v) in self.vertices.iter().enumerate() {
            for k in 0..d {
                m[(k, j)] = v[k];
            }
            m[(d, j)] = 1.0;
        }
        let mut rhs = vec![0.0; d + 1];
        rhs[d] = 1.0;
        solve(&m, &rhs)
    }

    /// Partition cell volumes in label order.
    pub fn volume_vector(&self) -> Result<Vec<f64>> {
        Ok(self.partition()?.cell_volumes())
    }
}

pub fn make_polytope(spec: PolytopeSpec) -> Result<InscribedPolytope> {
    match spec {
        PolytopeSpec::Simplex { vertices } => InscribedPolytope::simplex(vertices),
        PolytopeSpec::Quadrilateral { angles } => InscribedPolytope::quadrilateral(angles),
        PolytopeSpec::PyramidQuad { z0 } => InscribedPolytope::pyramid_quad(z0),
        PolytopeSpec::BipyramidTri { r, h } => InscribedPolytope::bipyramid_tri(r, h),
    }
}

/// Weighted l_p norm, p in [1, infinity).
pub fn lp_norm(values: &[f64], p: f64, weights: Option<&[f64]>) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Parameter(format!("p must lie in [1, inf), got {p}")));
    }
    if let Some(w) = weights {
        if w.len() != values.len() {
            return Err(Error::Dimension("weight length differs from value length".into()));
        }
        if w.iter().any(|&x| x < 0.0) {
            return Err(Error::Parameter("weights must be nonnegative".into()));
        }
    }
    let acc: f64 = values
        .iter()
        .enumerate()
        .map(|(i, v)| weights.map_or(1.0, |w| w[i]) * v.abs().powf(p))
        .sum();
    Ok(acc.powf(1.0 / p))
}
