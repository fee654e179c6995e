//! Metric primitives: simplex volumes, lower-dimensional content, Hodge
//! complements, and outward facet normals.

use crate::error::{Error, Result};
use crate::linalg::{lu_det, Matrix};
use crate::tolerances::DEGENERACY_EPS;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|x| c * x).collect()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn centroid(points: &[Vec<f64>]) -> Vec<f64> {
    let d = points[0].len();
    let mut c = vec![0.0; d];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    scale(&c, 1.0 / points.len() as f64)
}

fn check_common_dim(points: &[Vec<f64>]) -> Result<usize> {
    let d = points
        .first()
        .map(|p| p.len())
        .ok_or_else(|| Error::Arity("expected at least one point".into()))?;
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::Dimension("points have mixed dimensions".into()));
    }
    Ok(d)
}

/// Volume of the simplex on `points` (d+1 points in R^d):
/// |det of the edge matrix from the first vertex| / d!.
pub fn simplex_volume(points: &[Vec<f64>]) -> Result<f64> {
    let d = check_common_dim(points)?;
    if points.len() != d + 1 {
        return Err(Error::Arity(format!(
            "simplex in R^{d} needs {} points, got {}",
            d + 1,
            points.len()
        )));
    }
    let edges: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    let det = lu_det(&Matrix::from_rows(&edges));
    Ok(det.abs() / factorial(d))
}

/// k-dimensional content of the simplex on k+1 points in R^d (k <= d):
/// sqrt(Gram determinant of the edge vectors) / k!.
pub fn facet_content(points: &[Vec<f64>]) -> Result<f64> {
    let d = check_common_dim(points)?;
    let k = points.len() - 1;
    if k == 0 || k > d {
        return Err(Error::Arity(format!("content of {} points in R^{d} is not defined", points.len())));
    }
    let edges: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    let mut gram = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = dot(&edges[i], &edges[j]);
        }
    }
    Ok(lu_det(&gram).max(0.0).sqrt() / factorial(k))
}

/// Orthogonal complement of d-1 vectors in R^d by cofactor expansion:
/// coordinate i is (-1)^(i+1) times the minor that deletes column i of the
/// (d-1) x d matrix with the inputs as rows. The result is orthogonal to every
/// input and its norm is the square root of their Gram determinant.
pub fn hodge_complement(vectors: &[Vec<f64>]) -> Result<Vec<f64>> {
    let d = check_common_dim(vectors)?;
    if vectors.len() != d - 1 {
        return Err(Error::Arity(format!(
            "complement in R^{d} needs {} vectors, got {}",
            d - 1,
            vectors.len()
        )));
    }
    let mut out = vec![0.0; d];
    for (i, o) in out.iter_mut().enumerate() {
        let minor: Vec<Vec<f64>> = vectors
            .iter()
            .map(|v| v.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, x)| *x).collect())
            .collect();
        let m = lu_det(&Matrix::from_rows(&minor));
        *o = if i % 2 == 0 { m } else { -m };
    }
    Ok(out)
}

/// Outward facet normals of a nondegenerate simplex, indexed by the omitted
/// vertex: `normals[j]` belongs to the facet opposite `points[j]`, points away
/// from the simplex centroid, and has norm vol_{d-1}(facet).
pub fn outward_facet_normals(points: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let d = check_common_dim(points)?;
    if points.len() != d + 1 {
        return Err(Error::Arity(format!(
            "simplex in R^{d} needs {} points, got {}",
            d + 1,
            points.len()
        )));
    }
    if simplex_volume(points)? < DEGENERACY_EPS {
        return Err(Error::Degenerate("simplex volume below 1e-12".into()));
    }
    let c_t = centroid(points);
    let mut normals = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let facet: Vec<Vec<f64>> = points
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, p)| p.clone())
            .collect();
        let edges: Vec<Vec<f64>> = facet[1..].iter().map(|p| sub(p, &facet[0])).collect();
        // raw complement has norm (d-1)! * vol_{d-1}(facet)
        let raw = hodge_complement(&edges)?;
        let mut n = scale(&raw, 1.0 / factorial(d - 1));
        let c_f = centroid(&facet);
        let side = dot(&n, &sub(&c_f, &c_t));
        if side < 0.0 {
            n = scale(&n, -1.0);
        } else if side == 0.0 {
            return Err(Error::Degenerate("facet normal cannot be oriented".into()));
        }
        normals.push(n);
    }
    Ok(normals)
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}
