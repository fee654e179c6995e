//! Frame operators and their spectral summaries, plus the subset-determinant
//! expansion of det(S) used as an independent oracle.

use itertools::Itertools;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, lu_det, Matrix};
use crate::tolerances::SUBSET_GUARD;

/// A spanning family of vectors in R^d. Construction performs the rank check;
/// a non-spanning family is not a frame.
#[derive(Clone, Debug)]
pub struct Frame {
    dim: usize,
    vectors: Vec<Vec<f64>>,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct FrameOperatorSummary {
    pub operator: Matrix,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub trace: f64,
    /// By LU factorization of S, independent of the eigensolver.
    pub determinant: f64,
    /// ||S - (tr S / d) I||_F / (tr S / d); zero exactly for tight frames.
    pub tightness_deviation: f64,
}

pub fn frame_operator_matrix(vectors: &[Vec<f64>], dim: usize) -> Matrix {
    let mut s = Matrix::zeros(dim, dim);
    for v in vectors {
        for i in 0..dim {
            for j in 0..dim {
                s[(i, j)] += v[i] * v[j];
            }
        }
    }
    s
}

impl Frame {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_labels(vectors, None)
    }

    pub fn with_labels(vectors: Vec<Vec<f64>>, labels: Option<Vec<String>>) -> Result<Self> {
        let dim = vectors
            .first()
            .map(|v| v.len())
            .ok_or_else(|| Error::Arity("a frame needs at least one vector".into()))?;
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::Dimension("frame vectors of mixed dimension".into()));
        }
        if let Some(l) = &labels {
            if l.len() != vectors.len() {
                return Err(Error::Arity("one label per vector".into()));
            }
        }
        let s = frame_operator_matrix(&vectors, dim);
        let eig = jacobi_eigen(&s)?;
        let max = eig.values[dim - 1];
        if eig.values[0] <= 1e-10 * max.max(1.0) {
            return Err(Error::NotAFrame);
        }
        Ok(Frame { dim, vectors, labels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

pub fn frame_operator(f: &Frame) -> Result<FrameOperatorSummary> {
    let d = f.dim;
    let s = frame_operator_matrix(&f.vectors, d);
    let eig = jacobi_eigen(&s)?;
    let trace = s.trace();
    let mean = trace / d as f64;
    let deviation = s.distance_from_scaled_identity(mean) / mean;
    Ok(FrameOperatorSummary {
        determinant: lu_det(&s),
        lower_bound: eig.values[0],
        upper_bound: eig.values[d - 1],
        eigenvalues: eig.values,
        trace,
        tightness_deviation: deviation,
        operator: s,
    })
}

/// det(S) expanded as the sum of det(V_J)^2 over all d-subsets J of the frame,
/// enumerated lexicographically. Independent of the LU path through S itself.
pub fn cauchy_binet(f: &Frame) -> Result<f64> {
    let d = f.dim;
    let n = f.len();
    if n < d {
        return Err(Error::Arity(format!("need at least {d} vectors, got {n}")));
    }
    let count = binomial(n as u64, d as u64);
    if count > SUBSET_GUARD {
        return Err(Error::Size(format!(
            "C({n},{d}) = {count} subsets exceeds the enumeration guard"
        )));
    }
    let mut total = 0.0;
    for subset in (0..n).combinations(d) {
        let mut m = Matrix::zeros(d, d);
        for (col, &idx) in subset.iter().enumerate() {
            for row in 0..d {
                m[(row, col)] = f.vectors[idx][row];
            }
        }
        let det = lu_det(&m);
        total += det * det;
    }
    Ok(total)
}

/// (tr S / d)^d - det S; nonnegative by AM-GM, zero iff the frame is tight.
pub fn trace_det_gap(s: &FrameOperatorSummary) -> f64 {
    let d = s.operator.nrows() as f64;
    (s.trace / d).powi(s.operator.nrows() as i32) - s.determinant
}

pub fn is_tight(f: &Frame, tol: f64) -> Result<bool> {
    Ok(frame_operator(f)?.tightness_deviation <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::InscribedPolytope;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn frame(vs: &[&[f64]]) -> Frame {
        Frame::new(vs.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn orthonormal_basis_is_tight_with_unit_operator() {
        let f = frame(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let s = frame_operator(&f).unwrap();
        assert_relative_eq!(s.operator[(0, 0)], 1.0);
        assert_relative_eq!(s.operator[(1, 1)], 1.0);
        assert_eq!(s.operator[(0, 1)], 0.0);
        assert_relative_eq!(s.lower_bound, 1.0);
        assert_relative_eq!(s.upper_bound, 1.0);
        assert!(s.tightness_deviation < 1e-15);
        assert_relative_eq!(cauchy_binet(&f).unwrap(), 1.0);
        assert!(is_tight(&f, 1e-9).unwrap());
    }

    #[test]
    fn mercedes_like_triple_matches_hand_computation() {
        let f = frame(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let s = frame_operator(&f).unwrap();
        assert_relative_eq!(s.operator[(0, 0)], 2.0);
        assert_relative_eq!(s.operator[(0, 1)], 1.0);
        assert_relative_eq!(s.operator[(1, 1)], 2.0);
        assert_relative_eq!(s.eigenvalues[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(s.eigenvalues[1], 3.0, epsilon = 1e-12);
        assert_relative_eq!(s.determinant, 3.0, max_relative = 1e-12);
        assert_relative_eq!(cauchy_binet(&f).unwrap(), 3.0, max_relative = 1e-12);
        // deviation: ||S - 2I||_F / 2 with off-diagonal ones
        assert_relative_eq!(s.tightness_deviation, std::f64::consts::SQRT_2 / 2.0, max_relative = 1e-12);
        assert!(!is_tight(&f, 1e-9).unwrap());
        assert_relative_eq!(trace_det_gap(&s), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn regular_simplex_vertex_frames_are_tight() {
        for d in 2..=6 {
            let p = InscribedPolytope::regular_simplex(d).unwrap();
            let f = Frame::new(p.vertices().to_vec()).unwrap();
            let s = frame_operator(&f).unwrap();
            let expected = (d as f64 + 1.0) / d as f64;
            for i in 0..d {
                assert_relative_eq!(s.eigenvalues[i], expected, max_relative = 1e-12);
            }
            assert!(s.tightness_deviation <= 1e-12);
            assert!(trace_det_gap(&s).abs() <= 1e-9 * (s.trace / d as f64).powi(d as i32));
        }
    }

    #[test]
    fn regular_triangle_cauchy_binet_oracle() {
        let p = InscribedPolytope::regular_simplex(2).unwrap();
        let f = Frame::new(p.vertices().to_vec()).unwrap();
        // three pairs, each spanning det^2 = 3/4
        assert_relative_eq!(cauchy_binet(&f).unwrap(), 9.0 / 4.0, max_relative = 1e-12);
        let s = frame_operator(&f).unwrap();
        assert_relative_eq!(s.determinant, 9.0 / 4.0, max_relative = 1e-12);
    }

    #[test]
    fn cauchy_binet_agrees_with_lu_on_random_frames() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 50 {
            let d = rng.gen_range(2..=5);
            let n = rng.gen_range(d..=10);
            let vectors: Vec<Vec<f64>> =
                (0..n).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            let Ok(f) = Frame::new(vectors) else { continue };
            let det = frame_operator(&f).unwrap().determinant;
            let cb = cauchy_binet(&f).unwrap();
            assert!((cb - det).abs() <= 1e-9 * det.abs().max(1.0), "cb={cb} det={det}");
            checked += 1;
        }
    }

    #[test]
    fn spectral_summary_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let d = rng.gen_range(2..=5);
            let n = rng.gen_range(d + 1..=9);
            let vectors: Vec<Vec<f64>> =
                (0..n).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            let Ok(f) = Frame::new(vectors) else { continue };
            let s = frame_operator(&f).unwrap();
            let eig_sum: f64 = s.eigenvalues.iter().sum();
            let eig_prod: f64 = s.eigenvalues.iter().product();
            assert!((s.trace - eig_sum).abs() <= 1e-10 * s.trace.abs().max(1.0));
            assert!((s.determinant - eig_prod).abs() <= 1e-9 * s.determinant.abs().max(1.0));
            assert!(s.lower_bound > 0.0);
            assert!(trace_det_gap(&s) >= -1e-9 * (s.trace / d as f64).powi(d as i32));
        }
    }

    #[test]
    fn operator_ignores_vector_order_and_signs() {
        let f1 = frame(&[&[0.3, 0.7], &[-1.0, 0.2], &[0.5, 0.5]]);
        let f2 = frame(&[&[0.5, 0.5], &[1.0, -0.2], &[-0.3, -0.7]]);
        let s1 = frame_operator(&f1).unwrap();
        let s2 = frame_operator(&f2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(s1.operator[(i, j)], s2.operator[(i, j)], epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn rank_deficient_family_is_rejected() {
        assert!(matches!(
            Frame::new(vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![3.0, 0.0]]),
            Err(Error::NotAFrame)
        ));
    }

    #[test]
    fn subset_guard_trips_on_huge_enumerations() {
        let d = 12;
        let mut vectors = Vec::new();
        for rep in 0..2 {
            for i in 0..d {
                let mut v = vec![0.0; d];
                v[i] = 1.0 + rep as f64;
                vectors.push(v);
            }
        }
        vectors.push(vec![0.1; d]);
        let f = Frame::new(vectors).unwrap();
        assert!(matches!(cauchy_binet(&f), Err(Error::Size(_))));
    }
}
