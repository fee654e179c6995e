//! The fixed integer quadratic forms relating det(S_E) of an augmented edge
//! set to the partition volume vector, plus their spectral sanity checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builders::augmented_edge_frame;
use crate::error::{Error, Result};
use crate::frame::frame_operator;
use crate::linalg::{jacobi_eigen, Matrix};
use crate::polytope::{Family, InscribedPolytope};
use crate::tolerances::ZFORM_REL_TOL;

/// The circulant form shared by the quadrilateral and the pyramid: cells
/// adjacent across a diagonal couple with coefficient 1.
const Z_CYCLE4: [[i64; 4]; 4] = [
    [2, 1, 0, 1],
    [1, 2, 1, 0],
    [0, 1, 2, 1],
    [1, 0, 1, 2],
];

/// Bipyramid form: cells couple within each apex group and across the shared
/// triangle edge.
const Z_BIPYR: [[i64; 6]; 6] = [
    [2, 1, 1, 1, 0, 0],
    [1, 2, 1, 0, 1, 0],
    [1, 1, 2, 0, 0, 1],
    [1, 0, 0, 2, 1, 1],
    [0, 1, 0, 1, 2, 1],
    [0, 0, 1, 1, 1, 2],
];

pub fn z_matrix(family: Family) -> Result<Vec<Vec<i64>>> {
    match family {
        Family::Quadrilateral | Family::PyramidQuad => {
            Ok(Z_CYCLE4.iter().map(|r| r.to_vec()).collect())
        }
        Family::BipyramidTri => Ok(Z_BIPYR.iter().map(|r| r.to_vec()).collect()),
        Family::Simplex => Err(Error::Family {
            family: "simplex".into(),
            detail: "no augmented-edge quadratic form".into(),
        }),
    }
}

/// det(S_E(Q u Q°)) = scale * <ZT, T>.
pub fn z_scale(family: Family) -> Result<f64> {
    match family {
        Family::Quadrilateral => Ok(16.0),
        // 5^2 (3!)^2
        Family::PyramidQuad | Family::BipyramidTri => Ok(900.0),
        Family::Simplex => Err(Error::Family {
            family: "simplex".into(),
            detail: "no augmented-edge quadratic form".into(),
        }),
    }
}

#[derive(Clone, Debug)]
pub struct ZForm {
    pub matrix: Vec<Vec<i64>>,
    pub scale: f64,
    /// Partition volume vector T in label order.
    pub volumes: Vec<f64>,
    /// <ZT, T>.
    pub value: f64,
    /// det of the frame operator of the full augmented edge set.
    pub edge_det: f64,
}

impl ZForm {
    /// <(Z/2 - I)T, T>: the cross terms of the form. For the cycle matrix
    /// this equals (T_1 + T_3)(T_2 + T_4).
    pub fn epsilon(&self) -> f64 {
        let norm_sq: f64 = self.volumes.iter().map(|t| t * t).sum();
        self.value / 2.0 - norm_sq
    }
}

pub fn quadratic_form(z: &[Vec<i64>], t: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, row) in z.iter().enumerate() {
        for (j, &zij) in row.iter().enumerate() {
            acc += zij as f64 * t[i] * t[j];
        }
    }
    acc
}

/// Assembles the family's Z-form and cross-checks it against the determinant
/// of the augmented edge frame operator. A mismatch means either the fixed
/// matrix or the partition labeling has been transcribed wrongly, so it is a
/// hard error rather than report data.
pub fn z_form(q: &InscribedPolytope) -> Result<ZForm> {
    let matrix = z_matrix(q.family())?;
    let scale = z_scale(q.family())?;
    let volumes = q.volume_vector()?;
    let value = quadratic_form(&matrix, &volumes);
    let aug = augmented_edge_frame(q, true)?;
    let edge_det = frame_operator(&aug.frame()?)?.determinant;
    let predicted = scale * value;
    if (edge_det - predicted).abs() > ZFORM_REL_TOL * edge_det.abs().max(1e-300) {
        return Err(Error::Consistency(format!(
            "det S_E = {edge_det} but scale*<ZT,T> = {predicted} for {}",
            q.family().name()
        )));
    }
    Ok(ZForm { matrix, scale, volumes, value, edge_det })
}

#[derive(Clone, Debug)]
pub struct ZPropertyReport {
    pub symmetric: bool,
    /// <Zx,x> >= 0 on the nonnegative orthant; certified by positive
    /// semidefiniteness when it holds, otherwise by orthant sampling.
    pub copositive: bool,
    pub nonnegative_entries: bool,
    pub constant_diagonal: Option<i64>,
    pub constant_row_sum: Option<i64>,
    /// Row sum strictly exceeds the diagonal, i.e. the form actually couples
    /// distinct cells. Z = 2I is the negative control.
    pub has_off_diagonal_mass: bool,
    pub eigenvalues: Vec<f64>,
    pub eigs_within_row_sum: bool,
    pub top_eig_is_row_sum: bool,
    pub ones_is_eigenvector: bool,
    pub non_top_eigenvectors_mix_signs: bool,
}

impl ZPropertyReport {
    pub fn all_pass(&self) -> bool {
        self.symmetric
            && self.copositive
            && self.nonnegative_entries
            && self.constant_diagonal.is_some()
            && self.constant_row_sum.is_some()
            && self.has_off_diagonal_mass
            && self.eigs_within_row_sum
            && self.top_eig_is_row_sum
            && self.ones_is_eigenvector
            && self.non_top_eigenvectors_mix_signs
    }
}

pub fn z_spectral_properties(z: &[Vec<i64>]) -> Result<ZPropertyReport> {
    let n = z.len();
    if n == 0 || z.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("Z must be square and nonempty".into()));
    }
    let symmetric = (0..n).all(|i| (0..n).all(|j| z[i][j] == z[j][i]));
    let nonnegative_entries = z.iter().flatten().all(|&v| v >= 0);
    let constant_diagonal = {
        let a = z[0][0];
        (0..n).all(|i| z[i][i] == a).then_some(a)
    };
    let row_sums: Vec<i64> = z.iter().map(|r| r.iter().sum()).collect();
    let constant_row_sum = (row_sums.iter().all(|&s| s == row_sums[0])).then_some(row_sums[0]);

    let mut zf = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            zf[(i, j)] = z[i][j] as f64;
        }
    }
    let eig = jacobi_eigen(&zf)?;
    let rho = constant_row_sum.unwrap_or(row_sums[0]) as f64;

    let copositive = if eig.values[0] >= -1e-10 {
        true
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..512).all(|_| {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            quadratic_form(z, &x) >= -1e-10
        })
    };

    let eigs_within_row_sum =
        eig.values.iter().all(|&l| l >= -1e-10 && l <= rho + 1e-10);
    let top_eig_is_row_sum = (eig.values[n - 1] - rho).abs() <= 1e-10;
    // integer check of Z*ones = rho*ones
    let ones_is_eigenvector =
        constant_row_sum.is_some() && row_sums.iter().all(|&s| s == row_sums[0]);

    let mut mix = true;
    for k in 0..n {
        if (eig.values[k] - rho).abs() <= 1e-8 {
            continue;
        }
        let col: Vec<f64> = (0..n).map(|i| eig.vectors[(i, k)]).collect();
        let min = col.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !(min < -1e-10 && max > 1e-10) {
            mix = false;
        }
    }

    let alpha = constant_diagonal.unwrap_or(0);
    Ok(ZPropertyReport {
        symmetric,
        copositive,
        nonnegative_entries,
        constant_diagonal,
        constant_row_sum,
        has_off_diagonal_mass: constant_row_sum.map_or(false, |r| r > alpha),
        eigenvalues: eig.values,
        eigs_within_row_sum,
        top_eig_is_row_sum,
        ones_is_eigenvector,
        non_top_eigenvectors_mix_signs: mix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn square_z_form_matches_hand_values() {
        let q = InscribedPolytope::quadrilateral([0.0, FRAC_PI_2, 2.0 * FRAC_PI_2, 3.0 * FRAC_PI_2])
            .unwrap();
        let form = z_form(&q).unwrap();
        assert_eq!(form.scale, 16.0);
        for t in &form.volumes {
            assert_relative_eq!(*t, 0.5, max_relative = 1e-13);
        }
        assert_relative_eq!(form.value, 4.0, max_relative = 1e-12);
        assert_relative_eq!(form.edge_det, 64.0, max_relative = 1e-12);
        // all four cells equal, so the cross terms equal the diagonal pairs
        assert_relative_eq!(form.epsilon(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn quad_epsilon_equals_diagonal_pair_product() {
        let q = InscribedPolytope::quadrilateral([0.2, 1.1, 2.9, 4.6]).unwrap();
        let form = z_form(&q).unwrap();
        let t = &form.volumes;
        assert_relative_eq!(
            form.epsilon(),
            (t[0] + t[2]) * (t[1] + t[3]),
            max_relative = 1e-12
        );
        assert!(form.epsilon() >= 0.0);
    }

    #[test]
    fn pyramid_cross_check_at_equatorial_base() {
        let p = InscribedPolytope::pyramid_quad(0.0).unwrap();
        let form = z_form(&p).unwrap();
        assert_eq!(form.scale, 900.0);
        // S_E(Q u Q°) = diag(10, 10, 4) at z0 = 0
        assert_relative_eq!(form.edge_det, 400.0, max_relative = 1e-12);
        assert_relative_eq!(form.value, 400.0 / 900.0, max_relative = 1e-12);
    }

    #[test]
    fn bipyramid_cross_check_closed_form() {
        // S_E(Q u Q°) = diag(7.5 r^2, 7.5 r^2, 10 h^2)
        for (r, h) in [(0.8, 0.6), (0.5, 1.0), (1.0, 3.0_f64.sqrt() / 2.0)] {
            let b = InscribedPolytope::bipyramid_tri(r, h).unwrap();
            let form = z_form(&b).unwrap();
            assert_relative_eq!(
                form.edge_det,
                562.5 * r.powi(4) * h * h,
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn cross_check_holds_on_sampled_parameters() {
        for k in 0..20 {
            let z0 = -0.9 + 0.07 * k as f64;
            z_form(&InscribedPolytope::pyramid_quad(z0).unwrap()).unwrap();
        }
        for k in 1..=20 {
            let a = 0.05 * k as f64;
            let q = InscribedPolytope::quadrilateral([0.0, 0.9 + a, 2.8, 4.0 + a]).unwrap();
            z_form(&q).unwrap();
        }
    }

    #[test]
    fn quad_spectrum_is_the_circulant_one() {
        let z = z_matrix(Family::Quadrilateral).unwrap();
        let report = z_spectral_properties(&z).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.constant_row_sum, Some(4));
        assert_eq!(report.constant_diagonal, Some(2));
        let expected = [0.0, 2.0, 2.0, 4.0];
        for (have, want) in report.eigenvalues.iter().zip(expected) {
            assert_relative_eq!(*have, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn bipyramid_spectrum_and_row_sum() {
        let z = z_matrix(Family::BipyramidTri).unwrap();
        let report = z_spectral_properties(&z).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.constant_row_sum, Some(5));
        let expected = [0.0, 0.0, 2.0, 2.0, 3.0, 5.0];
        for (have, want) in report.eigenvalues.iter().zip(expected) {
            assert_relative_eq!(*have, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn scaled_identity_is_the_negative_control() {
        let z = vec![vec![2, 0], vec![0, 2]];
        let report = z_spectral_properties(&z).unwrap();
        assert!(!report.has_off_diagonal_mass);
        assert!(!report.all_pass());
        assert!(report.symmetric && report.copositive && report.nonnegative_entries);
    }
}
