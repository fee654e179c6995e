//! Counting arguments behind the inequality constants: which edge subsets of a
//! simplex span, and how many spanning trees of a complete graph use a fixed
//! edge.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{norm, simplex_volume, sub};
use crate::linalg::{bareiss_det, lu_det, Matrix};
use crate::tolerances::{RESAMPLE_BUDGET, SUBSET_GUARD};

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// True iff the given edges form a spanning tree on vertices 0..n_vertices.
fn is_spanning_tree(edges: &[(usize, usize)], n_vertices: usize) -> bool {
    if edges.len() + 1 != n_vertices {
        return false;
    }
    let mut parent: Vec<usize> = (0..n_vertices).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Number of d-subsets of the C(d+1,2) edge vectors of a generic simplex with
/// nonzero determinant. Spanning subsets are exactly the spanning trees of
/// the vertex graph, so the count is (d+1)^(d-1); the enumeration measures it
/// rather than assuming it. The simplex is resampled whenever a spanning
/// subset lands within the degeneracy margin, so the result is seed-stable.
pub fn cayley_constant(d: usize, seed: u64) -> Result<u64> {
    if !(2..=6).contains(&d) {
        return Err(Error::Parameter(format!("edge-subset census supports d in 2..=6, got {d}")));
    }
    let n_edges = d * (d + 1) / 2;
    if binomial(n_edges as u64, d as u64) > SUBSET_GUARD {
        return Err(Error::Size("edge-subset enumeration guard exceeded".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..=d).tuple_combinations().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'resample: for _ in 0..RESAMPLE_BUDGET {
        let vertices: Vec<Vec<f64>> =
            (0..=d).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        if simplex_volume(&vertices)? < 1e-3 {
            continue;
        }
        let edge_vectors: Vec<Vec<f64>> =
            pairs.iter().map(|&(i, j)| sub(&vertices[j], &vertices[i])).collect();
        let scale = edge_vectors
            .iter()
            .map(|e| norm(e))
            .fold(0.0_f64, f64::max)
            .powi(d as i32);
        let mut count = 0;
        for subset in (0..n_edges).combinations(d) {
            let mut m = Matrix::zeros(d, d);
            for (col, &idx) in subset.iter().enumerate() {
                for row in 0..d {
                    m[(row, col)] = edge_vectors[idx][row];
                }
            }
            let nonzero = lu_det(&m).abs() > 1e-9 * scale;
            let spans = is_spanning_tree(
                &subset.iter().map(|&i| pairs[i]).collect::<Vec<_>>(),
                d + 1,
            );
            if nonzero != spans {
                // borderline determinant on a subset the combinatorics does
                // not force either way; try a fresh simplex
                continue 'resample;
            }
            if nonzero {
                count += 1;
            }
        }
        return Ok(count);
    }
    Err(Error::Sampling("no generic simplex found within the resample budget".into()))
}

/// Spanning trees of the complete graph K_n by the matrix-tree theorem, in
/// exact integer arithmetic. With `through_edge` the count is restricted to
/// trees containing the distinguished edge {0,1}, computed on the contracted
/// multigraph K_n/{0,1} (doubled edges from the merged vertex).
pub fn spanning_tree_count(n: usize, through_edge: bool) -> Result<i128> {
    if !(3..=12).contains(&n) {
        return Err(Error::Parameter(format!("spanning-tree count supports n in 3..=12, got {n}")));
    }
    let size = if through_edge { n - 1 } else { n };
    let mut mult = vec![vec![0_i128; size]; size];
    for i in 0..size {
        for j in i + 1..size {
            // vertex 0 of the contracted graph is the merged pair, reached by
            // two parallel edges from everywhere else
            let m = if through_edge && i == 0 { 2 } else { 1 };
            mult[i][j] = m;
            mult[j][i] = m;
        }
    }
    let mut laplacian = vec![vec![0_i128; size]; size];
    for i in 0..size {
        let degree: i128 = mult[i].iter().sum();
        for j in 0..size {
            laplacian[i][j] = if i == j { degree } else { -mult[i][j] };
        }
    }
    // any cofactor works; drop the last row and column
    let cofactor: Vec<Vec<i128>> = laplacian[..size - 1]
        .iter()
        .map(|row| row[..size - 1].to_vec())
        .collect();
    Ok(bareiss_det(&cofactor))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(21, 6), 54264);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(10, 7), binomial(10, 3));
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn spanning_tree_counts_match_cayley_formula() {
        for n in 3..=12 {
            let total = spanning_tree_count(n, false).unwrap();
            assert_eq!(total, (n as i128).pow(n as u32 - 2), "n={n}");
        }
    }

    #[test]
    fn through_edge_counts_are_two_n_to_the_n_minus_three() {
        for n in 3..=10 {
            let through = spanning_tree_count(n, true).unwrap();
            assert_eq!(through, 2 * (n as i128).pow(n as u32 - 3), "n={n}");
        }
        assert_eq!(spanning_tree_count(4, true).unwrap(), 8);
        assert_eq!(spanning_tree_count(5, true).unwrap(), 50);
    }

    #[test]
    fn through_edge_count_matches_exhaustive_enumeration() {
        // every 4-edge subset of K_5: count spanning trees and how many use {0,1}
        let n = 5;
        let edges: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        let mut total = 0_i128;
        let mut through = 0_i128;
        for subset in (0..edges.len()).combinations(n - 1) {
            let chosen: Vec<_> = subset.iter().map(|&i| edges[i]).collect();
            if is_spanning_tree(&chosen, n) {
                total += 1;
                if chosen.contains(&(0, 1)) {
                    through += 1;
                }
            }
        }
        assert_eq!(total, spanning_tree_count(n, false).unwrap());
        assert_eq!(through, spanning_tree_count(n, true).unwrap());
        // deleting the edge instead would leave 125 - 50 = 75 trees
        assert_eq!(total - through, 75);
    }

    #[test]
    fn spanning_tree_count_rejects_out_of_range_n() {
        assert!(spanning_tree_count(2, false).is_err());
        assert!(spanning_tree_count(13, true).is_err());
    }

    #[test]
    fn edge_subset_census_matches_formula_for_small_d() {
        assert_eq!(cayley_constant(2, 0).unwrap(), 3);
        assert_eq!(cayley_constant(3, 0).unwrap(), 16);
        assert_eq!(cayley_constant(4, 0).unwrap(), 125);
    }

    #[test]
    fn edge_subset_census_is_seed_independent() {
        assert_eq!(cayley_constant(3, 1).unwrap(), cayley_constant(3, 99).unwrap());
    }

    #[test]
    fn edge_subset_census_rejects_unsupported_dimension() {
        assert!(cayley_constant(1, 0).is_err());
        assert!(cayley_constant(7, 0).is_err());
    }
}
