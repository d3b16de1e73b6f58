//! Brute-force oracles, independent of the LP-backed implementation paths
//! they are used to check.
#![allow(dead_code)] // shared across test binaries with different needs

use biplab_core::exactgeom::Rat;
use num_traits::{One, Signed, Zero};

/// Exact Gaussian solve of `A x = b` for a unique solution; `None` when the
/// system is inconsistent or underdetermined.
pub fn solve_unique(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows == 0 { return None } else { a[0].len() };
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][col].clone();
        for c in col..=cols {
            m[rank][c] = &m[rank][c] / &piv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let delta = &f * &m[rank][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // Inconsistent row: all-zero coefficients with nonzero rhs.
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    if rank < cols {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[r][cols].clone();
    }
    Some(x)
}

/// Smallest face of the polytope (given by vertex coordinates) containing
/// the barycenter of `seed`, by exhaustive convex-combination search: for
/// every affinely small subset, solve exactly for barycentric weights and
/// union the supports of the nonnegative solutions.
pub fn brute_smallest_face(points: &[Vec<Rat>], seed: &[usize]) -> Vec<usize> {
    let m = points.len();
    let dim = points[0].len();
    let barycenter: Vec<Rat> = {
        let k = Rat::from_integer((seed.len() as i64).into());
        (0..=dim)
            .map(|c| {
                let total: Rat = seed
                    .iter()
                    .map(|&s| {
                        if c < dim {
                            points[s][c].clone()
                        } else {
                            Rat::one()
                        }
                    })
                    .sum();
                total / &k
            })
            .collect()
    };
    let mut in_face = vec![false; m];
    let max_support = dim + 2;
    let mut subset: Vec<usize> = Vec::new();
    fn rec(
        points: &[Vec<Rat>],
        barycenter: &[Rat],
        dim: usize,
        start: usize,
        max_support: usize,
        subset: &mut Vec<usize>,
        in_face: &mut [bool],
    ) {
        if !subset.is_empty() {
            // Columns are homogeneous vertex coordinates.
            let a: Vec<Vec<Rat>> = (0..=dim)
                .map(|c| {
                    subset
                        .iter()
                        .map(|&v| {
                            if c < dim {
                                points[v][c].clone()
                            } else {
                                Rat::one()
                            }
                        })
                        .collect()
                })
                .collect();
            if let Some(weights) = solve_unique(&a, barycenter) {
                if weights.iter().all(|w| !w.is_negative()) {
                    for (k, &v) in subset.iter().enumerate() {
                        if weights[k].is_positive() {
                            in_face[v] = true;
                        }
                    }
                }
            }
        }
        if subset.len() == max_support {
            return;
        }
        for v in start..points.len() {
            subset.push(v);
            rec(points, barycenter, dim, v + 1, max_support, subset, in_face);
            subset.pop();
        }
    }
    rec(
        points,
        &barycenter,
        dim,
        0,
        max_support,
        &mut subset,
        &mut in_face,
    );
    (0..m).filter(|&v| in_face[v]).collect()
}

/// Face test via the brute-force smallest-face oracle.
pub fn brute_is_face(points: &[Vec<Rat>], subset: &[usize]) -> bool {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    brute_smallest_face(points, &sorted) == sorted
}
