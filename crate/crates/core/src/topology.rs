//! Order complexes of open intervals: chain enumeration, reduced Euler
//! characteristics, mod-2 Betti numbers, and the sphere/contractible
//! verdict for each interval.
//!
//! Homology is computed over the 2-element field only; that is enough to
//! distinguish the predicted sphere pattern from the contractible pattern.
//! Homotopy equivalence itself is not certified, and a mod-2-acyclic but
//! non-contractible complex would not be caught — verdicts are labelled as
//! homology-level evidence accordingly.

use std::collections::HashMap;

use thiserror::Error;

use crate::skeleton::{SkeletonError, SkeletonPoset};

#[derive(Debug, Error)]
pub enum TopologyError {
    #[error("open interval requires u < v strictly, got {0:?} and {1:?}")]
    NotAnOpenInterval(String, String),
    #[error("complex on interval [{u}, {v}] has {count} faces, over the cap {cap}")]
    FaceCapExceeded { u: String, v: String, count: u128, cap: usize },
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
}

/// The order complex of an open interval: all chains, graded by dimension.
/// `faces[k]` lists the k-faces as sorted index vectors into `vertices`.
pub struct OrderComplex {
    pub vertices: Vec<usize>,
    pub faces: Vec<Vec<Vec<u32>>>,
}

impl OrderComplex {
    /// Dimension of the complex; -1 for the empty complex.
    pub fn dim(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len()).collect()
    }

    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(|f| f.len()).sum()
    }
}

/// Expected homotopy type of an open interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicted {
    /// Sphere of the given dimension; -1 encodes the empty complex.
    Sphere(i64),
    Contractible,
}

impl std::fmt::Display for Predicted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Predicted::Sphere(d) => write!(f, "sphere({d})"),
            Predicted::Contractible => write!(f, "contractible"),
        }
    }
}

/// Per-interval verification record. The prediction comes solely from the
/// lattice face criterion and the atom count; the remaining fields compare
/// it against Möbius, Euler, and (optionally) mod-2 Betti computations.
#[derive(Debug, Clone)]
pub struct TopologyVerdict {
    pub u: String,
    pub v: String,
    pub atom_count: usize,
    pub predicted: Predicted,
    pub mobius: i64,
    pub reduced_euler: i64,
    pub euler_ok: bool,
    /// Reduced mod-2 Betti numbers in degrees 0..=dim, when under the cap.
    pub betti: Option<Vec<usize>>,
    pub betti_ok: Option<bool>,
    pub face_count: Option<u128>,
}

/// Number of faces of the order complex of the open interval, without
/// materializing it. `None` when the count overflows u128.
pub fn count_complex_faces(
    poset: &SkeletonPoset,
    u: usize,
    v: usize,
) -> Result<Option<u128>, TopologyError> {
    let elems = open_interval(poset, u, v)?;
    let mut ending: HashMap<usize, u128> = HashMap::new();
    let mut total: u128 = 0;
    for &x in &elems {
        // Chains ending at x: x alone, or a chain ending at some y < x.
        let mut count: u128 = 1;
        for &y in &elems {
            if y != x && poset.leq(y, x) {
                count = match count.checked_add(ending[&y]) {
                    Some(c) => c,
                    None => return Ok(None),
                };
            }
        }
        ending.insert(x, count);
        total = match total.checked_add(count) {
            Some(t) => t,
            None => return Ok(None),
        };
    }
    Ok(Some(total))
}

fn open_interval(
    poset: &SkeletonPoset,
    u: usize,
    v: usize,
) -> Result<Vec<usize>, TopologyError> {
    if u == v || !poset.leq(u, v) {
        return Err(TopologyError::NotAnOpenInterval(
            poset.label(u).to_string(),
            poset.label(v).to_string(),
        ));
    }
    let elems = poset.interval(u, v)?;
    Ok(elems.into_iter().filter(|&z| z != u && z != v).collect())
}

/// Materializes the order complex of the open interval (u, v), refusing to
/// build more than `face_cap` faces.
pub fn order_complex(
    poset: &SkeletonPoset,
    u: usize,
    v: usize,
    face_cap: usize,
) -> Result<OrderComplex, TopologyError> {
    match count_complex_faces(poset, u, v)? {
        Some(count) if count <= face_cap as u128 => {}
        count => {
            return Err(TopologyError::FaceCapExceeded {
                u: poset.label(u).to_string(),
                v: poset.label(v).to_string(),
                count: count.unwrap_or(u128::MAX),
                cap: face_cap,
            })
        }
    }
    let vertices = open_interval(poset, u, v)?;
    let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
    // DFS over chains in the linear extension; each chain is emitted once
    // as a strictly increasing index vector.
    let mut stack: Vec<u32> = Vec::new();
    fn extend(
        poset: &SkeletonPoset,
        vertices: &[usize],
        stack: &mut Vec<u32>,
        faces: &mut Vec<Vec<Vec<u32>>>,
    ) {
        let dim = stack.len() - 1;
        if faces.len() <= dim {
            faces.push(Vec::new());
        }
        faces[dim].push(stack.clone());
        let last = vertices[*stack.last().unwrap() as usize];
        for next in (*stack.last().unwrap() as usize + 1)..vertices.len() {
            if poset.leq(last, vertices[next]) {
                stack.push(next as u32);
                extend(poset, vertices, stack, faces);
                stack.pop();
            }
        }
    }
    for start in 0..vertices.len() {
        stack.push(start as u32);
        extend(poset, &vertices, &mut stack, &mut faces);
        stack.pop();
    }
    for level in faces.iter_mut() {
        level.sort_unstable();
    }
    Ok(OrderComplex { vertices, faces })
}

/// Alternating sum of face counts minus one; -1 for the empty complex.
pub fn reduced_euler(complex: &OrderComplex) -> i64 {
    let mut chi: i64 = -1;
    for (k, level) in complex.faces.iter().enumerate() {
        let count = level.len() as i64;
        if k % 2 == 0 {
            chi += count;
        } else {
            chi -= count;
        }
    }
    chi
}

/// Reduced Euler characteristic of the open-interval order complex,
/// computed by a signed chain-count sweep without materializing chains.
pub fn reduced_euler_interval(
    poset: &SkeletonPoset,
    u: usize,
    v: usize,
) -> Result<i64, TopologyError> {
    let elems = open_interval(poset, u, v)?;
    // s(x) = sum over chains ending at x of (-1)^(len-1); the reduced Euler
    // characteristic is sum_x s(x) - 1.
    let mut s: HashMap<usize, i64> = HashMap::new();
    let mut total: i64 = -1;
    for &x in &elems {
        let mut sx: i64 = 1;
        for &y in &elems {
            if y != x && poset.leq(y, x) {
                sx -= s[&y];
            }
        }
        s.insert(x, sx);
        total += sx;
    }
    Ok(total)
}

/// Reduced Betti numbers over the 2-element field, degrees 0..=dim.
///
/// Uses the augmented chain complex, so a single point has all zeros and
/// two points have beta_0 = 1.
pub fn betti_mod2(complex: &OrderComplex) -> Vec<usize> {
    if complex.faces.is_empty() {
        return Vec::new();
    }
    let dim = complex.faces.len() - 1;
    // rank of the boundary map from k-faces to (k-1)-faces, k = 0..=dim;
    // the k = 0 map is the augmentation to the coefficient field.
    let mut boundary_rank = vec![0usize; dim + 2];
    boundary_rank[0] = usize::from(!complex.faces[0].is_empty());
    for k in 1..=dim {
        let lower: HashMap<&[u32], u32> = complex.faces[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i as u32))
            .collect();
        let rows: Vec<Vec<u32>> = complex.faces[k]
            .iter()
            .map(|face| {
                let mut row: Vec<u32> = (0..face.len())
                    .map(|skip| {
                        let sub: Vec<u32> = face
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &x)| x)
                            .collect();
                        lower[sub.as_slice()]
                    })
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        boundary_rank[k] = gf2_rank(rows);
    }
    (0..=dim)
        .map(|k| complex.faces[k].len() - boundary_rank[k] - boundary_rank[k + 1])
        .collect()
}

/// Rank of a GF(2) matrix given as sparse sorted rows.
fn gf2_rank(rows: Vec<Vec<u32>>) -> usize {
    let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut rank = 0;
    for mut row in rows {
        while let Some(&lead) = row.last() {
            match pivots.get(&lead) {
                Some(other) => row = xor_sorted(&row, other),
                None => {
                    pivots.insert(lead, row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Classifies one open interval: prediction from the lattice face
/// criterion, then Möbius, Euler, and Betti cross-checks.
pub fn classify_interval(
    poset: &SkeletonPoset,
    u: usize,
    v: usize,
    face_cap: usize,
) -> Result<TopologyVerdict, TopologyError> {
    let atoms = poset.atoms(u, v)?;
    let a = atoms.len();
    let is_face = poset.is_face_interval(u, v)?;
    let predicted = if is_face {
        Predicted::Sphere(a as i64 - 2)
    } else {
        Predicted::Contractible
    };
    let mobius = poset.mobius(u, v)?;
    let chi = reduced_euler_interval(poset, u, v)?;
    let expected_mu = if is_face {
        if a % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        0
    };
    let euler_ok = mobius == expected_mu && chi == mobius;
    let face_count = count_complex_faces(poset, u, v)?;
    let (betti, betti_ok) = match face_count {
        Some(count) if count <= face_cap as u128 => {
            let complex = order_complex(poset, u, v, face_cap)?;
            let betti = betti_mod2(&complex);
            let ok = betti_matches(&betti, predicted)
                && euler_poincare_consistent(&betti, reduced_euler(&complex));
            (Some(betti), Some(ok))
        }
        _ => (None, None),
    };
    Ok(TopologyVerdict {
        u: poset.label(u).to_string(),
        v: poset.label(v).to_string(),
        atom_count: a,
        predicted,
        mobius,
        reduced_euler: chi,
        euler_ok,
        betti,
        betti_ok,
        face_count,
    })
}

/// Does a reduced mod-2 Betti vector match the predicted pattern?
/// Sphere(k) wants a single 1 in degree k; Sphere(-1) wants the empty
/// complex; contractible wants all zeros on a nonempty complex.
pub fn betti_matches(betti: &[usize], predicted: Predicted) -> bool {
    match predicted {
        Predicted::Sphere(-1) => betti.is_empty(),
        Predicted::Sphere(k) => {
            !betti.is_empty()
                && betti
                    .iter()
                    .enumerate()
                    .all(|(d, &b)| b == usize::from(d as i64 == k))
        }
        Predicted::Contractible => !betti.is_empty() && betti.iter().all(|&b| b == 0),
    }
}

fn euler_poincare_consistent(betti: &[usize], chi: i64) -> bool {
    // Reduced Euler characteristic vs alternating sum of reduced Betti
    // numbers; the empty complex carries the (-1)-degree contribution.
    if betti.is_empty() {
        return chi == -1;
    }
    let mut sum: i64 = 0;
    for (d, &b) in betti.iter().enumerate() {
        if d % 2 == 0 {
            sum += b as i64;
        } else {
            sum -= b as i64;
        }
    }
    sum == chi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::build_bip_poset;
    use crate::symgroup::Permutation;

    fn poset_321() -> SkeletonPoset {
        build_bip_poset(&"321".parse::<Permutation>().unwrap()).unwrap()
    }

    #[test]
    fn cover_interval_has_empty_complex() {
        let poset = poset_321();
        let e = |s: &str| poset.element(s).unwrap();
        let complex = order_complex(&poset, e("123"), e("213"), 1000).unwrap();
        assert_eq!(complex.total_faces(), 0);
        assert_eq!(reduced_euler(&complex), -1);
        assert_eq!(betti_mod2(&complex), Vec::<usize>::new());
    }

    #[test]
    fn hexagon_full_interval_complex() {
        let poset = poset_321();
        let e = |s: &str| poset.element(s).unwrap();
        let complex = order_complex(&poset, e("123"), e("321"), 1000).unwrap();
        // Four vertices and the two edges 213 < 231 and 132 < 312.
        assert_eq!(complex.face_counts(), vec![4, 2]);
        assert_eq!(reduced_euler(&complex), 1);
        // Two disjoint edges: the 0-sphere pattern.
        assert_eq!(betti_mod2(&complex), vec![1, 0]);
    }

    #[test]
    fn euler_fast_agrees_with_materialized() {
        let poset = build_bip_poset(&"3412".parse::<Permutation>().unwrap()).unwrap();
        for (u, v) in poset.strict_intervals() {
            let complex = order_complex(&poset, u, v, 100_000).unwrap();
            assert_eq!(
                reduced_euler(&complex),
                reduced_euler_interval(&poset, u, v).unwrap()
            );
        }
    }

    #[test]
    fn hexagonal_cycle_has_s1_pattern() {
        // Cycle complex on 6 vertices: build directly.
        let complex = OrderComplex {
            vertices: (0..6).collect(),
            faces: vec![
                (0..6u32).map(|i| vec![i]).collect(),
                (0..6u32).map(|i| {
                    let mut e = vec![i, (i + 1) % 6];
                    e.sort_unstable();
                    e
                }).collect(),
            ],
        };
        assert_eq!(betti_mod2(&complex), vec![0, 1]);
        assert_eq!(reduced_euler(&complex), -1 + 6 - 6 + 1 - 1);
    }

    #[test]
    fn classify_3412_full_interval() {
        let poset = build_bip_poset(&"3412".parse::<Permutation>().unwrap()).unwrap();
        let u = poset.element("1234").unwrap();
        let v = poset.element("3412").unwrap();
        let verdict = classify_interval(&poset, u, v, 100_000).unwrap();
        assert_eq!(verdict.atom_count, 3);
        assert_eq!(verdict.predicted, Predicted::Sphere(1));
        assert_eq!(verdict.mobius, -1);
        assert!(verdict.euler_ok);
        assert_eq!(verdict.betti, Some(vec![0, 1, 0]));
        assert_eq!(verdict.betti_ok, Some(true));
        // Open interval has 12 vertices.
        let complex = order_complex(&poset, u, v, 100_000).unwrap();
        assert_eq!(complex.vertices.len(), 12);
    }

    #[test]
    fn classify_contractible_and_s0_intervals() {
        let poset = poset_321();
        let e = |s: &str| poset.element(s).unwrap();
        let contractible = classify_interval(&poset, e("123"), e("231"), 1000).unwrap();
        assert_eq!(contractible.predicted, Predicted::Contractible);
        assert_eq!(contractible.mobius, 0);
        assert!(contractible.euler_ok);
        assert_eq!(contractible.betti_ok, Some(true));

        let sphere0 = classify_interval(&poset, e("123"), e("321"), 1000).unwrap();
        assert_eq!(sphere0.predicted, Predicted::Sphere(0));
        assert_eq!(sphere0.mobius, 1);
        assert!(sphere0.euler_ok);
        assert_eq!(sphere0.betti, Some(vec![1, 0]));
        assert_eq!(sphere0.betti_ok, Some(true));
    }

    #[test]
    fn face_cap_is_enforced() {
        let poset = build_bip_poset(&"3412".parse::<Permutation>().unwrap()).unwrap();
        let u = poset.element("1234").unwrap();
        let v = poset.element("3412").unwrap();
        match order_complex(&poset, u, v, 3) {
            Err(TopologyError::FaceCapExceeded { cap: 3, .. }) => {}
            other => panic!("expected cap error, got {:?}", other.map(|c| c.total_faces())),
        }
        let verdict = classify_interval(&poset, u, v, 3).unwrap();
        assert!(verdict.betti.is_none());
        assert!(verdict.euler_ok);
    }

    #[test]
    fn open_interval_requires_strict_comparability() {
        let poset = poset_321();
        let e = |s: &str| poset.element(s).unwrap();
        assert!(order_complex(&poset, e("123"), e("123"), 10).is_err());
        assert!(order_complex(&poset, e("213"), e("132"), 10).is_err());
    }
}
