//! Exact polytope oracles backed by the rational simplex: vertex-set
//! adjacency, smallest containing face, face dimension and face tests,
//! plus generic cost-vector orientations.
//!
//! No face lattice is ever enumerated. Every query is answered through
//! convex-combination LPs on the vertex set, so the answers are exact and
//! independent of any combinatorial model of the polytope.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::lp::{solve_eq_nonneg, EqNonnegVerdict, LpError};
use super::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("vertex has {got} coordinates, expected {expected}")]
    PointDimensionMismatch {
        expected: usize,
        got: usize,
    },
    #[error("point {0:?} is not a vertex of the convex hull")]
    NotAVertex(String),
    #[error("polytope needs at least one vertex")]
    Empty,
    #[error("face dimension is undefined for an empty vertex set")]
    EmptyFace,
    #[error("cost vector has {got} coordinates, expected {expected}")]
    CostDimensionMismatch { expected: usize, got: usize },
    #[error("cost vector is not generic: edge {0:?} -- {1:?} is orthogonal to it")]
    NonGenericCost(String, String),
    #[error("orientation is not facial on {face:?}: found {sources} sources and {sinks} sinks")]
    NotFacial {
        face: Vec<String>,
        sources: usize,
        sinks: usize,
    },
    #[error("identical labels {0:?} passed where two vertices are required")]
    SameVertex(String),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// A polytope stored as an explicit labelled vertex list over exact
/// rationals. Construction verifies that every listed point really is a
/// vertex of the convex hull.
#[derive(Debug, Clone)]
pub struct RationalPolytope {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    points: Vec<Vec<Rat>>,
    ambient_dim: usize,
    /// Pairs allowed to be edges; `None` means all pairs are candidates.
    /// Used to exploit the generalized-permutahedron edge directions of
    /// interval polytopes without changing any answer.
    edge_candidates: Option<Vec<(usize, usize)>>,
    edges: OnceLock<Vec<(usize, usize)>>,
}

impl RationalPolytope {
    pub fn new(vertices: Vec<(String, Vec<Rat>)>) -> Result<Self, GeomError> {
        Self::with_edge_candidates(vertices, None)
    }

    pub fn with_edge_candidates(
        vertices: Vec<(String, Vec<Rat>)>,
        edge_candidates: Option<Vec<(usize, usize)>>,
    ) -> Result<Self, GeomError> {
        if vertices.is_empty() {
            return Err(GeomError::Empty);
        }
        let ambient_dim = vertices[0].1.len();
        let mut labels = Vec::with_capacity(vertices.len());
        let mut points = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        for (label, point) in vertices {
            if point.len() != ambient_dim {
                return Err(GeomError::PointDimensionMismatch {
                    expected: ambient_dim,
                    got: point.len(),
                });
            }
            if index.insert(label.clone(), labels.len()).is_some() {
                return Err(GeomError::DuplicateLabel(label));
            }
            labels.push(label);
            points.push(point);
        }
        let poly = RationalPolytope {
            labels,
            index,
            points,
            ambient_dim,
            edge_candidates,
            edges: OnceLock::new(),
        };
        poly.check_all_vertices()?;
        Ok(poly)
    }

    /// Every listed point must lie outside the hull of the others.
    fn check_all_vertices(&self) -> Result<(), GeomError> {
        if self.len() == 1 {
            return Ok(());
        }
        for v in 0..self.len() {
            let others: Vec<usize> = (0..self.len()).filter(|&i| i != v).collect();
            let columns: Vec<Vec<Rat>> =
                others.iter().map(|&i| self.homogeneous(i)).collect();
            let rhs = self.homogeneous(v);
            let obj = vec![Rat::zero(); columns.len()];
            match solve_eq_nonneg(&columns, &rhs, &obj)? {
                EqNonnegVerdict::Infeasible => {}
                _ => return Err(GeomError::NotAVertex(self.labels[v].clone())),
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn point(&self, id: usize) -> &[Rat] {
        &self.points[id]
    }

    pub fn id_of(&self, label: &str) -> Result<usize, GeomError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| GeomError::UnknownLabel(label.to_string()))
    }

    /// Point in homogeneous form (coordinates, then 1); the column format
    /// used by every convex-combination LP.
    fn homogeneous(&self, id: usize) -> Vec<Rat> {
        let mut col = self.points[id].clone();
        col.push(Rat::from_integer(1.into()));
        col
    }

    fn all_columns(&self) -> Vec<Vec<Rat>> {
        (0..self.len()).map(|i| self.homogeneous(i)).collect()
    }

    /// True iff the segment between the two vertices is an edge (1-face).
    ///
    /// Midpoint test: the segment is an edge exactly when no convex
    /// combination of vertices equal to the midpoint puts positive total
    /// weight outside {a, b}.
    pub fn is_adjacent(&self, a: &str, b: &str) -> Result<bool, GeomError> {
        let a = self.id_of(a)?;
        let b = self.id_of(b)?;
        if a == b {
            return Err(GeomError::SameVertex(self.labels[a].clone()));
        }
        self.is_adjacent_ids(a, b)
    }

    pub fn is_adjacent_ids(&self, a: usize, b: usize) -> Result<bool, GeomError> {
        let half = Rat::new(1.into(), 2.into());
        let midpoint: Vec<Rat> = self.points[a]
            .iter()
            .zip(self.points[b].iter())
            .map(|(pa, pb)| (pa + pb) * &half)
            .chain(std::iter::once(Rat::from_integer(1.into())))
            .collect();
        let columns = self.all_columns();
        let obj: Vec<Rat> = (0..self.len())
            .map(|i| {
                if i == a || i == b {
                    Rat::zero()
                } else {
                    Rat::from_integer(1.into())
                }
            })
            .collect();
        match solve_eq_nonneg(&columns, &midpoint, &obj)? {
            EqNonnegVerdict::Optimal { value, .. } => Ok(value.is_zero()),
            // The midpoint is in the hull by construction and the weights
            // sum to one, so neither branch can be reached.
            EqNonnegVerdict::Infeasible | EqNonnegVerdict::Unbounded => {
                unreachable!("midpoint LP is always feasible and bounded")
            }
        }
    }

    /// All edges, as vertex-id pairs (i < j) in lexicographic id order.
    pub fn edges(&self) -> Result<&[(usize, usize)], GeomError> {
        if let Some(edges) = self.edges.get() {
            return Ok(edges);
        }
        let mut edges = Vec::new();
        match &self.edge_candidates {
            Some(candidates) => {
                for &(a, b) in candidates {
                    if self.is_adjacent_ids(a, b)? {
                        edges.push((a.min(b), a.max(b)));
                    }
                }
            }
            None => {
                for a in 0..self.len() {
                    for b in a + 1..self.len() {
                        if self.is_adjacent_ids(a, b)? {
                            edges.push((a, b));
                        }
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(self.edges.get_or_init(|| edges))
    }

    /// Vertex ids of the smallest face containing the given vertex ids.
    ///
    /// Barycenter rule: a vertex x belongs to the face iff some convex
    /// combination of vertices equal to the barycenter of S puts positive
    /// weight on x, one LP per candidate vertex. Two sound shortcuts keep
    /// the LP count low without changing the answer: the support of every
    /// optimal combination is added wholesale, and each "no" answer yields
    /// a dual certificate (a valid inequality tight at the barycenter) that
    /// excludes every other vertex violating it.
    pub fn smallest_face_ids(&self, seed: &[usize]) -> Result<Vec<usize>, GeomError> {
        assert!(!seed.is_empty(), "smallest_face needs a nonempty seed");
        let m = self.len();
        let mut in_face = vec![false; m];
        for &s in seed {
            in_face[s] = true;
        }
        let barycenter: Vec<Rat> = {
            let k = Rat::from_integer((seed.len() as i64).into());
            (0..=self.ambient_dim)
                .map(|coord| {
                    let total: Rat = seed
                        .iter()
                        .map(|&s| {
                            if coord < self.ambient_dim {
                                self.points[s][coord].clone()
                            } else {
                                Rat::from_integer(1.into())
                            }
                        })
                        .sum();
                    total / &k
                })
                .collect()
        };
        let columns = self.all_columns();
        // Certificates phi with phi >= 0 on all vertices and phi = 0 on the
        // face; any vertex with phi > 0 is excluded.
        let mut certificates: Vec<Vec<Rat>> = Vec::new();
        let eval = |phi: &[Rat], col: &[Rat]| -> Rat {
            phi.iter().zip(col).map(|(p, c)| p * c).sum()
        };
        'candidates: for x in 0..m {
            if in_face[x] {
                continue;
            }
            for phi in &certificates {
                if eval(phi, &columns[x]).is_positive() {
                    continue 'candidates;
                }
            }
            let mut obj = vec![Rat::zero(); m];
            obj[x] = Rat::from_integer(1.into());
            match solve_eq_nonneg(&columns, &barycenter, &obj)? {
                EqNonnegVerdict::Optimal {
                    value,
                    point,
                    duals,
                } => {
                    if value.is_positive() {
                        for (i, weight) in point.iter().enumerate() {
                            if weight.is_positive() {
                                in_face[i] = true;
                            }
                        }
                        in_face[x] = true;
                    } else {
                        // Certificate soundness is re-checked before use so a
                        // dual-extraction defect can only cost speed.
                        let tight = eval(&duals, &barycenter).is_zero();
                        let valid = tight
                            && columns.iter().all(|col| !eval(&duals, col).is_negative());
                        if valid {
                            certificates.push(duals);
                        }
                    }
                }
                EqNonnegVerdict::Infeasible | EqNonnegVerdict::Unbounded => {
                    unreachable!("barycenter LP is always feasible and bounded")
                }
            }
        }
        Ok((0..m).filter(|&i| in_face[i]).collect())
    }

    /// Labelled wrapper around [`smallest_face_ids`]; returns labels sorted
    /// by vertex id.
    pub fn smallest_face(&self, labels: &[&str]) -> Result<Vec<String>, GeomError> {
        let seed = self.ids_of(labels)?;
        let ids = self.smallest_face_ids(&seed)?;
        Ok(ids.into_iter().map(|i| self.labels[i].clone()).collect())
    }

    fn ids_of(&self, labels: &[&str]) -> Result<Vec<usize>, GeomError> {
        labels.iter().map(|l| self.id_of(l)).collect()
    }

    /// Affine dimension of a vertex set: the rank of the difference vectors.
    pub fn face_dim_ids(&self, face: &[usize]) -> Result<usize, GeomError> {
        if face.is_empty() {
            return Err(GeomError::EmptyFace);
        }
        let base = &self.points[face[0]];
        let mut rows: Vec<Vec<Rat>> = face[1..]
            .iter()
            .map(|&v| {
                self.points[v]
                    .iter()
                    .zip(base.iter())
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        Ok(rank(&mut rows))
    }

    pub fn face_dim(&self, labels: &[&str]) -> Result<usize, GeomError> {
        let ids = self.ids_of(labels)?;
        self.face_dim_ids(&ids)
    }

    /// Geometric face test: S is a face iff S equals the vertex set of the
    /// smallest face containing S.
    pub fn is_face_ids(&self, subset: &[usize]) -> Result<bool, GeomError> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let face = self.smallest_face_ids(&sorted)?;
        Ok(face == sorted)
    }

    pub fn is_face(&self, labels: &[&str]) -> Result<bool, GeomError> {
        let ids = self.ids_of(labels)?;
        self.is_face_ids(&ids)
    }

    pub fn inner_product(&self, cost: &[Rat], id: usize) -> Rat {
        cost.iter()
            .zip(self.points[id].iter())
            .map(|(c, x)| c * x)
            .sum()
    }

    fn check_cost(&self, cost: &[Rat]) -> Result<(), GeomError> {
        if cost.len() != self.ambient_dim {
            return Err(GeomError::CostDimensionMismatch {
                expected: self.ambient_dim,
                got: cost.len(),
            });
        }
        Ok(())
    }

    /// Directs every edge toward the larger inner product with the cost
    /// vector. Errors when the cost is not generic, naming an offending
    /// edge.
    pub fn orient(&self, cost: &[Rat]) -> Result<Vec<(usize, usize)>, GeomError> {
        self.check_cost(cost)?;
        let mut directed = Vec::new();
        for &(a, b) in self.edges()? {
            let ca = self.inner_product(cost, a);
            let cb = self.inner_product(cost, b);
            match ca.cmp(&cb) {
                std::cmp::Ordering::Less => directed.push((a, b)),
                std::cmp::Ordering::Greater => directed.push((b, a)),
                std::cmp::Ordering::Equal => {
                    return Err(GeomError::NonGenericCost(
                        self.labels[a].clone(),
                        self.labels[b].clone(),
                    ))
                }
            }
        }
        Ok(directed)
    }

    /// The (source, sink) of a face under a generic cost vector: the argmin
    /// and argmax of the inner product. Verifies that they are the unique
    /// local source and sink of the face's edge graph, erroring otherwise —
    /// facial orientation is a checkable hypothesis here, not an assumption.
    pub fn face_source_sink_ids(
        &self,
        cost: &[Rat],
        face: &[usize],
    ) -> Result<(usize, usize), GeomError> {
        if face.is_empty() {
            return Err(GeomError::EmptyFace);
        }
        self.check_cost(cost)?;
        let values: Vec<Rat> = face.iter().map(|&v| self.inner_product(cost, v)).collect();
        let argmin = (0..face.len())
            .min_by(|&a, &b| values[a].cmp(&values[b]))
            .unwrap();
        let argmax = (0..face.len())
            .max_by(|&a, &b| values[a].cmp(&values[b]))
            .unwrap();
        // Local source/sink uniqueness inside the face's edge graph.
        let in_face: std::collections::HashSet<usize> = face.iter().copied().collect();
        let mut has_in = HashMap::new();
        let mut has_out = HashMap::new();
        for &(a, b) in self.orient(cost)?.iter() {
            if in_face.contains(&a) && in_face.contains(&b) {
                has_out.insert(a, ());
                has_in.insert(b, ());
            }
        }
        if face.len() > 1 {
            let sources: Vec<usize> = face
                .iter()
                .copied()
                .filter(|v| !has_in.contains_key(v))
                .collect();
            let sinks: Vec<usize> = face
                .iter()
                .copied()
                .filter(|v| !has_out.contains_key(v))
                .collect();
            if sources.len() != 1 || sinks.len() != 1 {
                return Err(GeomError::NotFacial {
                    face: face.iter().map(|&v| self.labels[v].clone()).collect(),
                    sources: sources.len(),
                    sinks: sinks.len(),
                });
            }
            if sources[0] != face[argmin] || sinks[0] != face[argmax] {
                return Err(GeomError::NotFacial {
                    face: face.iter().map(|&v| self.labels[v].clone()).collect(),
                    sources: sources.len(),
                    sinks: sinks.len(),
                });
            }
        }
        Ok((face[argmin], face[argmax]))
    }

    pub fn face_source_sink(
        &self,
        cost: &[Rat],
        labels: &[&str],
    ) -> Result<(String, String), GeomError> {
        let ids = self.ids_of(labels)?;
        let (src, sink) = self.face_source_sink_ids(cost, &ids)?;
        Ok((self.labels[src].clone(), self.labels[sink].clone()))
    }
}

/// Row rank over the rationals by Gaussian elimination; consumes the rows.
fn rank(rows: &mut [Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            for c in col..ncols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] = &rows[r][c] - &delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Parses an exact rational "p", "-p" or "p/q".
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let mk_err = || format!("cannot parse rational from {s:?}");
    if let Some((num, den)) = s.split_once('/') {
        let n: num_bigint::BigInt = num.trim().parse().map_err(|_| mk_err())?;
        let d: num_bigint::BigInt = den.trim().parse().map_err(|_| mk_err())?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rat::new(n, d))
    } else {
        let n: num_bigint::BigInt = s.parse().map_err(|_| mk_err())?;
        Ok(Rat::from_integer(n))
    }
}

/// Formats a rational as "p" or "p/q".
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &num_bigint::BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    fn segment() -> RationalPolytope {
        RationalPolytope::new(vec![
            ("p".into(), vec![r(0)]),
            ("q".into(), vec![r(1)]),
        ])
        .unwrap()
    }

    fn square() -> RationalPolytope {
        RationalPolytope::new(vec![
            ("00".into(), vec![r(0), r(0)]),
            ("10".into(), vec![r(1), r(0)]),
            ("01".into(), vec![r(0), r(1)]),
            ("11".into(), vec![r(1), r(1)]),
        ])
        .unwrap()
    }

    #[test]
    fn segment_is_an_edge() {
        let p = segment();
        assert!(p.is_adjacent("p", "q").unwrap());
        assert!(p.is_adjacent("p", "x").is_err());
        assert!(p.is_adjacent("p", "p").is_err());
    }

    #[test]
    fn square_adjacency() {
        let p = square();
        assert!(p.is_adjacent("00", "10").unwrap());
        assert!(p.is_adjacent("00", "01").unwrap());
        assert!(!p.is_adjacent("00", "11").unwrap());
        assert_eq!(p.edges().unwrap().len(), 4);
    }

    #[test]
    fn interior_point_rejected_as_vertex() {
        let err = RationalPolytope::new(vec![
            ("a".into(), vec![r(0)]),
            ("b".into(), vec![r(2)]),
            ("mid".into(), vec![r(1)]),
        ])
        .unwrap_err();
        assert_eq!(err, GeomError::NotAVertex("mid".into()));
    }

    #[test]
    fn smallest_face_on_square() {
        let p = square();
        assert_eq!(p.smallest_face(&["00"]).unwrap(), vec!["00"]);
        assert_eq!(p.smallest_face(&["00", "10"]).unwrap(), vec!["00", "10"]);
        // Diagonal barycenter is the center: the whole square.
        assert_eq!(p.smallest_face(&["00", "11"]).unwrap().len(), 4);
        assert!(p.is_face(&["00", "10"]).unwrap());
        assert!(!p.is_face(&["00", "11"]).unwrap());
        assert!(p.is_face(&["00", "10", "01", "11"]).unwrap());
    }

    #[test]
    fn face_dim_examples() {
        let p = square();
        assert_eq!(p.face_dim(&["00"]).unwrap(), 0);
        assert_eq!(p.face_dim(&["00", "10"]).unwrap(), 1);
        assert_eq!(p.face_dim(&["00", "10", "01", "11"]).unwrap(), 2);
        assert_eq!(p.face_dim(&[]).unwrap_err(), GeomError::EmptyFace);
    }

    #[test]
    fn orient_segment_and_reject_nongeneric() {
        let p = segment();
        assert_eq!(p.orient(&[r(1)]).unwrap(), vec![(0, 1)]);
        let sq = square();
        // Horizontal edges are orthogonal to (0,1).
        let err = sq.orient(&[r(0), r(1)]).unwrap_err();
        assert!(matches!(err, GeomError::NonGenericCost(_, _)));
        assert!(sq.orient(&[r(1), r(2)]).is_ok());
    }

    #[test]
    fn face_source_sink_on_square() {
        let sq = square();
        let cost = [r(1), r(2)];
        let (src, sink) = sq
            .face_source_sink(&cost, &["00", "10", "01", "11"])
            .unwrap();
        assert_eq!((src.as_str(), sink.as_str()), ("00", "11"));
        let (s, t) = sq.face_source_sink(&cost, &["10"]).unwrap();
        assert_eq!((s.as_str(), t.as_str()), ("10", "10"));
        let (s, t) = sq.face_source_sink(&cost, &["00", "10"]).unwrap();
        assert_eq!((s.as_str(), t.as_str()), ("00", "10"));
    }

    #[test]
    fn rat_parse_format_roundtrip() {
        for s in ["3", "-4", "1/2", "-7/3"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("2/4").unwrap(), Rat::new(1.into(), 2.into()));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
