//! 1-skeleton posets of oriented polytopes and the structural checks on
//! them: Hasse property, directional simplicity, lattice operations,
//! pseudojoins, distinct joins, non-revisiting, Möbius values, and the
//! lattice-side face criterion.

use std::collections::HashMap;
use std::sync::Mutex;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::exactgeom::{rat, GeomError, Rat, RationalPolytope};
use crate::symgroup::{bruhat_interval, Permutation, SymGroupError};

#[derive(Debug, Error)]
pub enum SkeletonError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    SymGroup(#[from] SymGroupError),
    #[error("orientation has {sources} global sources and {sinks} global sinks")]
    NotBounded { sources: usize, sinks: usize },
    #[error("elements {0:?} and {1:?} are not comparable")]
    NotComparable(String, String),
    #[error("no unique {kind} for {x:?} and {y:?}: minimal bounds {candidates:?}")]
    NonLattice {
        kind: &'static str,
        x: String,
        y: String,
        candidates: Vec<String>,
    },
    #[error("{0:?} does not cover {1:?}")]
    NotACover(String, String),
    #[error("vertex set is not a face of the backing polytope")]
    NotAFace,
    #[error("face of {vertex:?} spanned by {subset:?} has dimension {got}, expected {expected}")]
    NotDirectionallySimple {
        vertex: String,
        subset: Vec<String>,
        got: usize,
        expected: usize,
    },
    #[error("out-degree {0} too large for subset enumeration")]
    OutDegreeTooLarge(usize),
}

/// The 1-skeleton poset of a polytope under a facial orientation: vertex
/// labels, directed Hasse edges, and derived reachability, together with
/// the backing polytope for face queries.
pub struct SkeletonPoset {
    poly: RationalPolytope,
    cost: Vec<Rat>,
    /// Permutation per element when built from a Bruhat interval.
    perms: Option<Vec<Permutation>>,
    hasse: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    /// Element ids in increasing cost order (a linear extension).
    topo: Vec<usize>,
    /// Position of each element in `topo`.
    topo_pos: Vec<usize>,
    /// up[x] = {y : x <= y}; down[x] = {y : y <= x}.
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    source: usize,
    sink: usize,
    face_cache: Mutex<HashMap<Vec<usize>, Vec<usize>>>,
}

/// Outcome of the directional-simplicity check: either every subset of
/// outgoing edges spans its own face (returned for reuse by later checks),
/// or a witness of the first failure.
pub enum DirSimplicity {
    Ok(Vec<GeneratedFace>),
    Violation {
        vertex: String,
        subset: Vec<String>,
        reason: String,
    },
}

/// Witness of a join/pseudojoin disagreement: the vertex, the cover
/// subset, and the two diverging results.
pub type JoinDisagreement = (String, Vec<String>, String, String);

/// A face spanned by a subset of the outgoing edges at a vertex.
#[derive(Debug, Clone)]
pub struct GeneratedFace {
    pub vertex: usize,
    pub out_subset: Vec<usize>,
    pub face: Vec<usize>,
}

impl SkeletonPoset {
    /// Builds the 1-skeleton poset of a polytope under a generic cost
    /// vector. Errors if the cost is not generic or the orientation does
    /// not have unique global source and sink.
    pub fn from_polytope(
        poly: RationalPolytope,
        cost: Vec<Rat>,
    ) -> Result<Self, SkeletonError> {
        Self::build(poly, cost, None)
    }

    /// Builds the interval poset of the Bruhat interval polytope of w:
    /// vertices are the permutations of [e, w] embedded by their vertex
    /// vectors, edges come from the geometric adjacency oracle, and the
    /// orientation is by the cost vector (n, n-1, .., 1).
    pub fn build_bip(w: &Permutation) -> Result<Self, SkeletonError> {
        let n = w.n();
        let e = Permutation::identity(n);
        let interval = bruhat_interval(&e, w)?;
        let vertices: Vec<(String, Vec<Rat>)> = interval
            .iter()
            .map(|z| (z.to_string(), z.vertex_vector()))
            .collect();
        // Interval polytopes are generalized permutahedra: any edge joins
        // vertices whose vectors differ in exactly two coordinates. Pairs
        // failing that cannot be edges, so only the rest are LP-tested.
        let mut candidates = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                let differ = vertices[i]
                    .1
                    .iter()
                    .zip(&vertices[j].1)
                    .filter(|(a, b)| a != b)
                    .count();
                if differ == 2 {
                    candidates.push((i, j));
                }
            }
        }
        let poly = RationalPolytope::with_edge_candidates(vertices, Some(candidates))?;
        let cost: Vec<Rat> = (1..=n).rev().map(|v| rat(v as i64)).collect();
        Self::build(poly, cost, Some(interval))
    }

    fn build(
        poly: RationalPolytope,
        cost: Vec<Rat>,
        perms: Option<Vec<Permutation>>,
    ) -> Result<Self, SkeletonError> {
        let m = poly.len();
        let hasse = poly.orient(&cost)?;
        let mut out = vec![Vec::new(); m];
        let mut inn = vec![Vec::new(); m];
        for &(a, b) in &hasse {
            out[a].push(b);
            inn[b].push(a);
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
        }
        // The cost functional is a linear extension; break ties (only
        // possible between non-adjacent vertices) by label for determinism.
        let mut topo: Vec<usize> = (0..m).collect();
        topo.sort_by(|&a, &b| {
            poly.inner_product(&cost, a)
                .cmp(&poly.inner_product(&cost, b))
                .then_with(|| poly.label(a).cmp(poly.label(b)))
        });
        let mut topo_pos = vec![0; m];
        for (pos, &v) in topo.iter().enumerate() {
            topo_pos[v] = pos;
        }
        let mut up = vec![BitSet::new(m); m];
        for &v in topo.iter().rev() {
            let mut set = BitSet::new(m);
            set.insert(v);
            for &w in &out[v] {
                set.union_with(&up[w]);
            }
            up[v] = set;
        }
        let mut down = vec![BitSet::new(m); m];
        for &v in topo.iter() {
            let mut set = BitSet::new(m);
            set.insert(v);
            for &w in &inn[v] {
                set.union_with(&down[w]);
            }
            down[v] = set;
        }
        let sources: Vec<usize> = (0..m).filter(|&v| inn[v].is_empty()).collect();
        let sinks: Vec<usize> = (0..m).filter(|&v| out[v].is_empty()).collect();
        if m > 0 && (sources.len() != 1 || sinks.len() != 1) {
            return Err(SkeletonError::NotBounded {
                sources: sources.len(),
                sinks: sinks.len(),
            });
        }
        let mut hasse = hasse;
        hasse.sort_unstable();
        Ok(SkeletonPoset {
            poly,
            cost,
            perms,
            hasse,
            out,
            inn,
            topo,
            topo_pos,
            up,
            down,
            source: sources.first().copied().unwrap_or(0),
            sink: sinks.first().copied().unwrap_or(0),
            face_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn polytope(&self) -> &RationalPolytope {
        &self.poly
    }

    pub fn cost(&self) -> &[Rat] {
        &self.cost
    }

    pub fn label(&self, id: usize) -> &str {
        self.poly.label(id)
    }

    pub fn element(&self, label: &str) -> Result<usize, SkeletonError> {
        Ok(self.poly.id_of(label)?)
    }

    pub fn permutation(&self, id: usize) -> Option<&Permutation> {
        self.perms.as_ref().map(|ps| &ps[id])
    }

    pub fn is_bruhat_interval(&self) -> bool {
        self.perms.is_some()
    }

    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn out_neighbors(&self, id: usize) -> &[usize] {
        &self.out[id]
    }

    pub fn in_neighbors(&self, id: usize) -> &[usize] {
        &self.inn[id]
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Element ids in a fixed linear extension of the order.
    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn topo_position(&self, id: usize) -> usize {
        self.topo_pos[id]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    /// Elements of the closed interval [u, v], in topo order.
    pub fn interval(&self, u: usize, v: usize) -> Result<Vec<usize>, SkeletonError> {
        if !self.leq(u, v) {
            return Err(self.not_comparable(u, v));
        }
        let set = self.up[u].intersect(&self.down[v]);
        let mut elems: Vec<usize> = set.iter().collect();
        elems.sort_by_key(|&x| self.topo_pos[x]);
        Ok(elems)
    }

    fn not_comparable(&self, u: usize, v: usize) -> SkeletonError {
        SkeletonError::NotComparable(self.label(u).to_string(), self.label(v).to_string())
    }

    /// Upper covers of u lying below v.
    pub fn atoms(&self, u: usize, v: usize) -> Result<Vec<usize>, SkeletonError> {
        if !self.leq(u, v) {
            return Err(self.not_comparable(u, v));
        }
        Ok(self.out[u]
            .iter()
            .copied()
            .filter(|&a| self.leq(a, v))
            .collect())
    }

    /// True iff no oriented edge is implied by a longer directed path.
    pub fn check_hasse_property(&self) -> bool {
        self.find_hasse_violation().is_none()
    }

    pub fn find_hasse_violation(&self) -> Option<(usize, usize)> {
        for &(a, b) in &self.hasse {
            for &z in &self.out[a] {
                if z != b && self.leq(z, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn bound(&self, x: usize, y: usize, kind: &'static str) -> Result<usize, SkeletonError> {
        let (candidates, first_is_least) = match kind {
            "join" => (self.up[x].intersect(&self.up[y]), true),
            _ => (self.down[x].intersect(&self.down[y]), false),
        };
        let mut members: Vec<usize> = candidates.iter().collect();
        members.sort_by_key(|&z| self.topo_pos[z]);
        let best = if first_is_least {
            *members.first().expect("bounded poset has a common bound")
        } else {
            *members.last().expect("bounded poset has a common bound")
        };
        let dominated = members.iter().all(|&z| {
            if first_is_least {
                self.leq(best, z)
            } else {
                self.leq(z, best)
            }
        });
        if dominated {
            Ok(best)
        } else {
            // Report the extremal bounds as the witness.
            let extremal: Vec<String> = members
                .iter()
                .filter(|&&z| {
                    members.iter().all(|&w| {
                        w == z
                            || if first_is_least {
                                !self.leq(w, z)
                            } else {
                                !self.leq(z, w)
                            }
                    })
                })
                .map(|&z| self.label(z).to_string())
                .collect();
            Err(SkeletonError::NonLattice {
                kind,
                x: self.label(x).to_string(),
                y: self.label(y).to_string(),
                candidates: extremal,
            })
        }
    }

    /// Least upper bound; errors naming the offending pair when not unique.
    pub fn join(&self, x: usize, y: usize) -> Result<usize, SkeletonError> {
        self.bound(x, y, "join")
    }

    /// Greatest lower bound.
    pub fn meet(&self, x: usize, y: usize) -> Result<usize, SkeletonError> {
        self.bound(x, y, "meet")
    }

    /// Join of a set, with the empty join defined as the given base.
    pub fn join_of_set(&self, base: usize, set: &[usize]) -> Result<usize, SkeletonError> {
        let mut acc = base;
        for &s in set {
            acc = self.join(acc, s)?;
        }
        Ok(acc)
    }

    pub fn check_lattice(&self) -> bool {
        self.find_lattice_violation().is_none()
    }

    pub fn find_lattice_violation(&self) -> Option<SkeletonError> {
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                if let Err(e) = self.join(x, y) {
                    return Some(e);
                }
                if let Err(e) = self.meet(x, y) {
                    return Some(e);
                }
            }
        }
        None
    }

    /// Smallest face of the backing polytope containing the given elements,
    /// memoized per sorted seed set.
    pub fn smallest_face_cached(&self, seed: &[usize]) -> Result<Vec<usize>, SkeletonError> {
        let mut key = seed.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(hit) = self.face_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let face = self.poly.smallest_face_ids(&key)?;
        self.face_cache
            .lock()
            .unwrap()
            .insert(key, face.clone());
        Ok(face)
    }

    /// The sink of the unique |S|-face spanned at u by a set S of upper
    /// covers of u.
    pub fn pseudojoin(&self, u: usize, covers: &[usize]) -> Result<usize, SkeletonError> {
        for &s in covers {
            if !self.out[u].contains(&s) {
                return Err(SkeletonError::NotACover(
                    self.label(s).to_string(),
                    self.label(u).to_string(),
                ));
            }
        }
        let mut seed = covers.to_vec();
        seed.push(u);
        let face = self.smallest_face_cached(&seed)?;
        let dim = self.poly.face_dim_ids(&face)?;
        if dim != covers.len() {
            return Err(SkeletonError::NotDirectionallySimple {
                vertex: self.label(u).to_string(),
                subset: covers.iter().map(|&s| self.label(s).to_string()).collect(),
                got: dim,
                expected: covers.len(),
            });
        }
        let (_, sink) = self.poly.face_source_sink_ids(&self.cost, &face)?;
        Ok(sink)
    }

    /// Checks that each subset E of the outgoing edges at each vertex spans
    /// a distinct face of dimension |E| whose outgoing edges at the vertex
    /// are exactly E. On success returns every generated face for reuse.
    pub fn check_directionally_simple(&self) -> Result<DirSimplicity, SkeletonError> {
        let mut faces = Vec::new();
        for v in 0..self.len() {
            let outs = &self.out[v];
            if outs.len() > 20 {
                return Err(SkeletonError::OutDegreeTooLarge(outs.len()));
            }
            let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for mask in 0u32..(1u32 << outs.len()) {
                let subset: Vec<usize> = (0..outs.len())
                    .filter(|&k| mask & (1 << k) != 0)
                    .map(|k| outs[k])
                    .collect();
                let mut seed = subset.clone();
                seed.push(v);
                let face = self.smallest_face_cached(&seed)?;
                let dim = self.poly.face_dim_ids(&face)?;
                if dim != subset.len() {
                    return Ok(DirSimplicity::Violation {
                        vertex: self.label(v).to_string(),
                        subset: self.labels_of(&subset),
                        reason: format!("face has dimension {dim}, expected {}", subset.len()),
                    });
                }
                let face_set: std::collections::HashSet<usize> =
                    face.iter().copied().collect();
                let outs_in_face: Vec<usize> = outs
                    .iter()
                    .copied()
                    .filter(|t| face_set.contains(t))
                    .collect();
                if outs_in_face != subset {
                    return Ok(DirSimplicity::Violation {
                        vertex: self.label(v).to_string(),
                        subset: self.labels_of(&subset),
                        reason: format!(
                            "outgoing edges in face are {:?}",
                            self.labels_of(&outs_in_face)
                        ),
                    });
                }
                if let Some(other) = seen.insert(face.clone(), subset.clone()) {
                    return Ok(DirSimplicity::Violation {
                        vertex: self.label(v).to_string(),
                        subset: self.labels_of(&subset),
                        reason: format!(
                            "face coincides with the one spanned by {:?}",
                            self.labels_of(&other)
                        ),
                    });
                }
                faces.push(GeneratedFace {
                    vertex: v,
                    out_subset: subset,
                    face,
                });
            }
        }
        Ok(DirSimplicity::Ok(faces))
    }

    fn labels_of(&self, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&i| self.label(i).to_string()).collect()
    }

    /// For every vertex u and every nonempty subset S of its upper covers,
    /// the lattice join of S must equal the pseudojoin. Returns the first
    /// witness of disagreement.
    pub fn find_join_pseudojoin_disagreement(
        &self,
    ) -> Result<Option<JoinDisagreement>, SkeletonError> {
        for u in 0..self.len() {
            let outs = &self.out[u];
            if outs.len() > 20 {
                return Err(SkeletonError::OutDegreeTooLarge(outs.len()));
            }
            for mask in 1u32..(1u32 << outs.len()) {
                let subset: Vec<usize> = (0..outs.len())
                    .filter(|&k| mask & (1 << k) != 0)
                    .map(|k| outs[k])
                    .collect();
                let join = self.join_of_set(u, &subset)?;
                let psj = self.pseudojoin(u, &subset)?;
                if join != psj {
                    return Ok(Some((
                        self.label(u).to_string(),
                        self.labels_of(&subset),
                        self.label(join).to_string(),
                        self.label(psj).to_string(),
                    )));
                }
            }
        }
        Ok(None)
    }

    pub fn check_join_equals_pseudojoin(&self) -> Result<bool, SkeletonError> {
        Ok(self.find_join_pseudojoin_disagreement()?.is_none())
    }

    /// Injectivity of S ↦ ⋁S on subsets of the atoms of [u, v], with the
    /// empty join defined as u.
    pub fn check_distinct_joins(&self, u: usize, v: usize) -> Result<bool, SkeletonError> {
        let atoms = self.atoms(u, v)?;
        if atoms.len() > 20 {
            return Err(SkeletonError::OutDegreeTooLarge(atoms.len()));
        }
        let mut seen = HashMap::new();
        for mask in 0u32..(1u32 << atoms.len()) {
            let subset: Vec<usize> = (0..atoms.len())
                .filter(|&k| mask & (1 << k) != 0)
                .map(|k| atoms[k])
                .collect();
            let join = self.join_of_set(u, &subset)?;
            if seen.insert(join, mask).is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The map z ↦ {atoms below z} on [u, v] must be order-preserving and
    /// surjective onto the power set of the atoms.
    pub fn check_surjective_atom_map(&self, u: usize, v: usize) -> Result<bool, SkeletonError> {
        let atoms = self.atoms(u, v)?;
        if atoms.len() > 20 {
            return Err(SkeletonError::OutDegreeTooLarge(atoms.len()));
        }
        let elems = self.interval(u, v)?;
        let image_of = |z: usize| -> u32 {
            atoms
                .iter()
                .enumerate()
                .filter(|(_, &a)| self.leq(a, z))
                .fold(0u32, |acc, (k, _)| acc | (1 << k))
        };
        let mut image = std::collections::HashSet::new();
        for &z in &elems {
            image.insert(image_of(z));
        }
        if image.len() != 1usize << atoms.len() {
            return Ok(false);
        }
        for &z in &elems {
            for &z2 in &elems {
                if self.leq(z, z2) && image_of(z) & !image_of(z2) != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Face non-revisiting: for x <= y both in the face, the whole interval
    /// [x, y] must stay inside the face. Returns a witness element outside
    /// the face when violated.
    pub fn find_revisit(&self, face: &[usize]) -> Option<(usize, usize, usize)> {
        let mut in_face = BitSet::new(self.len());
        for &v in face {
            in_face.insert(v);
        }
        for &x in face {
            for &y in face {
                if x != y && self.leq(x, y) {
                    let between = self.up[x].intersect(&self.down[y]);
                    if !between.is_subset(&in_face) {
                        let z = between.iter().find(|&z| !in_face.contains(z)).unwrap();
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Public face-level check; validates that the input is a face first.
    pub fn check_nonrevisiting(&self, face: &[usize]) -> Result<bool, SkeletonError> {
        if !self.poly.is_face_ids(face)? {
            return Err(SkeletonError::NotAFace);
        }
        Ok(self.find_revisit(face).is_none())
    }

    /// Möbius value by the alternating-sum recursion, memoized along the
    /// interval.
    pub fn mobius(&self, u: usize, v: usize) -> Result<i64, SkeletonError> {
        if !self.leq(u, v) {
            return Err(self.not_comparable(u, v));
        }
        let table = self.mobius_from(u);
        Ok(table[v].expect("v is in the interval"))
    }

    /// Möbius values mu(u, v) for every v >= u, computed in one sweep of a
    /// linear extension.
    pub fn mobius_from(&self, u: usize) -> Vec<Option<i64>> {
        let mut table: Vec<Option<i64>> = vec![None; self.len()];
        table[u] = Some(1);
        for &v in &self.topo {
            if v == u || !self.leq(u, v) {
                continue;
            }
            // mu(u, v) = - sum over u <= z < v.
            let mut total: i64 = 0;
            let between = self.up[u].intersect(&self.down[v]);
            for z in between.iter() {
                if z != v {
                    total += table[z].expect("topo order visits z before v");
                }
            }
            table[v] = Some(-total);
        }
        table
    }

    /// Lattice-side face criterion: the interval [u, v] spans a face of the
    /// polytope iff v equals the join of the atoms of the interval.
    pub fn is_face_interval(&self, u: usize, v: usize) -> Result<bool, SkeletonError> {
        let atoms = self.atoms(u, v)?;
        Ok(self.join_of_set(u, &atoms)? == v)
    }

    /// Hasse edges whose endpoints do not differ by one in Coxeter length.
    /// Only meaningful for Bruhat interval posets; empty means the defining
    /// length condition held on every geometric edge.
    pub fn edge_length_violations(&self) -> Vec<(usize, usize)> {
        match &self.perms {
            None => Vec::new(),
            Some(perms) => self
                .hasse
                .iter()
                .copied()
                .filter(|&(a, b)| perms[b].length() != perms[a].length() + 1)
                .collect(),
        }
    }

    /// Hasse edges whose vertex vectors do not differ in exactly two
    /// coordinates with opposite deltas (the generalized-permutahedron
    /// edge directions).
    pub fn edge_direction_violations(&self) -> Vec<(usize, usize)> {
        self.hasse
            .iter()
            .copied()
            .filter(|&(a, b)| {
                let pa = self.poly.point(a);
                let pb = self.poly.point(b);
                let diffs: Vec<Rat> = pa
                    .iter()
                    .zip(pb)
                    .map(|(x, y)| x - y)
                    .filter(|d| d != &rat(0))
                    .collect();
                !(diffs.len() == 2 && diffs[0] == -diffs[1].clone())
            })
            .collect()
    }

    /// All ordered comparable pairs u < v, in topo order.
    pub fn strict_intervals(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for &u in &self.topo {
            for &v in &self.topo {
                if u != v && self.leq(u, v) {
                    pairs.push((u, v));
                }
            }
        }
        pairs
    }
}

/// Builds P_w for a permutation w (interval poset of its interval
/// polytope, oriented by (n, n-1, .., 1)).
pub fn build_bip_poset(w: &Permutation) -> Result<SkeletonPoset, SkeletonError> {
    SkeletonPoset::build_bip(w)
}

/// Builds the 1-skeleton poset of an arbitrary rational polytope under a
/// generic cost vector.
pub fn build_generic_poset(
    poly: RationalPolytope,
    cost: Vec<Rat>,
) -> Result<SkeletonPoset, SkeletonError> {
    SkeletonPoset::from_polytope(poly, cost)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn hexagon() -> SkeletonPoset {
        build_bip_poset(&p("321")).unwrap()
    }

    #[test]
    fn bip_3412_has_expected_shape() {
        let poset = build_bip_poset(&p("3412")).unwrap();
        assert_eq!(poset.len(), 14);
        assert_eq!(poset.label(poset.source()), "1234");
        assert_eq!(poset.label(poset.sink()), "3412");
        let bottom = poset.element("1234").unwrap();
        let cover_labels: Vec<&str> = poset
            .out_neighbors(bottom)
            .iter()
            .map(|&v| poset.label(v))
            .collect();
        assert_eq!(cover_labels, vec!["1243", "1324", "2134"]);
    }

    #[test]
    fn bip_identity_is_a_point() {
        let poset = build_bip_poset(&Permutation::identity(3)).unwrap();
        assert_eq!(poset.len(), 1);
        assert_eq!(poset.source(), poset.sink());
    }

    #[test]
    fn hexagon_is_weak_order_on_s3() {
        let poset = hexagon();
        assert_eq!(poset.len(), 6);
        // Right weak order covers on S_3.
        let expect_cover = [("123", "213"), ("123", "132"), ("213", "231"),
                            ("132", "312"), ("231", "321"), ("312", "321")];
        let mut edges: Vec<(String, String)> = poset
            .hasse_edges()
            .iter()
            .map(|&(a, b)| (poset.label(a).to_string(), poset.label(b).to_string()))
            .collect();
        edges.sort();
        let mut expected: Vec<(String, String)> = expect_cover
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect();
        expected.sort();
        assert_eq!(edges, expected);
    }

    #[test]
    fn hexagon_lattice_operations() {
        let poset = hexagon();
        let e = |s: &str| poset.element(s).unwrap();
        assert_eq!(poset.join(e("213"), e("132")).unwrap(), e("321"));
        assert_eq!(poset.join(e("213"), e("213")).unwrap(), e("213"));
        assert_eq!(poset.meet(e("231"), e("312")).unwrap(), e("123"));
        assert!(poset.check_lattice());
    }

    #[test]
    fn hexagon_atoms_and_chain_interval() {
        let poset = hexagon();
        let e = |s: &str| poset.element(s).unwrap();
        assert_eq!(poset.atoms(e("123"), e("231")).unwrap(), vec![e("213")]);
        assert_eq!(poset.atoms(e("213"), e("213")).unwrap(), Vec::<usize>::new());
        assert!(poset.atoms(e("213"), e("132")).is_err());
        let interval = poset.interval(e("123"), e("231")).unwrap();
        assert_eq!(interval, vec![e("123"), e("213"), e("231")]);
    }

    #[test]
    fn hexagon_pseudojoin_is_sink_of_spanned_face() {
        let poset = hexagon();
        let e = |s: &str| poset.element(s).unwrap();
        let psj = poset.pseudojoin(e("123"), &[e("213"), e("132")]).unwrap();
        assert_eq!(poset.label(psj), "321");
        let single = poset.pseudojoin(e("123"), &[e("213")]).unwrap();
        assert_eq!(poset.label(single), "213");
        assert!(poset.pseudojoin(e("123"), &[e("321")]).is_err());
    }

    #[test]
    fn hexagon_structure_checks_pass() {
        let poset = hexagon();
        assert!(poset.check_hasse_property());
        assert!(matches!(
            poset.check_directionally_simple().unwrap(),
            DirSimplicity::Ok(_)
        ));
        assert!(poset.check_join_equals_pseudojoin().unwrap());
        assert!(poset.edge_length_violations().is_empty());
        assert!(poset.edge_direction_violations().is_empty());
    }

    #[test]
    fn hexagon_mobius_values() {
        let poset = hexagon();
        let e = |s: &str| poset.element(s).unwrap();
        assert_eq!(poset.mobius(e("213"), e("213")).unwrap(), 1);
        assert_eq!(poset.mobius(e("123"), e("213")).unwrap(), -1);
        assert_eq!(poset.mobius(e("123"), e("231")).unwrap(), 0);
        assert_eq!(poset.mobius(e("123"), e("321")).unwrap(), 1);
        assert!(poset.mobius(e("213"), e("132")).is_err());
    }

    #[test]
    fn hexagon_face_criterion() {
        let poset = hexagon();
        let e = |s: &str| poset.element(s).unwrap();
        assert!(poset.is_face_interval(e("123"), e("321")).unwrap());
        assert!(!poset.is_face_interval(e("123"), e("231")).unwrap());
        assert!(poset.is_face_interval(e("123"), e("213")).unwrap());
        assert!(poset.is_face_interval(e("123"), e("123")).unwrap());
    }

    #[test]
    fn cube_poset_is_boolean_lattice() {
        let vertices: Vec<(String, Vec<Rat>)> = (0..8u32)
            .map(|m| {
                let coords: Vec<Rat> = (0..3).map(|b| rat(((m >> b) & 1) as i64)).collect();
                let label: String = (0..3).map(|b| ((m >> b) & 1).to_string()).collect();
                (label, coords)
            })
            .collect();
        let poly = RationalPolytope::new(vertices).unwrap();
        let poset = build_generic_poset(poly, vec![rat(1), rat(2), rat(4)]).unwrap();
        assert_eq!(poset.len(), 8);
        // Reachability must agree with bitwise subset order on labels.
        for x in 0..8 {
            for y in 0..8 {
                let mx = u32::from_str_radix(&poset.label(x).chars().rev().collect::<String>(), 2).unwrap();
                let my = u32::from_str_radix(&poset.label(y).chars().rev().collect::<String>(), 2).unwrap();
                assert_eq!(poset.leq(x, y), mx & my == mx, "pair {mx:#b} {my:#b}");
            }
        }
        assert!(poset.check_lattice());
        assert!(poset.check_hasse_property());
        assert!(matches!(
            poset.check_directionally_simple().unwrap(),
            DirSimplicity::Ok(_)
        ));
        assert!(poset.check_join_equals_pseudojoin().unwrap());
    }

    #[test]
    fn shortcut_edge_breaks_hasse_property() {
        // A triangle oriented by x: path a -> b -> c plus shortcut a -> c.
        let poly = RationalPolytope::new(vec![
            ("a".into(), vec![rat(0), rat(0)]),
            ("b".into(), vec![rat(1), rat(2)]),
            ("c".into(), vec![rat(2), rat(0)]),
        ])
        .unwrap();
        let poset = build_generic_poset(poly, vec![rat(1), rat(0)]).unwrap();
        assert!(!poset.check_hasse_property());
        let (a, c) = poset.find_hasse_violation().unwrap();
        assert_eq!((poset.label(a), poset.label(c)), ("a", "c"));
    }

    #[test]
    fn square_pyramid_direction_fixtures() {
        let base = |x: i64, y: i64| vec![rat(x), rat(y), rat(0)];
        let vertices = vec![
            ("p00".to_string(), base(0, 0)),
            ("p10".to_string(), base(2, 0)),
            ("p01".to_string(), base(0, 2)),
            ("p11".to_string(), base(2, 2)),
            ("apex".to_string(), vec![rat(1), rat(1), rat(2)]),
        ];
        // Apex as sink: directionally simple (only out-edges matter).
        let poly = RationalPolytope::new(vertices.clone()).unwrap();
        let up = build_generic_poset(poly, vec![Rat::new(1.into(), 7.into()),
                                                Rat::new(1.into(), 13.into()),
                                                rat(1)])
        .unwrap();
        assert!(matches!(
            up.check_directionally_simple().unwrap(),
            DirSimplicity::Ok(_)
        ));
        // Apex as source: the two subsets of opposite base-corner edges
        // span the whole pyramid, not 2-faces.
        let poly = RationalPolytope::new(vertices).unwrap();
        let down = build_generic_poset(poly, vec![Rat::new(1.into(), 7.into()),
                                                  Rat::new(1.into(), 13.into()),
                                                  rat(-1)])
        .unwrap();
        match down.check_directionally_simple().unwrap() {
            DirSimplicity::Violation { vertex, .. } => assert_eq!(vertex, "apex"),
            DirSimplicity::Ok(_) => panic!("expected a violation at the apex"),
        }
    }

    #[test]
    fn distinct_joins_and_surjective_atom_map_on_s3() {
        let poset = hexagon();
        let e = |s: &str| poset.element(s).unwrap();
        assert!(poset.check_distinct_joins(e("123"), e("321")).unwrap());
        assert!(poset.check_surjective_atom_map(e("123"), e("321")).unwrap());
        for (u, v) in poset.strict_intervals() {
            assert!(poset.check_distinct_joins(u, v).unwrap());
            assert!(poset.check_surjective_atom_map(u, v).unwrap());
        }
    }

    #[test]
    fn nonrevisiting_on_generated_faces_of_3412() {
        let poset = build_bip_poset(&p("3412")).unwrap();
        let faces = match poset.check_directionally_simple().unwrap() {
            DirSimplicity::Ok(faces) => faces,
            DirSimplicity::Violation { vertex, .. } => panic!("violation at {vertex}"),
        };
        assert!(!faces.is_empty());
        for f in &faces {
            assert!(poset.find_revisit(&f.face).is_none());
        }
        // The whole polytope and a single edge are faces and trivially
        // non-revisiting.
        let all: Vec<usize> = (0..poset.len()).collect();
        assert!(poset.check_nonrevisiting(&all).unwrap());
        let (a, b) = poset.hasse_edges()[0];
        assert!(poset.check_nonrevisiting(&[a, b]).unwrap());
        // Three pairwise non-adjacent-face vertices are not a face.
        assert!(poset.check_nonrevisiting(&[a]).is_ok());
    }
}
