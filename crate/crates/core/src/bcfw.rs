//! Bridge sequences of maximal chains for Grassmannian permutations, their
//! plabic-graph realizations, and trip permutations.
//!
//! A plabic graph is stored as a rotation system (counterclockwise cyclic
//! dart order per vertex) with boundary vertices on a clockwise-labelled
//! disk; no coordinates are kept. Bridges are read off a chain bottom to
//! top and inserted nearest the boundary, white vertex on the lower leg and
//! black on the higher. These conventions are pinned by the round-trip
//! check: the trip permutation of the graph built from any maximal chain of
//! [e, w] must equal w.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::moves::{
    count_maximal_chains, maximal_chains, move_graph, vertex_connectivity, Chain, MoveError,
};
use crate::skeleton::{SkeletonError, SkeletonPoset};
use crate::symgroup::{cover_transposition, Permutation, SymGroupError, Transposition};

#[derive(Debug, Error)]
pub enum BcfwError {
    #[error(transparent)]
    SymGroup(#[from] SymGroupError),
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("permutation {0} is not Grassmannian (more than one descent)")]
    NotGrassmannian(String),
    #[error("chain is not anchored at the identity")]
    NotFromIdentity,
    #[error("chain step {0} -> {1} is not a cover")]
    NotACoverStep(String, String),
    #[error("bridge prefix after {0} steps has the wrong length")]
    NotReduced(usize),
    #[error("bridge ({0},{1}) does not fit in S_{2}")]
    BridgeOutOfRange(usize, usize, usize),
    #[error("rotation system is inconsistent")]
    MalformedEmbedding,
    #[error("strand traversal did not terminate")]
    TraversalError,
    #[error("poset is not a Bruhat interval poset")]
    NotBruhatInterval,
}

/// Vertex colors of a plabic graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    White,
    Black,
}

/// An ordered list of bridges whose right-to-left prefix products walk a
/// saturated chain from the identity: composing the identity with
/// bridges[0..k] has length exactly k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeSequence {
    n: usize,
    bridges: Vec<Transposition>,
}

impl BridgeSequence {
    pub fn new(n: usize, bridges: Vec<Transposition>) -> Result<Self, BcfwError> {
        let mut prefix = Permutation::identity(n);
        for (k, &t) in bridges.iter().enumerate() {
            if t.j > n {
                return Err(BcfwError::BridgeOutOfRange(t.i, t.j, n));
            }
            prefix = prefix.apply_transposition(t)?;
            if prefix.length() != k + 1 {
                return Err(BcfwError::NotReduced(k + 1));
            }
        }
        Ok(BridgeSequence { n, bridges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bridges(&self) -> &[Transposition] {
        &self.bridges
    }

    pub fn len(&self) -> usize {
        self.bridges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bridges.is_empty()
    }

    /// The permutation the bridges multiply out to.
    pub fn product(&self) -> Permutation {
        let mut w = Permutation::identity(self.n);
        for &t in &self.bridges {
            w = w.apply_transposition(t).expect("validated on construction");
        }
        w
    }
}

/// Reads the bridge sequence off a maximal chain of [e, w]: one cover
/// transposition per step, bottom to top.
pub fn bridge_sequence(
    poset: &SkeletonPoset,
    chain: &Chain,
) -> Result<BridgeSequence, BcfwError> {
    if !poset.is_bruhat_interval() {
        return Err(BcfwError::NotBruhatInterval);
    }
    let first = poset
        .permutation(chain.first())
        .ok_or(BcfwError::NotBruhatInterval)?;
    if !first.is_identity() {
        return Err(BcfwError::NotFromIdentity);
    }
    let mut bridges = Vec::with_capacity(chain.len() - 1);
    for (a, b) in chain.steps() {
        let pa = poset.permutation(a).unwrap();
        let pb = poset.permutation(b).unwrap();
        let t = cover_transposition(pa, pb)?.ok_or_else(|| {
            BcfwError::NotACoverStep(pa.to_string(), pb.to_string())
        })?;
        bridges.push(t);
    }
    BridgeSequence::new(first.n(), bridges)
}

/// A planar bicolored graph in a disk, stored as a rotation system.
/// Vertices 0..n-1 are the boundary vertices (boundary label i+1),
/// clockwise around the disk; the rest are internal and colored.
pub struct PlabicGraph {
    n: usize,
    colors: Vec<Option<Color>>,
    /// Counterclockwise cyclic order of dart ids at each vertex.
    rot: Vec<Vec<usize>>,
    dart_target: Vec<usize>,
    dart_rev: Vec<usize>,
    /// Spine of each leg: internal vertices from the boundary inward,
    /// ending with the lollipop.
    legs: Vec<Vec<usize>>,
}

impl PlabicGraph {
    /// The all-lollipop graph of the decorated identity: each boundary
    /// vertex carries a single white lollipop.
    pub fn lollipops(n: usize) -> Self {
        let mut g = PlabicGraph {
            n,
            colors: vec![None; n],
            rot: vec![Vec::new(); n],
            dart_target: Vec::new(),
            dart_rev: Vec::new(),
            legs: Vec::new(),
        };
        for b in 0..n {
            let lol = g.new_vertex(Color::White);
            let (d1, d2) = g.new_edge(b, lol);
            g.rot[b].push(d1);
            g.rot[lol].push(d2);
            g.legs.push(vec![lol]);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_target.len() / 2
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        self.colors[v]
    }

    /// Counterclockwise neighbor lists, for export.
    pub fn rotation_system(&self) -> Vec<(Option<Color>, Vec<usize>)> {
        (0..self.vertex_count())
            .map(|v| {
                let nb = self.rot[v].iter().map(|&d| self.dart_target[d]).collect();
                (self.colors[v], nb)
            })
            .collect()
    }

    fn new_vertex(&mut self, color: Color) -> usize {
        self.colors.push(Some(color));
        self.rot.push(Vec::new());
        self.colors.len() - 1
    }

    fn new_edge(&mut self, a: usize, b: usize) -> (usize, usize) {
        let d1 = self.dart_target.len();
        let d2 = d1 + 1;
        self.dart_target.push(b);
        self.dart_target.push(a);
        self.dart_rev.push(d2);
        self.dart_rev.push(d1);
        (d1, d2)
    }

    /// Splits the edge between consecutive spine positions of a leg with a
    /// new vertex; `pos` counts internal vertices from the boundary, so 0
    /// inserts next to the boundary vertex. Returns the vertex and its
    /// (boundary-ward, inward) darts.
    fn subdivide_at(&mut self, b: usize, pos: usize, color: Color) -> (usize, usize, usize) {
        let shallow = if pos == 0 { b } else { self.legs[b][pos - 1] };
        let deep = self.legs[b][pos];
        let to_deep = *self.rot[shallow]
            .iter()
            .find(|&&d| self.dart_target[d] == deep)
            .expect("consecutive spine vertices are adjacent");
        let back = self.dart_rev[to_deep];
        let nv = self.new_vertex(color);
        // Retarget the old darts onto the new vertex and give it fresh
        // darts toward both old endpoints; the old rotations are untouched.
        self.dart_target[to_deep] = nv;
        self.dart_target[back] = nv;
        let d_shallow = self.dart_target.len();
        self.dart_target.push(shallow);
        self.dart_rev.push(to_deep);
        self.dart_rev[to_deep] = d_shallow;
        let d_deep = self.dart_target.len();
        self.dart_target.push(deep);
        self.dart_rev.push(back);
        self.dart_rev[back] = d_deep;
        self.legs[b].insert(pos, nv);
        (nv, d_shallow, d_deep)
    }

    /// Inserts a bridge nearest the boundary: a white vertex on leg i and
    /// a black vertex on leg j, adjacent to their boundary vertices and
    /// joined by an edge. The rotations at the two new trivalent vertices
    /// are the unique ones realizing the bridge strand exchange:
    /// counterclockwise (boundary-ward, inward, bridge) at the white vertex
    /// and (bridge, inward, boundary-ward) at the black.
    pub fn add_bridge(&mut self, t: Transposition) -> Result<(), BcfwError> {
        if t.j > self.n {
            return Err(BcfwError::BridgeOutOfRange(t.i, t.j, self.n));
        }
        let (white, w_b, w_in) = self.subdivide_at(t.i - 1, 0, Color::White);
        let (black, k_b, k_in) = self.subdivide_at(t.j - 1, 0, Color::Black);
        let (d_wb, d_bw) = self.new_edge(white, black);
        self.rot[white] = vec![w_b, w_in, d_wb];
        self.rot[black] = vec![d_bw, k_in, k_b];
        Ok(())
    }

    fn rot_step(&self, v: usize, dart: usize, forward: bool) -> usize {
        let order = &self.rot[v];
        let pos = order
            .iter()
            .position(|&d| d == dart)
            .expect("dart belongs to its vertex rotation");
        let len = order.len();
        if forward {
            order[(pos + 1) % len]
        } else {
            order[(pos + len - 1) % len]
        }
    }

    /// Follows the strand entering at boundary vertex i (1-based): turn
    /// maximally right at black vertices, maximally left at white, and
    /// report the boundary vertex of arrival (1-based).
    pub fn trip(&self, i: usize) -> Result<usize, BcfwError> {
        let mut dart = *self.rot[i - 1].first().ok_or(BcfwError::TraversalError)?;
        let budget = 2 * self.dart_target.len() + 2;
        for _ in 0..budget {
            let v = self.dart_target[dart];
            if v < self.n {
                return Ok(v + 1);
            }
            let arrival = self.dart_rev[dart];
            dart = match self.colors[v].expect("internal vertices are colored") {
                // With counterclockwise rotations, a maximal right turn is
                // the next dart after the arrival dart and a maximal left
                // turn is the previous one.
                Color::Black => self.rot_step(v, arrival, true),
                Color::White => self.rot_step(v, arrival, false),
            };
        }
        Err(BcfwError::TraversalError)
    }

    /// The permutation of boundary labels traced by all strands, plus the
    /// decoration color of each fixed point (the color of the internal
    /// vertex its leg attaches to).
    pub fn trip_permutation(
        &self,
    ) -> Result<(Permutation, BTreeMap<usize, Color>), BcfwError> {
        let images: Vec<usize> = (1..=self.n)
            .map(|i| self.trip(i))
            .collect::<Result<_, _>>()?;
        let perm = Permutation::from_oneline(images).map_err(BcfwError::SymGroup)?;
        let mut decorations = BTreeMap::new();
        for i in 1..=self.n {
            if perm.apply(i) == i {
                let leg = self.rot[i - 1][0];
                let attach = self.dart_target[leg];
                decorations.insert(i, self.colors[attach].expect("internal vertex"));
            }
        }
        Ok((perm, decorations))
    }

    /// Validates the combinatorial embedding: the reverse map is a
    /// fixed-point-free involution, every dart sits in exactly one vertex
    /// rotation, and every boundary vertex has at most one leg.
    pub fn check_embedding(&self) -> Result<(), BcfwError> {
        let ndarts = self.dart_target.len();
        let mut owner = vec![usize::MAX; ndarts];
        for (v, order) in self.rot.iter().enumerate() {
            for &d in order {
                if d >= ndarts || owner[d] != usize::MAX {
                    return Err(BcfwError::MalformedEmbedding);
                }
                owner[d] = v;
            }
        }
        for d in 0..ndarts {
            if owner[d] == usize::MAX
                || self.dart_rev[d] >= ndarts
                || self.dart_rev[self.dart_rev[d]] != d
                || self.dart_rev[d] == d
                || owner[self.dart_rev[d]] != self.dart_target[d]
            {
                return Err(BcfwError::MalformedEmbedding);
            }
        }
        for b in 0..self.n {
            if self.rot[b].len() != 1 {
                return Err(BcfwError::MalformedEmbedding);
            }
        }
        Ok(())
    }

    /// Genus of the embedding with the disk boundary closed into a cycle:
    /// 0 means the rotation system draws in the plane as-is. Bridge graphs
    /// whose bridges span strands that already carry structure need
    /// crossing resolutions in a literal drawing, which shows up here as
    /// positive genus; the trip permutation is unaffected.
    pub fn genus(&self) -> usize {
        let n = self.n;
        let mut target = self.dart_target.clone();
        let mut rev = self.dart_rev.clone();
        let mut rot = self.rot.clone();
        if n >= 2 {
            let mut arc_out = vec![0usize; n];
            let mut arc_in = vec![0usize; n];
            for b in 0..n {
                let next = (b + 1) % n;
                let d1 = target.len();
                let d2 = d1 + 1;
                target.push(next);
                target.push(b);
                rev.push(d2);
                rev.push(d1);
                arc_out[b] = d1;
                arc_in[next] = d2;
            }
            // Counterclockwise at each boundary vertex: the clockwise arc,
            // the counterclockwise arc, then the leg into the disk.
            for b in 0..n {
                let leg = rot[b][0];
                rot[b] = vec![arc_out[b], arc_in[b], leg];
            }
        }
        let mut seen = vec![false; target.len()];
        let mut faces = 0usize;
        for start in 0..target.len() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            loop {
                seen[d] = true;
                let v = target[d];
                let back = rev[d];
                let order = &rot[v];
                let pos = order
                    .iter()
                    .position(|&x| x == back)
                    .expect("validated embedding");
                d = order[(pos + 1) % order.len()];
                if d == start {
                    break;
                }
            }
        }
        let v = self.vertex_count();
        let e = target.len() / 2;
        // V - E + F = 2 - 2g on the closed-up surface.
        (2 + e - v - faces) / 2
    }
}

/// Builds the plabic graph of a bridge sequence: lollipops of the identity,
/// then each bridge inserted nearest the boundary in sequence order.
pub fn plabic_from_bridges(seq: &BridgeSequence) -> Result<PlabicGraph, BcfwError> {
    let mut g = PlabicGraph::lollipops(seq.n());
    for &t in seq.bridges() {
        g.add_bridge(t)?;
    }
    g.check_embedding()?;
    Ok(g)
}

/// Verification report for one Grassmannian permutation: bridge/trip
/// round trips over every maximal chain, the atom/support identification,
/// and connectivity of the move graph.
#[derive(Debug, Clone)]
pub struct BcfwReport {
    pub w: String,
    pub atom_count: usize,
    pub support: Vec<usize>,
    pub atoms_equal_support: bool,
    pub chain_count: usize,
    pub trips_ok: bool,
    pub connected: bool,
    pub vertex_connectivity: Option<usize>,
    pub connectivity_ok: bool,
    pub polygon_histogram: Vec<(usize, usize)>,
}

impl BcfwReport {
    pub fn pass(&self) -> bool {
        self.atoms_equal_support && self.trips_ok && self.connected && self.connectivity_ok
    }
}

/// Runs the full bridge-decomposition verification for one Grassmannian
/// w; errors on non-Grassmannian input.
pub fn verify_corollary_bcfw(
    w: &Permutation,
    chain_cap: usize,
) -> Result<BcfwReport, BcfwError> {
    if !w.is_grassmannian() {
        return Err(BcfwError::NotGrassmannian(w.to_string()));
    }
    let poset = SkeletonPoset::build_bip(w)?;
    let (u, v) = (poset.source(), poset.sink());
    if count_maximal_chains(&poset, u, v)?.is_none() {
        return Err(MoveError::ChainCapExceeded {
            u: poset.label(u).to_string(),
            v: poset.label(v).to_string(),
            count: u128::MAX,
            cap: chain_cap,
        }
        .into());
    }
    let chains = maximal_chains(&poset, u, v, chain_cap)?;
    let mut trips_ok = true;
    for chain in &chains {
        let seq = bridge_sequence(&poset, chain)?;
        let graph = plabic_from_bridges(&seq)?;
        let (trip, _) = graph.trip_permutation()?;
        if &trip != w || seq.product() != trip {
            trips_ok = false;
        }
    }
    let atoms = poset.atoms(u, v)?;
    let support = w.support();
    let graph = move_graph(&poset, u, v, chain_cap)?;
    let connected = graph.is_connected();
    let a = atoms.len();
    let kappa = if graph.len() >= 2 {
        Some(vertex_connectivity(&graph)?)
    } else {
        None
    };
    let connectivity_ok = match (a >= 2 && graph.len() >= 2, kappa) {
        (true, Some(k)) => k >= a - 1,
        _ => true,
    };
    Ok(BcfwReport {
        w: w.to_string(),
        atom_count: a,
        support: support.clone(),
        atoms_equal_support: a == support.len(),
        chain_count: chains.len(),
        trips_ok,
        connected,
        vertex_connectivity: kappa,
        connectivity_ok,
        polygon_histogram: graph.polygon_histogram(),
    })
}
