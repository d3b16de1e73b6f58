//! Saturated chains of intervals, flips across 2-faces, the move graph on
//! chains, the constructive star path between two chains, and exact vertex
//! connectivity of move graphs.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::skeleton::{SkeletonError, SkeletonPoset};

#[derive(Debug, Error)]
pub enum MoveError {
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
    #[error(transparent)]
    Geom(#[from] crate::exactgeom::GeomError),
    #[error("interval [{u}, {v}] has {count} maximal chains, over the cap {cap}")]
    ChainCapExceeded {
        u: String,
        v: String,
        count: u128,
        cap: usize,
    },
    #[error("not a saturated chain: {0}")]
    InvalidChain(String),
    #[error("move no longer matches the chain")]
    StaleMove,
    #[error("chains belong to different intervals")]
    MismatchedChains,
    #[error("vertex set has dimension {0}, expected a 2-face")]
    NotA2Face(usize),
    #[error("2-face is not a source-to-sink polygon")]
    NotAPolygon,
    #[error("flipped chain leaves the interval at {0:?}")]
    FlipLeftInterval(String),
    #[error("move sequence reconstruction failed: {0}")]
    ReconstructionFailed(String),
    #[error("vertex connectivity is undefined on fewer than two chains")]
    ConnectivityUndefined,
    #[error("star path construction failed: {0}")]
    StarPathFailed(String),
}

/// A saturated chain u = x_0 ⋖ x_1 ⋖ .. ⋖ x_k = v along Hasse edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    nodes: Vec<usize>,
}

impl Chain {
    /// Validates saturation against the poset.
    pub fn new(poset: &SkeletonPoset, nodes: Vec<usize>) -> Result<Self, MoveError> {
        if nodes.is_empty() {
            return Err(MoveError::InvalidChain("empty node list".into()));
        }
        for pair in nodes.windows(2) {
            if !poset.out_neighbors(pair[0]).contains(&pair[1]) {
                return Err(MoveError::InvalidChain(format!(
                    "{} does not cover {}",
                    poset.label(pair[1]),
                    poset.label(pair[0])
                )));
            }
        }
        Ok(Chain { nodes })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn first(&self) -> usize {
        *self.nodes.first().unwrap()
    }

    pub fn last(&self) -> usize {
        *self.nodes.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn position(&self, node: usize) -> Option<usize> {
        self.nodes.iter().position(|&x| x == node)
    }

    pub fn contains(&self, node: usize) -> bool {
        self.position(node).is_some()
    }

    /// Directed cover steps of the chain.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nodes.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn labels(&self, poset: &SkeletonPoset) -> Vec<String> {
        self.nodes.iter().map(|&x| poset.label(x).to_string()).collect()
    }

    pub fn label_string(&self, poset: &SkeletonPoset) -> String {
        self.labels(poset).join("-")
    }
}

/// A flip across a 2-face: the chain follows `traversed` (one source-to-sink
/// boundary path of the face) starting at chain index `start`; applying the
/// move substitutes the complementary boundary path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub start: usize,
    /// Sorted vertex ids of the 2-face.
    pub face: Vec<usize>,
    pub traversed: Vec<usize>,
    pub replacement: Vec<usize>,
}

impl Move {
    pub fn polygon_size(&self) -> usize {
        self.face.len()
    }
}

/// Coarse move classification by polygon size. On permutahedron posets
/// squares are commutation moves and hexagons are braid moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveClass {
    Commutation,
    Braid,
    Polygon(usize),
}

impl std::fmt::Display for MoveClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MoveClass::Commutation => write!(f, "commutation"),
            MoveClass::Braid => write!(f, "braid"),
            MoveClass::Polygon(k) => write!(f, "polygon({k})"),
        }
    }
}

/// Number of boundary vertices of a 2-face.
pub fn classify_2face(poset: &SkeletonPoset, face: &[usize]) -> Result<usize, MoveError> {
    let dim = poset.polytope().face_dim_ids(face)?;
    if dim != 2 {
        return Err(MoveError::NotA2Face(dim));
    }
    Ok(face.len())
}

pub fn move_label(m: &Move) -> MoveClass {
    match m.polygon_size() {
        4 => MoveClass::Commutation,
        6 => MoveClass::Braid,
        k => MoveClass::Polygon(k),
    }
}

/// The graph on all maximal chains of [u, v], with edges given by single
/// flips across 2-faces of the ambient polytope.
pub struct MoveGraph {
    pub u: usize,
    pub v: usize,
    chains: Vec<Chain>,
    /// Edges (i, j, polygon size) with i < j, sorted.
    edges: Vec<(usize, usize, usize)>,
    adj: Vec<Vec<usize>>,
    /// Diagnostic: chain segments that enter a 2-face at its source but
    /// leave its boundary before the sink (these admit no move).
    pub partial_entries: usize,
}

impl MoveGraph {
    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        if self.chains.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.chains.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.chains.len()
    }

    pub fn polygon_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist: HashMap<usize, usize> = HashMap::new();
        for &(_, _, size) in &self.edges {
            *hist.entry(size).or_default() += 1;
        }
        let mut out: Vec<(usize, usize)> = hist.into_iter().collect();
        out.sort_unstable();
        out
    }
}

/// Number of maximal chains of [u, v]; `None` on u128 overflow.
pub fn count_maximal_chains(
    poset: &SkeletonPoset,
    u: usize,
    v: usize,
) -> Result<Option<u128>, MoveError> {
    let elems = poset.interval(u, v)?;
    let mut count: HashMap<usize, u128> = HashMap::new();
    count.insert(u, 1);
    for &z in &elems {
        if z == u {
            continue;
        }
        let mut total: u128 = 0;
        for &y in poset.in_neighbors(z) {
            if let Some(&c) = count.get(&y) {
                total = match total.checked_add(c) {
                    Some(t) => t,
                    None => return Ok(None),
                };
            }
        }
        count.insert(z, total);
    }
    Ok(Some(count[&v]))
}

/// All saturated chains from u to v in lexicographic label order.
pub fn maximal_chains(
    poset: &SkeletonPoset,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<Vec<Chain>, MoveError> {
    match count_maximal_chains(poset, u, v)? {
        Some(count) if count <= cap as u128 => {}
        count => {
            return Err(MoveError::ChainCapExceeded {
                u: poset.label(u).to_string(),
                v: poset.label(v).to_string(),
                count: count.unwrap_or(u128::MAX),
                cap,
            })
        }
    }
    let mut chains = Vec::new();
    let mut stack = vec![u];
    fn extend(
        poset: &SkeletonPoset,
        v: usize,
        stack: &mut Vec<usize>,
        chains: &mut Vec<Chain>,
    ) {
        let top = *stack.last().unwrap();
        if top == v {
            chains.push(Chain {
                nodes: stack.clone(),
            });
            return;
        }
        for &next in poset.out_neighbors(top) {
            if poset.leq(next, v) {
                stack.push(next);
                extend(poset, v, stack, chains);
                stack.pop();
            }
        }
    }
    extend(poset, v, &mut stack, &mut chains);
    chains.sort_by_key(|c| c.labels(poset));
    Ok(chains)
}

/// The two directed boundary paths of a 2-face, each from the face source
/// to the face sink.
fn polygon_paths(
    poset: &SkeletonPoset,
    face: &[usize],
) -> Result<(Vec<usize>, Vec<usize>), MoveError> {
    let members: HashSet<usize> = face.iter().copied().collect();
    let outs = |x: usize| -> Vec<usize> {
        poset
            .out_neighbors(x)
            .iter()
            .copied()
            .filter(|t| members.contains(t))
            .collect()
    };
    let mut source = None;
    for &x in face {
        let ins = poset
            .in_neighbors(x)
            .iter()
            .filter(|t| members.contains(t))
            .count();
        if ins == 0 && source.replace(x).is_some() {
            return Err(MoveError::NotAPolygon);
        }
    }
    let source = source.ok_or(MoveError::NotAPolygon)?;
    let starts = outs(source);
    if starts.len() != 2 {
        return Err(MoveError::NotAPolygon);
    }
    let walk = |first: usize| -> Result<Vec<usize>, MoveError> {
        let mut path = vec![source, first];
        loop {
            let here = *path.last().unwrap();
            let next = outs(here);
            match next.len() {
                0 => return Ok(path),
                1 => {
                    path.push(next[0]);
                    if path.len() > face.len() {
                        return Err(MoveError::NotAPolygon);
                    }
                }
                _ => return Err(MoveError::NotAPolygon),
            }
        }
    };
    let p1 = walk(starts[0])?;
    let p2 = walk(starts[1])?;
    if p1.last() != p2.last() || p1.len() + p2.len() != face.len() + 2 {
        return Err(MoveError::NotAPolygon);
    }
    Ok((p1, p2))
}

/// The 2-face spanned at x by two of its upper covers, if it exists.
fn two_face(
    poset: &SkeletonPoset,
    x: usize,
    a: usize,
    b: usize,
) -> Result<Option<Vec<usize>>, MoveError> {
    let face = poset.smallest_face_cached(&[x, a, b])?;
    if poset.polytope().face_dim_ids(&face)? != 2 {
        return Ok(None);
    }
    Ok(Some(face))
}

/// All moves available on a chain, each keyed by (source index, face) and
/// emitted once. `partials` counts 2-faces entered at their source without
/// completing a boundary path, which admit no move.
pub fn detect_moves_with_diagnostics(
    poset: &SkeletonPoset,
    chain: &Chain,
) -> Result<(Vec<Move>, usize), MoveError> {
    let mut moves = Vec::new();
    let mut partials = 0;
    let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
    for i in 0..chain.len().saturating_sub(1) {
        let x = chain.nodes[i];
        let next = chain.nodes[i + 1];
        for &s in poset.out_neighbors(x) {
            if s == next {
                continue;
            }
            let Some(face) = two_face(poset, x, next, s)? else {
                continue;
            };
            let mut key_face = face.clone();
            key_face.sort_unstable();
            if !seen.insert((i, key_face.clone())) {
                continue;
            }
            let (p1, p2) = polygon_paths(poset, &face)?;
            if p1[0] != x {
                return Err(MoveError::NotAPolygon);
            }
            let (through, other) = if p1[1] == next {
                (p1, p2)
            } else if p2[1] == next {
                (p2, p1)
            } else {
                return Err(MoveError::NotAPolygon);
            };
            let matches = chain.nodes.len() >= i + through.len()
                && chain.nodes[i..i + through.len()] == through[..];
            if matches {
                moves.push(Move {
                    start: i,
                    face: key_face,
                    traversed: through,
                    replacement: other,
                });
            } else {
                partials += 1;
            }
        }
    }
    Ok((moves, partials))
}

pub fn detect_moves(poset: &SkeletonPoset, chain: &Chain) -> Result<Vec<Move>, MoveError> {
    Ok(detect_moves_with_diagnostics(poset, chain)?.0)
}

/// Applies a move, substituting the complementary boundary path.
pub fn apply_move(chain: &Chain, m: &Move) -> Result<Chain, MoveError> {
    let end = m.start + m.traversed.len();
    if end > chain.len() || chain.nodes[m.start..end] != m.traversed[..] {
        return Err(MoveError::StaleMove);
    }
    let mut nodes = Vec::with_capacity(chain.len() - m.traversed.len() + m.replacement.len());
    nodes.extend_from_slice(&chain.nodes[..m.start]);
    nodes.extend_from_slice(&m.replacement);
    nodes.extend_from_slice(&chain.nodes[end..]);
    Ok(Chain { nodes })
}

/// Builds the move graph of [u, v]. Face non-revisiting keeps flipped
/// chains inside the interval; that is checked at runtime rather than
/// assumed.
pub fn move_graph(
    poset: &SkeletonPoset,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<MoveGraph, MoveError> {
    let chains = maximal_chains(poset, u, v, cap)?;
    let index: HashMap<&Chain, usize> = chains.iter().zip(0..).collect();
    let mut edges = HashSet::new();
    let mut partial_entries = 0;
    for (i, chain) in chains.iter().enumerate() {
        let (moves, partials) = detect_moves_with_diagnostics(poset, chain)?;
        partial_entries += partials;
        for m in &moves {
            for &z in &m.replacement {
                if !(poset.leq(u, z) && poset.leq(z, v)) {
                    return Err(MoveError::FlipLeftInterval(poset.label(z).to_string()));
                }
            }
            let flipped = apply_move(chain, m)?;
            let j = *index
                .get(&flipped)
                .ok_or_else(|| MoveError::InvalidChain(flipped.label_string(poset)))?;
            edges.insert((i.min(j), i.max(j), m.polygon_size()));
        }
    }
    let mut edges: Vec<(usize, usize, usize)> = edges.into_iter().collect();
    edges.sort_unstable();
    let mut adj = vec![Vec::new(); chains.len()];
    for &(i, j, _) in &edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    Ok(MoveGraph {
        u,
        v,
        chains,
        edges,
        adj,
        partial_entries,
    })
}

/// Lexicographically least saturated chain from a up to b, by node labels.
fn lex_least_chain(poset: &SkeletonPoset, a: usize, b: usize) -> Result<Vec<usize>, MoveError> {
    let mut nodes = vec![a];
    let mut here = a;
    while here != b {
        let next = poset
            .out_neighbors(here)
            .iter()
            .copied()
            .filter(|&y| poset.leq(y, b))
            .min_by_key(|&y| poset.label(y).to_string())
            .ok_or_else(|| {
                MoveError::StarPathFailed(format!(
                    "no cover of {} below {}",
                    poset.label(here),
                    poset.label(b)
                ))
            })?;
        nodes.push(next);
        here = next;
    }
    Ok(nodes)
}

/// The constructive path from gamma1 to gamma2 in the move graph: find the
/// lowest branching vertex, flip across the 2-face spanned by the two
/// divergent edges, and recurse on both sides. Every intermediate chain
/// contains every vertex of gamma1 ∩ gamma2.
///
/// The connecting chain p above the flip is chosen deterministically: it
/// coincides with gamma1 above sink(F) when sink(F) lies on gamma1, always
/// coincides with gamma1 above the next shared vertex x', and is
/// lexicographically least by node labels below x'.
pub fn star_path(
    poset: &SkeletonPoset,
    gamma1: &Chain,
    gamma2: &Chain,
) -> Result<Vec<Chain>, MoveError> {
    if gamma1.first() != gamma2.first() || gamma1.last() != gamma2.last() {
        return Err(MoveError::MismatchedChains);
    }
    star_path_inner(poset, gamma1, gamma2, poset.len() + 2)
}

fn star_path_inner(
    poset: &SkeletonPoset,
    gamma1: &Chain,
    gamma2: &Chain,
    depth: usize,
) -> Result<Vec<Chain>, MoveError> {
    if gamma1 == gamma2 {
        return Ok(vec![gamma1.clone()]);
    }
    if depth == 0 {
        return Err(MoveError::StarPathFailed(
            "recursion did not terminate".into(),
        ));
    }
    let in2: HashSet<usize> = gamma2.nodes.iter().copied().collect();
    let succ2: HashMap<usize, usize> = gamma2.steps().collect();
    // Lowest shared vertex covered by distinct elements in the two chains.
    let mut branch = None;
    for (x, next1) in gamma1.steps() {
        if in2.contains(&x) && succ2.get(&x) != Some(&next1) {
            branch = Some(x);
            break;
        }
    }
    let x = branch.ok_or_else(|| {
        MoveError::StarPathFailed("distinct chains with no branching vertex".into())
    })?;
    let xi1 = gamma1.position(x).unwrap();
    // Next lowest shared vertex above x.
    let xprime = gamma1.nodes[xi1 + 1..]
        .iter()
        .copied()
        .find(|z| in2.contains(z))
        .ok_or_else(|| MoveError::StarPathFailed("no shared vertex above branch".into()))?;
    let a1 = gamma1.nodes[xi1 + 1];
    let a2 = succ2[&x];
    let face = two_face(poset, x, a1, a2)?
        .ok_or_else(|| MoveError::StarPathFailed("divergent edges span no 2-face".into()))?;
    let (p1, p2) = polygon_paths(poset, &face)?;
    if p1[0] != x {
        return Err(MoveError::NotAPolygon);
    }
    let (through1, through2) = if p1[1] == a1 {
        (p1, p2)
    } else {
        (p2, p1)
    };
    if through1[1] != a1 || through2[1] != a2 {
        return Err(MoveError::StarPathFailed(
            "polygon does not start with the divergent edges".into(),
        ));
    }
    let face_sink = *through1.last().unwrap();
    // The face sink is the lattice join of the two divergent covers; the
    // construction relies on it, so check rather than assume.
    if poset.join(a1, a2)? != face_sink {
        return Err(MoveError::StarPathFailed(
            "face sink is not the join of the divergent covers".into(),
        ));
    }
    // Connecting chain p from the face sink to the top.
    let p: Vec<usize> = match gamma1.position(face_sink) {
        Some(pos) => gamma1.nodes[pos..].to_vec(),
        None => {
            let xprime_pos = gamma1.position(xprime).unwrap();
            let mut p = lex_least_chain(poset, face_sink, xprime)?;
            p.extend_from_slice(&gamma1.nodes[xprime_pos + 1..]);
            p
        }
    };
    let stitch = |prefix: &[usize], boundary: &[usize]| -> Chain {
        let mut nodes = prefix.to_vec();
        nodes.extend_from_slice(&boundary[1..]);
        nodes.extend_from_slice(&p[1..]);
        Chain { nodes }
    };
    // gamma1 up to x, around the face, then along p; same for gamma2.
    let gamma1_f = stitch(&gamma1.nodes[..=xi1], &through1);
    let xi2 = gamma2.position(x).unwrap();
    let gamma2_f = stitch(&gamma2.nodes[..=xi2], &through2);
    let mut left = star_path_inner(poset, gamma1, &gamma1_f, depth - 1)?;
    let right = star_path_inner(poset, &gamma2_f, gamma2, depth - 1)?;
    left.extend(right);
    Ok(left)
}

/// Backward reconstruction of the alternating edge/2-face sequence from a
/// base chain and the lowest edge of another chain not shared with it.
/// Returns the sequence of edges (eps_0 .. eps_r); eps_0 is the cover step
/// at the bottom that the sequence uniquely determines.
pub fn reconstruct_move_sequence(
    poset: &SkeletonPoset,
    base: &Chain,
    e2: (usize, usize),
) -> Result<Vec<(usize, usize)>, MoveError> {
    let chain_edges: HashSet<(usize, usize)> = base.steps().collect();
    if chain_edges.contains(&e2) {
        return Err(MoveError::ReconstructionFailed(
            "edge lies on the base chain".into(),
        ));
    }
    let bottom = base.first();
    let mut eps = e2;
    let mut sequence = vec![e2];
    let mut guard = 0;
    while eps.0 != bottom {
        guard += 1;
        if guard > poset.len() + 2 {
            return Err(MoveError::ReconstructionFailed(
                "walk did not reach the bottom".into(),
            ));
        }
        let xi = base.position(eps.0).ok_or_else(|| {
            MoveError::ReconstructionFailed(format!(
                "lower vertex {} is not on the base chain",
                poset.label(eps.0)
            ))
        })?;
        // The base-chain edge arriving at the lower vertex of eps.
        let g = (base.nodes[xi - 1], base.nodes[xi]);
        let seed = [g.0, g.1, eps.1];
        let face = poset.smallest_face_cached(&seed)?;
        if poset.polytope().face_dim_ids(&face)? != 2 {
            return Err(MoveError::ReconstructionFailed(format!(
                "edges at {} span a face of dimension != 2",
                poset.label(eps.0)
            )));
        }
        let (p1, p2) = polygon_paths(poset, &face)?;
        let boundary: Vec<(usize, usize)> = p1
            .windows(2)
            .chain(p2.windows(2))
            .map(|w| (w[0], w[1]))
            .collect();
        let outside: Vec<(usize, usize)> = boundary
            .into_iter()
            .filter(|e| !chain_edges.contains(e))
            .collect();
        let lowest = outside
            .iter()
            .copied()
            .min_by_key(|&(lo, _)| poset.topo_position(lo))
            .ok_or_else(|| {
                MoveError::ReconstructionFailed("face boundary lies on the chain".into())
            })?;
        // The walk is only well defined with a unique lowest outside
        // edge; check rather than assume.
        let ambiguous = outside
            .iter()
            .any(|&e| e != lowest && !(poset.leq(lowest.0, e.0) && lowest.0 != e.0));
        if ambiguous {
            return Err(MoveError::ReconstructionFailed(
                "lowest outside edge is not unique".into(),
            ));
        }
        eps = lowest;
        sequence.push(eps);
    }
    sequence.reverse();
    Ok(sequence)
}

/// Exact vertex connectivity of a move graph via unit-capacity max-flow
/// with vertex splitting; complete graphs return |V| - 1.
pub fn vertex_connectivity(graph: &MoveGraph) -> Result<usize, MoveError> {
    let n = graph.len();
    if n < 2 {
        return Err(MoveError::ConnectivityUndefined);
    }
    let adj = &graph.adj;
    if adj.iter().all(|nb| nb.len() == n - 1) {
        return Ok(n - 1);
    }
    // Every minimum cut either separates s from a non-neighbor or contains
    // s, in which case it separates two of s's neighbors; so it suffices to
    // run max-flow over those pairs.
    let s = (0..n).min_by_key(|&i| (adj[i].len(), i)).unwrap();
    let mut best = usize::MAX;
    for t in 0..n {
        if t != s && adj[s].binary_search(&t).is_err() {
            best = best.min(max_flow_vertex_cap(adj, s, t));
        }
    }
    for (k, &a) in adj[s].iter().enumerate() {
        for &b in &adj[s][k + 1..] {
            if adj[a].binary_search(&b).is_err() {
                best = best.min(max_flow_vertex_cap(adj, a, b));
            }
        }
    }
    Ok(best)
}

/// Max flow from s to t where every vertex other than s, t has capacity 1.
fn max_flow_vertex_cap(adj: &[Vec<usize>], s: usize, t: usize) -> usize {
    let n = adj.len();
    // Split: vertex v -> nodes 2v (in) and 2v+1 (out).
    let mut to: Vec<usize> = Vec::new();
    let mut cap: Vec<u32> = Vec::new();
    let mut head: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let add_arc = |head: &mut Vec<Vec<usize>>,
                       to: &mut Vec<usize>,
                       cap: &mut Vec<u32>,
                       a: usize,
                       b: usize,
                       c: u32| {
        head[a].push(to.len());
        to.push(b);
        cap.push(c);
        head[b].push(to.len());
        to.push(a);
        cap.push(0);
    };
    let big = n as u32;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        add_arc(&mut head, &mut to, &mut cap, 2 * v, 2 * v + 1, c);
    }
    for (a, nb) in adj.iter().enumerate() {
        for &b in nb {
            add_arc(&mut head, &mut to, &mut cap, 2 * a + 1, 2 * b, big);
        }
    }
    let (src, dst) = (2 * s + 1, 2 * t);
    let mut flow = 0usize;
    loop {
        // BFS for an augmenting path.
        let mut parent: Vec<Option<usize>> = vec![None; 2 * n];
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            if x == dst {
                break;
            }
            for &e in &head[x] {
                if cap[e] > 0 && parent[to[e]].is_none() && to[e] != src {
                    parent[to[e]] = Some(e);
                    queue.push_back(to[e]);
                }
            }
        }
        if parent[dst].is_none() {
            return flow;
        }
        let mut x = dst;
        while x != src {
            let e = parent[x].unwrap();
            cap[e] -= 1;
            cap[e ^ 1] += 1;
            x = to[e ^ 1];
        }
        flow += 1;
    }
}
