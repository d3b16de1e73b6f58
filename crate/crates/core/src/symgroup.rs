//! Exact combinatorics of the symmetric group: composition, length,
//! Bruhat and weak orders, reduced words, descents, vertex vectors.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactgeom::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymGroupError {
    #[error("one-line notation is not a bijection on 1..{0}")]
    NotABijection(usize),
    #[error("permutations act on different sets: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("empty Bruhat interval: {0} is not below {1}")]
    EmptyInterval(String, String),
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
    #[error("transposition needs positions 1 <= i < j <= n, got ({0},{1})")]
    BadTransposition(usize, usize),
}

/// A permutation of {1,..,n} in one-line notation: `oneline[k-1] = w(k)`.
///
/// Values are 1-based throughout, matching the usual combinatorics
/// conventions; positions passed to and returned from methods are also
/// 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    oneline: Vec<u8>,
}

/// A transposition of two positions `1 <= i < j <= n`, used as a cover label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    pub i: usize,
    pub j: usize,
}

impl Transposition {
    pub fn new(i: usize, j: usize) -> Result<Self, SymGroupError> {
        if i == 0 || i >= j {
            return Err(SymGroupError::BadTransposition(i, j));
        }
        Ok(Transposition { i, j })
    }

    /// True when the transposition swaps adjacent positions (a simple reflection).
    pub fn is_simple(&self) -> bool {
        self.j == self.i + 1
    }

    /// As a permutation of S_n.
    pub fn to_permutation(&self, n: usize) -> Result<Permutation, SymGroupError> {
        if self.j > n {
            return Err(SymGroupError::BadTransposition(self.i, self.j));
        }
        let mut oneline: Vec<u8> = (1..=n as u8).collect();
        oneline.swap(self.i - 1, self.j - 1);
        Permutation::from_oneline(oneline.iter().map(|&v| v as usize).collect())
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            oneline: (1..=n as u8).collect(),
        }
    }

    /// The longest element n, n-1, .., 1.
    pub fn longest(n: usize) -> Self {
        Permutation {
            oneline: (1..=n as u8).rev().collect(),
        }
    }

    pub fn from_oneline(values: Vec<usize>) -> Result<Self, SymGroupError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(SymGroupError::NotABijection(n));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            oneline: values.iter().map(|&v| v as u8).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.oneline.len()
    }

    /// Image of position k (1-based).
    pub fn apply(&self, k: usize) -> usize {
        self.oneline[k - 1] as usize
    }

    pub fn oneline(&self) -> Vec<usize> {
        self.oneline.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.oneline.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.oneline.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation { oneline: inv }
    }

    /// Composition (self ∘ other)(k) = self(other(k)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, SymGroupError> {
        if self.n() != other.n() {
            return Err(SymGroupError::SizeMismatch(self.n(), other.n()));
        }
        let oneline = other
            .oneline
            .iter()
            .map(|&k| self.oneline[k as usize - 1])
            .collect();
        Ok(Permutation { oneline })
    }

    /// Right multiplication by the transposition of positions (i,j):
    /// swaps the entries in positions i and j.
    pub fn apply_transposition(&self, t: Transposition) -> Result<Permutation, SymGroupError> {
        if t.j > self.n() {
            return Err(SymGroupError::BadTransposition(t.i, t.j));
        }
        let mut oneline = self.oneline.clone();
        oneline.swap(t.i - 1, t.j - 1);
        Ok(Permutation { oneline })
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> usize {
        let w = &self.oneline;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// The vector (w^{-1}(1), .., w^{-1}(n)); the vertex of the interval
    /// polytope labelled by w.
    pub fn vertex_vector(&self) -> Vec<Rat> {
        self.inverse()
            .oneline
            .iter()
            .map(|&v| Rat::from_integer((v as i64).into()))
            .collect()
    }

    /// Descent positions {i : w(i) > w(i+1)}, 1-based.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.oneline[i - 1] > self.oneline[i])
            .collect()
    }

    /// At most one descent.
    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() <= 1
    }

    /// Indices of the simple reflections occurring in any reduced word.
    ///
    /// Independent of the chosen word, so we read a single word off the
    /// descent recursion.
    pub fn support(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = self.clone();
        while let Some(&i) = w.descents().first() {
            word.push(i);
            w = w
                .apply_transposition(Transposition { i, j: i + 1 })
                .expect("descent position in range");
        }
        let mut support: Vec<usize> = word.to_vec();
        support.sort_unstable();
        support.dedup();
        support
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &v in &self.oneline {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.oneline.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = SymGroupError;

    /// Parses "3412" (single digits) or "3,4,1,2".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| SymGroupError::Parse(s.to_string()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| SymGroupError::Parse(s.to_string()))?
        };
        if values.is_empty() {
            return Err(SymGroupError::Parse(s.to_string()));
        }
        Permutation::from_oneline(values)
    }
}

/// All of S_n in lexicographic one-line order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if current.len() == n {
            out.push(Permutation::from_oneline(current.clone()).unwrap());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// Bruhat comparison u ⪯ w via the rank-matrix dominance criterion:
/// u ⪯ w iff for all i,j, #{k <= i : u(k) <= j} >= #{k <= i : w(k) <= j}.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool, SymGroupError> {
    if u.n() != w.n() {
        return Err(SymGroupError::SizeMismatch(u.n(), w.n()));
    }
    let n = u.n();
    // rank[i][j] = #{k <= i : w(k) <= j}, built by prefix sums.
    let rank = |p: &Permutation| -> Vec<Vec<u8>> {
        let mut r = vec![vec![0u8; n + 1]; n + 1];
        for i in 1..=n {
            let v = p.apply(i);
            for j in 1..=n {
                r[i][j] = r[i - 1][j] + u8::from(v <= j);
            }
        }
        r
    };
    let ru = rank(u);
    let rw = rank(w);
    for i in 1..=n {
        for j in 1..=n {
            if ru[i][j] < rw[i][j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All z with u ⪯ z ⪯ w, sorted by one-line notation.
pub fn bruhat_interval(
    u: &Permutation,
    w: &Permutation,
) -> Result<Vec<Permutation>, SymGroupError> {
    if !bruhat_leq(u, w)? {
        return Err(SymGroupError::EmptyInterval(u.to_string(), w.to_string()));
    }
    let interval = all_permutations(u.n())
        .into_iter()
        .filter(|z| bruhat_leq(u, z).unwrap() && bruhat_leq(z, w).unwrap())
        .collect();
    Ok(interval)
}

/// The transposition t with v = u∘t and length(v) = length(u) + 1, if the
/// pair is a Bruhat cover.
pub fn cover_transposition(
    u: &Permutation,
    v: &Permutation,
) -> Result<Option<Transposition>, SymGroupError> {
    if u.n() != v.n() {
        return Err(SymGroupError::SizeMismatch(u.n(), v.n()));
    }
    if v.length() != u.length() + 1 {
        return Ok(None);
    }
    let t = u.inverse().compose(v)?;
    let moved: Vec<usize> = (1..=t.n()).filter(|&k| t.apply(k) != k).collect();
    match moved.as_slice() {
        [i, j] if t.apply(*i) == *j && t.apply(*j) == *i => {
            Ok(Some(Transposition { i: *i, j: *j }))
        }
        _ => Ok(None),
    }
}

/// All reduced words of w, as sequences of simple-reflection indices,
/// in lexicographic order. Memoized descent recursion: a word for w is a
/// word for w·s_i followed by i, for each descent i.
pub fn reduced_words(w: &Permutation) -> Vec<Vec<usize>> {
    fn rec(w: &Permutation, memo: &mut HashMap<Permutation, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(words) = memo.get(w) {
            return words.clone();
        }
        let words = if w.is_identity() {
            vec![vec![]]
        } else {
            let mut words = Vec::new();
            for i in w.descents() {
                let shorter = w
                    .apply_transposition(Transposition { i, j: i + 1 })
                    .expect("descent in range");
                for mut word in rec(&shorter, memo) {
                    word.push(i);
                    words.push(word);
                }
            }
            words.sort();
            words
        };
        memo.insert(w.clone(), words.clone());
        words
    }
    rec(w, &mut HashMap::new())
}
