//! The non-binary Johnson scheme `J_r(k, n)`: parameters, vertices, relation
//! labels and adjacency matrices.
//!
//! Vertices are the words of length `n` over `{0, ..., r-1}` with exactly `k`
//! nonzero letters. Two vertices `x`, `y` with `e` equal nonzero positions and
//! `c` common nonzero positions are in relation `(c - e, k - c)`.

mod adjacency;
mod recurrence;

pub use adjacency::{
    adjacency_recurrence_check, build_adjacency, intersection_numbers, verify_axioms,
    AdjacencyFamily,
};
pub use recurrence::{a01_expansion, a10_expansion, Expansion};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of vertices a scheme may have.
pub const DEFAULT_MAX_VERTICES: usize = 5000;

/// Parameters `(r, k, n)` of `J_r(k, n)`: alphabet size, weight and length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchemeParams {
    pub r: i64,
    pub k: i64,
    pub n: i64,
}

impl SchemeParams {
    pub fn new(r: i64, k: i64, n: i64) -> Result<Self> {
        if r < 3 {
            return Err(Error::Usage(format!("r ≥ 3 required, got r={r}")));
        }
        if k < 0 || n < 0 || k > n {
            return Err(Error::Usage(format!(
                "0 <= k <= n required, got k={k}, n={n}"
            )));
        }
        Ok(SchemeParams { r, k, n })
    }

    /// `C(n, k) (r-1)^k`, or `None` on overflow.
    pub fn vertex_count(&self) -> Option<u128> {
        let mut binom: u128 = 1;
        for t in 0..self.k as u128 {
            binom = binom.checked_mul(self.n as u128 - t)? / (t + 1);
        }
        let base = (self.r - 1) as u128;
        (0..self.k).try_fold(binom, |acc, _| acc.checked_mul(base))
    }

    /// `n >= 2k - 1`, the range where the dual structure is polynomial.
    pub fn q_polynomial_range(&self) -> bool {
        self.n >= 2 * self.k - 1
    }

    /// Upper bound on the second label: `min(k, n - k)`.
    pub fn j_max(&self) -> i64 {
        self.k.min(self.n - self.k)
    }
}

impl fmt::Display for SchemeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J_{}({},{})", self.r, self.k, self.n)
    }
}

/// A pair of labels `(i, j)`, used both for relations and for idempotents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BiIndex {
    pub i: i64,
    pub j: i64,
}

pub const fn bi(i: i64, j: i64) -> BiIndex {
    BiIndex { i, j }
}

impl BiIndex {
    pub fn shift(self, di: i64, dj: i64) -> BiIndex {
        bi(self.i + di, self.j + dj)
    }
}

impl fmt::Display for BiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// The label set `{(a, b) : a + b <= k, b <= min(k, n - k)}`, shared by
/// relations and idempotents. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    params: SchemeParams,
    labels: Vec<BiIndex>,
    position: HashMap<BiIndex, usize>,
}

impl Domain {
    pub fn new(params: SchemeParams) -> Self {
        let mut labels = Vec::new();
        for i in 0..=params.k {
            for j in 0..=params.j_max() {
                if i + j <= params.k {
                    labels.push(bi(i, j));
                }
            }
        }
        let position = labels.iter().enumerate().map(|(p, &l)| (l, p)).collect();
        Domain {
            params,
            labels,
            position,
        }
    }

    pub fn params(&self) -> SchemeParams {
        self.params
    }

    pub fn contains(&self, label: BiIndex) -> bool {
        self.position.contains_key(&label)
    }

    pub fn index_of(&self, label: BiIndex) -> Option<usize> {
        self.position.get(&label).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[BiIndex] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = BiIndex> + '_ {
        self.labels.iter().copied()
    }
}

/// A weight-`k` word over `{0, ..., r-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub Vec<u8>);

impl Vertex {
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// All vertices of `J_r(k, n)` in lexicographic order.
///
/// Fails with [`Error::Resource`] when there are more than `max_vertices`.
pub fn enumerate_vertices(params: SchemeParams, max_vertices: usize) -> Result<Vec<Vertex>> {
    let count = params.vertex_count();
    match count {
        Some(c) if c <= max_vertices as u128 => {}
        _ => {
            return Err(Error::Resource {
                what: format!("{params} vertex set"),
                required: count.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string()),
                limit: max_vertices,
            })
        }
    }
    let mut out = Vec::with_capacity(count.unwrap_or(0) as usize);
    let mut word = vec![0u8; params.n as usize];
    fill(&params, &mut word, 0, params.k, &mut out);
    Ok(out)
}

fn fill(
    params: &SchemeParams,
    word: &mut Vec<u8>,
    pos: usize,
    remaining: i64,
    out: &mut Vec<Vertex>,
) {
    let len = word.len();
    if pos == len {
        if remaining == 0 {
            out.push(Vertex(word.clone()));
        }
        return;
    }
    let slots_left = (len - pos) as i64;
    // letter 0 is only possible while the remaining positions can still carry the weight
    if slots_left > remaining {
        word[pos] = 0;
        fill(params, word, pos + 1, remaining, out);
    }
    if remaining > 0 {
        for letter in 1..params.r as u8 {
            word[pos] = letter;
            fill(params, word, pos + 1, remaining - 1, out);
        }
    }
    word[pos] = 0;
}

/// `(e, c)`: the number of equal nonzero positions and of common nonzero
/// positions.
pub fn pair_statistics(x: &Vertex, y: &Vertex) -> (i64, i64) {
    x.0.iter().zip(&y.0).fold((0, 0), |(e, c), (&a, &b)| {
        if a != 0 && b != 0 {
            (e + i64::from(a == b), c + 1)
        } else {
            (e, c)
        }
    })
}

/// The relation label `(c - e, k - c)` of a vertex pair.
pub fn classify_pair(params: SchemeParams, x: &Vertex, y: &Vertex) -> Result<BiIndex> {
    let (e, c) = pair_statistics(x, y);
    let label = bi(c - e, params.k - c);
    let in_domain =
        label.i >= 0 && label.j >= 0 && label.i + label.j <= params.k && label.j <= params.j_max();
    if !in_domain {
        return Err(Error::Internal(format!(
            "pair ({x}, {y}) classified as {label}, outside the label domain of {params}"
        )));
    }
    Ok(label)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(word: &[u8]) -> Vertex {
        Vertex(word.to_vec())
    }

    /// Brute force over all r^n words.
    fn brute_force_vertices(params: SchemeParams) -> Vec<Vertex> {
        let mut out = Vec::new();
        let total = (params.r as usize).pow(params.n as u32);
        for code in 0..total {
            let mut word = vec![0u8; params.n as usize];
            let mut c = code;
            for pos in (0..params.n as usize).rev() {
                word[pos] = (c % params.r as usize) as u8;
                c /= params.r as usize;
            }
            let w = Vertex(word);
            if w.weight() == params.k as usize {
                out.push(w);
            }
        }
        out
    }

    #[test]
    fn params_validation() {
        assert!(matches!(SchemeParams::new(2, 2, 4), Err(Error::Usage(_))));
        assert!(SchemeParams::new(3, 5, 4).is_err());
        assert!(SchemeParams::new(3, 0, 0).is_ok());
    }

    #[test]
    fn vertex_counts() {
        let p = SchemeParams::new(3, 2, 3).unwrap();
        assert_eq!(enumerate_vertices(p, 5000).unwrap().len(), 12);
        let p = SchemeParams::new(3, 3, 6).unwrap();
        assert_eq!(enumerate_vertices(p, 5000).unwrap().len(), 160);
        let p = SchemeParams::new(4, 0, 3).unwrap();
        assert_eq!(enumerate_vertices(p, 5000).unwrap(), vec![v(&[0, 0, 0])]);
    }

    #[test]
    fn enumeration_matches_brute_force_in_order() {
        for (r, k, n) in [(3, 2, 4), (4, 2, 3), (3, 3, 5), (5, 1, 3), (3, 4, 4)] {
            let p = SchemeParams::new(r, k, n).unwrap();
            let fast = enumerate_vertices(p, 5000).unwrap();
            assert_eq!(fast, brute_force_vertices(p), "{p}");
            assert_eq!(fast.len() as u128, p.vertex_count().unwrap());
        }
    }

    #[test]
    fn size_guard() {
        let p = SchemeParams::new(3, 3, 6).unwrap();
        assert!(matches!(
            enumerate_vertices(p, 100),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn pair_statistics_examples() {
        assert_eq!(pair_statistics(&v(&[1, 2, 0]), &v(&[1, 2, 0])), (2, 2));
        assert_eq!(pair_statistics(&v(&[1, 2, 0]), &v(&[1, 0, 2])), (1, 1));
        assert_eq!(pair_statistics(&v(&[1, 2, 0]), &v(&[2, 1, 0])), (0, 2));
    }

    #[test]
    fn classify_examples() {
        let p = SchemeParams::new(3, 2, 3).unwrap();
        assert_eq!(
            classify_pair(p, &v(&[1, 2, 0]), &v(&[1, 2, 0])).unwrap(),
            bi(0, 0)
        );
        assert_eq!(
            classify_pair(p, &v(&[1, 2, 0]), &v(&[1, 0, 2])).unwrap(),
            bi(0, 1)
        );
        assert_eq!(
            classify_pair(p, &v(&[1, 2, 0]), &v(&[2, 1, 0])).unwrap(),
            bi(2, 0)
        );
    }

    #[test]
    fn classification_is_symmetric_and_lands_in_domain() {
        for (r, k, n) in [
            (3, 2, 3),
            (3, 2, 4),
            (3, 3, 4),
            (4, 2, 5),
            (3, 4, 4),
            (3, 1, 5),
        ] {
            let p = SchemeParams::new(r, k, n).unwrap();
            let domain = Domain::new(p);
            let verts = enumerate_vertices(p, 5000).unwrap();
            for x in &verts {
                for y in &verts {
                    let l = classify_pair(p, x, y).unwrap();
                    assert!(domain.contains(l));
                    assert_eq!(l, classify_pair(p, y, x).unwrap());
                    let (e, c) = pair_statistics(x, y);
                    assert!(0 <= e && e <= c && c <= k && k - c <= n - k);
                }
            }
        }
    }

    #[test]
    fn domain_shapes() {
        let d = Domain::new(SchemeParams::new(3, 2, 3).unwrap());
        assert_eq!(
            d.labels(),
            &[bi(0, 0), bi(0, 1), bi(1, 0), bi(1, 1), bi(2, 0)]
        );
        // truncated triangle when n - k < k
        let d = Domain::new(SchemeParams::new(3, 3, 4).unwrap());
        assert!(d.contains(bi(2, 1)) && !d.contains(bi(0, 2)));
        let d = Domain::new(SchemeParams::new(3, 2, 2).unwrap());
        assert_eq!(d.labels(), &[bi(0, 0), bi(1, 0), bi(2, 0)]);
    }
}
