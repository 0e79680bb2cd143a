//! Combinatorial models of the positive part `C₊` of cluster complexes in
//! type `A_n` (polygon diagonals against a snake triangulation) and in the
//! dihedral types `I₂(m)` (a path).
//!
//! Snake convention: the `(n+3)`-gon has vertices `0 .. n+2`, and the snake
//! diagonal `s_i` (`1 <= i <= n`) joins `⌈i/2⌉` and `n + 2 - ⌊i/2⌋`. The
//! snake diagonals are the negative simple roots; every other diagonal is a
//! positive root whose support is the set of snake diagonals it crosses.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::facecomplex::Complex;
use crate::subdivision::{IndexSubset, Subdivision};

/// A diagonal `(a, b)` of a convex polygon, `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal(pub usize, pub usize);

impl Diagonal {
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            Diagonal(a, b)
        } else {
            Diagonal(b, a)
        }
    }

    /// Strict interleaving on the cyclic order; shared endpoints never cross.
    pub fn crosses(self, other: Diagonal) -> bool {
        let Diagonal(a, b) = self;
        let Diagonal(c, d) = other;
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }

    pub fn label(self) -> String {
        format!("d{}-{}", self.0, self.1)
    }
}

/// All diagonals of the `size`-gon.
pub fn polygon_diagonals(size: usize) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for a in 0..size {
        for b in a + 2..size {
            if !(a == 0 && b == size - 1) {
                out.push(Diagonal(a, b));
            }
        }
    }
    out
}

/// Type `A_n` data: the snake and the positive diagonals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonModel {
    pub n: usize,
    pub snake: Vec<Diagonal>,
    pub positive: Vec<Diagonal>,
}

impl PolygonModel {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("type A model needs rank n >= 1"));
        }
        let snake: Vec<Diagonal> = (1..=n).map(|i| Diagonal::new(i.div_ceil(2), n + 2 - i / 2)).collect();
        let positive = polygon_diagonals(n + 3)
            .into_iter()
            .filter(|d| !snake.contains(d))
            .collect();
        Ok(PolygonModel { n, snake, positive })
    }

    pub fn polygon_size(&self) -> usize {
        self.n + 3
    }

    /// Snake diagonals crossed by `d`.
    pub fn support(&self, d: Diagonal) -> IndexSubset {
        let mut s = IndexSubset::EMPTY;
        for (i, &snake) in self.snake.iter().enumerate() {
            if d.crosses(snake) {
                s = s.union(IndexSubset::singleton(i));
            }
        }
        s
    }

    /// Pairwise-noncrossing subsets of the positive diagonals, by clique
    /// enumeration of the compatibility graph.
    fn noncrossing_sets(&self) -> Vec<Vec<usize>> {
        let m = self.positive.len();
        let compatible: Vec<Vec<bool>> = (0..m)
            .map(|a| (0..m).map(|b| a != b && !self.positive[a].crosses(self.positive[b])).collect())
            .collect();
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::<usize>::new()];
        while let Some(face) = frontier.pop() {
            let start = face.last().map_or(0, |&l| l + 1);
            for v in start..m {
                if face.iter().all(|&u| compatible[u][v]) {
                    let mut f = face.clone();
                    f.push(v);
                    out.push(f.clone());
                    frontier.push(f);
                }
            }
        }
        out
    }

    pub fn subdivision(&self) -> Result<Subdivision> {
        let labels: Vec<String> = self.positive.iter().map(|d| d.label()).collect();
        let complex = Complex::from_faces(labels.clone(), self.noncrossing_sets());
        // Every positive diagonal is compatible with itself, so from_faces keeps
        // all of them, in order.
        debug_assert_eq!(complex.vertices(), labels.as_slice());
        let sigma = self.positive.iter().map(|&d| self.support(d)).collect();
        let index_set = (1..=self.n).map(|i| format!("s{i}")).collect();
        Subdivision::new_unchecked(complex, index_set, sigma)
    }
}

/// `C₊` of type `A_n` with its support map.
pub fn type_a_subdivision(n: usize) -> Result<Subdivision> {
    PolygonModel::new(n)?.subdivision()
}

/// `C₊` of type `I₂(m)`: a path `p1 .. pm` with end carriers `{s1}`, `{s2}`
/// and interior carriers `{s1, s2}`.
pub fn dihedral_subdivision(m: usize) -> Result<Subdivision> {
    if m < 2 {
        return Err(Error::domain(format!("dihedral model needs m >= 2, got {m}")));
    }
    let vertices: Vec<String> = (1..=m).map(|i| format!("p{i}")).collect();
    let facets = (0..m - 1).map(|i| vec![i, i + 1]).collect();
    let complex = Complex::new(vertices, facets)?;
    let sigma = (0..m)
        .map(|i| match i {
            0 => IndexSubset(0b01),
            _ if i == m - 1 => IndexSubset(0b10),
            _ => IndexSubset(0b11),
        })
        .collect();
    Subdivision::new_unchecked(complex, vec!["s1".into(), "s2".into()], sigma)
}

/// Non-simple positive roots of `A_n` (intervals `[a, b]`, `b > a`) counted
/// by support size.
pub fn count_roots_by_support(n: usize) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for a in 1..=n {
        for b in a + 1..=n {
            *counts.entry(b - a + 1).or_insert(0) += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{IntPoly1, IntPoly2};
    use num_bigint::BigInt;

    #[test]
    fn crossing_rule() {
        assert!(Diagonal(0, 2).crosses(Diagonal(1, 3)));
        assert!(Diagonal(1, 3).crosses(Diagonal(0, 2)));
        assert!(!Diagonal(0, 2).crosses(Diagonal(2, 4)));
        assert!(!Diagonal(0, 3).crosses(Diagonal(1, 2)));
        assert!(!Diagonal(0, 2).crosses(Diagonal(0, 2)));
    }

    #[test]
    fn snake_is_a_triangulation() {
        for n in 1..=8 {
            let m = PolygonModel::new(n).unwrap();
            assert_eq!(m.snake.len(), n);
            for a in &m.snake {
                for b in &m.snake {
                    assert!(!a.crosses(*b));
                }
            }
            let total = (n + 3) * n / 2;
            assert_eq!(polygon_diagonals(n + 3).len(), total);
            assert_eq!(m.positive.len(), total - n);
            // Supports of positive diagonals are nonempty intervals.
            for &d in &m.positive {
                let s: Vec<usize> = m.support(d).iter().collect();
                assert!(!s.is_empty());
                assert_eq!(s.last().unwrap() - s[0] + 1, s.len(), "{d:?}");
            }
        }
        assert!(PolygonModel::new(0).is_err());
    }

    #[test]
    fn rank_one_and_two() {
        let a1 = type_a_subdivision(1).unwrap();
        assert_eq!(a1.complex().vertices().len(), 1);
        assert_eq!(a1.carrier_of_vertex(0), IndexSubset(1));
        assert_eq!(a1.sphere().complex().f_vector().0, vec![1, 2]);

        let a2 = type_a_subdivision(2).unwrap();
        a2.validate().unwrap();
        assert_eq!(a2.complex().f_vector().0, vec![1, 3, 2]);
        assert_eq!(a2.local_gamma().unwrap(), IntPoly1::from_i64s(&[0, 1]));
        let single = a2.restrict(IndexSubset(0b01)).unwrap();
        assert_eq!(single.f_vector().0, vec![1, 1]);
    }

    #[test]
    fn rank_three() {
        let a3 = type_a_subdivision(3).unwrap();
        a3.validate().unwrap();
        assert_eq!(a3.complex().vertices().len(), 6);
        let expected = IntPoly2::from_terms(
            [((0, 3), 1), ((1, 1), 2), ((1, 0), 1)].map(|(k, c)| (k, BigInt::from(c))),
        );
        assert_eq!(a3.gamma_from_local_sum().unwrap(), expected);
    }

    #[test]
    fn dihedral_models() {
        for m in 2..=9 {
            let s = dihedral_subdivision(m).unwrap();
            s.validate().unwrap();
            let sph = s.sphere();
            assert_eq!(sph.complex().f_vector().0, vec![1, m as u64 + 2, m as u64 + 2]);
            assert_eq!(s.local_gamma().unwrap(), IntPoly1::from_i64s(&[0, m as i64 - 2]));
        }
        assert!(dihedral_subdivision(1).is_err());
    }

    #[test]
    fn root_counts() {
        assert_eq!(count_roots_by_support(3), BTreeMap::from([(2, 2), (3, 1)]));
        assert!(count_roots_by_support(1).is_empty());
        assert_eq!(count_roots_by_support(4), BTreeMap::from([(2, 3), (3, 2), (4, 1)]));
    }
}
