//! Coxeter diagrams and their decomposition into finite irreducible types.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An irreducible finite Coxeter type, after low-rank normalization.
///
/// `D_n` needs `n >= 4` and `B_n` needs `n >= 3`; smaller ranks are
/// represented by their isomorphic types (`D₃ = A₃`, `B₂ = I₂(4)`, ...).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    I2(u32),
    H3,
    H4,
    F4,
    E6,
    E7,
    E8,
}

impl CoxeterType {
    pub fn rank(self) -> usize {
        match self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) => n,
            CoxeterType::I2(_) => 2,
            CoxeterType::H3 => 3,
            CoxeterType::H4 | CoxeterType::F4 => 4,
            CoxeterType::E6 => 6,
            CoxeterType::E7 => 7,
            CoxeterType::E8 => 8,
        }
    }

    /// Resolves a family letter and rank (plus the label `m` for `I2`) to a
    /// list of irreducible types, applying the low-rank identifications
    /// `B₁ = A₁`, `B₂ = I₂(4)`, `D₂ = A₁ × A₁`, `D₃ = A₃`, `I₂(2) = A₁ × A₁`,
    /// `I₂(3) = A₂`. `C` is accepted as an alias of `B`.
    pub fn parse(family: &str, rank: usize, m: Option<u32>) -> Result<Vec<CoxeterType>> {
        use CoxeterType::*;
        let family = family.trim().to_ascii_uppercase();
        let bad = || Error::domain(format!("no finite Coxeter type {family}{rank}"));
        let types = match family.as_str() {
            "A" if rank >= 1 => vec![A(rank)],
            "B" | "C" => match rank {
                1 => vec![A(1)],
                2 => vec![I2(4)],
                r if r >= 3 => vec![B(r)],
                _ => return Err(bad()),
            },
            "D" => match rank {
                2 => vec![A(1), A(1)],
                3 => vec![A(3)],
                r if r >= 4 => vec![D(r)],
                _ => return Err(bad()),
            },
            "E" => match rank {
                6 => vec![E6],
                7 => vec![E7],
                8 => vec![E8],
                _ => return Err(bad()),
            },
            "F" if rank == 4 => vec![F4],
            "G" if rank == 2 => vec![I2(6)],
            "H" => match rank {
                2 => vec![I2(5)],
                3 => vec![H3],
                4 => vec![H4],
                _ => return Err(bad()),
            },
            "I" | "I2" => {
                let m = m.ok_or_else(|| Error::domain("type I2 needs the label m"))?;
                match m {
                    2 => vec![A(1), A(1)],
                    3 => vec![A(2)],
                    m if m >= 4 => vec![I2(m)],
                    _ => return Err(Error::domain(format!("I2({m}) is not a Coxeter type"))),
                }
            }
            _ => return Err(bad()),
        };
        Ok(types)
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
            CoxeterType::H3 => write!(f, "H3"),
            CoxeterType::H4 => write!(f, "H4"),
            CoxeterType::F4 => write!(f, "F4"),
            CoxeterType::E6 => write!(f, "E6"),
            CoxeterType::E7 => write!(f, "E7"),
            CoxeterType::E8 => write!(f, "E8"),
        }
    }
}

/// A Coxeter diagram: vertices and edges `(u, v, m)` with `m >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    vertices: Vec<String>,
    edges: Vec<(usize, usize, u32)>,
}

impl CoxeterDiagram {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize, u32)>) -> Result<Self> {
        let n = vertices.len();
        let mut seen = BTreeSet::new();
        for &(u, v, m) in &edges {
            if u >= n || v >= n {
                return Err(Error::invalid("diagram", format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::invalid("diagram", format!("loop at {:?}", vertices[u])));
            }
            if m < 3 {
                return Err(Error::invalid("diagram", format!("edge label {m} < 3")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid(
                    "diagram",
                    format!("repeated edge {:?}-{:?}", vertices[u], vertices[v]),
                ));
            }
        }
        let labels: BTreeSet<&String> = vertices.iter().collect();
        if labels.len() != n {
            return Err(Error::invalid("diagram", "duplicate vertex labels"));
        }
        let edges = edges
            .into_iter()
            .map(|(u, v, m)| (u.min(v), u.max(v), m))
            .collect();
        Ok(CoxeterDiagram { vertices, edges })
    }

    /// Disjoint union of the standard diagrams of `types`; vertex labels are
    /// `1, 2, ...` in order.
    pub fn from_types(types: &[CoxeterType]) -> Self {
        let mut edges = Vec::new();
        let mut offset = 0;
        for &t in types {
            for (u, v, m) in standard_edges(t) {
                edges.push((u + offset, v + offset, m));
            }
            offset += t.rank();
        }
        let vertices = (1..=offset).map(|i| i.to_string()).collect();
        CoxeterDiagram::new(vertices, edges).expect("standard diagrams are well formed")
    }

    /// Standard diagram of a family and rank, see [`CoxeterType::parse`].
    pub fn standard(family: &str, rank: usize, m: Option<u32>) -> Result<Self> {
        Ok(Self::from_types(&CoxeterType::parse(family, rank, m)?))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Connected components of the subdiagram induced on `keep`
    /// (a bitmask over vertices), each as a sorted vertex list, ordered by
    /// smallest vertex.
    pub fn components(&self, keep: u64) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in (0..n).filter(|&v| keep >> v & 1 == 1) {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for &(a, b, _) in &self.edges {
                    let other = if a == u {
                        b
                    } else if b == u {
                        a
                    } else {
                        continue;
                    };
                    if keep >> other & 1 == 1 && comp[other] == usize::MAX {
                        comp[other] = id;
                        stack.push(other);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Types of the connected components of the subdiagram on `keep`.
    pub fn classify_subset(&self, keep: u64) -> Result<Vec<CoxeterType>> {
        self.components(keep)
            .iter()
            .map(|c| self.classify_component(c))
            .collect()
    }

    /// Types of all connected components, ordered by smallest vertex.
    pub fn classify(&self) -> Result<Vec<CoxeterType>> {
        if self.vertices.len() > 63 {
            return Err(Error::domain("diagrams with more than 63 vertices are not supported"));
        }
        self.classify_subset((1u64 << self.vertices.len()) - 1)
    }

    fn classify_component(&self, comp: &[usize]) -> Result<CoxeterType> {
        let name = || {
            format!(
                "{{{}}}",
                comp.iter().map(|&v| self.vertices[v].as_str()).collect::<Vec<_>>().join(", ")
            )
        };
        let fail = || Error::Classification(name());
        let n = comp.len();
        if n == 1 {
            return Ok(CoxeterType::A(1));
        }
        let inside = |v: usize| comp.binary_search(&v).is_ok();
        let edges: Vec<(usize, usize, u32)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b, _)| inside(a) && inside(b))
            .collect();
        if edges.len() != n - 1 {
            return Err(fail());
        }
        let neighbours = |u: usize| -> Vec<(usize, u32)> {
            edges
                .iter()
                .filter_map(|&(a, b, m)| {
                    if a == u {
                        Some((b, m))
                    } else if b == u {
                        Some((a, m))
                    } else {
                        None
                    }
                })
                .collect()
        };
        let degrees: Vec<usize> = comp.iter().map(|&v| neighbours(v).len()).collect();
        if degrees.iter().any(|&d| d > 3) {
            return Err(fail());
        }
        let branch: Vec<usize> = comp
            .iter()
            .zip(&degrees)
            .filter(|&(_, &d)| d == 3)
            .map(|(&v, _)| v)
            .collect();
        match branch.as_slice() {
            [] => {
                // A path: walk it from one end to read labels in order.
                let end = comp
                    .iter()
                    .zip(&degrees)
                    .find(|&(_, &d)| d == 1)
                    .map(|(&v, _)| v)
                    .ok_or_else(fail)?;
                let mut labels = Vec::with_capacity(n - 1);
                let (mut prev, mut cur) = (usize::MAX, end);
                loop {
                    let next = neighbours(cur).into_iter().find(|&(w, _)| w != prev);
                    match next {
                        Some((w, m)) => {
                            labels.push(m);
                            prev = cur;
                            cur = w;
                        }
                        None => break,
                    }
                }
                classify_path(&labels).ok_or_else(fail)
            }
            [center] => {
                if edges.iter().any(|&(_, _, m)| m != 3) {
                    return Err(fail());
                }
                let mut arms: Vec<usize> = neighbours(*center)
                    .into_iter()
                    .map(|(start, _)| {
                        let (mut prev, mut cur, mut len) = (*center, start, 1);
                        while let Some((w, _)) = neighbours(cur).into_iter().find(|&(w, _)| w != prev) {
                            prev = cur;
                            cur = w;
                            len += 1;
                        }
                        len
                    })
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, c] => Ok(CoxeterType::D(c + 3)),
                    [1, 2, 2] => Ok(CoxeterType::E6),
                    [1, 2, 3] => Ok(CoxeterType::E7),
                    [1, 2, 4] => Ok(CoxeterType::E8),
                    _ => Err(fail()),
                }
            }
            _ => Err(fail()),
        }
    }
}

/// Type of a path diagram from its edge labels read end to end.
fn classify_path(labels: &[u32]) -> Option<CoxeterType> {
    let n = labels.len() + 1;
    let special: Vec<(usize, u32)> = labels
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, m)| m != 3)
        .collect();
    match special.as_slice() {
        [] => Some(CoxeterType::A(n)),
        [(_, m)] if n == 2 => Some(CoxeterType::I2(*m)),
        [(pos, m)] => {
            let at_end = *pos == 0 || *pos == n - 2;
            match (*m, n) {
                (4, _) if at_end => Some(CoxeterType::B(n)),
                (4, 4) if *pos == 1 => Some(CoxeterType::F4),
                (5, 3) if at_end => Some(CoxeterType::H3),
                (5, 4) if at_end => Some(CoxeterType::H4),
                _ => None,
            }
        }
        _ => None,
    }
}

fn standard_edges(t: CoxeterType) -> Vec<(usize, usize, u32)> {
    let path = |n: usize| -> Vec<(usize, usize, u32)> { (1..n).map(|i| (i - 1, i, 3)).collect() };
    match t {
        CoxeterType::A(n) => path(n),
        CoxeterType::B(n) => {
            let mut e = path(n);
            if let Some(last) = e.last_mut() {
                last.2 = 4;
            }
            e
        }
        CoxeterType::D(n) => {
            let mut e = path(n - 1);
            e.push((n - 3, n - 1, 3));
            e
        }
        CoxeterType::E6 | CoxeterType::E7 | CoxeterType::E8 => {
            let n = t.rank();
            let mut e = path(n - 1);
            e.push((2, n - 1, 3));
            e
        }
        CoxeterType::F4 => vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)],
        CoxeterType::H3 => vec![(0, 1, 5), (1, 2, 3)],
        CoxeterType::H4 => vec![(0, 1, 5), (1, 2, 3), (2, 3, 3)],
        CoxeterType::I2(m) => {
            if m >= 3 {
                vec![(0, 1, m)]
            } else {
                Vec::new()
            }
        }
    }
}

/// JSON shape: `{ "vertices": [..], "edges": [[u, v, m?], ..] }`, `m` defaulting to 3.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramFile {
    pub vertices: Vec<String>,
    pub edges: Vec<DiagramEdge>,
}

/// An edge `[u, v]` or `[u, v, m]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiagramEdge {
    Plain(String, String),
    Labelled(String, String, u32),
}

impl TryFrom<DiagramFile> for CoxeterDiagram {
    type Error = Error;
    fn try_from(file: DiagramFile) -> Result<Self> {
        let index = |l: &str| {
            file.vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::invalid("diagram", format!("edge mentions unknown vertex {l:?}")))
        };
        let mut edges = Vec::with_capacity(file.edges.len());
        for e in &file.edges {
            let (u, v, m) = match e {
                DiagramEdge::Plain(u, v) => (u, v, 3),
                DiagramEdge::Labelled(u, v, m) => (u, v, *m),
            };
            edges.push((index(u)?, index(v)?, m));
        }
        CoxeterDiagram::new(file.vertices.clone(), edges)
    }
}

impl From<&CoxeterDiagram> for DiagramFile {
    fn from(d: &CoxeterDiagram) -> Self {
        DiagramFile {
            vertices: d.vertices.clone(),
            edges: d
                .edges
                .iter()
                .map(|&(u, v, m)| {
                    let (u, v) = (d.vertices[u].clone(), d.vertices[v].clone());
                    if m == 3 {
                        DiagramEdge::Plain(u, v)
                    } else {
                        DiagramEdge::Labelled(u, v, m)
                    }
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoxeterType::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn classify_examples() {
        let path = CoxeterDiagram::new(labels(4), vec![(0, 1, 3), (1, 2, 3), (2, 3, 3)]).unwrap();
        assert_eq!(path.classify().unwrap(), vec![A(4)]);
        let i25 = CoxeterDiagram::new(labels(2), vec![(0, 1, 5)]).unwrap();
        assert_eq!(i25.classify().unwrap(), vec![I2(5)]);
        let e6 = CoxeterDiagram::new(
            labels(6),
            vec![(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (2, 5, 3)],
        )
        .unwrap();
        assert_eq!(e6.classify().unwrap(), vec![E6]);
    }

    #[test]
    fn standard_diagrams_round_trip() {
        let all = [
            A(1), A(5), B(3), B(7), D(4), D(7), I2(4), I2(7), H3, H4, F4, E6, E7, E8,
        ];
        for t in all {
            assert_eq!(CoxeterDiagram::from_types(&[t]).classify().unwrap(), vec![t], "{t}");
        }
        let mixed = CoxeterDiagram::from_types(&[A(2), B(3), A(1)]);
        assert_eq!(mixed.classify().unwrap(), vec![A(2), B(3), A(1)]);
    }

    #[test]
    fn low_rank_normalization() {
        assert_eq!(CoxeterType::parse("D", 3, None).unwrap(), vec![A(3)]);
        assert_eq!(CoxeterType::parse("D", 2, None).unwrap(), vec![A(1), A(1)]);
        assert_eq!(CoxeterType::parse("B", 1, None).unwrap(), vec![A(1)]);
        assert_eq!(CoxeterType::parse("C", 2, None).unwrap(), vec![I2(4)]);
        assert_eq!(CoxeterType::parse("c", 5, None).unwrap(), vec![B(5)]);
        assert_eq!(CoxeterType::parse("I2", 2, Some(3)).unwrap(), vec![A(2)]);
        let i23 = CoxeterDiagram::new(labels(2), vec![(0, 1, 3)]).unwrap();
        assert_eq!(i23.classify().unwrap(), vec![A(2)]);
        assert!(CoxeterType::parse("E", 5, None).is_err());
        assert!(CoxeterType::parse("D", 1, None).is_err());
        assert!(CoxeterType::parse("I2", 2, None).is_err());
    }

    #[test]
    fn b_label_at_either_end() {
        let d = CoxeterDiagram::new(labels(3), vec![(0, 1, 4), (1, 2, 3)]).unwrap();
        assert_eq!(d.classify().unwrap(), vec![B(3)]);
        let d = CoxeterDiagram::new(labels(4), vec![(0, 1, 3), (1, 2, 3), (2, 3, 5)]).unwrap();
        assert_eq!(d.classify().unwrap(), vec![H4]);
    }

    #[test]
    fn rejects_infinite_types() {
        let cycle = CoxeterDiagram::new(labels(3), vec![(0, 1, 3), (1, 2, 3), (0, 2, 3)]).unwrap();
        assert!(matches!(cycle.classify(), Err(Error::Classification(_))));
        let two_fours = CoxeterDiagram::new(labels(3), vec![(0, 1, 4), (1, 2, 4)]).unwrap();
        assert!(two_fours.classify().is_err());
        let e9 = CoxeterDiagram::new(
            labels(9),
            vec![(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3), (6, 7, 3), (2, 8, 3)],
        )
        .unwrap();
        let err = e9.classify().unwrap_err();
        assert!(err.to_string().contains("v0"), "{err}");
        let h5 = CoxeterDiagram::new(labels(5), vec![(0, 1, 5), (1, 2, 3), (2, 3, 3), (3, 4, 3)]).unwrap();
        assert!(h5.classify().is_err());
        assert!(CoxeterDiagram::new(labels(2), vec![(0, 1, 2)]).is_err());
    }

    #[test]
    fn json_edges_default_to_three() {
        let text = r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c", 4]]}"#;
        let file: DiagramFile = serde_json::from_str(text).unwrap();
        let d = CoxeterDiagram::try_from(file).unwrap();
        assert_eq!(d.classify().unwrap(), vec![B(3)]);
        let back = serde_json::to_string(&DiagramFile::from(&d)).unwrap();
        assert_eq!(back, r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c",4]]}"#);
    }
}
