//! Finite abstract simplicial complexes stored by their facets.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::IntPoly1;

/// A face is a sorted list of vertex indices.
pub type Face = Vec<usize>;

/// A simplicial complex given by named vertices and its maximal faces.
///
/// The complex always contains the empty face; a complex whose only facet is
/// the empty face is the "empty complex" `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    vertices: Vec<String>,
    facets: Vec<Face>,
}

/// Face counts `(f_{-1}, f_0, ..., f_{d-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }
}

/// Keeps the inclusion-maximal faces, sorted by (size desc, lexicographic).
fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort();
    faces.dedup();
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Face> = Vec::new();
    for f in faces {
        if !kept.iter().any(|g| is_subset(&f, g)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// Subset test on sorted slices.
pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.by_ref().any(|w| w == v))
}

impl Complex {
    /// Builds a complex from vertex labels and a list of facets (as vertex
    /// indices). Rejects duplicate labels, out-of-range indices, vertices not
    /// covered by any facet, and non-maximal facet lists.
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::invalid("complex", format!("duplicate vertex {v:?}")));
            }
        }
        let mut normalized: Vec<Face> = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut f = facet;
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid("complex", format!("facet {f:?} repeats a vertex")));
            }
            if let Some(&bad) = f.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::invalid("complex", format!("vertex index {bad} out of range")));
            }
            normalized.push(f);
        }
        let mut covered = vec![false; vertices.len()];
        for f in &normalized {
            for &v in f {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::invalid(
                "complex",
                format!("vertex {:?} lies in no facet", vertices[v]),
            ));
        }
        for (a, fa) in normalized.iter().enumerate() {
            for (b, fb) in normalized.iter().enumerate() {
                if a != b && is_subset(fa, fb) {
                    let label = |f: &Face| f.iter().map(|&v| vertices[v].clone()).collect::<Vec<_>>();
                    return Err(Error::invalid(
                        "complex",
                        format!("facet {:?} is contained in facet {:?}", label(fa), label(fb)),
                    ));
                }
            }
        }
        if normalized.is_empty() {
            normalized.push(Vec::new());
        }
        normalized.sort();
        Ok(Complex {
            vertices,
            facets: normalized,
        })
    }

    /// Builds a complex from labelled facets; the vertex order is `vertices`.
    pub fn from_labels(vertices: Vec<String>, facets: &[Vec<String>]) -> Result<Self> {
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut idx_facets = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut f = Vec::with_capacity(facet.len());
            for label in facet {
                match index.get(label.as_str()) {
                    Some(&i) => f.push(i),
                    None => {
                        return Err(Error::invalid(
                            "complex",
                            format!("facet mentions unknown vertex {label:?}"),
                        ))
                    }
                }
            }
            idx_facets.push(f);
        }
        Complex::new(vertices, idx_facets)
    }

    /// Builds a complex from any generating family of faces: the facets are
    /// the maximal members. Vertices not used by any face are dropped.
    pub fn from_faces<I: IntoIterator<Item = Face>>(vertices: Vec<String>, faces: I) -> Self {
        let faces: Vec<Face> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        let facets = maximal_faces(faces);
        let mut used: Vec<usize> = facets.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let mut remap = vec![usize::MAX; vertices.len()];
        for (new, &old) in used.iter().enumerate() {
            remap[old] = new;
        }
        let labels = used.iter().map(|&v| vertices[v].clone()).collect();
        let mut facets: Vec<Face> = facets
            .into_iter()
            .map(|f| f.into_iter().map(|v| remap[v]).collect())
            .collect();
        if facets.is_empty() {
            facets.push(Vec::new());
        }
        facets.sort();
        Complex {
            vertices: labels,
            facets,
        }
    }

    /// The complex `{∅}`.
    pub fn empty() -> Self {
        Complex {
            vertices: Vec::new(),
            facets: vec![Vec::new()],
        }
    }

    /// The full simplex on the given labels.
    pub fn simplex<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let vertices: Vec<String> = labels.into_iter().map(Into::into).collect();
        let facet = (0..vertices.len()).collect();
        Complex {
            vertices,
            facets: vec![facet],
        }
    }

    /// Boundary of the `n`-gon, vertices `v0 .. v{n-1}`.
    pub fn polygon(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain(format!("a polygon needs at least 3 vertices, got {n}")));
        }
        let vertices = (0..n).map(|i| format!("v{i}")).collect();
        let facets = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        Complex::new(vertices, facets)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn labels_of(&self, face: &[usize]) -> Vec<String> {
        face.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Every face, grouped by cardinality (index 0 holds the empty face).
    pub fn all_faces(&self) -> Vec<Vec<Face>> {
        let top = self.facets.iter().map(Vec::len).max().unwrap_or(0);
        let mut seen: HashSet<Face> = HashSet::new();
        for facet in &self.facets {
            let k = facet.len();
            for mask in 0u64..(1u64 << k) {
                let face: Face = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| facet[b]).collect();
                seen.insert(face);
            }
        }
        let mut grouped = vec![Vec::new(); top + 1];
        for f in seen {
            grouped[f.len()].push(f);
        }
        for g in &mut grouped {
            g.sort();
        }
        grouped
    }

    pub fn face_set(&self) -> HashSet<Face> {
        self.all_faces().into_iter().flatten().collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.all_faces().iter().map(|g| g.len() as u64).collect())
    }

    /// `Σ f_{i-1} x^i`.
    pub fn f_polynomial(&self) -> IntPoly1 {
        IntPoly1::from_coeffs(self.f_vector().0.into_iter().map(BigInt::from))
    }

    /// `max facet cardinality - 1`; the empty complex has dimension -1.
    pub fn dimension(&self) -> i64 {
        self.facets.iter().map(Vec::len).max().unwrap_or(0) as i64 - 1
    }

    pub fn is_pure(&self) -> bool {
        let first = self.facets.first().map(Vec::len);
        self.facets.iter().all(|f| Some(f.len()) == first)
    }

    /// A complex is flag when every clique of its 1-skeleton is a face.
    ///
    /// Cliques are grown one vertex at a time from faces: if every clique of
    /// size `k` is a face, a clique of size `k + 1` is a face plus one vertex
    /// adjacent to all of it, so it is enough to test those extensions.
    pub fn is_flag(&self) -> bool {
        let faces = self.face_set();
        let n = self.vertices.len();
        let mut adjacent = vec![vec![false; n]; n];
        for f in faces.iter().filter(|f| f.len() == 2) {
            adjacent[f[0]][f[1]] = true;
            adjacent[f[1]][f[0]] = true;
        }
        for face in &faces {
            let start = face.last().map_or(0, |&m| m + 1);
            for v in start..n {
                if face.iter().all(|&u| adjacent[u][v]) {
                    let mut bigger = face.clone();
                    bigger.push(v);
                    if !faces.contains(&bigger) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Is `face` (sorted indices) one of the facets?
    pub fn is_facet(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| f.as_slice() == face)
    }

    /// The subcomplex of faces all of whose vertices satisfy `keep`.
    /// Vertex labels are preserved; unused vertices are dropped.
    pub fn induced(&self, keep: impl Fn(usize) -> bool) -> Complex {
        let faces = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|&v| keep(v)).collect::<Face>());
        Complex::from_faces(self.vertices.clone(), faces)
    }

    /// The join `a ⋆ b`: facets are unions of a facet of `a` with a facet of
    /// `b`. Labels of `b` that collide with labels of `a` get `'` appended
    /// until unique.
    pub fn join(a: &Complex, b: &Complex) -> Complex {
        let (vertices, offset) = joined_labels(&a.vertices, &b.vertices);
        let mut facets = Vec::with_capacity(a.facets.len() * b.facets.len());
        for fa in &a.facets {
            for fb in &b.facets {
                let mut f = fa.clone();
                f.extend(fb.iter().map(|&v| v + offset));
                facets.push(f);
            }
        }
        facets.sort();
        Complex { vertices, facets }
    }
}

/// Concatenates label lists, renaming collisions in the second list.
pub(crate) fn joined_labels(a: &[String], b: &[String]) -> (Vec<String>, usize) {
    let mut taken: HashSet<String> = a.iter().cloned().collect();
    let mut out = a.to_vec();
    for label in b {
        let mut l = label.clone();
        while taken.contains(&l) {
            l.push('\'');
        }
        taken.insert(l.clone());
        out.push(l);
    }
    (out, a.len())
}

/// JSON shape: `{ "vertices": [..], "facets": [[..], ..] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl From<&Complex> for ComplexFile {
    fn from(c: &Complex) -> Self {
        ComplexFile {
            vertices: c.vertices.clone(),
            facets: c
                .facets
                .iter()
                .filter(|f| !f.is_empty())
                .map(|f| c.labels_of(f))
                .collect(),
        }
    }
}

impl TryFrom<ComplexFile> for Complex {
    type Error = Error;
    fn try_from(file: ComplexFile) -> Result<Self> {
        let facets: Vec<Vec<String>> = file.facets.into_iter().filter(|f| !f.is_empty()).collect();
        Complex::from_labels(file.vertices, &facets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    fn zero_sphere(a: &str, b: &str) -> Complex {
        Complex::new(vec![a.into(), b.into()], vec![vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn pentagon_faces() {
        let p = Complex::polygon(5).unwrap();
        assert_eq!(p.f_vector().0, vec![1, 5, 5]);
        assert_eq!(p.f_polynomial(), IntPoly1::from_i64s(&[1, 5, 5]));
        assert!(p.is_pure());
        assert_eq!(p.dimension(), 1);
        assert!(p.is_flag());
    }

    #[test]
    fn small_cases() {
        let point = Complex::simplex(["a"]);
        assert_eq!(point.f_vector().0, vec![1, 1]);
        let tri = Complex::simplex(["a", "b", "c"]);
        assert_eq!(tri.f_vector().0, vec![1, 3, 3, 1]);
        assert!(tri.is_pure());
        assert_eq!(tri.dimension(), 2);
        assert!(tri.is_flag());
        let empty = Complex::empty();
        assert_eq!(empty.f_polynomial(), IntPoly1::from_i64s(&[1]));
        assert_eq!(empty.dimension(), -1);
    }

    #[test]
    fn triangle_boundary_is_not_flag() {
        let t = Complex::polygon(3).unwrap();
        assert_eq!(t.f_polynomial(), IntPoly1::from_i64s(&[1, 3, 3]));
        assert!(!t.is_flag());
    }

    #[test]
    fn impure_complex() {
        let c = Complex::from_labels(
            vec!["a".into(), "b".into(), "c".into()],
            &[vec!["a".into(), "b".into()], vec!["c".into()]],
        )
        .unwrap();
        assert!(!c.is_pure());
        assert_eq!(c.dimension(), 1);
    }

    #[test]
    fn rejects_non_maximal_facets() {
        let err = Complex::new(labels(2), vec![vec![0, 1], vec![0]]).unwrap_err();
        assert!(err.to_string().contains("contained in"), "{err}");
        assert!(Complex::new(labels(2), vec![vec![0, 2]]).is_err());
        assert!(Complex::new(vec!["a".into(), "a".into()], vec![vec![0, 1]]).is_err());
        assert!(Complex::new(labels(3), vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn joins() {
        let edge = Complex::join(&Complex::simplex(["p"]), &Complex::simplex(["p"]));
        assert_eq!(edge.vertices(), &["p".to_string(), "p'".to_string()]);
        assert_eq!(edge.facets(), &[vec![0, 1]]);

        let square = Complex::join(&zero_sphere("a", "b"), &zero_sphere("c", "d"));
        assert_eq!(square.f_vector().0, vec![1, 4, 4]);
        assert!(square.is_flag());
        assert_eq!(square.facets().len(), 4);

        let p = Complex::polygon(5).unwrap();
        assert_eq!(Complex::join(&p, &Complex::empty()), p);
    }

    #[test]
    fn join_multiplies_f_polynomials_and_keeps_flagness() {
        let pieces = [
            Complex::polygon(4).unwrap(),
            Complex::polygon(5).unwrap(),
            Complex::polygon(3).unwrap(),
            zero_sphere("a", "b"),
            Complex::simplex(["q", "r"]),
        ];
        for a in &pieces {
            for b in &pieces {
                let j = Complex::join(a, b);
                assert_eq!(j.f_polynomial(), &a.f_polynomial() * &b.f_polynomial());
                let total: u64 = j.f_vector().0.iter().sum();
                assert_eq!(BigInt::from(total), j.f_polynomial().eval(&BigInt::from(1)));
                if a.is_flag() && b.is_flag() {
                    assert!(j.is_flag());
                }
            }
        }
    }

    #[test]
    fn induced_subcomplex() {
        let p = Complex::polygon(5).unwrap();
        let path = p.induced(|v| v != 4);
        assert_eq!(path.f_vector().0, vec![1, 4, 3]);
        let nothing = p.induced(|_| false);
        assert_eq!(nothing, Complex::empty());
    }

    #[test]
    fn json_round_trip() {
        let p = Complex::polygon(4).unwrap();
        let file = ComplexFile::from(&p);
        let text = serde_json::to_string(&file).unwrap();
        let back: ComplexFile = serde_json::from_str(&text).unwrap();
        assert_eq!(Complex::try_from(back).unwrap(), p);
    }
}
