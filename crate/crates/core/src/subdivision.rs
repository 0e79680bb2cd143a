//! Simplicial subdivisions `(C₊, σ)` of a simplex `2^I`, their restrictions,
//! local h- and γ-polynomials, and the sphere `Sphere(C₊)` with its
//! distinguished facet `I`.
//!
//! The carrier map σ is stored on vertices; the carrier of a face is the
//! union of the carriers of its vertices. Subsets of `I` are bitmasks.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{IntPoly1, IntPoly2};
use crate::facecomplex::{joined_labels, Complex, ComplexFile, Face};
use crate::triangles::{gamma_from_h, h_from_f, TriangleSet};

/// Largest supported index set; every operation loops over `2^|I|` subsets.
pub const MAX_INDEX_SET: usize = 24;

/// A subset of the index set `I`, as a bitmask over positions in `I`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSubset(pub u64);

impl IndexSubset {
    pub const EMPTY: IndexSubset = IndexSubset(0);

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        IndexSubset(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Self {
        IndexSubset(1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: IndexSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: IndexSubset) -> Self {
        IndexSubset(self.0 | other.0)
    }

    pub fn intersects(self, other: IndexSubset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn minus(self, other: IndexSubset) -> Self {
        IndexSubset(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = IndexSubset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(IndexSubset(cur))
        })
    }

    /// Renumbers the members of `self` that lie in `within` to consecutive
    /// positions `0, 1, ...` following the order of `within`.
    pub fn compress(self, within: IndexSubset) -> IndexSubset {
        let mut out = 0u64;
        for (pos, i) in within.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << pos;
            }
        }
        IndexSubset(out)
    }
}

/// A subdivision `(C₊, σ)` of the simplex on `index_set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    complex: Complex,
    index_set: Vec<String>,
    sigma: Vec<IndexSubset>,
}

/// `Sphere(C₊)` (or any complex) with a distinguished facet `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereWithFacet {
    complex: Complex,
    distinguished_facet: Face,
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Subdivision {
    /// Builds and validates a subdivision. Returns the structural errors of
    /// [`Subdivision::new_unchecked`] and the first failing ball check of
    /// [`Subdivision::validate`].
    pub fn new(complex: Complex, index_set: Vec<String>, sigma: Vec<IndexSubset>) -> Result<Self> {
        let s = Self::new_unchecked(complex, index_set, sigma)?;
        s.validate()?;
        Ok(s)
    }

    /// Checks only the shape of the data: label disjointness, carrier count,
    /// nonempty carriers contained in `I`.
    pub fn new_unchecked(
        complex: Complex,
        index_set: Vec<String>,
        sigma: Vec<IndexSubset>,
    ) -> Result<Self> {
        if index_set.len() > MAX_INDEX_SET {
            return Err(Error::domain(format!(
                "index sets larger than {MAX_INDEX_SET} are not supported"
            )));
        }
        let mut seen = HashSet::new();
        for l in &index_set {
            if !seen.insert(l.as_str()) {
                return Err(Error::invalid("subdivision", format!("duplicate index label {l:?}")));
            }
        }
        if let Some(v) = complex.vertices().iter().find(|v| seen.contains(v.as_str())) {
            return Err(Error::invalid(
                "subdivision",
                format!("label {v:?} is both a vertex and an index"),
            ));
        }
        if sigma.len() != complex.vertices().len() {
            return Err(Error::invalid(
                "subdivision",
                format!("{} carriers for {} vertices", sigma.len(), complex.vertices().len()),
            ));
        }
        let full = IndexSubset::full(index_set.len());
        for (v, s) in sigma.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::invalid(
                    "subdivision",
                    format!("vertex {:?} has an empty carrier", complex.vertices()[v]),
                ));
            }
            if !s.is_subset_of(full) {
                return Err(Error::invalid(
                    "subdivision",
                    format!("carrier of {:?} is not inside I", complex.vertices()[v]),
                ));
            }
        }
        Ok(Subdivision {
            complex,
            index_set,
            sigma,
        })
    }

    /// Partial ball check on every restriction: for each nonempty `J ⊆ I`,
    /// `C₊(J)` is pure of dimension `|J| - 1` with reduced Euler
    /// characteristic of a ball. Returns the list of checks that ran.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut ran = Vec::new();
        for j in self.full_set().subsets().skip(1) {
            let r = self.restrict(j)?;
            let name = self.subset_labels(j).join(",");
            let expected = j.len() as i64 - 1;
            if !r.is_pure() || r.dimension() != expected {
                return Err(Error::invalid(
                    "subdivision",
                    format!(
                        "restriction to {{{name}}} is not pure of dimension {expected} (dimension {}, pure: {})",
                        r.dimension(),
                        r.is_pure()
                    ),
                ));
            }
            let euler: i64 = r
                .f_vector()
                .counts()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
                .sum();
            if euler != 1 {
                return Err(Error::invalid(
                    "subdivision",
                    format!("restriction to {{{name}}} has Euler characteristic {euler}, expected 1"),
                ));
            }
            ran.push(format!("C+({{{name}}}): pure, dimension {expected}, Euler characteristic 1"));
        }
        Ok(ran)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn index_set(&self) -> &[String] {
        &self.index_set
    }

    pub fn rank(&self) -> usize {
        self.index_set.len()
    }

    pub fn full_set(&self) -> IndexSubset {
        IndexSubset::full(self.index_set.len())
    }

    pub fn carrier_of_vertex(&self, v: usize) -> IndexSubset {
        self.sigma[v]
    }

    /// `σ(F)`: union of vertex carriers, `σ(∅) = ∅`.
    pub fn carrier(&self, face: &[usize]) -> IndexSubset {
        face.iter()
            .fold(IndexSubset::EMPTY, |acc, &v| acc.union(self.sigma[v]))
    }

    pub fn subset_labels(&self, j: IndexSubset) -> Vec<String> {
        j.iter().map(|i| self.index_set[i].clone()).collect()
    }

    pub fn subset_from_labels(&self, labels: &[String]) -> Result<IndexSubset> {
        let mut s = IndexSubset::EMPTY;
        for l in labels {
            match self.index_set.iter().position(|x| x == l) {
                Some(i) => s = s.union(IndexSubset::singleton(i)),
                None => return Err(Error::domain(format!("{l:?} is not in the index set"))),
            }
        }
        Ok(s)
    }

    fn check_subset(&self, j: IndexSubset) -> Result<()> {
        if !j.is_subset_of(self.full_set()) {
            return Err(Error::domain(format!("{j} is not a subset of I")));
        }
        Ok(())
    }

    /// `C₊(J)`: faces whose carrier lies in `J`.
    pub fn restrict(&self, j: IndexSubset) -> Result<Complex> {
        self.check_subset(j)?;
        Ok(self.complex.induced(|v| self.sigma[v].is_subset_of(j)))
    }

    /// `C₊(J)` viewed as a subdivision of the simplex on `J`.
    pub fn restrict_subdivision(&self, j: IndexSubset) -> Result<Subdivision> {
        self.check_subset(j)?;
        let keep: Vec<usize> = (0..self.complex.vertices().len())
            .filter(|&v| self.sigma[v].is_subset_of(j))
            .collect();
        let complex = self.complex.induced(|v| self.sigma[v].is_subset_of(j));
        // `induced` keeps used vertices in their original relative order.
        let sigma = keep.iter().map(|&v| self.sigma[v].compress(j)).collect();
        Ok(Subdivision {
            complex,
            index_set: self.subset_labels(j),
            sigma,
        })
    }

    /// `h_{C₊(J)}(x)` with `d = |J|`.
    pub fn restriction_h(&self, j: IndexSubset) -> Result<IntPoly1> {
        h_from_f(&self.restrict(j)?.f_polynomial(), j.len())
    }

    /// `Σ_{J ⊆ I} (-1)^{|I-J|} h_{C₊(J)}(x)`.
    pub fn local_h(&self) -> Result<IntPoly1> {
        let full = self.full_set();
        let mut acc = IntPoly1::zero();
        for j in full.subsets() {
            let h = self.restriction_h(j)?;
            if (full.len() - j.len()).is_multiple_of(2) {
                acc = &acc + &h;
            } else {
                acc = &acc - &h;
            }
        }
        Ok(acc)
    }

    /// γ-coefficients of the local h-polynomial with `d = |I|`.
    pub fn local_gamma(&self) -> Result<IntPoly1> {
        Ok(gamma_from_h(&self.local_h()?, self.rank())?.as_poly())
    }

    /// `Σ_{K ⊆ I} γ^ℓ_{C₊(K)}(x) y^{|I-K|}`, with `γ^ℓ` of `K = ∅` equal to 1.
    pub fn gamma_from_local_sum(&self) -> Result<IntPoly2> {
        let full = self.full_set();
        let mut acc = IntPoly2::zero();
        for k in full.subsets() {
            let local = if k.is_empty() {
                IntPoly1::one()
            } else {
                self.restrict_subdivision(k)?.local_gamma()?
            };
            acc = &acc + &IntPoly2::from_x_poly(&local).shift(0, full.len() - k.len());
        }
        Ok(acc)
    }

    /// `H_{Sphere(C₊)}(x,y) = Σ_{J ⊆ I} (xy)^{|J|} h_{C₊(I-J)}(x)`.
    pub fn h_triangle_direct(&self) -> Result<IntPoly2> {
        let full = self.full_set();
        let mut acc = IntPoly2::zero();
        for j in full.subsets() {
            let h = self.restriction_h(full.minus(j))?;
            acc = &acc + &IntPoly2::from_x_poly(&h).shift(j.len(), j.len());
        }
        Ok(acc)
    }

    /// `Sphere(C₊)`: vertices of `C₊` followed by `I`; faces `F ∪ J` with
    /// `σ(F) ∩ J = ∅`. Its distinguished facet is `I`.
    pub fn sphere(&self) -> SphereWithFacet {
        let nv = self.complex.vertices().len();
        let full = self.full_set();
        let mut faces = Vec::new();
        for group in self.complex.all_faces() {
            for f in group {
                let free = full.minus(self.carrier(&f));
                let mut face = f.clone();
                face.extend(free.iter().map(|i| nv + i));
                faces.push(face);
            }
        }
        let mut labels = self.complex.vertices().to_vec();
        labels.extend(self.index_set.iter().cloned());
        let complex = Complex::from_faces(labels, faces);
        let distinguished_facet = self
            .index_set
            .iter()
            .map(|l| complex.vertex_index(l).expect("index vertices are faces of the sphere"))
            .collect();
        SphereWithFacet {
            complex,
            distinguished_facet,
        }
    }

    /// Join of subdivisions: `C₊ = a ⋆ b` over `I_a ⊔ I_b`, σ the union map.
    pub fn join(a: &Subdivision, b: &Subdivision) -> Result<Subdivision> {
        let complex = Complex::join(&a.complex, &b.complex);
        let (index_set, shift) = joined_labels(&a.index_set, &b.index_set);
        let mut sigma = a.sigma.clone();
        sigma.extend(b.sigma.iter().map(|s| IndexSubset(s.0 << shift)));
        // Vertex labels may have been renamed by the complex join; rename index
        // labels away from them too.
        let vertex_labels: HashSet<&str> = complex.vertices().iter().map(String::as_str).collect();
        let index_set = index_set
            .into_iter()
            .map(|mut l| {
                while vertex_labels.contains(l.as_str()) {
                    l.push('\'');
                }
                l
            })
            .collect();
        Subdivision::new_unchecked(complex, index_set, sigma)
    }
}

impl SphereWithFacet {
    pub fn new(complex: Complex, distinguished_facet: Face) -> Result<Self> {
        let mut facet = distinguished_facet;
        facet.sort_unstable();
        if !complex.is_facet(&facet) {
            return Err(Error::domain(format!(
                "{:?} is not a facet",
                facet.iter().map(|&v| complex.vertices().get(v).cloned().unwrap_or_default()).collect::<Vec<_>>()
            )));
        }
        Ok(SphereWithFacet {
            complex,
            distinguished_facet: facet,
        })
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn distinguished_facet(&self) -> &[usize] {
        &self.distinguished_facet
    }

    /// Dimension parameter `d` (= facet size).
    pub fn degree(&self) -> usize {
        self.distinguished_facet.len()
    }

    pub fn triangles(&self) -> Result<TriangleSet> {
        TriangleSet::from_f_triangle(self.f_triangle(), self.degree())
    }

    /// `Σ F_{i,j} x^i y^j`, counting faces with `i` vertices outside `T`
    /// and `j` in `T`.
    pub fn f_triangle(&self) -> IntPoly2 {
        let in_t: HashSet<usize> = self.distinguished_facet.iter().copied().collect();
        let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for face in self.complex.all_faces().into_iter().flatten() {
            let j = face.iter().filter(|v| in_t.contains(v)).count();
            *counts.entry((face.len() - j, j)).or_default() += 1;
        }
        IntPoly2::from_terms(counts.into_iter().map(|(k, c)| (k, BigInt::from(c))))
    }
}

/// JSON shape: `{ "complex": <Complex>, "index_set": [..], "sigma": { vertex: [..] } }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionFile {
    pub complex: ComplexFile,
    pub index_set: Vec<String>,
    pub sigma: BTreeMap<String, Vec<String>>,
}

impl From<&Subdivision> for SubdivisionFile {
    fn from(s: &Subdivision) -> Self {
        SubdivisionFile {
            complex: ComplexFile::from(&s.complex),
            index_set: s.index_set.clone(),
            sigma: s
                .complex
                .vertices()
                .iter()
                .zip(&s.sigma)
                .map(|(v, &c)| (v.clone(), s.subset_labels(c)))
                .collect(),
        }
    }
}

impl SubdivisionFile {
    /// Parses and validates; also returns the list of validation checks run.
    pub fn load(self) -> Result<(Subdivision, Vec<String>)> {
        let complex = Complex::try_from(self.complex)?;
        let mut sigma = Vec::with_capacity(complex.vertices().len());
        for v in complex.vertices() {
            let labels = self.sigma.get(v).ok_or_else(|| {
                Error::invalid("subdivision", format!("vertex {v:?} has no carrier"))
            })?;
            let mut s = IndexSubset::EMPTY;
            for l in labels {
                let i = self.index_set.iter().position(|x| x == l).ok_or_else(|| {
                    Error::invalid("subdivision", format!("carrier of {v:?} mentions unknown index {l:?}"))
                })?;
                s = s.union(IndexSubset::singleton(i));
            }
            sigma.push(s);
        }
        if let Some(extra) = self.sigma.keys().find(|k| complex.vertex_index(k).is_none()) {
            return Err(Error::invalid(
                "subdivision",
                format!("carrier given for unknown vertex {extra:?}"),
            ));
        }
        let s = Subdivision::new_unchecked(complex, self.index_set, sigma)?;
        let ran = s.validate()?;
        Ok((s, ran))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    /// The 1-simplex subdivided once: a single vertex with carrier {s1}.
    fn a1() -> Subdivision {
        Subdivision::new(
            Complex::simplex(["p"]),
            labels("s", 1),
            vec![IndexSubset(0b1)],
        )
        .unwrap()
    }

    /// Path p1 - p2 - p3 with carriers {s1}, {s1,s2}, {s2}.
    fn path3() -> Subdivision {
        let c = Complex::new(labels("p", 3), vec![vec![0, 1], vec![1, 2]]).unwrap();
        Subdivision::new(c, labels("s", 2), vec![IndexSubset(0b01), IndexSubset(0b11), IndexSubset(0b10)])
            .unwrap()
    }

    #[test]
    fn subsets_enumeration() {
        let all: Vec<u64> = IndexSubset(0b101).subsets().map(|s| s.0).collect();
        assert_eq!(all, vec![0b000, 0b001, 0b100, 0b101]);
        assert_eq!(IndexSubset::full(3).subsets().count(), 8);
        assert_eq!(IndexSubset::EMPTY.subsets().count(), 1);
        assert_eq!(IndexSubset(0b110).compress(IndexSubset(0b1110)), IndexSubset(0b011));
    }

    #[test]
    fn restriction_examples() {
        let s = path3();
        assert_eq!(s.restrict(s.full_set()).unwrap().f_vector().0, vec![1, 3, 2]);
        assert_eq!(s.restrict(IndexSubset::EMPTY).unwrap(), Complex::empty());
        let r = s.restrict(IndexSubset(0b01)).unwrap();
        assert_eq!(r.vertices(), &["p1".to_string()]);
        assert!(s.restrict(IndexSubset(0b100)).is_err());
    }

    #[test]
    fn local_vectors() {
        assert_eq!(a1().local_h().unwrap(), IntPoly1::zero());
        assert_eq!(a1().local_gamma().unwrap(), IntPoly1::zero());
        assert_eq!(path3().local_h().unwrap(), IntPoly1::from_i64s(&[0, 1]));
        assert_eq!(path3().local_gamma().unwrap(), IntPoly1::from_i64s(&[0, 1]));
    }

    #[test]
    fn sphere_of_small_cases() {
        let sph = a1().sphere();
        assert_eq!(sph.complex().f_vector().0, vec![1, 2]);
        assert_eq!(sph.degree(), 1);
        let sph = path3().sphere();
        assert_eq!(sph.complex().f_vector().0, vec![1, 5, 5]);
        assert!(sph.complex().is_flag());
        let pentagon_f = IntPoly2::from_terms(
            [((0, 0), 1), ((1, 0), 3), ((2, 0), 2), ((0, 1), 2), ((1, 1), 2), ((0, 2), 1)]
                .map(|(k, c)| (k, BigInt::from(c))),
        );
        assert_eq!(sph.f_triangle(), pentagon_f);
    }

    #[test]
    fn bare_facet_f_triangle() {
        let c = Complex::simplex(["t1"]);
        let sph = SphereWithFacet::new(c, vec![0]).unwrap();
        assert_eq!(sph.f_triangle(), IntPoly2::one() + IntPoly2::y());
        let p = Complex::polygon(4).unwrap();
        assert!(SphereWithFacet::new(p, vec![0, 2]).is_err());
    }

    #[test]
    fn local_sum_and_direct_h() {
        assert_eq!(a1().gamma_from_local_sum().unwrap(), IntPoly2::y());
        assert_eq!(
            a1().h_triangle_direct().unwrap(),
            IntPoly2::one() + IntPoly2::monomial(BigInt::from(1), 1, 1)
        );
        let expected = IntPoly2::from_terms(
            [((0, 2), 1), ((1, 0), 1)].map(|(k, c)| (k, BigInt::from(c))),
        );
        assert_eq!(path3().gamma_from_local_sum().unwrap(), expected);
    }

    #[test]
    fn join_is_multiplicative() {
        let j = Subdivision::join(&path3(), &path3()).unwrap();
        j.validate().unwrap();
        assert_eq!(j.rank(), 4);
        assert_eq!(j.local_gamma().unwrap(), IntPoly1::from_i64s(&[0, 0, 1]));
        let j = Subdivision::join(&path3(), &a1()).unwrap();
        assert_eq!(j.local_gamma().unwrap(), IntPoly1::zero());
    }

    #[test]
    fn validation_catches_bad_carriers() {
        // Path with carriers that make C+({s1}) two points (not a ball).
        let c = Complex::new(labels("p", 3), vec![vec![0, 1], vec![1, 2]]).unwrap();
        let err = Subdivision::new(
            c.clone(),
            labels("s", 2),
            vec![IndexSubset(0b01), IndexSubset(0b11), IndexSubset(0b01)],
        )
        .unwrap_err();
        assert!(err.to_string().contains("s1"), "{err}");
        assert!(Subdivision::new_unchecked(c.clone(), labels("s", 2), vec![IndexSubset(0); 3]).is_err());
        assert!(Subdivision::new_unchecked(c.clone(), labels("s", 2), vec![IndexSubset(0b100); 3]).is_err());
        assert!(Subdivision::new_unchecked(c, labels("p", 2), vec![IndexSubset(1); 3]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = path3();
        let file = SubdivisionFile::from(&s);
        let text = serde_json::to_string(&file).unwrap();
        let (back, ran) = serde_json::from_str::<SubdivisionFile>(&text).unwrap().load().unwrap();
        assert_eq!(back, s);
        assert_eq!(ran.len(), 3);
    }
}
