use gammatri::clustermodels::{dihedral_subdivision, type_a_subdivision};
use gammatri::coxgamma::{
    family_recursion, gamma_triangle_closed, gamma_triangle_diagram, ClosedFamily, DiagramFile, Family,
};
use gammatri::subdivision::SubdivisionFile;
use gammatri::{BigInt, CoxeterDiagram, CoxeterType, IntPoly2};

/// Sets of pairwise noncrossing diagonals of a convex `p`-gon, counted by
/// size, by checking every subset of diagonals.
fn noncrossing_counts(p: usize) -> Vec<u64> {
    let diagonals: Vec<(usize, usize)> = (0..p)
        .flat_map(|a| (a + 2..p).map(move |b| (a, b)))
        .filter(|&(a, b)| !(a == 0 && b == p - 1))
        .collect();
    let crosses = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    };
    let k = diagonals.len();
    let mut counts = vec![0u64; p - 2];
    for mask in 0u32..(1 << k) {
        let chosen: Vec<_> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| diagonals[i]).collect();
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(i, &x)| chosen[i + 1..].iter().all(|&y| !crosses(x, y)));
        if ok {
            counts[chosen.len()] += 1;
        }
    }
    counts
}

#[test]
fn type_a_sphere_matches_polygon_dissections() {
    for n in 1..=4 {
        let sphere = type_a_subdivision(n).unwrap().sphere();
        let f = sphere.complex().f_vector();
        let expected = noncrossing_counts(n + 3);
        assert_eq!(f.counts(), &expected[..], "A{n}");
    }
}

#[test]
fn catalan_facet_counts() {
    let catalan = [1u64, 1, 2, 5, 14, 42, 132];
    for n in 1..=5 {
        let f = type_a_subdivision(n).unwrap().sphere().complex().f_vector();
        assert_eq!(*f.counts().last().unwrap(), catalan[n + 1], "A{n}");
    }
}

#[test]
fn dihedral_sphere_is_polygon() {
    for m in 2..=9 {
        let f = dihedral_subdivision(m).unwrap().sphere().complex().f_vector();
        let v = (m + 2) as u64;
        assert_eq!(f.counts(), &[1, v, v]);
    }
}

#[test]
fn family_values() {
    let p = |terms: &[((usize, usize), i64)]| IntPoly2::from_terms(terms.iter().map(|&(k, c)| (k, BigInt::from(c))));
    assert_eq!(family_recursion(Family::Pell, 2), p(&[((0, 1), 1)]));
    assert_eq!(family_recursion(Family::Pell, 3), p(&[((0, 2), 1), ((1, 0), 1)]));
    let base = p(&[((0, 2), 1), ((1, 0), 2)]);
    let expected = &(&base * &base) + &p(&[((1, 1), 1), ((2, 0), -1)]);
    assert_eq!(family_recursion(Family::Lucas, 3), expected);
}

#[test]
fn diagram_json_round_trip() {
    let text = r#"{"vertices": ["a", "b", "c", "d"], "edges": [["a", "b"], ["b", "c"], ["c", "d", 4]]}"#;
    let file: DiagramFile = serde_json::from_str(text).unwrap();
    let dgm = CoxeterDiagram::try_from(file).unwrap();
    assert_eq!(dgm.classify().unwrap(), vec![CoxeterType::B(4)]);
    let g = gamma_triangle_diagram(&dgm).unwrap();
    assert_eq!(g, gamma_triangle_closed(ClosedFamily::B, 4).unwrap());

    let again: DiagramFile = serde_json::from_str(&serde_json::to_string(&DiagramFile::from(&dgm)).unwrap()).unwrap();
    assert_eq!(CoxeterDiagram::try_from(again).unwrap().classify().unwrap(), vec![CoxeterType::B(4)]);
}

#[test]
fn affine_diagram_is_rejected() {
    let text = r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"], ["c", "a"]]}"#;
    let file: DiagramFile = serde_json::from_str(text).unwrap();
    let dgm = CoxeterDiagram::try_from(file).unwrap();
    assert!(dgm.classify().is_err());
}

#[test]
fn subdivision_file_round_trip() {
    let sub = type_a_subdivision(3).unwrap();
    let text = serde_json::to_string(&SubdivisionFile::from(&sub)).unwrap();
    let file: SubdivisionFile = serde_json::from_str(&text).unwrap();
    let (loaded, _) = file.load().unwrap();
    assert_eq!(
        loaded.sphere().triangles().unwrap().gamma.unwrap(),
        sub.sphere().triangles().unwrap().gamma.unwrap()
    );
}
