use aont_core::constructions::{
    cauchy, oa_rs, rs_restricted_doubly, rs_restricted_triply, strong_to_dm, vandermonde_all_nonzero,
};
use aont_core::format::{self, Object};
use aont_core::search::{exists_strong_in, SearchConfig};
use aont_core::{AontClaim, Direction, Field, Matrix, TransformArray};
use proptest::prelude::*;

fn gf(q: u64) -> Field {
    Field::from_order(q).unwrap()
}

#[test]
fn search_witnesses_pass_brute_force() {
    for (q, s) in [(3u64, 2usize), (4, 3), (5, 3), (7, 3), (7, 4), (8, 4)] {
        let r = exists_strong_in(&gf(q), s, 2, &SearchConfig::default()).unwrap();
        let w = r.witness().unwrap_or_else(|| panic!("q = {q}, s = {s} has a witness"));
        assert!(w.iter_rows().all(|row| row.iter().all(|&x| x != 0)));
        assert!(w.all_submatrices_invertible(2, None).unwrap().holds());
        assert_ne!(w.determinant().unwrap(), 0);
        let a = TransformArray::from_linear(w, Direction::Inverse).unwrap();
        assert!(a.verify_range(1, 2).unwrap().verdict(), "q = {q}, s = {s}");
    }
}

#[test]
fn triply_extended_over_gf4_by_brute_force() {
    let m = rs_restricted_triply(2).unwrap();
    let a = TransformArray::from_linear(&m, Direction::Inverse).unwrap();
    assert_eq!(a.as_array().rows(), 4096);
    assert!(a.verify_restricted(&[0, 1, 2], 3).unwrap().verdict());
    // the unit columns of H leave single outputs in R exposed
    assert!(!a.verify_restricted(&[0, 1, 2], 1).unwrap().verdict());
    assert!(!a.verify_plain(3).unwrap().verdict());
}

#[test]
fn doubly_extended_by_brute_force() {
    for (q, t) in [(3u64, 2usize), (4, 2), (5, 2), (4, 3)] {
        let m = rs_restricted_doubly(&gf(q), t).unwrap();
        let a = TransformArray::from_linear(&m, Direction::Inverse).unwrap();
        let r: Vec<usize> = (0..t).collect();
        assert!(a.verify_restricted(&r, t).unwrap().verdict(), "q = {q}, t = {t}");
    }
}

#[test]
fn constructed_objects_round_trip_through_text() {
    let objects = vec![
        Object::Matrix(vandermonde_all_nonzero(&gf(8)).unwrap()),
        Object::Matrix(rs_restricted_doubly(&gf(9), 2).unwrap()),
        Object::Array(TransformArray::new(gf(4), 2, 3, oa_rs(&gf(4), 2, 5).unwrap().entries().to_vec()).unwrap()),
        Object::Dm(strong_to_dm(&vandermonde_all_nonzero(&gf(8)).unwrap()).unwrap().dm),
    ];
    for object in objects {
        let text = object.write();
        let back = format::parse(&text).unwrap();
        assert_eq!(back, object);
        assert_eq!(back.write(), text);
    }
}

fn distinct_points(q: u32, n: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..q).collect::<Vec<_>>()).prop_shuffle().prop_map(move |v| v[..n].to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cauchy_matrices_give_strong_transforms(
        q in prop::sample::select(vec![7u64, 8, 9, 11, 13, 16]),
        s in 2usize..=3,
        seed in distinct_points(7, 6),
    ) {
        let f = gf(q);
        let r = &seed[..s];
        let c = &seed[s..2 * s];
        let m = cauchy(&f, r, c).unwrap();
        prop_assert!(m.is_super_regular());
        let claim = AontClaim::Strong { t: s };
        prop_assert!(claim.verify_matrix(&m).unwrap().verdict());
        if q <= 9 {
            let a = TransformArray::from_linear(&m, Direction::Inverse).unwrap();
            prop_assert!(a.verify_strong(s).unwrap().verdict());
        }
    }

    #[test]
    fn matrix_text_is_canonical(q in prop::sample::select(vec![2u64, 4, 7, 27]), n in 1usize..5, fill in any::<u64>()) {
        let f = gf(q);
        let data = (0..n * n).map(|k| ((fill >> (k % 60)) % u64::from(f.order())) as u32).collect();
        let m = Matrix::new(f, n, n, data).unwrap();
        let text = format::write_matrix(&m);
        prop_assert_eq!(format::write_matrix(&format::parse_matrix(&text).unwrap()), text);
    }
}
