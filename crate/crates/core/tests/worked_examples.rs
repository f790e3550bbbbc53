mod common;

use common::*;
use pfss::analysis::{all_orbits, find_initial_condition, fixed_point_analysis, orbit_length, Classification};
use pfss::field::{FieldCtx, FieldElement};
use pfss::floquet::{
    floquet, floquet_from_witness, floquet_transform, matrix_nth_root, van_dooren_condition, RootOptions, RootResult,
};
use pfss::lfss::{cycle_set, exhaustive_cycle_set, CycleSet};
use pfss::pfss::{PeriodHistogram, DEFAULT_STATE_CAP};
use pfss::FFMatrix;

const CAP: u128 = DEFAULT_STATE_CAP;

fn fib_witness() -> (FFMatrix, FFMatrix, FFMatrix) {
    let k = gf64();
    let a = codes(&k, &[vec![1, 20, 45], vec![0, 56, 20], vec![0, 20, 44]]);
    let p1 = codes(&k, &[vec![21, 44, 1], vec![56, 20, 0], vec![20, 44, 0]]);
    let p2 = codes(&k, &[vec![37, 1, 25], vec![60, 0, 36], vec![36, 0, 24]]);
    (a, p1, p2)
}

#[test]
fn fibonacci_monodromy_and_subspace() {
    let sys = system("fibonacci.json");
    let f2 = sys.ctx().clone();
    assert_eq!(
        sys.monodromy(),
        ints(&f2, &[vec![1, 1, 1], vec![0, 1, 1], vec![0, 1, 0]])
    );
    assert_eq!(sys.subspace_a(), vec![vec_of(&[1, 0, 0])]);
    assert_eq!(system("fibonacci_pfsr.json"), sys);
}

#[test]
fn fibonacci_root_needs_degree_six() {
    let sys = system("fibonacci.json");
    let (rr, fd) = floquet(&sys, &RootOptions::default()).unwrap();
    let root = rr.root().expect("root exists");
    assert_eq!(root.ctx().degree(), 6);
    assert_eq!(root.pow(3).unwrap(), sys.monodromy().embed(root.ctx()).unwrap());
    assert!(fd.is_some());
}

#[test]
fn fibonacci_displayed_transform_verifies() {
    let sys = system("fibonacci.json");
    let (a, p1, p2) = fib_witness();
    let k = a.ctx().clone();
    let ext = sys.extend(&k).unwrap();
    assert_eq!(a.pow(3).unwrap(), ext.monodromy());
    let fd = floquet_transform(&sys, &a).unwrap();
    assert_eq!(fd.p[1], p1);
    assert_eq!(fd.p[2], p2);
    let p = [FFMatrix::identity(&k, 3), p1, p2];
    for kk in 0..3 {
        let lhs = p[(kk + 1) % 3]
            .mul(&ext.matrices()[kk])
            .unwrap()
            .mul(&p[kk].invert().unwrap())
            .unwrap();
        assert_eq!(lhs, a);
    }
}

#[test]
fn fibonacci_periods() {
    let sys = system("fibonacci.json");
    let (_, fd) = floquet(&sys, &RootOptions::default()).unwrap();
    let fd = fd.unwrap();
    let o = all_orbits(&sys, Some(&fd), CAP).unwrap();
    assert_eq!(o.histogram, PeriodHistogram::from_pairs(&[(1, 1), (3, 1), (9, 6)]));
    assert!(o.formula.is_none());
    for x in [[0, 0, 1], [1, 1, 0], [0, 1, 1], [0, 1, 0], [1, 1, 1], [1, 0, 1]] {
        assert_eq!(sys.orbit_period(&vec_of(&x), 100).unwrap(), 9);
        let ol = orbit_length(&sys, &vec_of(&x), &fd).unwrap();
        assert_eq!((ol.length, ol.classification), (9, Classification::Exact));
    }
    assert_eq!(sys.orbit_period(&vec_of(&[1, 0, 0]), 100).unwrap(), 3);
    let ol = orbit_length(&sys, &vec_of(&[1, 0, 0]), &fd).unwrap();
    assert_eq!(
        (ol.length, ol.lfss_period, ol.classification),
        (3, 1, Classification::ResolvedByOracle)
    );
    let zero = orbit_length(&sys, &vec_of(&[0, 0, 0]), &fd).unwrap();
    assert_eq!(zero.length, 1);
    // over GF(64) the equivalent LFSS only has orbit lengths 1 and 9; the
    // system periods 1, 3, 9 are the divisors of lcm(T, N)
    let cs = cycle_set(&fd.a_tilde).unwrap();
    assert_eq!(cs, exhaustive_cycle_set(&fd.a_tilde, CAP).unwrap());
    assert_eq!(cs.lengths(), vec![1, 9]);
}

#[test]
fn fibonacci_initial_condition_and_fixed_points() {
    let sys = system("fibonacci.json");
    let (_, fd) = floquet(&sys, &RootOptions::default()).unwrap();
    let fd = fd.unwrap();
    let x = find_initial_condition(&sys, &fd, 9, CAP).unwrap().unwrap();
    assert_eq!(sys.orbit_period(&x, 100).unwrap(), 9);
    assert_eq!(sys.orbit_period(&vec_of(&[0, 0, 1]), 100).unwrap(), 9);
    assert_eq!(
        find_initial_condition(&sys, &fd, 1, CAP).unwrap(),
        Some(vec_of(&[0, 0, 0]))
    );
    let fp = fixed_point_analysis(&sys, &fd, CAP).unwrap();
    assert_eq!(fp.pfss_fixed_dim, 0);
    assert!(fp.passed());
    assert_eq!(fd.a_tilde.mul_vec(&vec_of(&[1, 0, 0])), vec_of(&[1, 0, 0]));
}

#[test]
fn galois_over_f5() {
    let sys = system("galois.json");
    assert_eq!(system("galois_pfsr.json"), sys);
    let f5 = sys.ctx().clone();
    assert_eq!(
        sys.monodromy(),
        ints(&f5, &[vec![2, 0, 2], vec![2, 0, 4], vec![0, 1, 1]])
    );
    // the matrices differ only in their first column, so A is every state
    // with a zero first coordinate, not just span{[0,0,1]}
    assert_eq!(sys.subspace_a(), vec![vec_of(&[0, 1, 0]), vec_of(&[0, 0, 1])]);
    let test = sys.subspace_test();
    assert!(test.contains(&vec_of(&[0, 0, 1])));
    assert!(test.contains(&vec_of(&[0, 1, 0])));
    let (rr, fd) = floquet(&sys, &RootOptions::default()).unwrap();
    assert_eq!(rr.root().unwrap().ctx(), &f5);
    // the displayed root cubes to the Jordan form of the monodromy, so it
    // needs P(0) = S with S Φ S^-1 = Ã^3 instead of the identity
    let witness = ints(&f5, &[vec![1, 2, 1], vec![0, 1, 2], vec![0, 0, 1]]);
    assert_eq!(
        witness.pow(3).unwrap(),
        ints(&f5, &[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]])
    );
    assert_ne!(witness.pow(3).unwrap(), sys.monodromy());
    assert_eq!(floquet_transform(&sys, &witness), Err(pfss::Error::RootMismatch));
    let wfd = floquet_from_witness(&sys, &witness, 0).unwrap();
    assert!(!wfd.p[0].is_identity());
    for x in [[1, 0, 0], [0, 0, 1], [3, 4, 2]] {
        assert_eq!(orbit_length(&sys, &vec_of(&x), &wfd).unwrap().length, 15);
    }
    let o = all_orbits(&sys, fd.as_ref(), CAP).unwrap();
    // the multiples of [3,0,1] are fixed by the monodromy and have period 3;
    // every other nonzero state has period 15
    assert_eq!(o.histogram, PeriodHistogram::from_pairs(&[(1, 1), (3, 4), (15, 120)]));
    let fd = fd.unwrap();
    let ol = orbit_length(&sys, &vec_of(&[1, 0, 0]), &fd).unwrap();
    assert_eq!((ol.length, ol.classification), (15, Classification::Exact));
    let in_a = orbit_length(&sys, &vec_of(&[0, 0, 1]), &fd).unwrap();
    assert_eq!(
        (in_a.length, in_a.classification),
        (15, Classification::ResolvedByOracle)
    );
    let short = orbit_length(&sys, &vec_of(&[3, 0, 1]), &fd).unwrap();
    assert_eq!(
        (short.length, short.lfss_period, short.classification),
        (3, 1, Classification::Exact)
    );
    let fp = fixed_point_analysis(&sys, &fd, CAP).unwrap();
    assert_eq!(fp.pfss_fixed_dim, 0);
    assert!(fp.passed());
}

#[test]
fn counterexample_has_no_square_root() {
    let sys = system("no_root.json");
    assert!(van_dooren_condition(&sys));
    let phi = sys.monodromy();
    assert_eq!(phi, ints(sys.ctx(), &[vec![1, 1], vec![0, 1]]));
    match matrix_nth_root(&phi, 2, &RootOptions::default()).unwrap() {
        RootResult::NoRoot { certificate } => assert!(certificate.verify(&phi).unwrap()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn period_two_with_transform() {
    let sys = system("period2_root.json");
    let f2 = sys.ctx().clone();
    assert_eq!(sys.monodromy(), ints(&f2, &[vec![0, 1], vec![1, 1]]));
    assert!(sys.subspace_a().is_empty());
    let witness = ints(&f2, &[vec![1, 1], vec![1, 0]]);
    let fd = floquet_transform(&sys, &witness).unwrap();
    assert_eq!(fd.p[1], ints(&f2, &[vec![1, 0], vec![1, 1]]));
    let o = all_orbits(&sys, Some(&fd), CAP).unwrap();
    assert_eq!(o.histogram, PeriodHistogram::from_pairs(&[(1, 1), (6, 3)]));
    assert_eq!(o.closed_orbits, CycleSet::from_pairs(&[(1, 1), (6, 1)]));
    let f = o.formula.unwrap();
    assert_eq!(f.closed_orbits, CycleSet::from_pairs(&[(1, 1), (6, 1)]));
    assert_eq!(f.cross_check, Some(true));
    let per_ic = CycleSet::from_pairs(&o.histogram.iter().collect::<Vec<_>>());
    assert_eq!(per_ic.render(), "1[1] + 3[6]");
    let x = find_initial_condition(&sys, &fd, 6, CAP).unwrap().unwrap();
    assert_eq!(sys.orbit_period(&x, 100).unwrap(), 6);
    assert_eq!(find_initial_condition(&sys, &fd, 3, CAP).unwrap(), None);
}

#[test]
fn period_two_without_transform() {
    let sys = system("period2_no_root.json");
    let phi = sys.monodromy();
    assert!(matches!(
        matrix_nth_root(&phi, 2, &RootOptions::default()).unwrap(),
        RootResult::NoRoot { .. }
    ));
    assert_eq!(sys.subspace_a(), vec![vec_of(&[1, 0])]);
    assert_eq!(sys.orbit_period(&vec_of(&[1, 0]), 100).unwrap(), 2);
    assert_eq!(sys.orbit_period(&vec_of(&[0, 1]), 100).unwrap(), 4);
    assert_eq!(sys.orbit_period(&vec_of(&[1, 1]), 100).unwrap(), 4);
    assert!(sys.check_coprime_theorem(CAP).unwrap().passed());
}

#[test]
fn identity_system() {
    let sys = system("identity.json");
    let o = all_orbits(&sys, None, CAP).unwrap();
    assert_eq!(o.histogram, PeriodHistogram::from_pairs(&[(1, 9)]));
    assert_eq!(o.closed_orbits, CycleSet::from_pairs(&[(1, 9)]));
    let m = match load("identity_matrix.json") {
        pfss::io::Input::Matrix(m) => m,
        other => panic!("{other:?}"),
    };
    let rr = matrix_nth_root(&m, 5, &RootOptions::default()).unwrap();
    assert!(rr.root().unwrap().is_identity());
    let _ = (FieldCtx::prime(2), FieldElement::ONE);
}
