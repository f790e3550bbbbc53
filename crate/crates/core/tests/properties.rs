mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pfss::analysis::{all_orbits, find_initial_condition, orbit_length, Classification};
use pfss::canonical::{charpoly, eval_poly_at_matrix};
use pfss::factor::{poly_factor, random_monic};
use pfss::field::{FieldCtx, FieldElement};
use pfss::floquet::{floquet, RootOptions};
use pfss::fsr::{build_pfss, joint_simulation, FsrKind, MasterLfsr, PfsrSpec, Slot};
use pfss::lfss::{cycle_set, exhaustive_cycle_set, vector_orbit_length_by_iteration};
use pfss::ntheory::lcm;
use pfss::poly::Poly;
use pfss::roots::{element_nth_root, ExtensionOptions};
use pfss::{FFMatrix, Pfss};

const CAP: u128 = 1 << 16;

fn small_field(i: usize) -> FieldCtx {
    match i % 5 {
        0 => FieldCtx::prime(2).unwrap(),
        1 => FieldCtx::prime(3).unwrap(),
        2 => FieldCtx::prime(5).unwrap(),
        3 => {
            let f2 = FieldCtx::prime(2).unwrap();
            f2.extend(&Poly::from_ints(&f2, &[1, 1, 1])).unwrap()
        }
        _ => common::gf64(),
    }
}

fn random_matrix(ctx: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> FFMatrix {
    let data = (0..n * n).map(|_| ctx.random(rng)).collect();
    FFMatrix::new(ctx, n, n, data).unwrap()
}

fn random_nonsingular(ctx: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> FFMatrix {
    loop {
        let m = random_matrix(ctx, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_system(ctx: &FieldCtx, n: usize, period: usize, rng: &mut ChaCha8Rng) -> Pfss {
    Pfss::new((0..period).map(|_| random_nonsingular(ctx, n, rng)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in 0usize..5, seed: u64) {
        let ctx = small_field(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (ctx.random(&mut rng), ctx.random(&mut rng), ctx.random(&mut rng));
        prop_assert_eq!(ctx.add(a, b), ctx.add(b, a));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.mul(a, ctx.mul(b, c)), ctx.mul(ctx.mul(a, b), c));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.add(a, ctx.neg(a)), FieldElement::ZERO);
        prop_assert_eq!(ctx.sub(ctx.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), FieldElement::ONE);
            prop_assert_eq!(ctx.pow(a, ctx.size() as u128 - 1), FieldElement::ONE);
        }
        prop_assert_eq!(ctx.frobenius_inverse(ctx.frobenius(a)), a);
    }

    #[test]
    fn embedding_preserves_arithmetic(seed: u64) {
        let big = common::gf64();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for depth in 0..big.depth() {
            let small = big.truncate(depth);
            let (a, b) = (small.random(&mut rng), small.random(&mut rng));
            prop_assert!(big.contains(a) && big.contains(b));
            prop_assert_eq!(big.add(a, b), small.add(a, b));
            prop_assert_eq!(big.mul(a, b), small.mul(a, b));
            if !b.is_zero() {
                prop_assert_eq!(big.inv(b).unwrap(), small.inv(b).unwrap());
            }
        }
    }

    #[test]
    fn cayley_hamilton(f in 0usize..5, n in 1usize..=4, seed: u64) {
        let ctx = small_field(f);
        let m = random_matrix(&ctx, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let cp = charpoly(&m).unwrap();
        prop_assert_eq!(cp.degree(), Some(n));
        prop_assert!(cp.is_monic());
        prop_assert!(eval_poly_at_matrix(&cp, &m).unwrap().is_zero());
    }

    #[test]
    fn factorization_expands_back(f in 0usize..5, deg in 1usize..=8, seed: u64) {
        let ctx = small_field(f);
        let g = random_monic(&ctx, deg, &mut ChaCha8Rng::seed_from_u64(seed));
        let fac = poly_factor(&ctx, &g).unwrap();
        prop_assert_eq!(fac.expand(&ctx), g);
        for (h, _) in &fac.factors {
            prop_assert!(h.is_monic());
            prop_assert!(pfss::factor::is_irreducible(&ctx, h));
        }
    }

    #[test]
    fn nth_root_powers_back(f in 0usize..4, n in 1u64..=12, seed: u64) {
        let ctx = small_field(f);
        let a = ctx.random_nonzero(&mut ChaCha8Rng::seed_from_u64(seed));
        let (r, ext) = element_nth_root(&ctx, a, n, &ExtensionOptions::default()).unwrap();
        prop_assert!(ctx.is_subfield_of(&ext));
        prop_assert_eq!(ext.pow(r, n as u128), a);
    }

    #[test]
    fn cycle_set_matches_enumeration(f in 0usize..4, n in 1usize..=3, seed: u64) {
        let ctx = small_field(f);
        let m = random_nonsingular(&ctx, n, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(cycle_set(&m).unwrap(), exhaustive_cycle_set(&m, CAP).unwrap());
    }

    #[test]
    fn period_meets_monodromy_orbit(p in 0usize..3, n in 1usize..=3, period in 1usize..=5, seed: u64) {
        let ctx = small_field(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&ctx, n, period, &mut rng);
        let hist = sys.period_histogram(CAP).unwrap();
        let phi = sys.monodromy();
        for _ in 0..4 {
            let x: Vec<_> = (0..n).map(|_| ctx.random(&mut rng)).collect();
            let t = vector_orbit_length_by_iteration(&phi, &x, CAP).unwrap();
            let l = sys.orbit_period(&x, CAP).unwrap();
            prop_assert_eq!(lcm(l, period as u128), t * period as u128);
            prop_assert!(hist.get(l) > 0);
        }
    }

    #[test]
    fn period_divides_lcm_of_root_orbit(p in 0usize..3, n in 1usize..=3, period in 1usize..=5, seed: u64) {
        let ctx = small_field(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&ctx, n, period, &mut rng);
        let Some(fd) = floquet(&sys, &RootOptions::default()).unwrap().1 else {
            return Ok(());
        };
        let in_a = sys.subspace_test();
        for _ in 0..4 {
            let x: Vec<_> = (0..n).map(|_| ctx.random(&mut rng)).collect();
            let t = vector_orbit_length_by_iteration(&fd.a_tilde, &fd.transform_state(0, &x), CAP).unwrap();
            let l = sys.orbit_period(&x, CAP).unwrap();
            prop_assert_eq!(lcm(t, period as u128) % l, 0);
            if !in_a.contains(&x) {
                prop_assert_eq!(l % t, 0);
            }
        }
    }

    #[test]
    fn prime_period_orbits_are_lcm(
        p in 0usize..3,
        n in 1usize..=3,
        period in prop::sample::select(vec![2usize, 3, 5]),
        seed: u64,
    ) {
        let ctx = small_field(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&ctx, n, period, &mut rng);
        let Some(fd) = floquet(&sys, &RootOptions::default()).unwrap().1 else {
            return Ok(());
        };
        let sa = sys.subspace_a();
        for _ in 0..4 {
            let x: Vec<_> = (0..n).map(|_| ctx.random(&mut rng)).collect();
            let o = orbit_length(&sys, &x, &fd).unwrap();
            prop_assert_eq!(o.length, sys.orbit_period(&x, CAP).unwrap());
            if sa.is_empty() && !x.iter().all(|e| e.is_zero()) {
                prop_assert_eq!(o.classification, Classification::Exact);
                prop_assert_eq!(o.length, lcm(o.lfss_period, period as u128));
            }
        }
        let summary = all_orbits(&sys, Some(&fd), CAP).unwrap();
        if let Some(f) = &summary.formula {
            prop_assert_ne!(f.cross_check, Some(false));
        }
        for (l, _) in summary.histogram.iter() {
            let x = find_initial_condition(&sys, &fd, l, CAP).unwrap();
            prop_assert!(x.is_some(), "no state of period {}", l);
        }
    }

    #[test]
    fn register_simulation_agrees(
        f in 0usize..3,
        m in 1usize..=3,
        s in 1usize..=3,
        galois: bool,
        seed: u64,
    ) {
        let ctx = small_field(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let transition = random_nonsingular(&ctx, m, &mut rng);
        let init = (0..m).map(|_| ctx.random(&mut rng)).collect();
        let wiring = (0..s)
            .map(|_| if rng.gen_bool(0.5) { Slot::Master(rng.gen_range(0..m)) } else { Slot::Const(ctx.random_nonzero(&mut rng)) })
            .collect();
        let spec = PfsrSpec {
            kind: if galois { FsrKind::Galois } else { FsrKind::Fibonacci },
            master: MasterLfsr::new(transition, init).unwrap(),
            slave_dim: s,
            wiring,
        };
        let sys = build_pfss(&spec).unwrap();
        let x0: Vec<_> = (0..s).map(|_| ctx.random(&mut rng)).collect();
        let mut x = x0.clone();
        for k in 0..sys.period() {
            x = sys.matrices()[k].mul_vec(&x);
        }
        prop_assert_eq!(sys.monodromy().mul_vec(&x0), x);
        let joint = joint_simulation(&spec, &x0, 3 * sys.period()).unwrap();
        let mut x = x0;
        for (k, (_, slave)) in joint.iter().enumerate() {
            prop_assert_eq!(slave, &x);
            x = sys.step(k as u128, &x);
        }
    }
}
