//! Periodic finite state systems `x(k+1) = A(k) x(k)` with
//! `A(k + N) = A(k)`: monodromy, transitions, the subspace `𝒜`, exhaustive
//! simulation and the coprimality checks that need no Floquet transform.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::lfss::{state_count, state_from_index, state_index};
use crate::matrix::{common_kernel, is_zero_vec, matmul_chain, FFMatrix, Vector};
use crate::ntheory::gcd;

/// Default bound on `q^n` for exhaustive enumeration.
pub const DEFAULT_STATE_CAP: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pfss {
    ctx: FieldCtx,
    n: usize,
    matrices: Vec<FFMatrix>,
}

impl Pfss {
    /// One period `A(0), ..., A(N-1)`. Matrices over nested towers are
    /// embedded into the largest one.
    pub fn new(matrices: Vec<FFMatrix>) -> Result<Self> {
        let first = matrices
            .first()
            .ok_or_else(|| Error::InvalidInput("a system needs at least one matrix".into()))?;
        let n = first.rows();
        let mut ctx = first.ctx().clone();
        for (k, m) in matrices.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "A({k}) is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            ctx = ctx.join(m.ctx())?;
        }
        let matrices = matrices.iter().map(|m| m.embed(&ctx)).collect::<Result<Vec<_>>>()?;
        Ok(Pfss { ctx, n, matrices })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// State dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Period `N`.
    pub fn period(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[FFMatrix] {
        &self.matrices
    }

    /// `A(k mod N)`.
    pub fn a(&self, k: u128) -> &FFMatrix {
        &self.matrices[(k % self.matrices.len() as u128) as usize]
    }

    pub fn is_nonsingular(&self) -> bool {
        self.matrices.iter().all(|m| m.is_invertible())
    }

    /// `Φ = A(N-1) ... A(1) A(0)`.
    pub fn monodromy(&self) -> FFMatrix {
        let rev: Vec<FFMatrix> = self.matrices.iter().rev().cloned().collect();
        matmul_chain(&rev).expect("square matrices of equal size")
    }

    /// `S(k1, k0) = A(k1 - 1) ... A(k0)`, the identity when `k1 = k0`.
    pub fn transition(&self, k1: u64, k0: u64) -> Result<FFMatrix> {
        if k1 < k0 {
            return Err(Error::BadRange { k1, k0 });
        }
        let nn = self.period() as u64;
        let len = k1 - k0;
        let mut acc = FFMatrix::identity(&self.ctx, self.n);
        if len >= nn {
            // whole periods starting at phase k0 are a power of a shifted monodromy
            let mut one_period = FFMatrix::identity(&self.ctx, self.n);
            for k in k0..k0 + nn {
                one_period = self.a(k as u128).mul(&one_period)?;
            }
            acc = one_period.pow((len / nn) as u128)?;
        }
        for k in k0 + (len / nn) * nn..k1 {
            acc = self.a(k as u128).mul(&acc)?;
        }
        Ok(acc)
    }

    /// Stacked differences `A(i) - A(j)`, `i < j`; `None` when `N = 1`.
    fn difference_stack(&self) -> Option<FFMatrix> {
        let nn = self.period();
        let mut diffs = Vec::new();
        for i in 0..nn {
            for j in i + 1..nn {
                diffs.push(self.matrices[i].sub(&self.matrices[j]).expect("same shape"));
            }
        }
        if diffs.is_empty() {
            None
        } else {
            Some(FFMatrix::vstack(&diffs).expect("same width"))
        }
    }

    /// Basis of `𝒜 = ∩ ker(A(i) - A(j))`. For `N = 1` this is the whole
    /// space.
    pub fn subspace_a(&self) -> Vec<Vector> {
        match self.difference_stack() {
            Some(d) => common_kernel(&[d]).expect("nonempty"),
            None => {
                let id = FFMatrix::identity(&self.ctx, self.n);
                (0..self.n).map(|j| id.column(j)).collect()
            }
        }
    }

    /// Membership test for `𝒜`.
    pub fn subspace_test(&self) -> SubspaceTest {
        SubspaceTest {
            stack: self.difference_stack(),
        }
    }

    pub fn step(&self, k: u128, x: &[FieldElement]) -> Vector {
        self.a(k).mul_vec(x)
    }

    /// Length and field membership of a state.
    pub fn check_state(&self, x: &[FieldElement]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "state has {} entries, system dimension is {}",
                x.len(),
                self.n
            )));
        }
        if let Some(bad) = x.iter().find(|v| !self.ctx.contains(**v)) {
            return Err(Error::InvalidInput(format!(
                "state entry {} is not in {}",
                bad.encoding(),
                self.ctx.describe()
            )));
        }
        Ok(())
    }

    /// Trajectory from `x0` over one full temporal period.
    ///
    /// The period is the least `T` with `x(k + T) = x(k)` for every `k`,
    /// which can be larger than the first return of `x0` at another phase.
    /// `step_cap` bounds the number of steps spent looking for a return to
    /// `x0` at phase 0.
    pub fn simulate_orbit(&self, x0: &[FieldElement], step_cap: u128) -> Result<Trajectory> {
        self.check_state(x0)?;
        let nn = self.period() as u128;
        // states at phase 0 repeat with the Φ-orbit of x0; collect the whole
        // stretch of L * N steps
        let mut states: Vec<Vector> = vec![x0.to_vec()];
        let mut x = x0.to_vec();
        let mut k = 0u128;
        loop {
            if k >= step_cap {
                return Err(Error::StepCapExceeded(step_cap));
            }
            x = self.step(k, &x);
            k += 1;
            if k.is_multiple_of(nn) && x == x0 {
                break;
            }
            states.push(x.clone());
        }
        let period = minimal_cyclic_period(&states) as u128;
        states.truncate(period as usize);
        states.push(x0.to_vec());
        Ok(Trajectory { states, period })
    }

    /// Temporal period of `x0`.
    pub fn orbit_period(&self, x0: &[FieldElement], step_cap: u128) -> Result<u128> {
        Ok(self.simulate_orbit(x0, step_cap)?.period)
    }

    /// Visit every phase-0 state once, grouped into cycles of `Φ`. All
    /// states on one `Φ`-cycle share the same temporal period; `f` gets the
    /// cycle's states and the trajectory of its first member.
    pub fn scan_orbits(&self, cap: u128, mut f: impl FnMut(&[Vector], &Trajectory) -> Result<()>) -> Result<()> {
        if !self.is_nonsingular() {
            return Err(Error::SingularSystem(self.first_singular().unwrap_or(0)));
        }
        let total = state_count(&self.ctx, self.n, cap)?;
        let phi = self.monodromy();
        let mut seen = vec![false; total as usize];
        for start in 0..total {
            if seen[start as usize] {
                continue;
            }
            let x0 = state_from_index(&self.ctx, self.n, start);
            let mut cycle = Vec::new();
            let mut x = x0.clone();
            loop {
                let i = state_index(&self.ctx, &x) as usize;
                if seen[i] {
                    break;
                }
                seen[i] = true;
                cycle.push(x.clone());
                x = phi.mul_vec(&x);
            }
            let cap_steps = (cycle.len() as u128) * self.period() as u128;
            let traj = self.simulate_orbit(&x0, cap_steps)?;
            f(&cycle, &traj)?;
        }
        Ok(())
    }

    /// Index of the first singular `A(k)`, if any.
    pub fn first_singular(&self) -> Option<usize> {
        self.matrices.iter().position(|m| !m.is_invertible())
    }

    /// Number of initial conditions with each temporal period.
    pub fn period_histogram(&self, cap: u128) -> Result<PeriodHistogram> {
        let mut hist = PeriodHistogram::default();
        self.scan_orbits(cap, |cycle, traj| {
            hist.add(traj.period, cycle.len() as u128);
            Ok(())
        })?;
        Ok(hist)
    }

    /// Checks over every initial condition that trajectories leaving `𝒜`
    /// have `gcd(T, N) != 1`, that fixed points lie in `𝒜`, and for prime
    /// `N` that initial conditions outside `𝒜` have periods divisible by
    /// `N`.
    pub fn check_coprime_theorem(&self, cap: u128) -> Result<CoprimeReport> {
        let nn = self.period() as u128;
        let test = self.subspace_test();
        let n_prime = crate::ntheory::is_prime(nn);
        let mut report = CoprimeReport {
            states_checked: 0,
            leaving_a_not_coprime: true,
            fixed_points_in_a: true,
            prime_period_multiple: if n_prime { Some(true) } else { None },
            counterexample: None,
        };
        self.scan_orbits(cap, |cycle, traj| {
            report.states_checked += cycle.len() as u128;
            let t = traj.period;
            let leaves = traj.states.iter().any(|s| !test.contains(s));
            if leaves && gcd(t, nn) == 1 && nn > 1 {
                report.leaving_a_not_coprime = false;
                report.counterexample.get_or_insert_with(|| codes(&cycle[0]));
            }
            for x in cycle {
                let inside = test.contains(x);
                if t == 1 && !inside {
                    report.fixed_points_in_a = false;
                    report.counterexample.get_or_insert_with(|| codes(x));
                }
                if n_prime && !inside && t % nn != 0 {
                    report.prime_period_multiple = Some(false);
                    report.counterexample.get_or_insert_with(|| codes(x));
                }
            }
            Ok(())
        })?;
        Ok(report)
    }

    /// The same system read over an extension field.
    pub fn extend(&self, ctx: &FieldCtx) -> Result<Pfss> {
        if !self.ctx.is_subfield_of(ctx) {
            return Err(Error::NotAnExtension);
        }
        Pfss::new(self.matrices.iter().map(|m| m.embed(ctx)).collect::<Result<Vec<_>>>()?)
    }
}

fn codes(x: &[FieldElement]) -> Vec<u64> {
    x.iter().map(|v| v.encoding()).collect()
}

/// Least `d` dividing `len` with `s[i] = s[(i + d) mod len]` for all `i`,
/// via the prefix function.
fn minimal_cyclic_period<T: PartialEq>(s: &[T]) -> usize {
    let len = s.len();
    let mut pi = vec![0usize; len];
    for i in 1..len {
        let mut j = pi[i - 1];
        while j > 0 && s[i] != s[j] {
            j = pi[j - 1];
        }
        if s[i] == s[j] {
            j += 1;
        }
        pi[i] = j;
    }
    let p = len - pi[len - 1];
    if len.is_multiple_of(p) {
        p
    } else {
        len
    }
}

/// Precomputed membership test for `𝒜`.
#[derive(Clone, Debug)]
pub struct SubspaceTest {
    stack: Option<FFMatrix>,
}

impl SubspaceTest {
    pub fn contains(&self, x: &[FieldElement]) -> bool {
        match &self.stack {
            Some(d) => is_zero_vec(&d.mul_vec(x)),
            None => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    /// `x(0), ..., x(T)`; the last entry repeats the first.
    pub states: Vec<Vector>,
    pub period: u128,
}

/// Number of initial conditions per temporal period.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeriodHistogram {
    entries: BTreeMap<u128, u128>,
}

#[derive(Serialize, Deserialize)]
struct HistogramEntry {
    period: u128,
    states: u128,
}

impl Serialize for PeriodHistogram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.iter()
            .map(|(period, states)| HistogramEntry { period, states })
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PeriodHistogram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let mut h = PeriodHistogram::default();
        for e in Vec::<HistogramEntry>::deserialize(d)? {
            h.add(e.period, e.states);
        }
        Ok(h)
    }
}

impl PeriodHistogram {
    pub fn from_pairs(pairs: &[(u128, u128)]) -> Self {
        let mut h = PeriodHistogram::default();
        for &(p, c) in pairs {
            h.add(p, c);
        }
        h
    }

    pub fn add(&mut self, period: u128, states: u128) {
        if states > 0 {
            *self.entries.entry(period).or_insert(0) += states;
        }
    }

    /// `(period, states)` in increasing period.
    pub fn iter(&self) -> impl Iterator<Item = (u128, u128)> + '_ {
        self.entries.iter().map(|(&p, &c)| (p, c))
    }

    pub fn get(&self, period: u128) -> u128 {
        self.entries.get(&period).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.entries.values().sum()
    }

    /// Merge counts from another partition of the state space.
    pub fn merge(&mut self, other: &PeriodHistogram) {
        for (p, c) in other.iter() {
            self.add(p, c);
        }
    }

    /// Renders as `{1: 1, 6: 3}`.
    pub fn render(&self) -> String {
        let body = self
            .iter()
            .map(|(p, c)| format!("{p}: {c}"))
            .collect::<Vec<_>>()
            .join(", ");
        format!("{{{body}}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeReport {
    pub states_checked: u128,
    pub leaving_a_not_coprime: bool,
    pub fixed_points_in_a: bool,
    /// Only meaningful for prime `N`.
    pub prime_period_multiple: Option<bool>,
    pub counterexample: Option<Vec<u64>>,
}

impl CoprimeReport {
    pub fn passed(&self) -> bool {
        self.leaving_a_not_coprime && self.fixed_points_in_a && self.prime_period_multiple != Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn period2_root() -> Pfss {
        let f2 = FieldCtx::prime(2).unwrap();
        Pfss::new(vec![
            FFMatrix::from_ints(&f2, &[vec![1, 1], vec![0, 1]]).unwrap(),
            FFMatrix::from_ints(&f2, &[vec![0, 1], vec![1, 0]]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn cyclic_period_of_sequences() {
        assert_eq!(minimal_cyclic_period(&[1, 2, 1, 2]), 2);
        assert_eq!(minimal_cyclic_period(&[1, 2, 1]), 3);
        assert_eq!(minimal_cyclic_period(&[7]), 1);
        assert_eq!(minimal_cyclic_period(&[1, 1, 2, 1, 1, 2]), 3);
    }

    #[test]
    fn transitions_compose() {
        let s = period2_root();
        assert_eq!(s.transition(2, 0).unwrap(), s.monodromy());
        assert!(s.transition(3, 3).unwrap().is_identity());
        let lhs = s.transition(7, 4).unwrap().mul(&s.transition(4, 1).unwrap()).unwrap();
        assert_eq!(lhs, s.transition(7, 1).unwrap());
        assert_eq!(s.transition(1, 2), Err(Error::BadRange { k1: 1, k0: 2 }));
    }

    #[test]
    fn period_two_orbits() {
        let s = period2_root();
        let f2 = s.ctx().clone();
        let x0 = vec![f2.from_int(0), f2.from_int(1)];
        let t = s.simulate_orbit(&x0, 1000).unwrap();
        assert_eq!(t.period, 6);
        assert_eq!(t.states.len(), 7);
        assert_eq!(
            s.period_histogram(DEFAULT_STATE_CAP).unwrap(),
            PeriodHistogram::from_pairs(&[(1, 1), (6, 3)])
        );
        assert!(s.subspace_a().is_empty());
        assert!(s.check_coprime_theorem(DEFAULT_STATE_CAP).unwrap().passed());
    }
}
