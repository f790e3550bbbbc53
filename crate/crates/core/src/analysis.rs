//! Orbit lengths of a periodic system from its Floquet data, with the
//! exhaustive simulation as referee.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::floquet::{floquet, van_dooren_condition, FloquetData, RootOptions, RootResult};
use crate::lfss::{cycle_set, state_count, state_from_index, vector_orbit_length, CycleSet};
use crate::matrix::{common_kernel, FFMatrix, Vector};
use crate::ntheory::{is_prime, lcm};
use crate::pfss::{CoprimeReport, PeriodHistogram, Pfss, DEFAULT_STATE_CAP};

/// How an orbit length was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `lcm(T, N)` for prime `N` and an initial condition outside `𝒜`.
    Exact,
    /// Only the bound `lcm(T, N)` is known from theory; the value comes
    /// from simulation.
    ResolvedByOracle,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Exact => "exact",
            Classification::ResolvedByOracle => "resolved_by_oracle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLength {
    pub length: u128,
    pub classification: Classification,
    /// Orbit length of the same initial condition under `Ã`.
    pub lfss_period: u128,
    /// `lcm(T, N)`, which the length always divides.
    pub bound: u128,
}

fn require_nonsingular(sys: &Pfss) -> Result<()> {
    match sys.first_singular() {
        Some(k) => Err(Error::SingularSystem(k)),
        None => Ok(()),
    }
}

fn embed_state(fd: &FloquetData, x0: &[FieldElement]) -> Result<Vector> {
    if x0.len() != fd.a_tilde.rows() {
        return Err(Error::DimensionMismatch(
            "state length differs from system dimension".into(),
        ));
    }
    if let Some(bad) = x0.iter().find(|v| !fd.ctx.contains(**v)) {
        return Err(Error::InvalidInput(format!(
            "state entry {} is not in {}",
            bad.encoding(),
            fd.ctx.describe()
        )));
    }
    Ok(x0.to_vec())
}

/// Orbit length of `x0` (read over the Floquet field).
///
/// With `N` prime and `x0` outside `𝒜` the length is exactly `lcm(T, N)`
/// where `T` is the orbit length of `x̃(0) = P(0) x0` under `Ã`. Otherwise the
/// theory only gives a divisor of `lcm(T, N)` and the system is simulated.
pub fn orbit_length(sys: &Pfss, x0: &[FieldElement], fd: &FloquetData) -> Result<OrbitLength> {
    require_nonsingular(sys)?;
    let x = embed_state(fd, x0)?;
    let nn = sys.period() as u128;
    let t = vector_orbit_length(&fd.a_tilde, &fd.transform_state(0, &x))?;
    let bound = lcm(t, nn);
    let in_a = sys.subspace_test().contains(&x);
    if is_prime(nn) && !in_a {
        return Ok(OrbitLength {
            length: bound,
            classification: Classification::Exact,
            lfss_period: t,
            bound,
        });
    }
    let ext = sys.extend(&fd.ctx)?;
    let length = ext.orbit_period(&x, bound + nn)?;
    if !bound.is_multiple_of(length) {
        return Err(Error::VerificationFailed(format!(
            "simulated period {length} does not divide lcm(T, N) = {bound}"
        )));
    }
    Ok(OrbitLength {
        length,
        classification: Classification::ResolvedByOracle,
        lfss_period: t,
        bound,
    })
}

/// Closed trajectories per temporal period. A trajectory of period `T`
/// meets phase 0 at `lcm(T, N) / N` distinct states, so the histogram
/// count is divided by that.
pub fn closed_orbits(hist: &PeriodHistogram, n: usize) -> CycleSet {
    let nn = n as u128;
    let mut cs = CycleSet::new();
    for (t, states) in hist.iter() {
        cs.add(t, states / (lcm(t, nn) / nn));
    }
    cs
}

/// Closed-orbit counts from the cycle set of `Ã`, valid for prime `N` and
/// `𝒜 = {0}`: the fixed point stays, every other LFSS fixed point becomes
/// an orbit of length `N`, and an LFSS cycle of length `T_i` splits into
/// orbits of length `lcm(T_i, N)`, `T_i N / lcm(T_i, N)` of them.
pub fn orbits_from_lfss(lfss: &CycleSet, n: usize) -> CycleSet {
    let nn = n as u128;
    let mut cs = CycleSet::new();
    for (t, count) in lfss.iter() {
        if t == 1 {
            cs.add(1, 1);
            cs.add(nn, count - 1);
        } else {
            let l = lcm(t, nn);
            cs.add(l, count * t * nn / l);
        }
    }
    cs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaBranch {
    /// Closed orbits of the system over the Floquet field.
    pub closed_orbits: CycleSet,
    /// Agreement with enumeration over the Floquet field, when that state
    /// space is within the cap.
    pub cross_check: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary {
    /// Per initial condition, over the base field.
    pub histogram: PeriodHistogram,
    /// Per closed trajectory, over the base field.
    pub closed_orbits: CycleSet,
    /// Present when `N` is prime, `𝒜 = {0}` and Floquet data exists.
    pub formula: Option<FormulaBranch>,
}

/// Period histogram and closed-orbit counts, with the cycle-set formula
/// when its hypotheses hold.
pub fn all_orbits(sys: &Pfss, fd: Option<&FloquetData>, cap: u128) -> Result<OrbitSummary> {
    require_nonsingular(sys)?;
    let nn = sys.period();
    let histogram = sys.period_histogram(cap)?;
    let closed = closed_orbits(&histogram, nn);
    let formula = match fd {
        Some(fd) if is_prime(nn as u128) && sys.subspace_a().is_empty() => {
            let predicted = orbits_from_lfss(&cycle_set(&fd.a_tilde)?, nn);
            let cross_check = if fd.ctx == *sys.ctx() {
                Some(predicted == closed)
            } else {
                match sys.extend(&fd.ctx)?.period_histogram(cap) {
                    Ok(h) => Some(predicted == closed_orbits(&h, nn)),
                    Err(Error::StateSpaceTooLarge { .. }) => None,
                    Err(e) => return Err(e),
                }
            };
            Some(FormulaBranch {
                closed_orbits: predicted,
                cross_check,
            })
        }
        _ => None,
    };
    Ok(OrbitSummary {
        histogram,
        closed_orbits: closed,
        formula,
    })
}

/// First state (in index order) over the base field with temporal period
/// `l`.
fn search_period(sys: &Pfss, l: u128, cap: u128) -> Result<Option<Vector>> {
    let mut best: Option<(u64, Vector)> = None;
    sys.scan_orbits(cap, |cycle, traj| {
        if traj.period == l {
            for x in cycle {
                let idx = crate::lfss::state_index(sys.ctx(), x);
                if best.as_ref().is_none_or(|(b, _)| idx < *b) {
                    best = Some((idx, x.clone()));
                }
            }
        }
        Ok(())
    })?;
    Ok(best.map(|(_, x)| x))
}

/// An initial condition whose trajectory has temporal period `l`, or
/// `None` when no such state exists.
///
/// For prime `N` with `𝒜 = {0}` the target is reduced to an LFSS orbit
/// length `T` with `lcm(T, N) = l` and a vector is built for `Ã`; a
/// base-field state with the same LFSS period is preferred when the built
/// vector needs the extension. Other systems are searched exhaustively.
/// Every answer is checked by simulation.
pub fn find_initial_condition(sys: &Pfss, fd: &FloquetData, l: u128, cap: u128) -> Result<Option<Vector>> {
    require_nonsingular(sys)?;
    let n = sys.dim();
    if l == 0 {
        return Err(Error::InvalidInput("orbit length must be positive".into()));
    }
    if l == 1 {
        return Ok(Some(vec![FieldElement::ZERO; n]));
    }
    let nn = sys.period() as u128;
    if !(is_prime(nn) && sys.subspace_a().is_empty()) {
        return search_period(sys, l, cap);
    }
    if !l.is_multiple_of(nn) {
        return Ok(None);
    }
    let ext = sys.extend(&fd.ctx)?;
    for t in [l / nn, l] {
        if lcm(t, nn) != l {
            continue;
        }
        // l > 1, so the LFSS vector must be nonzero even when t = 1
        let xt = if t == 1 {
            let id = FFMatrix::identity(&fd.ctx, n);
            fd.a_tilde.sub(&id)?.kernel().into_iter().next()
        } else {
            crate::lfss::find_vector_with_period(&fd.a_tilde, t)?
        };
        let Some(xt) = xt else {
            continue;
        };
        let mut x = fd.initial_state(&xt)?;
        if x.iter().any(|v| !sys.ctx().contains(*v)) {
            if let Some(base) = base_state_with_lfss_period(sys, fd, t, cap)? {
                x = base;
            }
        }
        let got = ext.orbit_period(&x, l + nn)?;
        if got != l {
            return Err(Error::VerificationFailed(format!(
                "initial condition has period {got}, expected {l}"
            )));
        }
        return Ok(Some(x));
    }
    Ok(None)
}

fn base_state_with_lfss_period(sys: &Pfss, fd: &FloquetData, t: u128, cap: u128) -> Result<Option<Vector>> {
    let total = match state_count(sys.ctx(), sys.dim(), cap) {
        Ok(total) => total,
        Err(Error::StateSpaceTooLarge { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    for idx in 1..total {
        let x = state_from_index(sys.ctx(), sys.dim(), idx);
        if vector_orbit_length(&fd.a_tilde, &fd.transform_state(0, &x))? == t {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointReport {
    /// Dimension of the common fixed space of all `A(k)`.
    pub pfss_fixed_dim: usize,
    pub fixed_points_in_a: bool,
    /// Every PFSS fixed point has LFSS period 1 or `N`.
    pub pfss_to_lfss: bool,
    /// Dimension of `ker(Ã - I)` over the Floquet field.
    pub lfss_fixed_dim: usize,
    /// Every LFSS fixed point has PFSS period 1 or `N`; `None` when there
    /// are too many to enumerate.
    pub lfss_to_pfss: Option<bool>,
}

impl FixedPointReport {
    pub fn passed(&self) -> bool {
        self.fixed_points_in_a && self.pfss_to_lfss && self.lfss_to_pfss != Some(false)
    }
}

fn span_elements(ctx: &crate::field::FieldCtx, basis: &[Vector], n: usize, cap: u128) -> Option<Vec<Vector>> {
    let count = crate::ntheory::checked_pow(ctx.size() as u128, basis.len() as u32)?;
    if count > cap {
        return None;
    }
    let q = ctx.size();
    let mut out = Vec::with_capacity(count as usize);
    for mut code in 0..count as u64 {
        let mut v = vec![FieldElement::ZERO; n];
        for b in basis {
            let c = FieldElement::from_encoding(code % q);
            code /= q;
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = ctx.add(*vi, ctx.mul(c, bi));
            }
        }
        out.push(v);
    }
    Some(out)
}

/// Fixed points of the system and of its equivalent LFSS, and how their
/// periods correspond.
pub fn fixed_point_analysis(sys: &Pfss, fd: &FloquetData, cap: u128) -> Result<FixedPointReport> {
    require_nonsingular(sys)?;
    let n = sys.dim();
    let nn = sys.period() as u128;
    let ctx = sys.ctx();
    let id = FFMatrix::identity(ctx, n);
    let shifted = sys.matrices().iter().map(|m| m.sub(&id)).collect::<Result<Vec<_>>>()?;
    let fixed = common_kernel(&shifted)?;
    let test = sys.subspace_test();
    let fixed_points_in_a = fixed.iter().all(|v| test.contains(v));
    let pfss_to_lfss = match span_elements(ctx, &fixed, n, cap) {
        Some(points) => points.iter().try_fold(true, |ok, x| {
            let t = vector_orbit_length(&fd.a_tilde, &fd.transform_state(0, x))?;
            Ok::<_, Error>(ok && (t == 1 || t == nn))
        })?,
        None => true,
    };
    let kid = FFMatrix::identity(&fd.ctx, n);
    let lfss_fixed = fd.a_tilde.sub(&kid)?.kernel();
    let ext = sys.extend(&fd.ctx)?;
    let lfss_to_pfss = match span_elements(&fd.ctx, &lfss_fixed, n, cap) {
        Some(points) => Some(points.iter().try_fold(true, |ok, xt| {
            let t = ext.orbit_period(&fd.initial_state(xt)?, nn + 1)?;
            Ok::<_, Error>(ok && (t == 1 || t == nn))
        })?),
        None => None,
    };
    Ok(FixedPointReport {
        pfss_fixed_dim: fixed.len(),
        fixed_points_in_a,
        pfss_to_lfss,
        lfss_fixed_dim: lfss_fixed.len(),
        lfss_to_pfss,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub root: RootOptions,
    pub state_cap: u128,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            root: RootOptions::default(),
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

/// Everything known about one system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub system: Pfss,
    pub nonsingular: bool,
    pub monodromy: FFMatrix,
    pub subspace_a: Vec<Vector>,
    pub van_dooren: bool,
    pub root: Option<RootResult>,
    pub floquet: Option<FloquetData>,
    pub lfss_cycle_set: Option<CycleSet>,
    pub orbits: Option<OrbitSummary>,
    pub coprime: Option<CoprimeReport>,
    pub fixed_points: Option<FixedPointReport>,
    /// Parts skipped, and why.
    pub notes: Vec<String>,
}

/// Run every analysis that applies, recording skipped parts as notes
/// rather than failing.
pub fn analyze(sys: &Pfss, opts: &AnalysisOptions) -> Result<Analysis> {
    let nonsingular = sys.is_nonsingular();
    let mut a = Analysis {
        system: sys.clone(),
        nonsingular,
        monodromy: sys.monodromy(),
        subspace_a: sys.subspace_a(),
        van_dooren: van_dooren_condition(sys),
        root: None,
        floquet: None,
        lfss_cycle_set: None,
        orbits: None,
        coprime: None,
        fixed_points: None,
        notes: Vec::new(),
    };
    if !nonsingular {
        a.notes.push(format!(
            "A({}) is singular; orbit analysis needs a non-singular system",
            sys.first_singular().unwrap_or(0)
        ));
        return Ok(a);
    }
    match floquet(sys, &opts.root) {
        Ok((rr, fd)) => {
            a.root = Some(rr);
            a.floquet = fd;
        }
        Err(e @ (Error::ExtensionBoundExceeded { .. } | Error::FieldTooLarge(_))) => {
            a.notes.push(format!("root search stopped: {e}"));
        }
        Err(e) => return Err(e),
    }
    if let Some(fd) = &a.floquet {
        a.lfss_cycle_set = Some(cycle_set(&fd.a_tilde)?);
    }
    let skip = |e: Error, what: &str, notes: &mut Vec<String>| match e {
        Error::StateSpaceTooLarge { .. } => {
            notes.push(format!("{what} skipped: {e}"));
            Ok(())
        }
        e => Err(e),
    };
    match all_orbits(sys, a.floquet.as_ref(), opts.state_cap) {
        Ok(o) => a.orbits = Some(o),
        Err(e) => skip(e, "orbit enumeration", &mut a.notes)?,
    }
    match sys.check_coprime_theorem(opts.state_cap) {
        Ok(c) => a.coprime = Some(c),
        Err(e) => skip(e, "coprimality check", &mut a.notes)?,
    }
    if let Some(fd) = &a.floquet {
        if is_prime(sys.period() as u128) {
            a.fixed_points = Some(fixed_point_analysis(sys, fd, opts.state_cap)?);
        }
    }
    Ok(a)
}
