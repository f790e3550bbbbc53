//! Periodic feedback shift registers built from a linear master register
//! whose states feed the coefficients of a slave register.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::matrix::{FFMatrix, Vector};
use crate::pfss::Pfss;

/// Step cap for [`master_orbit`].
pub const DEFAULT_MASTER_CAP: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasterLfsr {
    pub transition: FFMatrix,
    pub init: Vector,
}

impl MasterLfsr {
    pub fn new(transition: FFMatrix, init: Vector) -> Result<Self> {
        if !transition.is_square() {
            return Err(Error::DimensionMismatch("master transition must be square".into()));
        }
        if init.len() != transition.rows() {
            return Err(Error::DimensionMismatch(format!(
                "master init has {} entries, transition is {}x{}",
                init.len(),
                transition.rows(),
                transition.cols()
            )));
        }
        Ok(MasterLfsr { transition, init })
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.transition.ctx()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FsrKind {
    /// Companion form; the wiring fills the bottom row.
    Fibonacci,
    /// The wiring fills the first column, ones on the superdiagonal.
    Galois,
}

impl FsrKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FsrKind::Fibonacci => "fibonacci",
            FsrKind::Galois => "galois",
        }
    }
}

/// Source of one slave coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// Coordinate `i` of the master state.
    Master(usize),
    Const(FieldElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfsrSpec {
    pub kind: FsrKind,
    pub master: MasterLfsr,
    pub slave_dim: usize,
    pub wiring: Vec<Slot>,
}

impl PfsrSpec {
    fn check_wiring(&self) -> Result<()> {
        if self.slave_dim == 0 {
            return Err(Error::WiringError("slave dimension must be positive".into()));
        }
        if self.wiring.len() != self.slave_dim {
            return Err(Error::WiringError(format!(
                "{} wiring slots for a slave of dimension {}",
                self.wiring.len(),
                self.slave_dim
            )));
        }
        let m = self.master.init.len();
        for (j, slot) in self.wiring.iter().enumerate() {
            match *slot {
                Slot::Master(i) if i >= m => {
                    return Err(Error::WiringError(format!(
                        "slot {j} reads master coordinate {i}, master has {m}"
                    )))
                }
                Slot::Const(c) if !self.master.ctx().contains(c) => {
                    return Err(Error::WiringError(format!(
                        "slot {j} constant {} is not a field element",
                        c.encoding()
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Coefficients read off one master state.
    fn coefficients(&self, y: &[FieldElement]) -> Vector {
        self.wiring
            .iter()
            .map(|s| match *s {
                Slot::Master(i) => y[i],
                Slot::Const(c) => c,
            })
            .collect()
    }

    /// Slave matrix for one master state.
    pub fn slave_matrix(&self, y: &[FieldElement]) -> Result<FFMatrix> {
        self.check_wiring()?;
        let ctx = self.master.ctx();
        let n = self.slave_dim;
        let coeffs = self.coefficients(y);
        let mut a = FFMatrix::zeros(ctx, n, n);
        for i in 0..n - 1 {
            a.set(i, i + 1, FieldElement::ONE);
        }
        for (j, c) in coeffs.into_iter().enumerate() {
            match self.kind {
                FsrKind::Fibonacci => a.set(n - 1, j, c),
                FsrKind::Galois => a.set(j, 0, c),
            }
        }
        Ok(a)
    }
}

/// Master states over one period, starting at the initial state.
pub fn master_orbit(m: &MasterLfsr, cap: u128) -> Result<Vec<Vector>> {
    let mut states = vec![m.init.clone()];
    let mut y = m.transition.mul_vec(&m.init);
    let mut steps = 1u128;
    while y != m.init {
        if steps >= cap {
            return Err(Error::NotPeriodic(format!("no return within {cap} steps")));
        }
        if states.len() > 1 && states[1..].contains(&y) {
            return Err(Error::NotPeriodic(
                "entered a cycle that misses the initial state".into(),
            ));
        }
        states.push(y.clone());
        y = m.transition.mul_vec(&y);
        steps += 1;
    }
    Ok(states)
}

/// The slave register as a periodic system, one matrix per master state.
pub fn build_pfss(spec: &PfsrSpec) -> Result<Pfss> {
    spec.check_wiring()?;
    let states = master_orbit(&spec.master, DEFAULT_MASTER_CAP)?;
    let matrices = states
        .iter()
        .map(|y| spec.slave_matrix(y))
        .collect::<Result<Vec<_>>>()?;
    Pfss::new(matrices)
}

/// Coordinate `tap` of the slave state at steps `0..steps`.
pub fn keystream(spec: &PfsrSpec, x0: &[FieldElement], steps: usize, tap: usize) -> Result<Vec<FieldElement>> {
    let sys = build_pfss(spec)?;
    sys.check_state(x0)?;
    if tap >= sys.dim() {
        return Err(Error::InvalidInput(format!(
            "tap {tap} out of range for a slave of dimension {}",
            sys.dim()
        )));
    }
    let mut out = Vec::with_capacity(steps);
    let mut x = x0.to_vec();
    for k in 0..steps {
        out.push(x[tap]);
        x = sys.step(k as u128, &x);
    }
    Ok(out)
}

/// Master and slave run together, each slave step using the current
/// master state directly. Returns `(y(k), x(k))` for `k = 0..=steps`.
pub fn joint_simulation(spec: &PfsrSpec, x0: &[FieldElement], steps: usize) -> Result<Vec<(Vector, Vector)>> {
    spec.check_wiring()?;
    if x0.len() != spec.slave_dim {
        return Err(Error::DimensionMismatch(
            "slave state length differs from slave dimension".into(),
        ));
    }
    let mut y = spec.master.init.clone();
    let mut x = x0.to_vec();
    let mut out = vec![(y.clone(), x.clone())];
    for _ in 0..steps {
        x = spec.slave_matrix(&y)?.mul_vec(&x);
        y = spec.master.transition.mul_vec(&y);
        out.push((y.clone(), x.clone()));
    }
    Ok(out)
}
