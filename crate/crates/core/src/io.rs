//! JSON input files and reports.
//!
//! Every input file carries `"schema": 1` and a field description; the
//! remaining keys select a system (`period`, `matrices`), a single matrix
//! (`matrix`) or a register spec (`kind`, `master`, `slave_dim`, `wiring`).
//! Elements are canonical integer encodings throughout.

use serde::{Deserialize, Serialize};

use crate::analysis::{Analysis, Classification, OrbitLength};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::floquet::{FloquetData, NoRootCertificate, RootResult};
use crate::fsr::{FsrKind, MasterLfsr, PfsrSpec, Slot};
use crate::lfss::CycleSet;
use crate::matrix::{FFMatrix, Vector};
use crate::pfss::{CoprimeReport, PeriodHistogram, Pfss};

pub const SCHEMA: u32 = 1;

/// Prime and tower moduli. Each modulus lists its coefficients from the
/// constant term up, as encodings in the level below.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tower: Vec<Vec<u64>>,
}

impl FieldSpec {
    pub fn of(ctx: &FieldCtx) -> Self {
        FieldSpec {
            p: ctx.characteristic(),
            tower: (0..ctx.depth())
                .map(|i| ctx.step_modulus(i).coeffs().iter().map(|c| c.encoding()).collect())
                .collect(),
        }
    }

    pub fn build(&self) -> Result<FieldCtx> {
        let steps: Vec<Vec<FieldElement>> = self
            .tower
            .iter()
            .map(|s| s.iter().map(|&c| FieldElement::from_encoding(c)).collect())
            .collect();
        FieldCtx::from_tower(self.p, &steps)
    }
}

pub type MatrixJson = Vec<Vec<u64>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MasterJson {
    pub matrix: MatrixJson,
    pub init: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotJson {
    Master(usize),
    Const(u64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub schema: u32,
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<MatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<FsrKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub master: Option<MasterJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slave_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wiring: Option<Vec<SlotJson>>,
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    System(Pfss),
    Matrix(FFMatrix),
    Pfsr(PfsrSpec),
}

impl Input {
    /// The periodic system an input describes; a lone matrix is a system
    /// of period 1 and a register spec is built through its master.
    pub fn into_system(self) -> Result<Pfss> {
        match self {
            Input::System(s) => Ok(s),
            Input::Matrix(m) => Pfss::new(vec![m]),
            Input::Pfsr(spec) => crate::fsr::build_pfss(&spec),
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn matrix_from_json(ctx: &FieldCtx, m: &MatrixJson) -> Result<FFMatrix> {
    FFMatrix::from_codes(ctx, m)
}

pub fn vector_from_codes(ctx: &FieldCtx, v: &[u64]) -> Result<Vector> {
    v.iter().map(|&c| ctx.element(c)).collect()
}

pub fn codes(v: &[FieldElement]) -> Vec<u64> {
    v.iter().map(|x| x.encoding()).collect()
}

/// Comma-separated encodings such as `0,1,1`.
pub fn parse_vector(ctx: &FieldCtx, s: &str) -> Result<Vector> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let c: u64 = t
                .parse()
                .map_err(|_| Error::InvalidInput(format!("`{t}` is not an element encoding")))?;
            ctx.element(c)
        })
        .collect()
}

pub fn parse_input(text: &str) -> Result<Input> {
    let f: InputFile = serde_json::from_str(text).map_err(json_error)?;
    if f.schema != SCHEMA {
        return Err(Error::InvalidInput(format!(
            "unsupported schema {}, expected {SCHEMA}",
            f.schema
        )));
    }
    let field = f
        .field
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("missing `field`".into()))?;
    let ctx = field.build()?;
    let shapes = [f.matrices.is_some(), f.matrix.is_some(), f.kind.is_some()];
    if shapes.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::InvalidInput(
            "exactly one of `matrices`, `matrix` or `kind` must be present".into(),
        ));
    }
    if let Some(ms) = &f.matrices {
        if let Some(nn) = f.period {
            if nn != ms.len() {
                return Err(Error::InvalidInput(format!("period {nn} but {} matrices", ms.len())));
            }
        }
        let ms = ms
            .iter()
            .map(|m| matrix_from_json(&ctx, m))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Input::System(Pfss::new(ms)?));
    }
    if let Some(m) = &f.matrix {
        return Ok(Input::Matrix(matrix_from_json(&ctx, m)?));
    }
    let kind = f.kind.expect("checked above");
    let master = f
        .master
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("register spec needs `master`".into()))?;
    let slave_dim = f
        .slave_dim
        .ok_or_else(|| Error::InvalidInput("register spec needs `slave_dim`".into()))?;
    let wiring = f
        .wiring
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("register spec needs `wiring`".into()))?
        .iter()
        .map(|s| match *s {
            SlotJson::Master(i) => Ok(Slot::Master(i)),
            SlotJson::Const(c) => ctx
                .element(c)
                .map(Slot::Const)
                .map_err(|_| Error::WiringError(format!("constant {c} is not a field element"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let master = MasterLfsr::new(
        matrix_from_json(&ctx, &master.matrix)?,
        vector_from_codes(&ctx, &master.init)?,
    )?;
    Ok(Input::Pfsr(PfsrSpec {
        kind,
        master,
        slave_dim,
        wiring,
    }))
}

pub fn system_file(sys: &Pfss) -> InputFile {
    InputFile {
        schema: SCHEMA,
        field: Some(FieldSpec::of(sys.ctx())),
        period: Some(sys.period()),
        matrices: Some(sys.matrices().iter().map(|m| m.to_codes()).collect()),
        ..InputFile::default()
    }
}

pub fn pfsr_file(spec: &PfsrSpec) -> InputFile {
    InputFile {
        schema: SCHEMA,
        field: Some(FieldSpec::of(spec.master.ctx())),
        kind: Some(spec.kind),
        master: Some(MasterJson {
            matrix: spec.master.transition.to_codes(),
            init: codes(&spec.master.init),
        }),
        slave_dim: Some(spec.slave_dim),
        wiring: Some(
            spec.wiring
                .iter()
                .map(|s| match *s {
                    Slot::Master(i) => SlotJson::Master(i),
                    Slot::Const(c) => SlotJson::Const(c.encoding()),
                })
                .collect(),
        ),
        ..InputFile::default()
    }
}

// ---- reports ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub dim: usize,
    pub basis: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootJson {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<NoRootCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl RootJson {
    pub fn of(rr: &RootResult) -> Self {
        let mut out = RootJson {
            status: rr.status().into(),
            method: None,
            field: None,
            matrix: None,
            certificate: None,
            reason: None,
        };
        match rr {
            RootResult::Root { root, method } => {
                out.method = Some(method.as_str().into());
                out.field = Some(FieldSpec::of(root.ctx()));
                out.matrix = Some(root.to_codes());
            }
            RootResult::NoRoot { certificate } => out.certificate = Some(certificate.clone()),
            RootResult::Undetermined { reason } => out.reason = Some(reason.clone()),
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloquetJson {
    pub field: FieldSpec,
    pub a_tilde: MatrixJson,
    /// `P(0), ..., P(N-1)`.
    pub p: Vec<MatrixJson>,
}

impl FloquetJson {
    pub fn of(fd: &FloquetData) -> Self {
        FloquetJson {
            field: FieldSpec::of(&fd.ctx),
            a_tilde: fd.a_tilde.to_codes(),
            p: fd.p.iter().map(|m| m.to_codes()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaJson {
    pub closed_orbits: CycleSet,
    pub cross_check: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointJson {
    pub pfss_fixed_dim: usize,
    pub fixed_points_in_a: bool,
    pub pfss_to_lfss: bool,
    pub lfss_fixed_dim: usize,
    pub lfss_to_pfss: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub schema: u32,
    pub field: FieldSpec,
    pub dim: usize,
    pub period: usize,
    pub nonsingular: bool,
    pub monodromy: MatrixJson,
    pub subspace_a: SubspaceJson,
    pub van_dooren: bool,
    pub root: Option<RootJson>,
    pub floquet: Option<FloquetJson>,
    pub lfss_cycle_set: Option<CycleSet>,
    pub period_histogram: Option<PeriodHistogram>,
    pub closed_orbits: Option<CycleSet>,
    pub formula: Option<FormulaJson>,
    pub coprime: Option<CoprimeReport>,
    pub fixed_points: Option<FixedPointJson>,
    pub notes: Vec<String>,
}

impl AnalysisJson {
    pub fn of(a: &Analysis) -> Self {
        let sys = &a.system;
        AnalysisJson {
            schema: SCHEMA,
            field: FieldSpec::of(sys.ctx()),
            dim: sys.dim(),
            period: sys.period(),
            nonsingular: a.nonsingular,
            monodromy: a.monodromy.to_codes(),
            subspace_a: SubspaceJson {
                dim: a.subspace_a.len(),
                basis: a.subspace_a.iter().map(|v| codes(v)).collect(),
            },
            van_dooren: a.van_dooren,
            root: a.root.as_ref().map(RootJson::of),
            floquet: a.floquet.as_ref().map(FloquetJson::of),
            lfss_cycle_set: a.lfss_cycle_set.clone(),
            period_histogram: a.orbits.as_ref().map(|o| o.histogram.clone()),
            closed_orbits: a.orbits.as_ref().map(|o| o.closed_orbits.clone()),
            formula: a.orbits.as_ref().and_then(|o| {
                o.formula.as_ref().map(|f| FormulaJson {
                    closed_orbits: f.closed_orbits.clone(),
                    cross_check: f.cross_check,
                })
            }),
            coprime: a.coprime.clone(),
            fixed_points: a.fixed_points.as_ref().map(|f| FixedPointJson {
                pfss_fixed_dim: f.pfss_fixed_dim,
                fixed_points_in_a: f.fixed_points_in_a,
                pfss_to_lfss: f.pfss_to_lfss,
                lfss_fixed_dim: f.lfss_fixed_dim,
                lfss_to_pfss: f.lfss_to_pfss,
            }),
            notes: a.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub x0: Vec<u64>,
    pub length: u128,
    pub classification: String,
    pub lfss_period: u128,
    pub bound: u128,
}

impl OrbitJson {
    pub fn of(x0: &[FieldElement], o: &OrbitLength) -> Self {
        OrbitJson {
            x0: codes(x0),
            length: o.length,
            classification: o.classification.as_str().into(),
            lfss_period: o.lfss_period,
            bound: o.bound,
        }
    }

    pub fn classification(&self) -> Option<Classification> {
        match self.classification.as_str() {
            "exact" => Some(Classification::Exact),
            "resolved_by_oracle" => Some(Classification::ResolvedByOracle),
            _ => None,
        }
    }
}

// ---- text rendering ----

pub fn render_matrix(ctx: &FieldCtx, m: &FFMatrix, indent: &str) -> String {
    let cells: Vec<Vec<String>> = m
        .row_iter()
        .map(|r| r.iter().map(|&x| ctx.format_element(x)).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(1))
        .collect();
    cells
        .iter()
        .map(|r| {
            let body = r
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ");
            format!("{indent}[ {body} ]\n")
        })
        .collect()
}

pub fn render_vector(ctx: &FieldCtx, v: &[FieldElement]) -> String {
    let body = v.iter().map(|&x| ctx.format_element(x)).collect::<Vec<_>>().join(", ");
    format!("[{body}]")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_root(rr: &RootResult) -> String {
    let mut s = String::new();
    match rr {
        RootResult::Root { root, method } => {
            s.push_str(&format!(
                "root: found ({}) over {}\n",
                method.as_str(),
                root.ctx().describe()
            ));
            s.push_str(&render_matrix(root.ctx(), root, "  "));
        }
        RootResult::NoRoot { certificate: c } => {
            s.push_str("root: none in any extension\n");
            s.push_str(&format!(
                "  nonderogatory: {}, p | N: {} (p = {}, N = {}), largest Jordan block: {}\n",
                yes_no(c.minpoly_equals_charpoly),
                yes_no(c.p_divides_n),
                c.characteristic,
                c.n,
                c.max_block
            ));
        }
        RootResult::Undetermined { reason } => s.push_str(&format!("root: undetermined ({reason})\n")),
    }
    s
}

/// Human-readable report. The field tower is printed once in the header;
/// later matrices use polynomial notation in their own field.
pub fn render_analysis(a: &Analysis) -> String {
    let sys = &a.system;
    let ctx = sys.ctx();
    let mut s = String::new();
    s.push_str(&format!("field: {}\n", ctx.describe()));
    if let Some(fd) = &a.floquet {
        if fd.ctx != *ctx {
            s.push_str(&format!("Floquet field: {}\n", fd.ctx.describe()));
        }
    }
    s.push_str(&format!("dimension: {}, period: {}\n", sys.dim(), sys.period()));
    s.push_str(&format!("non-singular: {}\n", yes_no(a.nonsingular)));
    s.push_str("monodromy:\n");
    s.push_str(&render_matrix(ctx, &a.monodromy, "  "));
    if a.subspace_a.is_empty() {
        s.push_str("subspace A: {0}\n");
    } else {
        let basis = a
            .subspace_a
            .iter()
            .map(|v| render_vector(ctx, v))
            .collect::<Vec<_>>()
            .join(", ");
        s.push_str(&format!("subspace A: span{{{basis}}} (dim {})\n", a.subspace_a.len()));
    }
    s.push_str(&format!(
        "rank condition (real-field Floquet): {}\n",
        yes_no(a.van_dooren)
    ));
    if let Some(rr) = &a.root {
        s.push_str(&render_root(rr));
    }
    if let Some(fd) = &a.floquet {
        for (k, p) in fd.p.iter().enumerate().skip(1) {
            s.push_str(&format!("P({k}):\n"));
            s.push_str(&render_matrix(&fd.ctx, p, "  "));
        }
    }
    if let Some(cs) = &a.lfss_cycle_set {
        s.push_str(&format!("equivalent LFSS cycle set: {{{}}}\n", cs.render()));
    }
    if let Some(o) = &a.orbits {
        s.push_str(&format!("period histogram: {}\n", o.histogram.render()));
        s.push_str(&format!(
            "initial conditions per period: {{{}}}\n",
            CycleSet::from_pairs(&o.histogram.iter().collect::<Vec<_>>()).render()
        ));
        s.push_str(&format!("closed orbits: {{{}}}\n", o.closed_orbits.render()));
        if let Some(f) = &o.formula {
            let check = match f.cross_check {
                Some(true) => "agrees with enumeration",
                Some(false) => "DISAGREES with enumeration",
                None => "not cross-checked",
            };
            s.push_str(&format!(
                "closed orbits from the LFSS cycle set: {{{}}} ({check})\n",
                f.closed_orbits.render()
            ));
        }
    }
    if let Some(c) = &a.coprime {
        s.push_str(&format!(
            "coprimality checks over {} states: {}\n",
            c.states_checked,
            if c.passed() { "pass" } else { "FAIL" }
        ));
    }
    if let Some(f) = &a.fixed_points {
        s.push_str(&format!(
            "fixed points: dim {}, in A: {}; LFSS fixed space dim {}; period lemmas: {}\n",
            f.pfss_fixed_dim,
            yes_no(f.fixed_points_in_a),
            f.lfss_fixed_dim,
            if f.passed() { "hold" } else { "FAIL" }
        ));
    }
    for n in &a.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}
