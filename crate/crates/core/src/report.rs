//! Pipeline report: a self-contained JSON document holding the raw matrices
//! and certificates, sealed with a SHA-256 digest of its compact form.
//!
//! Field elements are written as base-`p` coefficient lists (lowest first),
//! vectors as lists of those, matrices as [`MatrixJson`]. Key order is the
//! declaration order below and never changes between runs.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::build::{first_row_equations, Pipeline, WitnessMethod};
use crate::coh::SplitVerdict;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec};
use crate::grp::Case;
use crate::job::JobSpec;
use crate::linalg::{Matrix, MatrixJson};

pub const SCHEMA: &str = "nonsplit-report/1";
pub const SPLIT_CONVENTION: &str = "(sigma - 1) u = g_sigma";
pub const CERTIFICATE_EQUATION: &str = "y.A = 0 and y.b != 0, A = stack(sigma_s - 1), b = stack(g_s) over generators s";

pub type VecJson = Vec<Vec<u32>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub job: JobSpec,
    pub field: FieldSpec,
    pub group: GroupSection,
    pub hypothesis: HypothesisSection,
    pub construction: ConstructionSection,
    pub witness: WitnessSection,
    pub obstruction: ObstructionSection,
    pub quadratic: Option<QuadraticSection>,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSection {
    pub recipe: String,
    pub n: usize,
    pub order: usize,
    pub generator_ids: Vec<usize>,
    pub elements: Vec<MatrixJson>,
    pub elements_digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisSection {
    pub case: Case,
    pub satisfied: bool,
    pub parameters: VecJson,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub v: usize,
    pub w: usize,
    pub u: usize,
    pub u_tilde: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSection {
    /// exponent vectors of the ordered monomial basis of V
    pub basis: Vec<Vec<u32>>,
    pub dims: Dims,
    pub v_recipe: String,
    pub u_recipe: String,
    pub u_tilde_recipe: String,
    /// symmetric power action, one matrix per element id
    pub v_actions: Vec<MatrixJson>,
    pub iota: MatrixJson,
    /// `g_σ = (σ−1)ι` in U coordinates, one vector per element id
    pub cocycle: Vec<VecJson>,
    pub certificate: CertificateSection,
    pub h1: H1Section,
    pub first_row_equations: Vec<FirstRowSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSection {
    pub verdict: String,
    pub convention: String,
    pub equation: String,
    pub generator_ids: Vec<usize>,
    /// digest of `[A | b]`
    pub system_digest: String,
    pub y: VecJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Section {
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
    /// H¹ complement basis in generator coordinates
    pub complement: Vec<VecJson>,
    /// coordinates of the class of `g` in `complement`
    pub class: VecJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstRowSection {
    pub a: Vec<u32>,
    pub element: usize,
    pub coefficients: VecJson,
    pub rhs: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSection {
    pub w_module: String,
    pub w: VecJson,
    pub u: VecJson,
    pub method: WitnessMethod,
    pub checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionSection {
    pub components: Vec<String>,
    pub dim: usize,
    pub formula_dim: usize,
    pub double_dual_equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSection {
    pub u_recipe: String,
    pub u_tilde_recipe: String,
    pub verdict: String,
    /// inconsistency row when non-split
    pub y: Option<VecJson>,
    /// splitting vector when split
    pub split_u: Option<VecJson>,
    pub intertwiner_space_dim: usize,
    pub intertwiner_search_exhaustive: bool,
    pub intertwiner: Option<MatrixJson>,
    pub lambda: Option<Vec<u32>>,
    pub v: Option<VecJson>,
    pub modules_isomorphic: bool,
    pub classes_match: bool,
}

pub fn vec_json(f: &Field, v: &[u32]) -> VecJson {
    v.iter().map(|&c| f.coeffs(c)).collect()
}

pub fn vec_from_json(f: &Field, v: &VecJson) -> Result<Vec<u32>> {
    v.iter().map(|c| f.from_coeffs(c)).collect()
}

/// `[A | b]` as one matrix, the object the certificate digest binds.
pub fn system_matrix(a: &Matrix, b: &[u32]) -> Result<Matrix> {
    a.hstack(&Matrix::column(a.field(), b))
}

fn verdict_name(v: &SplitVerdict) -> &'static str {
    if v.is_split() {
        "split"
    } else {
        "non_split"
    }
}

impl Report {
    pub fn from_pipeline(job: &JobSpec, pl: &Pipeline) -> Result<Report> {
        let c = &pl.construction;
        let group = &c.group;
        let f = group.field().clone();
        let (a, b) = crate::coh::split_system(&c.g, &c.certificate.generator_ids)?;
        let construction = ConstructionSection {
            basis: c.basis.iter().map(|m| m.0.clone()).collect(),
            dims: Dims { v: c.v.dim(), w: c.w.dim(), u: c.u.dim(), u_tilde: c.u_tilde.dim() },
            v_recipe: c.v.recipe().to_string(),
            u_recipe: c.u.recipe().to_string(),
            u_tilde_recipe: c.u_tilde.recipe().to_string(),
            v_actions: c.v.actions().iter().map(Matrix::to_json).collect(),
            iota: c.iota.to_json(),
            cocycle: c.g.values().iter().map(|v| vec_json(&f, v)).collect(),
            certificate: CertificateSection {
                verdict: "non_split".into(),
                convention: SPLIT_CONVENTION.into(),
                equation: CERTIFICATE_EQUATION.into(),
                generator_ids: c.certificate.generator_ids.clone(),
                system_digest: system_matrix(&a, &b)?.digest(),
                y: vec_json(&f, &c.certificate.y),
            },
            h1: H1Section {
                dim_z1: c.h1.dim_z1(),
                dim_b1: c.h1.dim_b1(),
                dim_h1: c.h1.dim(),
                complement: c.h1.complement_basis().iter().map(|v| vec_json(&f, v)).collect(),
                class: vec_json(&f, &c.class),
            },
            first_row_equations: first_row_equations(c)?
                .into_iter()
                .map(|r| FirstRowSection {
                    a: f.coeffs(r.a),
                    element: r.element,
                    coefficients: vec_json(&f, &r.coefficients),
                    rhs: f.coeffs(r.rhs),
                })
                .collect(),
        };
        let quadratic = pl.quadratic.as_ref().map(|q| {
            let cmp = q.comparison.as_ref();
            QuadraticSection {
                u_recipe: q.u.recipe().to_string(),
                u_tilde_recipe: q.u_tilde.recipe().to_string(),
                verdict: verdict_name(&q.verdict).into(),
                y: match &q.verdict {
                    SplitVerdict::NonSplit(cert) => Some(vec_json(&f, &cert.y)),
                    SplitVerdict::Split { .. } => None,
                },
                split_u: match &q.verdict {
                    SplitVerdict::Split { u, .. } => Some(vec_json(&f, u)),
                    SplitVerdict::NonSplit(_) => None,
                },
                intertwiner_space_dim: cmp.map_or(0, |c| c.space_dim),
                intertwiner_search_exhaustive: cmp.is_some_and(|c| c.exhaustive),
                intertwiner: cmp.and_then(|c| c.intertwiner.as_ref().map(Matrix::to_json)),
                lambda: cmp.and_then(|c| c.lambda.map(|l| f.coeffs(l))),
                v: cmp.and_then(|c| c.v.as_ref().map(|v| vec_json(&f, v))),
                modules_isomorphic: cmp.is_some_and(|c| c.modules_isomorphic()),
                classes_match: cmp.is_some_and(|c| c.classes_match()),
            }
        });
        // zpxzp ignores the requested n; record the size actually built
        let mut job = job.clone();
        job.n = group.n();
        let recipe = job.group.to_string();
        let mut report = Report {
            schema: SCHEMA.into(),
            job,
            field: f.spec(),
            group: GroupSection {
                recipe,
                n: group.n(),
                order: group.order(),
                generator_ids: group.generator_ids().to_vec(),
                elements: group.elements().iter().map(Matrix::to_json).collect(),
                elements_digest: group.digest(),
            },
            hypothesis: HypothesisSection {
                case: c.hypothesis.case,
                satisfied: c.hypothesis.satisfied,
                parameters: vec_json(&f, &c.hypothesis.parameters),
                detail: c.hypothesis.detail.clone(),
            },
            construction,
            witness: WitnessSection {
                w_module: pl.witness.w_module.recipe().to_string(),
                w: vec_json(&f, &pl.witness.w),
                u: vec_json(&f, &pl.witness.u),
                method: pl.witness.method,
                checked: pl.witness.checked,
            },
            obstruction: ObstructionSection {
                components: pl.obstruction.components.clone(),
                dim: pl.obstruction.x.dim(),
                formula_dim: pl.obstruction.formula_dim,
                double_dual_equal: pl.obstruction.double_dual_equal,
            },
            quadratic,
            digest: String::new(),
        };
        report.digest = body_digest(&serde_json::to_value(&report).expect("report serializes"))?;
        Ok(report)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// SHA-256 of the compact serialization with the `digest` key removed.
pub fn body_digest(value: &serde_json::Value) -> Result<String> {
    let mut body = value.as_object().ok_or_else(|| Error::CorruptReport("top level is not an object".into()))?.clone();
    body.shift_remove("digest");
    let bytes = serde_json::to_vec(&serde_json::Value::Object(body)).expect("value serializes");
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Recomputes and stores the digest of an edited report value.
pub fn reseal(value: &mut serde_json::Value) -> Result<()> {
    let d = body_digest(value)?;
    value
        .as_object_mut()
        .ok_or_else(|| Error::CorruptReport("top level is not an object".into()))?
        .insert("digest".into(), serde_json::Value::String(d));
    Ok(())
}
