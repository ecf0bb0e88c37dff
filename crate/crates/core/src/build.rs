//! The non-split extension `0 → U → Ũ → K → 0` built from the degree-`p`
//! symmetric power, together with everything derived from it: the
//! tensor-kill witness, the obstruction module `X = U* ⊕ Ũ ⊕ Ũ ⊕ Ũ`, the
//! quadratic example for `p = n = 2` and the determinant identity demo.
//!
//! Notation: `V = S^p(K^n)` with `N = dim V`, `W = ⟨x_1^p, …, x_n^p⟩ ≅`
//! Frobenius twist, `U ⊂ Hom(V, W)` the maps vanishing on `W`, and
//! `ι = J = (I_n | 0)`. Coordinates on `U` are the last `N − n` columns of
//! the `n × N` matrix, row-major.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coh::{cocycle_from_extension, is_split, push_class, tensor_with_invariant, Cocycle, NonSplitCertificate, SplitVerdict, H1};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::grp::{HypothesisCheck, MatrixGroup};
use crate::linalg::{kron_apply, Matrix};
use crate::poly::{Monomial, Polynomial};
use crate::rep::{digits, find_intertwiner, is_intertwiner, linear_combination, GModule, EXHAUSTIVE_LIMIT};

/// Above this `dim W · dim U` the canonical witness replaces the linear solve.
pub const WITNESS_SOLVE_LIMIT: usize = 500;

#[derive(Debug, Clone)]
pub struct NonsplitConstruction {
    pub group: Arc<MatrixGroup>,
    pub hypothesis: HypothesisCheck,
    pub basis: Vec<Monomial>,
    pub v: GModule,
    pub w: GModule,
    pub u: GModule,
    pub u_tilde: GModule,
    /// `(I_n | 0)`
    pub iota: Matrix,
    /// `g_σ = (σ−1)ι` in U coordinates
    pub g: Cocycle,
    pub certificate: NonSplitCertificate,
    pub h1: H1,
    pub class: Vec<u32>,
}

impl NonsplitConstruction {
    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn big_n(&self) -> usize {
        self.basis.len()
    }
}

/// `f_p(σ)·J·A_{σ⁻¹} − J` as an `n × N` matrix.
pub fn cocycle_formula(frob_sigma: &Matrix, v_inv: &Matrix) -> Result<Matrix> {
    let n = frob_sigma.rows();
    let big = v_inv.rows();
    let f = frob_sigma.field();
    let j = Matrix::identity(f, n).hstack(&Matrix::zeros(f, n, big - n))?;
    frob_sigma.mul(&j)?.mul(v_inv)?.sub(&j)
}

/// Action on U: `Z ↦ f_p(σ)·Z·D_{σ⁻¹}` where `D` is the lower-right block of
/// the symmetric power action, i.e. `f_p(σ) ⊗ D_{σ⁻¹}ᵀ`.
pub fn u_action_formula(frob_sigma: &Matrix, v_inv: &Matrix) -> Result<Matrix> {
    let n = frob_sigma.rows();
    let big = v_inv.rows();
    frob_sigma.kron(&v_inv.submatrix(n..big, n..big).transpose())
}

fn violation(what: &str, group: &MatrixGroup, id: usize) -> Error {
    Error::TheoremViolation(format!("{what} at element {id}: {:?}", group.element(id)))
}

/// Builds the sequence and certifies that it does not split. The group must
/// satisfy the hypothesis of the construction; a split verdict afterwards is
/// reported as a theorem violation.
pub fn build_nonsplit_sequence(group: &Arc<MatrixGroup>) -> Result<NonsplitConstruction> {
    let hypothesis = group.nonsplit_hypothesis();
    if !hypothesis.satisfied {
        return Err(Error::HypothesisNotSatisfied(hypothesis.detail));
    }
    let f = group.field().clone();
    let p = f.characteristic();
    let n = group.n();
    let (v, basis) = GModule::sym_power(group, p)?;
    let big = basis.len();
    let w = GModule::frobenius_twist(group);
    for id in 0..group.order() {
        let a = v.action(id);
        if a.submatrix(0..n, 0..n) != *w.action(id) || !a.submatrix(n..big, 0..n).is_zero() {
            return Err(violation("symmetric power lacks the Frobenius block form", group, id));
        }
    }

    let hom = GModule::hom(&v, &w)?;
    let e = |k: usize| {
        let mut x = vec![0; n * big];
        x[k] = 1;
        x
    };
    let mut cols: Vec<Vec<u32>> = (0..n).flat_map(|i| (n..big).map(move |j| i * big + j)).map(e).collect();
    let u = hom.submodule(&Matrix::from_columns(&f, n * big, &cols)?)?.with_recipe(format!("hom(sym^{p},frob) | restrict U"));
    let mut iota_vec = vec![0; n * big];
    for i in 0..n {
        iota_vec[i * big + i] = 1;
    }
    cols.push(iota_vec);
    let u_tilde = hom.submodule(&Matrix::from_columns(&f, n * big, &cols)?)?.with_recipe(format!("hom(sym^{p},frob) | restrict U+iota"));

    let du = u.dim();
    let embedding = Matrix::identity(&f, du).vstack(&Matrix::zeros(&f, 1, du))?;
    let mut pi = vec![0; du + 1];
    pi[du] = 1;
    let g = cocycle_from_extension(&u, &u_tilde, &embedding, &pi, &pi)?;

    for id in 0..group.order() {
        let inv = v.action(group.inverse_id(id));
        if u_action_formula(w.action(id), inv)? != *u.action(id) {
            return Err(violation("U action differs from f_p(σ)·Z·D_{σ⁻¹}", group, id));
        }
        let full = cocycle_formula(w.action(id), inv)?;
        if !full.submatrix(0..n, 0..n).is_zero() || full.submatrix(0..n, n..big).data() != g.value(id) {
            return Err(violation("(σ−1)ι differs from f_p(σ)JA_{σ⁻¹} − J", group, id));
        }
    }

    let certificate = match is_split(&g)? {
        SplitVerdict::NonSplit(c) => c,
        SplitVerdict::Split { u: witness, .. } => {
            return Err(Error::TheoremViolation(format!(
                "sequence splits although the hypothesis holds ({}); u = {witness:?}",
                hypothesis.detail
            )))
        }
    };
    let h1 = H1::compute(&u)?;
    let class = h1.class_of(&g)?;
    if class.iter().all(|&x| x == 0) {
        return Err(Error::TheoremViolation("split test says non-split but the H¹ class is zero".into()));
    }
    let iota = Matrix::identity(&f, n).hstack(&Matrix::zeros(&f, n, big - n))?;
    Ok(NonsplitConstruction { group: group.clone(), hypothesis, basis, v, w, u, u_tilde, iota, g, certificate, h1, class })
}

/// One row of the split system for an element `[[a,a+1],[a+1,a]] ⊕ I` in
/// characteristic 2: the row for the first U coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstRowEquation {
    pub a: u32,
    pub element: usize,
    /// coefficients of the U unknowns
    pub coefficients: Vec<u32>,
    pub rhs: u32,
}

/// The first-row equations of `(σ−1)Z = g_σ` for every pattern element.
pub fn first_row_equations(c: &NonsplitConstruction) -> Result<Vec<FirstRowEquation>> {
    let group = &c.group;
    let f = group.field();
    let mut out = Vec::new();
    for &a in &c.hypothesis.parameters {
        let a1 = f.add(a, 1);
        let block = Matrix::from_rows(f, &[vec![a, a1], vec![a1, a]])?;
        let sigma = crate::grp::embed_block(f, &block, group.n());
        let Some(id) = group.index_of(&sigma) else { continue };
        let (sys, rhs) = crate::coh::split_system(&c.g, &[id])?;
        out.push(FirstRowEquation { a, element: id, coefficients: sys.row(0).to_vec(), rhs: rhs[0] });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessMethod {
    Solve,
    Canonical,
}

/// `W = Ũ*`, `w = π` and `u ∈ W ⊗ U` with `(σ−1)u = w ⊗ g_σ`.
#[derive(Debug, Clone)]
pub struct TensorKillWitness {
    pub w_module: GModule,
    pub w: Vec<u32>,
    pub u: Vec<u32>,
    pub method: WitnessMethod,
    pub checked: usize,
}

/// Checks `(σ−1)u = w ⊗ g_σ` on every element without forming `W ⊗ U`.
pub fn check_tensor_witness(w_module: &GModule, g: &Cocycle, w: &[u32], u: &[u32]) -> Result<usize> {
    let f = w_module.group().field();
    let group = w_module.group();
    for id in 0..group.order() {
        let lhs = kron_apply(w_module.action(id), g.module().action(id), u)?;
        let gv = g.value(id);
        for (i, &wi) in w.iter().enumerate() {
            for (j, &gj) in gv.iter().enumerate() {
                let k = i * gv.len() + j;
                if f.sub(lhs[k], u[k]) != f.mul(wi, gj) {
                    return Err(Error::WitnessNotFound(format!("(σ−1)u ≠ w⊗g_σ at element {id}, coordinate {k}")));
                }
            }
        }
    }
    Ok(group.order())
}

/// Solves for the witness when `W ⊗ U` is small; otherwise uses
/// `u = −Σ_j ε_j ⊗ e_j` (minus the projection `Ũ → U`). Either way the result
/// is verified on every element.
pub fn tensor_kill_witness(c: &NonsplitConstruction) -> Result<TensorKillWitness> {
    let w_module = c.u_tilde.dual();
    let du = c.u.dim();
    let mut w = vec![0; du + 1];
    w[du] = 1;
    for (s, a) in w_module.generator_actions().enumerate() {
        if a.mul_vec(&w)? != w {
            return Err(Error::NotFixed(s));
        }
    }
    let (u, method) = if (du + 1) * du <= WITNESS_SOLVE_LIMIT {
        let t = tensor_with_invariant(&w_module, &w, &c.g)?;
        match is_split(&t)? {
            SplitVerdict::Split { u, .. } => (u, WitnessMethod::Solve),
            SplitVerdict::NonSplit(_) => return Err(Error::WitnessNotFound("w⊗g is not a coboundary".into())),
        }
    } else {
        let f = c.group.field();
        let mut u = vec![0; (du + 1) * du];
        for j in 0..du {
            u[j * du + j] = f.neg(1);
        }
        (u, WitnessMethod::Canonical)
    };
    let checked = check_tensor_witness(&w_module, &c.g, &w, &u)?;
    Ok(TensorKillWitness { w_module, w, u, method, checked })
}

#[derive(Debug, Clone)]
pub struct ObstructionModule {
    pub x: GModule,
    pub components: Vec<String>,
    pub formula_dim: usize,
    /// `dual(dual(Ũ)) = Ũ` entrywise
    pub double_dual_equal: bool,
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `4n(C(n+p−1, p) − n) + 3`.
pub fn obstruction_dim_formula(n: usize, p: u32) -> usize {
    let p = p as usize;
    4 * n * (binom(n + p - 1, p) - n) + 3
}

pub fn build_obstruction_module(c: &NonsplitConstruction) -> Result<ObstructionModule> {
    let ud = c.u.dual();
    let x = GModule::direct_sum(&[&ud, &c.u_tilde, &c.u_tilde, &c.u_tilde])?;
    let formula_dim = obstruction_dim_formula(c.n(), c.group.field().characteristic());
    if x.dim() != formula_dim || x.dim() != 4 * c.u.dim() + 3 {
        return Err(Error::TheoremViolation(format!("dim X = {} but the formula gives {formula_dim}", x.dim())));
    }
    let components =
        vec![ud.recipe().to_string(), c.u_tilde.recipe().to_string(), c.u_tilde.recipe().to_string(), c.u_tilde.recipe().to_string()];
    let double_dual_equal = c.u_tilde.dual().dual().actions() == c.u_tilde.actions();
    Ok(ObstructionModule { x, components, formula_dim, double_dual_equal })
}

/// How the quadratic example compares with the main construction.
#[derive(Debug, Clone)]
pub struct ClassComparison {
    pub space_dim: usize,
    pub exhaustive: bool,
    pub tried: usize,
    /// `T` with `U(σ)·T = T·U_quad(σ)`
    pub intertwiner: Option<Matrix>,
    /// `λ ≠ 0` and `v` with `T·g_quad − λ·g = (σ−1)v`
    pub lambda: Option<u32>,
    pub v: Option<Vec<u32>>,
}

impl ClassComparison {
    pub fn modules_isomorphic(&self) -> bool {
        self.intertwiner.is_some()
    }

    pub fn classes_match(&self) -> bool {
        self.lambda.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct QuadraticExample {
    pub group: Arc<MatrixGroup>,
    pub hypothesis: HypothesisCheck,
    pub v: GModule,
    pub u: GModule,
    pub u_tilde: GModule,
    /// `g_σ = (σ−1)xy` in the coordinates `(x², y²)`
    pub g: Cocycle,
    pub verdict: SplitVerdict,
    pub comparison: Option<ClassComparison>,
}

/// `λ ≠ 0` and `v` with `pushed − λ·target = (σ−1)v`, trying `λ` in code order.
fn match_classes(pushed: &Cocycle, target: &Cocycle) -> Result<Option<(u32, Vec<u32>)>> {
    let f = target.module().group().field().clone();
    for lambda in 1..f.order() {
        let diff = pushed.add(&target.scale(f.neg(lambda)))?;
        if let SplitVerdict::Split { u, .. } = is_split(&diff)? {
            return Ok(Some((lambda, u)));
        }
    }
    Ok(None)
}

/// `U = ⟨x², y²⟩ ⊂ Ũ = ⟨x², y², xy⟩` with `π(ax² + by² + cxy) = c`, for a
/// group of 2×2 matrices in characteristic 2. When `construction` is given,
/// the example is compared with it: first as modules, then as classes.
pub fn quadratic_example(group: &Arc<MatrixGroup>, construction: Option<&NonsplitConstruction>, seed: u64) -> Result<QuadraticExample> {
    let f = group.field().clone();
    if f.characteristic() != 2 || group.n() != 2 {
        return Err(Error::HypothesisNotSatisfied(format!(
            "the quadratic example needs p = n = 2, got p = {}, n = {}",
            f.characteristic(),
            group.n()
        )));
    }
    let (v, _) = GModule::sym_power(group, 2)?;
    let e = |i: usize| {
        let mut x = vec![0; 3];
        x[i] = 1;
        x
    };
    let u = v.submodule(&Matrix::from_columns(&f, 3, &[e(0), e(1)])?)?.with_recipe("sym^2 | <x^2,y^2>");
    let u_tilde = v.submodule(&Matrix::from_columns(&f, 3, &[e(0), e(1), e(2)])?)?.with_recipe("sym^2 | <x^2,y^2,xy>");
    let embedding = Matrix::from_columns(&f, 3, &[e(0), e(1)])?;
    let g = cocycle_from_extension(&u, &u_tilde, &embedding, &e(2), &e(2))?;
    let verdict = is_split(&g)?;
    let comparison = match construction {
        Some(c) => Some(compare_with(&u, &g, c, seed)?),
        None => None,
    };
    Ok(QuadraticExample { group: group.clone(), hypothesis: group.nonsplit_hypothesis(), v, u, u_tilde, g, verdict, comparison })
}

fn compare_with(u: &GModule, g: &Cocycle, c: &NonsplitConstruction, seed: u64) -> Result<ClassComparison> {
    let search = find_intertwiner(u, &c.u, seed)?;
    let mut out = ClassComparison {
        space_dim: search.space_dim,
        exhaustive: search.exhaustive,
        tried: search.tried,
        intertwiner: search.found.clone(),
        lambda: None,
        v: None,
    };
    let Some(first) = search.found else { return Ok(out) };
    let attempt = |t: &Matrix| -> Result<Option<(u32, Vec<u32>)>> { match_classes(&push_class(g, t, &c.u)?, &c.g) };
    if let Some((lambda, v)) = attempt(&first)? {
        out.lambda = Some(lambda);
        out.v = Some(v);
        return Ok(out);
    }
    // another isomorphism may carry the class; walk the whole space if small
    let q = c.group.field().order() as u64;
    let Some(total) = q.checked_pow(search.space_dim as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT) else {
        return Ok(out);
    };
    for idx in 1..total {
        let t = linear_combination(&search.basis, &digits(idx, q, search.space_dim));
        if t.rank() < t.rows() {
            continue;
        }
        if let Some((lambda, v)) = attempt(&t)? {
            out.intertwiner = Some(t);
            out.lambda = Some(lambda);
            out.v = Some(v);
            break;
        }
    }
    Ok(out)
}

impl QuadraticExample {
    /// Re-checks the recorded comparison on every element.
    pub fn comparison_holds(&self, c: &NonsplitConstruction) -> bool {
        let Some(cmp) = &self.comparison else { return false };
        let (Some(t), Some(lambda), Some(v)) = (&cmp.intertwiner, cmp.lambda, &cmp.v) else { return false };
        if !is_intertwiner(t, &self.u, &c.u) || t.rank() != t.rows() {
            return false;
        }
        let f = c.group.field().clone();
        let Ok(pushed) = push_class(&self.g, t, &c.u) else { return false };
        let Ok(cob) = Cocycle::coboundary(&c.u, v) else { return false };
        (0..c.group.order()).all(|id| {
            pushed.value(id).iter().zip(c.g.value(id)).map(|(&x, &y)| f.sub(x, f.mul(lambda, y))).eq(cob.value(id).iter().copied())
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DemoCase {
    pub label: String,
    pub trials: usize,
    pub all_zero: bool,
}

fn random_poly(f: &Field, rng: &mut ChaCha8Rng, max_degree: u32) -> Polynomial {
    let mut acc = Polynomial::zero(f, 3);
    for a in 0..=max_degree {
        for b in 0..=max_degree - a {
            for c in 0..=max_degree - a - b {
                let coef = rng.random_range(0..f.order());
                if coef != 0 {
                    let t = Polynomial::term(f, Monomial(vec![a, b, c]), coef);
                    acc = acc.add(&t).expect("same ring");
                }
            }
        }
    }
    acc
}

/// Evaluates `u23·a1 − u13·a2 + u12·a3` on random and structured triples.
pub fn determinant_identity_demo(seed: u64) -> Result<Vec<DemoCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (p, k, deg, trials) in [(2, 1, 2, 100), (3, 1, 2, 100), (2, 2, 3, 20)] {
        let f = Field::new(p, k, None)?;
        let mut all_zero = true;
        for _ in 0..trials {
            let a = [0, 1, 2].map(|_| random_poly(&f, &mut rng, deg));
            let b = [0, 1, 2].map(|_| random_poly(&f, &mut rng, deg));
            all_zero &= crate::poly::det3_identity(&a, &b)?.is_zero();
        }
        out.push(DemoCase { label: format!("random degree <= {deg} over GF({})", f.order()), trials, all_zero });
    }
    let f = Field::prime(2)?;
    let a = [0, 1, 2].map(|i| Polynomial::var(&f, 3, i));
    let b = [0, 1, 2].map(|_| Polynomial::constant(&f, 3, 1));
    out.push(DemoCase { label: "a = (x1,x2,x3), b = (1,1,1)".into(), trials: 1, all_zero: crate::poly::det3_identity(&a, &b)?.is_zero() });
    Ok(out)
}

/// Everything derived from one group.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub construction: NonsplitConstruction,
    pub witness: TensorKillWitness,
    pub obstruction: ObstructionModule,
    pub quadratic: Option<QuadraticExample>,
}

pub fn run_pipeline(group: &Arc<MatrixGroup>, seed: u64) -> Result<Pipeline> {
    let construction = build_nonsplit_sequence(group)?;
    let witness = tensor_kill_witness(&construction)?;
    let obstruction = build_obstruction_module(&construction)?;
    let quadratic = if group.field().characteristic() == 2 && group.n() == 2 {
        Some(quadratic_example(group, Some(&construction), seed)?)
    } else {
        None
    };
    Ok(Pipeline { construction, witness, obstruction, quadratic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{family_a_full, DEFAULT_ORDER_CAP};

    fn family(p: u32, k: u32, n: usize) -> Arc<MatrixGroup> {
        let f = Field::new(p, k, None).unwrap();
        Arc::new(family_a_full(&f, n, DEFAULT_ORDER_CAP).unwrap())
    }

    #[test]
    fn dims_of_the_two_small_cases() {
        let c = build_nonsplit_sequence(&family(2, 2, 2)).unwrap();
        assert_eq!((c.v.dim(), c.w.dim(), c.u.dim(), c.u_tilde.dim()), (3, 2, 2, 3));
        let c = build_nonsplit_sequence(&family(3, 1, 2)).unwrap();
        assert_eq!((c.v.dim(), c.w.dim(), c.u.dim(), c.u_tilde.dim()), (4, 2, 4, 5));
    }

    #[test]
    fn gf2_fails_the_hypothesis() {
        let err = build_nonsplit_sequence(&family(2, 1, 2)).unwrap_err();
        assert!(matches!(err, Error::HypothesisNotSatisfied(_)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn first_rows_match_the_hand_computation() {
        let c = build_nonsplit_sequence(&family(2, 2, 2)).unwrap();
        let f = c.group.field().clone();
        let rows = first_row_equations(&c).unwrap();
        assert_eq!(rows.len(), 4);
        for r in rows {
            let a2 = f.mul(r.a, r.a);
            assert_eq!(r.coefficients, vec![f.add(a2, 1); 2]);
            assert_eq!(r.rhs, f.add(a2, r.a));
        }
    }

    #[test]
    fn witness_and_obstruction() {
        for (p, k, n, x) in [(2, 2, 2, 11), (3, 1, 2, 19)] {
            let c = build_nonsplit_sequence(&family(p, k, n)).unwrap();
            let wit = tensor_kill_witness(&c).unwrap();
            assert_eq!(wit.method, WitnessMethod::Solve);
            assert_eq!(wit.checked, c.group.order());
            let ob = build_obstruction_module(&c).unwrap();
            assert_eq!(ob.x.dim(), x);
            assert!(ob.double_dual_equal);
        }
        assert_eq!(obstruction_dim_formula(3, 2), 39);
    }

    #[test]
    fn canonical_witness_agrees_with_the_solver_class() {
        let c = build_nonsplit_sequence(&family(3, 1, 2)).unwrap();
        let w_module = c.u_tilde.dual();
        let du = c.u.dim();
        let mut w = vec![0; du + 1];
        w[du] = 1;
        let mut u = vec![0; (du + 1) * du];
        for j in 0..du {
            u[j * du + j] = c.group.field().neg(1);
        }
        assert_eq!(check_tensor_witness(&w_module, &c.g, &w, &u).unwrap(), 3);
    }

    #[test]
    fn quadratic_example_over_gf4() {
        let g = family(2, 2, 2);
        let c = build_nonsplit_sequence(&g).unwrap();
        let q = quadratic_example(&g, Some(&c), 0).unwrap();
        assert!(!q.verdict.is_split());
        let cmp = q.comparison.as_ref().unwrap();
        assert!(cmp.modules_isomorphic());
        assert!(cmp.classes_match());
        assert!(q.comparison_holds(&c));
    }

    #[test]
    fn quadratic_example_over_gf2_splits() {
        let q = quadratic_example(&family(2, 1, 2), None, 0).unwrap();
        assert!(q.verdict.is_split());
    }

    #[test]
    fn determinant_demo_all_zero() {
        assert!(determinant_identity_demo(0).unwrap().iter().all(|c| c.all_zero));
    }
}
