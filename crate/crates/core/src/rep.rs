//! Finite-dimensional G-modules and the constructions built from them.
//!
//! A module stores one action matrix per group element, indexed by element
//! id. Conventions:
//!
//! * dual: `σ ↦ (A_σ⁻¹)ᵀ`, so the double dual is entrywise the original;
//! * tensor: Kronecker product of actions;
//! * `hom(M, N) = N ⊗ M*`, with a linear map `B` (a `dim N × dim M` matrix)
//!   flattened row-major, so that `σ` acts by `B ↦ N_σ · B · M_σ⁻¹`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grp::MatrixGroup;
use crate::linalg::Matrix;
use crate::poly::{monomial_basis, Monomial, Polynomial};

/// Exhaustive intertwiner search is used up to this many candidates.
pub const EXHAUSTIVE_LIMIT: u64 = 4096;
/// Random samples tried when the intertwiner space is too large to exhaust.
pub const RANDOM_TRIALS: usize = 1000;

#[derive(Clone)]
pub struct GModule {
    group: Arc<MatrixGroup>,
    dim: usize,
    actions: Arc<Vec<Matrix>>,
    recipe: String,
}

impl std::fmt::Debug for GModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GModule({}, dim {})", self.recipe, self.dim)
    }
}

pub fn same_group(a: &Arc<MatrixGroup>, b: &Arc<MatrixGroup>) -> bool {
    Arc::ptr_eq(a, b) || (a.field() == b.field() && a.elements() == b.elements())
}

impl GModule {
    /// Wraps per-element action matrices after checking shapes and that the
    /// identity acts trivially.
    pub fn new(group: &Arc<MatrixGroup>, actions: Vec<Matrix>, recipe: impl Into<String>) -> Result<GModule> {
        if actions.len() != group.order() {
            return Err(Error::ShapeMismatch(format!("{} action matrices for a group of order {}", actions.len(), group.order())));
        }
        let dim = actions[0].rows();
        for a in &actions {
            if a.field() != group.field() {
                return Err(Error::MixedContexts);
            }
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::ShapeMismatch(format!("action is {}x{}, expected {dim}x{dim}", a.rows(), a.cols())));
            }
        }
        if !actions[0].is_identity() {
            return Err(Error::ShapeMismatch("identity element must act as the identity".into()));
        }
        Ok(GModule { group: group.clone(), dim, actions: Arc::new(actions), recipe: recipe.into() })
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn recipe(&self) -> &str {
        &self.recipe
    }

    pub fn with_recipe(mut self, recipe: impl Into<String>) -> Self {
        self.recipe = recipe.into();
        self
    }

    pub fn action(&self, id: usize) -> &Matrix {
        &self.actions[id]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Actions of the group generators, in generator order.
    pub fn generator_actions(&self) -> impl Iterator<Item = &Matrix> {
        self.group.generator_ids().iter().map(|&id| &self.actions[id])
    }

    fn check_group(&self, other: &GModule) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn trivial(group: &Arc<MatrixGroup>, dim: usize) -> GModule {
        let id = Matrix::identity(group.field(), dim);
        GModule { group: group.clone(), dim, actions: Arc::new(vec![id; group.order()]), recipe: format!("trivial({dim})") }
    }

    /// The defining representation.
    pub fn natural(group: &Arc<MatrixGroup>) -> GModule {
        GModule { group: group.clone(), dim: group.n(), actions: Arc::new(group.elements().to_vec()), recipe: "natural".into() }
    }

    /// One-dimensional `σ ↦ det σ`.
    pub fn determinant(group: &Arc<MatrixGroup>) -> GModule {
        let f = group.field();
        let actions = group.elements().iter().map(|e| Matrix::column(f, &[determinant(e)])).collect();
        GModule { group: group.clone(), dim: 1, actions: Arc::new(actions), recipe: "det".into() }
    }

    /// Degree-`d` homogeneous polynomials in the ordered monomial basis, with
    /// `σ` acting by linear substitution.
    pub fn sym_power(group: &Arc<MatrixGroup>, d: u32) -> Result<(GModule, Vec<Monomial>)> {
        let f = group.field();
        let basis = monomial_basis(group.n(), d, f.characteristic())?;
        let polys: Vec<Polynomial> = basis.iter().map(|m| Polynomial::term(f, m.clone(), 1)).collect();
        let mut actions = Vec::with_capacity(group.order());
        for sigma in group.elements() {
            let cols = polys.iter().map(|b| b.substitute_linear(sigma)?.coords(&basis)).collect::<Result<Vec<_>>>()?;
            actions.push(Matrix::from_columns(f, basis.len(), &cols)?);
        }
        let module = GModule::new(group, actions, format!("sym^{d}"))?;
        Ok((module, basis))
    }

    /// `σ ↦ f_p(σ)`, the entrywise Frobenius of the defining representation.
    pub fn frobenius_twist(group: &Arc<MatrixGroup>) -> GModule {
        GModule {
            group: group.clone(),
            dim: group.n(),
            actions: Arc::new(group.elements().iter().map(Matrix::frobenius).collect()),
            recipe: "frob".into(),
        }
    }

    pub fn dual(&self) -> GModule {
        let actions = (0..self.group.order()).map(|id| self.actions[self.group.inverse_id(id)].transpose()).collect();
        GModule { group: self.group.clone(), dim: self.dim, actions: Arc::new(actions), recipe: format!("dual({})", self.recipe) }
    }

    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        self.check_group(other)?;
        let actions = self.actions.iter().zip(other.actions.iter()).map(|(a, b)| a.kron(b)).collect::<Result<Vec<_>>>()?;
        Ok(GModule {
            group: self.group.clone(),
            dim: self.dim * other.dim,
            actions: Arc::new(actions),
            recipe: format!("({} ⊗ {})", self.recipe, other.recipe),
        })
    }

    /// `Hom(source, target)`, realized as `target ⊗ source*`.
    pub fn hom(source: &GModule, target: &GModule) -> Result<GModule> {
        Ok(target.tensor(&source.dual())?.with_recipe(format!("hom({},{})", source.recipe, target.recipe)))
    }

    pub fn direct_sum(parts: &[&GModule]) -> Result<GModule> {
        let first = parts.first().ok_or_else(|| Error::ShapeMismatch("empty direct sum".into()))?;
        for m in parts {
            first.check_group(m)?;
        }
        let actions = (0..first.group.order())
            .map(|id| Matrix::block_diag(&parts.iter().map(|m| &m.actions[id]).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let recipe = parts.iter().map(|m| m.recipe.as_str()).collect::<Vec<_>>().join(" ⊕ ");
        Ok(GModule { group: first.group.clone(), dim: parts.iter().map(|m| m.dim).sum(), actions: Arc::new(actions), recipe })
    }

    /// Restriction to the invariant subspace spanned by the columns of
    /// `basis` (which must be independent). The result acts on coordinates
    /// with respect to those columns.
    pub fn submodule(&self, basis: &Matrix) -> Result<GModule> {
        if basis.rows() != self.dim {
            return Err(Error::ShapeMismatch(format!("basis has {} rows, module dim {}", basis.rows(), self.dim)));
        }
        let k = basis.cols();
        if basis.rank() != k {
            return Err(Error::ShapeMismatch("submodule basis is not independent".into()));
        }
        let mut actions = Vec::with_capacity(self.group.order());
        for a in self.actions.iter() {
            let image = a.mul(basis)?;
            match crate::linalg::solve(basis, &image)? {
                crate::linalg::Solution::Consistent { particular, .. } => actions.push(particular),
                crate::linalg::Solution::Inconsistent { .. } => return Err(Error::NotSubmodule),
            }
        }
        Ok(GModule { group: self.group.clone(), dim: k, actions: Arc::new(actions), recipe: format!("sub({}; {k})", self.recipe) })
    }

    /// Basis of the fixed points, from the generators alone.
    pub fn fixed_space(&self) -> Vec<Vec<u32>> {
        let f = self.group.field();
        let id = Matrix::identity(f, self.dim);
        let mut stacked = Matrix::zeros(f, 0, self.dim);
        for a in self.generator_actions() {
            stacked = stacked.vstack(&a.sub(&id).expect("square")).expect("same width");
        }
        stacked.kernel()
    }

    /// `A_{στ} = A_σ A_τ` for every ordered pair of elements.
    pub fn is_homomorphism(&self) -> bool {
        let table = self.group.cayley_table();
        (0..self.group.order()).all(|a| {
            (0..self.group.order()).all(|b| self.actions[a].mul(&self.actions[b]).map(|m| m == self.actions[table[a][b]]).unwrap_or(false))
        })
    }
}

/// Determinant by Gaussian elimination.
pub fn determinant(m: &Matrix) -> u32 {
    let f = m.field();
    let n = m.rows();
    let mut a = m.clone();
    let mut det = 1;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&r| a.get(r, c) != 0) else {
            return 0;
        };
        if pr != c {
            for j in 0..n {
                let (x, y) = (a.get(pr, j), a.get(c, j));
                a.set(pr, j, y);
                a.set(c, j, x);
            }
            det = f.neg(det);
        }
        let piv = a.get(c, c);
        det = f.mul(det, piv);
        let inv = f.inv(piv).expect("nonzero pivot");
        for r in c + 1..n {
            let factor = f.mul(a.get(r, c), inv);
            if factor == 0 {
                continue;
            }
            for j in c..n {
                let v = f.sub(a.get(r, j), f.mul(factor, a.get(c, j)));
                a.set(r, j, v);
            }
        }
    }
    det
}

/// `T` with `N_σ · T = T · M_σ` for every element.
pub fn is_intertwiner(t: &Matrix, source: &GModule, target: &GModule) -> bool {
    if t.rows() != target.dim || t.cols() != source.dim {
        return false;
    }
    (0..source.group.order()).all(|id| {
        matches!(
            (target.action(id).mul(t), t.mul(source.action(id))),
            (Ok(l), Ok(r)) if l == r
        )
    })
}

/// Basis of `Hom_G(source, target)` as `dim target × dim source` matrices,
/// from the generator equations `N_s T − T M_s = 0`.
pub fn intertwiner_space(source: &GModule, target: &GModule) -> Result<Vec<Matrix>> {
    source.check_group(target)?;
    let f = source.group.field();
    let (m, n) = (source.dim, target.dim);
    let (im, in_) = (Matrix::identity(f, m), Matrix::identity(f, n));
    let mut system = Matrix::zeros(f, 0, m * n);
    for &id in source.group.generator_ids() {
        // row-major vec: vec(N T) = (N ⊗ I) vec T, vec(T M) = (I ⊗ Mᵀ) vec T
        let left = target.action(id).kron(&im)?;
        let right = in_.kron(&source.action(id).transpose())?;
        system = system.vstack(&left.sub(&right)?)?;
    }
    system.kernel().into_iter().map(|v| Matrix::from_codes(f, n, m, v)).collect()
}

/// `Σ c_i B_i`.
pub fn linear_combination(basis: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut acc = Matrix::zeros(basis[0].field(), basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c)).expect("same shape");
        }
    }
    acc
}

/// Outcome of an invertible-intertwiner search.
#[derive(Debug, Clone)]
pub struct IntertwinerSearch {
    /// dimension of `Hom_G(source, target)`
    pub space_dim: usize,
    pub basis: Vec<Matrix>,
    pub found: Option<Matrix>,
    /// whether every nonzero element of the space was tried
    pub exhaustive: bool,
    pub tried: usize,
}

/// Looks for a G-isomorphism `source → target`. Spaces with at most
/// [`EXHAUSTIVE_LIMIT`] elements are enumerated; larger ones are sampled
/// [`RANDOM_TRIALS`] times with a seeded generator.
pub fn find_intertwiner(source: &GModule, target: &GModule, seed: u64) -> Result<IntertwinerSearch> {
    let basis = intertwiner_space(source, target)?;
    let space_dim = basis.len();
    let mut out = IntertwinerSearch { space_dim, basis, found: None, exhaustive: false, tried: 0 };
    if space_dim == 0 || source.dim != target.dim {
        out.exhaustive = true;
        return Ok(out);
    }
    let q = source.group.field().order() as u64;
    let total = q.checked_pow(space_dim as u32);
    let invertible = |t: &Matrix| t.rank() == t.rows();
    match total {
        Some(total) if total <= EXHAUSTIVE_LIMIT => {
            out.exhaustive = true;
            for idx in 1..total {
                let coeffs = digits(idx, q, space_dim);
                let t = linear_combination(&out.basis, &coeffs);
                out.tried += 1;
                if invertible(&t) {
                    out.found = Some(t);
                    break;
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RANDOM_TRIALS {
                let coeffs: Vec<u32> = (0..space_dim).map(|_| rng.random_range(0..q as u32)).collect();
                let t = linear_combination(&out.basis, &coeffs);
                out.tried += 1;
                if invertible(&t) {
                    out.found = Some(t);
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Little-endian base-`q` digits of `idx`, padded to `len`.
pub fn digits(mut idx: u64, q: u64, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (idx % q) as u32;
            idx /= q;
            d
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::grp::{family_a_full, DEFAULT_ORDER_CAP};

    fn family(p: u32, k: u32, n: usize) -> Arc<MatrixGroup> {
        let f = Field::new(p, k, None).unwrap();
        Arc::new(family_a_full(&f, n, DEFAULT_ORDER_CAP).unwrap())
    }

    fn column_of(m: &Matrix, c: usize) -> Vec<u32> {
        m.col(c)
    }

    #[test]
    fn sym_power_columns_char_two() {
        let g = family(2, 2, 2);
        let f = g.field().clone();
        let (v, basis) = GModule::sym_power(&g, 2).unwrap();
        assert_eq!(basis.len(), 3);
        for a in f.codes() {
            let a1 = f.add(a, 1);
            let sigma_inv = Matrix::from_rows(&f, &[vec![a, a1], vec![a1, a]]).unwrap();
            let id = g.index_of(&sigma_inv).unwrap();
            let c = f.add(f.mul(a, a), a);
            assert_eq!(column_of(v.action(id), 2), vec![c, c, 1]);
        }
        assert!(v.action(0).is_identity());
    }

    #[test]
    fn sym_power_columns_char_three() {
        let g = family(3, 1, 2);
        let f = g.field().clone();
        let (v, _) = GModule::sym_power(&g, 3).unwrap();
        let id = g.index_of(&Matrix::from_ints(&f, &[&[1, -1], &[0, 1]])).unwrap();
        let a = v.action(id);
        let col = |vals: &[i64]| vals.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
        assert_eq!(column_of(a, 2), col(&[-1, 0, 1, 0]));
        assert_eq!(column_of(a, 3), col(&[1, 0, -2, 1]));
    }

    #[test]
    fn frobenius_block_of_sym_power() {
        for (p, k, n) in [(2, 2, 2), (3, 1, 2), (2, 2, 3), (3, 2, 2)] {
            let g = family(p, k, n);
            let (v, basis) = GModule::sym_power(&g, p).unwrap();
            let w = GModule::frobenius_twist(&g);
            let big = basis.len();
            for id in 0..g.order() {
                assert_eq!(v.action(id).submatrix(0..n, 0..n), *w.action(id));
                assert!(v.action(id).submatrix(n..big, 0..n).is_zero());
            }
        }
        // prime-field group: Frobenius is the identity map
        let g = family(3, 1, 2);
        let w = GModule::frobenius_twist(&g);
        assert_eq!(w.actions(), g.elements());
    }

    #[test]
    fn dual_tensor_hom() {
        let g = family(2, 2, 2);
        let (v, _) = GModule::sym_power(&g, 2).unwrap();
        let t = GModule::trivial(&g, 2);
        assert_eq!(t.dual().actions(), t.actions());
        assert_eq!(v.dual().dual().actions(), v.actions());
        let one = GModule::trivial(&g, 1);
        assert_eq!(GModule::hom(&v, &one).unwrap().actions(), v.dual().actions());
        let w = GModule::frobenius_twist(&g);
        assert_eq!(v.tensor(&w).unwrap().dim(), 6);
        // Hom action is B ↦ N_σ B M_σ⁻¹ under row-major flattening
        let h = GModule::hom(&v, &w).unwrap();
        let f = g.field().clone();
        let b = Matrix::from_codes(&f, 2, 3, vec![1, 2, 3, 0, 1, 2]).unwrap();
        for id in 0..g.order() {
            let direct = w.action(id).mul(&b).unwrap().mul(v.action(g.inverse_id(id))).unwrap();
            assert_eq!(h.action(id).mul_vec(b.data()).unwrap(), direct.data());
        }
        assert!(h.is_homomorphism());
    }

    #[test]
    fn determinant_module_is_trivial_on_family_a() {
        for (p, k) in [(2, 2), (3, 1), (3, 2)] {
            let g = family(p, k, 2);
            assert!(g.elements().iter().all(|e| determinant(e) == 1));
            let d = GModule::determinant(&g);
            assert_eq!(d.dual().actions(), GModule::trivial(&g, 1).actions());
        }
    }

    #[test]
    fn fixed_space_examples() {
        let g = family(3, 1, 2);
        assert_eq!(GModule::trivial(&g, 3).fixed_space().len(), 3);
        let (v, basis) = GModule::sym_power(&g, 3).unwrap();
        let fixed = v.fixed_space();
        // x1^3 is fixed: x1 ↦ x1 under [[1,a],[0,1]]
        let x1 = basis.iter().position(|m| m.0 == vec![3, 0]).unwrap();
        let mut e = vec![0; basis.len()];
        e[x1] = 1;
        let span = Matrix::from_columns(g.field(), basis.len(), &fixed).unwrap();
        assert_eq!(span.rank(), span.hstack(&Matrix::column(g.field(), &e)).unwrap().rank());
        for vct in &fixed {
            for id in 0..g.order() {
                assert_eq!(&v.action(id).mul_vec(vct).unwrap(), vct);
            }
        }
    }

    #[test]
    fn intertwiner_examples() {
        let g = family(2, 2, 2);
        let (v, _) = GModule::sym_power(&g, 2).unwrap();
        let s = find_intertwiner(&v, &v, 0).unwrap();
        assert!(s.found.is_some());
        assert!(s.space_dim >= 1);
        let dd = v.dual().dual();
        let s = find_intertwiner(&v, &dd, 0).unwrap();
        let t = s.found.unwrap();
        assert!(is_intertwiner(&t, &v, &dd));
        // natural vs trivial of the same dimension: no isomorphism
        let s = find_intertwiner(&GModule::natural(&g), &GModule::trivial(&g, 2), 0).unwrap();
        assert!(s.found.is_none());
    }

    #[test]
    fn submodule_and_errors() {
        let g = family(2, 2, 2);
        let f = g.field().clone();
        let (v, _) = GModule::sym_power(&g, 2).unwrap();
        let w_basis = Matrix::from_columns(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let w = v.submodule(&w_basis).unwrap();
        assert_eq!(w.actions(), GModule::frobenius_twist(&g).actions());
        let bad = Matrix::from_columns(&f, 3, &[vec![0, 0, 1]]).unwrap();
        assert_eq!(v.submodule(&bad).unwrap_err(), Error::NotSubmodule);
        let other = family(2, 2, 3);
        assert_eq!(v.tensor(&GModule::natural(&other)).unwrap_err(), Error::GroupMismatch);
    }
}
