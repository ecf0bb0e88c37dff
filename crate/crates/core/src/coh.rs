//! First cohomology of a finite matrix group with coefficients in a module.
//!
//! A cocycle is stored by its values on every element. Because a cocycle is
//! determined by its values on the generators, all subspace computations
//! (Z¹, B¹, class coordinates) happen in *generator coordinates*: the
//! concatenation of the values `g_s` for the generators `s` in order.
//! Sign convention for splitting: find `u` with `(σ−1)u = g_σ`.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, RowBasis, Solution};
use crate::rep::{same_group, GModule};

/// Groups up to this order have their Z¹ basis validated over all pairs.
pub const ALL_PAIRS_LIMIT: usize = 64;
/// Random combinations of the Z¹ basis checked after solving.
pub const VALIDATION_TRIALS: usize = 4;

#[derive(Clone, Debug)]
pub struct Cocycle {
    module: GModule,
    values: Vec<Vec<u32>>,
}

impl Cocycle {
    /// Wraps per-element values. Shapes are checked here; the cocycle
    /// identity is checked by [`Cocycle::check`] and by consumers.
    pub fn new(module: &GModule, values: Vec<Vec<u32>>) -> Result<Cocycle> {
        let order = module.group().order();
        if values.len() != order {
            return Err(Error::ShapeMismatch(format!("{} cocycle values for a group of order {order}", values.len())));
        }
        if values.iter().any(|v| v.len() != module.dim()) {
            return Err(Error::ShapeMismatch(format!("cocycle value length differs from module dim {}", module.dim())));
        }
        Ok(Cocycle { module: module.clone(), values })
    }

    pub fn zero(module: &GModule) -> Cocycle {
        Cocycle { module: module.clone(), values: vec![vec![0; module.dim()]; module.group().order()] }
    }

    /// `σ ↦ (σ−1)v`.
    pub fn coboundary(module: &GModule, v: &[u32]) -> Result<Cocycle> {
        let f = module.group().field().clone();
        let values = module
            .actions()
            .iter()
            .map(|a| Ok(a.mul_vec(v)?.iter().zip(v).map(|(&x, &y)| f.sub(x, y)).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cocycle { module: module.clone(), values })
    }

    /// Extends generator values along a breadth-first spanning tree using
    /// `g_{sτ} = s·g_τ + g_s`. The result is a cocycle exactly when the
    /// generator values satisfy the consistency equations of [`z1_space`].
    pub fn from_generator_values(module: &GModule, gen_values: &[u32]) -> Result<Cocycle> {
        let group = module.group();
        let d = module.dim();
        let m = group.generator_ids().len();
        if gen_values.len() != m * d {
            return Err(Error::ShapeMismatch(format!("{} generator coordinates, expected {}", gen_values.len(), m * d)));
        }
        let f = group.field().clone();
        let mut values: Vec<Option<Vec<u32>>> = vec![None; group.order()];
        values[0] = Some(vec![0; d]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for s in 0..m {
                let y = group.gen_product(s, x);
                if values[y].is_some() {
                    continue;
                }
                let gx = values[x].as_ref().expect("visited");
                let sg = module.action(group.generator_ids()[s]).mul_vec(gx)?;
                let gs = &gen_values[s * d..(s + 1) * d];
                values[y] = Some(sg.iter().zip(gs).map(|(&a, &b)| f.add(a, b)).collect());
                queue.push_back(y);
            }
        }
        Cocycle::new(module, values.into_iter().map(|v| v.expect("generators generate")).collect())
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn values(&self) -> &[Vec<u32>] {
        &self.values
    }

    pub fn value(&self, id: usize) -> &[u32] {
        &self.values[id]
    }

    /// Concatenated values on the generators.
    pub fn generator_values(&self) -> Vec<u32> {
        self.module.group().generator_ids().iter().flat_map(|&id| self.values[id].iter().copied()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|&x| x == 0))
    }

    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        if !same_group(self.module.group(), other.module.group()) || self.module.dim() != other.module.dim() {
            return Err(Error::GroupMismatch);
        }
        let f = self.module.group().field();
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()).collect();
        Ok(Cocycle { module: self.module.clone(), values })
    }

    pub fn scale(&self, c: u32) -> Cocycle {
        let f = self.module.group().field();
        let values = self.values.iter().map(|v| v.iter().map(|&x| f.mul(c, x)).collect()).collect();
        Cocycle { module: self.module.clone(), values }
    }

    /// `g_{στ} − σ g_τ − g_σ` at one pair.
    fn defect(&self, a: usize, b: usize, ab: usize) -> Vec<u32> {
        let f = self.module.group().field();
        let sg = self.module.action(a).mul_vec(&self.values[b]).expect("dims match");
        self.values[ab].iter().zip(sg.iter().zip(&self.values[a])).map(|(&x, (&y, &z))| f.sub(f.sub(x, y), z)).collect()
    }

    /// Exhaustive check of the cocycle identity over all ordered pairs.
    pub fn check(&self) -> Result<()> {
        let group = self.module.group();
        let table = group.cayley_table();
        for (a, row) in table.iter().enumerate() {
            for (b, &ab) in row.iter().enumerate() {
                if self.defect(a, b, ab).iter().any(|&x| x != 0) {
                    return Err(Error::NotACocycle(a, b));
                }
            }
        }
        Ok(())
    }

    /// Check over generators × elements (sufficient for the whole group).
    pub fn check_generating(&self) -> Result<()> {
        let group = self.module.group();
        if self.values[0].iter().any(|&x| x != 0) {
            return Err(Error::NotACocycle(0, 0));
        }
        for (s, &sid) in group.generator_ids().iter().enumerate() {
            for x in 0..group.order() {
                if self.defect(sid, x, group.gen_product(s, x)).iter().any(|&v| v != 0) {
                    return Err(Error::NotACocycle(sid, x));
                }
            }
        }
        Ok(())
    }

    pub fn is_cocycle(&self) -> bool {
        self.check().is_ok()
    }
}

/// `(σ−1)` stacked over the listed elements, with the matching cocycle
/// values as right-hand side: solutions `u` are exactly the vectors with
/// `(σ−1)u = g_σ` for those `σ`.
pub fn split_system(g: &Cocycle, element_ids: &[usize]) -> Result<(Matrix, Vec<u32>)> {
    let module = g.module();
    let f = module.group().field();
    let d = module.dim();
    let id = Matrix::identity(f, d);
    let mut a = Matrix::zeros(f, element_ids.len() * d, d);
    let mut b = Vec::with_capacity(element_ids.len() * d);
    for (k, &e) in element_ids.iter().enumerate() {
        a.paste(k * d, 0, &module.action(e).sub(&id)?);
        b.extend_from_slice(g.value(e));
    }
    Ok((a, b))
}

/// Inconsistency certificate for `(σ−1)u = g_σ` over the generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSplitCertificate {
    pub generator_ids: Vec<usize>,
    /// `y` with `y·A = 0` and `y·b ≠ 0`
    pub y: Vec<u32>,
}

#[derive(Debug, Clone)]
pub enum SplitVerdict {
    /// `(σ−1)u = g_σ` verified on `checked` elements
    Split {
        u: Vec<u32>,
        checked: usize,
    },
    NonSplit(NonSplitCertificate),
}

impl SplitVerdict {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitVerdict::Split { .. })
    }
}

/// Solves the generator system; a solution is re-verified on every element.
pub fn is_split(g: &Cocycle) -> Result<SplitVerdict> {
    let group = g.module().group();
    let gens = group.generator_ids().to_vec();
    let (a, b) = split_system(g, &gens)?;
    let f = group.field();
    match solve(&a, &Matrix::column(f, &b))? {
        Solution::Inconsistent { certificate } => Ok(SplitVerdict::NonSplit(NonSplitCertificate { generator_ids: gens, y: certificate })),
        Solution::Consistent { particular, .. } => {
            let u = particular.col(0);
            let cob = Cocycle::coboundary(g.module(), &u)?;
            for e in 0..group.order() {
                if cob.value(e) != g.value(e) {
                    return Err(Error::NotACocycle(e, e));
                }
            }
            Ok(SplitVerdict::Split { u, checked: group.order() })
        }
    }
}

/// Basis of Z¹, B¹ and a complement of B¹ in Z¹, all in generator
/// coordinates.
#[derive(Debug, Clone)]
pub struct H1 {
    module: GModule,
    z_basis: Vec<Vec<u32>>,
    b_basis: Vec<Vec<u32>>,
    complement: Vec<Vec<u32>>,
}

/// Generator-coordinate consistency system for Z¹: each generator value is
/// an unknown, every element's value is propagated along a spanning tree as
/// a linear expression, and every non-tree edge `(s, τ)` yields
/// `s·g_τ + g_s − g_{sτ} = 0`.
fn z1_constraints(module: &GModule) -> Result<Matrix> {
    let group = module.group();
    let f = group.field().clone();
    let d = module.dim();
    let m = group.generator_ids().len();
    let k = m * d;
    let mut expr: Vec<Option<Matrix>> = vec![None; group.order()];
    expr[0] = Some(Matrix::zeros(&f, d, k));
    let mut constraints = RowBasis::new(&f, k);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for s in 0..m {
            let y = group.gen_product(s, x);
            let mut e = module.action(group.generator_ids()[s]).mul(expr[x].as_ref().expect("visited"))?;
            for i in 0..d {
                let v = f.add(e.get(i, s * d + i), 1);
                e.set(i, s * d + i, v);
            }
            match &expr[y] {
                None => {
                    expr[y] = Some(e);
                    queue.push_back(y);
                }
                Some(known) => {
                    let diff = e.sub(known)?;
                    for i in 0..d {
                        constraints.insert(diff.row(i));
                    }
                }
            }
        }
    }
    Ok(constraints.to_matrix())
}

impl H1 {
    pub fn compute(module: &GModule) -> Result<H1> {
        let group = module.group();
        let f = group.field().clone();
        let d = module.dim();
        let k = group.generator_ids().len() * d;
        let z_basis = z1_constraints(module)?.kernel();

        // coboundaries: stacked (s − 1), column space
        let id = Matrix::identity(&f, d);
        let mut stacked = Matrix::zeros(&f, 0, d);
        for a in module.generator_actions() {
            stacked = stacked.vstack(&a.sub(&id)?)?;
        }
        let mut b_span = RowBasis::new(&f, k);
        let st = stacked.transpose();
        let b_basis: Vec<Vec<u32>> = (0..st.rows()).map(|r| st.row(r)).filter(|r| b_span.insert(r)).map(<[u32]>::to_vec).collect();

        let mut z_span = RowBasis::new(&f, k);
        for z in &z_basis {
            z_span.insert(z);
        }
        if !b_basis.iter().all(|b| z_span.contains(b)) {
            return Err(Error::TheoremViolation("B¹ is not contained in Z¹".into()));
        }

        let complement: Vec<Vec<u32>> = z_basis.iter().filter(|z| b_span.insert(z)).cloned().collect();

        let h = H1 { module: module.clone(), z_basis, b_basis, complement };
        h.validate()?;
        Ok(h)
    }

    /// Post-hoc check of the cocycle identity (over all pairs for small
    /// groups, otherwise generators × elements) on seeded random combinations
    /// of the Z¹ basis. A basis vector that is not a cocycle survives one
    /// trial with probability at most `1/q`.
    fn validate(&self) -> Result<()> {
        if self.z_basis.is_empty() {
            return Ok(());
        }
        let f = self.module.group().field().clone();
        let small = self.module.group().order() <= ALL_PAIRS_LIMIT;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let width = self.z_basis[0].len();
        for _ in 0..VALIDATION_TRIALS {
            let mut combo = vec![0; width];
            for z in &self.z_basis {
                let r = rng.random_range(0..f.order());
                for (c, &x) in combo.iter_mut().zip(z) {
                    *c = f.add(*c, f.mul(r, x));
                }
            }
            let c = Cocycle::from_generator_values(&self.module, &combo)?;
            let ok = if small { c.check() } else { c.check_generating() };
            if let Err(e) = ok {
                return Err(Error::TheoremViolation(format!("Z¹ basis fails the cocycle identity: {e}")));
            }
        }
        Ok(())
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn dim_z1(&self) -> usize {
        self.z_basis.len()
    }

    pub fn dim_b1(&self) -> usize {
        self.b_basis.len()
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn z1_basis(&self) -> &[Vec<u32>] {
        &self.z_basis
    }

    pub fn b1_basis(&self) -> &[Vec<u32>] {
        &self.b_basis
    }

    pub fn complement_basis(&self) -> &[Vec<u32>] {
        &self.complement
    }

    /// Coordinates of the class of `g` in the complement basis; all zero
    /// exactly when `g` is a coboundary.
    pub fn class_of(&self, g: &Cocycle) -> Result<Vec<u32>> {
        if !same_group(g.module().group(), self.module.group()) || g.module().dim() != self.module.dim() {
            return Err(Error::GroupMismatch);
        }
        g.check_generating()?;
        let f = self.module.group().field();
        let k = self.module.group().generator_ids().len() * self.module.dim();
        let mut cols: Vec<Vec<u32>> = self.b_basis.clone();
        cols.extend(self.complement.iter().cloned());
        let a = Matrix::from_columns(f, k, &cols)?;
        match solve(&a, &Matrix::column(f, &g.generator_values()))? {
            Solution::Consistent { particular, .. } => Ok((self.b_basis.len()..cols.len()).map(|i| particular.get(i, 0)).collect()),
            Solution::Inconsistent { .. } => Err(Error::TheoremViolation("cocycle outside the computed Z¹".into())),
        }
    }
}

pub fn z1_space(module: &GModule) -> Result<Vec<Cocycle>> {
    H1::compute(module)?.z_basis.iter().map(|z| Cocycle::from_generator_values(module, z)).collect()
}

pub fn b1_space(module: &GModule) -> Result<Vec<Cocycle>> {
    H1::compute(module)?.b_basis.iter().map(|b| Cocycle::from_generator_values(module, b)).collect()
}

pub fn h1_dim(module: &GModule) -> Result<usize> {
    Ok(H1::compute(module)?.dim())
}

/// `0 → V → Ṽ → K → 0` with `Ṽ = V ⊕ K` and `σ(v, λ) = (σv + λg_σ, λ)`.
#[derive(Debug, Clone)]
pub struct ExtensionClass {
    pub base: GModule,
    pub cocycle: Cocycle,
    pub total: GModule,
}

pub fn extension_from_cocycle(g: &Cocycle) -> Result<ExtensionClass> {
    g.check_generating()?;
    let base = g.module().clone();
    let d = base.dim();
    let f = base.group().field().clone();
    let actions = (0..base.group().order())
        .map(|id| {
            let mut m = Matrix::zeros(&f, d + 1, d + 1);
            m.paste(0, 0, base.action(id));
            m.paste(0, d, &Matrix::column(&f, g.value(id)));
            m.set(d, d, 1);
            m
        })
        .collect();
    let total = GModule::new(base.group(), actions, format!("ext({})", base.recipe()))?;
    Ok(ExtensionClass { base, cocycle: g.clone(), total })
}

impl ExtensionClass {
    /// Inclusion of the base as the first `dim` coordinates.
    pub fn embedding(&self) -> Matrix {
        let f = self.base.group().field();
        let d = self.base.dim();
        Matrix::identity(f, d).vstack(&Matrix::zeros(f, 1, d)).expect("same width")
    }

    /// Projection onto the last coordinate.
    pub fn projection(&self) -> Vec<u32> {
        let mut pi = vec![0; self.total.dim()];
        pi[self.base.dim()] = 1;
        pi
    }
}

/// Reads off `g_σ = (σ−1)v₀` for an extension given by a total module, an
/// embedding of `base` (columns are the images of the base vectors) and a
/// G-invariant projection `pi` with `pi(v₀) = 1`.
pub fn cocycle_from_extension(base: &GModule, total: &GModule, embedding: &Matrix, pi: &[u32], v0: &[u32]) -> Result<Cocycle> {
    if !same_group(base.group(), total.group()) {
        return Err(Error::GroupMismatch);
    }
    let f = total.group().field().clone();
    let dt = total.dim();
    if pi.len() != dt || v0.len() != dt || embedding.rows() != dt || embedding.cols() != base.dim() {
        return Err(Error::BadProjection("shapes do not match the total module".into()));
    }
    let dot = |a: &[u32], b: &[u32]| a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
    if dot(pi, v0) != 1 {
        return Err(Error::BadProjection("pi(v0) != 1".into()));
    }
    for (s, a) in total.generator_actions().enumerate() {
        if a.vec_mul(pi)? != pi {
            return Err(Error::BadProjection(format!("projection not invariant under generator {s}")));
        }
    }
    if embedding.vec_mul(pi)?.iter().any(|&x| x != 0) {
        return Err(Error::BadProjection("projection does not vanish on the embedded base".into()));
    }
    let cob = Cocycle::coboundary(total, v0)?;
    let rhs_cols: Vec<Vec<u32>> = cob.values().to_vec();
    let rhs = Matrix::from_columns(&f, dt, &rhs_cols)?;
    match solve(embedding, &rhs)? {
        Solution::Consistent { particular, .. } => {
            let values = (0..particular.cols()).map(|c| particular.col(c)).collect();
            Cocycle::new(base, values)
        }
        Solution::Inconsistent { .. } => Err(Error::BadProjection("(σ−1)v0 leaves the embedded base".into())),
    }
}

/// `σ ↦ φ(g_σ)` for a G-map `φ: M → N`.
pub fn push_class(g: &Cocycle, phi: &Matrix, target: &GModule) -> Result<Cocycle> {
    let source = g.module();
    if !same_group(source.group(), target.group()) {
        return Err(Error::GroupMismatch);
    }
    if phi.rows() != target.dim() || phi.cols() != source.dim() {
        return Err(Error::ShapeMismatch(format!("map is {}x{}, expected {}x{}", phi.rows(), phi.cols(), target.dim(), source.dim())));
    }
    for (s, &id) in source.group().generator_ids().iter().enumerate() {
        if target.action(id).mul(phi)? != phi.mul(source.action(id))? {
            return Err(Error::NotEquivariant(s));
        }
    }
    let values = g.values().iter().map(|v| phi.mul_vec(v)).collect::<Result<Vec<_>>>()?;
    Cocycle::new(target, values)
}

/// `σ ↦ w ⊗ g_σ` in `W ⊗ M` for a fixed vector `w` of `W`.
pub fn tensor_with_invariant(w_module: &GModule, w: &[u32], g: &Cocycle) -> Result<Cocycle> {
    if w.len() != w_module.dim() {
        return Err(Error::ShapeMismatch(format!("vector of length {} in a module of dim {}", w.len(), w_module.dim())));
    }
    for (s, a) in w_module.generator_actions().enumerate() {
        if a.mul_vec(w)? != w {
            return Err(Error::NotFixed(s));
        }
    }
    let module = w_module.tensor(g.module())?;
    let f = w_module.group().field().clone();
    let values =
        g.values().iter().map(|v| w.iter().flat_map(|&wi| v.iter().map(|&x| f.mul(wi, x)).collect::<Vec<_>>()).collect()).collect();
    Cocycle::new(&module, values)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf::Field;
    use crate::grp::{family_a_full, MatrixGroup, DEFAULT_ORDER_CAP};

    fn family(p: u32, k: u32, n: usize) -> Arc<MatrixGroup> {
        let f = Field::new(p, k, None).unwrap();
        Arc::new(family_a_full(&f, n, DEFAULT_ORDER_CAP).unwrap())
    }

    fn cyclic(p: u32) -> Arc<MatrixGroup> {
        let f = Field::prime(p).unwrap();
        let g = Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]);
        Arc::new(MatrixGroup::closure(&f, 2, &[g], 100).unwrap())
    }

    #[test]
    fn trivial_group_has_no_cohomology() {
        let f = Field::prime(3).unwrap();
        let g = Arc::new(MatrixGroup::closure(&f, 2, &[], 10).unwrap());
        let h = H1::compute(&GModule::trivial(&g, 2)).unwrap();
        assert_eq!((h.dim_z1(), h.dim_b1(), h.dim()), (0, 0, 0));
    }

    #[test]
    fn trivial_module_over_cyclic_group() {
        for p in [2, 3, 5] {
            let g = cyclic(p);
            let h = H1::compute(&GModule::trivial(&g, 1)).unwrap();
            assert_eq!((h.dim_z1(), h.dim_b1(), h.dim()), (1, 0, 1));
        }
    }

    #[test]
    fn zero_and_coboundaries() {
        let g = family(2, 2, 2);
        let (v, _) = GModule::sym_power(&g, 2).unwrap();
        let h = H1::compute(&v).unwrap();
        let zero = Cocycle::zero(&v);
        assert!(h.class_of(&zero).unwrap().iter().all(|&x| x == 0));
        assert!(matches!(is_split(&zero).unwrap(), SplitVerdict::Split { ref u, .. } if u.iter().all(|&x| x == 0)));
        let cob = Cocycle::coboundary(&v, &[1, 2, 3]).unwrap();
        assert!(cob.is_cocycle());
        assert!(h.class_of(&cob).unwrap().iter().all(|&x| x == 0));
        assert!(is_split(&cob).unwrap().is_split());
        assert_eq!(h.dim_b1(), v.dim() - v.fixed_space().len());
    }

    #[test]
    fn extension_roundtrip() {
        let g = cyclic(3);
        let m = GModule::natural(&g);
        let h = H1::compute(&m).unwrap();
        for z in h.z1_basis() {
            let c = Cocycle::from_generator_values(&m, z).unwrap();
            let e = extension_from_cocycle(&c).unwrap();
            assert!(e.total.is_homomorphism());
            let v0 = e.projection();
            let back = cocycle_from_extension(&m, &e.total, &e.embedding(), &e.projection(), &v0).unwrap();
            assert_eq!(back.values(), c.values());
            // another preimage of 1 changes the cocycle by a coboundary
            let v1 = vec![1, 2, 1];
            let other = cocycle_from_extension(&m, &e.total, &e.embedding(), &e.projection(), &v1).unwrap();
            assert_eq!(h.class_of(&other).unwrap(), h.class_of(&c).unwrap());
        }
    }

    #[test]
    fn bad_inputs_rejected() {
        let g = cyclic(3);
        let m = GModule::natural(&g);
        let mut values = Cocycle::zero(&m).values().to_vec();
        values[1] = vec![1, 0];
        let bad = Cocycle::new(&m, values).unwrap();
        assert!(matches!(bad.check(), Err(Error::NotACocycle(..))));
        assert!(extension_from_cocycle(&bad).is_err());
        let h = H1::compute(&m).unwrap();
        assert!(matches!(h.class_of(&bad), Err(Error::NotACocycle(..))));
        // natural module: e1 is fixed, e2 is not
        let c = Cocycle::zero(&m);
        assert_eq!(tensor_with_invariant(&m, &[0, 1], &c).unwrap_err(), Error::NotFixed(0));
        let phi = Matrix::from_ints(g.field(), &[&[0, 1], &[1, 0]]);
        assert_eq!(push_class(&c, &phi, &m).unwrap_err(), Error::NotEquivariant(0));
    }

    #[test]
    fn tensor_with_zero_vector_is_zero() {
        let g = cyclic(3);
        let m = GModule::natural(&g);
        let h = H1::compute(&m).unwrap();
        let c = Cocycle::from_generator_values(&m, &h.z1_basis()[0]).unwrap();
        let t = GModule::trivial(&g, 2);
        assert!(tensor_with_invariant(&t, &[0, 0], &c).unwrap().is_zero());
        let same = push_class(&c, &Matrix::identity(g.field(), 2), &m).unwrap();
        assert_eq!(same.values(), c.values());
    }
}
