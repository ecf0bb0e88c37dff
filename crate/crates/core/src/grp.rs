//! Finite matrix groups enumerated from generators.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec};
use crate::linalg::{Matrix, MatrixJson};

pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A finite subgroup of GL_n, with elements in breadth-first order from the
/// identity (generators tried in the given order).
#[derive(Clone)]
pub struct MatrixGroup {
    field: Field,
    n: usize,
    generators: Vec<Matrix>,
    generator_ids: Vec<usize>,
    elements: Vec<Matrix>,
    index: HashMap<Vec<u32>, usize>,
    inv: Vec<usize>,
    // gen_mul[s][x] = id of generators[s] · elements[x]
    gen_mul: Vec<Vec<usize>>,
    recipe: String,
}

impl std::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatrixGroup({}, order {}, n = {})", self.recipe, self.order(), self.n)
    }
}

/// Group file format: field, matrix size and generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpecJson {
    pub field: FieldSpec,
    pub n: usize,
    pub generators: Vec<MatrixJson>,
}

impl MatrixGroup {
    /// Breadth-first closure of `generators`; fails once more than `cap`
    /// elements have been found.
    pub fn closure(field: &Field, n: usize, generators: &[Matrix], cap: usize) -> Result<MatrixGroup> {
        for (i, g) in generators.iter().enumerate() {
            if g.field() != field {
                return Err(Error::MixedContexts);
            }
            if g.rows() != n || g.cols() != n {
                return Err(Error::ShapeMismatch(format!("generator {i} is {}x{}, expected {n}x{n}", g.rows(), g.cols())));
            }
            if g.inverse().is_err() {
                return Err(Error::SingularGenerator(i));
            }
        }
        let id = Matrix::identity(field, n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id.data().to_vec(), 0usize)]);
        let mut gen_mul: Vec<Vec<usize>> = vec![Vec::new(); generators.len()];
        let mut i = 0;
        while i < elements.len() {
            for (s, g) in generators.iter().enumerate() {
                let y = g.mul(&elements[i])?;
                let id = match index.get(y.data()) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::OrderCapExceeded(cap));
                        }
                        let j = elements.len();
                        index.insert(y.data().to_vec(), j);
                        elements.push(y);
                        j
                    }
                };
                gen_mul[s].push(id);
            }
            i += 1;
        }
        let generator_ids = generators.iter().map(|g| index[g.data()]).collect();
        let inv = elements.iter().map(|e| index[e.inverse().expect("group elements are invertible").data()]).collect();
        Ok(MatrixGroup {
            field: field.clone(),
            n,
            generators: generators.to_vec(),
            generator_ids,
            elements,
            index,
            inv,
            gen_mul,
            recipe: format!("closure({} generators)", generators.len()),
        })
    }

    pub fn with_recipe(mut self, recipe: impl Into<String>) -> Self {
        self.recipe = recipe.into();
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn recipe(&self) -> &str {
        &self.recipe
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// Element ids of the generators, in generator order.
    pub fn generator_ids(&self) -> &[usize] {
        &self.generator_ids
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &Matrix {
        &self.elements[id]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        if m.field() != &self.field {
            return None;
        }
        self.index.get(m.data()).copied()
    }

    pub fn inverse_id(&self, id: usize) -> usize {
        self.inv[id]
    }

    /// Id of `elements[a] · elements[b]`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].mul(&self.elements[b]).expect("square matrices of equal size");
        self.index[m.data()]
    }

    /// Id of `generators[s] · elements[x]`.
    pub fn gen_product(&self, s: usize, x: usize) -> usize {
        self.gen_mul[s][x]
    }

    /// Full multiplication table, `table[a][b] = id(a·b)`.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|a| (0..self.order()).map(|b| self.product(a, b)).collect()).collect()
    }

    /// Digest binding the field, matrix size and ordered element list.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(&self.field.spec()).expect("field spec serializes"));
        h.update((self.n as u64).to_le_bytes());
        for e in &self.elements {
            for &x in e.data() {
                h.update(x.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }

    pub fn from_spec_json(spec: &GroupSpecJson, cap: usize) -> Result<MatrixGroup> {
        let field = Field::from_spec(&spec.field)?;
        let gens = spec.generators.iter().map(|g| Matrix::from_json(&field, g)).collect::<Result<Vec<_>>>()?;
        Ok(MatrixGroup::closure(&field, spec.n, &gens, cap)?.with_recipe("file"))
    }

    /// Checks the preconditions of the non-split construction: in
    /// characteristic 2, at least three distinct `a` with
    /// `[[a,a+1],[a+1,a]] ⊕ I` in the group; otherwise the unipotent
    /// `[[1,1],[0,1]] ⊕ I` must be an element.
    pub fn nonsplit_hypothesis(&self) -> HypothesisCheck {
        let f = &self.field;
        let p = f.characteristic();
        if self.n < 2 {
            return HypothesisCheck {
                case: if p == 2 { Case::A } else { Case::B },
                satisfied: false,
                parameters: vec![],
                detail: format!("need n >= 2, got {}", self.n),
            };
        }
        if p == 2 {
            let mut found = BTreeSet::new();
            for e in &self.elements {
                let a = e.get(0, 0);
                if e == &embed_block(f, &swap_pattern(f, a), self.n) {
                    found.insert(a);
                }
            }
            let parameters: Vec<u32> = found.into_iter().collect();
            let satisfied = parameters.len() >= 3;
            let detail = format!("{} distinct values of a with [[a,a+1],[a+1,a]] in G (need at least 3)", parameters.len());
            HypothesisCheck { case: Case::A, satisfied, parameters, detail }
        } else {
            let u = embed_block(f, &Matrix::from_ints(f, &[&[1, 1], &[0, 1]]), self.n);
            let satisfied = self.index_of(&u).is_some();
            let detail = if satisfied { "[[1,1],[0,1]] is in G".to_string() } else { "[[1,1],[0,1]] is not in G".to_string() };
            HypothesisCheck { case: Case::B, satisfied, parameters: vec![], detail }
        }
    }
}

/// Which clause of the construction's hypothesis applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// characteristic 2
    A,
    /// odd characteristic
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub case: Case,
    pub satisfied: bool,
    /// distinct parameters `a` found (characteristic 2 only)
    pub parameters: Vec<u32>,
    pub detail: String,
}

fn swap_pattern(f: &Field, a: u32) -> Matrix {
    let a1 = f.add(a, 1);
    Matrix::from_rows(f, &[vec![a, a1], vec![a1, a]]).expect("2x2")
}

/// `m ⊕ I_{n-2}` for a 2×2 block `m`.
pub fn embed_block(f: &Field, m: &Matrix, n: usize) -> Matrix {
    if n <= m.rows() {
        return m.clone();
    }
    m.direct_sum(&Matrix::identity(f, n - m.rows())).expect("same field")
}

/// `A(a)`: `[[a+1,a],[a,a+1]]` in characteristic 2, `[[1,a],[0,1]]` otherwise.
/// Satisfies `A(a)·A(b) = A(a+b)`.
pub fn a_matrix(f: &Field, a: u32) -> Matrix {
    if f.characteristic() == 2 {
        let a1 = f.add(a, 1);
        Matrix::from_rows(f, &[vec![a1, a], vec![a, a1]]).expect("2x2")
    } else {
        Matrix::from_rows(f, &[vec![1, a], vec![0, 1]]).expect("2x2")
    }
}

/// `{A(a) ⊕ I_{n-2} : a ∈ params}` for an additive subgroup `params` of the
/// field. Generated by `A(b)` over a greedy GF(p)-basis `b` of `params`.
pub fn family_a(f: &Field, params: &[u32], n: usize, cap: usize) -> Result<MatrixGroup> {
    if n < 2 {
        return Err(Error::ShapeMismatch(format!("family A needs n >= 2, got {n}")));
    }
    let set: BTreeSet<u32> = params.iter().copied().collect();
    if !set.contains(&0) || set.iter().any(|&a| !set.contains(&f.neg(a))) {
        return Err(Error::NotAdditivelyClosed);
    }
    for &a in &set {
        for &b in &set {
            if !set.contains(&f.add(a, b)) {
                return Err(Error::NotAdditivelyClosed);
            }
        }
    }
    let p = f.characteristic();
    let mut basis = Vec::new();
    let mut span = BTreeSet::from([0u32]);
    for &a in params {
        if span.contains(&a) {
            continue;
        }
        basis.push(a);
        let old: Vec<u32> = span.iter().copied().collect();
        for s in old {
            let mut acc = s;
            for _ in 1..p {
                acc = f.add(acc, a);
                span.insert(acc);
            }
        }
    }
    let gens: Vec<Matrix> = basis.iter().map(|&b| embed_block(f, &a_matrix(f, b), n)).collect();
    let g = MatrixGroup::closure(f, n, &gens, cap)?;
    if g.order() != set.len() {
        return Err(Error::TheoremViolation(format!("family A over {} parameters closed to order {}", set.len(), g.order())));
    }
    Ok(g.with_recipe(format!("family-a(|U|={})", set.len())))
}

/// The whole field as parameter set.
pub fn family_a_full(f: &Field, n: usize, cap: usize) -> Result<MatrixGroup> {
    let params: Vec<u32> = f.codes().collect();
    family_a(f, &params, n, cap)
}

/// Block-upper-triangular 4×4 group `{[[1,a],[0,1]] ⊕ [[1,b],[0,1]]}` over
/// the prime field, isomorphic to Z_p × Z_p.
pub fn family_zp_x_zp(f: &Field, cap: usize) -> Result<MatrixGroup> {
    let p = f.characteristic();
    if p < 3 {
        return Err(Error::BadCharacteristic(p));
    }
    let u = Matrix::from_ints(f, &[&[1, 1], &[0, 1]]);
    let i2 = Matrix::identity(f, 2);
    let gens = vec![u.direct_sum(&i2)?, i2.direct_sum(&u)?];
    Ok(MatrixGroup::closure(f, 4, &gens, cap)?.with_recipe("zpxzp"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        let f3 = Field::prime(3).unwrap();
        let g = MatrixGroup::closure(&f3, 2, &[Matrix::identity(&f3, 2)], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 1);
        let u = Matrix::from_ints(&f3, &[&[1, 1], &[0, 1]]);
        let g = MatrixGroup::closure(&f3, 2, std::slice::from_ref(&u), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.element(0).is_identity());
        assert_eq!(g.generator_ids(), &[1]);
        let f4 = Field::new(2, 2, None).unwrap();
        let t = f4.generator();
        let g = MatrixGroup::closure(&f4, 2, &[a_matrix(&f4, t), a_matrix(&f4, 1)], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn closure_errors() {
        let f3 = Field::prime(3).unwrap();
        let s = Matrix::from_ints(&f3, &[&[1, 1], &[1, 1]]);
        assert_eq!(MatrixGroup::closure(&f3, 2, &[s], 10).unwrap_err(), Error::SingularGenerator(0));
        let u = Matrix::from_ints(&f3, &[&[1, 1], &[0, 1]]);
        assert_eq!(MatrixGroup::closure(&f3, 2, &[u], 2).unwrap_err(), Error::OrderCapExceeded(2));
    }

    #[test]
    fn family_examples() {
        let f3 = Field::prime(3).unwrap();
        let g = family_a_full(&f3, 2, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.index_of(&Matrix::from_ints(&f3, &[&[1, 1], &[0, 1]])).is_some());
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(family_a_full(&f4, 2, DEFAULT_ORDER_CAP).unwrap().order(), 4);
        assert_eq!(family_a(&f4, &[0], 2, DEFAULT_ORDER_CAP).unwrap().order(), 1);
        assert_eq!(family_a(&f4, &[0, 2], 2, 100).unwrap().order(), 2);
        assert_eq!(family_a(&f4, &[0, 1, 2], 2, 100).unwrap_err(), Error::NotAdditivelyClosed);
        assert_eq!(family_a(&f4, &[1], 2, 100).unwrap_err(), Error::NotAdditivelyClosed);
    }

    #[test]
    fn zp_x_zp_examples() {
        for (p, order) in [(3, 9), (5, 25)] {
            let f = Field::prime(p).unwrap();
            assert_eq!(family_zp_x_zp(&f, DEFAULT_ORDER_CAP).unwrap().order(), order);
        }
        let f2 = Field::prime(2).unwrap();
        assert_eq!(family_zp_x_zp(&f2, 100).unwrap_err(), Error::BadCharacteristic(2));
    }

    #[test]
    fn inverse_table_and_closure_idempotence() {
        let f4 = Field::new(2, 2, None).unwrap();
        let t = f4.generator();
        let d = Matrix::from_rows(&f4, &[vec![t, 0], vec![0, f4.add(t, 1)]]).unwrap();
        let u = Matrix::from_rows(&f4, &[vec![1, 1], vec![0, 1]]).unwrap();
        let g = MatrixGroup::closure(&f4, 2, &[d, u], DEFAULT_ORDER_CAP).unwrap();
        for i in 0..g.order() {
            assert!(g.element(i).mul(g.element(g.inverse_id(i))).unwrap().is_identity());
        }
        let again = MatrixGroup::closure(&f4, 2, g.elements(), DEFAULT_ORDER_CAP).unwrap();
        let a: BTreeSet<Vec<u32>> = g.elements().iter().map(|m| m.data().to_vec()).collect();
        let b: BTreeSet<Vec<u32>> = again.elements().iter().map(|m| m.data().to_vec()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn hypothesis_checks() {
        let f4 = Field::new(2, 2, None).unwrap();
        let h = family_a_full(&f4, 2, 100).unwrap().nonsplit_hypothesis();
        assert!(h.satisfied);
        assert_eq!(h.parameters.len(), 4);
        let f2 = Field::prime(2).unwrap();
        let h = family_a_full(&f2, 2, 100).unwrap().nonsplit_hypothesis();
        assert!(!h.satisfied);
        assert_eq!(h.parameters, vec![0, 1]);
        let f3 = Field::prime(3).unwrap();
        assert!(family_a_full(&f3, 3, 100).unwrap().nonsplit_hypothesis().satisfied);
        assert!(family_zp_x_zp(&f3, 100).unwrap().nonsplit_hypothesis().satisfied);
        let trivial = family_a(&f3, &[0], 2, 100).unwrap();
        assert!(!trivial.nonsplit_hypothesis().satisfied);
    }
}
