//! Multivariate polynomials over a finite field, ordered monomial bases of
//! homogeneous components, and linear substitution.
//!
//! A matrix `m` acts on variables by `x_j ↦ Σ_i m_ij x_i`, extended to an
//! algebra homomorphism. This is a left action:
//! `substitute_linear(f, a·b) = substitute_linear(substitute_linear(f, b), a)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Matrix;

/// Exponent vector. Ordered graded-lexicographically with `x1` heaviest, so
/// `x1^2 > x1x2 > x2^2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// `x_i^e` in `n` variables (0-based `i`).
    pub fn power(n: usize, i: usize, e: u32) -> Monomial {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
            any = true;
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Polynomial with nonzero coefficients stored per monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

/// One serialized term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coefficient: Vec<u32>,
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Polynomial {
        Polynomial { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: u32) -> Polynomial {
        Polynomial::term(field, Monomial(vec![0; nvars]), c)
    }

    /// `x_i` (0-based).
    pub fn var(field: &Field, nvars: usize, i: usize) -> Polynomial {
        Polynomial::term(field, Monomial::power(nvars, i, 1), 1)
    }

    pub fn term(field: &Field, m: Monomial, c: u32) -> Polynomial {
        let nvars = m.nvars();
        let mut p = Polynomial::zero(field, nvars);
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedContexts);
        }
        if self.nvars != other.nvars {
            return Err(Error::ShapeMismatch(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let v = self.field.add(self.coeff(&m), c);
        if v == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let mut out = Polynomial::zero(&self.field, self.nvars);
        for (m, &v) in &self.terms {
            out.add_term(m.clone(), self.field.mul(c, v));
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let f = &self.field;
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(Polynomial { field: f.clone(), nvars: self.nvars, terms: acc })
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::constant(&self.field, self.nvars, 1);
        for _ in 0..e {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// Replaces each `x_j` by `Σ_i m_ij x_i`.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Polynomial> {
        if m.field() != &self.field {
            return Err(Error::MixedContexts);
        }
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(Error::ShapeMismatch(format!("{}x{} matrix acting on {} variables", m.rows(), m.cols(), self.nvars)));
        }
        let n = self.nvars;
        let images: Vec<Polynomial> = (0..n)
            .map(|j| {
                let mut img = Polynomial::zero(&self.field, n);
                for i in 0..n {
                    img.add_term(Monomial::power(n, i, 1), m.get(i, j));
                }
                img
            })
            .collect();
        // cache powers of each image as they are needed
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|_| vec![Polynomial::constant(&self.field, n, 1)]).collect();
        let mut out = Polynomial::zero(&self.field, n);
        for (mono, &c) in &self.terms {
            let mut prod = Polynomial::constant(&self.field, n, c);
            for (j, &e) in mono.0.iter().enumerate() {
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul(&images[j])?;
                    powers[j].push(next);
                }
                prod = prod.mul(&powers[j][e as usize])?;
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// Coordinates against an ordered basis of monomials; fails if a term
    /// falls outside the basis.
    pub fn coords(&self, basis: &[Monomial]) -> Result<Vec<u32>> {
        let mut out = vec![0; basis.len()];
        for (m, &c) in &self.terms {
            let idx = basis.iter().position(|b| b == m).ok_or_else(|| Error::ShapeMismatch(format!("monomial {m} not in basis")))?;
            out[idx] = c;
        }
        Ok(out)
    }

    pub fn from_coords(field: &Field, basis: &[Monomial], coords: &[u32]) -> Polynomial {
        let nvars = basis.first().map_or(0, Monomial::nvars);
        let mut p = Polynomial::zero(field, nvars);
        for (m, &c) in basis.iter().zip(coords) {
            p.add_term(m.clone(), c);
        }
        p
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms().map(|(m, c)| TermJson { exponents: m.0.clone(), coefficient: self.field.coeffs(c) }).collect()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let coef = self.field.render(c);
                if m.degree() == 0 {
                    coef
                } else if c == 1 {
                    m.to_string()
                } else if self.field.degree() > 1 {
                    format!("({coef}){m}")
                } else {
                    format!("{coef}{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of degree-`d` monomials in `n` variables, `C(n+d-1, d)`.
pub fn homogeneous_dim(n: usize, d: u32) -> usize {
    binomial(n as u64 + d as u64 - 1, d as u64) as usize
}

fn all_monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Ordered basis of the degree-`d` homogeneous polynomials in `n` variables.
///
/// The first `n` entries are `x1^d, …, x_n^d`. When `d = p = 2` the next entry
/// is `x1x2`; when `d = p ≥ 3` the next two are `x1^(p-1)x2` and
/// `x1^(p-2)x2^2`. Everything else follows in descending graded-lex order.
pub fn monomial_basis(n: usize, d: u32, p: u32) -> Result<Vec<Monomial>> {
    if n < 2 {
        return Err(Error::BadDegree(format!("need at least 2 variables, got {n}")));
    }
    if d == 0 {
        return Err(Error::BadDegree("degree must be positive".into()));
    }
    let mut prefix: Vec<Monomial> = (0..n).map(|i| Monomial::power(n, i, d)).collect();
    if d == p {
        let mut two = |a: u32, b: u32| {
            let mut v = vec![0; n];
            v[0] = a;
            v[1] = b;
            prefix.push(Monomial(v));
        };
        if p == 2 {
            two(1, 1);
        } else {
            two(p - 1, 1);
            two(p - 2, 2);
        }
    }
    let rest: Vec<Monomial> = all_monomials(n, d).into_iter().filter(|m| !prefix.contains(m)).collect();
    prefix.extend(rest);
    Ok(prefix)
}

/// Returns `u23·a1 − u13·a2 + u12·a3` with `u_ij = a_i b_j − a_j b_i`; this is
/// a determinant with a repeated row and therefore always zero.
pub fn det3_identity(a: &[Polynomial; 3], b: &[Polynomial; 3]) -> Result<Polynomial> {
    let u = |i: usize, j: usize| -> Result<Polynomial> { a[i].mul(&b[j])?.sub(&a[j].mul(&b[i])?) };
    let (u12, u13, u23) = (u(0, 1)?, u(0, 2)?, u(1, 2)?);
    u23.mul(&a[0])?.sub(&u13.mul(&a[1])?)?.add(&u12.mul(&a[2])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn basis_examples() {
        assert_eq!(monomial_basis(2, 2, 2).unwrap(), vec![m(&[2, 0]), m(&[0, 2]), m(&[1, 1])]);
        assert_eq!(monomial_basis(2, 3, 3).unwrap(), vec![m(&[3, 0]), m(&[0, 3]), m(&[2, 1]), m(&[1, 2])]);
        let b = monomial_basis(3, 2, 2).unwrap();
        assert_eq!(b.len(), 6);
        assert_eq!(&b[..4], &[m(&[2, 0, 0]), m(&[0, 2, 0]), m(&[0, 0, 2]), m(&[1, 1, 0])]);
        assert_eq!(&b[4..], &[m(&[1, 0, 1]), m(&[0, 1, 1])]);
        assert!(monomial_basis(2, 0, 2).is_err());
        assert!(monomial_basis(1, 2, 2).is_err());
    }

    #[test]
    fn basis_without_duplicates_and_correct_length() {
        for (n, d, p) in [(2, 5, 5), (3, 3, 3), (4, 3, 3), (3, 2, 2), (2, 4, 2)] {
            let b = monomial_basis(n, d, p).unwrap();
            assert_eq!(b.len(), homogeneous_dim(n, d));
            let set: std::collections::BTreeSet<_> = b.iter().cloned().collect();
            assert_eq!(set.len(), b.len());
            assert!(b.iter().all(|x| x.degree() == d));
        }
    }

    #[test]
    fn substitution_examples() {
        let f4 = Field::new(2, 2, None).unwrap();
        for a in f4.codes() {
            let a1 = f4.add(a, 1);
            let sigma_inv = Matrix::from_rows(&f4, &[vec![a, a1], vec![a1, a]]).unwrap();
            let x1x2 = Polynomial::term(&f4, m(&[1, 1]), 1);
            let img = x1x2.substitute_linear(&sigma_inv).unwrap();
            let c = f4.add(f4.mul(a, a), a);
            assert_eq!(img.coeff(&m(&[2, 0])), c);
            assert_eq!(img.coeff(&m(&[0, 2])), c);
            assert_eq!(img.coeff(&m(&[1, 1])), 1);
        }
        let f3 = Field::prime(3).unwrap();
        let s = Matrix::from_ints(&f3, &[&[1, -1], &[0, 1]]);
        let f = Polynomial::term(&f3, m(&[2, 1]), 1);
        let img = f.substitute_linear(&s).unwrap();
        let expected = Polynomial::term(&f3, m(&[3, 0]), 2).add(&Polynomial::term(&f3, m(&[2, 1]), 1)).unwrap();
        assert_eq!(img, expected);
        assert_eq!(f.substitute_linear(&Matrix::identity(&f3, 2)).unwrap(), f);
    }

    #[test]
    fn ring_examples() {
        let f2 = Field::prime(2).unwrap();
        let x = Polynomial::var(&f2, 2, 0);
        let y = Polynomial::var(&f2, 2, 1);
        let s = x.add(&y).unwrap();
        assert!(s.add(&s.neg()).unwrap().is_zero());
        assert_eq!(s.pow(2), x.pow(2).add(&y.pow(2)).unwrap());
        // (x+y)^3 over GF(3): binomials C(3,1)=C(3,2)=3 vanish mod 3
        let f3 = Field::prime(3).unwrap();
        let x = Polynomial::var(&f3, 2, 0);
        let y = Polynomial::var(&f3, 2, 1);
        let cube = x.add(&y).unwrap().pow(3);
        for (e, c) in [([3, 0], 1u64), ([2, 1], 3), ([1, 2], 3), ([0, 3], 1)] {
            assert_eq!(cube.coeff(&m(&e)), (c % 3) as u32);
        }
        let z = Polynomial::var(&f2, 3, 0);
        assert!(matches!(z.add(&Polynomial::var(&f2, 2, 0)), Err(Error::ShapeMismatch(_))));
        assert_eq!(z.add(&Polynomial::var(&f3, 3, 0)).unwrap_err(), Error::MixedContexts);
    }

    #[test]
    fn det3_examples() {
        let f3 = Field::prime(3).unwrap();
        let x: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&f3, 3, i)).collect();
        let a = [x[0].clone(), x[1].clone(), x[2].clone()];
        let b = [x[1].clone(), x[2].clone(), x[0].clone()];
        assert!(det3_identity(&a, &b).unwrap().is_zero());
        assert!(det3_identity(&a, &a).unwrap().is_zero());
        let one = Polynomial::constant(&f3, 3, 1);
        assert!(det3_identity(&a, &[one.clone(), one.clone(), one]).unwrap().is_zero());
    }

    #[test]
    fn serialization_order() {
        let f3 = Field::prime(3).unwrap();
        let p = Polynomial::term(&f3, m(&[0, 2]), 1).add(&Polynomial::term(&f3, m(&[2, 0]), 2)).unwrap();
        let j = p.to_json();
        assert_eq!(j[0].exponents, vec![2, 0]);
        assert_eq!(j[1].exponents, vec![0, 2]);
        assert_eq!(p.to_string(), "2x1^2 + x2^2");
    }
}
