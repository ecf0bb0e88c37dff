//! Exact arithmetic in GF(p) and GF(p^k).
//!
//! A [`Field`] is a cheap, shareable handle to a validated [`FieldCtx`].
//! Elements are encoded as integer codes `c0 + c1·p + … + c_{k-1}·p^{k-1}`
//! where `c0 + c1·t + …` is the canonical residue modulo the defining
//! polynomial. Bulk code (matrices, polynomials) works on raw codes through
//! the `Field` methods; [`FieldElement`] pairs a code with its field for the
//! checked, user-facing API.
//!
//! Fields with at most [`TABLE_LIMIT`] elements get full addition and
//! multiplication tables; larger fields fall back to schoolbook polynomial
//! arithmetic.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fields up to this order precompute q×q operation tables.
pub const TABLE_LIMIT: u32 = 256;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 8;

/// Built-in defining polynomials (little-endian, monic), chosen as the
/// smallest irreducible monic polynomial when the non-leading coefficients are
/// compared from the highest degree down.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] =
    &[(2, 2, &[1, 1, 1]), (2, 3, &[1, 1, 0, 1]), (2, 4, &[1, 1, 0, 0, 1]), (3, 2, &[1, 0, 1]), (5, 2, &[2, 0, 1]), (7, 2, &[1, 0, 1])];

/// Serialized form of a field: `{"p":2,"k":2,"modulus":[1,1,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// Validated description of GF(p^k) together with its operation tables.
pub struct FieldCtx {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
    q: u32,
    tables: Option<Tables>,
}

/// Shared handle to a finite field.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.p, self.0.k, self.0.modulus)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in modulus for `(p, k)`, if any. `k = 1` always uses `t`.
pub fn builtin_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    if k == 1 {
        return Some(vec![0, 1]);
    }
    BUILTIN_MODULI.iter().find(|(bp, bk, _)| *bp == p && *bk == k).map(|(_, _, m)| m.to_vec())
}

// --- dense polynomials over GF(p), little-endian coefficient vectors ---

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo `b` over GF(p); `b` must be nonzero.
pub(crate) fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p as u64;
        for (i, &bi) in b.iter().enumerate() {
            let idx = dr - db + i;
            let sub = c * bi as u64 % p as u64;
            r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

/// True iff the monic polynomial `f` (little-endian) is irreducible over GF(p),
/// by trial division with every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                g.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(code % self.p);
            code /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    fn slow_neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.undigits(&d)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let mut prod = vec![0u32; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        self.undigits(&r)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.slow_mul(result, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        result
    }
}

impl Field {
    /// Validates `(p, k, modulus)`; an omitted modulus comes from the built-in
    /// table.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) || p >= 1 << 16 {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::BadDegree(format!("extension degree must be in 1..={MAX_DEGREE}, got {k}")));
        }
        let q = (p as u64).pow(k);
        if q > (1u64 << 31) {
            return Err(Error::BadDegree(format!("field of order {q} is too large")));
        }
        let modulus = match modulus {
            Some(m) => m.to_vec(),
            None => builtin_modulus(p, k).ok_or(Error::NoBuiltinModulus { p, k })?,
        };
        let bad = Error::ReducibleModulus { p, degree: k };
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(bad);
        }
        if !is_irreducible(&modulus, p) {
            return Err(bad);
        }
        let mut ctx = FieldCtx { p, k, modulus, q: q as u32, tables: None };
        if ctx.q <= TABLE_LIMIT {
            let qs = ctx.q as usize;
            let mut add = vec![0; qs * qs];
            let mut mul = vec![0; qs * qs];
            for a in 0..ctx.q {
                for b in 0..ctx.q {
                    add[a as usize * qs + b as usize] = ctx.slow_add(a, b);
                    mul[a as usize * qs + b as usize] = ctx.slow_mul(a, b);
                }
            }
            let neg = (0..ctx.q).map(|a| ctx.slow_neg(a)).collect();
            let mut inv = vec![0; qs];
            for a in 1..ctx.q {
                inv[a as usize] = (1..ctx.q).find(|&b| mul[a as usize * qs + b as usize] == 1).unwrap();
            }
            ctx.tables = Some(Tables { add, mul, neg, inv });
        }
        Ok(Field(Arc::new(ctx)))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        Field::new(spec.p, spec.k, Some(&spec.modulus))
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.0.p, k: self.0.k, modulus: self.0.modulus.clone() }
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.0.tables {
            Some(t) => t.add[(a * self.0.q + b) as usize],
            None => self.0.slow_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.0.tables {
            Some(t) => t.neg[a as usize],
            None => self.0.slow_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.tables {
            Some(t) => t.mul[(a * self.0.q + b) as usize],
            None => self.0.slow_mul(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(match &self.0.tables {
            Some(t) => t.inv[a as usize],
            None => self.0.slow_pow(a, self.0.q as u64 - 2),
        })
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `a^p`.
    pub fn frob(&self, a: u32) -> u32 {
        self.pow(a, self.0.p as u64)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// The residue class of `t` (equal to `0` in GF(p) with modulus `t`).
    pub fn generator(&self) -> u32 {
        if self.0.k == 1 {
            let c = self.0.modulus[0];
            self.neg(c)
        } else {
            self.0.p
        }
    }

    pub fn coeffs(&self, code: u32) -> Vec<u32> {
        self.0.digits(code)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.0.k as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::BadElement(format!("expected {} coefficients below {}, got {:?}", self.0.k, self.0.p, coeffs)));
        }
        Ok(self.0.undigits(coeffs))
    }

    pub fn elem(&self, code: u32) -> FieldElement {
        debug_assert!(code < self.0.q);
        FieldElement { field: self.clone(), code }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// All element codes in increasing order.
    pub fn codes(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }

    /// Human-readable rendering of a code, e.g. `t+1`.
    pub fn render(&self, code: u32) -> String {
        if self.0.k == 1 {
            return code.to_string();
        }
        let c = self.coeffs(code);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let coef = if ci == 1 && i > 0 { String::new() } else { ci.to_string() };
            parts.push(match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// An element of a finite field together with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    code: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.render(self.code))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.render(self.code))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.field.elem(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.field.elem(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.field.elem(self.field.mul(self.code, other.code)))
    }

    pub fn neg(&self) -> Self {
        self.field.elem(self.field.neg(self.code))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field.inv(self.code).map(|c| self.field.elem(c)).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.field.elem(self.field.pow(self.code, e))
    }

    pub fn frobenius(&self) -> Self {
        self.field.elem(self.field.frob(self.code))
    }
}
