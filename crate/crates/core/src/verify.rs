//! Independent checker for pipeline reports.
//!
//! Only field arithmetic, dense matrices and the report schema are used
//! here: group structure, the symmetric power action, the U action, the
//! cocycle and every certificate are recomputed or re-checked from the raw
//! data without calling any solver.

use std::collections::{HashMap, VecDeque};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{is_inconsistency_certificate, kron_apply, Matrix};
use crate::report::{body_digest, vec_from_json, Report, CERTIFICATE_EQUATION, SCHEMA, SPLIT_CONVENTION};

/// Names of the checks that passed, in order.
#[derive(Debug, Clone, Default)]
pub struct Verification {
    pub checks: Vec<String>,
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::FailedCheck(msg.into()))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

pub fn verify_report_str(text: &str) -> Result<Verification> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::CorruptReport(e.to_string()))?;
    verify_report_value(&value)
}

pub fn verify_report_value(value: &Value) -> Result<Verification> {
    let mut out = Verification::default();
    let recorded = value.get("digest").and_then(Value::as_str).ok_or_else(|| Error::CorruptReport("missing digest".into()))?;
    ensure(body_digest(value)? == recorded, "digest does not match the report body")?;
    out.checks.push("digest".into());
    let report: Report = serde_json::from_value(value.clone()).map_err(|e| Error::CorruptReport(e.to_string()))?;
    ensure(report.schema == SCHEMA, format!("unknown schema {}", report.schema))?;
    Checker::new(&report)?.run(&mut out)?;
    Ok(out)
}

fn binom(n: usize, k: usize) -> usize {
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

struct Checker<'a> {
    r: &'a Report,
    f: Field,
    n: usize,
    elems: Vec<Matrix>,
    gens: Vec<usize>,
    // gen_mul[s][x] = id of gens[s] · elems[x]
    gen_mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    index: HashMap<Vec<u32>, usize>,
}

impl<'a> Checker<'a> {
    fn new(r: &'a Report) -> Result<Self> {
        let f = Field::from_spec(&r.field).map_err(|e| Error::CorruptReport(format!("field: {e}")))?;
        let elems = r
            .group
            .elements
            .iter()
            .map(|m| Matrix::from_json(&f, m))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::FailedCheck(format!("group element: {e}")))?;
        Ok(Checker { r, f, n: r.group.n, elems, gens: r.group.generator_ids.clone(), gen_mul: vec![], inv: vec![], index: HashMap::new() })
    }

    fn run(mut self, out: &mut Verification) -> Result<()> {
        self.group()?;
        out.checks.push("group closure and generation".into());
        self.labels()?;
        out.checks.push("labels".into());
        self.hypothesis()?;
        out.checks.push("hypothesis".into());
        let v = self.symmetric_power()?;
        out.checks.push("symmetric power action and block form".into());
        let (u, g) = self.u_and_cocycle(&v)?;
        out.checks.push("U action and cocycle formula".into());
        self.cocycle_identity(&u, &g)?;
        out.checks.push("cocycle identity".into());
        self.certificate(&u, &g)?;
        out.checks.push("non-split certificate".into());
        self.h1(&u, &g)?;
        out.checks.push("H1 summary".into());
        self.first_rows(&u, &g)?;
        out.checks.push("first-row equations".into());
        self.witness(&u, &g)?;
        out.checks.push("tensor-kill witness".into());
        self.obstruction()?;
        out.checks.push("obstruction dimension".into());
        if self.quadratic(&v, &u, &g)? {
            out.checks.push("quadratic example".into());
        }
        Ok(())
    }

    fn group(&mut self) -> Result<()> {
        let (f, n) = (&self.f, self.n);
        let r = self.r;
        ensure(r.job.p == f.characteristic() && r.job.k == f.degree(), "job parameters differ from the field")?;
        ensure(r.job.n == n && r.group.recipe == r.job.group.to_string(), "job does not describe the recorded group")?;
        ensure(r.group.order <= r.job.order_cap, "group order exceeds the job's order cap")?;
        ensure(self.elems.len() == r.group.order && !self.elems.is_empty(), "group order differs from the element list")?;
        ensure(self.elems.iter().all(|e| e.rows() == n && e.cols() == n), "group element has the wrong size")?;
        ensure(self.elems[0].is_identity(), "element 0 is not the identity")?;
        for (i, e) in self.elems.iter().enumerate() {
            if self.index.insert(e.data().to_vec(), i).is_some() {
                return fail(format!("element {i} is listed twice"));
            }
        }
        ensure(self.gens.iter().all(|&s| s < self.elems.len()), "generator id out of range")?;
        for (k, &s) in self.gens.iter().enumerate() {
            let mut row = Vec::with_capacity(self.elems.len());
            for (x, e) in self.elems.iter().enumerate() {
                let prod = self.elems[s].mul(e)?;
                match self.index.get(prod.data()) {
                    Some(&id) => row.push(id),
                    None => return fail(format!("generator {k} times element {x} leaves the element list")),
                }
            }
            self.gen_mul.push(row);
        }
        let mut seen = vec![false; self.elems.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for row in &self.gen_mul {
                if !seen[row[x]] {
                    seen[row[x]] = true;
                    queue.push_back(row[x]);
                }
            }
        }
        ensure(seen.iter().all(|&s| s), "generators do not generate the listed elements")?;
        for e in &self.elems {
            let i = e.inverse().map_err(|_| Error::FailedCheck("singular group element".into()))?;
            match self.index.get(i.data()) {
                Some(&id) => self.inv.push(id),
                None => return fail("element inverse missing from the list"),
            }
        }
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(&f.spec()).expect("field spec serializes"));
        h.update((n as u64).to_le_bytes());
        for e in &self.elems {
            for &x in e.data() {
                h.update(x.to_le_bytes());
            }
        }
        ensure(hex::encode(h.finalize()) == r.group.elements_digest, "element list digest mismatch")
    }

    fn embed2(&self, rows: [[u32; 2]; 2]) -> Matrix {
        let mut m = Matrix::identity(&self.f, self.n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Module recipes and convention strings are fixed by `p` alone.
    fn labels(&self) -> Result<()> {
        let r = self.r;
        let c = &r.construction;
        let p = self.f.characteristic();
        let u = format!("hom(sym^{p},frob) | restrict U");
        let ut = format!("hom(sym^{p},frob) | restrict U+iota");
        ensure(c.v_recipe == format!("sym^{p}") && c.u_recipe == u && c.u_tilde_recipe == ut, "module recipes")?;
        ensure(c.certificate.convention == SPLIT_CONVENTION && c.certificate.equation == CERTIFICATE_EQUATION, "certificate convention")?;
        ensure(r.witness.w_module == format!("dual({ut})"), "witness module recipe")?;
        let components = [format!("dual({u})"), ut.clone(), ut.clone(), ut];
        ensure(r.obstruction.components == components, "obstruction summands")?;
        if let Some(q) = &r.quadratic {
            ensure(q.u_recipe == "sym^2 | <x^2,y^2>" && q.u_tilde_recipe == "sym^2 | <x^2,y^2,xy>", "quadratic example recipes")?;
        }
        Ok(())
    }

    fn hypothesis(&self) -> Result<()> {
        let f = &self.f;
        let h = &self.r.hypothesis;
        ensure(h.satisfied, "report records an unsatisfied hypothesis")?;
        ensure(self.n >= 2, "n < 2")?;
        if f.characteristic() == 2 {
            let mut params: Vec<u32> = self
                .elems
                .iter()
                .filter_map(|e| {
                    let a = e.get(0, 0);
                    let a1 = f.add(a, 1);
                    (*e == self.embed2([[a, a1], [a1, a]])).then_some(a)
                })
                .collect();
            params.sort_unstable();
            params.dedup();
            ensure(params.len() >= 3, format!("only {} pattern parameters in the group", params.len()))?;
            let detail = format!("{} distinct values of a with [[a,a+1],[a+1,a]] in G (need at least 3)", params.len());
            ensure(h.detail == detail, "hypothesis detail")?;
            ensure(vec_from_json(f, &h.parameters)? == params, "recorded pattern parameters differ")
        } else {
            let u = self.embed2([[1, 1], [0, 1]]);
            ensure(h.detail == "[[1,1],[0,1]] is in G", "hypothesis detail")?;
            ensure(self.index.contains_key(u.data()), "unipotent [[1,1],[0,1]] missing from the group")
        }
    }

    /// Recomputes `σ·m` for every basis monomial by expanding products of
    /// linear forms.
    fn symmetric_power(&self) -> Result<Vec<Matrix>> {
        let f = &self.f;
        let (n, p) = (self.n, f.characteristic() as usize);
        let c = &self.r.construction;
        let big = binom(n + p - 1, p);
        ensure(c.basis.len() == big, format!("basis has {} monomials, expected C(n+p-1,p) = {big}", c.basis.len()))?;
        let mut pos = HashMap::new();
        for (i, m) in c.basis.iter().enumerate() {
            ensure(m.len() == n && m.iter().sum::<u32>() as usize == p, format!("basis entry {i} is not of degree p"))?;
            ensure(pos.insert(m.clone(), i).is_none(), format!("basis entry {i} repeats"))?;
        }
        for i in 0..n {
            ensure(c.basis[i].iter().enumerate().all(|(j, &e)| e == if i == j { p as u32 } else { 0 }), "basis does not start with x_i^p")?;
        }
        ensure(
            c.dims.v == big && c.dims.w == n && c.dims.u == n * (big - n) && c.dims.u_tilde == n * (big - n) + 1,
            "recorded dimensions",
        )?;
        ensure(c.v_actions.len() == self.elems.len(), "one V action per element expected")?;
        let mut out = Vec::with_capacity(self.elems.len());
        for (id, sigma) in self.elems.iter().enumerate() {
            let mut a = Matrix::zeros(f, big, big);
            for (j, m) in c.basis.iter().enumerate() {
                let mut poly: HashMap<Vec<u32>, u32> = HashMap::from([(vec![0; n], 1)]);
                for (var, &e) in m.iter().enumerate() {
                    for _ in 0..e {
                        let mut next: HashMap<Vec<u32>, u32> = HashMap::new();
                        for (mono, coef) in &poly {
                            for i in 0..n {
                                let s = sigma.get(i, var);
                                if s == 0 {
                                    continue;
                                }
                                let mut mm = mono.clone();
                                mm[i] += 1;
                                let slot = next.entry(mm).or_insert(0);
                                *slot = f.add(*slot, f.mul(*coef, s));
                            }
                        }
                        poly = next;
                    }
                }
                for (mono, coef) in poly {
                    if coef != 0 {
                        a.set(pos[&mono], j, coef);
                    }
                }
            }
            let recorded = Matrix::from_json(f, &c.v_actions[id]).map_err(|e| Error::FailedCheck(format!("V action {id}: {e}")))?;
            ensure(recorded == a, format!("V action at element {id} differs from substitution"))?;
            ensure(a.submatrix(0..n, 0..n) == sigma.frobenius(), format!("top-left block at element {id} is not f_p(σ)"))?;
            ensure(a.submatrix(n..big, 0..n).is_zero(), format!("bottom-left block at element {id} is not zero"))?;
            out.push(a);
        }
        Ok(out)
    }

    fn u_and_cocycle(&self, v: &[Matrix]) -> Result<(Vec<Matrix>, Vec<Vec<u32>>)> {
        let f = &self.f;
        let n = self.n;
        let c = &self.r.construction;
        let big = c.basis.len();
        let j = Matrix::identity(f, n).hstack(&Matrix::zeros(f, n, big - n))?;
        ensure(Matrix::from_json(f, &c.iota).ok() == Some(j.clone()), "iota is not (I_n | 0)")?;
        ensure(c.cocycle.len() == self.elems.len(), "one cocycle value per element expected")?;
        let mut us = Vec::new();
        let mut gs = Vec::new();
        for (id, sigma) in self.elems.iter().enumerate() {
            let fs = sigma.frobenius();
            let vinv = &v[self.inv[id]];
            us.push(fs.kron(&vinv.submatrix(n..big, n..big).transpose())?);
            let full = fs.mul(&j)?.mul(vinv)?.sub(&j)?;
            ensure(full.submatrix(0..n, 0..n).is_zero(), format!("f_p(σ)JA_σ⁻¹ − J has nonzero first columns at {id}"))?;
            let g = full.submatrix(0..n, n..big).data().to_vec();
            ensure(vec_from_json(f, &c.cocycle[id])? == g, format!("cocycle value at element {id} differs from the formula"))?;
            gs.push(g);
        }
        Ok((us, gs))
    }

    fn cocycle_identity(&self, u: &[Matrix], g: &[Vec<u32>]) -> Result<()> {
        let f = &self.f;
        ensure(g[0].iter().all(|&x| x == 0), "cocycle is nonzero at the identity")?;
        let check = |a: usize, b: usize, ab: usize| -> Result<()> {
            let sg = u[a].mul_vec(&g[b])?;
            let ok = g[ab].iter().zip(sg.iter().zip(&g[a])).all(|(&x, (&y, &z))| x == f.add(y, z));
            ensure(ok, format!("cocycle identity fails at ({a}, {b})"))
        };
        for (s, row) in self.gen_mul.iter().enumerate() {
            for (x, &sx) in row.iter().enumerate() {
                check(self.gens[s], x, sx)?;
            }
        }
        if self.elems.len() <= 64 {
            for a in 0..self.elems.len() {
                for b in 0..self.elems.len() {
                    let ab = self.index[self.elems[a].mul(&self.elems[b])?.data()];
                    check(a, b, ab)?;
                }
            }
        }
        Ok(())
    }

    fn system(&self, u: &[Matrix], g: &[Vec<u32>], ids: &[usize]) -> Result<(Matrix, Vec<u32>)> {
        let d = u[0].rows();
        let id = Matrix::identity(&self.f, d);
        let mut a = Matrix::zeros(&self.f, ids.len() * d, d);
        let mut b = Vec::new();
        for (k, &e) in ids.iter().enumerate() {
            a.paste(k * d, 0, &u[e].sub(&id)?);
            b.extend_from_slice(&g[e]);
        }
        Ok((a, b))
    }

    fn certificate(&self, u: &[Matrix], g: &[Vec<u32>]) -> Result<()> {
        let cert = &self.r.construction.certificate;
        ensure(cert.verdict == "non_split", "certificate verdict is not non_split")?;
        ensure(cert.generator_ids == self.gens, "certificate generators differ from the group's")?;
        let (a, b) = self.system(u, g, &self.gens)?;
        let digest = a.hstack(&Matrix::column(&self.f, &b))?.digest();
        ensure(digest == cert.system_digest, "generator system digest mismatch")?;
        let y = vec_from_json(&self.f, &cert.y)?;
        ensure(y.len() == a.rows(), "certificate row has the wrong length")?;
        ensure(is_inconsistency_certificate(&a, &Matrix::column(&self.f, &b), &y), "y·A ≠ 0 or y·b = 0")
    }

    /// Extends generator values along the Cayley graph; `None` when the
    /// values violate the cocycle identity.
    fn extend_cocycle(&self, u: &[Matrix], gen_values: &[u32]) -> Result<Option<Vec<Vec<u32>>>> {
        let f = &self.f;
        let d = u[0].rows();
        let mut vals: Vec<Option<Vec<u32>>> = vec![None; self.elems.len()];
        vals[0] = Some(vec![0; d]);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            let gx = vals[x].clone().expect("visited");
            for (s, row) in self.gen_mul.iter().enumerate() {
                let y = row[x];
                let mut gy = u[self.gens[s]].mul_vec(&gx)?;
                for (a, &b) in gy.iter_mut().zip(&gen_values[s * d..(s + 1) * d]) {
                    *a = f.add(*a, b);
                }
                match &vals[y] {
                    None => {
                        vals[y] = Some(gy);
                        queue.push_back(y);
                    }
                    Some(known) if *known != gy => return Ok(None),
                    Some(_) => {}
                }
            }
        }
        Ok(Some(vals.into_iter().map(|v| v.expect("generators generate")).collect()))
    }

    /// The class coordinates are re-derived from the recorded complement:
    /// the complement consists of cocycles independent modulo B¹, and
    /// `g − Σ class_i c_i` lies in B¹.
    fn h1(&self, u: &[Matrix], g: &[Vec<u32>]) -> Result<()> {
        let f = &self.f;
        let h = &self.r.construction.h1;
        ensure(h.dim_z1 >= h.dim_b1 && h.dim_z1 - h.dim_b1 == h.dim_h1, "dim Z¹ − dim B¹ ≠ dim H¹")?;
        ensure(h.dim_h1 >= 1 && h.class.len() == h.dim_h1 && h.complement.len() == h.dim_h1, "H¹ class has the wrong length")?;
        let class = vec_from_json(f, &h.class)?;
        ensure(class.iter().any(|&x| x != 0), "recorded H¹ class is zero")?;
        let d = u[0].rows();
        let k = self.gens.len() * d;
        let id = Matrix::identity(f, d);
        let mut stacked = Matrix::zeros(f, 0, d);
        for &s in &self.gens {
            stacked = stacked.vstack(&u[s].sub(&id)?)?;
        }
        ensure(stacked.rank() == h.dim_b1, "dim B¹ differs from the rank of the stacked (s − 1)")?;
        let mut residual: Vec<u32> = self.gens.iter().flat_map(|&s| g[s].iter().copied()).collect();
        let mut cols = Vec::new();
        for (c, &lambda) in h.complement.iter().zip(&class) {
            let c = vec_from_json(f, c)?;
            ensure(c.len() == k, "complement vector has the wrong length")?;
            ensure(self.extend_cocycle(u, &c)?.is_some(), "complement vector is not a cocycle")?;
            for (r, &x) in residual.iter_mut().zip(&c) {
                *r = f.sub(*r, f.mul(lambda, x));
            }
            cols.push(c);
        }
        let complement = Matrix::from_columns(f, k, &cols)?;
        ensure(stacked.hstack(&complement)?.rank() == h.dim_b1 + h.dim_h1, "complement is dependent modulo B¹")?;
        ensure(stacked.hstack(&Matrix::column(f, &residual))?.rank() == h.dim_b1, "g − Σ class·complement is not a coboundary")
    }

    fn first_rows(&self, u: &[Matrix], g: &[Vec<u32>]) -> Result<()> {
        let f = &self.f;
        let rows = &self.r.construction.first_row_equations;
        if f.characteristic() != 2 {
            return ensure(rows.is_empty(), "first-row equations recorded in odd characteristic");
        }
        let params = vec_from_json(f, &self.r.hypothesis.parameters)?;
        ensure(rows.len() == params.len(), "one first-row equation per pattern parameter expected")?;
        for (row, &a) in rows.iter().zip(&params) {
            ensure(f.from_coeffs(&row.a)? == a, "first-row parameters out of order")?;
            let a1 = f.add(a, 1);
            ensure(self.index.get(self.embed2([[a, a1], [a1, a]]).data()) == Some(&row.element), "first-row element id")?;
            let (sys, rhs) = self.system(u, g, &[row.element])?;
            let coeffs = vec_from_json(f, &row.coefficients)?;
            ensure(coeffs == sys.row(0) && f.from_coeffs(&row.rhs)? == rhs[0], format!("first-row equation for a = {a}"))?;
            let a2 = f.mul(a, a);
            ensure(rhs[0] == f.add(a2, a), format!("first-row right side is not a²+a for a = {a}"))?;
            if self.n == 2 {
                ensure(coeffs == vec![f.add(a2, 1); 2], format!("first-row coefficients are not (a²+1, a²+1) for a = {a}"))?;
            }
        }
        Ok(())
    }

    fn witness(&self, u: &[Matrix], g: &[Vec<u32>]) -> Result<()> {
        let f = &self.f;
        let wit = &self.r.witness;
        let du = u[0].rows();
        let tilde: Vec<Matrix> = u
            .iter()
            .zip(g)
            .map(|(a, gv)| {
                let mut m = Matrix::zeros(f, du + 1, du + 1);
                m.paste(0, 0, a);
                m.paste(0, du, &Matrix::column(f, gv));
                m.set(du, du, 1);
                m
            })
            .collect();
        let w_act: Vec<Matrix> = (0..self.elems.len()).map(|id| tilde[self.inv[id]].transpose()).collect();
        let w = vec_from_json(f, &wit.w)?;
        let uu = vec_from_json(f, &wit.u)?;
        ensure(w.len() == du + 1 && uu.len() == (du + 1) * du, "witness vectors have the wrong length")?;
        ensure(w.iter().any(|&x| x != 0), "w is zero")?;
        ensure(wit.checked == self.elems.len(), "witness check count differs from the group order")?;
        for id in 0..self.elems.len() {
            ensure(w_act[id].mul_vec(&w)? == w, format!("w is not fixed by element {id}"))?;
            let lhs = kron_apply(&w_act[id], &u[id], &uu)?;
            for (i, &wi) in w.iter().enumerate() {
                for (j, &gj) in g[id].iter().enumerate() {
                    let k = i * du + j;
                    ensure(f.sub(lhs[k], uu[k]) == f.mul(wi, gj), format!("(σ−1)u ≠ w⊗g_σ at element {id}"))?;
                }
            }
        }
        Ok(())
    }

    fn obstruction(&self) -> Result<()> {
        let o = &self.r.obstruction;
        let (n, p) = (self.n, self.f.characteristic() as usize);
        let formula = 4 * n * (binom(n + p - 1, p) - n) + 3;
        ensure(o.components.len() == 4, "X must have four summands")?;
        ensure(o.dim == formula && o.formula_dim == formula, format!("dim X = {} but 4n(C(n+p−1,p)−n)+3 = {formula}", o.dim))?;
        ensure(o.dim == 4 * self.r.construction.dims.u + 3, "dim X ≠ 4·dim U + 3")?;
        ensure(o.double_dual_equal, "double dual flag")
    }

    fn quadratic(&self, v: &[Matrix], u: &[Matrix], g: &[Vec<u32>]) -> Result<bool> {
        let f = &self.f;
        let expected = f.characteristic() == 2 && self.n == 2;
        let Some(q) = &self.r.quadratic else {
            return ensure(!expected, "quadratic example missing").map(|_| false);
        };
        ensure(expected, "quadratic example present although p = n = 2 fails")?;
        let mut tu = Vec::new();
        let mut tg = Vec::new();
        for (id, a) in v.iter().enumerate() {
            ensure(a.get(2, 0) == 0 && a.get(2, 1) == 0 && a.get(2, 2) == 1, format!("xy-coefficient projection not invariant at {id}"))?;
            tu.push(a.submatrix(0..2, 0..2));
            tg.push(vec![a.get(0, 2), a.get(1, 2)]);
        }
        match q.verdict.as_str() {
            "non_split" => {
                let y = vec_from_json(f, q.y.as_ref().ok_or_else(|| Error::FailedCheck("non_split without y".into()))?)?;
                let (a, b) = self.system(&tu, &tg, &self.gens)?;
                ensure(y.len() == a.rows(), "quadratic certificate has the wrong length")?;
                ensure(is_inconsistency_certificate(&a, &Matrix::column(f, &b), &y), "quadratic certificate fails")?;
            }
            "split" => {
                let s = vec_from_json(f, q.split_u.as_ref().ok_or_else(|| Error::FailedCheck("split without u".into()))?)?;
                for id in 0..tu.len() {
                    let img = tu[id].mul_vec(&s)?;
                    let ok = img.iter().zip(&s).map(|(&x, &y)| f.sub(x, y)).eq(tg[id].iter().copied());
                    ensure(ok, format!("quadratic splitting vector fails at {id}"))?;
                }
            }
            other => return fail(format!("unknown quadratic verdict {other}")),
        }
        ensure(q.modules_isomorphic == q.intertwiner.is_some(), "isomorphism flag")?;
        ensure(q.classes_match == q.lambda.is_some(), "class match flag")?;
        if let Some(tj) = &q.intertwiner {
            let t = Matrix::from_json(f, tj).map_err(|e| Error::FailedCheck(format!("intertwiner: {e}")))?;
            ensure(t.rows() == u[0].rows() && t.cols() == 2 && t.rank() == t.rows(), "intertwiner is not invertible")?;
            for id in 0..tu.len() {
                ensure(u[id].mul(&t)? == t.mul(&tu[id])?, format!("intertwiner fails at element {id}"))?;
            }
            if let Some(lj) = &q.lambda {
                let lambda = f.from_coeffs(lj)?;
                ensure(lambda != 0, "lambda is zero")?;
                let vv = vec_from_json(f, q.v.as_ref().ok_or_else(|| Error::FailedCheck("lambda without v".into()))?)?;
                for id in 0..tu.len() {
                    let pushed = t.mul_vec(&tg[id])?;
                    let cob = u[id].mul_vec(&vv)?;
                    let ok = (0..pushed.len()).all(|i| f.sub(pushed[i], f.mul(lambda, g[id][i])) == f.sub(cob[i], vv[i]));
                    ensure(ok, format!("pushed class differs from λ·g beyond a coboundary at {id}"))?;
                }
            }
        } else {
            ensure(q.lambda.is_none(), "lambda without intertwiner")?;
        }
        Ok(true)
    }
}
