//! Braided exterior algebra of a calculus, its differential and cohomology.
//!
//! Tensors in `(Λ¹)^{⊗n}` are indexed by base-`M` digit strings (first factor
//! most significant), `M = m²` the number of labels. `Λⁿ = im A_n`, with
//! coordinates the pivot set `P_n` of the echelon form of the columns of
//! `A_n`; the projection is `t ↦ (A_n t)|_{P_n}`. The classes of the tensors
//! `e_J`, `J ∈ Q_n` (greedily independent columns) form a second basis used
//! as the source side of the differential matrices.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::calculus::{Calculus, Terms};
use crate::cyclo::sparse::{self, Echelon, SparseVec};
use crate::cyclo::{CycMatrix, CycNum};
use crate::double::{dstar_unit, DualDoubleElement};

/// Default bound on `Mⁿ`, the dimension of the tensor power.
pub const DEFAULT_MAX_DIM: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("degree {degree} needs dimension {size}, above the bound {bound}")]
    SizeBound { degree: usize, size: usize, bound: usize },
    #[error("braiding oracle mismatch: {0}")]
    BraidMismatch(String),
    #[error("gate `{gate}` failed: {detail}")]
    Gate { gate: &'static str, detail: String },
}

// ---- braiding ----

/// `Ψ` on `Λ¹⊗Λ¹`; column `L1·M + L2` holds `Ψ(e_{L1}⊗e_{L2})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Braiding {
    pub labels: usize,
    cols: Vec<SparseVec<CycNum>>,
}

impl Braiding {
    fn from_map(labels: usize, acc: BTreeMap<(usize, usize), CycNum>) -> Self {
        let mut cols: Vec<Vec<(usize, CycNum)>> = vec![Vec::new(); labels * labels];
        for ((col, row), v) in acc {
            if !v.is_zero() {
                cols[col].push((row, v));
            }
        }
        Braiding { labels, cols }
    }

    pub fn column(&self, pair: usize) -> &SparseVec<CycNum> {
        &self.cols[pair]
    }

    pub fn matrix(&self) -> CycMatrix {
        CycMatrix::from_sparse_cols(&self.cols, self.labels * self.labels)
    }

    pub fn is_invertible(&self) -> bool {
        let rows = sparse::transpose(&self.cols, self.labels * self.labels);
        sparse::rank(&rows, self.labels * self.labels) == self.labels * self.labels
    }

    /// `Ψ_i` (1-based, acting on factors `i, i+1`) on a degree-`n` tensor.
    pub fn apply_at(&self, i: usize, n: usize, v: &SparseVec<CycNum>) -> SparseVec<CycNum> {
        let mm = self.labels * self.labels;
        let right = self.labels.pow((n - i - 1) as u32);
        let mut acc: HashMap<usize, CycNum> = HashMap::new();
        for (j, c) in v {
            let pair = (j / right) % mm;
            let hi = j / (right * mm);
            let lo = j % right;
            for (out, x) in &self.cols[pair] {
                let k = (hi * mm + out) * right + lo;
                let t = c.mul(x);
                match acc.get_mut(&k) {
                    Some(e) => *e = e.add(&t),
                    None => {
                        acc.insert(k, t);
                    }
                }
            }
        }
        sparse::normalize(acc)
    }

    pub fn apply_word(&self, word: &[usize], n: usize, v: &SparseVec<CycNum>) -> SparseVec<CycNum> {
        word.iter().rev().fold(v.clone(), |acc, &i| self.apply_at(i, n, &acc))
    }

    /// `Ψ₁Ψ₂Ψ₁ = Ψ₂Ψ₁Ψ₂` on every basis tensor of degree 3.
    pub fn braid_relation_holds(&self) -> bool {
        let total = self.labels.pow(3);
        (0..total).all(|j| {
            let e = vec![(j, CycNum::one())];
            self.apply_word(&[1, 2, 1], 3, &e) == self.apply_word(&[2, 1, 2], 3, &e)
        })
    }

    /// First column where two braidings differ.
    pub fn first_difference(&self, other: &Braiding) -> Option<usize> {
        (0..self.cols.len()).find(|&c| self.cols[c] != other.cols[c])
    }
}

/// The braiding in closed form:
/// `Ψ(e_{ai}^{bj}⊗e_{ck}^{dl}) = e_{a⁻¹bcb⁻¹a,m}^{dl} ζ_c(a⁻¹b)^m_k ⊗
/// ζ_b(d⁻¹)⁻¹{}^j_p e_{d⁻¹ad,n}^{d⁻¹bd,p} ζ_a(d⁻¹)^n_i`.
pub fn braiding(calc: &Calculus) -> Braiding {
    let md = &calc.module;
    let g = &md.group;
    let m = calc.m();
    let dv = md.dim_v();
    let labels = calc.num_labels();
    let mut inv_cache: HashMap<(usize, usize), CycMatrix> = HashMap::new();
    let mut acc: BTreeMap<(usize, usize), CycNum> = BTreeMap::new();
    for l1 in 0..labels {
        let (a, i) = md.label(l1 / m);
        let (b, j) = md.label(l1 % m);
        for l2 in 0..labels {
            let (c, k) = md.label(l2 / m);
            let (d, l) = md.label(l2 % m);
            let ab = g.mul(g.inv(a), b);
            let first_lo = g.conj(ab, c);
            let di = g.inv(d);
            let second_lo = g.conj(di, a);
            let second_up = g.conj(di, b);
            let z1 = md.zeta(c, ab);
            let z3 = md.zeta(a, di);
            let z2 = inv_cache
                .entry((b, di))
                .or_insert_with(|| md.zeta(b, di).inverse().expect("cocycle matrix is invertible"))
                .clone();
            for mm in 0..dv {
                let c1 = z1.get(mm, k);
                if c1.is_zero() {
                    continue;
                }
                let out1 = md.index(first_lo, mm) * m + md.index(d, l);
                for p in 0..dv {
                    let c2 = z2.get(j, p);
                    if c2.is_zero() {
                        continue;
                    }
                    for nn in 0..dv {
                        let c3 = z3.get(nn, i);
                        if c3.is_zero() {
                            continue;
                        }
                        let out2 = md.index(second_lo, nn) * m + md.index(second_up, p);
                        let e = acc
                            .entry((l1 * labels + l2, out1 * labels + out2))
                            .or_insert_with(CycNum::zero);
                        *e = e.add(&c1.mul(c2).mul(c3));
                    }
                }
            }
        }
    }
    Braiding::from_map(labels, acc)
}

/// The braiding from `R = (ρ⊗ρ)(ℛ)`, `R⁻¹` and `R̃ = (ρ⊗ρ∘S)(ℛ)`:
/// `Ψ(e_α^β⊗e_γ^δ) = e_μ^ν⊗e_σ^τ (R⁻¹)^{α₁}_α{}^μ_{α₂} R^β_{α₃}{}^{α₂}_γ
/// R^δ_{α₄}{}^{α₃}_τ R̃^{α₄}_ν{}^σ_{α₁}`.
pub fn braiding_oracle(calc: &Calculus) -> Braiding {
    let md = &calc.module;
    let m = calc.m();
    let labels = calc.num_labels();
    let r = md.r_matrix();
    let rinv = r.inverse().expect("R is invertible");
    let rt = md.r_tilde();
    // entries (p, q, r, s) of X^p_q{}^r_s, stored at row p·m + r, column q·m + s
    let entries = |x: &CycMatrix| -> Vec<(usize, usize, usize, usize, CycNum)> {
        let mut out = Vec::new();
        for row in 0..m * m {
            for col in 0..m * m {
                let v = x.get(row, col);
                if !v.is_zero() {
                    out.push((row / m, col / m, row % m, col % m, v.clone()));
                }
            }
        }
        out
    };
    let ri = entries(&rinv);
    let rr = entries(&r);
    let rtt = entries(&rt);
    let mut acc: BTreeMap<(usize, usize), CycNum> = BTreeMap::new();
    // (R⁻¹)^{α₁}_α{}^μ_{α₂}
    for (a1, alpha, mu, a2, v1) in &ri {
        // R^β_{α₃}{}^{α₂}_γ
        for (beta, a3, r2, gamma, v2) in &rr {
            if r2 != a2 {
                continue;
            }
            let v12 = v1.mul(v2);
            // R^δ_{α₄}{}^{α₃}_τ
            for (delta, a4, r3, tau, v3) in &rr {
                if r3 != a3 {
                    continue;
                }
                let v123 = v12.mul(v3);
                // R̃^{α₄}_ν{}^σ_{α₁}
                for (p4, nu, sigma, q1, v4) in &rtt {
                    if p4 != a4 || q1 != a1 {
                        continue;
                    }
                    let col = (alpha * m + beta) * labels + (gamma * m + delta);
                    let row = (mu * m + nu) * labels + (sigma * m + tau);
                    let e = acc.entry((col, row)).or_insert_with(CycNum::zero);
                    *e = e.add(&v123.mul(v4));
                }
            }
        }
    }
    Braiding::from_map(labels, acc)
}

// ---- antisymmetrizers ----

/// `(sign, word)` for every permutation of `n`, lexicographic order, with
/// the bubble-sort reduced word. The word `[r₁,…,r_l]` stands for
/// `Ψ_{r₁}⋯Ψ_{r_l}`.
pub fn reduced_words(n: usize) -> Vec<(i64, Vec<usize>)> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        perms.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    perms
        .into_iter()
        .map(|mut q| {
            let mut word = Vec::new();
            let mut swapped = true;
            while swapped {
                swapped = false;
                for k in 0..n.saturating_sub(1) {
                    if q[k] > q[k + 1] {
                        q.swap(k, k + 1);
                        word.push(k + 1);
                        swapped = true;
                    }
                }
            }
            let sign = if word.len() % 2 == 0 { 1 } else { -1 };
            (sign, word)
        })
        .collect()
}

/// `A_n v = Σ_σ sign(σ) Ψ_{word(σ)} v`.
pub fn antisymmetrize(
    psi: &Braiding,
    n: usize,
    words: &[(i64, Vec<usize>)],
    v: &SparseVec<CycNum>,
) -> SparseVec<CycNum> {
    let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
    for (sign, word) in words {
        let s = CycNum::from_int(*sign);
        for (j, c) in psi.apply_word(word, n, v) {
            sparse::add_into(&mut acc, j, &c.mul(&s));
        }
    }
    acc.into_iter().collect()
}

fn check_bound(labels: usize, n: usize, bound: usize) -> Result<usize, ExteriorError> {
    let size = (labels as u128).pow(n as u32);
    if size > bound as u128 {
        return Err(ExteriorError::SizeBound {
            degree: n,
            size: size.min(usize::MAX as u128) as usize,
            bound,
        });
    }
    Ok(size as usize)
}

/// Dense `A_n` on `Mⁿ`.
pub fn antisymmetrizer(psi: &Braiding, n: usize, bound: usize) -> Result<CycMatrix, ExteriorError> {
    let size = check_bound(psi.labels, n, bound)?;
    let words = reduced_words(n);
    let cols: Vec<SparseVec<CycNum>> = (0..size)
        .map(|j| antisymmetrize(psi, n, &words, &vec![(j, CycNum::one())]))
        .collect();
    Ok(CycMatrix::from_sparse_cols(&cols, size))
}

/// The word list with the longest element of `S₃` written `Ψ₂Ψ₁Ψ₂` instead.
pub fn alternate_words_s3() -> Vec<(i64, Vec<usize>)> {
    reduced_words(3)
        .into_iter()
        .map(|(s, w)| if w == [1, 2, 1] { (s, vec![2, 1, 2]) } else { (s, w) })
        .collect()
}

// ---- exterior data ----

#[derive(Debug)]
pub struct Degree {
    pub n: usize,
    /// `P_n`: image coordinates
    pub pivots: Vec<usize>,
    /// `Q_n`: tensors whose classes form a basis
    pub basis: Vec<usize>,
    /// `(A_n e_J)|_{P_n}` for every tensor index `J`
    proj: Vec<SparseVec<CycNum>>,
    lift: OnceLock<Vec<SparseVec<CycNum>>>,
}

impl Degree {
    fn build(psi: &Braiding, n: usize, bound: usize) -> Result<Degree, ExteriorError> {
        let size = check_bound(psi.labels, n, bound)?;
        let words = reduced_words(n);
        let cols: Vec<SparseVec<CycNum>> = (0..size)
            .map(|j| antisymmetrize(psi, n, &words, &vec![(j, CycNum::one())]))
            .collect();
        let mut ech = Echelon::new(size);
        let mut basis = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            if ech.insert(c) {
                basis.push(j);
            }
        }
        let pivots = ech.into_rref().pivots;
        let pos: HashMap<usize, usize> = pivots.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let proj = cols
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .filter_map(|(r, v)| pos.get(&r).map(|&i| (i, v)))
                    .collect()
            })
            .collect();
        Ok(Degree {
            n,
            pivots,
            basis,
            proj,
            lift: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn project_basis(&self, j: usize) -> &SparseVec<CycNum> {
        &self.proj[j]
    }

    /// Tensor representatives of the `P_n` coordinate vectors.
    pub fn lift(&self) -> &[SparseVec<CycNum>] {
        self.lift.get_or_init(|| {
            let k = self.dim();
            if k == 0 {
                return Vec::new();
            }
            // M = A[P, Q]; lift(e_p) = Σ_q (M⁻¹)_{qp} e_{Q_q}
            let rows: Vec<SparseVec<CycNum>> = {
                let cols: Vec<SparseVec<CycNum>> = self.basis.iter().map(|&j| self.proj[j].clone()).collect();
                sparse::transpose(&cols, k)
            };
            let inv = sparse::inverse(&rows).expect("A[P,Q] is invertible");
            let inv_cols = sparse::transpose(&inv, k);
            inv_cols
                .into_iter()
                .map(|col| col.into_iter().map(|(q, v)| (self.basis[q], v)).collect())
                .collect()
        })
    }
}

/// A degree-`n` form `Σ e_p·x`, `p` a `Λⁿ` coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub degree: usize,
    pub terms: Terms,
}

#[derive(Debug)]
pub struct ExteriorData {
    pub calc: Calculus,
    pub braid: Braiding,
    degrees: Vec<Degree>,
    relations: Vec<SparseVec<CycNum>>,
}

impl ExteriorData {
    /// Build `Λ⁰ … Λ^{n_max}`; stops with `SizeBound` if a degree is too
    /// large (use `build_partial` to keep what fits).
    pub fn build(calc: Calculus, n_max: usize, bound: usize) -> Result<Self, ExteriorError> {
        let (ext, err) = Self::build_partial(calc, n_max, bound);
        match err {
            Some(e) => Err(e),
            None => Ok(ext),
        }
    }

    pub fn build_partial(calc: Calculus, n_max: usize, bound: usize) -> (Self, Option<ExteriorError>) {
        let braid = braiding(&calc);
        let mut degrees = Vec::new();
        let mut err = None;
        for n in 0..=n_max {
            match Degree::build(&braid, n, bound) {
                Ok(d) => degrees.push(d),
                Err(e) => {
                    err = Some(e);
                    break;
                }
            }
        }
        let relations = if degrees.len() > 2 || (degrees.len() == 2 && check_bound(braid.labels, 2, bound).is_ok()) {
            let mm = braid.labels * braid.labels;
            let words = reduced_words(2);
            let cols: Vec<SparseVec<CycNum>> = (0..mm)
                .map(|j| antisymmetrize(&braid, 2, &words, &vec![(j, CycNum::one())]))
                .collect();
            sparse::kernel(&sparse::transpose(&cols, mm), mm)
        } else {
            Vec::new()
        };
        (
            ExteriorData {
                calc,
                braid,
                degrees,
                relations,
            },
            err,
        )
    }

    pub fn n_max(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, n: usize) -> &Degree {
        &self.degrees[n]
    }

    pub fn lambda_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim()).collect()
    }

    pub fn labels(&self) -> usize {
        self.braid.labels
    }

    fn tensor_index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.labels() + d)
    }

    fn digits(&self, mut j: usize, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for k in (0..n).rev() {
            out[k] = j % self.labels();
            j /= self.labels();
        }
        out
    }

    /// Kernel basis of `A₂` as degree-2 tensors.
    pub fn quadratic_relations(&self) -> &[SparseVec<CycNum>] {
        &self.relations
    }

    pub fn is_relation(&self, t: &SparseVec<CycNum>) -> bool {
        let words = reduced_words(2);
        antisymmetrize(&self.braid, 2, &words, t).is_empty()
    }

    /// `x·e_J = Σ c·e_{J'}·z` with `x` an algebra basis index.
    pub fn left_act_tensor(&self, x: usize, j: usize, n: usize) -> Vec<(usize, CycNum, usize)> {
        let mut cur: Vec<(usize, CycNum, usize)> = vec![(0, CycNum::one(), x)];
        for l in self.digits(j, n) {
            let mut next = Vec::new();
            for (pref, c, z) in &cur {
                for t in self.calc.act(*z, l) {
                    next.push((pref * self.labels() + t.label, c.mul(&t.coeff), t.z));
                }
            }
            cur = next;
        }
        cur
    }

    /// `d t = (−1)ⁿ t∧θ − θ∧t` on tensor representatives.
    pub fn d_tensor(&self, n: usize, t: &Terms) -> Terms {
        let labels = self.labels();
        let m = self.calc.m();
        let shift = labels.pow(n as u32);
        let sign = CycNum::from_int(if n.is_multiple_of(2) { 1 } else { -1 });
        let mut out = Terms::zero();
        for (&(j, x), c) in t.iter() {
            for alpha in 0..m {
                let diag = alpha * m + alpha;
                for a in self.calc.act(x, diag) {
                    out.add_term(j * labels + a.label, a.z, &c.mul(&a.coeff).mul(&sign));
                }
                out.add_term(diag * shift + j, x, &c.neg());
            }
        }
        out
    }

    /// Degree-`n` tensors with coefficients into `Λⁿ` coordinates.
    pub fn project(&self, n: usize, t: &Terms) -> Terms {
        let d = &self.degrees[n];
        let mut out = Terms::zero();
        for (&(j, x), c) in t.iter() {
            for (p, v) in d.project_basis(j) {
                out.add_term(*p, x, &c.mul(v));
            }
        }
        out
    }

    pub fn lift(&self, f: &Form) -> Terms {
        let l = self.degrees[f.degree].lift();
        let mut out = Terms::zero();
        for (&(p, x), c) in f.terms.iter() {
            for (j, v) in &l[p] {
                out.add_term(*j, x, &c.mul(v));
            }
        }
        out
    }

    pub fn form_from_tensor(&self, n: usize, t: &Terms) -> Form {
        Form {
            degree: n,
            terms: self.project(n, t),
        }
    }

    /// `ω∧η`: concatenate, moving the coefficients of `ω` through `η`.
    pub fn wedge(&self, w: &Form, h: &Form) -> Form {
        let (n, k) = (w.degree, h.degree);
        assert!(n + k < self.degrees.len(), "degree beyond n_max");
        let tw = self.lift(w);
        let th = self.lift(h);
        let shift = self.labels().pow(k as u32);
        let mut out = Terms::zero();
        for (&(i, x), c) in tw.iter() {
            for (&(j, y), c2) in th.iter() {
                for (j2, c3, z) in self.left_act_tensor(x, j, k) {
                    if let Some(p) = self.calc.amul(z, y) {
                        out.add_term(i * shift + j2, p, &c.mul(c2).mul(&c3));
                    }
                }
            }
        }
        self.form_from_tensor(n + k, &out)
    }

    pub fn d(&self, w: &Form) -> Form {
        let n = w.degree;
        assert!(n < self.n_max(), "degree beyond n_max");
        self.form_from_tensor(n + 1, &self.d_tensor(n, &self.lift(w)))
    }

    /// `a ∈ A` as a degree-0 form.
    pub fn scalar_form(&self, a: &DualDoubleElement) -> Form {
        let mut t = Terms::zero();
        for (&(s, u), c) in a.terms() {
            t.add_term(0, self.calc.abasis(s, u), c);
        }
        Form { degree: 0, terms: t }
    }

    pub fn theta_form(&self) -> Form {
        self.form_from_tensor(1, self.calc.theta())
    }

    /// Images of the source basis `(J ∈ Q_n, x)` under `d`, in `(P_{n+1}, x)`
    /// coordinates flattened with stride `|G|²`.
    pub fn d_matrix(&self, n: usize) -> Vec<SparseVec<CycNum>> {
        let na = self.calc.algebra_dim();
        let mut out = Vec::new();
        for &j in &self.degrees[n].basis {
            for x in 0..na {
                let t = Terms::single(j, x, CycNum::one());
                out.push(self.project(n + 1, &self.d_tensor(n, &t)).to_sparse(na));
            }
        }
        out
    }

    /// `d∘d = 0` on the source basis of every degree `n` with `n + 2 ≤ n_max`.
    pub fn check_dd_zero(&self) -> Result<usize, ExteriorError> {
        let na = self.calc.algebra_dim();
        let mut checked = 0;
        for n in 0..self.degrees.len().saturating_sub(2) {
            for &j in &self.degrees[n].basis {
                for x in 0..na {
                    let t = Terms::single(j, x, CycNum::one());
                    let dd = self.d_tensor(n + 1, &self.d_tensor(n, &t));
                    checked += 1;
                    if !self.project(n + 2, &dd).is_zero() {
                        return Err(ExteriorError::Gate {
                            gate: "dd_zero",
                            detail: format!("d²(e_{j}·{}) ≠ 0 in degree {}", self.calc.element_name(x), n + 2),
                        });
                    }
                }
            }
        }
        Ok(checked)
    }

    /// `d` on degree 0 equals the first-order differential.
    pub fn check_degree0(&self) -> Result<(), ExteriorError> {
        for x in 0..self.calc.algebra_dim() {
            let t = Terms::single(0, x, CycNum::one());
            let ours = self.project(1, &self.d_tensor(0, &t));
            if ours != self.project(1, self.calc.d_basis(x)) {
                return Err(ExteriorError::Gate {
                    gate: "degree0",
                    detail: format!("d({}) differs from the first-order d", self.calc.element_name(x)),
                });
            }
        }
        Ok(())
    }

    /// Every algebra basis element maps `ker A₂` into `ker A₂ ⊗ A`.
    pub fn check_bimodule_stability(&self) -> Result<usize, ExteriorError> {
        let words = reduced_words(2);
        let mut checked = 0;
        for x in 0..self.calc.algebra_dim() {
            for k in &self.relations {
                let mut by_z: BTreeMap<usize, BTreeMap<usize, CycNum>> = BTreeMap::new();
                for (j, c) in k {
                    for (j2, c2, z) in self.left_act_tensor(x, *j, 2) {
                        sparse::add_into(by_z.entry(z).or_default(), j2, &c.mul(&c2));
                    }
                }
                for (z, t) in by_z {
                    let v: SparseVec<CycNum> = t.into_iter().collect();
                    checked += 1;
                    if !antisymmetrize(&self.braid, 2, &words, &v).is_empty() {
                        return Err(ExteriorError::Gate {
                            gate: "bimodule_stability",
                            detail: format!(
                                "{} · relation leaves ker A₂ (coefficient {})",
                                self.calc.element_name(x),
                                self.calc.element_name(z)
                            ),
                        });
                    }
                }
            }
        }
        Ok(checked)
    }

    pub fn cohomology(&self) -> Cohomology {
        let na = self.calc.algebra_dim();
        let top = self.n_max();
        let mut ranks = Vec::new();
        let mut mats = Vec::new();
        for n in 0..top {
            let mat = self.d_matrix(n);
            let dim_target = self.degrees[n + 1].dim() * na;
            ranks.push(sparse::rank(&mat, dim_target));
            mats.push(mat);
        }
        let omega: Vec<usize> = self.degrees.iter().map(|d| d.dim() * na).collect();
        let betti: Vec<usize> = (0..top)
            .map(|n| omega[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
            .collect();
        // H⁰: the kernel of d₀ in algebra coordinates
        let h0_basis: Vec<SparseVec<CycNum>> = if top >= 1 {
            sparse::kernel(&sparse::transpose(&mats[0], self.degrees[1].dim() * na), na)
        } else {
            Vec::new()
        };
        let unit: SparseVec<CycNum> = self
            .scalar_form(&dstar_unit(&self.calc.module.group))
            .terms
            .to_sparse(na);
        let h0_is_unit = h0_basis.len() == 1 && {
            let mut e = Echelon::new(na);
            e.insert(&h0_basis[0]);
            e.contains(&unit)
        };
        // H¹: θ closed and not exact, and the representatives found by
        // extending im d₀ with ker d₁
        let mut h1_reps = Vec::new();
        let mut theta_spans_h1 = false;
        if top >= 2 {
            let dim1 = self.degrees[1].dim() * na;
            let theta: SparseVec<CycNum> = self.theta_form().terms.to_sparse(na);
            let ker1 = sparse::kernel(&sparse::transpose(&mats[1], self.degrees[2].dim() * na), dim1);
            // source basis of degree 1 coincides with P₁ = all labels
            let mut im0 = Echelon::new(dim1);
            for v in &mats[0] {
                im0.insert(v);
            }
            let exact_rank = im0.rank();
            let theta_closed = self.project(2, &self.d_tensor(1, self.calc.theta())).is_zero();
            let mut ext = im0.clone();
            for k in &ker1 {
                if ext.insert(k) {
                    h1_reps.push(k.clone());
                }
            }
            let theta_exact = im0.contains(&theta);
            theta_spans_h1 = theta_closed && !theta_exact && h1_reps.len() == 1;
            debug_assert_eq!(ext.rank() - exact_rank, h1_reps.len());
        }
        Cohomology {
            omega_dims: omega,
            d_ranks: ranks,
            betti,
            h0_is_unit,
            theta_spans_h1,
            h1_representatives: h1_reps,
        }
    }

    /// Dimensions of the subalgebra generated by the diagonal forms
    /// `e_{ai}^{ai}`, degrees `0..=n_top`.
    pub fn classical_dims(&self, n_top: usize, bound: usize) -> Result<Vec<usize>, ExteriorError> {
        let m = self.calc.m();
        let diag: Vec<usize> = (0..m).map(|a| a * m + a).collect();
        let mut dims = Vec::new();
        for n in 0..=n_top {
            let size = check_bound(diag.len(), n, bound)?;
            check_bound(self.labels(), n, bound.max(self.labels().pow(n as u32)))?;
            let words = reduced_words(n);
            let mut ech = Echelon::new(self.labels().pow(n as u32));
            for idx in 0..size {
                let mut rem = idx;
                let mut ds = vec![0; n];
                for k in (0..n).rev() {
                    ds[k] = diag[rem % diag.len()];
                    rem /= diag.len();
                }
                let j = self.tensor_index(&ds);
                ech.insert(&antisymmetrize(&self.braid, n, &words, &vec![(j, CycNum::one())]));
            }
            dims.push(ech.rank());
        }
        Ok(dims)
    }

    /// Dimensions of the quadratic algebra `T/(ker A₂)` in degrees `0..=n_max`.
    pub fn quadratic_dims(&self) -> Vec<usize> {
        let labels = self.labels();
        let mut out = Vec::new();
        for n in 0..self.degrees.len() {
            if n < 2 {
                out.push(labels.pow(n as u32));
                continue;
            }
            let size = labels.pow(n as u32);
            let mut ech = Echelon::new(size);
            for i in 0..=n - 2 {
                let right = labels.pow((n - 2 - i) as u32);
                let left = labels.pow(i as u32);
                for k in &self.relations {
                    for hi in 0..left {
                        for lo in 0..right {
                            let v: SparseVec<CycNum> = k
                                .iter()
                                .map(|(j, c)| ((hi * labels * labels + j) * right + lo, c.clone()))
                                .collect();
                            ech.insert(&v);
                        }
                    }
                }
            }
            out.push(size - ech.rank());
        }
        out
    }

    /// Human-readable tensor, e.g. `e_u^v⊗e_v^u − e_w^w⊗e_u^u`.
    pub fn tensor_string(&self, n: usize, v: &SparseVec<CycNum>) -> String {
        v.iter()
            .map(|(j, c)| {
                let names: Vec<String> = self.digits(*j, n).iter().map(|&l| self.calc.label_name(l)).collect();
                format!("({})*{}", c, names.join("⊗"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Degree-`n` tensor index from label indices.
    pub fn tensor(&self, labels: &[usize]) -> usize {
        self.tensor_index(labels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub omega_dims: Vec<usize>,
    pub d_ranks: Vec<usize>,
    pub betti: Vec<usize>,
    pub h0_is_unit: bool,
    pub theta_spans_h1: bool,
    #[serde(skip)]
    pub h1_representatives: Vec<SparseVec<CycNum>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::CrossedModule;
    use crate::group::{FiniteGroup, Section};
    use crate::rep::{Family, Representation};

    fn calc_for(basepoint: usize, fam: Family) -> Calculus {
        let g = FiniteGroup::builtin("S3").unwrap();
        let sec = Section::default_for(&g, &g.class_of(basepoint));
        let rep = Representation::builtin(&g.centralizer(basepoint).group, &fam).unwrap();
        Calculus::build(&CrossedModule::new(&g, &sec, &rep).unwrap()).unwrap()
    }

    #[test]
    fn words_for_small_n() {
        assert_eq!(reduced_words(0), vec![(1, vec![])]);
        assert_eq!(reduced_words(2), vec![(1, vec![]), (-1, vec![1])]);
        let w3 = reduced_words(3);
        assert_eq!(w3.len(), 6);
        assert_eq!(w3.iter().map(|(_, w)| w.len()).max(), Some(3));
        assert_eq!(w3.iter().map(|(s, _)| s).sum::<i64>(), 0);
    }

    #[test]
    fn one_dimensional_calculus() {
        let c = calc_for(0, Family::SignSn);
        let psi = braiding(&c);
        assert!(psi.matrix().is_identity());
        assert!(antisymmetrizer(&psi, 2, 100).unwrap().is_zero());
        let ext = ExteriorData::build(c, 4, DEFAULT_MAX_DIM).unwrap();
        assert_eq!(ext.lambda_dims(), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn small_calculi_oracles() {
        for (b, fam) in [
            (3, Family::Cyclic { n: 3, k: 1 }),
            (3, Family::Trivial),
            (0, Family::Standard2S3),
            (1, Family::Cyclic { n: 2, k: 1 }),
        ] {
            let c = calc_for(b, fam);
            let d = braiding(&c);
            let o = braiding_oracle(&c);
            assert_eq!(d.first_difference(&o), None);
            assert!(d.is_invertible());
            assert!(d.braid_relation_holds());
        }
    }

    #[test]
    fn a2_is_identity_minus_psi() {
        let c = calc_for(3, Family::Trivial);
        let psi = braiding(&c);
        let a2 = antisymmetrizer(&psi, 2, 1000).unwrap();
        let want = CycMatrix::identity(16).sub(&psi.matrix());
        assert_eq!(a2, want);
        assert!(matches!(
            antisymmetrizer(&psi, 5, 1000),
            Err(ExteriorError::SizeBound { .. })
        ));
    }

    #[test]
    fn four_dimensional_calculus_gates() {
        let c = calc_for(3, Family::Cyclic { n: 3, k: 1 });
        let ext = ExteriorData::build(c, 3, DEFAULT_MAX_DIM).unwrap();
        ext.check_degree0().unwrap();
        ext.check_dd_zero().unwrap();
        ext.check_bimodule_stability().unwrap();
        let dims = ext.lambda_dims();
        assert_eq!(&dims[..2], &[1, 4]);
    }

    #[test]
    fn wedge_with_unit_coefficient() {
        let c = calc_for(1, Family::Cyclic { n: 2, k: 1 });
        let ext = ExteriorData::build(c, 2, DEFAULT_MAX_DIM).unwrap();
        let g = ext.calc.module.group.clone();
        let one = ext.scalar_form(&dstar_unit(&g));
        let th = ext.theta_form();
        assert_eq!(ext.wedge(&one, &th), th);
        assert_eq!(ext.wedge(&th, &one), th);
        // e_a ∧ e_a = 0
        let l = ext.calc.label_of(1, 0, 1, 0);
        let ea = ext.form_from_tensor(1, &ext.calc.label_form(l));
        assert!(ext.wedge(&ea, &ea).terms.is_zero());
        assert!(ext.d(&one).terms.is_zero());
        assert!(ext.d(&th).terms.is_zero());
    }
}
