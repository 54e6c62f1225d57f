//! The quantum double `D(G) = k(G)⋊kG`, its dual `A = D*(G) = kG⋉k(G)`,
//! the representations `ρ` labelled by (class, centralizer irrep), and the
//! block decomposition of `D(G)`.
//!
//! Conventions:
//! - `D(G)` basis `δ_s⊗u`, product `(δ_s⊗u)(δ_t⊗v) = δ_{s,utu⁻¹} δ_s⊗uv`.
//! - `A` basis `sδ_u`, product `(sδ_u)(tδ_v) = δ_{u,v} (st)δ_u`.
//! - `Δ(tδ_v) = Σ_{xy=v} tδ_x ⊗ (x⁻¹tx)δ_y`, `ε(sδ_u) = [u=e]`.
//! - `S(tδ_v) = (v⁻¹t⁻¹v)δ_{v⁻¹}`, certified by the antipode axiom.
//! - pairing `⟨δ_s⊗u, tδ_v⟩ = [s=t][u=v]`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{CycMatrix, CycNum};
use crate::group::{ConjClass, Elem, FiniteGroup, GroupError, Section, Subgroup};
use crate::rep::{catalog, RepError, Representation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DoubleError {
    #[error("no catalog coverage for the centralizer (order {order}) of class {class}")]
    Uncovered { class: String, order: usize },
    #[error("inconsistent block data: {0}")]
    Inconsistent(String),
    #[error("ρ is not an algebra map at ({0}, {1})")]
    NotHomomorphism(String, String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

macro_rules! sparse_element {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Eq, Default)]
        pub struct $name {
            terms: BTreeMap<(Elem, Elem), CycNum>,
        }

        impl $name {
            pub fn zero() -> Self {
                Self::default()
            }

            pub fn basis(s: Elem, u: Elem) -> Self {
                let mut terms = BTreeMap::new();
                terms.insert((s, u), CycNum::one());
                Self { terms }
            }

            pub fn from_terms(it: impl IntoIterator<Item = ((Elem, Elem), CycNum)>) -> Self {
                let mut x = Self::zero();
                for (k, c) in it {
                    x.add_term(k, &c);
                }
                x
            }

            pub fn add_term(&mut self, k: (Elem, Elem), c: &CycNum) {
                if c.is_zero() {
                    return;
                }
                let v = match self.terms.get(&k) {
                    Some(old) => old.add(c),
                    None => c.clone(),
                };
                if v.is_zero() {
                    self.terms.remove(&k);
                } else {
                    self.terms.insert(k, v);
                }
            }

            pub fn terms(&self) -> impl Iterator<Item = (&(Elem, Elem), &CycNum)> {
                self.terms.iter()
            }

            pub fn coeff(&self, s: Elem, u: Elem) -> CycNum {
                self.terms.get(&(s, u)).cloned().unwrap_or_else(CycNum::zero)
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn len(&self) -> usize {
                self.terms.len()
            }

            pub fn is_empty(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn add(&self, o: &Self) -> Self {
                let mut x = self.clone();
                for (k, c) in &o.terms {
                    x.add_term(*k, c);
                }
                x
            }

            pub fn sub(&self, o: &Self) -> Self {
                self.add(&o.scale(&CycNum::from_int(-1)))
            }

            pub fn scale(&self, c: &CycNum) -> Self {
                Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.mul(c))))
            }
        }
    };
}

sparse_element!(DoubleElement);
sparse_element!(DualDoubleElement);

/// A finite sum `Σ x_i ⊗ y_i`.
pub type Tensor2<X> = Vec<(X, X)>;

// ---- D(G) ----

pub fn dg_unit(g: &FiniteGroup) -> DoubleElement {
    DoubleElement::from_terms(g.elements().map(|s| ((s, g.identity()), CycNum::one())))
}

/// `1⊗u = Σ_s δ_s⊗u`.
pub fn dg_group_element(g: &FiniteGroup, u: Elem) -> DoubleElement {
    DoubleElement::from_terms(g.elements().map(|s| ((s, u), CycNum::one())))
}

pub fn dg_multiply(g: &FiniteGroup, x: &DoubleElement, y: &DoubleElement) -> DoubleElement {
    let mut out = DoubleElement::zero();
    for (&(s, u), a) in x.terms() {
        for (&(t, v), b) in y.terms() {
            if s == g.conj(u, t) {
                out.add_term((s, g.mul(u, v)), &a.mul(b));
            }
        }
    }
    out
}

pub fn dg_counit(g: &FiniteGroup, x: &DoubleElement) -> CycNum {
    x.terms()
        .filter(|((s, _), _)| *s == g.identity())
        .fold(CycNum::zero(), |acc, (_, c)| acc.add(c))
}

/// `S(δ_s⊗u) = δ_{u⁻¹s⁻¹u}⊗u⁻¹`.
pub fn dg_antipode(g: &FiniteGroup, x: &DoubleElement) -> DoubleElement {
    DoubleElement::from_terms(x.terms().map(|(&(s, u), c)| {
        let ui = g.inv(u);
        ((g.conj(ui, g.inv(s)), ui), c.clone())
    }))
}

/// `Δ(δ_s⊗u) = Σ_{ab=s} (δ_a⊗u)⊗(δ_b⊗u)`.
pub fn dg_coproduct(g: &FiniteGroup, x: &DoubleElement) -> Tensor2<DoubleElement> {
    let mut out = Vec::new();
    for (&(s, u), c) in x.terms() {
        for a in g.elements() {
            let b = g.mul(g.inv(a), s);
            out.push((DoubleElement::basis(a, u).scale(c), DoubleElement::basis(b, u)));
        }
    }
    out
}

/// `ℛ = Σ_u (δ_u⊗e) ⊗ (1⊗u)`.
pub fn r_terms(g: &FiniteGroup) -> Tensor2<DoubleElement> {
    g.elements()
        .map(|u| (DoubleElement::basis(u, g.identity()), dg_group_element(g, u)))
        .collect()
}

/// `Q = Σ_{u,v} (δ_{uvu⁻¹}⊗u) ⊗ (δ_u⊗v)`.
pub fn q_terms(g: &FiniteGroup) -> Tensor2<DoubleElement> {
    let mut out = Vec::new();
    for u in g.elements() {
        for v in g.elements() {
            out.push((DoubleElement::basis(g.conj(u, v), u), DoubleElement::basis(u, v)));
        }
    }
    out
}

/// `D(G)⊗D(G)` in the basis `(δ_s⊗u) ⊗ (δ_t⊗v)`.
pub type DoubleTensor = BTreeMap<((Elem, Elem), (Elem, Elem)), CycNum>;

/// Product of two-leg tensors in `D(G)⊗D(G)`.
pub fn dg_tensor_multiply(g: &FiniteGroup, x: &Tensor2<DoubleElement>, y: &Tensor2<DoubleElement>) -> DoubleTensor {
    let mut acc = DoubleTensor::new();
    for (a1, a2) in x {
        for (b1, b2) in y {
            let p = dg_multiply(g, a1, b1);
            let q = dg_multiply(g, a2, b2);
            for (k1, c1) in p.terms() {
                for (k2, c2) in q.terms() {
                    let e = acc.entry((*k1, *k2)).or_insert_with(CycNum::zero);
                    *e = e.add(&c1.mul(c2));
                }
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

// ---- A = D*(G) ----

pub fn dstar_unit(g: &FiniteGroup) -> DualDoubleElement {
    DualDoubleElement::from_terms(g.elements().map(|u| ((g.identity(), u), CycNum::one())))
}

/// `s = Σ_u sδ_u`.
pub fn dstar_group_element(g: &FiniteGroup, s: Elem) -> DualDoubleElement {
    DualDoubleElement::from_terms(g.elements().map(|u| ((s, u), CycNum::one())))
}

/// `δ_u = Σ_s ... ` restricted to `eδ_u`.
pub fn dstar_delta(g: &FiniteGroup, u: Elem) -> DualDoubleElement {
    DualDoubleElement::basis(g.identity(), u)
}

/// Product of basis elements, `None` when zero.
pub fn dstar_basis_mul(g: &FiniteGroup, (s, u): (Elem, Elem), (t, v): (Elem, Elem)) -> Option<(Elem, Elem)> {
    (u == v).then(|| (g.mul(s, t), u))
}

pub fn dstar_multiply(g: &FiniteGroup, x: &DualDoubleElement, y: &DualDoubleElement) -> DualDoubleElement {
    let mut out = DualDoubleElement::zero();
    for (a, p) in x.terms() {
        for (b, q) in y.terms() {
            if let Some(k) = dstar_basis_mul(g, *a, *b) {
                out.add_term(k, &p.mul(q));
            }
        }
    }
    out
}

/// Coproduct of a basis element as a list of basis pairs (coefficient 1).
pub fn dstar_coproduct_basis(g: &FiniteGroup, (t, v): (Elem, Elem)) -> Vec<((Elem, Elem), (Elem, Elem))> {
    g.elements()
        .map(|x| {
            let y = g.mul(g.inv(x), v);
            ((t, x), (g.conj(g.inv(x), t), y))
        })
        .collect()
}

pub fn dstar_coproduct(g: &FiniteGroup, a: &DualDoubleElement) -> Tensor2<DualDoubleElement> {
    let mut out = Vec::new();
    for (&k, c) in a.terms() {
        for (l, r) in dstar_coproduct_basis(g, k) {
            out.push((
                DualDoubleElement::basis(l.0, l.1).scale(c),
                DualDoubleElement::basis(r.0, r.1),
            ));
        }
    }
    out
}

pub fn dstar_counit(g: &FiniteGroup, a: &DualDoubleElement) -> CycNum {
    a.terms()
        .filter(|((_, u), _)| *u == g.identity())
        .fold(CycNum::zero(), |acc, (_, c)| acc.add(c))
}

pub fn dstar_antipode_basis(g: &FiniteGroup, (t, v): (Elem, Elem)) -> (Elem, Elem) {
    let vi = g.inv(v);
    (g.conj(vi, g.inv(t)), vi)
}

pub fn dstar_antipode(g: &FiniteGroup, a: &DualDoubleElement) -> DualDoubleElement {
    DualDoubleElement::from_terms(a.terms().map(|(&k, c)| (dstar_antipode_basis(g, k), c.clone())))
}

/// `Σ S(x₁)x₂ = ε(x)1 = Σ x₁S(x₂)` on every basis element, for the given
/// antipode on basis elements.
pub fn antipode_axiom_holds(g: &FiniteGroup, antipode: impl Fn((Elem, Elem)) -> (Elem, Elem)) -> bool {
    let unit = dstar_unit(g);
    for t in g.elements() {
        for v in g.elements() {
            let eps = dstar_counit(g, &DualDoubleElement::basis(t, v));
            let want = unit.scale(&eps);
            let mut left = DualDoubleElement::zero();
            let mut right = DualDoubleElement::zero();
            for (x1, x2) in dstar_coproduct_basis(g, (t, v)) {
                if let Some(k) = dstar_basis_mul(g, antipode(x1), x2) {
                    left.add_term(k, &CycNum::one());
                }
                if let Some(k) = dstar_basis_mul(g, x1, antipode(x2)) {
                    right.add_term(k, &CycNum::one());
                }
            }
            if left != want || right != want {
                return false;
            }
        }
    }
    true
}

pub fn pairing(x: &DoubleElement, a: &DualDoubleElement) -> CycNum {
    x.terms()
        .filter_map(|(k, c)| {
            let d = a.coeff(k.0, k.1);
            (!d.is_zero()).then(|| c.mul(&d))
        })
        .fold(CycNum::zero(), |acc, v| acc.add(&v))
}

/// `(⟨·,a⟩⊗id)(t) = Σ ⟨x_i,a⟩ y_i`.
pub fn pair_first_leg(t: &Tensor2<DoubleElement>, a: &DualDoubleElement) -> DoubleElement {
    t.iter()
        .fold(DoubleElement::zero(), |acc, (x, y)| acc.add(&y.scale(&pairing(x, a))))
}

/// `(id⊗⟨·,a⟩)(t) = Σ x_i ⟨y_i,a⟩`.
pub fn pair_second_leg(t: &Tensor2<DoubleElement>, a: &DualDoubleElement) -> DoubleElement {
    t.iter()
        .fold(DoubleElement::zero(), |acc, (x, y)| acc.add(&x.scale(&pairing(y, a))))
}

// ---- representations ρ of D(G) ----

/// The data `(𝒞, V, g)` defining the irreducible `D(G)`-module `W` with basis
/// `e_{ai}`, indexed by `pos(a)·dim V + i`.
#[derive(Debug, Clone)]
pub struct CrossedModule {
    pub group: FiniteGroup,
    pub class: ConjClass,
    pub centralizer: Subgroup,
    pub rep: Representation,
    pub section: Section,
    /// `ρ_V(ζ_a(u))`, indexed `[pos(a)][u]`
    zeta: Vec<Vec<CycMatrix>>,
}

impl CrossedModule {
    pub fn new(group: &FiniteGroup, section: &Section, rep: &Representation) -> Result<Self, DoubleError> {
        let class = section.class.clone();
        let centralizer = group.centralizer(class.basepoint);
        if *rep.group() != centralizer.group {
            return Err(DoubleError::Inconsistent(
                "representation is not on the basepoint centralizer".into(),
            ));
        }
        let zeta = class
            .elements
            .iter()
            .map(|&a| {
                group
                    .elements()
                    .map(|u| {
                        let z = section.cocycle(group, a, u);
                        rep.matrix(centralizer.local(z).unwrap()).clone()
                    })
                    .collect()
            })
            .collect();
        Ok(CrossedModule {
            group: group.clone(),
            class,
            centralizer,
            rep: rep.clone(),
            section: section.clone(),
            zeta,
        })
    }

    /// Overwrite one cocycle matrix; only for exercising failure paths.
    pub fn corrupt_zeta(&mut self, a: Elem, u: Elem, m: CycMatrix) {
        let p = self.class.position(a).expect("element not in class");
        self.zeta[p][u] = m;
    }

    pub fn dim_v(&self) -> usize {
        self.rep.dim()
    }

    /// `dim W = |𝒞|·dim V`.
    pub fn m(&self) -> usize {
        self.class.len() * self.rep.dim()
    }

    pub fn index(&self, a: Elem, i: usize) -> usize {
        self.class.position(a).expect("element not in class") * self.dim_v() + i
    }

    /// `(a, i)` of a module index.
    pub fn label(&self, idx: usize) -> (Elem, usize) {
        (self.class.elements[idx / self.dim_v()], idx % self.dim_v())
    }

    pub fn zeta(&self, a: Elem, u: Elem) -> &CycMatrix {
        &self.zeta[self.class.position(a).expect("element not in class")][u]
    }

    pub fn is_trivial(&self) -> bool {
        self.class.is_trivial(&self.group) && self.rep.is_trivial()
    }

    /// `ρ(δ_s⊗u)^{ai}_{bj} = δ_{s,a} δ_{u⁻¹au,b} ζ_b(u)^i_j`.
    pub fn rho_basis(&self, s: Elem, u: Elem) -> CycMatrix {
        let g = &self.group;
        let d = self.dim_v();
        let mut m = CycMatrix::zeros(self.m(), self.m());
        if self.class.contains(s) {
            let b = g.conj(g.inv(u), s);
            let z = self.zeta(b, u);
            for i in 0..d {
                for j in 0..d {
                    m.set(self.index(s, i), self.index(b, j), z.get(i, j).clone());
                }
            }
        }
        m
    }

    pub fn rho(&self, x: &DoubleElement) -> CycMatrix {
        x.terms()
            .fold(CycMatrix::zeros(self.m(), self.m()), |acc, (&(s, u), c)| {
                acc.add(&self.rho_basis(s, u).scale(c))
            })
    }

    /// Exhaustive check that `ρ` is an algebra map on basis pairs.
    pub fn check_homomorphism(&self) -> Result<(), DoubleError> {
        let g = &self.group;
        let basis: Vec<(Elem, Elem)> = g.elements().flat_map(|s| g.elements().map(move |u| (s, u))).collect();
        let mats: Vec<CycMatrix> = basis.iter().map(|&(s, u)| self.rho_basis(s, u)).collect();
        if !self.rho(&dg_unit(g)).is_identity() {
            return Err(DoubleError::NotHomomorphism("1".into(), "1".into()));
        }
        for (i, &x) in basis.iter().enumerate() {
            for (j, &y) in basis.iter().enumerate() {
                let prod = dg_multiply(g, &DoubleElement::basis(x.0, x.1), &DoubleElement::basis(y.0, y.1));
                if mats[i].matmul(&mats[j]) != self.rho(&prod) {
                    let name = |(s, u): (Elem, Elem)| format!("δ_{}⊗{}", g.name(s), g.name(u));
                    return Err(DoubleError::NotHomomorphism(name(x), name(y)));
                }
            }
        }
        Ok(())
    }

    /// `(ρ⊗ρ)(t)` as an `m²×m²` matrix, row index `α·m + γ`.
    pub fn rho2(&self, t: &Tensor2<DoubleElement>) -> CycMatrix {
        let m = self.m();
        t.iter().fold(CycMatrix::zeros(m * m, m * m), |acc, (x, y)| {
            acc.add(&self.rho(x).kron(&self.rho(y)))
        })
    }

    /// `R = (ρ⊗ρ)(ℛ)`.
    pub fn r_matrix(&self) -> CycMatrix {
        self.rho2(&r_terms(&self.group))
    }

    /// `R̃ = (ρ⊗ρ∘S)(ℛ)`.
    pub fn r_tilde(&self) -> CycMatrix {
        let g = &self.group;
        let t: Tensor2<DoubleElement> = r_terms(g).into_iter().map(|(x, y)| (x, dg_antipode(g, &y))).collect();
        self.rho2(&t)
    }

    pub fn yang_baxter_holds(&self) -> bool {
        let m = self.m();
        let r = self.r_matrix();
        let r12 = embed_two_leg(&r, m, 0, 1);
        let r13 = embed_two_leg(&r, m, 0, 2);
        let r23 = embed_two_leg(&r, m, 1, 2);
        r12.matmul(&r13).matmul(&r23) == r23.matmul(&r13).matmul(&r12)
    }
}

/// Place an operator on `W⊗W` into legs `(p, q)` of `W⊗W⊗W`.
fn embed_two_leg(r: &CycMatrix, m: usize, p: usize, q: usize) -> CycMatrix {
    let n = m * m * m;
    let mut out = CycMatrix::zeros(n, n);
    let digits = |x: usize| [x / (m * m), (x / m) % m, x % m];
    for col in 0..n {
        let c = digits(col);
        let other = 3 - p - q;
        for rp in 0..m {
            for rq in 0..m {
                let v = r.get(rp * m + rq, c[p] * m + c[q]);
                if v.is_zero() {
                    continue;
                }
                let mut rd = [0; 3];
                rd[p] = rp;
                rd[q] = rq;
                rd[other] = c[other];
                out.set(rd[0] * m * m + rd[1] * m + rd[2], col, v.clone());
            }
        }
    }
    out
}

// ---- blocks ----

#[derive(Debug, Clone)]
pub struct Block {
    pub module: CrossedModule,
    pub projector: DoubleElement,
    /// `(|𝒞|·dim V)²`
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub class_representative: String,
    pub class_size: usize,
    pub centralizer_order: usize,
    pub irrep: String,
    pub irrep_dim: usize,
    pub calculus_dim: usize,
    pub trivial: bool,
}

/// `e = Σ_{s∈𝒞} δ_s⊗e_s`, with `e_s = g_s e₀ g_s⁻¹`.
pub fn central_projector(module: &CrossedModule) -> Result<Block, DoubleError> {
    let g = &module.group;
    let e0 = module.rep.central_idempotent()?;
    let mut proj = DoubleElement::zero();
    for &s in &module.class.elements {
        let gs = module.section.rep(s);
        for (local, c) in e0.coeffs.iter().enumerate() {
            let u = module.centralizer.parent(local);
            proj.add_term((s, g.conj(gs, u)), c);
        }
    }
    let m = module.m();
    Ok(Block {
        module: module.clone(),
        projector: proj,
        dim: m * m,
    })
}

impl Block {
    pub fn is_idempotent(&self) -> bool {
        dg_multiply(&self.module.group, &self.projector, &self.projector) == self.projector
    }

    pub fn is_central(&self) -> bool {
        let g = &self.module.group;
        g.elements().all(|s| {
            g.elements().all(|u| {
                let x = DoubleElement::basis(s, u);
                dg_multiply(g, &x, &self.projector) == dg_multiply(g, &self.projector, &x)
            })
        })
    }

    /// `dim(e·D(G))` by rank of left multiplication.
    pub fn ideal_dim(&self) -> usize {
        let g = &self.module.group;
        let n = g.order();
        let rows: Vec<Vec<CycNum>> = g
            .elements()
            .flat_map(|s| g.elements().map(move |u| (s, u)))
            .map(|(s, u)| {
                let p = dg_multiply(g, &self.projector, &DoubleElement::basis(s, u));
                let mut row = vec![CycNum::zero(); n * n];
                for (&(a, b), c) in p.terms() {
                    row[a * n + b] = c.clone();
                }
                row
            })
            .collect();
        CycMatrix::from_rows(rows).rank()
    }

    pub fn counit(&self) -> CycNum {
        dg_counit(&self.module.group, &self.projector)
    }

    pub fn is_trivial(&self) -> bool {
        self.module.is_trivial()
    }

    pub fn report(&self) -> BlockReport {
        let md = &self.module;
        BlockReport {
            class_representative: md.group.name(md.class.basepoint).to_string(),
            class_size: md.class.len(),
            centralizer_order: md.centralizer.order(),
            irrep: md.rep.label().to_string(),
            irrep_dim: md.rep.dim(),
            calculus_dim: self.dim,
            trivial: self.is_trivial(),
        }
    }
}

/// One block per (class, catalog irrep), classes in canonical order and the
/// default section throughout.
pub fn enumerate_blocks(g: &FiniteGroup) -> Result<Vec<Block>, DoubleError> {
    let mut out = Vec::new();
    for class in g.conjugacy_classes() {
        let section = Section::default_for(g, &class);
        let cent = g.centralizer(class.basepoint);
        let (reps, covered) = catalog(&cent.group);
        if !covered {
            return Err(DoubleError::Uncovered {
                class: g.name(class.basepoint).to_string(),
                order: cent.order(),
            });
        }
        for rep in reps {
            let module = CrossedModule::new(g, &section, &rep)?;
            out.push(central_projector(&module)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Family;

    fn s3() -> FiniteGroup {
        FiniteGroup::builtin("S3").unwrap()
    }

    fn swap_module(q: i64) -> CrossedModule {
        let g = s3();
        let sec = Section::from_json(&g, r#"{"basepoint": 1, "section": {"2": "5", "5": "2"}}"#).unwrap();
        let cent = g.centralizer(1);
        let fam = if q == 1 {
            Family::Trivial
        } else {
            Family::Cyclic { n: 2, k: 1 }
        };
        let rep = Representation::builtin(&cent.group, &fam).unwrap();
        CrossedModule::new(&g, &sec, &rep).unwrap()
    }

    #[test]
    fn double_products() {
        let g = s3();
        let (u, v, w) = (1, 2, 5);
        let p = dg_multiply(&g, &DoubleElement::basis(u, v), &DoubleElement::basis(w, v));
        assert_eq!(p, DoubleElement::basis(u, 0));
        let x = DoubleElement::basis(3, 4).add(&DoubleElement::basis(2, 2).scale(&CycNum::from_int(5)));
        assert_eq!(dg_multiply(&g, &x, &dg_unit(&g)), x);
        assert_eq!(dg_multiply(&g, &dg_unit(&g), &x), x);
        assert!(dg_multiply(&g, &DoubleElement::basis(1, 0), &DoubleElement::basis(2, 0)).is_zero());
    }

    #[test]
    fn codouble_structure() {
        let z2 = FiniteGroup::builtin("Z2").unwrap();
        let cop = dstar_coproduct_basis(&z2, (0, 0));
        assert_eq!(cop, vec![((0, 0), (0, 0)), ((0, 1), (0, 1))]);
        let g = s3();
        let cop = dstar_coproduct(&g, &dstar_group_element(&g, 1));
        assert_eq!(cop.len(), 36);
        for x in g.elements() {
            assert_eq!(dstar_counit(&g, &DualDoubleElement::basis(x, 0)), CycNum::one());
            if x != 0 {
                assert!(dstar_counit(&g, &DualDoubleElement::basis(3, x)).is_zero());
            }
        }
        let a = dstar_multiply(&g, &dstar_group_element(&g, 1), &dstar_delta(&g, 2));
        assert_eq!(a, DualDoubleElement::basis(1, 2));
    }

    #[test]
    fn antipode_axiom() {
        for name in ["S3", "Z3", "D4"] {
            let g = FiniteGroup::builtin(name).unwrap();
            assert!(antipode_axiom_holds(&g, |k| dstar_antipode_basis(&g, k)));
        }
        // the naive formula s⁻¹ ⊗ δ_{s u⁻¹ s⁻¹} does not satisfy it
        let g = s3();
        assert!(!antipode_axiom_holds(&g, |(s, u)| (g.inv(s), g.conj(s, g.inv(u)))));
    }

    #[test]
    fn quantum_killing_form_is_r21_r() {
        let g = s3();
        let r = r_terms(&g);
        let r21: Tensor2<DoubleElement> = r.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        let prod = dg_tensor_multiply(&g, &r21, &r);
        let mut q: BTreeMap<_, CycNum> = BTreeMap::new();
        for (x, y) in q_terms(&g) {
            let (k1, _) = x.terms().next().unwrap();
            let (k2, _) = y.terms().next().unwrap();
            q.insert((*k1, *k2), CycNum::one());
        }
        assert_eq!(prod, q);
    }

    #[test]
    fn rho_examples() {
        let md = swap_module(-1);
        md.check_homomorphism().unwrap();
        let m = md.rho_basis(2, 1);
        let nz: Vec<(usize, usize, CycNum)> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| !m.get(i, j).is_zero())
            .map(|(i, j)| (i, j, m.get(i, j).clone()))
            .collect();
        assert_eq!(nz, vec![(md.index(2, 0), md.index(5, 0), CycNum::from_int(-1))]);
        let d = md.rho_basis(5, 0);
        assert!(d.get(2, 2).is_one() && d.get(0, 0).is_zero());
        assert!(md.yang_baxter_holds());
        assert!(swap_module(1).yang_baxter_holds());
    }

    #[test]
    fn s3_blocks() {
        let g = s3();
        let blocks = enumerate_blocks(&g).unwrap();
        let dims: Vec<usize> = blocks.iter().map(|b| b.dim).collect();
        assert_eq!(dims, [1, 1, 4, 4, 4, 4, 9, 9]);
        let mut total = DoubleElement::zero();
        for (i, b) in blocks.iter().enumerate() {
            assert!(b.is_idempotent() && b.is_central());
            assert_eq!(b.ideal_dim(), b.dim);
            assert_eq!(b.counit().is_zero(), !b.is_trivial());
            for (j, c) in blocks.iter().enumerate() {
                if i != j {
                    assert!(dg_multiply(&g, &b.projector, &c.projector).is_zero());
                }
            }
            total = total.add(&b.projector);
        }
        assert_eq!(total, dg_unit(&g));
        // class {uv, vu} with the trivial ℤ₃ irrep
        let third = CycNum::frac(1, 3);
        let want = DoubleElement::from_terms(
            [3usize, 4]
                .iter()
                .flat_map(|&s| [0usize, 3, 4].map(|u| ((s, u), third.clone()))),
        );
        assert_eq!(blocks[3].projector, want);
    }

    #[test]
    fn z2_blocks() {
        let g = FiniteGroup::builtin("Z2").unwrap();
        let blocks = enumerate_blocks(&g).unwrap();
        assert_eq!(blocks.len(), 4);
        assert!(blocks.iter().all(|b| b.dim == 1));
        assert_eq!(blocks.iter().filter(|b| !b.is_trivial()).count(), 3);
    }
}
