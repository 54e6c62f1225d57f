//! First-order bicovariant calculus `Ω¹ = End(W)·D*(G)` for one
//! (class, irrep) pair.
//!
//! Forms carry their algebra coefficients on the right: `ω = Σ e_L·x` with
//! label `L = α·m + β` for `e_α^β`, `α = (a,i)`, `β = (b,j)` module indices,
//! and `x = s·n + u` the index of the basis element `sδ_u` of `A`.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclo::{sparse, CycMatrix, CycNum};
use crate::double::{
    dstar_basis_mul, dstar_coproduct_basis, pair_first_leg, pair_second_leg, q_terms, r_terms, CrossedModule,
    DoubleError, DualDoubleElement,
};
use crate::group::Elem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error("the trivial class with the trivial representation gives no calculus")]
    TrivialPair,
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error(transparent)]
    Double(#[from] DoubleError),
}

/// Sparse `Σ c·e_coord·x` keyed by `(coordinate, A-basis index)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Terms {
    map: BTreeMap<(usize, usize), CycNum>,
}

pub type OneForm = Terms;

impl Terms {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(coord: usize, x: usize, c: CycNum) -> Self {
        let mut t = Self::zero();
        t.add_term(coord, x, &c);
        t
    }

    pub fn add_term(&mut self, coord: usize, x: usize, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        let k = (coord, x);
        let v = match self.map.get(&k) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if v.is_zero() {
            self.map.remove(&k);
        } else {
            self.map.insert(k, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &CycNum)> {
        self.map.iter()
    }

    pub fn get(&self, coord: usize, x: usize) -> CycNum {
        self.map.get(&(coord, x)).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(c, x), v) in &o.map {
            r.add_term(c, x, v);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(c, x), v) in &o.map {
            r.add_term(c, x, &v.neg());
        }
        r
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        let mut r = Self::zero();
        for (&(c, x), v) in &self.map {
            r.add_term(c, x, &v.mul(s));
        }
        r
    }

    /// Flatten to a sparse vector with index `coord·stride + x`.
    pub fn to_sparse(&self, stride: usize) -> sparse::SparseVec<CycNum> {
        self.map
            .iter()
            .map(|(&(c, x), v)| (c * stride + x, v.clone()))
            .collect()
    }
}

/// Which leg of `Q` is paired with the algebra element in `Q₂(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QOrientation {
    /// `(id⊗⟨·,a⟩)(Q)`
    PairSecondLeg,
    /// `(⟨·,a⟩⊗id)(Q)`
    PairFirstLeg,
}

impl QOrientation {
    pub fn describe(self) -> &'static str {
        match self {
            QOrientation::PairSecondLeg => "Q2(a) = (id ⊗ <.,a>)(Q)",
            QOrientation::PairFirstLeg => "Q2(a) = (<.,a> ⊗ id)(Q)",
        }
    }
}

/// One left-action term: `x·e_L ∋ c·e_{L'}·z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActTerm {
    pub label: usize,
    pub coeff: CycNum,
    pub z: usize,
}

#[derive(Debug, Clone)]
pub struct Calculus {
    pub module: CrossedModule,
    n: usize,
    m: usize,
    /// `lact[x][L]`
    lact: Vec<Vec<Vec<ActTerm>>>,
    d_gen: Vec<OneForm>,
    theta: OneForm,
}

impl Calculus {
    /// Build from the explicit commutation rules and differentials.
    pub fn build(module: &CrossedModule) -> Result<Self, CalculusError> {
        if module.is_trivial() {
            return Err(CalculusError::TrivialPair);
        }
        module
            .rep
            .require_irreducible()
            .map_err(|e| CalculusError::Double(e.into()))?;
        let g = &module.group;
        let n = g.order();
        let m = module.m();
        let dv = module.dim_v();
        let mut lact = Vec::with_capacity(n * n);
        for t in g.elements() {
            for u in g.elements() {
                let mut per_label = Vec::with_capacity(m * m);
                for alpha in 0..m {
                    let (a, i) = module.label(alpha);
                    let ta = g.conj(t, a);
                    let z = module.zeta(a, t);
                    for beta in 0..m {
                        let (b, _) = module.label(beta);
                        let bi = g.inv(b);
                        let coef_elem = g.conj(bi, t) * n + g.mul(bi, u);
                        let terms = (0..dv)
                            .filter(|&k| !z.get(k, i).is_zero())
                            .map(|k| ActTerm {
                                label: module.index(ta, k) * m + beta,
                                coeff: z.get(k, i).clone(),
                                z: coef_elem,
                            })
                            .collect();
                        per_label.push(terms);
                    }
                }
                lact.push(per_label);
            }
        }
        let mut theta = Terms::zero();
        for alpha in 0..m {
            for v in g.elements() {
                theta.add_term(alpha * m + alpha, g.identity() * n + v, &CycNum::one());
            }
        }
        let mut calc = Calculus {
            module: module.clone(),
            n,
            m,
            lact,
            d_gen: Vec::new(),
            theta,
        };
        calc.d_gen = calc.explicit_differentials();
        Ok(calc)
    }

    fn explicit_differentials(&self) -> Vec<OneForm> {
        let md = &self.module;
        let g = &md.group;
        let (n, m, dv) = (self.n, self.m, md.dim_v());
        let e = g.identity();
        // d s = Σ e_{sas⁻¹ i}^{aj} ζ_a(s)^i_j a⁻¹sa − θ s
        let ds: Vec<OneForm> = g
            .elements()
            .map(|s| {
                let mut f = Terms::zero();
                for &a in &md.class.elements {
                    let z = md.zeta(a, s);
                    let c = g.conj(g.inv(a), s);
                    for i in 0..dv {
                        for j in 0..dv {
                            let v = z.get(i, j);
                            if v.is_zero() {
                                continue;
                            }
                            let label = md.index(g.conj(s, a), i) * m + md.index(a, j);
                            for y in g.elements() {
                                f.add_term(label, c * n + y, v);
                            }
                        }
                    }
                }
                f.sub(&self.right_multiply(&self.theta, &group_elem(n, s)))
            })
            .collect();
        // d δ_x = Σ e_{ai}^{ai} (δ_{a⁻¹x} − δ_x)
        let dd: Vec<OneForm> = g
            .elements()
            .map(|x| {
                let mut f = Terms::zero();
                for alpha in 0..m {
                    let (a, _) = md.label(alpha);
                    let l = alpha * m + alpha;
                    f.add_term(l, e * n + g.mul(g.inv(a), x), &CycNum::one());
                    f.add_term(l, e * n + x, &CycNum::from_int(-1));
                }
                f
            })
            .collect();
        // d(tδ_u) = (dt)δ_u + t·dδ_u
        let mut out = Vec::with_capacity(n * n);
        for t in g.elements() {
            for u in g.elements() {
                let delta_u = DualDoubleElement::basis(e, u);
                let left = self.right_multiply(&ds[t], &delta_u);
                let right = self.left_multiply(&group_elem(n, t), &dd[u]);
                out.push(left.add(&right));
            }
        }
        out
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    /// `m = dim W`; there are `m²` labels.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_labels(&self) -> usize {
        self.m * self.m
    }

    /// `|G|²`.
    pub fn algebra_dim(&self) -> usize {
        self.n * self.n
    }

    pub fn abasis(&self, s: Elem, u: Elem) -> usize {
        s * self.n + u
    }

    pub fn abasis_split(&self, x: usize) -> (Elem, Elem) {
        (x / self.n, x % self.n)
    }

    pub fn label(&self, alpha: usize, beta: usize) -> usize {
        alpha * self.m + beta
    }

    /// Label of `e_{ai}^{bj}`.
    pub fn label_of(&self, a: Elem, i: usize, b: Elem, j: usize) -> usize {
        self.label(self.module.index(a, i), self.module.index(b, j))
    }

    pub fn label_name(&self, l: usize) -> String {
        let md = &self.module;
        let g = &md.group;
        let (a, i) = md.label(l / self.m);
        let (b, j) = md.label(l % self.m);
        if md.dim_v() == 1 {
            format!("e_{}^{}", g.name(a), g.name(b))
        } else {
            format!("e_{}{}^{}{}", g.name(a), i, g.name(b), j)
        }
    }

    /// `e_L·1`.
    pub fn label_form(&self, l: usize) -> OneForm {
        let e = self.module.group.identity();
        let mut t = Terms::zero();
        for v in 0..self.n {
            t.add_term(l, self.abasis(e, v), &CycNum::one());
        }
        t
    }

    pub fn theta(&self) -> &OneForm {
        &self.theta
    }

    pub fn act(&self, x: usize, label: usize) -> &[ActTerm] {
        &self.lact[x][label]
    }

    /// Product of `A` basis indices.
    pub fn amul(&self, x: usize, y: usize) -> Option<usize> {
        dstar_basis_mul(&self.module.group, self.abasis_split(x), self.abasis_split(y)).map(|(s, u)| self.abasis(s, u))
    }

    pub fn left_multiply(&self, a: &DualDoubleElement, w: &OneForm) -> OneForm {
        let mut out = Terms::zero();
        for (&(s, u), c) in a.terms() {
            let x = self.abasis(s, u);
            for (&(l, y), c2) in w.iter() {
                let cc = c.mul(c2);
                for t in &self.lact[x][l] {
                    if let Some(p) = self.amul(t.z, y) {
                        out.add_term(t.label, p, &cc.mul(&t.coeff));
                    }
                }
            }
        }
        out
    }

    pub fn right_multiply(&self, w: &Terms, a: &DualDoubleElement) -> Terms {
        let mut out = Terms::zero();
        for (&(l, y), c) in w.iter() {
            for (&(s, u), c2) in a.terms() {
                if let Some(p) = self.amul(y, self.abasis(s, u)) {
                    out.add_term(l, p, &c.mul(c2));
                }
            }
        }
        out
    }

    pub fn d_basis(&self, x: usize) -> &OneForm {
        &self.d_gen[x]
    }

    pub fn d0(&self, a: &DualDoubleElement) -> OneForm {
        let mut out = Terms::zero();
        for (&(s, u), c) in a.terms() {
            out = out.add(&self.d_gen[self.abasis(s, u)].scale(c));
        }
        out
    }

    pub fn basis_element(&self, x: usize) -> DualDoubleElement {
        let (s, u) = self.abasis_split(x);
        DualDoubleElement::basis(s, u)
    }

    /// Exhaustive Leibniz, innerness and surjectivity checks.
    pub fn verify_first_order(&self) -> FirstOrderReport {
        let na = self.algebra_dim();
        let mut report = FirstOrderReport::default();
        for x in 0..na {
            let a = self.basis_element(x);
            for y in 0..na {
                let b = self.basis_element(y);
                let lhs = match self.amul(x, y) {
                    Some(p) => self.d_gen[p].clone(),
                    None => Terms::zero(),
                };
                let rhs = self
                    .right_multiply(&self.d_gen[x], &b)
                    .add(&self.left_multiply(&a, &self.d_gen[y]));
                report.leibniz_checked += 1;
                if lhs != rhs && report.leibniz_failure.is_none() {
                    report.leibniz_failure = Some(format!(
                        "Leibniz fails for ({}, {})",
                        self.element_name(x),
                        self.element_name(y)
                    ));
                }
            }
            let inner = self
                .left_multiply(&a, &self.theta)
                .sub(&self.right_multiply(&self.theta, &a));
            report.innerness_checked += 1;
            if inner != self.d_gen[x] && report.innerness_failure.is_none() {
                report.innerness_failure = Some(format!("d a ≠ aθ − θa for a = {}", self.element_name(x)));
            }
        }
        let stride = na;
        let mut ech = sparse::Echelon::new(self.num_labels() * na);
        'outer: for x in 0..na {
            let a = self.basis_element(x);
            for y in 0..na {
                ech.insert(&self.left_multiply(&a, &self.d_gen[y]).to_sparse(stride));
                if ech.rank() == self.num_labels() * na {
                    break 'outer;
                }
            }
        }
        report.span_rank = ech.rank();
        report.surjective = ech.rank() == self.num_labels() * na;
        report
    }

    pub fn element_name(&self, x: usize) -> String {
        let g = &self.module.group;
        let (s, u) = self.abasis_split(x);
        format!("{}δ_{}", g.name(s), g.name(u))
    }

    // ---- oracle ----

    /// Left action and differential on every basis element from `(ρ, ℛ, Q)`
    /// through the generic quasitriangular formulas.
    pub fn oracle_tables(&self, orientation: QOrientation) -> (Vec<Vec<Terms>>, Vec<OneForm>) {
        let md = &self.module;
        let g = &md.group;
        let (n, m) = (self.n, self.m);
        let na = n * n;
        let r = r_terms(g);
        let q = q_terms(g);
        let rho_of = |f: &dyn Fn(&DualDoubleElement) -> crate::double::DoubleElement| -> Vec<Option<CycMatrix>> {
            (0..na)
                .map(|x| {
                    let mat = md.rho(&f(&self.basis_element(x)));
                    (!mat.is_zero()).then_some(mat)
                })
                .collect()
        };
        let r1 = rho_of(&|a| pair_first_leg(&r, a));
        let r2 = rho_of(&|a| pair_second_leg(&r, a));
        let q2 = match orientation {
            QOrientation::PairSecondLeg => rho_of(&|a| pair_second_leg(&q, a)),
            QOrientation::PairFirstLeg => rho_of(&|a| pair_first_leg(&q, a)),
        };
        let mut acts = Vec::with_capacity(na);
        let mut ds = Vec::with_capacity(na);
        for x in 0..na {
            let (t, v) = self.abasis_split(x);
            let mut per_label = vec![Terms::zero(); m * m];
            for (x1, rest) in dstar_coproduct_basis(g, (t, v)) {
                let Some(m1) = &r1[self.abasis(x1.0, x1.1)] else {
                    continue;
                };
                for (x2, x3) in dstar_coproduct_basis(g, rest) {
                    let Some(m2) = &r2[self.abasis(x2.0, x2.1)] else {
                        continue;
                    };
                    let z = self.abasis(x3.0, x3.1);
                    for alpha in 0..m {
                        for gamma in 0..m {
                            let c1 = m1.get(gamma, alpha);
                            if c1.is_zero() {
                                continue;
                            }
                            for beta in 0..m {
                                for delta in 0..m {
                                    let c2 = m2.get(beta, delta);
                                    if !c2.is_zero() {
                                        per_label[alpha * m + beta].add_term(gamma * m + delta, z, &c1.mul(c2));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            acts.push(per_label);
            // d a = Σ ρ(Q₂(a₁)) a₂ − θ a
            let mut d = Terms::zero();
            for (x1, x2) in dstar_coproduct_basis(g, (t, v)) {
                let Some(mq) = &q2[self.abasis(x1.0, x1.1)] else {
                    continue;
                };
                let z = self.abasis(x2.0, x2.1);
                for alpha in 0..m {
                    for beta in 0..m {
                        d.add_term(alpha * m + beta, z, mq.get(alpha, beta));
                    }
                }
            }
            ds.push(d.sub(&self.right_multiply(&self.theta, &self.basis_element(x))));
        }
        (acts, ds)
    }

    /// Compare the explicit tables with the oracle; the first orientation of
    /// `Q` that reproduces every differential is returned.
    pub fn oracle_check(&self) -> Result<OracleReport, CalculusError> {
        let mut last_err = String::new();
        for orientation in [QOrientation::PairSecondLeg, QOrientation::PairFirstLeg] {
            let (acts, ds) = self.oracle_tables(orientation);
            if let Some(msg) = self.first_action_mismatch(&acts) {
                return Err(CalculusError::OracleMismatch(msg));
            }
            match (0..ds.len()).find(|&x| ds[x] != self.d_gen[x]) {
                None => {
                    return Ok(OracleReport {
                        orientation,
                        comm_rules_checked: self.algebra_dim() * self.num_labels(),
                        differentials_checked: ds.len(),
                    })
                }
                Some(x) => {
                    last_err = format!("d({}) differs under {}", self.element_name(x), orientation.describe());
                }
            }
        }
        Err(CalculusError::OracleMismatch(last_err))
    }

    fn first_action_mismatch(&self, acts: &[Vec<Terms>]) -> Option<String> {
        for (x, per_label) in acts.iter().enumerate() {
            for (l, want) in per_label.iter().enumerate() {
                let mut got = Terms::zero();
                for t in &self.lact[x][l] {
                    got.add_term(t.label, t.z, &t.coeff);
                }
                if &got != want {
                    return Some(format!(
                        "commutation of {} past {} differs",
                        self.element_name(x),
                        self.label_name(l)
                    ));
                }
            }
        }
        None
    }

    /// Terse string for a one-form, e.g. `e_(12)^(12)·(12)δ_e`.
    pub fn form_string(&self, w: &OneForm) -> String {
        if w.is_zero() {
            return "0".into();
        }
        w.iter()
            .map(|(&(l, x), c)| format!("({})*{}*{}", c, self.label_name(l), self.element_name(x)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Calculus dump as JSON: labels, commutation rules for generators
    /// `s ∈ G` and `δ_u`, differentials of every basis element, and `θ`.
    pub fn dump(&self) -> Value {
        let g = &self.module.group;
        let labels: Vec<String> = (0..self.num_labels()).map(|l| self.label_name(l)).collect();
        let form_json = |w: &Terms| -> Value {
            let mut by_label: BTreeMap<usize, Vec<Value>> = BTreeMap::new();
            for (&(l, x), c) in w.iter() {
                let (s, u) = self.abasis_split(x);
                by_label
                    .entry(l)
                    .or_default()
                    .push(json!([g.name(s), g.name(u), c.to_literal()]));
            }
            Value::Array(
                by_label
                    .into_iter()
                    .map(|(l, cs)| json!({"label": self.label_name(l), "coeff": cs}))
                    .collect(),
            )
        };
        let rule = |a: &DualDoubleElement| -> Value {
            let per: serde_json::Map<String, Value> = (0..self.num_labels())
                .map(|l| {
                    let w = self.left_multiply(a, &self.label_form(l));
                    (self.label_name(l), form_json(&w))
                })
                .collect();
            Value::Object(per)
        };
        let mut comm = serde_json::Map::new();
        for s in g.elements() {
            comm.insert(g.name(s).to_string(), rule(&crate::double::dstar_group_element(g, s)));
        }
        for u in g.elements() {
            comm.insert(format!("δ_{}", g.name(u)), rule(&crate::double::dstar_delta(g, u)));
        }
        let d_gen: serde_json::Map<String, Value> = (0..self.algebra_dim())
            .map(|x| (self.element_name(x), form_json(&self.d_gen[x])))
            .collect();
        json!({
            "labels": labels,
            "comm": comm,
            "d_gen": d_gen,
            "theta": form_json(&self.theta),
        })
    }
}

fn group_elem(n: usize, s: Elem) -> DualDoubleElement {
    DualDoubleElement::from_terms((0..n).map(|v| ((s, v), CycNum::one())))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FirstOrderReport {
    pub leibniz_checked: usize,
    pub innerness_checked: usize,
    pub span_rank: usize,
    pub surjective: bool,
    pub leibniz_failure: Option<String>,
    pub innerness_failure: Option<String>,
}

impl FirstOrderReport {
    pub fn passed(&self) -> bool {
        self.leibniz_failure.is_none() && self.innerness_failure.is_none() && self.surjective
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub orientation: QOrientation,
    pub comm_rules_checked: usize,
    pub differentials_checked: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::dstar_unit;
    use crate::group::{FiniteGroup, Section};
    use crate::rep::{Family, Representation};

    fn calc(q: i64) -> Calculus {
        let g = FiniteGroup::builtin("S3").unwrap();
        let sec = Section::from_json(&g, r#"{"basepoint": 1, "section": {"2": "5", "5": "2"}}"#).unwrap();
        let cent = g.centralizer(1);
        let fam = if q == 1 {
            Family::Trivial
        } else {
            Family::Cyclic { n: 2, k: 1 }
        };
        let rep = Representation::builtin(&cent.group, &fam).unwrap();
        Calculus::build(&CrossedModule::new(&g, &sec, &rep).unwrap()).unwrap()
    }

    #[test]
    fn delta_commutes_by_translation() {
        let c = calc(-1);
        let g = &c.module.group;
        let (u, w) = (1, 5);
        // δ_u · e_v^w = e_v^w · δ_{w⁻¹u}
        let l = c.label_of(2, 0, w, 0);
        let got = c.left_multiply(&DualDoubleElement::basis(0, u), &c.label_form(l));
        assert_eq!(got, Terms::single(l, c.abasis(0, g.mul(g.inv(w), u)), CycNum::one()));
    }

    #[test]
    fn unit_acts_trivially_and_d_kills_it() {
        let c = calc(1);
        let g = &c.module.group;
        let w = c.d_basis(7).clone();
        assert_eq!(c.left_multiply(&dstar_unit(g), &w), w);
        assert!(c.d0(&dstar_unit(g)).is_zero());
    }

    #[test]
    fn functions_have_diagonal_differentials() {
        let c = calc(-1);
        let g = &c.module.group;
        for x in g.elements() {
            let d = c.d0(&DualDoubleElement::basis(0, x));
            for (&(l, _), _) in d.iter() {
                assert_eq!(l / c.m(), l % c.m());
            }
        }
    }

    #[test]
    fn first_order_and_oracle() {
        for q in [1, -1] {
            let c = calc(q);
            let r = c.verify_first_order();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.leibniz_checked, 36 * 36);
            let o = c.oracle_check().unwrap();
            assert_eq!(o.orientation, QOrientation::PairSecondLeg);
        }
    }

    #[test]
    fn corrupted_cocycle_breaks_leibniz() {
        let g = FiniteGroup::builtin("S3").unwrap();
        let sec = Section::default_for(&g, &g.class_of(1));
        let cent = g.centralizer(1);
        let rep = Representation::builtin(&cent.group, &Family::Cyclic { n: 2, k: 1 }).unwrap();
        let mut md = CrossedModule::new(&g, &sec, &rep).unwrap();
        let flipped = md.zeta(2, 3).scale(&CycNum::from_int(-1));
        md.corrupt_zeta(2, 3, flipped);
        let c = Calculus::build(&md).unwrap();
        let r = c.verify_first_order();
        assert!(r.leibniz_failure.is_some());
    }

    #[test]
    fn trivial_pair_is_rejected() {
        let g = FiniteGroup::builtin("S3").unwrap();
        let sec = Section::default_for(&g, &g.class_of(0));
        let rep = Representation::builtin(&g.centralizer(0).group, &Family::Trivial).unwrap();
        let md = CrossedModule::new(&g, &sec, &rep).unwrap();
        assert!(matches!(Calculus::build(&md), Err(CalculusError::TrivialPair)));
    }
}
