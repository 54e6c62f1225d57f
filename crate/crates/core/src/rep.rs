//! Representations of (centralizer) subgroups over cyclotomic fields.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::Deserialize;
use thiserror::Error;

use crate::cyclo::{CycMatrix, CycNum, CycloError};
use crate::group::{Elem, FiniteGroup, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("unknown representation family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} does not apply to this group: {reason}")]
    NotApplicable { family: String, reason: String },
    #[error("not a homomorphism: ρ({a})ρ({b}) ≠ ρ({a}·{b})")]
    NotHomomorphism { a: String, b: String },
    #[error("generators do not generate the group")]
    NotGenerating,
    #[error("representation is reducible (character norm {0})")]
    Reducible(String),
    #[error("malformed representation input: {0}")]
    Input(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Built-in representation families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Trivial,
    /// Generator of a cyclic group of order `n` acts by `ζ_n^k`.
    Cyclic {
        n: usize,
        k: usize,
    },
    /// Sign of a permutation group.
    SignSn,
    /// Rational 2-dimensional irrep of a group isomorphic to `S₃`.
    Standard2S3,
    /// `r ↦ diag(ζ_n^k, ζ_n^{-k})`, `s ↦ [[0,1],[1,0]]` on a dihedral group of order `2n`.
    Dihedral {
        n: usize,
        k: usize,
    },
    /// The `i`-th linear character in the brute-force enumeration.
    Linear(usize),
}

impl Family {
    pub fn parse(s: &str) -> Result<Family, RepError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let args = |prefix: &str| -> Option<Vec<usize>> {
            let inner = t.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|x| x.parse().ok()).collect()
        };
        let fam = match t.as_str() {
            "trivial" => Family::Trivial,
            "sign_Sn" | "sign" => Family::SignSn,
            "standard2_S3" => Family::Standard2S3,
            _ => {
                if let Some(v) = args("cyclic") {
                    match v[..] {
                        [n, k] if n > 0 => Family::Cyclic { n, k: k % n },
                        _ => return Err(RepError::UnknownFamily(s.into())),
                    }
                } else if let Some(v) = args("dihedral") {
                    match v[..] {
                        [n, k] if n > 0 => Family::Dihedral { n, k: k % n },
                        _ => return Err(RepError::UnknownFamily(s.into())),
                    }
                } else if let Some(v) = args("linear") {
                    match v[..] {
                        [i] => Family::Linear(i),
                        _ => return Err(RepError::UnknownFamily(s.into())),
                    }
                } else {
                    return Err(RepError::UnknownFamily(s.into()));
                }
            }
        };
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Trivial => write!(f, "trivial"),
            Family::Cyclic { n, k } => write!(f, "cyclic({n},{k})"),
            Family::SignSn => write!(f, "sign_Sn"),
            Family::Standard2S3 => write!(f, "standard2_S3"),
            Family::Dihedral { n, k } => write!(f, "dihedral({n},{k})"),
            Family::Linear(i) => write!(f, "linear({i})"),
        }
    }
}

/// A verified matrix representation of a finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    group: FiniteGroup,
    dim: usize,
    conductor: u32,
    matrices: Vec<CycMatrix>,
    label: String,
}

impl Representation {
    /// Validate a full table of matrices indexed by element.
    pub fn from_matrices(group: &FiniteGroup, matrices: Vec<CycMatrix>, label: &str) -> Result<Self, RepError> {
        if matrices.len() != group.order() {
            return Err(RepError::Input("one matrix per element required".into()));
        }
        let dim = matrices[group.identity()].rows();
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) || dim == 0 {
            return Err(RepError::Input(
                "matrices must be square of a common positive size".into(),
            ));
        }
        if !matrices[group.identity()].is_identity() {
            return Err(RepError::NotHomomorphism {
                a: "e".into(),
                b: "e".into(),
            });
        }
        for a in group.elements() {
            for b in group.elements() {
                if matrices[a].matmul(&matrices[b]) != matrices[group.mul(a, b)] {
                    return Err(RepError::NotHomomorphism {
                        a: group.name(a).into(),
                        b: group.name(b).into(),
                    });
                }
            }
        }
        let conductor = matrices.iter().fold(1u32, |acc, m| acc.lcm(&m.conductor()));
        Ok(Representation {
            group: group.clone(),
            dim,
            conductor,
            matrices,
            label: label.to_string(),
        })
    }

    /// Extend generator images multiplicatively, then validate.
    pub fn from_generators(group: &FiniteGroup, gens: &[(Elem, CycMatrix)], label: &str) -> Result<Self, RepError> {
        let dim = gens.first().map_or(1, |(_, m)| m.rows());
        let mut table: Vec<Option<CycMatrix>> = vec![None; group.order()];
        table[group.identity()] = Some(CycMatrix::identity(dim));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (g, m) in gens {
                let y = group.mul(x, *g);
                if table[y].is_none() {
                    table[y] = Some(table[x].as_ref().unwrap().matmul(m));
                    queue.push_back(y);
                }
            }
        }
        let matrices = table
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(RepError::NotGenerating)?;
        Self::from_matrices(group, matrices, label)
    }

    pub fn builtin(group: &FiniteGroup, family: &Family) -> Result<Self, RepError> {
        let label = family.to_string();
        let na = |reason: &str| RepError::NotApplicable {
            family: label.clone(),
            reason: reason.into(),
        };
        let one = |x: CycNum| CycMatrix::from_rows(vec![vec![x]]);
        match family {
            Family::Trivial => {
                let m = vec![CycMatrix::identity(1); group.order()];
                Self::from_matrices(group, m, &label)
            }
            Family::Cyclic { n, k } => {
                if group.order() != *n {
                    return Err(na("group order differs from n"));
                }
                let gen = group
                    .elements()
                    .find(|&g| group.element_order(g) == *n)
                    .ok_or_else(|| na("group is not cyclic"))?;
                let z = CycNum::root_of_unity(*n as u32, *k as i64)?;
                Self::from_generators(group, &[(gen, one(z))], &label)
            }
            Family::SignSn => {
                if !group.is_permutation_group() {
                    return Err(na("not a permutation group"));
                }
                let m = group
                    .elements()
                    .map(|a| one(CycNum::from_int(group.perm(a).unwrap().sign())))
                    .collect();
                Self::from_matrices(group, m, &label)
            }
            Family::Standard2S3 => {
                if group.order() != 6 || group.is_abelian() {
                    return Err(na("group is not isomorphic to S3"));
                }
                let (r, s) = dihedral_generators(group, 3).ok_or_else(|| na("no dihedral presentation"))?;
                let int = |rows: [[i64; 2]; 2]| {
                    CycMatrix::from_rows(
                        rows.iter()
                            .map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect())
                            .collect(),
                    )
                };
                let gens = [(r, int([[0, -1], [1, -1]])), (s, int([[0, 1], [1, 0]]))];
                Self::from_generators(group, &gens, &label)
            }
            Family::Dihedral { n, k } => {
                if *n < 3 || group.order() != 2 * n {
                    return Err(na("group order must be 2n with n >= 3"));
                }
                let (r, s) = dihedral_generators(group, *n).ok_or_else(|| na("no dihedral presentation"))?;
                let z = CycNum::root_of_unity(*n as u32, *k as i64)?;
                let zi = CycNum::root_of_unity(*n as u32, -(*k as i64))?;
                let zero = CycNum::zero;
                let gens = [
                    (r, CycMatrix::from_rows(vec![vec![z, zero()], vec![zero(), zi]])),
                    (
                        s,
                        CycMatrix::from_rows(vec![vec![zero(), CycNum::one()], vec![CycNum::one(), zero()]]),
                    ),
                ];
                Self::from_generators(group, &gens, &label)
            }
            Family::Linear(i) => {
                let chars = linear_characters(group);
                let c = chars
                    .get(*i)
                    .ok_or_else(|| na("index beyond the number of linear characters"))?;
                let m = c.values()?.into_iter().map(one).collect();
                Self::from_matrices(group, m, &label)
            }
        }
    }

    /// Load `{"conductor": N, "dim": d, "generators": {"g": [[lit, …], …]}}`.
    /// Keys are element names or indices of `group`.
    pub fn from_json(group: &FiniteGroup, text: &str, label: &str) -> Result<Self, RepError> {
        #[derive(Deserialize)]
        struct Raw {
            conductor: u32,
            dim: usize,
            generators: BTreeMap<String, Vec<Vec<String>>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| RepError::Input(e.to_string()))?;
        let mut gens = Vec::new();
        for (key, rows) in &raw.generators {
            let g = group.find_element(key)?;
            if rows.len() != raw.dim || rows.iter().any(|r| r.len() != raw.dim) {
                return Err(RepError::Input(format!("matrix for {key} is not {0}x{0}", raw.dim)));
            }
            let m = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|lit| CycNum::parse(lit, raw.conductor))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            gens.push((g, CycMatrix::from_rows(m)));
        }
        if gens.is_empty() {
            let m = vec![CycMatrix::identity(raw.dim.max(1)); group.order()];
            return Self::from_matrices(group, m, label);
        }
        Self::from_generators(group, &gens, label)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self, u: Elem) -> &CycMatrix {
        &self.matrices[u]
    }

    pub fn character(&self) -> Vec<CycNum> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// `Σ_u χ(u) conj(χ(u)) / |G|`.
    pub fn character_norm(&self) -> CycNum {
        let s = self
            .character()
            .iter()
            .fold(CycNum::zero(), |acc, x| acc.add(&x.mul(&x.conj())));
        s.mul(&CycNum::frac(1, self.group.order() as i64))
    }

    pub fn is_irreducible(&self) -> bool {
        self.character_norm().is_one()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim == 1 && self.matrices.iter().all(|m| m.get(0, 0).is_one())
    }

    pub fn require_irreducible(&self) -> Result<(), RepError> {
        let n = self.character_norm();
        if n.is_one() {
            Ok(())
        } else {
            Err(RepError::Reducible(n.to_literal()))
        }
    }

    /// `e₀ = dim/|G| Σ_u χ(u⁻¹) u`.
    pub fn central_idempotent(&self) -> Result<CentralIdempotent, RepError> {
        self.require_irreducible()?;
        let chi = self.character();
        let c = CycNum::frac(self.dim as i64, self.group.order() as i64);
        let coeffs = self.group.elements().map(|u| chi[self.group.inv(u)].mul(&c)).collect();
        Ok(CentralIdempotent {
            group: self.group.clone(),
            coeffs,
        })
    }
}

/// Find `r` of order `n` and an involution `s ∉ ⟨r⟩` with `s r s = r⁻¹`.
fn dihedral_generators(g: &FiniteGroup, n: usize) -> Option<(Elem, Elem)> {
    for r in g.elements().filter(|&r| g.element_order(r) == n) {
        let mut pow = vec![g.identity()];
        for _ in 1..n {
            pow.push(g.mul(*pow.last().unwrap(), r));
        }
        if let Some(s) = g
            .elements()
            .find(|&s| g.element_order(s) == 2 && !pow.contains(&s) && g.mul(g.mul(s, r), s) == g.inv(r))
        {
            return Some((r, s));
        }
    }
    None
}

/// A linear character stored as exponents: `χ(u) = ζ_L^{exps[u]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCharacter {
    pub modulus: usize,
    pub exps: Vec<usize>,
}

impl LinearCharacter {
    pub fn values(&self) -> Result<Vec<CycNum>, CycloError> {
        self.exps
            .iter()
            .map(|&e| CycNum::root_of_unity(self.modulus as u32, e as i64))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

/// Greedy generating set: each element not in the span of earlier picks.
fn greedy_generators(g: &FiniteGroup) -> Vec<Elem> {
    let mut gens: Vec<Elem> = Vec::new();
    let mut span = vec![false; g.order()];
    span[g.identity()] = true;
    for x in g.elements() {
        if span[x] {
            continue;
        }
        gens.push(x);
        let mut queue: VecDeque<Elem> = g.elements().filter(|&y| span[y]).collect();
        while let Some(y) = queue.pop_front() {
            for &h in &gens {
                let z = g.mul(y, h);
                if !span[z] {
                    span[z] = true;
                    queue.push_back(z);
                }
            }
        }
    }
    gens
}

/// All linear characters, by brute force over images of a generating set.
/// Ordered with the trivial character first, then by exponent vector.
pub fn linear_characters(g: &FiniteGroup) -> Vec<LinearCharacter> {
    let gens = greedy_generators(g);
    let orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let modulus = orders.iter().fold(1usize, |a, &b| a.lcm(&b));
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&orders).map(|(&c, &o)| c * (modulus / o)).collect();
        if let Some(exps) = extend_character(g, &gens, &images, modulus) {
            out.push(LinearCharacter { modulus, exps });
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                out.sort_by(|a, b| a.exps.cmp(&b.exps));
                return out;
            }
            choice[i] += 1;
            if choice[i] < orders[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn extend_character(g: &FiniteGroup, gens: &[Elem], images: &[usize], modulus: usize) -> Option<Vec<usize>> {
    let mut val: Vec<Option<usize>> = vec![None; g.order()];
    val[g.identity()] = Some(0);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let vx = val[x].unwrap();
        for (h, &im) in gens.iter().zip(images) {
            let y = g.mul(x, *h);
            let vy = (vx + im) % modulus;
            match val[y] {
                None => {
                    val[y] = Some(vy);
                    queue.push_back(y);
                }
                Some(v) if v != vy => return None,
                _ => {}
            }
        }
    }
    let exps: Vec<usize> = val.into_iter().collect::<Option<_>>()?;
    for a in g.elements() {
        for b in g.elements() {
            if exps[g.mul(a, b)] != (exps[a] + exps[b]) % modulus {
                return None;
            }
        }
    }
    Some(exps)
}

/// The irreducible representations the built-in families provide for `g`,
/// with a flag telling whether they exhaust `Σ d² = |g|`.
pub fn catalog(g: &FiniteGroup) -> (Vec<Representation>, bool) {
    let mut reps: Vec<Representation> = Vec::new();
    let chars = linear_characters(g);
    let cyclic_gen = g.elements().find(|&x| g.element_order(x) == g.order());
    for (i, c) in chars.iter().enumerate() {
        let fam = if c.is_trivial() {
            Family::Trivial
        } else if let Some(gen) = cyclic_gen {
            let n = g.order();
            let k = c.exps[gen] * n / c.modulus;
            Family::Cyclic { n, k }
        } else if is_sign(g, c) {
            Family::SignSn
        } else {
            Family::Linear(i)
        };
        if let Ok(r) = Representation::builtin(g, &fam) {
            reps.push(r);
        }
    }
    let n = g.order();
    if n == 6 && !g.is_abelian() {
        if let Ok(r) = Representation::builtin(g, &Family::Standard2S3) {
            reps.push(r);
        }
    } else if n.is_multiple_of(2) && n / 2 >= 3 && !g.is_abelian() {
        let half = n / 2;
        for k in 1..half.div_ceil(2) {
            if 2 * k == half {
                continue;
            }
            if let Ok(r) = Representation::builtin(g, &Family::Dihedral { n: half, k }) {
                reps.push(r);
            }
        }
    }
    let total: usize = reps.iter().map(|r| r.dim * r.dim).sum();
    (reps, total == n)
}

fn is_sign(g: &FiniteGroup, c: &LinearCharacter) -> bool {
    g.is_permutation_group()
        && g.elements().all(|a| {
            let s = g.perm(a).unwrap().sign();
            let e = c.exps[a];
            (s == 1 && e == 0) || (s == -1 && 2 * e == c.modulus)
        })
}

/// An element of the group algebra `kG`, indexed by element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralIdempotent {
    pub group: FiniteGroup,
    pub coeffs: Vec<CycNum>,
}

/// Product in `kG` of coefficient vectors.
pub fn group_algebra_mul(g: &FiniteGroup, x: &[CycNum], y: &[CycNum]) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(); g.order()];
    for a in g.elements() {
        if x[a].is_zero() {
            continue;
        }
        for b in g.elements() {
            if !y[b].is_zero() {
                let ab = g.mul(a, b);
                out[ab] = out[ab].add(&x[a].mul(&y[b]));
            }
        }
    }
    out
}

impl CentralIdempotent {
    pub fn is_idempotent(&self) -> bool {
        group_algebra_mul(&self.group, &self.coeffs, &self.coeffs) == self.coeffs
    }

    pub fn is_central(&self) -> bool {
        let g = &self.group;
        g.elements().all(|u| {
            let mut du = vec![CycNum::zero(); g.order()];
            du[u] = CycNum::one();
            group_algebra_mul(g, &self.coeffs, &du) == group_algebra_mul(g, &du, &self.coeffs)
        })
    }

    /// `dim(e·kG)`, the rank of left multiplication by `e`.
    pub fn ideal_dim(&self) -> usize {
        let g = &self.group;
        let cols: Vec<Vec<CycNum>> = g
            .elements()
            .map(|u| {
                let mut du = vec![CycNum::zero(); g.order()];
                du[u] = CycNum::one();
                group_algebra_mul(g, &self.coeffs, &du)
            })
            .collect();
        CycMatrix::from_rows(cols).rank()
    }

    /// `ε(e) = Σ coefficients` with `ε(u) = 1`.
    pub fn counit(&self) -> CycNum {
        self.coeffs.iter().fold(CycNum::zero(), |acc, c| acc.add(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::builtin("S3").unwrap()
    }

    #[test]
    fn family_names_round_trip() {
        for s in [
            "trivial",
            "cyclic(2,1)",
            "sign_Sn",
            "standard2_S3",
            "dihedral(4,1)",
            "linear(2)",
        ] {
            assert_eq!(Family::parse(s).unwrap().to_string(), s);
        }
        assert!(Family::parse("bogus").is_err());
    }

    #[test]
    fn standard_s3_character() {
        let g = s3();
        let r = Representation::builtin(&g, &Family::Standard2S3).unwrap();
        assert!(r.is_irreducible());
        let chi = r.character();
        assert_eq!(chi[0], CycNum::from_int(2));
        assert_eq!(chi[1], CycNum::zero());
        assert_eq!(chi[3], CycNum::from_int(-1));
        assert_eq!(r.conductor(), 1);
    }

    #[test]
    fn cyclic_characters() {
        let z3 = FiniteGroup::builtin("Z3").unwrap();
        let r = Representation::builtin(&z3, &Family::Cyclic { n: 3, k: 1 }).unwrap();
        let z = CycNum::zeta(3).unwrap();
        assert_eq!(r.character(), vec![CycNum::one(), z.clone(), z.mul(&z)]);
        let e = r.central_idempotent().unwrap();
        let third = CycNum::frac(1, 3);
        assert_eq!(e.coeffs, vec![third.clone(), z.mul(&z).mul(&third), z.mul(&third)]);
        assert!(e.is_idempotent() && e.is_central());
        assert_eq!(e.ideal_dim(), 1);
        assert!(e.counit().is_zero());
    }

    #[test]
    fn sign_idempotent() {
        let z2 = FiniteGroup::builtin("Z2").unwrap();
        let r = Representation::builtin(&z2, &Family::Cyclic { n: 2, k: 1 }).unwrap();
        let e = r.central_idempotent().unwrap();
        assert_eq!(e.coeffs, vec![CycNum::frac(1, 2), CycNum::frac(-1, 2)]);
        let triv = Representation::builtin(&z2, &Family::Trivial)
            .unwrap()
            .central_idempotent()
            .unwrap();
        assert!(triv.counit().is_one());
    }

    #[test]
    fn catalogs_cover() {
        for name in ["S3", "Z2", "Z3", "Z4", "D4", "trivial"] {
            let g = FiniteGroup::builtin(name).unwrap();
            let (reps, covered) = catalog(&g);
            assert!(covered, "{name}");
            let mut sum = vec![CycNum::zero(); g.order()];
            let ids: Vec<_> = reps.iter().map(|r| r.central_idempotent().unwrap()).collect();
            for (i, e) in ids.iter().enumerate() {
                assert_eq!(e.ideal_dim(), reps[i].dim() * reps[i].dim());
                for (j, f) in ids.iter().enumerate() {
                    let p = group_algebra_mul(&g, &e.coeffs, &f.coeffs);
                    if i == j {
                        assert_eq!(p, e.coeffs);
                    } else {
                        assert!(p.iter().all(|x| x.is_zero()));
                    }
                }
                sum = sum.iter().zip(&e.coeffs).map(|(a, b)| a.add(b)).collect();
            }
            let mut unit = vec![CycNum::zero(); g.order()];
            unit[g.identity()] = CycNum::one();
            assert_eq!(sum, unit, "{name}");
        }
        let labels: Vec<String> = catalog(&s3()).0.iter().map(|r| r.label().to_string()).collect();
        assert_eq!(labels, ["trivial", "sign_Sn", "standard2_S3"]);
    }

    #[test]
    fn loading_from_json() {
        let z2 = FiniteGroup::builtin("Z2").unwrap();
        let r = Representation::from_json(
            &z2,
            r#"{"conductor": 1, "dim": 1, "generators": {"(12)": [["-1"]]}}"#,
            "f",
        )
        .unwrap();
        let b = Representation::builtin(&z2, &Family::Cyclic { n: 2, k: 1 }).unwrap();
        assert_eq!(r.character(), b.character());
        let t =
            Representation::from_json(&z2, r#"{"conductor": 1, "dim": 1, "generators": {"1": [["1"]]}}"#, "f").unwrap();
        assert!(t.is_trivial());
        let bad = Representation::from_json(
            &z2,
            r#"{"conductor": 3, "dim": 1, "generators": {"1": [["z^1"]]}}"#,
            "f",
        );
        assert!(matches!(bad, Err(RepError::NotHomomorphism { .. })));
        let reducible = Representation::from_json(
            &z2,
            r#"{"conductor": 1, "dim": 2, "generators": {"1": [["1","0"],["0","-1"]]}}"#,
            "f",
        )
        .unwrap();
        assert!(matches!(reducible.central_idempotent(), Err(RepError::Reducible(_))));
    }
}
