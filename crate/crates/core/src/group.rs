//! Finite groups given by permutation generators or Cayley tables, with the
//! conjugacy-class data that labels calculi on `D*(G)`.
//!
//! Elements are identified by their index. Permutations compose right to
//! left: `(p·q)(i) = p(q(i))`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

pub type Elem = usize;

/// Default bound on the closure computed from generators.
pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeds {0} elements")]
    BoundExceeded(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("unknown built-in group `{0}`")]
    UnknownBuiltin(String),
    #[error("no element matches `{0}`")]
    UnknownElement(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("malformed group input: {0}")]
    Input(String),
}

/// A permutation of `{0, …, n-1}` stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Build from 1-based cycles, e.g. `[[1, 2], [3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut img: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (k, &p) in cyc.iter().enumerate() {
                if p == 0 || p > degree || touched[p - 1] {
                    return Err(GroupError::InvalidPermutation(format!("{cycles:?} on {degree} points")));
                }
                touched[p - 1] = true;
                img[p - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            r[j] = i;
        }
        Perm(r)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.0[s] == s {
                seen[s] = true;
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut j = self.0[s];
            while j != s {
                seen[j] = true;
                c.push(j);
                j = self.0[j];
            }
            out.push(c);
        }
        out
    }

    /// +1 or -1.
    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Cycle notation with 1-based points; `e` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "e".into();
        }
        let sep = if self.degree() >= 10 { "," } else { "" };
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", pts.join(sep))
            })
            .collect()
    }

    /// Parse `(12)(34)`, `(1,2)(3,4)` or `e`.
    pub fn parse(s: &str, degree: usize) -> Result<Perm, GroupError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "e" || t == "()" {
            return Ok(Perm::identity(degree));
        }
        let bad = || GroupError::InvalidPermutation(s.to_string());
        let mut cycles = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let end = body.find(')').ok_or_else(bad)?;
            let inner = &body[..end];
            let pts: Vec<usize> = if inner.contains(',') {
                inner
                    .split(',')
                    .map(|x| x.parse().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?
            } else {
                inner
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                    .collect::<Result<_, _>>()?
            };
            cycles.push(pts);
            rest = &body[end + 1..];
        }
        Perm::from_cycles(degree, &cycles)
    }
}

/// A finite group as a Cayley table over element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverses: Vec<Elem>,
    names: Vec<String>,
    perms: Option<Vec<Perm>>,
}

impl FiniteGroup {
    /// Closure of the generators by breadth-first search from the identity,
    /// multiplying by generators on the right in input order.
    pub fn from_generators(degree: usize, generators: &[Perm], bound: usize) -> Result<Self, GroupError> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::InvalidPermutation("generator degree mismatch".into()));
        }
        let id = Perm::identity(degree);
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Perm, Elem> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let h = elems[i].compose(g);
                if !index.contains_key(&h) {
                    if elems.len() >= bound {
                        return Err(GroupError::BoundExceeded(bound));
                    }
                    index.insert(h.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(h);
                }
            }
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&a.compose(b)]);
            }
        }
        let inverses = elems.iter().map(|p| index[&p.inverse()]).collect();
        let names = elems.iter().map(|p| p.cycle_string()).collect();
        Ok(FiniteGroup {
            order: n,
            table,
            identity: 0,
            inverses,
            names,
            perms: Some(elems),
        })
    }

    /// Validate a Cayley table (0-based entries).
    pub fn from_table(table: Vec<Vec<Elem>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || seen[x] {
                    return Err(GroupError::InvalidTable(format!(
                        "row {i} is not a permutation of 0..{n}"
                    )));
                }
                seen[x] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {a} has no inverse")))?;
        }
        let check = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(GroupError::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            // deterministic sample of triples
            let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..50_000 {
                let (a, b, c) = (next(), next(), next());
                if !check(a, b, c) {
                    return Err(GroupError::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(_) => return Err(GroupError::InvalidTable("names length differs from order".into())),
            None => (0..n)
                .map(|i| if i == identity { "e".into() } else { format!("g{i}") })
                .collect(),
        };
        Ok(FiniteGroup {
            order: n,
            table: table.into_iter().flatten().collect(),
            identity,
            inverses,
            names,
            perms: None,
        })
    }

    pub fn builtin(name: &str) -> Result<Self, GroupError> {
        let gens: (usize, Vec<Vec<Vec<usize>>>) = match name {
            "S3" => (3, vec![vec![vec![1, 2]], vec![vec![2, 3]]]),
            "Z2" => (2, vec![vec![vec![1, 2]]]),
            "Z3" => (3, vec![vec![vec![1, 2, 3]]]),
            "Z4" => (4, vec![vec![vec![1, 2, 3, 4]]]),
            "D4" => (4, vec![vec![vec![1, 2, 3, 4]], vec![vec![1, 3]]]),
            "trivial" | "1" => (1, vec![]),
            _ => return Err(GroupError::UnknownBuiltin(name.to_string())),
        };
        let perms = gens
            .1
            .iter()
            .map(|c| Perm::from_cycles(gens.0, c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_generators(gens.0, &perms, DEFAULT_CLOSURE_BOUND)
    }

    /// Parse the group input JSON.
    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let spec: GroupSpec = serde_json::from_str(text).map_err(|e| GroupError::Input(e.to_string()))?;
        match spec {
            GroupSpec::Generators { degree, generators } => {
                let perms = generators
                    .iter()
                    .map(|c| Perm::from_cycles(degree, c))
                    .collect::<Result<Vec<_>, _>>()?;
                Self::from_generators(degree, &perms, DEFAULT_CLOSURE_BOUND)
            }
            GroupSpec::Table { order, table, names } => {
                if table.len() != order {
                    return Err(GroupError::InvalidTable(format!(
                        "order {order} but {} rows",
                        table.len()
                    )));
                }
                Self::from_table(table, names)
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    /// `g a g⁻¹`.
    pub fn conj(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn perm(&self, a: Elem) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[a])
    }

    pub fn is_permutation_group(&self) -> bool {
        self.perms.is_some()
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].degree())
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Resolve an element by display name, cycle notation or index.
    pub fn find_element(&self, s: &str) -> Result<Elem, GroupError> {
        let t = s.trim();
        if let Some(i) = self.names.iter().position(|n| n == t) {
            return Ok(i);
        }
        if let (Some(perms), Some(deg)) = (&self.perms, self.degree()) {
            if let Ok(p) = Perm::parse(t, deg) {
                if let Some(i) = perms.iter().position(|q| *q == p) {
                    return Ok(i);
                }
            }
        }
        if let Ok(i) = t.parse::<usize>() {
            if i < self.order {
                return Ok(i);
            }
        }
        Err(GroupError::UnknownElement(s.to_string()))
    }

    /// Classes ordered by `(size, least element index)`, each sorted; the
    /// basepoint is the least element.
    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in self.elements() {
            if seen[a] {
                continue;
            }
            let mut els: Vec<Elem> = self.elements().map(|g| self.conj(g, a)).collect();
            els.sort_unstable();
            els.dedup();
            for &x in &els {
                seen[x] = true;
            }
            classes.push(ConjClass {
                basepoint: els[0],
                elements: els,
            });
        }
        classes.sort_by_key(|c| (c.elements.len(), c.elements[0]));
        classes
    }

    /// The class containing `a`, with `a` as its basepoint.
    pub fn class_of(&self, a: Elem) -> ConjClass {
        let mut els: Vec<Elem> = self.elements().map(|g| self.conj(g, a)).collect();
        els.sort_unstable();
        els.dedup();
        ConjClass {
            basepoint: a,
            elements: els,
        }
    }

    /// `{u : u s0 = s0 u}` as a group in its own right.
    pub fn centralizer(&self, s0: Elem) -> Subgroup {
        let members: Vec<Elem> = self
            .elements()
            .filter(|&u| self.mul(u, s0) == self.mul(s0, u))
            .collect();
        self.subgroup(members)
    }

    /// Subgroup on a sorted member list (assumed closed).
    pub fn subgroup(&self, members: Vec<Elem>) -> Subgroup {
        let mut local = vec![None; self.order];
        for (i, &m) in members.iter().enumerate() {
            local[m] = Some(i);
        }
        let n = members.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &members {
            for &b in &members {
                table.push(local[self.mul(a, b)].expect("subgroup not closed"));
            }
        }
        let group = FiniteGroup {
            order: n,
            table,
            identity: local[self.identity].expect("subgroup lacks identity"),
            inverses: members.iter().map(|&a| local[self.inv(a)].unwrap()).collect(),
            names: members.iter().map(|&a| self.names[a].clone()).collect(),
            perms: self
                .perms
                .as_ref()
                .map(|p| members.iter().map(|&a| p[a].clone()).collect()),
        };
        Subgroup {
            group,
            embedding: members,
            local,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupSpec {
    Generators {
        degree: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
}

/// A subgroup together with its inclusion into the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub group: FiniteGroup,
    /// local index → parent index
    pub embedding: Vec<Elem>,
    /// parent index → local index
    local: Vec<Option<Elem>>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn contains(&self, parent: Elem) -> bool {
        self.local[parent].is_some()
    }

    pub fn local(&self, parent: Elem) -> Option<Elem> {
        self.local[parent]
    }

    pub fn parent(&self, local: Elem) -> Elem {
        self.embedding[local]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub basepoint: Elem,
    pub elements: Vec<Elem>,
}

impl ConjClass {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, a: Elem) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.position(a).is_some()
    }

    pub fn is_trivial(&self, g: &FiniteGroup) -> bool {
        self.elements == [g.identity()]
    }
}

/// A choice `g: 𝒞 → G` with `g_a s0 g_a⁻¹ = a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub class: ConjClass,
    /// aligned with `class.elements`
    reps: Vec<Elem>,
}

impl Section {
    /// For each `a`, the least-index `u` with `u s0 u⁻¹ = a`.
    pub fn default_for(g: &FiniteGroup, class: &ConjClass) -> Section {
        let reps = class
            .elements
            .iter()
            .map(|&a| {
                if a == class.basepoint {
                    g.identity()
                } else {
                    g.elements().find(|&u| g.conj(u, class.basepoint) == a).unwrap()
                }
            })
            .collect();
        Section {
            class: class.clone(),
            reps,
        }
    }

    /// Build from an explicit map; unspecified class elements fall back to
    /// the default choice.
    pub fn from_map(g: &FiniteGroup, class: &ConjClass, map: &BTreeMap<Elem, Elem>) -> Result<Section, GroupError> {
        for a in map.keys() {
            if !class.contains(*a) {
                return Err(GroupError::InvalidSection(format!(
                    "{} is not in the class",
                    g.name(*a)
                )));
            }
        }
        let mut s = Section::default_for(g, class);
        for (i, &a) in class.elements.iter().enumerate() {
            if let Some(&u) = map.get(&a) {
                if u >= g.order() || g.conj(u, class.basepoint) != a {
                    return Err(GroupError::InvalidSection(format!(
                        "g_{} = {} does not conjugate the basepoint {} to it",
                        g.name(a),
                        g.name(u.min(g.order() - 1)),
                        g.name(class.basepoint)
                    )));
                }
                s.reps[i] = u;
            }
        }
        Ok(s)
    }

    /// Parse `{"basepoint": i, "section": {"a": "g", …}}`; keys and values
    /// may be indices or element names.
    pub fn from_json(g: &FiniteGroup, text: &str) -> Result<Section, GroupError> {
        #[derive(Deserialize)]
        struct Raw {
            basepoint: serde_json::Value,
            section: BTreeMap<String, serde_json::Value>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| GroupError::Input(e.to_string()))?;
        let resolve = |v: &serde_json::Value| -> Result<Elem, GroupError> {
            match v {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .map(|x| x as usize)
                    .filter(|&x| x < g.order())
                    .ok_or_else(|| GroupError::UnknownElement(n.to_string())),
                serde_json::Value::String(s) => g.find_element(s),
                other => Err(GroupError::UnknownElement(other.to_string())),
            }
        };
        let base = resolve(&raw.basepoint)?;
        let class = g.class_of(base);
        let mut map = BTreeMap::new();
        for (k, v) in &raw.section {
            map.insert(g.find_element(k)?, resolve(v)?);
        }
        Section::from_map(g, &class, &map)
    }

    pub fn basepoint(&self) -> Elem {
        self.class.basepoint
    }

    pub fn rep(&self, a: Elem) -> Elem {
        self.reps[self.class.position(a).expect("element not in class")]
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    /// `ζ_a(u) = g⁻¹_{u a u⁻¹} u g_a`, an element of the basepoint centralizer.
    pub fn cocycle(&self, g: &FiniteGroup, a: Elem, u: Elem) -> Elem {
        let b = g.conj(u, a);
        let z = g.mul(g.mul(g.inv(self.rep(b)), u), self.rep(a));
        let s0 = self.basepoint();
        assert_eq!(
            g.mul(z, s0),
            g.mul(s0, z),
            "cocycle value outside the centralizer: the section is broken"
        );
        z
    }
}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::builtin("S3").unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(s3().order(), 6);
        let z3 = FiniteGroup::from_generators(3, &[Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap()], 100).unwrap();
        assert_eq!(z3.order(), 3);
        assert_eq!(FiniteGroup::from_generators(4, &[], 100).unwrap().order(), 1);
        assert_eq!(FiniteGroup::builtin("D4").unwrap().order(), 8);
    }

    #[test]
    fn closure_bound() {
        let gens = [
            Perm::from_cycles(5, &[vec![1, 2]]).unwrap(),
            Perm::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap(),
        ];
        assert_eq!(
            FiniteGroup::from_generators(5, &gens, 100),
            Err(GroupError::BoundExceeded(100))
        );
    }

    #[test]
    fn s3_labelling() {
        let g = s3();
        let names: Vec<&str> = g.elements().map(|a| g.name(a)).collect();
        assert_eq!(names, ["e", "(12)", "(23)", "(123)", "(132)", "(13)"]);
        // uv = (12)(23)
        assert_eq!(g.mul(1, 2), 3);
        assert_eq!(g.mul(2, 1), 4);
        assert_eq!(g.find_element("(1,3)").unwrap(), 5);
        assert_eq!(g.find_element("3").unwrap(), 3);
    }

    #[test]
    fn classes_and_centralizers() {
        let g = s3();
        let cls = g.conjugacy_classes();
        let sizes: Vec<usize> = cls.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, [1, 2, 3]);
        assert_eq!(g.centralizer(1).order(), 2);
        assert_eq!(g.centralizer(3).order(), 3);
        assert_eq!(g.centralizer(0).order(), 6);
        for c in &cls {
            assert_eq!(c.len() * g.centralizer(c.basepoint).order(), 6);
        }
        let z4 = FiniteGroup::builtin("Z4").unwrap();
        assert_eq!(z4.conjugacy_classes().len(), 4);
        let one = FiniteGroup::builtin("trivial").unwrap();
        assert_eq!(one.conjugacy_classes().len(), 1);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // Latin square that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(t, None),
            Err(GroupError::InvalidTable(_))
        ));
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).is_err());
        let z2 = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn sections_and_cocycles() {
        let g = s3();
        let cls = g.class_of(1);
        let def = Section::default_for(&g, &cls);
        for &a in &cls.elements {
            assert_eq!(g.conj(def.rep(a), 1), a);
        }
        assert_eq!(def.rep(1), 0);
        let swap = Section::from_json(&g, r#"{"basepoint": 1, "section": {"1": "0", "2": "5", "5": "2"}}"#).unwrap();
        assert_eq!(swap.reps(), &[0, 5, 2]);
        // ζ_u(u) = u, ζ_v(w) = e
        assert_eq!(swap.cocycle(&g, 1, 1), 1);
        assert_eq!(swap.cocycle(&g, 2, 5), 0);
        for &a in &cls.elements {
            assert_eq!(swap.cocycle(&g, a, 0), 0);
        }
        assert!(Section::from_json(&g, r#"{"basepoint": 1, "section": {"2": "3"}}"#).is_ok());
        assert!(Section::from_json(&g, r#"{"basepoint": 1, "section": {"2": "1"}}"#).is_err());
        let triv = Section::default_for(&g, &g.class_of(0));
        assert_eq!(triv.rep(0), 0);
    }

    #[test]
    fn json_inputs() {
        let g = FiniteGroup::from_json(r#"{"degree": 3, "generators": [[[1,2]], [[2,3]]]}"#).unwrap();
        assert_eq!(g, s3());
        let t = FiniteGroup::from_json(r#"{"order": 2, "table": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(t.order(), 2);
        assert!(FiniteGroup::from_json(r#"{"order": 3, "table": [[0,1],[1,0]]}"#).is_err());
        assert!(FiniteGroup::from_json("{}").is_err());
    }
}
