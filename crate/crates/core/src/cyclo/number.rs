use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CycloError, Rational};

/// Largest conductor accepted by the arithmetic. Keeps the cached power
/// tables small and the `i64` reduction coefficients far from overflow.
pub const MAX_CONDUCTOR: u32 = 2048;

/// Per-conductor tables: the cyclotomic polynomial and every power
/// `ζ_N^e`, `0 <= e < N`, reduced into the power basis.
#[derive(Debug)]
struct CycloData {
    n: u32,
    phi: usize,
    /// `powers[e]` holds the integer coefficients of `ζ_N^e` in the basis
    /// `1, ζ_N, …, ζ_N^{φ(N)-1}`.
    powers: Vec<Vec<i64>>,
    /// Subfield tests keyed by divisor `d` of `N`.
    subfields: RwLock<HashMap<u32, Arc<SubfieldMap>>>,
}

/// Data to recognise elements of `ℚ(ζ_d) ⊂ ℚ(ζ_N)` and pull them back.
#[derive(Debug)]
struct SubfieldMap {
    /// Rows of the embedding matrix forming an invertible square block.
    rows: Vec<usize>,
    /// Inverse of that block (φ(d) × φ(d)).
    inverse: Vec<Vec<Rational>>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<CycloData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn data(n: u32) -> Arc<CycloData> {
    if let Some(d) = cache().read().unwrap().get(&n) {
        return d.clone();
    }
    let built = Arc::new(CycloData::build(n));
    cache().write().unwrap().entry(n).or_insert(built).clone()
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_polynomial(d);
        num = poly_exact_div(&num, &den);
    }
    num
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub(crate) fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub(crate) fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

impl CycloData {
    fn build(n: u32) -> Self {
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce by the monic Φ_N
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            for j in (1..phi).rev() {
                next[j] = cur[j - 1];
            }
            if top != 0 {
                for j in 0..phi {
                    next[j] = next[j]
                        .checked_sub(top.checked_mul(poly[j]).expect("power table overflow"))
                        .expect("power table overflow");
                }
            }
            cur = next;
        }
        CycloData {
            n,
            phi,
            powers,
            subfields: RwLock::new(HashMap::new()),
        }
    }

    fn subfield(&self, d: u32) -> Arc<SubfieldMap> {
        if let Some(s) = self.subfields.read().unwrap().get(&d) {
            return s.clone();
        }
        let built = Arc::new(self.build_subfield(d));
        self.subfields.write().unwrap().entry(d).or_insert(built).clone()
    }

    /// Embedding column `j` is `ζ_d^j = ζ_N^{j N/d}`.
    fn build_subfield(&self, d: u32) -> SubfieldMap {
        let step = (self.n / d) as usize;
        let phi_d = euler_phi(d);
        let cols: Vec<&Vec<i64>> = (0..phi_d).map(|j| &self.powers[j * step]).collect();
        // pick rows greedily until the square block is invertible
        let mut rows: Vec<usize> = Vec::new();
        let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
        for r in 0..self.phi {
            let mut v: Vec<Rational> = cols.iter().map(|c| Rational::from_integer(c[r].into())).collect();
            for (p, row) in &echelon {
                if !v[*p].is_zero() {
                    let f = v[*p].clone();
                    for (vi, ri) in v.iter_mut().zip(row) {
                        *vi -= &f * ri;
                    }
                }
            }
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                let inv = v[p].recip();
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                echelon.push((p, v));
                rows.push(r);
                if rows.len() == phi_d {
                    break;
                }
            }
        }
        assert_eq!(rows.len(), phi_d, "embedding of Q(zeta_{d}) is not injective");
        let block: Vec<Vec<Rational>> = rows
            .iter()
            .map(|&r| cols.iter().map(|c| Rational::from_integer(c[r].into())).collect())
            .collect();
        let inverse = dense_inverse(block).expect("embedding block is invertible");
        SubfieldMap { rows, inverse }
    }

    /// Reduce a coefficient vector indexed by arbitrary exponents (taken mod N).
    fn reduce(&self, terms: &[(usize, Rational)]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.phi];
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let row = &self.powers[*e % self.n as usize];
            for (o, &p) in out.iter_mut().zip(row) {
                if p != 0 {
                    *o += c * Rational::from_integer(BigInt::from(p));
                }
            }
        }
        out
    }
}

fn dense_inverse(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= &f;
            inv[col][j] *= &f;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let g = a[r][col].clone();
                for j in 0..n {
                    let t = &g * &a[col][j];
                    a[r][j] -= t;
                    let t = &g * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// An element of the cyclotomic field `ℚ(ζ_N)`.
///
/// The value is stored in the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}` with `N`
/// the least conductor of a cyclotomic field containing it. Because of that
/// normalisation two values are equal exactly when their fields compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn from_rational(r: Rational) -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && Zero::is_zero(&self.coeffs[0])
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && One::is_one(&self.coeffs[0])
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(i.into()))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(p.into(), q.into()))
    }

    /// `ζ_n^k` for any `n >= 1` and integer `k`.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self, CycloError> {
        check_conductor(n)?;
        let e = k.rem_euclid(n as i64) as usize;
        let d = data(n);
        let coeffs = d.powers[e].iter().map(|&c| Rational::from_integer(c.into())).collect();
        Ok(Self::normalised(n, coeffs))
    }

    /// `ζ_n`.
    pub fn zeta(n: u32) -> Result<Self, CycloError> {
        Self::root_of_unity(n, 1)
    }

    /// Build `Σ coeffs[j] ζ_N^j`; exponents beyond `φ(N)` are reduced.
    pub fn from_coeffs(n: u32, coeffs: &[Rational]) -> Result<Self, CycloError> {
        check_conductor(n)?;
        let d = data(n);
        let terms: Vec<(usize, Rational)> = coeffs.iter().cloned().enumerate().collect();
        Ok(Self::normalised(n, d.reduce(&terms)))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.conductor == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Coefficients of this value in the power basis of `ℚ(ζ_target)`.
    pub fn embed(&self, target: u32) -> Result<Vec<Rational>, CycloError> {
        check_conductor(target)?;
        if !target.is_multiple_of(self.conductor) {
            return Err(CycloError::NotDivisible {
                from: self.conductor,
                target,
            });
        }
        Ok(self.lift(target))
    }

    fn lift(&self, target: u32) -> Vec<Rational> {
        if target == self.conductor {
            return self.coeffs.clone();
        }
        let step = (target / self.conductor) as usize;
        let d = data(target);
        let terms: Vec<(usize, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j * step, c.clone()))
            .collect();
        d.reduce(&terms)
    }

    fn normalised(n: u32, coeffs: Vec<Rational>) -> Self {
        if n == 1 || coeffs[1..].iter().all(|c| c.is_zero()) {
            let c0 = coeffs.into_iter().next().unwrap();
            return CycNum {
                conductor: 1,
                coeffs: vec![c0],
            };
        }
        let d = data(n);
        for sub in divisors(n) {
            if sub == 1 || sub == n || sub % 4 == 2 {
                continue;
            }
            let map = d.subfield(sub);
            let picked: Vec<&Rational> = map.rows.iter().map(|&r| &coeffs[r]).collect();
            let cand: Vec<Rational> = map
                .inverse
                .iter()
                .map(|row| row.iter().zip(&picked).map(|(a, b)| a * *b).sum())
                .collect();
            let step = (n / sub) as usize;
            let terms: Vec<(usize, Rational)> = cand.iter().cloned().enumerate().map(|(j, c)| (j * step, c)).collect();
            if d.reduce(&terms) == coeffs {
                return CycNum {
                    conductor: sub,
                    coeffs: cand,
                };
            }
        }
        CycNum { conductor: n, coeffs }
    }

    fn common(&self, other: &Self) -> (u32, Vec<Rational>, Vec<Rational>) {
        let l = self.conductor.lcm(&other.conductor);
        (l, self.lift(l), other.lift(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.conductor == 1 && other.conductor == 1 {
            return Self::from_rational(&self.coeffs[0] + &other.coeffs[0]);
        }
        let (l, a, b) = self.common(other);
        let s = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Self::normalised(l, s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (l, a, b) = self.common(other);
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        terms.extend(prod.into_iter().enumerate());
        Self::normalised(l, data(l).reduce(&terms))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        // Solve x·y = 1 through the multiplication-by-x matrix.
        let n = self.conductor;
        let d = data(n);
        let phi = d.phi;
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(phi);
        for j in 0..phi {
            let terms: Vec<(usize, Rational)> = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i + j, c.clone()))
                .collect();
            cols.push(d.reduce(&terms));
        }
        let mat: Vec<Vec<Rational>> = (0..phi)
            .map(|r| (0..phi).map(|c| cols[c][r].clone()).collect())
            .collect();
        let inv = dense_inverse(mat).ok_or(CycloError::DivisionByZero)?;
        let y: Vec<Rational> = inv.iter().map(|row| row[0].clone()).collect();
        Ok(Self::normalised(n, y))
    }

    /// The Galois automorphism `ζ_N ↦ ζ_N^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        let n = self.conductor as i64;
        debug_assert_eq!(k.rem_euclid(n).gcd(&n), 1);
        let terms: Vec<(usize, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| (((j as i64) * k).rem_euclid(n) as usize, c.clone()))
            .collect();
        Self::normalised(self.conductor, data(self.conductor).reduce(&terms))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Parse a literal such as `1/2 - 1/2*z^1`, with `z` standing for `ζ_conductor`.
    pub fn parse(literal: &str, conductor: u32) -> Result<Self, CycloError> {
        check_conductor(conductor)?;
        let s: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(CycloError::Parse(literal.to_string()));
        }
        let bad = || CycloError::Parse(literal.to_string());
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        let bytes: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = Rational::one();
            while i < bytes.len() && (bytes[i] == '+' || bytes[i] == '-') {
                if bytes[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
                i += 1;
            }
            let term: String = bytes[start..i].iter().collect();
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, power) = match term.split_once('z') {
                None => (term.as_str(), 0usize),
                Some((c, rest)) => {
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let p = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?
                    };
                    (c, p)
                }
            };
            let c = if coef.is_empty() {
                Rational::one()
            } else {
                parse_rational(coef).ok_or_else(bad)?
            };
            terms.push((power, sign * c));
        }
        Ok(Self::normalised(conductor, data(conductor).reduce(&terms)))
    }

    /// Canonical literal in the power basis of `ℚ(ζ_n)`; `n` must be a
    /// multiple of this value's conductor.
    pub fn to_literal_at(&self, n: u32) -> Result<String, CycloError> {
        let coeffs = self.embed(n)?;
        Ok(format_terms(&coeffs))
    }

    pub fn to_literal(&self) -> String {
        format_terms(&self.coeffs)
    }
}

fn format_terms(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = if k == 0 {
            fmt_rational(&mag)
        } else {
            format!("{}*z^{}", fmt_rational(&mag), k)
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
    }
}

fn check_conductor(n: u32) -> Result<(), CycloError> {
    if n == 0 || n > MAX_CONDUCTOR {
        Err(CycloError::BadConductor(n))
    } else {
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [N={}]", self.to_literal(), self.conductor)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            f.write_str(&self.to_literal())
        } else {
            write!(f, "{} (z = zeta_{})", self.to_literal(), self.conductor)
        }
    }
}

impl super::Field for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CycNum::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CycNum::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CycNum::mul(self, o)
    }
    fn neg(&self) -> Self {
        CycNum::neg(self)
    }
    fn inv(&self) -> Self {
        self.inverse().expect("inverse of zero")
    }
}

impl From<i64> for CycNum {
    fn from(i: i64) -> Self {
        Self::from_int(i)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:path) => {
        impl std::ops::$tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                $f(self, rhs)
            }
        }
        impl std::ops::$tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                $f(&self, &rhs)
            }
        }
    };
}
binop!(Add, add, CycNum::add);
binop!(Sub, sub, CycNum::sub);
binop!(Mul, mul, CycNum::mul);

impl std::ops::Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(&self)
    }
}

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn small_identities() {
        assert_eq!(z(3, 1) + z(3, 2), CycNum::from_int(-1));
        assert_eq!(&z(4, 1) * &z(4, 1), CycNum::from_int(-1));
        assert_eq!(z(6, 1).inverse().unwrap(), z(6, 5));
        assert_eq!(z(2, 1), CycNum::from_int(-1));
    }

    #[test]
    fn conductor_is_normalised() {
        // ζ_6 lives in ℚ(ζ_3)
        assert_eq!(z(6, 1).conductor(), 3);
        // ζ_12^3 = ζ_4
        assert_eq!(z(12, 3), z(4, 1));
        assert_eq!(z(12, 3).conductor(), 4);
        // ζ_12^4 = ζ_3
        assert_eq!(z(12, 4), z(3, 1));
        // √-3 = ζ_3 - ζ_3^2 has conductor 3, and (√-3)^2 = -3 is rational
        let s = z(3, 1) - z(3, 2);
        assert_eq!(s.conductor(), 3);
        assert_eq!((&s * &s).conductor(), 1);
    }

    #[test]
    fn literals_round_trip() {
        let x = CycNum::parse("1/2 - 1/2*z^1", 3).unwrap();
        assert_eq!(x.to_literal(), "1/2 - 1/2*z^1");
        assert_eq!(x.to_literal_at(6).unwrap(), "1 - 1/2*z^1");
        assert_eq!(CycNum::parse(" z ^ 2 + z + 1", 3).unwrap(), CycNum::zero());
        assert_eq!(CycNum::parse("-1", 12).unwrap().to_literal(), "-1");
        assert!(CycNum::parse("1 +", 3).is_err());
        assert!(CycNum::parse("1/0", 3).is_err());
        assert!(CycNum::parse("", 3).is_err());
    }

    #[test]
    fn embed_errors() {
        assert!(z(3, 1).embed(4).is_err());
        assert_eq!(z(3, 1).embed(6).unwrap().len(), 2);
        assert!(CycNum::zero().inverse().is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(5, 2).conj(), z(5, 3));
        let x = z(8, 1) + CycNum::frac(1, 3);
        assert!((&x * &x.conj()).conj() == &x * &x.conj());
    }
}
