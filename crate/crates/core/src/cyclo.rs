//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored as coefficient vectors of length `φ(N)` in the power
//! basis `1, ζ, …, ζ^{φ(N)-1}`, i.e. residues modulo the cyclotomic
//! polynomial `Φ_N`. Reduction modulo `Φ_N` (not `x^N - 1`) keeps equality
//! coefficientwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::ser::SerializeStruct;

use crate::error::{Error, Result};
use crate::rational::Rat;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// Integer polynomial product, coefficients low to high.
fn poly_mul_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic integer polynomial; `None` if the remainder is nonzero.
fn poly_div_monic(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    if num.len() < den.len() {
        return if num.iter().all(|&c| c == 0) { Some(vec![0]) } else { None };
    }
    let mut rem = num.to_vec();
    let mut quo = vec![0i64; num.len() - dn];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    if rem.iter().all(|&c| c == 0) {
        Some(quo)
    } else {
        None
    }
}

/// `Φ_N` with coefficients from the constant term upward, obtained by dividing
/// `x^N - 1` by `Φ_d` for every proper divisor `d` of `N`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "conductor must be positive");
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut den = vec![1i64];
    for d in divisors(n as u64) {
        if d < n as u64 {
            den = poly_mul_int(&den, &cyclotomic_polynomial(d as u32));
        }
    }
    poly_div_monic(&num, &den).expect("x^N - 1 is divisible by the proper cyclotomic factors")
}

/// The field `Q(ζ_N)` together with the reduced forms of `ζ_N^k`, `0 ≤ k < N`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    n: u32,
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CycloField {
    pub fn new(n: u32) -> Arc<CycloField> {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Φ_N
            let mut next = vec![0i64; deg + 1];
            next[1..=deg].copy_from_slice(&cur[..deg]);
            let top = next[deg];
            if top != 0 {
                for j in 0..=deg {
                    next[j] -= top * phi[j];
                }
            }
            next.truncate(deg);
            cur = next;
        }
        Arc::new(CycloField { n, phi, powers })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn min_poly(&self) -> &[i64] {
        &self.phi
    }

    /// Power-basis coefficients of `ζ_N^k` as integers.
    fn power(&self, k: i64) -> &[i64] {
        &self.powers[k.rem_euclid(self.n as i64) as usize]
    }

    /// Reduce `Σ counts[k] ζ_N^k` (length `N`) to integer power-basis coefficients.
    pub fn reduce_counts(&self, counts: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.degree()];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (o, p) in out.iter_mut().zip(self.power(k as i64)) {
                    *o += c * p;
                }
            }
        }
        out
    }

    pub fn counts_are_zero(&self, counts: &[i64]) -> bool {
        self.reduce_counts(counts).iter().all(|&c| c == 0)
    }
}

/// `Σ counts[k] ζ_N^k` as a field element.
pub fn from_counts(field: &Arc<CycloField>, counts: &[i64]) -> CycloNum {
    CycloNum { field: field.clone(), c: rat_vec_from_ints(&field.reduce_counts(counts)) }
}

fn rat_vec_from_ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&c| Rat::int(c)).collect()
}

pub trait FieldExt {
    fn zero(&self) -> CycloNum;
    fn one(&self) -> CycloNum;
    fn from_rat(&self, r: Rat) -> CycloNum;
    fn from_int(&self, n: i64) -> CycloNum;
    /// `ζ_N^k`.
    fn zeta(&self, k: i64) -> CycloNum;
    /// `ζ_m^k = ζ_N^{kN/m}`; requires `m | N`.
    fn root_of_unity(&self, m: u32, k: i64) -> Result<CycloNum>;
}

impl FieldExt for Arc<CycloField> {
    fn zero(&self) -> CycloNum {
        CycloNum { field: self.clone(), c: vec![Rat::ZERO; self.degree()] }
    }

    fn one(&self) -> CycloNum {
        self.from_rat(Rat::ONE)
    }

    fn from_rat(&self, r: Rat) -> CycloNum {
        let mut c = vec![Rat::ZERO; self.degree()];
        c[0] = r;
        CycloNum { field: self.clone(), c }
    }

    fn from_int(&self, n: i64) -> CycloNum {
        self.from_rat(Rat::int(n))
    }

    fn zeta(&self, k: i64) -> CycloNum {
        CycloNum { field: self.clone(), c: rat_vec_from_ints(self.power(k)) }
    }

    fn root_of_unity(&self, m: u32, k: i64) -> Result<CycloNum> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::Conductor(format!("{m} does not divide the conductor {}", self.n)));
        }
        Ok(self.zeta(k * (self.n / m) as i64))
    }
}

/// An element of `Q(ζ_N)` in canonical form.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    c: Vec<Rat>,
}

impl CycloNum {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.c
    }

    pub fn from_coefficients(field: &Arc<CycloField>, coeffs: Vec<Rat>) -> Result<CycloNum> {
        let mut out = field.zero();
        for (k, r) in coeffs.into_iter().enumerate() {
            if !r.is_zero() {
                out = &out + &field.zeta(k as i64).scale(&r);
            }
        }
        Ok(out)
    }

    fn same_field(&self, o: &CycloNum) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field.n == o.field.n,
            "cyclotomic conductors differ: {} vs {}",
            self.field.n,
            o.field.n
        );
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Rat::is_zero)
    }

    /// The rational value if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.c[1..].iter().all(Rat::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rat) -> CycloNum {
        if r.is_zero() {
            return self.field.zero();
        }
        CycloNum { field: self.field.clone(), c: self.c.iter().map(|x| x.mul(r)).collect() }
    }

    /// Multiply by `ζ_N^k` without a general product.
    pub fn mul_zeta(&self, k: i64) -> CycloNum {
        let n = self.field.n as i64;
        let k = k.rem_euclid(n.max(1));
        if k == 0 || self.field.n == 1 {
            return self.clone();
        }
        let deg = self.c.len();
        let mut out = vec![Rat::ZERO; deg];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let p = self.field.power(i as i64 + k);
            for j in 0..deg {
                if p[j] != 0 {
                    out[j] = out[j].add(&x.mul_int(p[j]));
                }
            }
        }
        CycloNum { field: self.field.clone(), c: out }
    }

    pub fn inv(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rat(r.inv()?));
        }
        // extended Euclid in Q[x] on (Φ_N, a)
        let phi: Vec<Rat> = self.field.phi.iter().map(|&c| Rat::int(c)).collect();
        let a = trim(self.c.clone());
        let (mut r0, mut r1) = (phi, a);
        let (mut t0, mut t1) = (vec![Rat::ZERO], vec![Rat::ONE]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divrem(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        // r0 is a nonzero constant since Φ_N is irreducible
        if r0.len() != 1 {
            return Err(Error::Inconsistent("gcd with the cyclotomic polynomial is not constant".into()));
        }
        let s = r0[0].inv()?;
        let coeffs: Vec<Rat> = t0.iter().map(|x| x.mul(&s)).collect();
        let out = self.reduce_poly(&coeffs);
        debug_assert!((&out * self).is_one());
        Ok(out)
    }

    pub fn div(&self, o: &CycloNum) -> Result<CycloNum> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycloNum> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    fn reduce_poly(&self, p: &[Rat]) -> CycloNum {
        let deg = self.c.len();
        let mut out = vec![Rat::ZERO; deg];
        for (i, x) in p.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if i < deg {
                out[i] = out[i].add(x);
                continue;
            }
            let pw = self.field.power(i as i64);
            for j in 0..deg {
                if pw[j] != 0 {
                    out[j] = out[j].add(&x.mul_int(pw[j]));
                }
            }
        }
        CycloNum { field: self.field.clone(), c: out }
    }

    /// `k` with `self = ζ_N^k`, if this element is an `N`-th root of unity.
    pub fn discrete_log(&self) -> Option<u32> {
        let n = self.field.n;
        if n == 1 {
            return if self.is_one() { Some(0) } else { None };
        }
        if self.c.iter().any(|r| !r.is_integer()) {
            return None;
        }
        (0..n).find(|&k| {
            let p = self.field.power(k as i64);
            self.c.iter().zip(p).all(|(r, &q)| *r == Rat::int(q))
        })
    }

    /// Image under `Q(ζ_N) ⊂ Q(ζ_M)`, `ζ_N ↦ ζ_M^{M/N}`.
    pub fn embed(&self, target: &Arc<CycloField>) -> Result<CycloNum> {
        let (n, m) = (self.field.n, target.n);
        if m % n != 0 {
            return Err(Error::Conductor(format!("cannot embed Q(ζ_{n}) into Q(ζ_{m})")));
        }
        let step = (m / n) as i64;
        let mut out = target.zero();
        for (i, r) in self.c.iter().enumerate() {
            if !r.is_zero() {
                out = &out + &target.zeta(i as i64 * step).scale(r);
            }
        }
        Ok(out)
    }
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().is_some_and(Rat::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rat::ZERO);
    }
    p
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or(Rat::ZERO);
            let y = b.get(i).cloned().unwrap_or(Rat::ZERO);
            x.sub(&y)
        })
        .collect();
    trim(out)
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero divisor");
    if r.len() < b.len() {
        return (vec![Rat::ZERO], r);
    }
    let mut q = vec![Rat::ZERO; r.len() - db];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let k = r.len() - b.len();
        let c = r[r.len() - 1].mul(&lead_inv);
        for (j, y) in b.iter().enumerate() {
            r[k + j] = r[k + j].sub(&c.mul(y));
        }
        q[k] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

impl PartialEq for CycloNum {
    fn eq(&self, o: &CycloNum) -> bool {
        self.field.n == o.field.n && self.c == o.c
    }
}

impl Eq for CycloNum {}

impl std::hash::Hash for CycloNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.c.hash(state);
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        self.same_field(o);
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect();
        CycloNum { field: self.field.clone(), c }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        self.same_field(o);
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect();
        CycloNum { field: self.field.clone(), c }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { field: self.field.clone(), c: self.c.iter().map(Rat::neg).collect() }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        self.same_field(o);
        if let Some(r) = o.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return o.scale(r);
        }
        let deg = self.c.len();
        let mut prod = vec![Rat::ZERO; 2 * deg - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = prod[i + j].add(&x.mul(y));
                }
            }
        }
        self.reduce_poly(&prod)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: CycloNum) -> CycloNum {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.n;
        let mut first = true;
        for (k, r) in self.c.iter().enumerate().rev() {
            if r.is_zero() {
                continue;
            }
            let neg = r.signum() < 0;
            let mag = r.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => format!("ζ{n}^{k}"),
                (_, false) => format!("{mag}·ζ{n}^{k}"),
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({self})")
    }
}

impl serde::Serialize for CycloNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycloNum", 2)?;
        st.serialize_field("conductor", &self.field.n)?;
        st.serialize_field("coefficients", &self.c)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn field_one_is_q() {
        let f = CycloField::new(1);
        assert_eq!(f.degree(), 1);
        assert!(f.zeta(5).is_one());
        let x = f.from_rat(Rat::frac(3, 4));
        assert_eq!(x.inv().unwrap(), f.from_rat(Rat::frac(4, 3)));
    }

    #[test]
    fn display_is_exact() {
        let f = CycloField::new(8);
        let x = &f.zeta(3).scale(&Rat::frac(-1, 2)) + &f.one();
        assert_eq!(x.to_string(), "-1/2·ζ8^3 + 1");
        assert_eq!(f.zero().to_string(), "0");
    }
}
