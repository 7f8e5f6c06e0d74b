//! Finite abelian groups as products of cyclic groups, their automorphisms,
//! and the standard-generator decomposition of a generating pair.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclo::{gcd, lcm};
use crate::error::{pre, Error, Result};

/// `Z_{m_1} × … × Z_{m_k}`. Most callers use invariant-factor form
/// (`m_i | m_{i+1}`); products of cyclic groups with coprime orders such as
/// `Z_4 × Z_9` are accepted too and checked with [`AbelianGroup::is_invariant_form`]
/// where the theory needs it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub exp: Vec<u32>,
}

impl GroupElement {
    pub fn new(exp: Vec<u32>) -> GroupElement {
        GroupElement { exp }
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.exp.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<AbelianGroup> {
        pre(!factors.is_empty(), "a group needs at least one cyclic factor")?;
        pre(factors.iter().all(|&m| m >= 1), "cyclic factors must be positive")?;
        let order: u64 = factors.iter().map(|&m| m as u64).product();
        pre(order <= 1 << 24, "group too large for explicit enumeration")?;
        Ok(AbelianGroup { factors })
    }

    /// Invariant-factor form: every factor divides the next.
    pub fn invariant(factors: Vec<u32>) -> Result<AbelianGroup> {
        let g = AbelianGroup::new(factors)?;
        pre(g.is_invariant_form(), format!("factors {:?} are not an invariant-factor chain", g.factors))?;
        Ok(g)
    }

    pub fn cyclic(n: u32) -> AbelianGroup {
        AbelianGroup::new(vec![n]).expect("valid cyclic group")
    }

    pub fn zm_zn(m: u32, n: u32) -> Result<AbelianGroup> {
        AbelianGroup::invariant(vec![m, n])
    }

    pub fn is_invariant_form(&self) -> bool {
        self.factors.windows(2).all(|w| w[1] % w[0] == 0)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&m| m as usize).product()
    }

    /// Least common multiple of the factors.
    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1u64, |a, &m| lcm(a, m as u64)) as u32
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { exp: vec![0; self.rank()] }
    }

    /// Element with the given (unreduced) exponents.
    pub fn element(&self, exp: &[i64]) -> Result<GroupElement> {
        pre(exp.len() == self.rank(), format!("expected {} exponents, got {}", self.rank(), exp.len()))?;
        Ok(GroupElement {
            exp: exp.iter().zip(&self.factors).map(|(&e, &m)| e.rem_euclid(m as i64) as u32).collect(),
        })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.exp.len() == self.rank() && g.exp.iter().zip(&self.factors).all(|(e, m)| e < m)
    }

    /// The `i`-th canonical generator `e_i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut exp = vec![0; self.rank()];
        if self.factors[i] > 1 {
            exp[i] = 1;
        }
        GroupElement { exp }
    }

    pub fn standard_generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Mixed-radix index, first coordinate most significant, so index order is
    /// lexicographic order.
    pub fn index(&self, g: &GroupElement) -> usize {
        g.exp.iter().zip(&self.factors).fold(0usize, |acc, (&e, &m)| acc * m as usize + e as usize)
    }

    pub fn from_index(&self, mut i: usize) -> GroupElement {
        let mut exp = vec![0u32; self.rank()];
        for k in (0..self.rank()).rev() {
            let m = self.factors[k] as usize;
            exp[k] = (i % m) as u32;
            i /= m;
        }
        GroupElement { exp }
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.from_index(i)).collect()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            exp: a.exp.iter().zip(&b.exp).zip(&self.factors).map(|((x, y), m)| (x + y) % m).collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement { exp: a.exp.iter().zip(&self.factors).map(|(x, m)| (m - x) % m).collect() }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `g^k`.
    pub fn pow(&self, g: &GroupElement, k: i64) -> GroupElement {
        GroupElement {
            exp: g
                .exp
                .iter()
                .zip(&self.factors)
                .map(|(&e, &m)| ((e as i64 * k.rem_euclid(m as i64)) % m as i64) as u32)
                .collect(),
        }
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.index(&self.add(&self.from_index(a), &self.from_index(b)))
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        self.index(&self.neg(&self.from_index(a)))
    }

    /// Addition table, `table[a * |G| + b] = a + b` on indices.
    pub fn add_table(&self) -> Vec<usize> {
        let n = self.order();
        let els = self.elements();
        let mut t = Vec::with_capacity(n * n);
        for a in &els {
            for b in &els {
                t.push(self.index(&self.add(a, b)));
            }
        }
        t
    }

    /// Least `t ≥ 1` with `g^t = 1`: the lcm of `m_i / gcd(m_i, e_i)`.
    pub fn element_order(&self, g: &GroupElement) -> u32 {
        g.exp
            .iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&e, &m)| lcm(acc, m as u64 / gcd(m as u64, e as u64)))
            as u32
    }

    /// Indices of the subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        let id = self.index(&self.identity());
        seen[id] = true;
        let mut stack = vec![self.identity()];
        while let Some(x) = stack.pop() {
            for s in gens {
                let y = self.add(&x, s);
                let iy = self.index(&y);
                if !seen[iy] {
                    seen[iy] = true;
                    stack.push(y);
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }

    pub fn generates(&self, gens: &[GroupElement]) -> bool {
        self.generated_subgroup(gens).len() == self.order()
    }

    /// Closure of `{g, h}` under the group law is the whole group.
    pub fn is_generating_pair(&self, g: &GroupElement, h: &GroupElement) -> bool {
        self.generates(&[g.clone(), h.clone()])
    }

    /// Discrete logarithm of `x` in `<g>`: least `t ≥ 0` with `g^t = x`.
    pub fn log_in_cyclic(&self, g: &GroupElement, x: &GroupElement) -> Option<u32> {
        let o = self.element_order(g);
        let mut cur = self.identity();
        for t in 0..o {
            if &cur == x {
                return Some(t);
            }
            cur = self.add(&cur, g);
        }
        None
    }
}

/// An automorphism given by the images of the canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupAutomorphism {
    pub group: AbelianGroup,
    pub images: Vec<GroupElement>,
}

impl GroupAutomorphism {
    pub fn new(group: &AbelianGroup, images: Vec<GroupElement>) -> Result<GroupAutomorphism> {
        pre(images.len() == group.rank(), "one image per canonical generator")?;
        for (i, img) in images.iter().enumerate() {
            pre(group.contains(img), format!("image {img} is not a group element"))?;
            let o = group.element_order(img);
            pre(group.factors()[i] % o == 0, format!("image of e{} has order {o} not dividing {}", i + 1, group.factors()[i]))?;
        }
        pre(group.generates(&images), "generator images do not generate the group")?;
        Ok(GroupAutomorphism { group: group.clone(), images })
    }

    pub fn identity(group: &AbelianGroup) -> GroupAutomorphism {
        GroupAutomorphism { group: group.clone(), images: group.standard_generators() }
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let g = &self.group;
        let mut acc = g.identity();
        for (e, img) in x.exp.iter().zip(&self.images) {
            acc = g.add(&acc, &g.pow(img, *e as i64));
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            group: self.group.clone(),
            images: other.images.iter().map(|x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        let g = &self.group;
        let mut pre_image = vec![None; g.order()];
        for x in g.elements() {
            let i = g.index(&self.apply(&x));
            pre_image[i] = Some(x);
        }
        let images = g
            .standard_generators()
            .iter()
            .map(|e| pre_image[g.index(e)].clone().expect("automorphism is bijective"))
            .collect();
        GroupAutomorphism { group: g.clone(), images }
    }
}

pub const DEFAULT_AUT_BOUND: usize = 256;

/// Every automorphism exactly once, ordered lexicographically by generator images.
pub fn aut_enumerate(group: &AbelianGroup, bound: usize) -> Result<Vec<GroupAutomorphism>> {
    if group.order() > bound {
        return Err(Error::Budget(format!(
            "automorphism enumeration refused: |G| = {} exceeds the bound {bound}",
            group.order()
        )));
    }
    let els = group.elements();
    let candidates: Vec<Vec<&GroupElement>> = group
        .factors()
        .iter()
        .map(|&m| els.iter().filter(|x| m % group.element_order(x) == 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; group.rank()];
    'outer: loop {
        let images: Vec<GroupElement> = choice.iter().enumerate().map(|(i, &c)| candidates[i][c].clone()).collect();
        if group.generates(&images) {
            out.push(GroupAutomorphism { group: group.clone(), images });
        }
        for i in (0..group.rank()).rev() {
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                continue 'outer;
            }
            choice[i] = 0;
        }
        break;
    }
    Ok(out)
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 == 1 {
        Some(t0.rem_euclid(m))
    } else if m == 1 {
        Some(0)
    } else {
        None
    }
}

/// Solve `x ≡ r_i (mod m_i)` for pairwise coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> (u64, u64) {
    let mut x: u64 = 0;
    let mut m: u64 = 1;
    for &(r, mi) in residues {
        let inv = mod_inverse((m % mi) as i64, mi as i64).expect("coprime moduli") as u64;
        // x + m * t ≡ r (mod mi)
        let t = ((r + mi - x % mi) % mi) * inv % mi;
        x += m * t;
        m *= mi;
        x %= m;
    }
    (x, m)
}

/// Standard-pair normalization inside `Z_{p^i} × Z_{p^j}`: returns `a` and an
/// automorphism `σ` with `σ(e_1) = g·h^{-a}`, `σ(e_2) = h`. Among all valid
/// `a`, the one making `σ(e_1)` lexicographically smallest is chosen.
pub fn normalize_prime_pair(
    group: &AbelianGroup,
    g: &GroupElement,
    h: &GroupElement,
) -> Result<(u32, GroupAutomorphism)> {
    pre(group.rank() == 2 && group.is_invariant_form(), "group must be Z_{p^i} x Z_{p^j}")?;
    let primes = prime_factors(group.factors()[1] as u64);
    pre(primes.len() <= 1, "group must be a p-group")?;
    pre(group.contains(g) && group.contains(h), "elements must belong to the group")?;
    pre(group.is_generating_pair(g, h), "g and h do not generate the group")?;
    let (og, oh) = (group.element_order(g), group.element_order(h));
    pre(og <= oh, "order(g) must not exceed order(h)")?;
    let pj = group.factors()[1];
    if oh != pj {
        return Err(Error::Inconsistent(format!("order of h is {oh}, expected {pj}")));
    }
    let pi = group.factors()[0];
    let mut best: Option<(GroupElement, u32)> = None;
    for a in 0..pj {
        let c = group.sub(g, &group.pow(h, a as i64));
        if pi % group.element_order(&c) != 0 || !group.is_generating_pair(&c, h) {
            continue;
        }
        if best.as_ref().map_or(true, |(b, _)| c < *b) {
            best = Some((c, a));
        }
    }
    let (c, a) = best.ok_or_else(|| Error::Inconsistent("no complement for h found".into()))?;
    let sigma = GroupAutomorphism::new(group, vec![c, h.clone()])?;
    debug_assert_eq!(&group.add(&sigma.images[0], &group.pow(&sigma.images[1], a as i64)), g);
    Ok((a, sigma))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    G,
    H,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSplit {
    pub prime: u64,
    pub side: Side,
}

/// `Z_m × Z_n = (Z_{m1} × Z_{m2}) × (Z_{n1} × Z_{n2})` with
/// `g = g2·h1·h2^a`, `h = g1·g2^b·h2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardDecomposition {
    pub m1: u32,
    pub m2: u32,
    pub n1: u32,
    pub n2: u32,
    pub a: u32,
    pub b: u32,
    pub g1: GroupElement,
    pub g2: GroupElement,
    pub h1: GroupElement,
    pub h2: GroupElement,
    pub witness: GroupAutomorphism,
    pub split: Vec<PrimeSplit>,
}

impl StandardDecomposition {
    /// Re-check every arithmetic constraint and both product identities.
    pub fn verify(&self, group: &AbelianGroup, g: &GroupElement, h: &GroupElement) -> Result<()> {
        let (m, n) = (group.factors()[0], group.factors()[1]);
        let ok = |c: bool, what: &str| -> Result<()> {
            if c {
                Ok(())
            } else {
                Err(Error::Inconsistent(format!("standard decomposition violates {what}")))
            }
        };
        ok(m == self.m1 * self.n1, "m = m1 n1")?;
        ok(n == self.m2 * self.n2, "n = m2 n2")?;
        ok(self.m2 % self.m1 == 0, "m1 | m2")?;
        ok(self.n2 % self.n1 == 0, "n1 | n2")?;
        ok(gcd(self.m2 as u64, self.n2 as u64) == 1, "gcd(m2, n2) = 1")?;
        ok(self.a < self.n2, "0 <= a < n2")?;
        ok(self.b < self.m2, "0 <= b < m2")?;
        let orders = [
            (&self.g1, self.m1),
            (&self.g2, self.m2),
            (&self.h1, self.n1),
            (&self.h2, self.n2),
        ];
        for (x, o) in orders {
            ok(group.element_order(x) == o, "orders of the standard generators")?;
        }
        let g_rebuilt = group.add(&group.add(&self.g2, &self.h1), &group.pow(&self.h2, self.a as i64));
        ok(&g_rebuilt == g, "g = g2 h1 h2^a")?;
        let h_rebuilt = group.add(&group.add(&self.g1, &group.pow(&self.g2, self.b as i64)), &self.h2);
        ok(&h_rebuilt == h, "h = g1 g2^b h2")?;
        let w = GroupAutomorphism::new(group, self.witness.images.clone())?;
        ok(w.images[0] == group.add(&self.g1, &self.h1), "witness sends e1 to g1 h1")?;
        ok(w.images[1] == group.add(&self.g2, &self.h2), "witness sends e2 to g2 h2")?;
        Ok(())
    }
}

/// Idempotent of `Z_m` projecting onto the `q`-primary part (`q` a prime power dividing `m`).
fn primary_idempotent(m: u64, q: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let rest = m / q;
    if q == 1 {
        return 0;
    }
    let inv = mod_inverse((rest % q) as i64, q as i64).expect("coprime parts") as u64;
    (rest * inv) % m
}

/// Standard decomposition of a generating pair of `Z_m × Z_n`, `m | n`.
/// A one-factor group `Z_n` is treated as `Z_1 × Z_n`.
pub fn standard_decompose(
    group: &AbelianGroup,
    g: &GroupElement,
    h: &GroupElement,
) -> Result<StandardDecomposition> {
    if group.rank() == 1 {
        let n = group.factors()[0];
        let big = AbelianGroup::invariant(vec![1, n])?;
        let lift = |x: &GroupElement| GroupElement { exp: vec![0, x.exp[0]] };
        let d = standard_decompose(&big, &lift(g), &lift(h))?;
        let drop = |x: &GroupElement| GroupElement { exp: vec![x.exp[1]] };
        return Ok(StandardDecomposition {
            g1: drop(&d.g1),
            g2: drop(&d.g2),
            h1: drop(&d.h1),
            h2: drop(&d.h2),
            witness: GroupAutomorphism { group: group.clone(), images: vec![drop(&d.witness.images[1])] },
            ..d
        });
    }
    pre(group.rank() == 2 && group.is_invariant_form(), "group must be Z_m x Z_n with m | n")?;
    pre(group.contains(g) && group.contains(h), "elements must belong to the group")?;
    pre(group.is_generating_pair(g, h), "g and h do not generate the group")?;
    let (m, n) = (group.factors()[0] as u64, group.factors()[1] as u64);

    let mut g1 = group.identity();
    let mut g2 = group.identity();
    let mut h1 = group.identity();
    let mut h2 = group.identity();
    let (mut m1, mut m2, mut n1, mut n2) = (1u64, 1u64, 1u64, 1u64);
    let mut a_res = Vec::new();
    let mut b_res = Vec::new();
    let mut split = Vec::new();

    for (p, e) in prime_factors(n) {
        let pb = p.pow(e);
        let pa = p.pow(prime_factors(m).iter().find(|(q, _)| *q == p).map_or(0, |&(_, f)| f));
        let local = AbelianGroup::invariant(vec![pa as u32, pb as u32])?;
        let project = |x: &GroupElement| GroupElement {
            exp: vec![(x.exp[0] as u64 % pa) as u32, (x.exp[1] as u64 % pb) as u32],
        };
        let (u1, u2) = (primary_idempotent(m, pa), primary_idempotent(n, pb));
        let lift = |x: &GroupElement| GroupElement {
            exp: vec![((x.exp[0] as u64 * u1) % m) as u32, ((x.exp[1] as u64 * u2) % n) as u32],
        };
        let (gp, hp) = (project(g), project(h));
        if local.element_order(&hp) as u64 == pb {
            // h carries the standard part at p (ties land here)
            let (ap, sigma) = normalize_prime_pair(&local, &gp, &hp)?;
            h1 = group.add(&h1, &lift(&sigma.images[0]));
            h2 = group.add(&h2, &lift(&sigma.images[1]));
            n1 *= pa;
            n2 *= pb;
            a_res.push((ap as u64 % pb, pb));
            split.push(PrimeSplit { prime: p, side: Side::H });
        } else {
            let (bp, sigma) = normalize_prime_pair(&local, &hp, &gp)?;
            g1 = group.add(&g1, &lift(&sigma.images[0]));
            g2 = group.add(&g2, &lift(&sigma.images[1]));
            m1 *= pa;
            m2 *= pb;
            b_res.push((bp as u64 % pb, pb));
            split.push(PrimeSplit { prime: p, side: Side::G });
        }
    }
    let (a, _) = crt(&a_res);
    let (b, _) = crt(&b_res);
    let witness = GroupAutomorphism::new(group, vec![group.add(&g1, &h1), group.add(&g2, &h2)])?;
    let d = StandardDecomposition {
        m1: m1 as u32,
        m2: m2 as u32,
        n1: n1 as u32,
        n2: n2 as u32,
        a: a as u32,
        b: b as u32,
        g1,
        g2,
        h1,
        h2,
        witness,
        split,
    };
    d.verify(group, g, h)?;
    Ok(d)
}

/// All generating pairs of a two-factor group, in index order.
pub fn generating_pairs(group: &AbelianGroup) -> Vec<(GroupElement, GroupElement)> {
    let els = group.elements();
    let mut out = Vec::new();
    for g in &els {
        for h in &els {
            if group.is_generating_pair(g, h) {
                out.push((g.clone(), h.clone()));
            }
        }
    }
    out
}

/// Histogram of element orders, useful in reports and tests.
pub fn order_histogram(group: &AbelianGroup) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for x in group.elements() {
        *out.entry(group.element_order(&x)).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, n: u32) -> AbelianGroup {
        AbelianGroup::zm_zn(m, n).unwrap()
    }

    fn el(v: &[u32]) -> GroupElement {
        GroupElement::new(v.to_vec())
    }

    #[test]
    fn index_round_trip_is_lexicographic() {
        let g = z(2, 4);
        let els = g.elements();
        for (i, x) in els.iter().enumerate() {
            assert_eq!(g.index(x), i);
        }
        assert!(els.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn crt_combines() {
        assert_eq!(crt(&[(1, 4), (2, 9)]), (29, 36));
        assert_eq!(crt(&[]), (0, 1));
    }

    #[test]
    fn one_factor_groups_decompose() {
        let g = AbelianGroup::cyclic(12);
        let d = standard_decompose(&g, &el(&[1]), &el(&[3])).unwrap();
        assert_eq!(d.m1 * d.n1, 1);
        assert_eq!(d.m2 * d.n2, 12);
    }

    #[test]
    fn rejects_non_invariant_chain() {
        assert!(AbelianGroup::invariant(vec![4, 6]).is_err());
        assert!(AbelianGroup::new(vec![4, 9]).is_ok());
    }
}
