//! Group algebras `kG` of finite abelian groups, their character idempotents,
//! tensor powers, and the diagonal associators and twists built from them.
//!
//! Characters of `G = Z_{m_1} × … × Z_{m_k}` are indexed like group elements:
//! the character `χ = (c_1, …, c_k)` pairs with `g = (e_1, …, e_k)` as
//! `⟨χ, g⟩ = ζ_N^{Σ c_j e_j N/m_j}` where `N` is the exponent of `G`. The
//! idempotent `e_χ = |G|^{-1} Σ_g ⟨χ, g⟩^{-1} g` satisfies `g e_χ = ⟨χ, g⟩ e_χ`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abgroup::{AbelianGroup, GroupElement};
use crate::cyclo::{gcd, CycloField, CycloNum, FieldExt};
use crate::error::{pre, Error, Result};
use crate::rational::Rat;

/// Pairing exponents `⟨χ, g⟩ = ζ_N^{table[χ·|G| + g]}`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: AbelianGroup,
    pub modulus: u32,
    table: Vec<u32>,
}

impl CharacterTable {
    pub fn new(group: &AbelianGroup) -> CharacterTable {
        let n = group.order();
        let big = group.exponent();
        let els = group.elements();
        let mut table = Vec::with_capacity(n * n);
        for chi in &els {
            for g in &els {
                let mut e: u64 = 0;
                for ((c, x), m) in chi.exp.iter().zip(&g.exp).zip(group.factors()) {
                    e += (*c as u64 * *x as u64) % *m as u64 * (big / m) as u64;
                }
                table.push((e % big as u64) as u32);
            }
        }
        CharacterTable { group: group.clone(), modulus: big, table }
    }

    pub fn pair(&self, chi: usize, g: usize) -> u32 {
        self.table[chi * self.group.order() + g]
    }

    /// `log_{ζ_o} ⟨χ, g⟩` for an element `g` of order `o`.
    pub fn local_log(&self, chi: usize, g: usize, order: u32) -> u32 {
        self.pair(chi, g) / (self.modulus / order)
    }

    /// The character `δ` with `⟨δ, g_i⟩ = ζ_N^{exps[i]}` on the canonical generators.
    pub fn character_with_values(&self, exps: &[u32]) -> Result<usize> {
        let gens: Vec<usize> = self.group.standard_generators().iter().map(|g| self.group.index(g)).collect();
        (0..self.group.order())
            .find(|&chi| gens.iter().zip(exps).all(|(&g, &e)| self.pair(chi, g) == e % self.modulus))
            .ok_or_else(|| Error::Inconsistent("no character with the requested values".into()))
    }
}

/// Sparse element of `(kG)^{⊗r}` in the group-element basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub group: AbelianGroup,
    pub field: Arc<CycloField>,
    pub rank: usize,
    pub terms: BTreeMap<Vec<usize>, CycloNum>,
}

/// Elements of `kG` are rank-one tensors.
pub type GroupAlgebraElement = TensorElement;

impl TensorElement {
    pub fn zero(group: &AbelianGroup, field: &Arc<CycloField>, rank: usize) -> TensorElement {
        TensorElement { group: group.clone(), field: field.clone(), rank, terms: BTreeMap::new() }
    }

    pub fn one(group: &AbelianGroup, field: &Arc<CycloField>, rank: usize) -> TensorElement {
        let id = group.index(&group.identity());
        let mut t = TensorElement::zero(group, field, rank);
        t.terms.insert(vec![id; rank], field.one());
        t
    }

    pub fn basis(group: &AbelianGroup, field: &Arc<CycloField>, key: Vec<usize>) -> TensorElement {
        let mut t = TensorElement::zero(group, field, key.len());
        t.terms.insert(key, field.one());
        t
    }

    pub fn element(group: &AbelianGroup, field: &Arc<CycloField>, g: &GroupElement) -> TensorElement {
        TensorElement::basis(group, field, vec![group.index(g)])
    }

    pub fn add_term(&mut self, key: Vec<usize>, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    fn check_compatible(&self, o: &TensorElement) -> Result<()> {
        if self.rank != o.rank || self.group != o.group {
            return Err(Error::Precondition(format!("rank mismatch: {} vs {}", self.rank, o.rank)));
        }
        Ok(())
    }

    pub fn add(&self, o: &TensorElement) -> Result<TensorElement> {
        self.check_compatible(o)?;
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloNum) -> TensorElement {
        let mut out = TensorElement::zero(&self.group, &self.field, self.rank);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    /// Product in `(kG)^{⊗r}` (convolution in every slot).
    pub fn mul(&self, o: &TensorElement) -> Result<TensorElement> {
        self.check_compatible(o)?;
        let mut out = TensorElement::zero(&self.group, &self.field, self.rank);
        for (k1, v1) in &self.terms {
            for (k2, v2) in &o.terms {
                let key: Vec<usize> = k1.iter().zip(k2).map(|(a, b)| self.group.add_idx(*a, *b)).collect();
                out.add_term(key, &(v1 * v2));
            }
        }
        Ok(out)
    }

    /// Apply the group-like comultiplication to slot `i`.
    pub fn delta_slot(&self, i: usize) -> Result<TensorElement> {
        pre(i < self.rank, "slot out of range")?;
        let mut out = TensorElement::zero(&self.group, &self.field, self.rank + 1);
        for (k, v) in &self.terms {
            let mut key = k.clone();
            key.insert(i, k[i]);
            out.add_term(key, v);
        }
        Ok(out)
    }

    /// Apply the counit to slot `i`.
    pub fn epsilon_slot(&self, i: usize) -> Result<TensorElement> {
        pre(i < self.rank, "slot out of range")?;
        let mut out = TensorElement::zero(&self.group, &self.field, self.rank - 1);
        for (k, v) in &self.terms {
            let mut key = k.clone();
            key.remove(i);
            out.add_term(key, v);
        }
        Ok(out)
    }

    /// Insert a tensor factor `1` at slot `i`.
    pub fn insert_one(&self, i: usize) -> TensorElement {
        let id = self.group.index(&self.group.identity());
        let mut out = TensorElement::zero(&self.group, &self.field, self.rank + 1);
        for (k, v) in &self.terms {
            let mut key = k.clone();
            key.insert(i, id);
            out.add_term(key, v);
        }
        out
    }

    /// Dense coefficients in the idempotent basis, character tuples in index order.
    pub fn to_idempotent_values(&self, chars: &CharacterTable) -> Vec<CycloNum> {
        let n = self.group.order();
        let total = n.pow(self.rank as u32);
        let mut dense = vec![self.field.zero(); total];
        for (k, v) in &self.terms {
            dense[k.iter().fold(0, |acc, &x| acc * n + x)] = v.clone();
        }
        let ratio = (self.field.conductor() / chars.modulus) as i64;
        transform(&mut dense, n, self.rank, &self.field, |chi, g| chars.pair(chi, g) as i64 * ratio);
        dense
    }

    /// Inverse of [`TensorElement::to_idempotent_values`].
    pub fn from_idempotent_values(
        group: &AbelianGroup,
        field: &Arc<CycloField>,
        rank: usize,
        values: &[CycloNum],
        chars: &CharacterTable,
    ) -> Result<TensorElement> {
        let n = group.order();
        pre(values.len() == n.pow(rank as u32), "one value per character tuple")?;
        let mut dense = values.to_vec();
        let ratio = (field.conductor() / chars.modulus) as i64;
        // coefficient of g is |G|^{-1} Σ_χ f(χ) ⟨χ, g⟩^{-1}; the transform runs g-major
        transform(&mut dense, n, rank, field, |g, chi| -(chars.pair(chi, g) as i64) * ratio);
        let scale = Rat::frac(1, (n as i64).pow(rank as u32));
        let mut out = TensorElement::zero(group, field, rank);
        for (idx, v) in dense.into_iter().enumerate() {
            if !v.is_zero() {
                out.terms.insert(unflatten(idx, n, rank), v.scale(&scale));
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse computed through the idempotent basis.
    pub fn invert(&self, chars: &CharacterTable) -> Result<TensorElement> {
        let vals = self.to_idempotent_values(chars);
        let inv: Result<Vec<CycloNum>> = vals.iter().map(|v| v.inv()).collect();
        TensorElement::from_idempotent_values(&self.group, &self.field, self.rank, &inv?, chars)
    }

    /// Diagonal form, when every idempotent coefficient is a root of unity.
    pub fn to_diagonal(&self, chars: &CharacterTable) -> Result<DiagonalTensor> {
        let vals = self.to_idempotent_values(chars);
        let n = self.field.conductor();
        let mut exps = Vec::with_capacity(vals.len());
        for v in &vals {
            exps.push(v.discrete_log().ok_or(Error::NotRootOfUnity(n))?);
        }
        Ok(DiagonalTensor { group: self.group.clone(), modulus: n, rank: self.rank, exps })
    }
}

fn unflatten(mut idx: usize, n: usize, rank: usize) -> Vec<usize> {
    let mut key = vec![0; rank];
    for s in (0..rank).rev() {
        key[s] = idx % n;
        idx /= n;
    }
    key
}

/// In-place separable transform `out[..a..] = Σ_b in[..b..] ζ^{w(a, b)}` along every slot.
fn transform(
    dense: &mut Vec<CycloNum>,
    n: usize,
    rank: usize,
    field: &Arc<CycloField>,
    w: impl Fn(usize, usize) -> i64,
) {
    for slot in 0..rank {
        let stride = n.pow((rank - 1 - slot) as u32);
        let block = stride * n;
        let mut next = vec![field.zero(); dense.len()];
        for base in (0..dense.len()).step_by(block) {
            for off in 0..stride {
                for a in 0..n {
                    let mut acc = field.zero();
                    for b in 0..n {
                        let x = &dense[base + b * stride + off];
                        if !x.is_zero() {
                            acc = &acc + &x.mul_zeta(w(a, b));
                        }
                    }
                    next[base + a * stride + off] = acc;
                }
            }
        }
        *dense = next;
    }
}

/// `1^l_i = l^{-1} Σ_j ζ_l^{-ij} g^j` for `g` of order `l`.
pub fn idempotent(
    group: &AbelianGroup,
    field: &Arc<CycloField>,
    l: u32,
    i: i64,
    g: &GroupElement,
) -> Result<GroupAlgebraElement> {
    pre(group.element_order(g) == l, format!("element {g} does not have order {l}"))?;
    let mut out = TensorElement::zero(group, field, 1);
    let inv = Rat::frac(1, l as i64);
    let mut cur = group.identity();
    for j in 0..l as i64 {
        out.add_term(vec![group.index(&cur)], &field.root_of_unity(l, -i * j)?.scale(&inv));
        cur = group.add(&cur, g);
    }
    Ok(out)
}

/// `𝟙^𝕝_i` built from `g^𝕝` where `g` has order `l = 𝕝²`.
pub fn coarse_idempotent(
    group: &AbelianGroup,
    field: &Arc<CycloField>,
    ll: u32,
    i: i64,
    g: &GroupElement,
) -> Result<GroupAlgebraElement> {
    let l = group.element_order(g);
    pre(ll * ll == l, format!("order {l} of {g} is not {ll}²"))?;
    idempotent(group, field, ll, i, &group.pow(g, ll as i64))
}

/// Check `Σ_j 1_{𝕝 j + i} = 𝟙_i` exactly for every `i`.
pub fn verify_sum_identity(group: &AbelianGroup, field: &Arc<CycloField>, g: &GroupElement) -> Result<bool> {
    let l = group.element_order(g);
    let ll = (l as f64).sqrt().round() as u32;
    pre(ll * ll == l, format!("order {l} is not a perfect square"))?;
    for i in 0..ll as i64 {
        let mut lhs = TensorElement::zero(group, field, 1);
        for j in 0..ll as i64 {
            lhs = lhs.add(&idempotent(group, field, l, ll as i64 * j + i, g)?)?;
        }
        if lhs != coarse_idempotent(group, field, ll, i, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A tensor diagonal in the idempotent basis whose coefficients are roots of
/// unity, stored as exponents of `ζ_modulus` over `Ĝ^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalTensor {
    pub group: AbelianGroup,
    pub modulus: u32,
    pub rank: usize,
    pub exps: Vec<u32>,
}

impl DiagonalTensor {
    pub fn from_fn(group: &AbelianGroup, modulus: u32, rank: usize, mut f: impl FnMut(&[usize]) -> i64) -> DiagonalTensor {
        let n = group.order();
        let total = n.pow(rank as u32);
        let mut exps = Vec::with_capacity(total);
        let mut key = vec![0usize; rank];
        for idx in 0..total {
            let mut x = idx;
            for s in (0..rank).rev() {
                key[s] = x % n;
                x /= n;
            }
            exps.push(f(&key).rem_euclid(modulus as i64) as u32);
        }
        DiagonalTensor { group: group.clone(), modulus, rank, exps }
    }

    pub fn one(group: &AbelianGroup, modulus: u32, rank: usize) -> DiagonalTensor {
        DiagonalTensor { group: group.clone(), modulus, rank, exps: vec![0; group.order().pow(rank as u32)] }
    }

    pub fn index(&self, key: &[usize]) -> usize {
        let n = self.group.order();
        key.iter().fold(0, |acc, &x| acc * n + x)
    }

    pub fn get(&self, key: &[usize]) -> u32 {
        self.exps[self.index(key)]
    }

    pub fn value(&self, field: &Arc<CycloField>, key: &[usize]) -> Result<CycloNum> {
        field.root_of_unity(self.modulus, self.get(key) as i64)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn check_compatible(&self, o: &DiagonalTensor) -> Result<()> {
        pre(self.group == o.group && self.rank == o.rank, format!("rank mismatch: {} vs {}", self.rank, o.rank))?;
        pre(self.modulus == o.modulus, "diagonal tensors use different moduli")
    }

    pub fn mul(&self, o: &DiagonalTensor) -> Result<DiagonalTensor> {
        self.check_compatible(o)?;
        let m = self.modulus;
        Ok(DiagonalTensor { exps: self.exps.iter().zip(&o.exps).map(|(a, b)| (a + b) % m).collect(), ..self.clone() })
    }

    pub fn inv(&self) -> DiagonalTensor {
        let m = self.modulus;
        DiagonalTensor { exps: self.exps.iter().map(|a| (m - a) % m).collect(), ..self.clone() }
    }

    /// `Δ` on slot `i`: `F(…, χ', χ'', …) = f(…, χ' + χ'', …)`.
    pub fn delta_slot(&self, i: usize) -> Result<DiagonalTensor> {
        pre(i < self.rank, "slot out of range")?;
        let g = &self.group;
        Ok(DiagonalTensor::from_fn(g, self.modulus, self.rank + 1, |k| {
            let mut key: Vec<usize> = k.to_vec();
            let merged = g.add_idx(key[i], key[i + 1]);
            key[i] = merged;
            key.remove(i + 1);
            self.get(&key) as i64
        }))
    }

    /// `ε` on slot `i`: evaluate at the trivial character.
    pub fn epsilon_slot(&self, i: usize) -> Result<DiagonalTensor> {
        pre(i < self.rank, "slot out of range")?;
        Ok(DiagonalTensor::from_fn(&self.group, self.modulus, self.rank - 1, |k| {
            let mut key = k.to_vec();
            key.insert(i, 0);
            self.get(&key) as i64
        }))
    }

    /// Insert a tensor factor `1 = Σ_χ e_χ` at slot `i`.
    pub fn insert_one(&self, i: usize) -> DiagonalTensor {
        DiagonalTensor::from_fn(&self.group, self.modulus, self.rank + 1, |k| {
            let mut key = k.to_vec();
            key.remove(i);
            self.get(&key) as i64
        })
    }

    pub fn with_modulus(&self, m: u32) -> Result<DiagonalTensor> {
        pre(m % self.modulus == 0, "target modulus must be a multiple")?;
        let f = m / self.modulus;
        Ok(DiagonalTensor { modulus: m, exps: self.exps.iter().map(|e| e * f).collect(), ..self.clone() })
    }

    pub fn to_group_basis(&self, field: &Arc<CycloField>, chars: &CharacterTable) -> Result<TensorElement> {
        let vals: Result<Vec<CycloNum>> =
            self.exps.iter().map(|&e| field.root_of_unity(self.modulus, e as i64)).collect();
        TensorElement::from_idempotent_values(&self.group, field, self.rank, &vals?, chars)
    }

    /// First character tuple where two diagonal tensors differ.
    pub fn first_difference(&self, o: &DiagonalTensor) -> Result<Option<Vec<usize>>> {
        self.check_compatible(o)?;
        let n = self.group.order();
        Ok(self.exps.iter().zip(&o.exps).position(|(a, b)| a != b).map(|i| unflatten(i, n, self.rank)))
    }
}

/// One factor of a twist or associator: the parameters `(a, b, c)` attached to
/// two elements `gen1`, `gen2` of orders `mm1²`, `mm2²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistPart {
    pub gen1: GroupElement,
    pub gen2: GroupElement,
    pub mm1: u32,
    pub mm2: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl TwistPart {
    pub fn validate(&self, group: &AbelianGroup) -> Result<()> {
        pre(self.mm1 >= 1 && self.mm2 >= 1, "square roots of the orders must be positive")?;
        let (o1, o2) = (group.element_order(&self.gen1), group.element_order(&self.gen2));
        pre(o1 == self.mm1 * self.mm1, format!("generator {} has order {o1}, expected {}", self.gen1, self.mm1 * self.mm1))?;
        pre(o2 == self.mm2 * self.mm2, format!("generator {} has order {o2}, expected {}", self.gen2, self.mm2 * self.mm2))?;
        let d = gcd(self.mm1 as u64, self.mm2 as u64) as u32;
        pre(self.a < self.mm1, format!("a = {} must be below {}", self.a, self.mm1))?;
        pre(self.b < d, format!("b = {} must be below gcd = {d}", self.b))?;
        pre(self.c < self.mm2, format!("c = {} must be below {}", self.c, self.mm2))?;
        Ok(())
    }

    fn d(&self) -> u32 {
        gcd(self.mm1 as u64, self.mm2 as u64) as u32
    }

    fn logs(&self, chars: &CharacterTable, chi: usize) -> (i64, i64) {
        let g = &chars.group;
        let (o1, o2) = (self.mm1 * self.mm1, self.mm2 * self.mm2);
        (
            chars.local_log(chi, g.index(&self.gen1), o1) as i64,
            chars.local_log(chi, g.index(&self.gen2), o2) as i64,
        )
    }

    /// Exponent of `ζ_N` of the twist coefficient at `(χ, ψ)`:
    /// `ζ_{o1}^{a x1 (y1−y1')} ζ_{𝕞1 d}^{b x2 (y1−y1')} ζ_{o2}^{c x2 (y2−y2'')}`.
    pub fn twist_exp(&self, chars: &CharacterTable, chi: usize, psi: usize) -> i64 {
        let n = chars.modulus as i64;
        let (x1, x2) = self.logs(chars, chi);
        let (y1, y2) = self.logs(chars, psi);
        let (mm1, mm2, d) = (self.mm1 as i64, self.mm2 as i64, self.d() as i64);
        let t1 = y1 - y1 % mm1;
        let t2 = y2 - y2 % mm2;
        self.a as i64 * x1 * t1 * (n / (mm1 * mm1)) + self.b as i64 * x2 * t1 * (n / (mm1 * d))
            + self.c as i64 * x2 * t2 * (n / (mm2 * mm2))
    }

    /// Coarse coordinates `(i1 mod 𝕞1, i2 mod 𝕞2)` of a character.
    pub fn coarse(&self, chars: &CharacterTable, chi: usize) -> (i64, i64) {
        let (x1, x2) = self.logs(chars, chi);
        (x1 % self.mm1 as i64, x2 % self.mm2 as i64)
    }

    /// Exponent of `ζ_N` of the associator coefficient at `(χ1, χ2, χ3)`:
    /// `ζ_𝕞1^{a i1 ⌊(j1+k1)/𝕞1⌋} ζ_d^{b i2 ⌊(j1+k1)/𝕞1⌋} ζ_𝕞2^{c i2 ⌊(j2+k2)/𝕞2⌋}`.
    pub fn associator_exp(&self, chars: &CharacterTable, c1: usize, c2: usize, c3: usize) -> i64 {
        let n = chars.modulus as i64;
        let (i1, i2) = self.coarse(chars, c1);
        let (j1, j2) = self.coarse(chars, c2);
        let (k1, k2) = self.coarse(chars, c3);
        let (mm1, mm2, d) = (self.mm1 as i64, self.mm2 as i64, self.d() as i64);
        let carry1 = (j1 + k1) / mm1;
        let carry2 = (j2 + k2) / mm2;
        self.a as i64 * i1 * carry1 * (n / mm1) + self.b as i64 * i2 * carry1 * (n / d)
            + self.c as i64 * i2 * carry2 * (n / mm2)
    }
}

pub fn twist_from_parts(chars: &CharacterTable, parts: &[TwistPart]) -> Result<DiagonalTensor> {
    for p in parts {
        p.validate(&chars.group)?;
    }
    Ok(DiagonalTensor::from_fn(&chars.group, chars.modulus, 2, |k| {
        parts.iter().map(|p| p.twist_exp(chars, k[0], k[1])).sum()
    }))
}

pub fn associator_from_parts(chars: &CharacterTable, parts: &[TwistPart]) -> Result<DiagonalTensor> {
    for p in parts {
        p.validate(&chars.group)?;
    }
    Ok(DiagonalTensor::from_fn(&chars.group, chars.modulus, 3, |k| {
        parts.iter().map(|p| p.associator_exp(chars, k[0], k[1], k[2])).sum()
    }))
}

/// `G = Z_{𝕞²} × Z_{𝕟²}` with the part on its canonical generators.
pub fn square_group_part(mm: u32, nn: u32, a: u32, b: u32, c: u32) -> Result<(AbelianGroup, TwistPart)> {
    pre(mm >= 1 && nn >= 1, "𝕞 and 𝕟 must be positive")?;
    let group = AbelianGroup::new(vec![mm * mm, nn * nn])?;
    let part = TwistPart { gen1: group.generator(0), gen2: group.generator(1), mm1: mm, mm2: nn, a, b, c };
    part.validate(&group)?;
    Ok((group, part))
}

/// `Φ_{a,b,c}` on `Z_{𝕞²} × Z_{𝕟²}`.
pub fn associator_phi(mm: u32, nn: u32, a: u32, b: u32, c: u32) -> Result<(CharacterTable, DiagonalTensor)> {
    let (group, part) = square_group_part(mm, nn, a, b, c)?;
    let chars = CharacterTable::new(&group);
    let phi = associator_from_parts(&chars, &[part])?;
    Ok((chars, phi))
}

/// `J_{a,b,c}` on `Z_{𝕞²} × Z_{𝕟²}`.
pub fn twist_j(mm: u32, nn: u32, a: u32, b: u32, c: u32) -> Result<(CharacterTable, DiagonalTensor)> {
    let (group, part) = square_group_part(mm, nn, a, b, c)?;
    let chars = CharacterTable::new(&group);
    let j = twist_from_parts(&chars, &[part])?;
    Ok((chars, j))
}

/// `d(J) = (1⊗J)(id⊗Δ)(J)(Δ⊗id)(J^{-1})(J^{-1}⊗1)`.
pub fn twist_coboundary(j: &DiagonalTensor) -> Result<DiagonalTensor> {
    pre(j.rank == 2, "a twist has rank 2")?;
    j.insert_one(0).mul(&j.delta_slot(1)?)?.mul(&j.delta_slot(0)?.inv())?.mul(&j.insert_one(2).inv())
}

/// `(ε⊗id)(J) = (id⊗ε)(J) = 1`.
pub fn is_normalized_twist(j: &DiagonalTensor) -> Result<bool> {
    Ok(j.epsilon_slot(0)?.is_one() && j.epsilon_slot(1)?.is_one())
}

/// First character quadruple violating
/// `(id⊗id⊗Δ)(Φ)(Δ⊗id⊗id)(Φ) = (1⊗Φ)(id⊗Δ⊗id)(Φ)(Φ⊗1)`.
pub fn pentagon_failure(phi: &DiagonalTensor) -> Result<Option<Vec<usize>>> {
    pre(phi.rank == 3, "an associator has rank 3")?;
    let lhs = phi.delta_slot(2)?.mul(&phi.delta_slot(0)?)?;
    let rhs = phi.insert_one(0).mul(&phi.delta_slot(1)?)?.mul(&phi.insert_one(3))?;
    lhs.first_difference(&rhs)
}

/// `(id⊗ε⊗id)(Φ) = 1⊗1` together with the two outer counit laws.
pub fn associator_counit_holds(phi: &DiagonalTensor) -> Result<bool> {
    Ok(phi.epsilon_slot(0)?.is_one() && phi.epsilon_slot(1)?.is_one() && phi.epsilon_slot(2)?.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotents_of_z2() {
        let g = AbelianGroup::cyclic(2);
        let f = CycloField::new(2);
        let e0 = idempotent(&g, &f, 2, 0, &g.generator(0)).unwrap();
        let e1 = idempotent(&g, &f, 2, 1, &g.generator(0)).unwrap();
        let half = f.from_rat(Rat::frac(1, 2));
        assert_eq!(e0.terms[&vec![0]], half);
        assert_eq!(e0.terms[&vec![1]], half);
        assert_eq!(e1.terms[&vec![1]], -&half);
    }

    #[test]
    fn trivial_parameters_give_trivial_tensors() {
        let (_, phi) = associator_phi(2, 2, 0, 0, 0).unwrap();
        assert!(phi.is_one());
        let (_, j) = twist_j(2, 2, 0, 0, 0).unwrap();
        assert!(j.is_one());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let (_, j) = twist_j(2, 2, 1, 0, 1).unwrap();
        let (_, phi) = associator_phi(2, 2, 1, 0, 1).unwrap();
        assert!(j.mul(&phi).is_err());
    }
}
