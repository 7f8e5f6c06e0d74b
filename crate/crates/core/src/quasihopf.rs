//! Twisting the presented Hopf algebras by diagonal twists, the resulting
//! quasi-Hopf structures, the subalgebras `A(H,J)` and their closure and
//! genuineness tests.
//!
//! Elements are handled in the character-idempotent basis: a rank-`r` tensor
//! is a sum of word tuples `(w_1,…,w_r)` each carrying a function on `Ĝ^r`,
//! meaning `Σ_ψ F(ψ) w_1 e_{ψ_1} ⊗ … ⊗ w_r e_{ψ_r}`. With `k·w = ⟨δ_w, k⟩ w·k`
//! one has `e_χ w = w e_{χ−δ_w}`, so twists, associators and the antipode
//! gauges are all pointwise operations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abgroup::{standard_decompose, AbelianGroup, GroupElement, StandardDecomposition};
use crate::cohomology::{Cochain, CoboundarySolver, CocycleParams, DEFAULT_COBOUNDARY_BUDGET};
use crate::cyclo::{CycloField, CycloNum, FieldExt};
use crate::error::{pre, Error, Result};
use crate::groupalg::{associator_from_parts, twist_coboundary, twist_from_parts, CharacterTable, DiagonalTensor, TwistPart};
use crate::hopf::{AlgebraElement, HopfAlgebra, HopfParams, Mono, Tensor2};
use crate::linalg::Subspace;
use crate::rational::Rat;
use crate::report::Check;

/// A tensor in the idempotent basis; functions are dense over `Ĝ^rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdemTensor {
    pub rank: usize,
    pub terms: BTreeMap<Vec<usize>, Vec<CycloNum>>,
}

impl IdemTensor {
    pub fn zero(rank: usize) -> IdemTensor {
        IdemTensor { rank, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_fn(&mut self, words: Vec<usize>, f: Vec<CycloNum>) {
        if f.iter().all(|x| x.is_zero()) {
            return;
        }
        match self.terms.get_mut(&words) {
            Some(g) => {
                for (a, b) in g.iter_mut().zip(&f) {
                    if !b.is_zero() {
                        *a = &*a + b;
                    }
                }
                if g.iter().all(|x| x.is_zero()) {
                    self.terms.remove(&words);
                }
            }
            None => {
                self.terms.insert(words, f);
            }
        }
    }

    pub fn add(&self, o: &IdemTensor) -> IdemTensor {
        let mut r = self.clone();
        for (w, f) in &o.terms {
            r.add_fn(w.clone(), f.clone());
        }
        r
    }

    pub fn sub(&self, o: &IdemTensor) -> IdemTensor {
        let mut r = self.clone();
        for (w, f) in &o.terms {
            r.add_fn(w.clone(), f.iter().map(|x| -x).collect());
        }
        r
    }

    pub fn scale(&self, c: &CycloNum) -> IdemTensor {
        let mut r = IdemTensor::zero(self.rank);
        for (w, f) in &self.terms {
            r.add_fn(w.clone(), f.iter().map(|x| x * c).collect());
        }
        r
    }
}

/// `H` in the idempotent basis of its group part.
#[derive(Clone, Debug)]
pub struct IdemAlgebra {
    pub hopf: Arc<HopfAlgebra>,
    pub chars: CharacterTable,
    pub field: Arc<CycloField>,
    order: usize,
    trivial: usize,
    /// `δ_w` as a character index
    shift: Vec<usize>,
    zeta: Vec<CycloNum>,
    delta_words: Vec<IdemTensor>,
    antipode_words: Vec<IdemTensor>,
}

impl IdemAlgebra {
    pub fn new(hopf: Arc<HopfAlgebra>) -> Result<IdemAlgebra> {
        let group = hopf.group.clone();
        let chars = CharacterTable::new(&group);
        pre(chars.modulus == hopf.modulus(), "character values and the algebra use different roots of unity")?;
        let field = hopf.field.clone();
        let order = group.order();
        let nn = hopf.modulus();
        let zeta: Vec<CycloNum> = (0..nn as i64).map(|k| field.zeta(k)).collect();
        let mut shift = Vec::with_capacity(hopf.num_words());
        for w in 0..hopf.num_words() {
            let d = (0..order)
                .find(|&chi| (0..order).all(|k| chars.pair(chi, k) == hopf.word_char_exp(w, k)))
                .ok_or_else(|| Error::Inconsistent(format!("word {} does not commute with kG through a character", hopf.word_name(w))))?;
            shift.push(d);
        }
        let trivial = group.index(&group.identity());
        let mut alg = IdemAlgebra { hopf, chars, field, order, trivial, shift, zeta, delta_words: vec![], antipode_words: vec![] };
        let h = alg.hopf.clone();
        alg.delta_words = (0..h.num_words()).map(|w| alg.from_tensor2(&h.delta(&h.mono(Mono::new(w, h.identity_index()))))).collect();
        alg.antipode_words = (0..h.num_words()).map(|w| alg.from_element(&h.antipode(&h.mono(Mono::new(w, h.identity_index()))))).collect();
        Ok(alg)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.chars.group
    }

    fn len(&self, rank: usize) -> usize {
        self.order.pow(rank as u32)
    }

    fn unflatten(&self, mut idx: usize, rank: usize) -> Vec<usize> {
        let mut key = vec![0; rank];
        for s in (0..rank).rev() {
            key[s] = idx % self.order;
            idx /= self.order;
        }
        key
    }

    fn flatten(&self, key: &[usize]) -> usize {
        key.iter().fold(0, |acc, &x| acc * self.order + x)
    }

    fn char_add(&self, a: usize, b: usize) -> usize {
        self.group().add_idx(a, b)
    }

    fn char_neg(&self, a: usize) -> usize {
        self.group().neg_idx(a)
    }

    fn z(&self, e: i64) -> &CycloNum {
        &self.zeta[e.rem_euclid(self.zeta.len() as i64) as usize]
    }

    pub fn word_shift(&self, w: usize) -> usize {
        self.shift[w]
    }

    pub fn unit(&self, rank: usize) -> IdemTensor {
        let mut t = IdemTensor::zero(rank);
        t.add_fn(vec![0; rank], vec![self.field.one(); self.len(rank)]);
        t
    }

    /// A function on `Ĝ^rank` placed on the empty words.
    pub fn function(&self, f: Vec<CycloNum>, rank: usize) -> IdemTensor {
        let mut t = IdemTensor::zero(rank);
        t.add_fn(vec![0; rank], f);
        t
    }

    pub fn diagonal(&self, d: &DiagonalTensor) -> Result<IdemTensor> {
        pre(d.group == *self.group(), "diagonal tensor over a different group")?;
        let f: Result<Vec<CycloNum>> = d.exps.iter().map(|&e| self.field.root_of_unity(d.modulus, e as i64)).collect();
        Ok(self.function(f?, d.rank))
    }

    pub fn word(&self, w: usize) -> IdemTensor {
        let mut t = IdemTensor::zero(1);
        t.add_fn(vec![w], vec![self.field.one(); self.order]);
        t
    }

    /// `w·k = w Σ_χ ⟨χ, k⟩ e_χ`.
    pub fn from_element(&self, a: &AlgebraElement) -> IdemTensor {
        let mut fns: BTreeMap<usize, Vec<CycloNum>> = BTreeMap::new();
        for (m, c) in &a.terms {
            let f = fns.entry(m.word()).or_insert_with(|| vec![self.field.zero(); self.order]);
            for (chi, v) in f.iter_mut().enumerate() {
                *v = &*v + &c.mul_zeta(self.chars.pair(chi, m.group()) as i64);
            }
        }
        let mut t = IdemTensor::zero(1);
        for (w, f) in fns {
            t.add_fn(vec![w], f);
        }
        t
    }

    pub fn from_tensor2(&self, a: &Tensor2) -> IdemTensor {
        let mut fns: BTreeMap<Vec<usize>, Vec<CycloNum>> = BTreeMap::new();
        let n = self.order;
        for ((m1, m2), c) in &a.terms {
            let f = fns.entry(vec![m1.word(), m2.word()]).or_insert_with(|| vec![self.field.zero(); n * n]);
            for c1 in 0..n {
                let e1 = self.chars.pair(c1, m1.group());
                for c2 in 0..n {
                    let e = e1 + self.chars.pair(c2, m2.group());
                    let v = &mut f[c1 * n + c2];
                    *v = &*v + &c.mul_zeta(e as i64);
                }
            }
        }
        let mut t = IdemTensor::zero(2);
        for (w, f) in fns {
            t.add_fn(w, f);
        }
        t
    }

    /// Back to the monomial basis (rank 1).
    pub fn to_element(&self, t: &IdemTensor) -> Result<AlgebraElement> {
        pre(t.rank == 1, "only rank-1 tensors convert to algebra elements")?;
        let scale = Rat::frac(1, self.order as i64);
        let mut out = self.hopf.zero();
        for (w, f) in &t.terms {
            for k in 0..self.order {
                let mut acc = self.field.zero();
                for (chi, v) in f.iter().enumerate() {
                    if !v.is_zero() {
                        acc = &acc + &v.mul_zeta(-(self.chars.pair(chi, k) as i64));
                    }
                }
                out.add_term(Mono::new(w[0], k), &acc.scale(&scale));
            }
        }
        Ok(out)
    }

    /// `(w f)(v g) = ζ^e (wv) [ψ ↦ f(ψ + δ_v) g(ψ)]`, slotwise.
    pub fn mul(&self, a: &IdemTensor, b: &IdemTensor) -> Result<IdemTensor> {
        pre(a.rank == b.rank, "tensors of different ranks")?;
        let r = a.rank;
        let len = self.len(r);
        let mut out = IdemTensor::zero(r);
        'pairs: for (wa, fa) in &a.terms {
            for (wb, fb) in &b.terms {
                let mut e = 0i64;
                let mut words = Vec::with_capacity(r);
                for s in 0..r {
                    match self.hopf.word_product(wa[s], wb[s]) {
                        None => continue 'pairs,
                        Some((x, w)) => {
                            e += x as i64;
                            words.push(w);
                        }
                    }
                }
                let z = self.z(e);
                let mut f = vec![self.field.zero(); len];
                for (idx, slot) in f.iter_mut().enumerate() {
                    let y = &fb[idx];
                    if y.is_zero() {
                        continue;
                    }
                    let key: Vec<usize> = self.unflatten(idx, r).iter().zip(wb).map(|(&p, &w)| self.char_add(p, self.shift[w])).collect();
                    let x = &fa[self.flatten(&key)];
                    if x.is_zero() {
                        continue;
                    }
                    *slot = &(x * y) * z;
                }
                out.add_fn(words, f);
            }
        }
        Ok(out)
    }

    /// Applies a coproduct to slot `i`, given its values on bare words:
    /// `Δ(w e_χ) = Δ(w) Σ_{ψ'+ψ''=χ} e_{ψ'}⊗e_{ψ''}`.
    pub fn delta_slot_with(&self, t: &IdemTensor, i: usize, word_deltas: &[IdemTensor]) -> Result<IdemTensor> {
        pre(i < t.rank, "slot out of range")?;
        let r = t.rank;
        let len = self.len(r + 1);
        let mut out = IdemTensor::zero(r + 1);
        for (words, f) in &t.terms {
            for (uv, d) in &word_deltas[words[i]].terms {
                let mut nw = words.clone();
                nw[i] = uv[0];
                nw.insert(i + 1, uv[1]);
                let mut g = vec![self.field.zero(); len];
                for (idx, slot) in g.iter_mut().enumerate() {
                    let mut key = self.unflatten(idx, r + 1);
                    let dv = &d[key[i] * self.order + key[i + 1]];
                    if dv.is_zero() {
                        continue;
                    }
                    key[i] = self.char_add(key[i], key[i + 1]);
                    key.remove(i + 1);
                    let fv = &f[self.flatten(&key)];
                    if !fv.is_zero() {
                        *slot = dv * fv;
                    }
                }
                out.add_fn(nw, g);
            }
        }
        Ok(out)
    }

    pub fn delta(&self, a: &IdemTensor) -> Result<IdemTensor> {
        self.delta_slot_with(a, 0, &self.delta_words)
    }

    /// `ε` on slot `i`: words other than the empty one vanish.
    pub fn epsilon_slot(&self, t: &IdemTensor, i: usize) -> Result<IdemTensor> {
        pre(i < t.rank && t.rank >= 2, "slot out of range")?;
        let r = t.rank;
        let mut out = IdemTensor::zero(r - 1);
        for (words, f) in &t.terms {
            if words[i] != 0 {
                continue;
            }
            let mut nw = words.clone();
            nw.remove(i);
            let g: Vec<CycloNum> = (0..self.len(r - 1))
                .map(|idx| {
                    let mut key = self.unflatten(idx, r - 1);
                    key.insert(i, self.trivial);
                    f[self.flatten(&key)].clone()
                })
                .collect();
            out.add_fn(nw, g);
        }
        Ok(out)
    }

    pub fn counit(&self, a: &IdemTensor) -> CycloNum {
        a.terms.get(&vec![0]).map_or_else(|| self.field.zero(), |f| f[self.trivial].clone())
    }

    /// `S(w f) = S(f) S(w)` with `S(e_χ) = e_{−χ}`.
    pub fn antipode(&self, a: &IdemTensor) -> Result<IdemTensor> {
        pre(a.rank == 1, "the antipode acts on rank-1 tensors")?;
        let mut out = IdemTensor::zero(1);
        for (w, f) in &a.terms {
            let sf: Vec<CycloNum> = (0..self.order).map(|chi| f[self.char_neg(chi)].clone()).collect();
            out = out.add(&self.mul(&self.function(sf, 1), &self.antipode_words[w[0]])?);
        }
        Ok(out)
    }

    /// Human-readable description of one term.
    pub fn describe_term(&self, words: &[usize], f: &[CycloNum]) -> String {
        let names: Vec<String> = words.iter().map(|&w| self.hopf.word_name(w)).collect();
        let nz = f.iter().enumerate().find(|(_, v)| !v.is_zero());
        match nz {
            Some((idx, v)) => {
                let key: Vec<String> = self.unflatten(idx, words.len()).iter().map(|&c| self.group().from_index(c).to_string()).collect();
                format!("{} at characters {} with value {v}", names.join("⊗"), key.join("⊗"))
            }
            None => names.join("⊗"),
        }
    }
}

/// Antipode data `(S', α, β)` with `S'(a) = u S(a) u⁻¹` for a grouplike-diagonal `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodeData {
    pub gauge: DiagonalTensor,
    pub alpha: DiagonalTensor,
    pub beta: DiagonalTensor,
}

/// `(H, Δ_J, ε, Φ, S, α, β)` for a diagonal twist `J` of a Hopf algebra,
/// possibly composed with an associator change.
#[derive(Clone, Debug)]
pub struct QuasiHopfStructure {
    pub alg: IdemAlgebra,
    pub j: DiagonalTensor,
    pub phi: DiagonalTensor,
    pub alpha: DiagonalTensor,
    pub beta: DiagonalTensor,
    twisted_words: Vec<IdemTensor>,
}

impl QuasiHopfStructure {
    pub fn from_hopf(hopf: Arc<HopfAlgebra>) -> Result<QuasiHopfStructure> {
        let alg = IdemAlgebra::new(hopf)?;
        let g = alg.group().clone();
        let nn = alg.chars.modulus;
        let twisted_words = alg.delta_words.clone();
        Ok(QuasiHopfStructure {
            j: DiagonalTensor::one(&g, nn, 2),
            phi: DiagonalTensor::one(&g, nn, 3),
            alpha: DiagonalTensor::one(&g, nn, 1),
            beta: DiagonalTensor::one(&g, nn, 1),
            alg,
            twisted_words,
        })
    }

    /// Twist by a normalized diagonal `K`: `Δ ↦ KΔK⁻¹`, `Φ ↦ d(K)Φ`,
    /// `α ↦ Σ S(k̄₁)α k̄₂`, `β ↦ Σ k₁ β S(k₂)`.
    pub fn twist(&self, k: &DiagonalTensor) -> Result<QuasiHopfStructure> {
        pre(k.rank == 2, "a twist has rank 2")?;
        pre(k.epsilon_slot(0)?.is_one() && k.epsilon_slot(1)?.is_one(), "twist is not normalized")?;
        let k = k.with_modulus(self.j.modulus)?;
        let j = k.mul(&self.j)?;
        let phi = twist_coboundary(&k)?.mul(&self.phi)?;
        let g = self.alg.group();
        let alpha = DiagonalTensor::from_fn(g, k.modulus, 1, |c| {
            -(k.get(&[g.neg_idx(c[0]), c[0]]) as i64) + self.alpha.get(c) as i64
        });
        let beta = DiagonalTensor::from_fn(g, k.modulus, 1, |c| k.get(&[c[0], g.neg_idx(c[0])]) as i64 + self.beta.get(c) as i64);
        let kt = self.alg.diagonal(&k)?;
        let kinv = self.alg.diagonal(&k.inv())?;
        let twisted_words: Result<Vec<IdemTensor>> =
            self.twisted_words.iter().map(|d| self.alg.mul(&self.alg.mul(&kt, d)?, &kinv)).collect();
        Ok(QuasiHopfStructure { alg: self.alg.clone(), j, phi, alpha, beta, twisted_words: twisted_words? })
    }

    /// Replaces the associator, keeping everything else; used for negative controls.
    pub fn with_associator(&self, phi: DiagonalTensor) -> QuasiHopfStructure {
        QuasiHopfStructure { phi, ..self.clone() }
    }

    pub fn delta(&self, a: &IdemTensor) -> Result<IdemTensor> {
        self.alg.delta_slot_with(a, 0, &self.twisted_words)
    }

    pub fn delta_slot(&self, t: &IdemTensor, i: usize) -> Result<IdemTensor> {
        self.alg.delta_slot_with(t, i, &self.twisted_words)
    }

    /// The antipode data as obtained by twisting: `S` itself with `α_J`, `β_J`.
    pub fn antipode_data(&self) -> AntipodeData {
        AntipodeData { gauge: DiagonalTensor::one(self.alg.group(), self.j.modulus, 1), alpha: self.alpha.clone(), beta: self.beta.clone() }
    }

    /// Gauge by `u = β`: `S' = β S β⁻¹`, `α' = βα`, `β' = 1`.
    pub fn gauged_antipode_data(&self) -> Result<AntipodeData> {
        Ok(AntipodeData {
            gauge: self.beta.clone(),
            alpha: self.beta.mul(&self.alpha)?,
            beta: DiagonalTensor::one(self.alg.group(), self.j.modulus, 1),
        })
    }

    pub fn apply_antipode(&self, a: &IdemTensor, data: &AntipodeData) -> Result<IdemTensor> {
        let u = self.alg.diagonal(&data.gauge)?;
        let uinv = self.alg.diagonal(&data.gauge.inv())?;
        self.alg.mul(&self.alg.mul(&u, &self.alg.antipode(a)?)?, &uinv)
    }

    /// `Σ S'(a₁) α a₂`.
    fn contract_left(&self, t: &IdemTensor, data: &AntipodeData) -> Result<IdemTensor> {
        let alg = &self.alg;
        let n = alg.order;
        let alpha = alg.diagonal(&data.alpha)?;
        let mut out = IdemTensor::zero(1);
        for (uv, f) in &t.terms {
            let su = self.apply_antipode(&alg.word(uv[0]), data)?;
            let m = alg.mul(&alg.mul(&su, &alpha)?, &alg.word(uv[1]))?;
            for (s, mf) in &m.terms {
                let ds = alg.shift[s[0]];
                let g: Vec<CycloNum> = (0..n)
                    .map(|p2| {
                        let p1 = alg.char_neg(alg.char_add(p2, ds));
                        let fv = &f[p1 * n + p2];
                        if fv.is_zero() || mf[p2].is_zero() {
                            alg.field.zero()
                        } else {
                            fv * &mf[p2]
                        }
                    })
                    .collect();
                out.add_fn(s.clone(), g);
            }
        }
        Ok(out)
    }

    /// `Σ a₁ β S'(a₂)`.
    fn contract_right(&self, t: &IdemTensor, data: &AntipodeData) -> Result<IdemTensor> {
        let alg = &self.alg;
        let n = alg.order;
        let beta = alg.diagonal(&data.beta)?;
        let mut out = IdemTensor::zero(1);
        for (uv, f) in &t.terms {
            let sv = self.apply_antipode(&alg.word(uv[1]), data)?;
            let nn = alg.mul(&beta, &sv)?;
            let diag: Vec<CycloNum> = (0..n).map(|p| f[p * n + alg.char_neg(p)].clone()).collect();
            let mut left = IdemTensor::zero(1);
            left.add_fn(vec![uv[0]], diag);
            out = out.add(&alg.mul(&left, &nn)?);
        }
        Ok(out)
    }

    /// Per-axiom verdicts on the given elements, each with the first failing
    /// element as witness.
    pub fn verify(&self, elements: &[(String, IdemTensor)], data: &AntipodeData) -> Result<Vec<Check>> {
        let alg = &self.alg;
        let phi = alg.diagonal(&self.phi)?;
        let mut fails: BTreeMap<&'static str, String> = BTreeMap::new();
        let mut note = |axiom: &'static str, name: &str| {
            fails.entry(axiom).or_insert_with(|| name.to_string());
        };
        for (name, a) in elements {
            let d = self.delta(a)?;
            let lhs = alg.mul(&self.delta_slot(&d, 1)?, &phi)?;
            let rhs = alg.mul(&phi, &self.delta_slot(&d, 0)?)?;
            if lhs != rhs {
                note("quasi_coassociativity", name);
            }
            if alg.epsilon_slot(&d, 0)? != *a || alg.epsilon_slot(&d, 1)? != *a {
                note("counit", name);
            }
            let eps = alg.counit(a);
            if self.contract_left(&d, data)? != alg.diagonal(&data.alpha)?.scale(&eps) {
                note("antipode_left", name);
            }
            if self.contract_right(&d, data)? != alg.diagonal(&data.beta)?.scale(&eps) {
                note("antipode_right", name);
            }
        }
        let mut out = Vec::new();
        for axiom in ["quasi_coassociativity", "counit", "antipode_left", "antipode_right"] {
            out.push(match fails.get(axiom) {
                Some(w) => Check::fail(axiom, format!("fails on {w}"), w.clone()),
                None => Check::pass(axiom, format!("{} elements", elements.len())),
            });
        }
        out.push(match crate::groupalg::pentagon_failure(&self.phi)? {
            Some(k) => Check::fail("pentagon", "associator violates the pentagon identity", format!("characters {k:?}")),
            None => Check::pass("pentagon", format!("{} character quadruples", alg.order.pow(4))),
        });
        out.push(Check::from_bool("associator_counit", crate::groupalg::associator_counit_holds(&self.phi)?, ""));
        let (ok1, ok2) = self.associator_antipode(data);
        out.push(Check::from_bool("antipode_associator", ok1 && ok2, ""));
        Ok(out)
    }

    /// `Σ Φ₁ β S(Φ₂) α Φ₃ = 1` and `Σ S(p₁) α p₂ β S(p₃) = 1` for `p = Φ⁻¹`.
    fn associator_antipode(&self, data: &AntipodeData) -> (bool, bool) {
        let g = self.alg.group();
        let m = self.phi.modulus as i64;
        let mut ok1 = true;
        let mut ok2 = true;
        for c in 0..g.order() {
            let nc = g.neg_idx(c);
            let ab = data.alpha.get(&[c]) as i64 + data.beta.get(&[c]) as i64;
            ok1 &= (self.phi.get(&[c, nc, c]) as i64 + ab).rem_euclid(m) == 0;
            ok2 &= (-(self.phi.get(&[nc, c, nc]) as i64) + ab).rem_euclid(m) == 0;
        }
        (ok1, ok2)
    }
}

/// Span of a multiplicatively closed set, graded by word.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    spaces: BTreeMap<usize, Subspace>,
    order: usize,
}

impl Subalgebra {
    /// The subalgebra generated by word-homogeneous elements.
    pub fn generated(alg: &IdemAlgebra, generators: &[IdemTensor]) -> Result<Subalgebra> {
        for g in generators {
            pre(g.rank == 1 && g.terms.len() <= 1, "generators must be homogeneous in the word grading")?;
        }
        let mut sub = Subalgebra { spaces: BTreeMap::new(), order: alg.order };
        let one = alg.unit(1);
        let mut queue = vec![one.clone()];
        sub.insert(alg, &one)?;
        while let Some(u) = queue.pop() {
            for g in generators {
                let p = alg.mul(&u, g)?;
                if sub.insert(alg, &p)? {
                    queue.push(p);
                }
            }
        }
        Ok(sub)
    }

    fn insert(&mut self, alg: &IdemAlgebra, t: &IdemTensor) -> Result<bool> {
        let mut grew = false;
        for (w, f) in &t.terms {
            let sp = self.spaces.entry(w[0]).or_insert_with(|| Subspace::new(&alg.field, alg.order));
            grew |= sp.insert(f)?;
        }
        Ok(grew)
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().map(|s| s.dim()).sum()
    }

    pub fn space(&self, w: usize) -> Option<&Subspace> {
        self.spaces.get(&w).filter(|s| s.dim() > 0)
    }

    pub fn word_dims(&self) -> BTreeMap<usize, usize> {
        self.spaces.iter().map(|(w, s)| (*w, s.dim())).filter(|(_, d)| *d > 0).collect()
    }

    /// Membership in `A^{⊗r}`: every fibre along slot `i` lies in the space of `w_i`.
    /// Returns the offending term on failure.
    pub fn contains(&self, alg: &IdemAlgebra, t: &IdemTensor) -> Result<Option<String>> {
        let n = self.order;
        let r = t.rank;
        for (words, f) in &t.terms {
            for (i, w) in words.iter().enumerate() {
                let Some(sp) = self.spaces.get(w).filter(|s| s.dim() > 0) else {
                    return Ok(Some(alg.describe_term(words, f)));
                };
                let stride = n.pow((r - 1 - i) as u32);
                for base in 0..n.pow(r as u32) {
                    if (base / stride) % n != 0 {
                        continue;
                    }
                    let fibre: Vec<CycloNum> = (0..n).map(|c| f[base + c * stride].clone()).collect();
                    if fibre.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    if !sp.contains(&fibre)? {
                        return Ok(Some(alg.describe_term(words, f)));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// An instance of `A(H,J)`: the Hopf parameters, the twist parts and the
/// grouplike generators of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraSpec {
    pub params: HopfParams,
    pub parts: Vec<TwistPart>,
    pub grouplikes: Vec<GroupElement>,
}

pub fn exact_sqrt(x: u32) -> Option<u32> {
    (1..=x).take_while(|r| r * r <= x).find(|r| r * r == x)
}

/// The standard-pair case `g = h₁h₂^σ`, `h = h₂` with `(h₁, h₂)` the canonical
/// generators of `ℤ_m × ℤ_n`, `m = 𝕞²`, `n = 𝕟²`.
pub fn standard_pair_spec(m: u32, n: u32, sigma: u32, l1: u32, l2: u32, abc: (u32, u32, u32)) -> Result<SubalgebraSpec> {
    let mm = exact_sqrt(m).ok_or_else(|| Error::Precondition(format!("m = {m} is not a square")))?;
    let nn = exact_sqrt(n).ok_or_else(|| Error::Precondition(format!("n = {n} is not a square")))?;
    pre(sigma < n, "σ must lie in 0..n")?;
    let params = HopfParams::new(m, n, l1, l2, &[1, sigma], &[0, 1]);
    params.derive()?;
    let group = params.group()?;
    let (h1, h2) = (group.generator(0), group.generator(1));
    let parts = vec![TwistPart { gen1: h1.clone(), gen2: h2.clone(), mm1: mm, mm2: nn, a: abc.0, b: abc.1, c: abc.2 }];
    parts[0].validate(&group)?;
    let grouplikes = vec![group.pow(&h1, mm as i64), group.pow(&h2, nn as i64)];
    Ok(SubalgebraSpec { params, parts, grouplikes })
}

/// The general case through the standard decomposition
/// `g = g₂h₁h₂^a`, `h = g₁g₂^b h₂`; all four factor orders must be squares.
pub fn general_spec(params: &HopfParams, abc1: (u32, u32, u32), abc2: (u32, u32, u32)) -> Result<(SubalgebraSpec, StandardDecomposition)> {
    params.derive()?;
    let group = params.group()?;
    let d = standard_decompose(&group, &params.g_element(), &params.h_element())?;
    let sq = |x: u32, name: &str| exact_sqrt(x).ok_or_else(|| Error::Precondition(format!("{name} = {x} is not a square")));
    let (mm1, mm2, nn1, nn2) = (sq(d.m1, "m1")?, sq(d.m2, "m2")?, sq(d.n1, "n1")?, sq(d.n2, "n2")?);
    let parts = vec![
        TwistPart { gen1: d.g1.clone(), gen2: d.g2.clone(), mm1, mm2, a: abc1.0, b: abc1.1, c: abc1.2 },
        TwistPart { gen1: d.h1.clone(), gen2: d.h2.clone(), mm1: nn1, mm2: nn2, a: abc2.0, b: abc2.1, c: abc2.2 },
    ];
    for p in &parts {
        p.validate(&group)?;
    }
    let grouplikes = vec![
        group.pow(&d.g1, mm1 as i64),
        group.pow(&d.g2, mm2 as i64),
        group.pow(&d.h1, nn1 as i64),
        group.pow(&d.h2, nn2 as i64),
    ];
    Ok((SubalgebraSpec { params: params.clone(), parts, grouplikes }, d))
}

/// Everything computed for one `A(H,J)`.
#[derive(Clone, Debug)]
pub struct TwistedInstance {
    pub spec: SubalgebraSpec,
    pub structure: QuasiHopfStructure,
    pub sub: Subalgebra,
    /// `(name, element)` generators of `A`
    pub generators: Vec<(String, IdemTensor)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectClosure {
    pub dim_h: usize,
    pub dim_a: usize,
    /// `d(J)` equals the associator assembled from the same parts
    pub twist_coboundary_matches: bool,
    pub memberships: Vec<Check>,
    pub closed: bool,
}

impl TwistedInstance {
    pub fn build(spec: &SubalgebraSpec) -> Result<TwistedInstance> {
        let hopf = Arc::new(HopfAlgebra::build(&spec.params)?);
        Self::build_on(spec, hopf)
    }

    pub fn build_on(spec: &SubalgebraSpec, hopf: Arc<HopfAlgebra>) -> Result<TwistedInstance> {
        let base = QuasiHopfStructure::from_hopf(hopf.clone())?;
        let j = twist_from_parts(&base.alg.chars, &spec.parts)?;
        let structure = base.twist(&j)?;
        let alg = &structure.alg;
        let (x, y) = hopf.distinguished_elements()?;
        let mut generators = vec![("X".to_string(), alg.from_element(&x)), ("Y".to_string(), alg.from_element(&y))];
        for k in &spec.grouplikes {
            generators.push((format!("{k}"), alg.from_element(&hopf.group_element(k))));
        }
        let gens: Vec<IdemTensor> = generators.iter().map(|(_, g)| g.clone()).collect();
        let sub = Subalgebra::generated(alg, &gens)?;
        Ok(TwistedInstance { spec: spec.clone(), structure, sub, generators })
    }

    /// `S_J(a) = β_J S(a) β_J⁻¹`.
    pub fn s_j(&self, a: &IdemTensor) -> Result<IdemTensor> {
        self.structure.apply_antipode(a, &self.structure.gauged_antipode_data()?)
    }

    /// Membership of `Δ_J`, `S_J` on every generator, of `α_Jβ_J` and of `Φ`.
    pub fn direct_closure(&self) -> Result<DirectClosure> {
        let st = &self.structure;
        let alg = &st.alg;
        let mut memberships = Vec::new();
        let mut record = |name: String, t: &IdemTensor| -> Result<()> {
            memberships.push(match self.sub.contains(alg, t)? {
                None => Check::pass(name, "inside"),
                Some(w) => Check::fail(name, "outside", w),
            });
            Ok(())
        };
        for (name, g) in &self.generators {
            record(format!("delta_J({name})"), &st.delta(g)?)?;
        }
        for (name, g) in &self.generators {
            record(format!("S_J({name})"), &self.s_j(g)?)?;
        }
        record("alpha_J beta_J".into(), &alg.diagonal(&st.alpha.mul(&st.beta)?)?)?;
        record("associator".into(), &alg.diagonal(&st.phi)?)?;
        let closed = memberships.iter().all(|c| c.passed);
        let assembled = associator_from_parts(&alg.chars, &self.spec.parts)?;
        Ok(DirectClosure {
            dim_h: alg.hopf.dimension(),
            dim_a: self.sub.dim(),
            twist_coboundary_matches: assembled == st.phi,
            memberships,
            closed,
        })
    }

    /// Quasi-Hopf axioms restricted to `A`, on its generators, with the
    /// gauged antipode data that `A` inherits.
    pub fn verify_restricted(&self) -> Result<Vec<Check>> {
        let data = self.structure.gauged_antipode_data()?;
        self.structure.verify(&self.generators, &data)
    }

    /// The associator as a 3-cochain on the dual of the grouplike part of `A`,
    /// indexed by coarse coordinates. Fails if it is not constant on coarse classes.
    pub fn coarse_cocycle(&self) -> Result<Cochain> {
        let vm = self.vertex_map()?;
        let (coarse_group, of) = (&vm.group, &vm.of);
        let n = of.len();
        let rep = vm.representatives();
        let phi = &self.structure.phi;
        for c1 in 0..n {
            for c2 in 0..n {
                for c3 in 0..n {
                    if phi.get(&[c1, c2, c3]) != phi.get(&[rep[of[c1]], rep[of[c2]], rep[of[c3]]]) {
                        return Err(Error::Inconsistent("associator is not constant on coarse classes".into()));
                    }
                }
            }
        }
        Ok(Cochain::from_fn(coarse_group, 3, phi.modulus, |k| phi.get(&[rep[k[0]], rep[k[1]], rep[k[2]]]) as i64))
    }

    /// Characters of `G` grouped by the characters of the grouplike part of `A`.
    pub fn vertex_map(&self) -> Result<crate::quiver::VertexMap> {
        crate::quiver::VertexMap::coarse(&self.structure.alg.chars, &self.spec.parts)
    }

    /// Genuine iff the associator's cocycle is not a coboundary.
    pub fn is_genuine(&self) -> Result<bool> {
        let omega = self.coarse_cocycle()?;
        let solver = CoboundarySolver::new(&omega.group, omega.modulus, DEFAULT_COBOUNDARY_BUDGET)?;
        Ok(solver.solve(&omega)?.is_none())
    }
}

/// `ω_{0,b,c}` on `ℤ_𝕞 × ℤ_𝕟` is a coboundary.
pub fn omega_0bc_is_coboundary(mm: u32, nn: u32, b: u32, c: u32) -> Result<bool> {
    let group = AbelianGroup::new(vec![mm, nn])?;
    let params = CocycleParams { a: vec![0, c], aij: vec![b], arst: vec![] };
    let omega = Cochain::of_params(&params, &group)?;
    let solver = CoboundarySolver::new(&group, omega.modulus, DEFAULT_COBOUNDARY_BUDGET)?;
    Ok(solver.solve(&omega)?.is_some())
}

/// The four congruences for the standard-pair case.
pub fn standard_pair_congruences(mm: u32, nn: u32, sigma: u32, l1: u32, l2: u32, abc: (u32, u32, u32)) -> Vec<Check> {
    let (a, b, c) = abc;
    vec![
        Check::from_bool("a = 0", a == 0, format!("a = {a}")),
        Check::from_bool("𝕟 | l2", l2 % nn == 0, format!("𝕟 = {nn}, l2 = {l2}")),
        Check::from_bool("l1 + b ≡ 0 (𝕞)", (l1 + b) % mm == 0, format!("l1 + b = {}", l1 + b)),
        Check::from_bool("c + σ l1 ≡ 0 (𝕟)", (c + sigma * l1) % nn == 0, format!("c + σ l1 = {}", c + sigma * l1)),
    ]
}

/// Which of `l₁`, `l₂` pairs with which factor in the general congruences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    /// `𝕞₂ | l₁`, `l₂ + b₁ ≡ 0 (𝕞₁)`, `c₁ + b l₂ ≡ 0 (𝕞₂)`, `𝕟₂ | l₂`, `l₁ + b₂ ≡ 0 (𝕟₁)`, `c₂ + a l₁ ≡ 0 (𝕟₂)`
    AsStated,
    /// the same with `l₁` and `l₂` exchanged
    Exchanged,
}

/// The eight congruences of the general case.
pub fn general_congruences(d: &StandardDecomposition, l1: u32, l2: u32, abc1: (u32, u32, u32), abc2: (u32, u32, u32), pairing: Pairing) -> Vec<Check> {
    let (l1, l2) = match pairing {
        Pairing::AsStated => (l1, l2),
        Pairing::Exchanged => (l2, l1),
    };
    let r = |x: u32| exact_sqrt(x).unwrap_or(0).max(1);
    let (mm1, mm2, nn1, nn2) = (r(d.m1), r(d.m2), r(d.n1), r(d.n2));
    let (a1, b1, c1) = abc1;
    let (a2, b2, c2) = abc2;
    vec![
        Check::from_bool("a1 = 0", a1 == 0, ""),
        Check::from_bool("𝕞2 | l1", l1 % mm2 == 0, ""),
        Check::from_bool("l2 + b1 ≡ 0 (𝕞1)", (l2 + b1) % mm1 == 0, ""),
        Check::from_bool("c1 + b l2 ≡ 0 (𝕞2)", (c1 + d.b * l2) % mm2 == 0, ""),
        Check::from_bool("a2 = 0", a2 == 0, ""),
        Check::from_bool("𝕟2 | l2", l2 % nn2 == 0, ""),
        Check::from_bool("l1 + b2 ≡ 0 (𝕟1)", (l1 + b2) % nn1 == 0, ""),
        Check::from_bool("c2 + a l1 ≡ 0 (𝕟2)", (c2 + d.a * l1) % nn2 == 0, ""),
    ]
}

/// One row of the standard-pair closure sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureRow {
    pub sigma: u32,
    pub l1: u32,
    pub l2: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub dim_a: usize,
    pub direct: bool,
    pub predicted: bool,
    pub genuine: Option<bool>,
    /// first membership that failed
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Direct closure verdict against the congruences; disagreement is an error.
pub fn check_closure(m: u32, n: u32, sigma: u32, l1: u32, l2: u32, abc: (u32, u32, u32)) -> Result<(DirectClosure, Vec<Check>, TwistedInstance)> {
    let spec = standard_pair_spec(m, n, sigma, l1, l2, abc)?;
    let inst = TwistedInstance::build(&spec)?;
    let direct = inst.direct_closure()?;
    let (mm, nn) = (spec.parts[0].mm1, spec.parts[0].mm2);
    let cong = standard_pair_congruences(mm, nn, sigma, l1, l2, abc);
    let predicted = cong.iter().all(|c| c.passed);
    if predicted != direct.closed {
        return Err(Error::Inconsistent(format!(
            "closure verdict {} disagrees with the congruences ({}) at σ={sigma}, l1={l1}, l2={l2}, abc={abc:?}",
            direct.closed, predicted
        )));
    }
    Ok((direct, cong, inst))
}

/// Every `(σ, l₁, l₂, a, b, c)` at the given `m = 𝕞²`, `n = 𝕟²`.
pub fn standard_pair_tuples(m: u32, n: u32) -> Result<Vec<(u32, u32, u32, (u32, u32, u32))>> {
    let mm = exact_sqrt(m).ok_or_else(|| Error::Precondition(format!("m = {m} is not a square")))?;
    let nn = exact_sqrt(n).ok_or_else(|| Error::Precondition(format!("n = {n} is not a square")))?;
    let d = crate::cyclo::gcd(mm as u64, nn as u64) as u32;
    let mut out = Vec::new();
    for sigma in 0..n {
        if (sigma as u64 * m as u64) % n as u64 != 0 {
            continue;
        }
        for l1 in crate::cyclo::divisors(m as u64) {
            for l2 in crate::cyclo::divisors(n as u64) {
                for a in 0..mm {
                    for b in 0..d {
                        for c in 0..nn {
                            out.push((sigma, l1 as u32, l2 as u32, (a, b, c)));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The exhaustive standard-pair sweep, one row per tuple, in tuple order.
/// Disagreements are reported in the rows, not raised.
pub fn closure_sweep(m: u32, n: u32) -> Result<Vec<ClosureRow>> {
    let tuples = standard_pair_tuples(m, n)?;
    let run = |&(sigma, l1, l2, abc): &(u32, u32, u32, (u32, u32, u32))| -> Result<ClosureRow> {
        let spec = standard_pair_spec(m, n, sigma, l1, l2, abc)?;
        let inst = TwistedInstance::build(&spec)?;
        let direct = inst.direct_closure()?;
        let cong = standard_pair_congruences(spec.parts[0].mm1, spec.parts[0].mm2, sigma, l1, l2, abc);
        let genuine = if direct.closed { Some(inst.is_genuine()?) } else { None };
        Ok(ClosureRow {
            sigma,
            l1,
            l2,
            a: abc.0,
            b: abc.1,
            c: abc.2,
            dim_a: direct.dim_a,
            direct: direct.closed,
            predicted: cong.iter().all(|c| c.passed),
            genuine,
            witness: direct.memberships.iter().find(|c| !c.passed).map(|c| c.name.clone()),
        })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        tuples.par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        tuples.iter().map(run).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// the Hopf algebra `H(m,n,l₁,l₂,g,h)` itself
    Hopf,
    /// the quasi-Hopf subalgebra `A(H,J)` of `H^J`
    Subalgebra,
    /// `A(H,J)` is not closed under the twisted structure
    NotClosed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub case: Case,
    pub genuine: bool,
    pub dim: usize,
    pub detail: Vec<Check>,
}

/// Which family of the classification an object instantiates. Without a twist
/// the object is `H` itself; with one it is `A(H,J)` if closed.
pub fn classify(m: u32, n: u32, sigma: u32, l1: u32, l2: u32, abc: Option<(u32, u32, u32)>) -> Result<Classification> {
    match abc {
        None => {
            let p = HopfParams::new(m, n, l1, l2, &[1, sigma], &[0, 1]);
            let h = HopfAlgebra::build(&p)?;
            Ok(Classification { case: Case::Hopf, genuine: false, dim: h.dimension(), detail: vec![] })
        }
        Some(abc) => {
            let (direct, cong, inst) = check_closure(m, n, sigma, l1, l2, abc)?;
            let mut detail = direct.memberships.clone();
            detail.extend(cong);
            if direct.closed {
                Ok(Classification { case: Case::Subalgebra, genuine: inst.is_genuine()?, dim: direct.dim_a, detail })
            } else {
                Ok(Classification { case: Case::NotClosed, genuine: false, dim: direct.dim_a, detail })
            }
        }
    }
}
