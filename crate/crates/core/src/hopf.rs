//! The presented Hopf algebras `H(m,n,l₁,l₂,g,h)`: normal-form arithmetic
//! through a certified rewriting system, the structure maps, and the axiom
//! checks.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abgroup::{AbelianGroup, GroupElement};
use crate::cyclo::{gcd, CycloField, CycloNum, FieldExt};
use crate::error::{pre, Error, Result};
use crate::groupalg::{idempotent, TensorElement};
use crate::report::Check;
use crate::rewriting::{ConfluenceCertificate, Letter, RewritingSystem, Strategy};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HopfParams {
    pub m: u32,
    pub n: u32,
    pub l1: u32,
    pub l2: u32,
    pub g: Vec<u32>,
    pub h: Vec<u32>,
}

/// Scalars are recorded as exponents of `ζ_N`, `N = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derived {
    pub og: u32,
    pub oh: u32,
    pub modulus: u32,
    pub q: u32,
    pub p: u32,
    pub q2: u32,
    pub p1: u32,
    pub l: u32,
}

impl HopfParams {
    pub fn new(m: u32, n: u32, l1: u32, l2: u32, g: &[u32], h: &[u32]) -> HopfParams {
        HopfParams { m, n, l1, l2, g: g.to_vec(), h: h.to_vec() }
    }

    pub fn group(&self) -> Result<AbelianGroup> {
        pre(self.m > 0 && self.n > 0, "m and n must be positive")?;
        pre(self.n % self.m == 0, format!("m | n fails for m={}, n={}", self.m, self.n))?;
        AbelianGroup::zm_zn(self.m, self.n)
    }

    pub fn g_element(&self) -> GroupElement {
        GroupElement::new(self.g.clone())
    }

    pub fn h_element(&self) -> GroupElement {
        GroupElement::new(self.h.clone())
    }

    /// Validates every constraint and derives `q, p, q₂, p₁, l`.
    pub fn derive(&self) -> Result<Derived> {
        let group = self.group()?;
        pre(self.m % 2 == 0, format!("m must be even, got {}", self.m))?;
        pre(self.l1 > 0 && self.m % self.l1 == 0, format!("l1 | m fails for l1={}, m={}", self.l1, self.m))?;
        pre(self.l2 > 0 && self.n % self.l2 == 0, format!("l2 | n fails for l2={}, n={}", self.l2, self.n))?;
        let (g, h) = (self.g_element(), self.h_element());
        pre(group.contains(&g), format!("g={g} is not an element of Z{}×Z{}", self.m, self.n))?;
        pre(group.contains(&h), format!("h={h} is not an element of Z{}×Z{}", self.m, self.n))?;
        pre(group.is_generating_pair(&g, &h), format!("g={g}, h={h} do not generate"))?;
        let og = group.element_order(&g);
        let oh = group.element_order(&h);
        pre(
            (og as u64) * (oh as u64) == group.order() as u64,
            format!("g={g}, h={h} are not independent (o(g)·o(h)={} ≠ {})", og * oh, group.order()),
        )?;
        pre(og % 2 == 0 && oh % 2 == 0, format!("o(g)={og} and o(h)={oh} must be even"))?;
        let nn = group.exponent();
        let q = nn / og;
        let p = nn / oh;
        let q2 = (q * self.l1) % nn;
        let p1 = (p * self.l2) % nn;
        let l = nn / gcd(nn as u64, ((q2 + p1) % nn) as u64) as u32;
        Ok(Derived { og, oh, modulus: nn, q, p, q2, p1, l })
    }
}

/// A normal monomial `w·k`: alternating word `w`, then group element `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(u32);

impl Mono {
    pub fn new(word: usize, g: usize) -> Mono {
        Mono(((word as u32) << 16) | g as u32)
    }

    pub fn word(self) -> usize {
        (self.0 >> 16) as usize
    }

    pub fn group(self) -> usize {
        (self.0 & 0xffff) as usize
    }

    fn key(self) -> u128 {
        self.0 as u128
    }
}

fn key2(a: Mono, b: Mono) -> u128 {
    ((a.0 as u128) << 32) | b.0 as u128
}

fn key3(a: Mono, b: Mono, c: Mono) -> u128 {
    ((a.0 as u128) << 64) | ((b.0 as u128) << 32) | c.0 as u128
}

/// Deliberately broken structure maps, for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fixture {
    None,
    /// `S(x) = +g^{o(g)/2}h^{-l₂}x`
    MisSignedAntipodeX,
    /// `Δ(x) = x⊗1 + 1⊗x`
    TrivialSkewX,
    /// `ε(x) = 1`
    CounitOneX,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifyMode {
    Generators,
    Full,
}

/// Budget for full-basis verification.
pub const FULL_BASIS_LIMIT: usize = 512;

type Terms2 = Vec<(u32, Mono, Mono)>;

#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pub params: HopfParams,
    pub derived: Derived,
    pub group: AbelianGroup,
    pub field: Arc<CycloField>,
    pub rewriting: RewritingSystem,
    pub certificate: ConfluenceCertificate,
    pub fixture: Fixture,
    /// only the empty word: the group algebra `kG` with its Hopf structure
    group_only: bool,
    nn: u32,
    /// `(u, v)` with `k = g^u h^v`
    coords: Vec<(u32, u32)>,
    add: Vec<u32>,
    neg: Vec<u32>,
    identity: usize,
    g_idx: usize,
    h_idx: usize,
    kx: usize,
    ky: usize,
    words: Vec<Vec<Letter>>,
    word_index: HashMap<Vec<Letter>, usize>,
    wprod: Vec<Option<(u32, usize)>>,
    wchar: Vec<u32>,
    delta_words: Vec<Terms2>,
    anti_words: Vec<Option<(u32, Mono)>>,
    eps_words: Vec<Option<u32>>,
}

/// Alternating word of the given length starting with `x` or `y`.
fn alternating(start_y: bool, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|i| if (i % 2 == 0) != start_y { Letter::X } else { Letter::Y })
        .collect()
}

fn word_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|c| match c {
            Letter::X => "x",
            Letter::Y => "y",
            Letter::G(_) => "G",
        })
        .collect()
}

impl HopfAlgebra {
    pub fn build(params: &HopfParams) -> Result<HopfAlgebra> {
        Self::build_with(params, Fixture::None, false)
    }

    /// The group algebra `k(ℤ_m×ℤ_n)` with `Δ(k)=k⊗k`, `S(k)=k⁻¹`.
    pub fn group_algebra(params: &HopfParams) -> Result<HopfAlgebra> {
        Self::build_with(params, Fixture::None, true)
    }

    pub fn build_with(params: &HopfParams, fixture: Fixture, group_only: bool) -> Result<HopfAlgebra> {
        let derived = params.derive()?;
        let group = params.group()?;
        let nn = derived.modulus;
        let order = group.order();
        let g = params.g_element();
        let h = params.h_element();
        let mut coords = vec![(0u32, 0u32); order];
        for u in 0..derived.og {
            for v in 0..derived.oh {
                let k = group.add(&group.pow(&g, u as i64), &group.pow(&h, v as i64));
                coords[group.index(&k)] = (u, v);
            }
        }
        let add: Vec<u32> = group.add_table().into_iter().map(|x| x as u32).collect();
        let neg: Vec<u32> = (0..order).map(|i| group.neg_idx(i) as u32).collect();
        let identity = group.index(&group.identity());
        // δ_x(k) = q^{-u}, δ_y(k) = p^{-v}
        let dx: Vec<u32> = coords.iter().map(|&(u, _)| (nn - (u * derived.q) % nn) % nn).collect();
        let dy: Vec<u32> = coords.iter().map(|&(_, v)| (nn - (v * derived.p) % nn) % nn).collect();
        let l = derived.l as usize;
        // (xy)^l + (−q₂)^l (yx)^l = 0, oriented as (yx)^l → −(−q₂)^{−l} (xy)^l
        let half = nn / 2;
        let minus_q2_l = (l as u64 * (half + derived.q2) as u64 % nn as u64) as u32;
        let c_exp = (half + nn - minus_q2_l) % nn;
        let rewriting = RewritingSystem::new(nn, l, c_exp, dx, dy, add.clone(), identity as u32)?;
        let g_idx = group.index(&g);
        let h_idx = group.index(&h);
        let gh = add[g_idx * order + h_idx];
        let certificate = rewriting.certify(&[g_idx as u32, h_idx as u32, gh])?;

        let mut words = vec![vec![]];
        if !group_only {
            for len in 1..2 * l {
                words.push(alternating(false, len));
                words.push(alternating(true, len));
            }
            words.push(alternating(false, 2 * l));
        }
        let word_index: HashMap<Vec<Letter>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let nw = words.len();

        // products and commutation characters, read off from the rewriting system
        let mut wprod = vec![None; nw * nw];
        for a in 0..nw {
            for b in 0..nw {
                let mut w = words[a].clone();
                w.extend_from_slice(&words[b]);
                wprod[a * nw + b] = match rewriting.reduce(&w, Strategy::Leftmost) {
                    None => None,
                    Some((e, nf)) => match word_index.get(&nf) {
                        Some(&i) => Some((e, i)),
                        // a normal word of the full algebra outside the kG basis
                        None if group_only => None,
                        None => return Err(Error::Inconsistent(format!("product normal form {nf:?} is not a basis word"))),
                    },
                };
            }
        }
        let mut wchar = vec![0u32; nw * order];
        for (wi, w) in words.iter().enumerate() {
            for k in 0..order {
                let mut word = vec![Letter::G(k as u32)];
                word.extend_from_slice(w);
                let (e, nf) = rewriting.reduce(&word, Strategy::Leftmost).ok_or_else(|| Error::Inconsistent("G(k)·w reduced to zero".into()))?;
                let mut expect = w.clone();
                if k != identity {
                    expect.push(Letter::G(k as u32));
                }
                if nf != expect {
                    return Err(Error::Inconsistent(format!("G(k)·w has normal form {nf:?}")));
                }
                wchar[wi * order + k] = e;
            }
        }

        let kx = group.index(&group.add(&group.pow(&g, (derived.og / 2) as i64), &group.pow(&h, params.l2 as i64)));
        let ky = group.index(&group.add(&group.pow(&g, params.l1 as i64), &group.pow(&h, (derived.oh / 2) as i64)));
        let mut alg = HopfAlgebra {
            params: params.clone(),
            derived,
            group,
            field: CycloField::new(nn),
            rewriting,
            certificate,
            fixture,
            group_only,
            nn,
            coords,
            add,
            neg,
            identity,
            g_idx,
            h_idx,
            kx,
            ky,
            words,
            word_index,
            wprod,
            wchar,
            delta_words: vec![],
            anti_words: vec![],
            eps_words: vec![],
        };
        let mut delta_words = Vec::with_capacity(nw);
        let mut anti_words = Vec::with_capacity(nw);
        let mut eps_words = Vec::with_capacity(nw);
        for w in &alg.words {
            let mut d: Terms2 = vec![(0, alg.one_mono(), alg.one_mono())];
            let mut s = Some((0u32, alg.one_mono()));
            let mut e = Some(0u32);
            for &c in w {
                d = alg.mul2(&d, &alg.letter_delta(c));
                s = match (alg.letter_antipode(c), s) {
                    (Some((e1, m1)), Some((e0, m0))) => alg.mono_mul(m1, m0).map(|(e2, m)| ((e0 + e1 + e2) % nn, m)),
                    _ => None,
                };
                e = match (alg.letter_counit(c), e) {
                    (Some(a), Some(b)) => Some((a + b) % nn),
                    _ => None,
                };
            }
            delta_words.push(d);
            anti_words.push(s);
            eps_words.push(e);
        }
        alg.delta_words = delta_words;
        alg.anti_words = anti_words;
        alg.eps_words = eps_words;
        Ok(alg)
    }

    pub fn modulus(&self) -> u32 {
        self.nn
    }

    pub fn num_words(&self) -> usize {
        self.words.len()
    }

    pub fn word_letters(&self, w: usize) -> &[Letter] {
        &self.words[w]
    }

    pub fn word_of(&self, letters: &[Letter]) -> Option<usize> {
        self.word_index.get(letters).copied()
    }

    pub fn word_name(&self, w: usize) -> String {
        word_string(&self.words[w])
    }

    /// `w₁w₂ = ζ_N^e w` or zero.
    pub fn word_product(&self, a: usize, b: usize) -> Option<(u32, usize)> {
        self.wprod[a * self.words.len() + b]
    }

    /// `k·w = ζ_N^e w·k`.
    pub fn word_char_exp(&self, w: usize, k: usize) -> u32 {
        self.wchar[w * self.group.order() + k]
    }

    pub fn dimension(&self) -> usize {
        self.words.len() * self.group.order()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn g_index(&self) -> usize {
        self.g_idx
    }

    pub fn h_index(&self) -> usize {
        self.h_idx
    }

    /// Group elements `K_x = g^{o(g)/2}h^{l₂}` and `K_y = g^{l₁}h^{o(h)/2}`.
    pub fn skew_elements(&self) -> (usize, usize) {
        (self.kx, self.ky)
    }

    pub fn coords(&self, k: usize) -> (u32, u32) {
        self.coords[k]
    }

    pub fn group_add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.group.order() + b] as usize
    }

    pub fn group_neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn one_mono(&self) -> Mono {
        Mono::new(0, self.identity)
    }

    pub fn basis(&self) -> Vec<Mono> {
        (0..self.words.len()).flat_map(|w| (0..self.group.order()).map(move |k| Mono::new(w, k))).collect()
    }

    pub fn mono_mul(&self, a: Mono, b: Mono) -> Option<(u32, Mono)> {
        let (e, w) = self.word_product(a.word(), b.word())?;
        let e = (e + self.word_char_exp(b.word(), a.group())) % self.nn;
        Some((e, Mono::new(w, self.group_add(a.group(), b.group()))))
    }

    fn letter_mono(&self, c: Letter) -> Mono {
        match c {
            Letter::X => Mono::new(self.word_index[&vec![Letter::X]], self.identity),
            Letter::Y => Mono::new(self.word_index[&vec![Letter::Y]], self.identity),
            Letter::G(k) => Mono::new(0, k as usize),
        }
    }

    fn letter_delta(&self, c: Letter) -> Terms2 {
        let one = self.one_mono();
        match c {
            Letter::G(k) => vec![(0, Mono::new(0, k as usize), Mono::new(0, k as usize))],
            Letter::X => {
                let kx = if self.fixture == Fixture::TrivialSkewX { self.identity } else { self.kx };
                vec![(0, self.letter_mono(c), one), (0, Mono::new(0, kx), self.letter_mono(c))]
            }
            Letter::Y => vec![(0, self.letter_mono(c), one), (0, Mono::new(0, self.ky), self.letter_mono(c))],
        }
    }

    fn letter_counit(&self, c: Letter) -> Option<u32> {
        match c {
            Letter::G(_) => Some(0),
            Letter::X if self.fixture == Fixture::CounitOneX => Some(0),
            _ => None,
        }
    }

    /// `S(x) = −g^{o(g)/2}h^{−l₂}x`, `S(y) = −g^{−l₁}h^{o(h)/2}y`, `S(k) = k⁻¹`.
    fn letter_antipode(&self, c: Letter) -> Option<(u32, Mono)> {
        let g = &self.group;
        let (pg, ph) = (self.params.g_element(), self.params.h_element());
        let half = self.nn / 2;
        match c {
            Letter::G(k) => Some((0, Mono::new(0, self.group_neg(k as usize)))),
            Letter::X => {
                let k = g.index(&g.add(&g.pow(&pg, (self.derived.og / 2) as i64), &g.pow(&ph, -(self.params.l2 as i64))));
                let sign = if self.fixture == Fixture::MisSignedAntipodeX { 0 } else { half };
                self.mono_mul(Mono::new(0, k), self.letter_mono(c)).map(|(e, m)| ((e + sign) % self.nn, m))
            }
            Letter::Y => {
                let k = g.index(&g.add(&g.pow(&pg, -(self.params.l1 as i64)), &g.pow(&ph, (self.derived.oh / 2) as i64)));
                self.mono_mul(Mono::new(0, k), self.letter_mono(c)).map(|(e, m)| ((e + half) % self.nn, m))
            }
        }
    }

    fn mul2(&self, a: &Terms2, b: &Terms2) -> Terms2 {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for &(e1, a1, a2) in a {
            for &(e2, b1, b2) in b {
                if let (Some((f1, m1)), Some((f2, m2))) = (self.mono_mul(a1, b1), self.mono_mul(a2, b2)) {
                    out.push(((e1 + e2 + f1 + f2) % self.nn, m1, m2));
                }
            }
        }
        out
    }

    /// `Δ(w·k) = Δ(w)(k⊗k)` as root terms.
    pub fn delta_mono(&self, m: Mono) -> Terms2 {
        let k = m.group();
        self.delta_words[m.word()]
            .iter()
            .map(|&(e, a, b)| (e, Mono::new(a.word(), self.group_add(a.group(), k)), Mono::new(b.word(), self.group_add(b.group(), k))))
            .collect()
    }

    /// `S(w·k) = k⁻¹ S(w)`.
    pub fn antipode_mono(&self, m: Mono) -> Option<(u32, Mono)> {
        let (e, s) = self.anti_words[m.word()]?;
        let (f, r) = self.mono_mul(Mono::new(0, self.group_neg(m.group())), s)?;
        Some(((e + f) % self.nn, r))
    }

    pub fn counit_mono(&self, m: Mono) -> Option<u32> {
        self.eps_words[m.word()]
    }

    pub fn mono_name(&self, m: Mono) -> String {
        let w = self.word_name(m.word());
        if m.group() == self.identity {
            w
        } else {
            let k = self.group.from_index(m.group());
            if m.word() == 0 {
                format!("{k}")
            } else {
                format!("{w}·{k}")
            }
        }
    }

    // ----- elements with field coefficients -----

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn one(&self) -> AlgebraElement {
        self.mono(self.one_mono())
    }

    pub fn mono(&self, m: Mono) -> AlgebraElement {
        let mut t = BTreeMap::new();
        t.insert(m, self.field.one());
        AlgebraElement { terms: t }
    }

    pub fn group_element(&self, k: &GroupElement) -> AlgebraElement {
        self.mono(Mono::new(0, self.group.index(k)))
    }

    pub fn x(&self) -> Result<AlgebraElement> {
        pre(!self.group_only, "the group algebra has no x")?;
        Ok(self.mono(self.letter_mono(Letter::X)))
    }

    pub fn y(&self) -> Result<AlgebraElement> {
        pre(!self.group_only, "the group algebra has no y")?;
        Ok(self.mono(self.letter_mono(Letter::Y)))
    }

    pub fn scalar(&self, c: &CycloNum) -> AlgebraElement {
        self.one().scale(c)
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((e, m)) = self.mono_mul(*ma, *mb) {
                    out.add_term(m, &(ca * cb).mul_zeta(e as i64));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &AlgebraElement, k: u32) -> AlgebraElement {
        let mut r = self.one();
        for _ in 0..k {
            r = self.mul(&r, a);
        }
        r
    }

    pub fn delta(&self, a: &AlgebraElement) -> Tensor2 {
        let mut out = Tensor2::default();
        for (m, c) in &a.terms {
            for (e, m1, m2) in self.delta_mono(*m) {
                out.add_term((m1, m2), &c.mul_zeta(e as i64));
            }
        }
        out
    }

    pub fn antipode(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for (m, c) in &a.terms {
            if let Some((e, s)) = self.antipode_mono(*m) {
                out.add_term(s, &c.mul_zeta(e as i64));
            }
        }
        out
    }

    pub fn counit(&self, a: &AlgebraElement) -> CycloNum {
        let mut acc = self.field.zero();
        for (m, c) in &a.terms {
            if let Some(e) = self.counit_mono(*m) {
                acc = &acc + &c.mul_zeta(e as i64);
            }
        }
        acc
    }

    /// Normal form of a linear combination of arbitrary letter words.
    pub fn normal_form(&self, expr: &[(CycloNum, Vec<Letter>)], strategy: Strategy) -> Result<AlgebraElement> {
        let mut out = self.zero();
        for (c, w) in expr {
            if let Some((e, nf)) = self.rewriting.reduce(w, strategy) {
                let (word, k) = match nf.last() {
                    Some(Letter::G(k)) => (&nf[..nf.len() - 1], *k as usize),
                    _ => (&nf[..], self.identity),
                };
                let wi = self.word_of(word).ok_or_else(|| Error::Inconsistent(format!("normal word {word:?} outside the basis")))?;
                out.add_term(Mono::new(wi, k), &c.mul_zeta(e as i64));
            }
        }
        Ok(out)
    }

    pub fn format_element(&self, a: &AlgebraElement) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in a.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "({c})·{}", self.mono_name(*m));
        }
        s
    }

    pub fn format_tensor(&self, t: &Tensor2) -> String {
        if t.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = t.terms.iter().map(|((a, b), c)| format!("({c})·{}⊗{}", self.mono_name(*a), self.mono_name(*b))).collect();
        parts.join(" + ")
    }

    /// `X = g^{−o(g)/2}h^{−l₂}x`, `Y = g^{−l₁}h^{−o(h)/2}y`.
    pub fn distinguished_elements(&self) -> Result<(AlgebraElement, AlgebraElement)> {
        let g = &self.group;
        let (pg, ph) = (self.params.g_element(), self.params.h_element());
        let kx_inv = g.add(&g.pow(&pg, -((self.derived.og / 2) as i64)), &g.pow(&ph, -(self.params.l2 as i64)));
        let ky_inv = g.add(&g.pow(&pg, -(self.params.l1 as i64)), &g.pow(&ph, -((self.derived.oh / 2) as i64)));
        let xx = self.mul(&self.group_element(&kx_inv), &self.x()?);
        let yy = self.mul(&self.group_element(&ky_inv), &self.y()?);
        Ok((xx, yy))
    }

    // ----- axiom verification -----

    fn generators(&self) -> Vec<(String, Mono)> {
        let mut v = vec![("g".to_string(), Mono::new(0, self.g_idx)), ("h".to_string(), Mono::new(0, self.h_idx))];
        if !self.group_only {
            v.push(("x".into(), self.letter_mono(Letter::X)));
            v.push(("y".into(), self.letter_mono(Letter::Y)));
        }
        v
    }

    fn axiom_failures(&self, b: Mono) -> Vec<&'static str> {
        let mut failed = Vec::new();
        let nn = self.nn as usize;
        let d = self.delta_mono(b);
        // coassociativity
        let mut acc = Acc::new(nn);
        for &(e, b1, b2) in &d {
            for (f, c1, c2) in self.delta_mono(b1) {
                acc.add(key3(c1, c2, b2), e + f, 1);
            }
            for (f, c1, c2) in self.delta_mono(b2) {
                acc.add(key3(b1, c1, c2), e + f, -1);
            }
        }
        if !acc.is_zero(&self.field) {
            failed.push("coassociativity");
        }
        // counit laws
        let mut left = Acc::new(nn);
        let mut right = Acc::new(nn);
        left.add(b.key(), 0, -1);
        right.add(b.key(), 0, -1);
        for &(e, b1, b2) in &d {
            if let Some(f) = self.counit_mono(b1) {
                left.add(b2.key(), e + f, 1);
            }
            if let Some(f) = self.counit_mono(b2) {
                right.add(b1.key(), e + f, 1);
            }
        }
        if !left.is_zero(&self.field) || !right.is_zero(&self.field) {
            failed.push("counit");
        }
        // antipode laws Σ S(b₁)b₂ = ε(b)1 = Σ b₁S(b₂)
        let mut left = Acc::new(nn);
        let mut right = Acc::new(nn);
        if let Some(f) = self.counit_mono(b) {
            left.add(self.one_mono().key(), f, -1);
            right.add(self.one_mono().key(), f, -1);
        }
        for &(e, b1, b2) in &d {
            if let Some((f, s)) = self.antipode_mono(b1) {
                if let Some((g, m)) = self.mono_mul(s, b2) {
                    left.add(m.key(), e + f + g, 1);
                }
            }
            if let Some((f, s)) = self.antipode_mono(b2) {
                if let Some((g, m)) = self.mono_mul(b1, s) {
                    right.add(m.key(), e + f + g, 1);
                }
            }
        }
        if !left.is_zero(&self.field) {
            failed.push("antipode_left");
        }
        if !right.is_zero(&self.field) {
            failed.push("antipode_right");
        }
        failed
    }

    /// The defining relations as root-coefficient letter words.
    pub fn relations(&self) -> Vec<(String, Vec<(u32, Vec<Letter>)>)> {
        let nn = self.nn;
        let half = nn / 2;
        let g = Letter::G(self.g_idx as u32);
        let h = Letter::G(self.h_idx as u32);
        let mut rels = vec![];
        if !self.group_only {
            let l = self.derived.l as usize;
            let minus_q2_l = (l as u64 * (half + self.derived.q2) as u64 % nn as u64) as u32;
            rels.push(("x^2".into(), vec![(0, vec![Letter::X, Letter::X])]));
            rels.push(("y^2".into(), vec![(0, vec![Letter::Y, Letter::Y])]));
            rels.push(("(xy)^l+(-q2)^l(yx)^l".into(), vec![(0, alternating(false, 2 * l)), (minus_q2_l, alternating(true, 2 * l))]));
            // g x g⁻¹ = q⁻¹ x, i.e. g x − q⁻¹ x g = 0
            rels.push(("gx-q^-1xg".into(), vec![(0, vec![g, Letter::X]), ((half + nn - self.derived.q) % nn, vec![Letter::X, g])]));
            rels.push(("gy-yg".into(), vec![(0, vec![g, Letter::Y]), (half, vec![Letter::Y, g])]));
            rels.push(("hx-xh".into(), vec![(0, vec![h, Letter::X]), (half, vec![Letter::X, h])]));
            rels.push(("hy-p^-1yh".into(), vec![(0, vec![h, Letter::Y]), ((half + nn - self.derived.p) % nn, vec![Letter::Y, h])]));
        }
        rels.push(("g^o(g)".into(), vec![(0, vec![g; self.derived.og as usize]), (half, vec![])]));
        rels.push(("h^o(h)".into(), vec![(0, vec![h; self.derived.oh as usize]), (half, vec![])]));
        rels
    }

    /// Checks that `Δ`, `S`, `ε` and the product itself annihilate every relation.
    fn relation_checks(&self) -> Vec<Check> {
        let nn = self.nn as usize;
        let mut out = Vec::new();
        for (name, rel) in self.relations() {
            let mut prod = Acc::new(nn);
            let mut delta = Acc::new(nn);
            let mut anti = Acc::new(nn);
            let mut eps = vec![0i64; nn];
            for (c, w) in &rel {
                let mut p: Option<(u32, Mono)> = Some((0, self.one_mono()));
                let mut d: Terms2 = vec![(0, self.one_mono(), self.one_mono())];
                let mut s: Option<(u32, Mono)> = Some((0, self.one_mono()));
                let mut e: Option<u32> = Some(0);
                for &letter in w {
                    p = p.and_then(|(e0, m0)| self.mono_mul(m0, self.letter_mono(letter)).map(|(e1, m)| (e0 + e1, m)));
                    d = self.mul2(&d, &self.letter_delta(letter));
                    s = match (s, self.letter_antipode(letter)) {
                        (Some((e0, m0)), Some((e1, m1))) => self.mono_mul(m1, m0).map(|(e2, m)| (e0 + e1 + e2, m)),
                        _ => None,
                    };
                    e = e.zip(self.letter_counit(letter)).map(|(a, b)| a + b);
                }
                if let Some((e0, m)) = p {
                    prod.add(m.key(), c + e0, 1);
                }
                for (e0, a, b) in d {
                    delta.add(key2(a, b), c + e0, 1);
                }
                if let Some((e0, m)) = s {
                    anti.add(m.key(), c + e0, 1);
                }
                if let Some(e0) = e {
                    eps[((c + e0) as usize) % nn] += 1;
                }
            }
            let ok_p = prod.is_zero(&self.field);
            let ok_d = delta.is_zero(&self.field);
            let ok_s = anti.is_zero(&self.field);
            let ok_e = self.field.counts_are_zero(&eps);
            let ok = ok_p && ok_d && ok_s && ok_e;
            let detail = format!("holds={ok_p} Δ={ok_d} S={ok_s} ε={ok_e}");
            out.push(if ok { Check::pass(format!("relation[{name}]"), detail) } else { Check::fail(format!("relation[{name}]"), detail, name) });
        }
        out
    }

    /// Coassociativity, counit and antipode laws on generators or on every
    /// basis monomial, plus compatibility of the structure maps with the
    /// defining relations.
    pub fn verify_hopf(&self, mode: VerifyMode) -> Result<Vec<Check>> {
        let elems: Vec<(String, Mono)> = match mode {
            VerifyMode::Generators => self.generators(),
            VerifyMode::Full => {
                if self.dimension() > FULL_BASIS_LIMIT {
                    return Err(Error::Budget(format!("full-basis verification limited to dim ≤ {FULL_BASIS_LIMIT}, got {}", self.dimension())));
                }
                self.basis().into_iter().map(|m| (self.mono_name(m), m)).collect()
            }
        };
        #[cfg(feature = "parallel")]
        let results: Vec<Vec<&'static str>> = elems.par_iter().map(|(_, m)| self.axiom_failures(*m)).collect();
        #[cfg(not(feature = "parallel"))]
        let results: Vec<Vec<&'static str>> = elems.iter().map(|(_, m)| self.axiom_failures(*m)).collect();
        let mut checks = Vec::new();
        for axiom in ["coassociativity", "counit", "antipode_left", "antipode_right"] {
            let bad: Vec<&str> = elems.iter().zip(&results).filter(|(_, r)| r.contains(&axiom)).map(|((n, _), _)| n.as_str()).collect();
            let detail = format!("{} of {} elements", elems.len() - bad.len(), elems.len());
            checks.push(match bad.first() {
                None => Check::pass(axiom, detail),
                Some(first) => Check::fail(axiom, format!("{detail}; fails on {first}"), *first),
            });
        }
        checks.extend(self.relation_checks());
        Ok(checks)
    }

    /// `X² = 0`, `Y² = 0`, `(XY)^l + (−q₂⁻¹)^l (YX)^l = 0`, together with the
    /// defining relations of `H` computed through the rewriting system.
    pub fn distinguished_relations(&self) -> Result<Vec<Check>> {
        let (xx, yy) = self.distinguished_elements()?;
        let l = self.derived.l;
        let nn = self.nn;
        let mut out = vec![
            Check::from_bool("X^2=0", self.mul(&xx, &xx).is_zero(), ""),
            Check::from_bool("Y^2=0", self.mul(&yy, &yy).is_zero(), ""),
        ];
        let xy = self.pow(&self.mul(&xx, &yy), l);
        let yx = self.pow(&self.mul(&yy, &xx), l);
        // (−q₂⁻¹)^l
        let coef = (l as u64 * ((nn / 2 + nn - self.derived.q2) % nn) as u64 % nn as u64) as i64;
        let rel = xy.add(&yx.scale(&self.field.zeta(coef)));
        out.push(Check::from_bool("(XY)^l+(-q2^-1)^l(YX)^l=0", rel.is_zero(), self.format_element(&rel)));
        let one = self.field.one();
        for (name, rel) in self.relations().into_iter().take(3) {
            let expr: Vec<(CycloNum, Vec<Letter>)> = rel.iter().map(|(e, w)| (one.mul_zeta(*e as i64), w.clone())).collect();
            let mut ok = true;
            for strategy in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(7)] {
                ok &= self.normal_form(&expr, strategy)?.is_zero();
            }
            out.push(Check::from_bool(format!("{name}=0"), ok, "by rewriting"));
        }
        Ok(out)
    }

    /// The commutation identities between `X, Y` and the idempotents of
    /// `h₁ = (1,0)`, `h₂ = (0,1)` when `g = h₁h₂^σ`, `h = h₂`.
    pub fn standard_pair_identities(&self) -> Result<Vec<Check>> {
        let (m, n) = (self.params.m, self.params.n);
        pre(self.params.h == vec![0, 1] && self.params.g.first() == Some(&1), "requires g = h1·h2^σ and h = h2")?;
        let sigma = self.params.g[1];
        let g = &self.group;
        let f = &self.field;
        let h1 = GroupElement::new(vec![1, 0]);
        let h2 = GroupElement::new(vec![0, 1]);
        let (xx, yy) = self.distinguished_elements()?;
        let mut out = vec![Check::from_bool("o(g)=m and n|σm", self.derived.og == m && (sigma * m) % n == 0, format!("σ={sigma}"))];
        let sm = (sigma * m / n) as i64;
        let e1 = self.group_element(&h1);
        let e2 = self.group_element(&h2);
        let zm = |k: i64| f.root_of_unity(m, k);
        let zn = |k: i64| f.root_of_unity(n, k);
        let comm = [
            ("h1X=ζm^-1Xh1", &e1, &xx, zm(-1)?),
            ("h1Y=ζm^(σm/n)Yh1", &e1, &yy, zm(sm)?),
            ("h2X=Xh2", &e2, &xx, f.one()),
            ("h2Y=ζn^-1Yh2", &e2, &yy, zn(-1)?),
        ];
        for (name, k, v, c) in comm {
            let lhs = self.mul(k, v);
            let rhs = self.mul(v, k).scale(&c);
            out.push(Check::from_bool(name, lhs == rhs, ""));
        }
        let idem = |l: u32, i: i64, gen: &GroupElement| -> Result<AlgebraElement> {
            let t = idempotent(g, f, l, i, gen)?;
            Ok(self.from_group_algebra(&t))
        };
        let mut ok = [true; 4];
        for i in 0..m as i64 {
            ok[0] &= self.mul(&idem(m, i, &h1)?, &xx) == self.mul(&xx, &idem(m, i + 1, &h1)?);
            ok[1] &= self.mul(&idem(m, i, &h1)?, &yy) == self.mul(&yy, &idem(m, i - sm, &h1)?);
        }
        for i in 0..n as i64 {
            ok[2] &= self.mul(&idem(n, i, &h2)?, &xx) == self.mul(&xx, &idem(n, i, &h2)?);
            ok[3] &= self.mul(&idem(n, i, &h2)?, &yy) == self.mul(&yy, &idem(n, i + 1, &h2)?);
        }
        for (name, ok) in ["1_i^m X = X 1_{i+1}^m", "1_i^m Y = Y 1_{i-σm/n}^m", "1_i^n X = X 1_i^n", "1_i^n Y = Y 1_{i+1}^n"].iter().zip(ok) {
            out.push(Check::from_bool(*name, ok, ""));
        }
        Ok(out)
    }

    /// Embeds a group-algebra element (rank 1, group basis).
    pub fn from_group_algebra(&self, t: &TensorElement) -> AlgebraElement {
        let mut out = self.zero();
        for (k, c) in &t.terms {
            out.add_term(Mono::new(0, k[0]), c);
        }
        out
    }

    /// Structure constants and normal basis as JSON.
    pub fn dump(&self) -> serde_json::Value {
        let words: Vec<String> = (0..self.num_words()).map(|w| self.word_name(w)).collect();
        let mut products = Vec::new();
        for a in 0..self.num_words() {
            for b in 0..self.num_words() {
                if let Some((e, w)) = self.word_product(a, b) {
                    products.push(serde_json::json!({"left": words[a], "right": words[b], "zeta_exp": e, "word": words[w]}));
                }
            }
        }
        let gens: Vec<serde_json::Value> = self
            .generators()
            .into_iter()
            .map(|(name, m)| {
                let e = self.mono(m);
                serde_json::json!({
                    "generator": name,
                    "delta": self.format_tensor(&self.delta(&e)),
                    "antipode": self.format_element(&self.antipode(&e)),
                    "counit": self.counit(&e).to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "params": self.params,
            "derived": self.derived,
            "dimension": self.dimension(),
            "normal_words": words,
            "group_order": self.group.order(),
            "word_products": products,
            "generators": gens,
            "confluence": self.certificate,
        })
    }
}

/// Accumulates root-of-unity multiplicities per key.
struct Acc {
    n: usize,
    map: HashMap<u128, Vec<i64>>,
}

impl Acc {
    fn new(n: usize) -> Acc {
        Acc { n, map: HashMap::new() }
    }

    fn add(&mut self, key: u128, exp: u32, sign: i64) {
        let n = self.n;
        self.map.entry(key).or_insert_with(|| vec![0; n])[exp as usize % n] += sign;
    }

    fn is_zero(&self, field: &Arc<CycloField>) -> bool {
        self.map.values().all(|c| field.counts_are_zero(c))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraElement {
    pub terms: BTreeMap<Mono, CycloNum>,
}

impl AlgebraElement {
    pub fn add_term(&mut self, m: Mono, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c);
        }
        r
    }

    pub fn sub(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, &-c);
        }
        r
    }

    pub fn scale(&self, c: &CycloNum) -> AlgebraElement {
        let mut r = AlgebraElement::default();
        for (m, x) in &self.terms {
            r.add_term(*m, &(x * c));
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tensor2 {
    pub terms: BTreeMap<(Mono, Mono), CycloNum>,
}

impl Tensor2 {
    pub fn add_term(&mut self, k: (Mono, Mono), c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }
}

/// Every valid parameter set with `m, n` from the given list: all generating
/// pairs and all divisor choices of `l₁, l₂`.
pub fn enumerate_params(sizes: &[u32]) -> Vec<HopfParams> {
    let mut out = Vec::new();
    for &m in sizes {
        for &n in sizes {
            if m % 2 != 0 || n % m != 0 {
                continue;
            }
            let group = AbelianGroup::zm_zn(m, n).expect("m | n");
            let pairs = crate::abgroup::generating_pairs(&group);
            for l1 in crate::cyclo::divisors(m as u64) {
                for l2 in crate::cyclo::divisors(n as u64) {
                    for (g, h) in &pairs {
                        let p = HopfParams::new(m, n, l1 as u32, l2 as u32, &g.exp, &h.exp);
                        if p.derive().is_ok() {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}
