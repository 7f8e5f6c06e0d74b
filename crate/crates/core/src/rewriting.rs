//! Monomial string rewriting for the presented algebras: letters `x`, `y`
//! and group letters `G(k)`, with every rule sending a monomial to a root of
//! unity times a monomial, or to zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    X,
    Y,
    /// group element by index
    G(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// A monomial with its scalar `ζ_N^exp`.
pub type RootTerm = (u32, Vec<Letter>);

#[derive(Clone, Debug)]
pub struct RewritingSystem {
    /// `N`: scalars are powers of `ζ_N`
    pub modulus: u32,
    /// `(xy)^l` is the longest normal word
    pub l: usize,
    /// `(yx)^l → ζ_N^{c_exp} (xy)^l`
    pub c_exp: u32,
    /// `G(k) x → ζ_N^{dx[k]} x G(k)`
    pub dx: Vec<u32>,
    /// `G(k) y → ζ_N^{dy[k]} y G(k)`
    pub dy: Vec<u32>,
    identity: u32,
    add: Vec<u32>,
    order: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConfluenceCertificate {
    pub rules: usize,
    pub overlaps_checked: usize,
    pub max_overlap_len: usize,
    /// every group letter was instantiated
    pub exhaustive: bool,
    pub group_letters: usize,
}

/// Group letters are instantiated exhaustively up to this group order.
pub const EXHAUSTIVE_GROUP_LETTERS: usize = 64;

struct Match {
    pos: usize,
    len: usize,
    rhs: Option<RootTerm>,
}

impl RewritingSystem {
    /// `add` is the group's addition table on indices, `identity` the index of 0.
    pub fn new(modulus: u32, l: usize, c_exp: u32, dx: Vec<u32>, dy: Vec<u32>, add: Vec<u32>, identity: u32) -> Result<Self> {
        let order = dx.len();
        if dy.len() != order || add.len() != order * order || l == 0 || modulus == 0 {
            return Err(Error::Precondition("inconsistent rewriting data".into()));
        }
        Ok(RewritingSystem { modulus, l, c_exp: c_exp % modulus, dx, dy, identity, add, order })
    }

    fn yx_l(&self) -> Vec<Letter> {
        (0..2 * self.l).map(|i| if i % 2 == 0 { Letter::Y } else { Letter::X }).collect()
    }

    fn xy_l(&self) -> Vec<Letter> {
        (0..2 * self.l).map(|i| if i % 2 == 0 { Letter::X } else { Letter::Y }).collect()
    }

    fn matches_at(&self, w: &[Letter], i: usize, out: &mut Vec<Match>) {
        match w[i] {
            Letter::X => {
                if w.get(i + 1) == Some(&Letter::X) {
                    out.push(Match { pos: i, len: 2, rhs: None });
                }
            }
            Letter::Y => {
                if w.get(i + 1) == Some(&Letter::Y) {
                    out.push(Match { pos: i, len: 2, rhs: None });
                }
                let n = 2 * self.l;
                if i + n <= w.len() && w[i..i + n].iter().enumerate().all(|(j, &c)| c == if j % 2 == 0 { Letter::Y } else { Letter::X }) {
                    out.push(Match { pos: i, len: n, rhs: Some((self.c_exp, self.xy_l())) });
                }
            }
            Letter::G(k) => {
                if k == self.identity {
                    out.push(Match { pos: i, len: 1, rhs: Some((0, vec![])) });
                }
                match w.get(i + 1) {
                    Some(Letter::X) => out.push(Match { pos: i, len: 2, rhs: Some((self.dx[k as usize], vec![Letter::X, Letter::G(k)])) }),
                    Some(Letter::Y) => out.push(Match { pos: i, len: 2, rhs: Some((self.dy[k as usize], vec![Letter::Y, Letter::G(k)])) }),
                    Some(Letter::G(b)) => {
                        let s = self.add[k as usize * self.order + *b as usize];
                        out.push(Match { pos: i, len: 2, rhs: Some((0, vec![Letter::G(s)])) })
                    }
                    None => {}
                }
            }
        }
    }

    fn all_matches(&self, w: &[Letter]) -> Vec<Match> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            self.matches_at(w, i, &mut out);
        }
        out
    }

    pub fn is_normal(&self, w: &[Letter]) -> bool {
        self.all_matches(w).is_empty()
    }

    /// One rewriting step at the given match.
    fn apply(&self, exp: u32, w: &[Letter], m: &Match) -> Option<RootTerm> {
        let (e, rhs) = m.rhs.as_ref()?;
        let mut out = Vec::with_capacity(w.len());
        out.extend_from_slice(&w[..m.pos]);
        out.extend_from_slice(rhs);
        out.extend_from_slice(&w[m.pos + m.len..]);
        Some(((exp + e) % self.modulus, out))
    }

    /// Reduces a monomial to its normal form; `None` means zero.
    pub fn reduce(&self, w: &[Letter], strategy: Strategy) -> Option<RootTerm> {
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut cur: RootTerm = (0, w.to_vec());
        loop {
            let ms = self.all_matches(&cur.1);
            if ms.is_empty() {
                return Some(cur);
            }
            let m = match strategy {
                Strategy::Leftmost => &ms[0],
                Strategy::Rightmost => ms.iter().max_by_key(|m| m.pos).unwrap(),
                Strategy::Random(_) => &ms[rng.as_mut().unwrap().gen_range(0..ms.len())],
            };
            cur = self.apply(cur.0, &cur.1, m)?;
        }
    }

    fn lhs_list(&self, letters: &[u32]) -> Vec<Vec<Letter>> {
        let mut out = vec![vec![Letter::X, Letter::X], vec![Letter::Y, Letter::Y], self.yx_l(), vec![Letter::G(self.identity)]];
        for &k in letters {
            out.push(vec![Letter::G(k), Letter::X]);
            out.push(vec![Letter::G(k), Letter::Y]);
            for &b in letters {
                out.push(vec![Letter::G(k), Letter::G(b)]);
            }
        }
        out
    }

    /// Resolves every overlap and inclusion ambiguity between left-hand sides.
    /// `sample` lists the group letters used when the group is too large for
    /// exhaustive instantiation.
    pub fn certify(&self, sample: &[u32]) -> Result<ConfluenceCertificate> {
        let exhaustive = self.order <= EXHAUSTIVE_GROUP_LETTERS;
        let letters: Vec<u32> = if exhaustive {
            (0..self.order as u32).collect()
        } else {
            let mut s: Vec<u32> = sample.iter().copied().chain([self.identity]).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let lhs = self.lhs_list(&letters);
        let mut checked = 0;
        let mut max_len = 0;
        let mut resolve = |word: Vec<Letter>, a: Option<RootTerm>, b: Option<RootTerm>| -> Result<()> {
            let na = a.and_then(|t| self.reduce_from(t));
            let nb = b.and_then(|t| self.reduce_from(t));
            checked += 1;
            max_len = max_len.max(word.len());
            if na != nb {
                return Err(Error::NotConfluent(format!("ambiguity {word:?} resolves to {na:?} and {nb:?}")));
            }
            Ok(())
        };
        for a in &lhs {
            for b in &lhs {
                // proper overlaps: a suffix of a equals a prefix of b
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] != b[..k] {
                        continue;
                    }
                    let mut word = a.clone();
                    word.extend_from_slice(&b[k..]);
                    let ra = self.step_with(&word, 0, a.len());
                    let rb = self.step_with(&word, a.len() - k, b.len());
                    resolve(word, ra, rb)?;
                }
                // inclusions: b sits strictly inside a
                if b.len() < a.len() {
                    for p in 0..=a.len() - b.len() {
                        if a[p..p + b.len()] == b[..] {
                            let ra = self.step_with(a, 0, a.len());
                            let rb = self.step_with(a, p, b.len());
                            resolve(a.clone(), ra, rb)?;
                        }
                    }
                }
            }
        }
        Ok(ConfluenceCertificate { rules: lhs.len(), overlaps_checked: checked, max_overlap_len: max_len, exhaustive, group_letters: letters.len() })
    }

    /// Applies the rule whose left-hand side is exactly `w[pos..pos+len]`.
    fn step_with(&self, w: &[Letter], pos: usize, len: usize) -> Option<RootTerm> {
        let mut ms = Vec::new();
        self.matches_at(w, pos, &mut ms);
        let m = ms.into_iter().find(|m| m.len == len).expect("left-hand side matches at its own position");
        self.apply(0, w, &m)
    }

    fn reduce_from(&self, t: RootTerm) -> Option<RootTerm> {
        let (e, w) = self.reduce(&t.1, Strategy::Leftmost)?;
        Some(((e + t.0) % self.modulus, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `Z_2 = {0, 1}`, `x` anticommutes with the generator, `y` commutes.
    fn toy(l: usize) -> RewritingSystem {
        RewritingSystem::new(2, l, 1, vec![0, 1], vec![0, 0], vec![0, 1, 1, 0], 0).unwrap()
    }

    #[test]
    fn basic_reductions() {
        let r = toy(1);
        assert_eq!(r.reduce(&[Letter::X, Letter::X], Strategy::Leftmost), None);
        assert_eq!(r.reduce(&[Letter::Y, Letter::X], Strategy::Leftmost), Some((1, vec![Letter::X, Letter::Y])));
        assert_eq!(r.reduce(&[Letter::G(1), Letter::X, Letter::G(1)], Strategy::Rightmost), Some((1, vec![Letter::X])));
        assert!(r.is_normal(&[Letter::X, Letter::Y, Letter::G(1)]));
    }

    #[test]
    fn toy_system_is_confluent() {
        for l in 1..4 {
            let cert = toy(l).certify(&[]).unwrap();
            assert!(cert.exhaustive);
            assert!(cert.max_overlap_len <= 4 * l + 2);
        }
    }

    #[test]
    fn inconsistent_character_is_caught() {
        // G(1) G(1) = G(0) but x picks up -1 twice: fine; make y pick up a
        // non-character value so that G(1)G(1)y disagrees
        let r = RewritingSystem::new(4, 1, 2, vec![0, 2], vec![0, 1], vec![0, 1, 1, 0], 0).unwrap();
        assert!(matches!(r.certify(&[]), Err(Error::NotConfluent(_))));
    }
}
