//! Normalized 3-cocycle representatives on finite abelian groups, the
//! cocycle identity, coboundary decisions over `Z/N`, and pullbacks.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abgroup::{AbelianGroup, GroupElement};
use crate::cyclo::{gcd, CycloField, CycloNum, FieldExt};
use crate::error::{pre, Error, Result};
use crate::snf::ModularSolver;

/// Default guard on `|G|` for the quadruple sweep (`|G|^4` checks).
pub const DEFAULT_COCYCLE_BUDGET: usize = 20;
/// Default guard on `|G|` for the coboundary system (`|G|^3 × |G|^2`).
pub const DEFAULT_COBOUNDARY_BUDGET: usize = 16;

/// The parameter sequence `(a_l; a_ij; a_rst)` of a representative cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CocycleParams {
    pub a: Vec<u32>,
    pub aij: Vec<u32>,
    pub arst: Vec<u32>,
}

fn pairs(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            out.push((i, j));
        }
    }
    out
}

fn triples(k: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for r in 0..k {
        for s in r + 1..k {
            for t in s + 1..k {
                out.push((r, s, t));
            }
        }
    }
    out
}

/// Upper bounds of every parameter slot, in sequence order.
fn param_ranges(group: &AbelianGroup) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let f = group.factors();
    let g2 = |i: usize, j: usize| gcd(f[i] as u64, f[j] as u64) as u32;
    let a = f.to_vec();
    let aij = pairs(f.len()).into_iter().map(|(i, j)| g2(i, j)).collect();
    let arst = triples(f.len())
        .into_iter()
        .map(|(r, s, t)| gcd(g2(r, s) as u64, f[t] as u64) as u32)
        .collect();
    (a, aij, arst)
}

impl CocycleParams {
    pub fn zero(group: &AbelianGroup) -> CocycleParams {
        let (a, aij, arst) = param_ranges(group);
        CocycleParams { a: vec![0; a.len()], aij: vec![0; aij.len()], arst: vec![0; arst.len()] }
    }

    pub fn validate(&self, group: &AbelianGroup) -> Result<()> {
        pre(group.rank() <= 3, "cocycle representatives are implemented for at most three cyclic factors")?;
        let (a, aij, arst) = param_ranges(group);
        for (name, vals, bounds) in [("a", &self.a, &a), ("aij", &self.aij, &aij), ("arst", &self.arst, &arst)] {
            pre(vals.len() == bounds.len(), format!("{name} needs {} entries, got {}", bounds.len(), vals.len()))?;
            for (v, b) in vals.iter().zip(bounds) {
                pre(v < b, format!("{name} entry {v} out of range 0..{b}"))?;
            }
        }
        Ok(())
    }

    /// Every parameter sequence for `group`, in lexicographic order.
    pub fn enumerate(group: &AbelianGroup) -> Result<Vec<CocycleParams>> {
        pre(group.rank() <= 3, "cocycle representatives are implemented for at most three cyclic factors")?;
        let (a, aij, arst) = param_ranges(group);
        let bounds: Vec<u32> = a.iter().chain(&aij).chain(&arst).copied().collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; bounds.len()];
        loop {
            let (x, rest) = cur.split_at(a.len());
            let (y, z) = rest.split_at(aij.len());
            out.push(CocycleParams { a: x.to_vec(), aij: y.to_vec(), arst: z.to_vec() });
            let mut i = bounds.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.aij).chain(&self.arst).all(|&x| x == 0)
    }
}

/// Exponent of `ζ_N` (`N` = exponent of the group) for the representative
/// cocycle at `(g, h, f)`, floors taken as integer division.
pub fn omega_exp(params: &CocycleParams, group: &AbelianGroup, g: &GroupElement, h: &GroupElement, f: &GroupElement) -> u32 {
    let m = group.factors();
    let n = group.exponent() as i64;
    let (i, j, k) = (&g.exp, &h.exp, &f.exp);
    let mut e: i64 = 0;
    for l in 0..m.len() {
        let carry = ((j[l] + k[l]) / m[l]) as i64;
        e += params.a[l] as i64 * i[l] as i64 * carry * (n / m[l] as i64);
    }
    for (idx, (s, t)) in pairs(m.len()).into_iter().enumerate() {
        let d = gcd(m[s] as u64, m[t] as u64) as i64;
        let carry = ((j[s] + k[s]) / m[s]) as i64;
        e += params.aij[idx] as i64 * i[t] as i64 * carry * (n / d);
    }
    for (idx, (r, s, t)) in triples(m.len()).into_iter().enumerate() {
        let d = gcd(gcd(m[r] as u64, m[s] as u64), m[t] as u64) as i64;
        e -= params.arst[idx] as i64 * k[r] as i64 * j[s] as i64 * i[t] as i64 * (n / d);
    }
    e.rem_euclid(n) as u32
}

pub fn omega(
    params: &CocycleParams,
    group: &AbelianGroup,
    field: &Arc<CycloField>,
    g: &GroupElement,
    h: &GroupElement,
    f: &GroupElement,
) -> Result<CycloNum> {
    params.validate(group)?;
    field.root_of_unity(group.exponent(), omega_exp(params, group, g, h, f) as i64)
}

/// A cochain `G^r → μ_N`, stored as exponents of `ζ_N`; arguments are indexed
/// by group index with the first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain {
    pub group: AbelianGroup,
    pub arity: usize,
    pub modulus: u32,
    pub exps: Vec<u32>,
}

impl Cochain {
    pub fn from_fn(group: &AbelianGroup, arity: usize, modulus: u32, mut f: impl FnMut(&[usize]) -> i64) -> Cochain {
        let n = group.order();
        let total = n.pow(arity as u32);
        let mut args = vec![0usize; arity];
        let mut exps = Vec::with_capacity(total);
        for idx in 0..total {
            let mut x = idx;
            for a in (0..arity).rev() {
                args[a] = x % n;
                x /= n;
            }
            exps.push(f(&args).rem_euclid(modulus as i64) as u32);
        }
        Cochain { group: group.clone(), arity, modulus, exps }
    }

    pub fn constant(group: &AbelianGroup, arity: usize, modulus: u32, e: u32) -> Cochain {
        Cochain::from_fn(group, arity, modulus, |_| e as i64)
    }

    /// Tabulate a cochain from field values; each must be an `N`-th root of unity.
    pub fn from_values(group: &AbelianGroup, arity: usize, values: &[CycloNum]) -> Result<Cochain> {
        pre(values.len() == group.order().pow(arity as u32), "one value per argument tuple")?;
        let n = values.first().map_or(1, |v| v.field().conductor());
        let mut exps = Vec::with_capacity(values.len());
        for v in values {
            exps.push(v.discrete_log().ok_or(Error::NotRootOfUnity(n))?);
        }
        Ok(Cochain { group: group.clone(), arity, modulus: n, exps })
    }

    pub fn of_params(params: &CocycleParams, group: &AbelianGroup) -> Result<Cochain> {
        params.validate(group)?;
        let els = group.elements();
        Ok(Cochain::from_fn(group, 3, group.exponent(), |a| {
            omega_exp(params, group, &els[a[0]], &els[a[1]], &els[a[2]]) as i64
        }))
    }

    pub fn index(&self, args: &[usize]) -> usize {
        let n = self.group.order();
        args.iter().fold(0, |acc, &a| acc * n + a)
    }

    pub fn exp_at(&self, args: &[usize]) -> u32 {
        self.exps[self.index(args)]
    }

    pub fn value_at(&self, field: &Arc<CycloField>, args: &[usize]) -> Result<CycloNum> {
        field.root_of_unity(self.modulus, self.exp_at(args) as i64)
    }

    /// Re-express the exponents over `ζ_M` for a multiple `M` of the modulus.
    pub fn lift_modulus(&self, m: u32) -> Result<Cochain> {
        pre(m % self.modulus == 0, format!("{m} is not a multiple of {}", self.modulus))?;
        let f = m / self.modulus;
        Ok(Cochain { exps: self.exps.iter().map(|e| e * f).collect(), modulus: m, ..self.clone() })
    }

    pub fn mul(&self, o: &Cochain) -> Result<Cochain> {
        pre(self.group == o.group && self.arity == o.arity && self.modulus == o.modulus, "cochains must match")?;
        let n = self.modulus;
        Ok(Cochain { exps: self.exps.iter().zip(&o.exps).map(|(a, b)| (a + b) % n).collect(), ..self.clone() })
    }

    pub fn inverse(&self) -> Cochain {
        let n = self.modulus;
        Cochain { exps: self.exps.iter().map(|a| (n - a) % n).collect(), ..self.clone() }
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Value 1 whenever some argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let n = self.group.order();
        let id = self.group.index(&self.group.identity());
        (0..self.exps.len()).all(|idx| {
            let mut x = idx;
            let mut has_id = false;
            for _ in 0..self.arity {
                has_id |= x % n == id;
                x /= n;
            }
            !has_id || self.exps[idx] == 0
        })
    }

    /// `dδ(g,h,f) = δ(h,f) − δ(gh,f) + δ(g,hf) − δ(g,h)` in exponent form.
    pub fn coboundary(&self) -> Result<Cochain> {
        pre(self.arity == 2, "coboundary is implemented for 2-cochains")?;
        let add = self.group.add_table();
        let n = self.group.order();
        let m = self.modulus as i64;
        Ok(Cochain::from_fn(&self.group, 3, self.modulus, |a| {
            let (g, h, f) = (a[0], a[1], a[2]);
            let e = |x: usize, y: usize| self.exps[x * n + y] as i64;
            (e(h, f) - e(add[g * n + h], f) + e(g, add[h * n + f]) - e(g, h)).rem_euclid(m)
        }))
    }
}

/// Why a 3-cochain fails to be a normalized 3-cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CocycleFailure {
    NotNormalized { args: [usize; 3] },
    Identity { args: [usize; 4] },
}

/// First failure of normalization or of
/// `ω(h,f,e) ω(g,hf,e) ω(g,h,f) = ω(gh,f,e) ω(g,h,fe)`, or `None` for a cocycle.
pub fn check_3cocycle(omega: &Cochain, budget: usize) -> Result<Option<CocycleFailure>> {
    pre(omega.arity == 3, "a 3-cochain is required")?;
    let n = omega.group.order();
    if n > budget {
        return Err(Error::Budget(format!("|G| = {n} exceeds the cocycle-check budget {budget}")));
    }
    let id = omega.group.index(&omega.group.identity());
    for x in 0..n {
        for y in 0..n {
            for args in [[id, x, y], [x, id, y], [x, y, id]] {
                if omega.exp_at(&args) != 0 {
                    return Ok(Some(CocycleFailure::NotNormalized { args }));
                }
            }
        }
    }
    let add = omega.group.add_table();
    let m = omega.modulus;
    let w = |a: usize, b: usize, c: usize| omega.exps[(a * n + b) * n + c];
    for g in 0..n {
        for h in 0..n {
            let gh = add[g * n + h];
            for f in 0..n {
                let hf = add[h * n + f];
                let base = w(g, h, f);
                for e in 0..n {
                    let lhs = (w(h, f, e) + w(g, hf, e) + base) % m;
                    let rhs = (w(gh, f, e) + w(g, h, add[f * n + e])) % m;
                    if lhs != rhs {
                        return Ok(Some(CocycleFailure::Identity { args: [g, h, f, e] }));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn is_3cocycle(omega: &Cochain) -> Result<bool> {
    Ok(check_3cocycle(omega, DEFAULT_COCYCLE_BUDGET)?.is_none())
}

/// The coboundary map `C^2 → C^3` over `Z/N`, factored once per group so
/// many right-hand sides can be decided cheaply.
pub struct CoboundarySolver {
    group: AbelianGroup,
    modulus: u32,
    solver: ModularSolver,
}

impl CoboundarySolver {
    pub fn new(group: &AbelianGroup, modulus: u32, budget: usize) -> Result<CoboundarySolver> {
        let n = group.order();
        if n > budget {
            return Err(Error::Budget(format!("|G| = {n} exceeds the coboundary budget {budget}")));
        }
        pre(modulus >= 1, "modulus must be positive")?;
        let add = group.add_table();
        let cols = n * n;
        let nm = modulus as u64;
        let mut rows = Vec::with_capacity(n * n * n);
        for g in 0..n {
            for h in 0..n {
                for f in 0..n {
                    let mut row = vec![0u64; cols];
                    let mut bump = |c: usize, s: i64| row[c] = (row[c] as i64 + s).rem_euclid(nm as i64) as u64;
                    bump(h * n + f, 1);
                    bump(add[g * n + h] * n + f, -1);
                    bump(g * n + add[h * n + f], 1);
                    bump(g * n + h, -1);
                    rows.push(row);
                }
            }
        }
        Ok(CoboundarySolver { group: group.clone(), modulus, solver: ModularSolver::new(rows, cols, nm) })
    }

    fn rhs(&self, omega: &Cochain) -> Result<Vec<u64>> {
        pre(omega.arity == 3 && omega.group == self.group, "3-cochain on the solver's group required")?;
        let w = if omega.modulus == self.modulus { omega.clone() } else { omega.lift_modulus(self.modulus)? };
        Ok(w.exps.iter().map(|&e| e as u64).collect())
    }

    /// `δ` with `dδ = ω`, or `None` if `ω` is not a coboundary.
    pub fn solve(&self, omega: &Cochain) -> Result<Option<Cochain>> {
        let b = self.rhs(omega)?;
        let Some(x) = self.solver.solve(&b) else { return Ok(None) };
        let delta = Cochain { group: self.group.clone(), arity: 2, modulus: self.modulus, exps: x.iter().map(|&v| v as u32).collect() };
        let lifted = if omega.modulus == self.modulus { omega.clone() } else { omega.lift_modulus(self.modulus)? };
        if delta.coboundary()? != lifted {
            return Err(Error::Inconsistent("coboundary witness does not reproduce the cocycle".into()));
        }
        Ok(Some(delta))
    }

    /// Equal signatures iff the two cochains differ by a coboundary.
    pub fn class_signature(&self, omega: &Cochain) -> Result<Vec<u64>> {
        Ok(self.solver.class_signature(&self.rhs(omega)?))
    }
}

/// Decide whether `ω` is a coboundary modulo `N`.
pub fn coboundary_solve(omega: &Cochain, modulus: u32) -> Result<Option<Cochain>> {
    CoboundarySolver::new(&omega.group, modulus, DEFAULT_COBOUNDARY_BUDGET)?.solve(omega)
}

/// A homomorphism given by the images of the source's canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    pub source: AbelianGroup,
    pub target: AbelianGroup,
    pub images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(source: &AbelianGroup, target: &AbelianGroup, images: Vec<GroupElement>) -> Result<GroupHom> {
        pre(images.len() == source.rank(), "one image per source generator")?;
        for (i, img) in images.iter().enumerate() {
            pre(target.contains(img), format!("image {img} is not in the target"))?;
            let o = target.element_order(img);
            pre(
                source.factors()[i] % o == 0,
                format!("not a homomorphism: image of e{} has order {o} not dividing {}", i + 1, source.factors()[i]),
            )?;
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), images })
    }

    /// Coordinatewise reduction `Z_{m_1} × … → Z_{n_1} × …` with `n_i | m_i`.
    pub fn reduction(source: &AbelianGroup, target: &AbelianGroup) -> Result<GroupHom> {
        pre(source.rank() == target.rank(), "ranks must agree")?;
        GroupHom::new(source, target, target.standard_generators())
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let t = &self.target;
        let mut acc = t.identity();
        for (e, img) in x.exp.iter().zip(&self.images) {
            acc = t.add(&acc, &t.pow(img, *e as i64));
        }
        acc
    }

    pub fn is_surjective(&self) -> bool {
        self.target.generates(&self.images)
    }
}

/// `(π^*ω)(x, y, z) = ω(π x, π y, π z)` along an epimorphism `π`.
pub fn pullback(omega: &Cochain, pi: &GroupHom) -> Result<Cochain> {
    pre(omega.group == pi.target, "cochain must live on the target of the epimorphism")?;
    pre(pi.is_surjective(), "the map must be surjective")?;
    let src = &pi.source;
    let map: Vec<usize> = src.elements().iter().map(|x| pi.target.index(&pi.apply(x))).collect();
    Ok(Cochain::from_fn(src, omega.arity, omega.modulus, |a| {
        let img: Vec<usize> = a.iter().map(|&x| map[x]).collect();
        omega.exp_at(&img) as i64
    }))
}

/// Invariant-factor lists with at most `max_rank` factors (each at least 2)
/// and order at most `max_order`.
pub fn small_groups(max_order: usize, max_rank: usize) -> Vec<AbelianGroup> {
    fn rec(prefix: &mut Vec<u32>, order: usize, max_order: usize, max_rank: usize, out: &mut Vec<AbelianGroup>) {
        if !prefix.is_empty() {
            out.push(AbelianGroup::new(prefix.clone()).expect("valid factors"));
        }
        if prefix.len() == max_rank {
            return;
        }
        let start = prefix.last().copied().unwrap_or(2).max(2);
        let mut f = start;
        while order * f as usize <= max_order {
            if prefix.is_empty() || f % start == 0 {
                prefix.push(f);
                rec(prefix, order * f as usize, max_order, max_rank, out);
                prefix.pop();
            }
            f += 1;
        }
    }
    let mut out = vec![AbelianGroup::cyclic(1)];
    rec(&mut Vec::new(), 1, max_order, max_rank, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_counts_match_ranges() {
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(CocycleParams::enumerate(&g).unwrap().len(), 8);
        let g = AbelianGroup::new(vec![2, 2, 2]).unwrap();
        assert_eq!(CocycleParams::enumerate(&g).unwrap().len(), 128);
    }

    #[test]
    fn small_group_list() {
        let gs = small_groups(8, 3);
        let fs: Vec<Vec<u32>> = gs.iter().map(|g| g.factors().to_vec()).collect();
        assert!(fs.contains(&vec![2, 2, 2]));
        assert!(fs.contains(&vec![2, 4]));
        assert!(!fs.contains(&vec![4, 2]));
        assert_eq!(fs.len(), 1 + 7 + 2 + 1);
    }

    #[test]
    fn constant_cochain_is_not_normalized() {
        let g = AbelianGroup::cyclic(2);
        let w = Cochain::constant(&g, 3, 2, 1);
        assert!(!is_3cocycle(&w).unwrap());
    }
}
