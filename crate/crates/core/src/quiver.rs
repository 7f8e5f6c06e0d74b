//! Covering quivers, Gabriel quivers of graded elementary algebras and the
//! representation type number.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::abgroup::{AbelianGroup, GroupElement};
use crate::cyclo::FieldExt;
use crate::error::{pre, Error, Result};
use crate::groupalg::{CharacterTable, TwistPart};
use crate::linalg::Subspace;
use crate::quasihopf::{IdemAlgebra, Subalgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// `adj[u][v]` = number of arrows `u → v`.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![vec![0; n]; n];
        for a in &self.arrows {
            adj[a.source][a.target] += 1;
        }
        adj
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for a in &self.arrows {
            d[a.source] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for a in &self.arrows {
            d[a.target] += 1;
        }
        d
    }
}

/// `Γ_G(W)`: vertices `v_g`, arrows `(a_i, g): v_{g⁻¹} → v_{w_i g⁻¹}`.
pub fn covering_quiver(group: &AbelianGroup, weights: &[GroupElement]) -> Result<Quiver> {
    for w in weights {
        pre(group.contains(w), format!("weight {w} is not in the group"))?;
    }
    // conjugation is trivial in an abelian group, so the multiset condition holds
    let vertices: Vec<String> = group.elements().iter().map(|g| g.to_string()).collect();
    let mut arrows = Vec::with_capacity(group.order() * weights.len());
    for g in group.elements() {
        let gi = group.neg(&g);
        for (i, w) in weights.iter().enumerate() {
            arrows.push(Arrow { source: group.index(&gi), target: group.index(&group.add(w, &gi)), label: format!("a{}@{g}", i + 1) });
        }
    }
    Ok(Quiver { vertices, arrows })
}

/// Characters of `G` sent to the characters of the grouplike part of a
/// subalgebra, with that dual group made explicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub group: AbelianGroup,
    pub of: Vec<usize>,
}

impl VertexMap {
    /// All of `Ĝ`, indexed like `G`.
    pub fn characters(chars: &CharacterTable) -> VertexMap {
        VertexMap { group: chars.group.clone(), of: (0..chars.group.order()).collect() }
    }

    /// Coarse coordinates `(x mod 𝕞₁, x mod 𝕞₂, …)` along the twist parts,
    /// dropping trivial factors.
    pub fn coarse(chars: &CharacterTable, parts: &[TwistPart]) -> Result<VertexMap> {
        let factors: Vec<u32> = parts.iter().flat_map(|p| [p.mm1, p.mm2]).collect();
        let keep: Vec<usize> = (0..factors.len()).filter(|&i| factors[i] > 1).collect();
        let group = AbelianGroup::new(if keep.is_empty() { vec![1] } else { keep.iter().map(|&i| factors[i]).collect() })?;
        let mut of = Vec::with_capacity(chars.group.order());
        for chi in 0..chars.group.order() {
            let coords: Vec<i64> = parts.iter().flat_map(|p| {
                let (a, b) = p.coarse(chars, chi);
                [a, b]
            }).collect();
            let exp: Vec<i64> = if keep.is_empty() { vec![0] } else { keep.iter().map(|&i| coords[i]).collect() };
            of.push(group.index(&group.element(&exp)?));
        }
        let vm = VertexMap { group, of };
        vm.check_homomorphism(&chars.group)?;
        Ok(vm)
    }

    fn check_homomorphism(&self, source: &AbelianGroup) -> Result<()> {
        let n = source.order();
        for a in 0..n {
            for b in 0..n {
                if self.of[source.add_idx(a, b)] != self.group.add_idx(self.of[a], self.of[b]) {
                    return Err(Error::Inconsistent("vertex map is not a group homomorphism".into()));
                }
            }
        }
        let image: BTreeSet<usize> = self.of.iter().copied().collect();
        pre(image.len() == self.group.order(), "vertex map is not surjective")
    }

    /// One representative character per vertex.
    pub fn representatives(&self) -> Vec<usize> {
        let mut rep = vec![usize::MAX; self.group.order()];
        for (chi, &v) in self.of.iter().enumerate() {
            if rep[v] == usize::MAX {
                rep[v] = chi;
            }
        }
        rep
    }
}

/// The Gabriel quiver of `H` (when `sub` is `None`) or of a graded subalgebra.
/// Vertices are the primitive idempotents of the degree-0 part, arrows
/// `u → v` number `dim e_v A[1] e_u`.
pub fn gabriel_quiver(alg: &IdemAlgebra, sub: Option<&Subalgebra>, vertices: &VertexMap) -> Result<Quiver> {
    let n = alg.group().order();
    pre(vertices.of.len() == n, "vertex map has the wrong domain")?;
    // the degree-0 part must be spanned by the block indicators of the map
    if let Some(sub) = sub {
        let zero = sub.space(0).ok_or_else(|| Error::Inconsistent("subalgebra has no degree-0 part".into()))?;
        pre(zero.dim() == vertices.group.order(), format!("degree-0 part has dimension {} but the vertex map has {} vertices", zero.dim(), vertices.group.order()))?;
        for v in 0..vertices.group.order() {
            let ind: Vec<_> = (0..n).map(|c| if vertices.of[c] == v { alg.field.one() } else { alg.field.zero() }).collect();
            if !zero.contains(&ind)? {
                return Err(Error::Inconsistent(format!("block indicator of vertex {v} is not in the degree-0 part")));
            }
        }
    }
    let degree_one: Vec<usize> = (0..alg.hopf.num_words()).filter(|&w| alg.hopf.word_letters(w).len() == 1).collect();
    let labels: Vec<String> = vertices.group.elements().iter().map(|g| g.to_string()).collect();
    let mut arrows = Vec::new();
    for &w in &degree_one {
        let full;
        let space = match sub {
            Some(s) => match s.space(w) {
                Some(sp) => sp,
                None => continue,
            },
            None => {
                full = Subspace::full(&alg.field, n);
                &full
            }
        };
        let shift = vertices.of[alg.word_shift(w)];
        for u in 0..vertices.group.order() {
            let masked: Vec<Vec<_>> = space
                .basis()
                .iter()
                .map(|f| (0..n).map(|c| if vertices.of[c] == u { f[c].clone() } else { alg.field.zero() }).collect())
                .collect();
            let dim = crate::linalg::rank(&alg.field, n, &masked)?;
            let v = vertices.group.add_idx(u, shift);
            for k in 0..dim {
                arrows.push(Arrow { source: u, target: v, label: format!("{}{}", alg.hopf.word_name(w), if dim > 1 { format!("_{k}") } else { String::new() }) });
            }
        }
    }
    arrows.sort_by(|a, b| (a.source, a.target, &a.label).cmp(&(b.source, b.target, &b.label)));
    Ok(Quiver { vertices: labels, arrows })
}

/// The weights `δ_w` of the degree-one words, as vertices.
pub fn degree_one_weights(alg: &IdemAlgebra, sub: Option<&Subalgebra>, vertices: &VertexMap) -> Vec<GroupElement> {
    (0..alg.hopf.num_words())
        .filter(|&w| alg.hopf.word_letters(w).len() == 1)
        .filter(|&w| sub.map_or(true, |s| s.space(w).is_some()))
        .map(|w| vertices.group.from_index(vertices.of[alg.word_shift(w)]))
        .collect()
}

/// Common out-degree of a vertex-uniform quiver.
pub fn rep_type_number(q: &Quiver) -> Result<usize> {
    let out = q.out_degrees();
    let inn = q.in_degrees();
    let d = out.first().copied().unwrap_or(0);
    if out.iter().any(|&x| x != d) || inn.iter().any(|&x| x != d) {
        return Err(Error::Inconsistent(format!("quiver is not vertex-uniform: out-degrees {out:?}, in-degrees {inn:?}")));
    }
    Ok(d)
}

/// A vertex bijection `φ` with `adj_b[φu][φv] = adj_a[u][v]`, by backtracking
/// along a spanning order.
pub fn find_isomorphism(a: &Quiver, b: &Quiver) -> Option<Vec<usize>> {
    let n = a.num_vertices();
    if n != b.num_vertices() || a.arrows.len() != b.arrows.len() {
        return None;
    }
    let (aa, ab) = (a.adjacency(), b.adjacency());
    let sig = |adj: &Vec<Vec<usize>>, v: usize| {
        let mut out: Vec<usize> = adj[v].clone();
        let mut inn: Vec<usize> = adj.iter().map(|r| r[v]).collect();
        out.sort_unstable();
        inn.sort_unstable();
        (adj[v][v], out, inn)
    };
    let sa: Vec<_> = (0..n).map(|v| sig(&aa, v)).collect();
    let sb: Vec<_> = (0..n).map(|v| sig(&ab, v)).collect();
    // visit vertices so that each one after the first touches an earlier one when possible
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push(start);
        let mut i = order.len() - 1;
        while i < order.len() {
            let u = order[i];
            for v in 0..n {
                if !seen[v] && (aa[u][v] > 0 || aa[v][u] > 0) {
                    seen[v] = true;
                    order.push(v);
                }
            }
            i += 1;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        map: &mut [usize],
        used: &mut [bool],
        aa: &[Vec<usize>],
        ab: &[Vec<usize>],
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let u = order[k];
        for t in 0..map.len() {
            if used[t] || !ok(u, t) {
                continue;
            }
            let consistent = order[..k].iter().all(|&p| aa[u][p] == ab[t][map[p]] && aa[p][u] == ab[map[p]][t]);
            if !consistent {
                continue;
            }
            map[u] = t;
            used[t] = true;
            if go(k + 1, order, map, used, aa, ab, ok) {
                return true;
            }
            used[t] = false;
            map[u] = usize::MAX;
        }
        false
    }
    let ok = |u: usize, t: usize| sa[u] == sb[t];
    if go(0, &order, &mut map, &mut used, &aa, &ab, &ok) {
        Some(map)
    } else {
        None
    }
}

/// Graphviz text with vertices in index order and arrows in list order.
pub fn export_dot(q: &Quiver) -> String {
    let mut s = String::from("digraph quiver {\n");
    for (i, v) in q.vertices.iter().enumerate() {
        let _ = writeln!(s, "  v{i} [label=\"{v}\"];");
    }
    for a in &q.arrows {
        let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", a.source, a.target, a.label);
    }
    s.push_str("}\n");
    s
}
