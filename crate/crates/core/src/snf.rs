//! Linear systems over `Z/N` via a Smith-form factorisation `U·A·V = D`.
//!
//! Rows are reduced first to echelon form (the matrices here are tall:
//! `|G|^3` equations in `|G|^2` unknowns), then the square top block is
//! diagonalised with both row and column operations. Row operations are
//! logged so any right-hand side can be replayed through `U` later, which
//! turns every solve into a cheap pass over the log.

#[derive(Clone, Debug)]
enum RowOp {
    Swap(usize, usize),
    Scale(usize, u64),
    /// `row_i += f · row_j`
    AddMul { i: usize, j: usize, f: u64 },
    /// `(row_i, row_j) ← (s·row_i + t·row_j, u·row_i + v·row_j)`, unimodular
    Combine { i: usize, j: usize, s: u64, t: u64, u: u64, v: u64 },
}

fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0, t0)
}

fn gcd(a: u64, b: u64) -> u64 {
    crate::cyclo::gcd(a, b)
}

fn md(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (g, s, _) = xgcd(a as i64, n as i64);
    if g == 1 {
        Some(md(s, n))
    } else if n == 1 {
        Some(0)
    } else {
        None
    }
}

/// Factorisation of an integer matrix modulo `N`.
#[derive(Clone, Debug)]
pub struct ModularSolver {
    modulus: u64,
    rows: usize,
    cols: usize,
    ops: Vec<RowOp>,
    diag: Vec<u64>,
    v: Vec<Vec<u64>>,
}

struct Work {
    n: u64,
    a: Vec<Vec<u64>>,
    ops: Vec<RowOp>,
}

impl Work {
    fn apply(&mut self, op: RowOp) {
        let n = self.n;
        match op {
            RowOp::Swap(i, j) => self.a.swap(i, j),
            RowOp::Scale(i, f) => {
                for x in self.a[i].iter_mut() {
                    *x = *x * f % n;
                }
            }
            RowOp::AddMul { i, j, f } => {
                let (ri, rj) = two_rows(&mut self.a, i, j);
                for (x, y) in ri.iter_mut().zip(rj.iter()) {
                    *x = (*x + f * y) % n;
                }
            }
            RowOp::Combine { i, j, s, t, u, v } => {
                let (ri, rj) = two_rows(&mut self.a, i, j);
                for (x, y) in ri.iter_mut().zip(rj.iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = (s * a + t * b) % n;
                    *y = (u * a + v * b) % n;
                }
            }
        }
        self.ops.push(op);
    }

    /// Clear `a[i][c]` against the pivot row `p`.
    fn eliminate(&mut self, p: usize, i: usize, c: usize) {
        let n = self.n;
        let (a, b) = (self.a[p][c], self.a[i][c]);
        if b == 0 {
            return;
        }
        if b % a == 0 {
            self.apply(RowOp::AddMul { i, j: p, f: md(-((b / a) as i64), n) });
            return;
        }
        let (g, s, t) = xgcd(a as i64, b as i64);
        let (u, v) = (-(b as i64 / g), a as i64 / g);
        self.apply(RowOp::Combine { i: p, j: i, s: md(s, n), t: md(t, n), u: md(u, n), v: md(v, n) });
    }

    /// Make the pivot a divisor of `N` by a unit scaling.
    fn normalize_pivot(&mut self, p: usize, c: usize) {
        let n = self.n;
        let a = self.a[p][c];
        let g = gcd(a, n);
        if a == g {
            return;
        }
        // a = g·a', a' a unit mod N/g; lift its inverse to a unit mod N
        let nn = n / g;
        let mut u = inv_mod((a / g) % nn, nn).unwrap_or(1);
        while gcd(u, n) != 1 {
            u += nn;
        }
        self.apply(RowOp::Scale(p, u % n));
    }
}

fn two_rows(a: &mut [Vec<u64>], i: usize, j: usize) -> (&mut Vec<u64>, &mut Vec<u64>) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = a.split_at_mut(j);
        (&mut lo[i], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&mut hi[0], &mut lo[j])
    }
}

impl ModularSolver {
    /// Factor `matrix` (given row-major, entries already reduced or not) modulo `modulus`.
    pub fn new(matrix: Vec<Vec<u64>>, cols: usize, modulus: u64) -> ModularSolver {
        assert!(modulus >= 1);
        let n = modulus;
        let rows = matrix.len();
        let a: Vec<Vec<u64>> = matrix.into_iter().map(|r| r.into_iter().map(|x| x % n).collect()).collect();
        let mut w = Work { n, a, ops: Vec::new() };

        // phase 1: row echelon form
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let best = (r..rows).filter(|&i| w.a[i][c] != 0).min_by_key(|&i| (gcd(w.a[i][c], n), i));
            let Some(p) = best else { continue };
            if p != r {
                w.apply(RowOp::Swap(p, r));
            }
            w.normalize_pivot(r, c);
            for i in r + 1..rows {
                if w.a[i][c] != 0 {
                    w.eliminate(r, i, c);
                }
            }
            r += 1;
        }

        // phase 2: diagonalise the top r rows with row and column operations
        let mut v: Vec<Vec<u64>> = (0..cols).map(|i| (0..cols).map(|j| u64::from(i == j)).collect()).collect();
        let k = r.min(cols);
        let mut diag = Vec::with_capacity(k);
        for t in 0..k {
            let mut best: Option<(u64, usize, usize)> = None;
            for i in t..r {
                for j in t..cols {
                    let x = w.a[i][j];
                    if x != 0 {
                        let key = gcd(x, n);
                        if best.map_or(true, |(b, _, _)| key < b) {
                            best = Some((key, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            if pi != t {
                w.apply(RowOp::Swap(pi, t));
            }
            if pj != t {
                swap_cols(&mut w.a, &mut v, pj, t);
            }
            loop {
                w.normalize_pivot(t, t);
                for i in t + 1..r {
                    if w.a[i][t] != 0 {
                        w.eliminate(t, i, t);
                    }
                }
                for j in t + 1..cols {
                    if w.a[t][j] != 0 {
                        eliminate_col(&mut w.a, &mut v, n, t, j, r);
                    }
                }
                let col_clear = (t + 1..r).all(|i| w.a[i][t] == 0);
                let row_clear = (t + 1..cols).all(|j| w.a[t][j] == 0);
                if col_clear && row_clear {
                    break;
                }
            }
            diag.push(w.a[t][t]);
        }
        ModularSolver { modulus: n, rows, cols, ops: w.ops, diag, v }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Diagonal of `D`; invariant factors modulo `N` up to units.
    pub fn diagonal(&self) -> &[u64] {
        &self.diag
    }

    fn transform_rhs(&self, b: &[u64]) -> Vec<u64> {
        assert_eq!(b.len(), self.rows);
        let n = self.modulus;
        let mut x: Vec<u64> = b.iter().map(|v| v % n).collect();
        for op in &self.ops {
            match *op {
                RowOp::Swap(i, j) => x.swap(i, j),
                RowOp::Scale(i, f) => x[i] = x[i] * f % n,
                RowOp::AddMul { i, j, f } => x[i] = (x[i] + f * x[j]) % n,
                RowOp::Combine { i, j, s, t, u, v } => {
                    let (a, b) = (x[i], x[j]);
                    x[i] = (s * a + t * b) % n;
                    x[j] = (u * a + v * b) % n;
                }
            }
        }
        x
    }

    /// A solution of `A·x ≡ b (mod N)` if one exists.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let n = self.modulus;
        let c = self.transform_rhs(b);
        let mut w = vec![0u64; self.cols];
        for (t, &d) in self.diag.iter().enumerate() {
            let g = gcd(d, n);
            if c[t] % g != 0 {
                return None;
            }
            let nn = n / g;
            w[t] = if nn == 1 { 0 } else { (c[t] / g) % nn * inv_mod((d / g) % nn, nn)? % nn };
        }
        if c[self.diag.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let x = (0..self.cols)
            .map(|i| self.v[i].iter().zip(&w).fold(0u64, |acc, (a, b)| (acc + a * b) % n))
            .collect();
        Some(x)
    }

    /// Invariant of the class of `b` modulo the column space: two right-hand
    /// sides have equal signatures iff their difference is solvable.
    pub fn class_signature(&self, b: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let c = self.transform_rhs(b);
        let mut out = Vec::with_capacity(c.len());
        for (t, &x) in c.iter().enumerate() {
            match self.diag.get(t) {
                Some(&d) => out.push(x % gcd(d, n)),
                None => out.push(x),
            }
        }
        out
    }
}

fn swap_cols(a: &mut [Vec<u64>], v: &mut [Vec<u64>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in v.iter_mut() {
        row.swap(i, j);
    }
}

/// Clear `a[t][j]` against the pivot column `t` using a column operation,
/// touching only the first `r` rows of `a` (the rest are zero).
fn eliminate_col(a: &mut [Vec<u64>], v: &mut [Vec<u64>], n: u64, t: usize, j: usize, r: usize) {
    let (p, b) = (a[t][t], a[t][j]);
    if b % p == 0 {
        let f = md(-((b / p) as i64), n);
        for row in a[..r].iter_mut().chain(v.iter_mut()) {
            row[j] = (row[j] + f * row[t]) % n;
        }
        return;
    }
    let (g, s, tt) = xgcd(p as i64, b as i64);
    let (u, w) = (md(-(b as i64 / g), n), md(p as i64 / g, n));
    let (s, tt) = (md(s, n), md(tt, n));
    for row in a[..r].iter_mut().chain(v.iter_mut()) {
        let (x, y) = (row[t], row[j]);
        row[t] = (s * x + tt * y) % n;
        row[j] = (u * x + w * y) % n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_vec(a: &[Vec<u64>], x: &[u64], n: u64) -> Vec<u64> {
        a.iter().map(|r| r.iter().zip(x).fold(0, |acc, (p, q)| (acc + p * q) % n)).collect()
    }

    #[test]
    fn solves_small_system_mod_6() {
        let a = vec![vec![2, 3], vec![4, 0], vec![0, 3]];
        let s = ModularSolver::new(a.clone(), 2, 6);
        let b = mat_vec(&a, &[1, 1], 6);
        let x = s.solve(&b).unwrap();
        assert_eq!(mat_vec(&a, &x, 6), b);
        assert!(s.solve(&[1, 0, 0]).is_none());
    }

    #[test]
    fn signature_separates_classes() {
        let a = vec![vec![2], vec![0]];
        let s = ModularSolver::new(a, 1, 4);
        assert_eq!(s.class_signature(&[0, 0]), s.class_signature(&[2, 0]));
        assert_ne!(s.class_signature(&[1, 0]), s.class_signature(&[0, 0]));
        assert_ne!(s.class_signature(&[0, 1]), s.class_signature(&[0, 0]));
    }
}
