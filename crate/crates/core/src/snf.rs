//! Exact integer linear algebra: Smith normal form with unimodular
//! transforms, lattice kernels and linear Diophantine solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x.into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    /// Replaces rows (a, b) by (x·a + y·b, -(b₀/g)·a + (a₀/g)·b), a unimodular step.
    fn combine_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let ra = self.data[a * self.cols + j].clone();
            let rb = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = x * &ra + y * &rb;
            self.data[b * self.cols + j] = u * &ra + v * &rb;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for i in 0..self.rows {
            let ca = self.data[i * self.cols + a].clone();
            let cb = self.data[i * self.cols + b].clone();
            self.data[i * self.cols + a] = x * &ca + y * &cb;
            self.data[i * self.cols + b] = u * &ca + v * &cb;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `left · A · right = diag(diagonal)`.
#[derive(Debug, Clone)]
pub struct SnfResult {
    /// `d₁ | d₂ | …`, all nonnegative, length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    /// Rank of the matrix (number of nonzero invariant factors).
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Extended gcd with `g = x·a + y·b`, `g ≥ 0`.
fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Exact Smith normal form. The transform identity is checked before returning.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // pivot: any nonzero entry in the remaining block
        let Some((pi, pj)) = (t..m).flat_map(|i| (t..n).map(move |j| (i, j))).find(|&(i, j)| !d[(i, j)].is_zero()) else {
            break;
        };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);
        loop {
            let mut changed = false;
            // clear column t below the pivot with gcd steps
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let (p, q) = (d[(t, t)].clone(), d[(i, t)].clone());
                if q.is_multiple_of(&p) {
                    let k = -(&q / &p);
                    d.add_row(i, t, &k);
                    left.add_row(i, t, &k);
                } else {
                    let (g, x, y) = xgcd(&p, &q);
                    let u = -(&q / &g);
                    let v = &p / &g;
                    d.combine_rows(t, i, &x, &y, &u, &v);
                    left.combine_rows(t, i, &x, &y, &u, &v);
                }
                changed = true;
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let (p, q) = (d[(t, t)].clone(), d[(t, j)].clone());
                if q.is_multiple_of(&p) {
                    let k = -(&q / &p);
                    d.add_col(j, t, &k);
                    right.add_col(j, t, &k);
                } else {
                    let (g, x, y) = xgcd(&p, &q);
                    let u = -(&q / &g);
                    let v = &p / &g;
                    d.combine_cols(t, j, &x, &y, &u, &v);
                    right.combine_cols(t, j, &x, &y, &u, &v);
                }
                changed = true;
            }
            if changed {
                continue;
            }
            // divisibility: pivot must divide the rest of the block
            let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    debug_assert!(diagonal.windows(2).all(|w| w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && w[1].is_multiple_of(&w[0])));
    let check = left.mul(a).mul(&right);
    assert_eq!(check, d, "Smith normal form transform identity failed");
    SnfResult { diagonal, left, right }
}

/// Invariants of a finitely generated abelian group: free rank plus sorted torsion divisors (> 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".into() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Invariants of `Z^cols / rowspace(relations)`.
pub fn abelian_invariants(relations: &IntMatrix) -> AbelianInvariants {
    let n = relations.cols;
    let s = snf(relations);
    let rank = n - s.rank();
    let torsion =
        s.diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()).map(|d| u64::try_from(d).expect("torsion divisor fits in u64")).collect();
    AbelianInvariants { rank, torsion }
}

/// Basis (as rows) of the integer kernel `{x : A x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = snf(a);
    let r = s.rank();
    (r..a.cols).map(|j| s.right.column(j)).collect()
}

/// Some integer solution of `A x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let s = snf(a);
    let ub = s.left.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, c) in ub.iter().enumerate() {
        let d = s.diagonal.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            if !c.is_multiple_of(&d) {
                return None;
            }
            y[i] = c / &d;
        }
    }
    Some(s.right.mul_vec(&y))
}

/// Row-style Hermite basis of the lattice spanned by `rows`: echelon, positive pivots.
pub fn lattice_basis(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pending: Vec<Vec<BigInt>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    while let Some(mut v) = pending.pop() {
        while let Some(p) = v.iter().position(|x| !x.is_zero()) {
            match pivots.iter().position(|&q| q == p) {
                None => {
                    if v[p].is_negative() {
                        v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    basis.push(v);
                    pivots.push(p);
                    break;
                }
                Some(k) => {
                    let (a, c) = (basis[k][p].clone(), v[p].clone());
                    if c.is_multiple_of(&a) {
                        let q = &c / &a;
                        for j in 0..dim {
                            let t = &basis[k][j] * &q;
                            v[j] -= t;
                        }
                    } else {
                        let (_, x, y) = xgcd(&a, &c);
                        let new: Vec<BigInt> = (0..dim).map(|j| &x * &basis[k][j] + &y * &v[j]).collect();
                        let old = std::mem::replace(&mut basis[k], new);
                        pending.push(old);
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let mut out: Vec<Vec<BigInt>> = order.iter().map(|&i| basis[i].clone()).collect();
    let piv: Vec<usize> = order.iter().map(|&i| pivots[i]).collect();
    // Hermite reduction of the entries above each pivot
    for i in 0..out.len() {
        let p = piv[i];
        for k in 0..i {
            let q = out[k][p].div_floor(&out[i][p]);
            if !q.is_zero() {
                for j in 0..dim {
                    let t = &out[i][j] * &q;
                    out[k][j] -= t;
                }
            }
        }
    }
    out
}
