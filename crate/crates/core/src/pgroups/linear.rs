//! Linear actions over Z and F_p: unipotence and the matrix power lemma.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::json;

use super::{is_prime, PGroupError};
use crate::report::{Verdict, VerificationRecord};
use crate::snf::lattice_basis;

/// Square matrix over `F_p` with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    n: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn new(p: u64, rows: &[Vec<i64>]) -> Result<Self, PGroupError> {
        if !is_prime(p) {
            return Err(PGroupError::NotPrime(p));
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PGroupError::BadMatrix("matrix is not square".into()));
        }
        let data = rows.iter().flatten().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        Ok(FpMatrix { p, n, data })
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1 % p;
        }
        FpMatrix { p, n, data }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.iter().map(|&x| x as i64).collect()).collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.p, self.n), (other.p, other.n));
        let n = self.n;
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] = (data[i * n + j] + a * other.data[k * n + j]) % self.p;
                }
            }
        }
        FpMatrix { p: self.p, n, data }
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut out = FpMatrix::identity(self.p, self.n);
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        out
    }

    pub fn minus_identity(&self) -> FpMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] = (out.data[i * self.n + i] + self.p - 1) % self.p;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == FpMatrix::identity(self.p, self.n)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self.rows().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        span(Ring::Mod(self.p), rows, self.n).len()
    }

    /// Least `n ≥ 1` with `(A − I)ⁿ = 0`, if any.
    pub fn unipotency_index(&self) -> Option<usize> {
        let nil = self.minus_identity();
        let mut power = nil.clone();
        for k in 1..=self.n.max(1) {
            if power.is_zero() {
                return Some(k);
            }
            power = power.mul(&nil);
        }
        None
    }
}

/// `A^{p^k} = I` for the least `p^k ≥ n`, where `(A − I)ⁿ = 0`.
pub fn check_power_lemma_matrix(a: &FpMatrix) -> VerificationRecord {
    let mut rec = VerificationRecord::new("power_lemma_matrix", &format!("{}x{} over F_{}", a.n, a.n, a.p));
    let Some(n) = a.unipotency_index() else {
        rec.hypothesis("A - I nilpotent", false);
        return rec.conclude(Verdict::Inapplicable);
    };
    rec.hypothesis("A - I nilpotent", true);
    let (mut k, mut q) = (0u32, 1u64);
    while (q as usize) < n {
        k += 1;
        q *= a.p;
    }
    let ok = a.pow(q).is_identity();
    rec.with_witness(json!({ "n": n, "k": k, "p_power": q })).check(ok)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Integers,
    Mod(u64),
}

/// Action of a finitely generated group on `R^dim`, one matrix per generator
/// acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearAction {
    ring: Ring,
    dim: usize,
    matrices: Vec<Vec<Vec<i64>>>,
}

fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if piv != k {
            a.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * prev
}

impl LinearAction {
    pub fn new(ring: Ring, dim: usize, matrices: Vec<Vec<Vec<i64>>>) -> Result<Self, PGroupError> {
        if let Ring::Mod(p) = ring {
            if !is_prime(p) {
                return Err(PGroupError::NotPrime(p));
            }
        }
        let mut reduced = Vec::with_capacity(matrices.len());
        for m in matrices {
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(PGroupError::BadMatrix(format!("expected {dim}x{dim}")));
            }
            let m = match ring {
                Ring::Integers => m,
                Ring::Mod(p) => m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p as i64)).collect()).collect(),
            };
            let det = determinant(&m);
            let invertible = match ring {
                Ring::Integers => det.abs().is_one(),
                Ring::Mod(p) => !det.mod_floor(&BigInt::from(p)).is_zero(),
            };
            if !invertible {
                return Err(PGroupError::NotAutomorphism("matrix is not invertible over the ring".into()));
            }
            reduced.push(m);
        }
        Ok(LinearAction { ring, dim, matrices: reduced })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[Vec<Vec<i64>>] {
        &self.matrices
    }

    /// The same matrices reduced mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<LinearAction, PGroupError> {
        LinearAction::new(Ring::Mod(p), self.dim, self.matrices.clone())
    }
}

/// Canonical basis of the submodule spanned by `rows`.
fn span(ring: Ring, rows: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    match ring {
        Ring::Integers => lattice_basis(&rows, dim),
        Ring::Mod(p) => {
            let p = BigInt::from(p);
            let mut rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.iter().map(|x| x.mod_floor(&p)).collect()).collect();
            let mut out: Vec<Vec<BigInt>> = Vec::new();
            let mut col = 0;
            while col < dim && !rows.is_empty() {
                if let Some(i) = rows.iter().position(|r| !r[col].is_zero()) {
                    let mut r = rows.swap_remove(i);
                    let inv = r[col].modpow(&(&p - 2u32), &p);
                    r.iter_mut().for_each(|x| *x = (&*x * &inv).mod_floor(&p));
                    for other in rows.iter_mut().chain(out.iter_mut()) {
                        let f = other[col].clone();
                        if !f.is_zero() {
                            for j in 0..dim {
                                other[j] = (&other[j] - &f * &r[j]).mod_floor(&p);
                            }
                        }
                    }
                    out.push(r);
                }
                rows.retain(|r| r.iter().any(|x| !x.is_zero()));
                col += 1;
            }
            out
        }
    }
}

fn apply(m: &[Vec<i64>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| row.iter().zip(v).map(|(&a, x)| x * a).sum()).collect()
}

fn minus_identity_apply(m: &[Vec<i64>], v: &[BigInt]) -> Vec<BigInt> {
    apply(m, v).into_iter().zip(v).map(|(a, x)| a - x).collect()
}

/// Smallest submodule containing `basis`.
fn module_closure(action: &LinearAction, mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    loop {
        let mut rows = basis.clone();
        for m in &action.matrices {
            rows.extend(basis.iter().map(|b| apply(m, b)));
        }
        let next = span(action.ring, rows, action.dim);
        if next == basis {
            return basis;
        }
        basis = next;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unipotence {
    pub unipotent: bool,
    /// Least `m` with every `m`-fold product `(α(g₁) − id)⋯(α(g_m) − id)` zero.
    pub m: Option<usize>,
    /// Ranks of `V ⊇ V₁ ⊇ …`, where `V_{k+1}` is the submodule generated by
    /// `(α(s) − id)V_k` over the acting generators `s`.
    pub ranks: Vec<usize>,
}

pub fn is_unipotent_action(action: &LinearAction) -> Unipotence {
    let dim = action.dim;
    let mut cur: Vec<Vec<BigInt>> =
        (0..dim).map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut ranks = vec![dim];
    let mut m = 0;
    loop {
        if cur.is_empty() {
            return Unipotence { unipotent: true, m: Some(m.max(1)), ranks };
        }
        let rows: Vec<Vec<BigInt>> = action.matrices.iter().flat_map(|a| cur.iter().map(move |b| minus_identity_apply(a, b))).collect();
        let next = module_closure(action, span(action.ring, rows, dim));
        m += 1;
        ranks.push(next.len());
        // a step that keeps the rank never reaches zero, also over Q
        if next.len() == cur.len() {
            return Unipotence { unipotent: false, m: None, ranks };
        }
        cur = next;
    }
}

/// A unipotent action over Z stays unipotent mod each `p`, with no larger `m`.
pub fn unipotent_mod_p_transfer(action: &LinearAction, primes: &[u64], instance: &str) -> VerificationRecord {
    let mut rec = VerificationRecord::new("unipotent_mod_p_transfer", instance);
    rec.hypothesis("action over Z", action.ring == Ring::Integers);
    let over_z = is_unipotent_action(action);
    if !rec.hypothesis("unipotent over Z", over_z.unipotent) || !rec.hypotheses_hold() {
        return rec.conclude(Verdict::Inapplicable);
    }
    let m = over_z.m.unwrap();
    let mut per_prime = serde_json::Map::new();
    let mut ok = true;
    for &p in primes {
        match action.reduce_mod(p).map(|a| is_unipotent_action(&a)) {
            Ok(u) => {
                ok &= u.unipotent && u.m.is_some_and(|mp| mp <= m);
                per_prime.insert(p.to_string(), json!(u.m));
            }
            Err(_) => {
                ok = false;
                per_prime.insert(p.to_string(), serde_json::Value::Null);
            }
        }
    }
    rec.with_witness(json!({ "m": m, "m_mod_p": per_prime })).check(ok)
}
