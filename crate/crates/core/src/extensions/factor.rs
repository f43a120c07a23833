//! Extensions `1 → N → G → Q → 1` of a nilpotent pc group by a finite group
//! given by an action and a factor set, and the search for torsion in them.
//!
//! An element `(x, q)` stands for `x·t(q)` where `t` is a fixed transversal, and
//! `(x₁, q₁)(x₂, q₂) = (x₁·(q₁▷x₂)·f(q₁, q₂), q₁q₂)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::ExtensionError;
use crate::finite::FiniteGroup;
use crate::nilpotent::{torsion_subgroup, ExpVec, PcPresentation};
use crate::par::{self, Execution};
use crate::pgroups::Automorphism;
use crate::snf::{kernel_basis, lattice_basis, solve, IntMatrix};

/// Cocycle identities are checked on all triples up to this quotient order.
pub const COCYCLE_CHECK_LIMIT: usize = 720;

pub type Element = (ExpVec, usize);

#[derive(Debug, Clone)]
pub struct ExtensionWithFactorSet {
    pub name: String,
    kernel: PcPresentation,
    quotient: FiniteGroup,
    labels: Vec<String>,
    transversal: Vec<String>,
    actions: Vec<Automorphism>,
    factor_set: Vec<ExpVec>,
}

impl ExtensionWithFactorSet {
    /// `labels` and `transversal` describe each element of `quotient`; `actions[q]`
    /// is conjugation by `t(q)` and `factor_set[q₁·|Q| + q₂]` is `f(q₁, q₂)`.
    pub fn new(
        name: &str,
        kernel: PcPresentation,
        quotient: FiniteGroup,
        labels: Vec<String>,
        transversal: Vec<String>,
        actions: Vec<Automorphism>,
        factor_set: Vec<ExpVec>,
    ) -> Result<Self, ExtensionError> {
        let n = quotient.order();
        if labels.len() != n || transversal.len() != n || actions.len() != n || factor_set.len() != n * n {
            return Err(ExtensionError::Dimension(format!("quotient of order {n}")));
        }
        if actions.iter().any(|a| a.images().len() != kernel.len()) || factor_set.iter().any(|f| f.len() != kernel.len()) {
            return Err(ExtensionError::Dimension(format!("kernel of length {}", kernel.len())));
        }
        let e = ExtensionWithFactorSet { name: name.into(), kernel, quotient, labels, transversal, actions, factor_set };
        e.validate()?;
        Ok(e)
    }

    /// A finite group seen as an extension with trivial kernel.
    pub fn from_finite_group(name: &str, group: FiniteGroup) -> Self {
        let kernel = PcPresentation::new_unchecked(Vec::new(), Default::default(), Default::default(), 1).expect("trivial pc");
        let n = group.order();
        ExtensionWithFactorSet {
            name: name.into(),
            actions: vec![Automorphism::identity(&kernel); n],
            factor_set: vec![Vec::new(); n * n],
            labels: (0..n).map(|q| format!("q{q}")).collect(),
            transversal: (0..n).map(|q| format!("t(q{q})")).collect(),
            kernel,
            quotient: group,
        }
    }

    fn validate(&self) -> Result<(), ExtensionError> {
        let pc = &self.kernel;
        let n = self.quotient.order();
        let id = pc.identity();
        if !self.actions[0].is_identity(pc) || (0..n).any(|q| self.factor(0, q) != &id || self.factor(q, 0) != &id) {
            return Err(ExtensionError::NotNormalized);
        }
        for q1 in 0..n {
            for q2 in 0..n {
                let q12 = self.qmul(q1, q2);
                let f = self.factor(q1, q2);
                let f_inv = pc.inverse(f);
                for g in 0..pc.len() {
                    let x = pc.unit(g);
                    let lhs = self.act(q1, &self.act(q2, &x));
                    let rhs = pc.mul(&pc.mul(f, &self.act(q12, &x)), &f_inv);
                    if lhs != rhs {
                        return Err(ExtensionError::Compatibility((q1, q2)));
                    }
                }
            }
        }
        if n <= COCYCLE_CHECK_LIMIT {
            let bad = par::map_range(Execution::default(), n, |q1| {
                for q2 in 0..n {
                    for q3 in 0..n {
                        let lhs = pc.mul(self.factor(q1, q2), self.factor(self.qmul(q1, q2), q3));
                        let rhs = pc.mul(&self.act(q1, self.factor(q2, q3)), self.factor(q1, self.qmul(q2, q3)));
                        if lhs != rhs {
                            return Some((q1, q2, q3));
                        }
                    }
                }
                None
            });
            if let Some(t) = bad.into_iter().flatten().next() {
                return Err(ExtensionError::Cocycle(t));
            }
        }
        Ok(())
    }

    fn qmul(&self, a: usize, b: usize) -> usize {
        self.quotient.mul(a as u32, b as u32) as usize
    }

    pub fn kernel(&self) -> &PcPresentation {
        &self.kernel
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn label(&self, q: usize) -> &str {
        &self.labels[q]
    }

    pub fn transversal(&self, q: usize) -> &str {
        &self.transversal[q]
    }

    pub fn actions(&self) -> &[Automorphism] {
        &self.actions
    }

    pub fn act(&self, q: usize, x: &[i64]) -> ExpVec {
        self.actions[q].apply(&self.kernel, x)
    }

    pub fn factor(&self, q1: usize, q2: usize) -> &ExpVec {
        &self.factor_set[q1 * self.quotient.order() + q2]
    }

    pub fn identity(&self) -> Element {
        (self.kernel.identity(), 0)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let pc = &self.kernel;
        let mut x = pc.mul(&a.0, &self.act(a.1, &b.0));
        pc.mul_assign(&mut x, self.factor(a.1, b.1));
        (x, self.qmul(a.1, b.1))
    }

    pub fn pow(&self, a: &Element, e: u64) -> Element {
        let mut out = self.identity();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// Order of `a` when finite; `a` has finite order iff `a^{|q|} = 1`.
    pub fn element_order(&self, a: &Element) -> Option<u64> {
        let d = self.quotient.element_order(a.1 as u32);
        let id = self.identity();
        (self.pow(a, d) == id).then_some(d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    /// Largest element order whose kernel fibres are enumerated.
    pub coordinate_bound: u64,
    /// Most candidates kept at a single layer.
    pub max_branches: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { coordinate_bound: 16, max_branches: 1 << 16 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionVerdict {
    TorsionFree,
    Torsion,
    Inconclusive,
}

impl std::fmt::Display for TorsionVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TorsionVerdict::TorsionFree => "torsion_free",
            TorsionVerdict::Torsion => "torsion",
            TorsionVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// An element `(solution, coset)` of finite order `order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionWitness {
    pub order: u64,
    pub coset: String,
    pub solution: ExpVec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub group: String,
    /// Primes dividing `|Q|`.
    pub primes: Vec<u64>,
    pub witnesses: Vec<TorsionWitness>,
    pub lcm_lower_bound: u64,
    pub verdict: TorsionVerdict,
    pub bounds: SearchBounds,
}

pub fn torsion_search(e: &ExtensionWithFactorSet) -> Result<TorsionReport, ExtensionError> {
    torsion_search_with(e, SearchBounds::default(), Execution::default())
}

/// Decides whether `G` has torsion. For each conjugacy class of `Q` of order
/// `d > 1`, the equation `(h, q)^d = 1` is solved one weight layer of `N` at a
/// time; on a layer it is affine with linear part `Σ Aⁱ`, and solutions only
/// matter modulo the image of `I − A`, which contains `d·ker Σ Aⁱ`.
pub fn torsion_search_with(e: &ExtensionWithFactorSet, bounds: SearchBounds, exec: Execution) -> Result<TorsionReport, ExtensionError> {
    let pc = &e.kernel;
    let layers = weight_layers(e)?;
    let reps: Vec<u32> = e.quotient.class_representatives().into_iter().filter(|&q| q != 0).collect();
    let outcomes = par::map(exec, &reps, |&q| {
        let d = e.quotient.element_order(q);
        let search = LayerSearch { e, q: q as usize, d, layers: &layers, bounds };
        (q, d, search.run((pc.identity(), q as usize), 0))
    });
    let mut witnesses = Vec::new();
    let mut inconclusive = false;
    for (q, d, outcome) in outcomes {
        match outcome {
            Ok(Some(h)) => witnesses.push(TorsionWitness { order: d, coset: e.labels[q as usize].clone(), solution: h }),
            Ok(None) => {}
            Err(()) => inconclusive = true,
        }
    }
    let verdict = if !witnesses.is_empty() {
        TorsionVerdict::Torsion
    } else if inconclusive {
        TorsionVerdict::Inconclusive
    } else {
        TorsionVerdict::TorsionFree
    };
    let lcm_lower_bound = witnesses.iter().fold(1u64, |acc, w| acc.lcm(&w.order));
    Ok(TorsionReport {
        group: e.name.clone(),
        primes: prime_divisors(e.quotient.order() as u64),
        witnesses,
        lcm_lower_bound,
        verdict,
        bounds,
    })
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Index sets of the weight layers of the kernel, after checking that the
/// kernel is torsion-free with infinite relative orders and that every
/// action preserves the weight filtration.
fn weight_layers(e: &ExtensionWithFactorSet) -> Result<Vec<Vec<usize>>, ExtensionError> {
    let pc = &e.kernel;
    let n = pc.len();
    if (0..n).any(|i| pc.relative_order(i) != 0) || !torsion_subgroup(pc).is_torsion_free {
        return Err(ExtensionError::KernelTorsion);
    }
    if (1..n).any(|i| pc.weight(i) < pc.weight(i - 1)) {
        return Err(ExtensionError::Dimension("kernel generators must be sorted by weight".into()));
    }
    for a in e.actions.iter() {
        for (i, img) in a.images().iter().enumerate() {
            if (0..n).any(|j| pc.weight(j) < pc.weight(i) && img[j] != 0) {
                return Err(ExtensionError::LayerNotPreserved);
            }
        }
    }
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match layers.last_mut() {
            Some(l) if pc.weight(l[0]) == pc.weight(i) => l.push(i),
            _ => layers.push(vec![i]),
        }
    }
    Ok(layers)
}

struct LayerSearch<'a> {
    e: &'a ExtensionWithFactorSet,
    q: usize,
    d: u64,
    layers: &'a [Vec<usize>],
    bounds: SearchBounds,
}

impl LayerSearch<'_> {
    fn power(&self, h: &ExpVec) -> ExpVec {
        self.e.pow(&(h.clone(), self.q), self.d).0
    }

    /// `Ok(Some(h))` for a solution extending `h`, `Ok(None)` if there is none,
    /// `Err(())` if a bound was hit.
    fn run(&self, start: Element, layer: usize) -> Result<Option<ExpVec>, ()> {
        let pc = &self.e.kernel;
        let h = start.0;
        if layer == self.layers.len() {
            return Ok((self.power(&h) == pc.identity()).then_some(h));
        }
        let idx = &self.layers[layer];
        let k = idx.len();
        let base = self.power(&h);
        let c: Vec<BigInt> = idx.iter().map(|&j| BigInt::from(base[j])).collect();
        let mut m = IntMatrix::zeros(k, k);
        let mut ia = Vec::with_capacity(k);
        for (col, &j) in idx.iter().enumerate() {
            let pj = self.power(&pc.mul(&h, &pc.unit(j)));
            for (row, &i) in idx.iter().enumerate() {
                m[(row, col)] = BigInt::from(pj[i] - base[i]);
            }
            let aj = self.e.act(self.q, &pc.unit(j));
            ia.push(idx.iter().map(|&i| BigInt::from(pc.unit(j)[i] - aj[i])).collect::<Vec<_>>());
        }
        let rhs: Vec<BigInt> = c.iter().map(|x| -x).collect();
        let Some(z0) = solve(&m, &rhs) else { return Ok(None) };
        let kernel = kernel_basis(&m);
        let image = lattice_basis(&ia, k);
        if !kernel.is_empty() && self.d > self.bounds.coordinate_bound {
            return Err(());
        }
        let branches = (self.d as u128).checked_pow(kernel.len() as u32).unwrap_or(u128::MAX);
        if branches > self.bounds.max_branches as u128 {
            return Err(());
        }
        let mut candidates = BTreeSet::new();
        for t in 0..branches as u64 {
            let mut v = z0.clone();
            let mut rest = t;
            for b in &kernel {
                let lambda = BigInt::from(rest % self.d);
                rest /= self.d;
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &lambda * y;
                }
            }
            candidates.insert(reduce(v, &image));
        }
        let mut inconclusive = false;
        for v in candidates {
            let mut step = pc.identity();
            for (&j, x) in idx.iter().zip(&v) {
                step[j] = x.to_i64().ok_or(())?;
            }
            match self.run((pc.mul(&h, &step), self.q), layer + 1) {
                Ok(Some(found)) => return Ok(Some(found)),
                Ok(None) => {}
                Err(()) => inconclusive = true,
            }
        }
        if inconclusive {
            Err(())
        } else {
            Ok(None)
        }
    }
}

/// Canonical representative of `v` modulo a Hermite basis.
fn reduce(mut v: Vec<BigInt>, basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    for b in basis {
        let p = b.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
        let q = v[p].div_floor(&b[p]);
        if !q.is_zero() {
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &q * y;
            }
        }
    }
    v
}

/// All elements `(h, q)` with `q ≠ 1`, `|hᵢ| ≤ bound`, of finite order.
pub fn brute_force_torsion(e: &ExtensionWithFactorSet, bound: i64, exec: Execution) -> Vec<Element> {
    let dim = e.kernel.len();
    let side = (2 * bound + 1) as usize;
    let count = side.pow(dim as u32);
    let found = par::map_range(exec, e.quotient.order() - 1, |q| {
        let q = q + 1;
        let mut out = Vec::new();
        for t in 0..count {
            let mut rest = t;
            let h: ExpVec = (0..dim)
                .map(|_| {
                    let x = (rest % side) as i64 - bound;
                    rest /= side;
                    x
                })
                .collect();
            let a = (h, q);
            if e.element_order(&a).is_some() {
                out.push(a);
            }
        }
        out
    });
    found.into_iter().flatten().collect()
}

/// Least common multiple of the orders of finite-order elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcmReport {
    pub group: String,
    pub lcm: u64,
    /// True when `lcm` is the exact value rather than a lower bound.
    pub exact: bool,
}

/// With trivial kernel `G = Q` is finite and the value reported is `|G|`;
/// otherwise the lcm of the witness orders, exact when `G` is torsion-free.
pub fn lcm_report(e: &ExtensionWithFactorSet, report: &TorsionReport) -> Result<LcmReport, ExtensionError> {
    if e.kernel.is_empty() {
        return Ok(LcmReport { group: e.name.clone(), lcm: e.quotient.order() as u64, exact: true });
    }
    match report.verdict {
        TorsionVerdict::Inconclusive => Err(ExtensionError::Inconclusive),
        TorsionVerdict::TorsionFree => Ok(LcmReport { group: e.name.clone(), lcm: 1, exact: true }),
        TorsionVerdict::Torsion => Ok(LcmReport { group: e.name.clone(), lcm: report.lcm_lower_bound, exact: false }),
    }
}
