//! Weighted polycyclic presentations along a central series, with collection
//! from the left.
//!
//! Generators `g₀, …, g₍ₙ₋₁₎` carry nondecreasing weights. Each subgroup
//! `Gᵢ = ⟨gᵢ, …⟩` is normal and `Gⱼ/Gⱼ₊₁` is central in `G/Gⱼ₊₁`, so
//! `[gⱼ, gᵢ]` lies in `Gⱼ₊₁` for `i < j` and `gᵢ^{mᵢ}` lies in `Gᵢ₊₁`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::{self, Execution};

/// Exponent vector of a normal word `g₀^{e₀} ⋯ g₍ₙ₋₁₎^{e₍ₙ₋₁₎}`.
pub type ExpVec = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcGenerator {
    pub id: String,
    pub weight: usize,
    /// Relative order; 0 means infinite.
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcError {
    #[error("weights must be positive and nondecreasing (generator {0})")]
    BadWeights(usize),
    #[error("relative order 1 is not allowed (generator {0})")]
    TrivialOrder(usize),
    #[error("relation for {relation} is not a normal word in generators beyond index {min}")]
    BadRhs { relation: String, min: usize },
    #[error("relation refers to unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("power relation given for generator {0} of infinite order")]
    PowerOfInfinite(usize),
    #[error("commutator key {0:?} must be \"gj,gi\" with i < j")]
    BadCommutatorKey(String),
    #[error("presentation is inconsistent: overlap {0} collects two ways")]
    Inconsistent(String),
    #[error("class {class} is smaller than the largest weight {weight}")]
    BadClass { class: usize, weight: usize },
    #[error("duplicate generator id {0:?}")]
    DuplicateId(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Consistent polycyclic presentation of a nilpotent group.
#[derive(Debug, Clone)]
pub struct PcPresentation {
    gens: Vec<PcGenerator>,
    powers: Vec<Option<ExpVec>>,
    /// `comms[j][i]` is `[gⱼ, gᵢ]` for `i < j`.
    comms: Vec<Vec<ExpVec>>,
    class: usize,
    /// `conj[i][j] = gᵢ⁻¹ gⱼ gᵢ` for `j > i`.
    conj: Vec<Vec<ExpVec>>,
    /// `conj_inv[i][j] = gᵢ gⱼ gᵢ⁻¹` for `j > i`.
    conj_inv: Vec<Vec<ExpVec>>,
    /// `central[i][j]` iff `gᵢ` and `gⱼ` commute.
    central: Vec<Vec<bool>>,
    power_inv: Vec<Option<ExpVec>>,
}

impl PartialEq for PcPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.powers == other.powers && self.comms == other.comms && self.class == other.class
    }
}

impl Eq for PcPresentation {}

impl PcPresentation {
    /// Builds and checks a presentation. Missing commutators are trivial and
    /// missing power relations of finite-order generators are `gᵢ^{mᵢ} = 1`.
    pub fn new(
        gens: Vec<PcGenerator>,
        powers: BTreeMap<usize, ExpVec>,
        comms: BTreeMap<(usize, usize), ExpVec>,
        class: usize,
    ) -> Result<Self, PcError> {
        let pc = Self::new_unchecked(gens, powers, comms, class)?;
        pc.check_consistency(Execution::default())?;
        Ok(pc)
    }

    /// As [`PcPresentation::new`] without the overlap test; callers must
    /// construct consistent presentations.
    pub(crate) fn new_unchecked(
        gens: Vec<PcGenerator>,
        powers: BTreeMap<usize, ExpVec>,
        comms: BTreeMap<(usize, usize), ExpVec>,
        class: usize,
    ) -> Result<Self, PcError> {
        let n = gens.len();
        let mut seen = std::collections::HashSet::new();
        let mut prev = 1;
        for (i, g) in gens.iter().enumerate() {
            if g.weight < prev {
                return Err(PcError::BadWeights(i));
            }
            prev = g.weight;
            if g.order == 1 {
                return Err(PcError::TrivialOrder(i));
            }
            if !seen.insert(g.id.clone()) {
                return Err(PcError::DuplicateId(g.id.clone()));
            }
        }
        if n > 0 && class < prev {
            return Err(PcError::BadClass { class, weight: prev });
        }
        let normal_beyond = |v: &ExpVec, min: usize| {
            v.len() == n
                && v.iter().enumerate().all(|(k, &e)| (e == 0 || k > min) && (gens[k].order == 0 || (0..gens[k].order as i64).contains(&e)))
        };
        let mut power_vec = vec![None; n];
        for (i, g) in gens.iter().enumerate() {
            if g.order > 0 {
                power_vec[i] = Some(vec![0; n]);
            }
        }
        for (i, v) in powers {
            if i >= n {
                return Err(PcError::UnknownGenerator(i.to_string()));
            }
            if gens[i].order == 0 {
                return Err(PcError::PowerOfInfinite(i));
            }
            if !normal_beyond(&v, i) {
                return Err(PcError::BadRhs { relation: format!("{}^{}", gens[i].id, gens[i].order), min: i });
            }
            power_vec[i] = Some(v);
        }
        let mut comm_vec: Vec<Vec<ExpVec>> = (0..n).map(|j| vec![vec![0; n]; j]).collect();
        for ((j, i), v) in comms {
            if i >= j || j >= n {
                return Err(PcError::BadCommutatorKey(format!("{j},{i}")));
            }
            if !normal_beyond(&v, j) {
                return Err(PcError::BadRhs { relation: format!("[{},{}]", gens[j].id, gens[i].id), min: j });
            }
            comm_vec[j][i] = v;
        }
        let mut pc = PcPresentation {
            central: (0..n)
                .map(|i| (0..n).map(|j| i == j || comm_vec[i.max(j)].get(i.min(j)).is_none_or(|c| is_zero(c))).collect())
                .collect(),
            gens,
            powers: power_vec,
            comms: comm_vec,
            class: if n == 0 { class.max(1) } else { class },
            conj: vec![Vec::new(); n],
            conj_inv: vec![Vec::new(); n],
            power_inv: vec![None; n],
        };
        pc.build_tables();
        Ok(pc)
    }

    fn build_tables(&mut self) {
        let n = self.len();
        for i in (0..n).rev() {
            self.conj[i] = vec![Vec::new(); n];
            self.conj_inv[i] = vec![Vec::new(); n];
            for j in i + 1..n {
                let mut v = self.comms[j][i].clone();
                v[j] += 1;
                self.conj[i][j] = v;
            }
            for j in (i + 1..n).rev() {
                // gᵢ gⱼ gᵢ⁻¹ = gⱼ · φ⁻¹(c⁻¹) where φ is conjugation by gᵢ and c = [gⱼ, gᵢ]
                let c_inv = self.inverse(&self.comms[j][i]);
                let mut pulled = self.identity();
                for k in j + 1..n {
                    if c_inv[k] != 0 {
                        let t = self.pow(&self.conj_inv[i][k], c_inv[k]);
                        pulled = self.mul(&pulled, &t);
                    }
                }
                let mut v = self.unit(j);
                self.mul_assign(&mut v, &pulled);
                self.conj_inv[i][j] = v;
            }
            if let Some(r) = &self.powers[i] {
                self.power_inv[i] = Some(self.inverse(r));
            }
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[PcGenerator] {
        &self.gens
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn relative_order(&self, i: usize) -> u64 {
        self.gens[i].order
    }

    pub fn weight(&self, i: usize) -> usize {
        self.gens[i].weight
    }

    pub fn power_relation(&self, i: usize) -> Option<&ExpVec> {
        self.powers[i].as_ref()
    }

    /// `[gⱼ, gᵢ]` for `i < j`.
    pub fn commutator_relation(&self, j: usize, i: usize) -> &ExpVec {
        &self.comms[j][i]
    }

    pub fn is_finite(&self) -> bool {
        self.gens.iter().all(|g| g.order > 0)
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<u128> {
        self.gens.iter().try_fold(1u128, |acc, g| if g.order == 0 { None } else { acc.checked_mul(g.order as u128) })
    }

    pub fn identity(&self) -> ExpVec {
        vec![0; self.len()]
    }

    pub fn unit(&self, i: usize) -> ExpVec {
        let mut v = self.identity();
        v[i] = 1;
        v
    }

    /// Is `v` a normal form (entries within relative orders)?
    pub fn is_normal(&self, v: &[i64]) -> bool {
        v.len() == self.len() && v.iter().zip(&self.gens).all(|(&e, g)| g.order == 0 || (0..g.order as i64).contains(&e))
    }

    /// `x ← x · gₖ^e`.
    pub fn mul_gen_pow(&self, x: &mut [i64], k: usize, e: i64) {
        if e == 0 {
            return;
        }
        let n = self.len();
        let tail_nonzero = x[k + 1..].iter().any(|&t| t != 0);
        let mut tail: Option<ExpVec> = None;
        if tail_nonzero {
            let commutes = (k + 1..n).all(|j| x[j] == 0 || self.central[k][j]);
            if !commutes {
                let mut t = self.identity();
                t[k + 1..].copy_from_slice(&x[k + 1..]);
                x[k + 1..].iter_mut().for_each(|v| *v = 0);
                // gₖ^{-e} T gₖ^{e}
                let table = if e > 0 { &self.conj[k] } else { &self.conj_inv[k] };
                for _ in 0..e.unsigned_abs() {
                    t = self.apply_table(table, &t, k);
                }
                tail = Some(t);
            }
        }
        let m = self.gens[k].order;
        let new = x[k].checked_add(e).expect("exponent overflow");
        if m == 0 || (0..m as i64).contains(&new) {
            x[k] = new;
            if let Some(t) = tail {
                x[k + 1..].copy_from_slice(&t[k + 1..]);
            }
            return;
        }
        let m = m as i64;
        let q = new.div_euclid(m);
        x[k] = new.rem_euclid(m);
        let carry = if q > 0 {
            self.pow(self.powers[k].as_ref().expect("finite order has a power relation"), q)
        } else {
            self.pow(self.power_inv[k].as_ref().expect("finite order has a power relation"), -q)
        };
        let t = match tail {
            Some(t) => self.mul(&carry, &t),
            None => {
                let mut t = self.identity();
                t[k + 1..].copy_from_slice(&x[k + 1..]);
                self.mul(&carry, &t)
            }
        };
        x[k + 1..].copy_from_slice(&t[k + 1..]);
    }

    /// Image of `t` (supported beyond `k`) under the automorphism whose
    /// values on generators are listed in `table`.
    fn apply_table(&self, table: &[ExpVec], t: &ExpVec, k: usize) -> ExpVec {
        let mut out = self.identity();
        for j in k + 1..self.len() {
            if t[j] != 0 {
                let img = self.pow(&table[j], t[j]);
                self.mul_assign(&mut out, &img);
            }
        }
        out
    }

    pub fn mul_assign(&self, x: &mut ExpVec, y: &[i64]) {
        for (k, &e) in y.iter().enumerate() {
            if e != 0 {
                self.mul_gen_pow(x, k, e);
            }
        }
    }

    pub fn mul(&self, x: &[i64], y: &[i64]) -> ExpVec {
        let mut out = x.to_vec();
        self.mul_assign(&mut out, y);
        out
    }

    pub fn inverse(&self, x: &[i64]) -> ExpVec {
        let mut out = self.identity();
        for k in (0..x.len()).rev() {
            if x[k] != 0 {
                self.mul_gen_pow(&mut out, k, -x[k]);
            }
        }
        out
    }

    pub fn pow(&self, x: &[i64], e: i64) -> ExpVec {
        let (mut base, mut e) = if e < 0 { (self.inverse(x), e.unsigned_abs()) } else { (x.to_vec(), e as u64) };
        if let Some(k) = base.iter().position(|&v| v != 0) {
            // a single generator power collects directly
            if base[k + 1..].iter().all(|&v| v == 0) {
                let mut out = self.identity();
                let total = base[k].checked_mul(e as i64).expect("exponent overflow");
                self.mul_gen_pow(&mut out, k, total);
                return out;
            }
        } else {
            return base;
        }
        let mut out = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                self.mul_assign(&mut out, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        out
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn comm(&self, x: &[i64], y: &[i64]) -> ExpVec {
        let mut out = self.inverse(x);
        self.mul_assign(&mut out, &self.inverse(y));
        self.mul_assign(&mut out, x);
        self.mul_assign(&mut out, y);
        out
    }

    /// `y⁻¹ x y`.
    pub fn conjugate(&self, x: &[i64], y: &[i64]) -> ExpVec {
        let mut out = self.inverse(y);
        self.mul_assign(&mut out, x);
        self.mul_assign(&mut out, y);
        out
    }

    /// Collects a word over pc generators, given as `(index, exponent)` pairs.
    pub fn collect(&self, word: &[(usize, i64)]) -> ExpVec {
        let mut out = self.identity();
        for &(k, e) in word {
            self.mul_gen_pow(&mut out, k, e);
        }
        out
    }

    /// Order of an element of a finite presentation.
    pub fn element_order(&self, x: &[i64]) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        let mut y = x.to_vec();
        let mut k = 1;
        while y.iter().any(|&v| v != 0) {
            self.mul_assign(&mut y, x);
            k += 1;
        }
        Some(k)
    }

    /// Runs the overlap test words and reports the first failure.
    pub fn check_consistency(&self, exec: Execution) -> Result<(), PcError> {
        let n = self.len();
        let failures = par::map_range(exec, n, |i| self.overlaps_at(i));
        match failures.into_iter().flatten().next() {
            Some(f) => Err(PcError::Inconsistent(f)),
            None => Ok(()),
        }
    }

    fn overlaps_at(&self, i: usize) -> Option<String> {
        let n = self.len();
        let g = |k: usize, e: i64| {
            let mut v = self.identity();
            self.mul_gen_pow(&mut v, k, e);
            v
        };
        let assoc = |x: &ExpVec, y: &ExpVec, z: &ExpVec| {
            let left = self.mul(&self.mul(x, y), z);
            let right = self.mul(x, &self.mul(y, z));
            left == right
        };
        let name = |k: usize| self.gens[k].id.clone();
        let mi = self.gens[i].order as i64;
        for j in i + 1..n {
            for k in j + 1..n {
                if !assoc(&g(k, 1), &g(j, 1), &g(i, 1)) {
                    return Some(format!("{} {} {}", name(k), name(j), name(i)));
                }
            }
            let mj = self.gens[j].order as i64;
            if mj > 0 {
                if !assoc(&g(j, mj - 1), &g(j, 1), &g(i, 1)) {
                    return Some(format!("{}^{} {}", name(j), mj, name(i)));
                }
            } else if !assoc(&g(j, -1), &g(j, 1), &g(i, 1)) {
                return Some(format!("{}^-1 {} {}", name(j), name(j), name(i)));
            }
            if mi > 0 {
                if !assoc(&g(j, 1), &g(i, mi - 1), &g(i, 1)) {
                    return Some(format!("{} {}^{}", name(j), name(i), mi));
                }
            } else if !assoc(&g(j, 1), &g(i, -1), &g(i, 1)) {
                return Some(format!("{} {}^-1 {}", name(j), name(i), name(i)));
            }
        }
        if mi > 0 && !assoc(&g(i, mi - 1), &g(i, 1), &g(i, 1)) {
            return Some(format!("{}^{}", name(i), mi + 1));
        }
        None
    }

    pub fn to_json(&self) -> PcJson {
        let word = |v: &ExpVec| -> Vec<[i64; 2]> { v.iter().enumerate().filter(|(_, &e)| e != 0).map(|(k, &e)| [k as i64, e]).collect() };
        let mut powers = BTreeMap::new();
        for (i, p) in self.powers.iter().enumerate() {
            if let Some(p) = p {
                if !is_zero(p) {
                    powers.insert(self.gens[i].id.clone(), word(p));
                }
            }
        }
        let mut commutators = BTreeMap::new();
        for j in 0..self.len() {
            for i in 0..j {
                if !is_zero(&self.comms[j][i]) {
                    commutators.insert(format!("{},{}", self.gens[j].id, self.gens[i].id), word(&self.comms[j][i]));
                }
            }
        }
        PcJson { generators: self.gens.clone(), powers, commutators, class: self.class, prime: None }
    }

    pub fn from_json(json: &PcJson) -> Result<Self, PcError> {
        let n = json.generators.len();
        let index = |id: &str| json.generators.iter().position(|g| g.id == id).ok_or_else(|| PcError::UnknownGenerator(id.to_string()));
        let vector = |w: &[[i64; 2]], relation: &str, min: usize| -> Result<ExpVec, PcError> {
            let mut v = vec![0; n];
            let mut last = None;
            for &[k, e] in w {
                let bad = || PcError::BadRhs { relation: relation.to_string(), min };
                if k < 0 || k as usize >= n || last.is_some_and(|l| k <= l) || e == 0 {
                    return Err(bad());
                }
                last = Some(k);
                v[k as usize] = e;
            }
            Ok(v)
        };
        let mut powers = BTreeMap::new();
        for (id, w) in &json.powers {
            let i = index(id)?;
            powers.insert(i, vector(w, &format!("{id}^m"), i)?);
        }
        let mut comms = BTreeMap::new();
        for (key, w) in &json.commutators {
            let (a, b) = key.split_once(',').ok_or_else(|| PcError::BadCommutatorKey(key.clone()))?;
            let (j, i) = (index(a.trim())?, index(b.trim())?);
            if i >= j {
                return Err(PcError::BadCommutatorKey(key.clone()));
            }
            comms.insert((j, i), vector(w, key, j)?);
        }
        PcPresentation::new(json.generators.clone(), powers, comms, json.class)
    }

    pub fn from_json_str(text: &str) -> Result<Self, PcError> {
        let json: PcJson = serde_json::from_str(text).map_err(|e| PcError::Json(e.to_string()))?;
        Self::from_json(&json)
    }

    /// Renders `v` as a word such as `g1^2 g3`.
    pub fn render(&self, v: &[i64]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| if e == 1 { self.gens[k].id.clone() } else { format!("{}^{}", self.gens[k].id, e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Indices of generators of the given weight.
    pub fn layer(&self, weight: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.gens[i].weight == weight).collect()
    }
}

pub(crate) fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&e| e == 0)
}

/// Serialized form: words are arrays of `[index, exponent]` with 0-based
/// indices into `generators`, in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcJson {
    pub generators: Vec<PcGenerator>,
    #[serde(default)]
    pub powers: BTreeMap<String, Vec<[i64; 2]>>,
    #[serde(default)]
    pub commutators: BTreeMap<String, Vec<[i64; 2]>>,
    pub class: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn gen(id: &str, weight: usize, order: u64) -> PcGenerator {
        PcGenerator { id: id.into(), weight, order }
    }

    /// Heisenberg group: [g2, g1] = g3.
    pub(crate) fn heisenberg() -> PcPresentation {
        PcPresentation::new(
            vec![gen("g1", 1, 0), gen("g2", 1, 0), gen("g3", 2, 0)],
            BTreeMap::new(),
            BTreeMap::from([((1, 0), vec![0, 0, 1])]),
            2,
        )
        .unwrap()
    }

    /// Unitriangular 3×3 integer matrix model: g1 = E12, g2 = E23, g3 = E13⁻¹,
    /// so (a,b,c) ↦ g1^a g2^b g3^c.
    fn heis_matrix(v: &[i64]) -> [[i64; 3]; 3] {
        let e12 = |a: i64| [[1, a, 0], [0, 1, 0], [0, 0, 1]];
        let e23 = |b: i64| [[1, 0, 0], [0, 1, b], [0, 0, 1]];
        let e13 = |c: i64| [[1, 0, -c], [0, 1, 0], [0, 0, 1]];
        mat_mul(mat_mul(e12(v[0]), e23(v[1])), e13(v[2]))
    }

    fn mat_mul(a: [[i64; 3]; 3], b: [[i64; 3]; 3]) -> [[i64; 3]; 3] {
        let mut c = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        c
    }

    #[test]
    fn heisenberg_matrix_model_commutator() {
        // the matrix model satisfies [g2, g1] = g3 under [x,y] = x⁻¹y⁻¹xy
        let g1 = heis_matrix(&[1, 0, 0]);
        let g2 = heis_matrix(&[0, 1, 0]);
        let g1i = heis_matrix(&[-1, 0, 0]);
        let g2i = heis_matrix(&[0, -1, 0]);
        let c = mat_mul(mat_mul(mat_mul(g2i, g1i), g2), g1);
        assert_eq!(c, heis_matrix(&[0, 0, 1]));
    }

    #[test]
    fn collection_examples() {
        let h = heisenberg();
        assert_eq!(h.collect(&[]), vec![0, 0, 0]);
        // g2 g1 = g1 g2 [g2, g1]
        assert_eq!(h.collect(&[(1, 1), (0, 1)]), vec![1, 1, 1]);
        assert_eq!(heis_matrix(&h.collect(&[(1, 1), (0, 1)])), mat_mul(heis_matrix(&[0, 1, 0]), heis_matrix(&[1, 0, 0])));
    }

    #[test]
    fn power_relation_is_applied() {
        let pc =
            PcPresentation::new(vec![gen("g1", 1, 4), gen("g2", 2, 2)], BTreeMap::from([(0, vec![0, 1])]), BTreeMap::new(), 2).unwrap();
        assert_eq!(pc.collect(&[(0, 4)]), vec![0, 1]);
        assert_eq!(pc.collect(&[(0, 8)]), vec![0, 0]);
        assert_eq!(pc.collect(&[(0, -1)]), vec![3, 1]);
        assert_eq!(pc.element_order(&[1, 0]), Some(8));
    }

    #[test]
    fn inconsistent_presentation_is_rejected() {
        // g1^2 = g2 with g2 of order 2 while g2 is inverted by g1 gives a conflict:
        // g1 commutes with g1^2 = g2, but [g2,g1] = g3 ≠ 1.
        let r = PcPresentation::new(
            vec![gen("g1", 1, 2), gen("g2", 1, 2), gen("g3", 2, 2)],
            BTreeMap::from([(0, vec![0, 1, 0])]),
            BTreeMap::from([((1, 0), vec![0, 0, 1])]),
            2,
        );
        assert!(matches!(r, Err(PcError::Inconsistent(_))), "{r:?}");
    }

    #[test]
    fn validation_errors() {
        let bad_weights = PcPresentation::new(vec![gen("a", 2, 0), gen("b", 1, 0)], BTreeMap::new(), BTreeMap::new(), 2);
        assert_eq!(bad_weights, Err(PcError::BadWeights(1)));
        let bad_rhs = PcPresentation::new(vec![gen("a", 1, 0), gen("b", 1, 0)], BTreeMap::new(), BTreeMap::from([((1, 0), vec![1, 0])]), 1);
        assert!(matches!(bad_rhs, Err(PcError::BadRhs { .. })));
    }

    #[test]
    fn json_round_trip() {
        let h = heisenberg();
        let text = serde_json::to_string(&h.to_json()).unwrap();
        assert_eq!(PcPresentation::from_json_str(&text).unwrap(), h);
        assert!(text.contains("\"g2,g1\":[[2,1]]"), "{text}");
    }

    fn heis_vec() -> impl Strategy<Value = ExpVec> {
        proptest::collection::vec(-6i64..=6, 3)
    }

    proptest! {
        #[test]
        fn heisenberg_matches_matrix_model(x in heis_vec(), y in heis_vec()) {
            let h = heisenberg();
            prop_assert_eq!(heis_matrix(&h.mul(&x, &y)), mat_mul(heis_matrix(&x), heis_matrix(&y)));
            prop_assert_eq!(h.mul(&x, &h.inverse(&x)), h.identity());
        }

        #[test]
        fn heisenberg_associative(x in heis_vec(), y in heis_vec(), z in heis_vec()) {
            let h = heisenberg();
            prop_assert_eq!(h.mul(&h.mul(&x, &y), &z), h.mul(&x, &h.mul(&y, &z)));
        }
    }
}
