//! Subgroups of pc groups as induced polycyclic sequences, and quotients by
//! normal subgroups.

use std::collections::BTreeMap;

use num_integer::Integer;

use super::pc::{is_zero, ExpVec, PcGenerator, PcPresentation};

/// A subgroup stored as an echelon sequence: at most one element per leading
/// index, each with positive leading exponent dividing the relative order
/// where that order is finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    basis: Vec<Option<ExpVec>>,
}

fn lead(v: &[i64]) -> Option<usize> {
    v.iter().position(|&e| e != 0)
}

impl Subgroup {
    pub fn trivial(pc: &PcPresentation) -> Self {
        Subgroup { basis: vec![None; pc.len()] }
    }

    /// The subgroup `Gₖ = ⟨gₖ, gₖ₊₁, …⟩`.
    pub fn tail(pc: &PcPresentation, k: usize) -> Self {
        Subgroup { basis: (0..pc.len()).map(|i| (i >= k).then(|| pc.unit(i))).collect() }
    }

    pub fn whole(pc: &PcPresentation) -> Self {
        Self::tail(pc, 0)
    }

    /// Subgroup generated by `gens`.
    pub fn generate(pc: &PcPresentation, gens: &[ExpVec]) -> Self {
        let mut s = Subgroup::trivial(pc);
        for g in gens {
            s.insert(pc, g.clone());
        }
        s.close(pc, false);
        s.canonicalize(pc);
        s
    }

    /// Normal closure of `gens` in the whole group.
    pub fn normal_closure(pc: &PcPresentation, gens: &[ExpVec]) -> Self {
        let mut s = Subgroup::trivial(pc);
        for g in gens {
            s.insert(pc, g.clone());
        }
        s.close(pc, true);
        s.canonicalize(pc);
        s
    }

    /// Echelon elements in order of leading index.
    pub fn basis(&self) -> Vec<&ExpVec> {
        self.basis.iter().flatten().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.iter().all(Option::is_none)
    }

    /// Leading exponent at position `k`, if a basis element leads there.
    pub fn leading_exponent(&self, k: usize) -> Option<i64> {
        self.basis[k].as_ref().map(|b| b[k])
    }

    /// Order, when every relevant relative order is finite.
    pub fn order(&self, pc: &PcPresentation) -> Option<u128> {
        let mut total = 1u128;
        for (k, b) in self.basis.iter().enumerate() {
            if let Some(b) = b {
                let m = pc.relative_order(k);
                if m == 0 {
                    return None;
                }
                total *= (m as i64 / b[k]) as u128;
            }
        }
        Some(total)
    }

    /// Index in the whole group, when finite.
    pub fn index(&self, pc: &PcPresentation) -> Option<u128> {
        let mut total = 1u128;
        for k in 0..pc.len() {
            match &self.basis[k] {
                Some(b) => total *= b[k] as u128,
                None => {
                    let m = pc.relative_order(k);
                    if m == 0 {
                        return None;
                    }
                    total *= m as u128;
                }
            }
        }
        Some(total)
    }

    /// Reduces `v` by the basis; the remainder is trivial iff `v` belongs.
    pub fn sift(&self, pc: &PcPresentation, v: &[i64]) -> ExpVec {
        let mut v = v.to_vec();
        let mut k = 0;
        while let Some(l) = v[k..].iter().position(|&e| e != 0).map(|p| p + k) {
            let Some(b) = &self.basis[l] else { return v };
            if v[l] % b[l] != 0 {
                return v;
            }
            let t = pc.pow(b, -(v[l] / b[l]));
            v = pc.mul(&t, &v);
            debug_assert_eq!(v[l], 0);
            k = l + 1;
        }
        v
    }

    pub fn contains(&self, pc: &PcPresentation, v: &[i64]) -> bool {
        is_zero(&self.sift(pc, v))
    }

    pub fn contains_subgroup(&self, pc: &PcPresentation, other: &Subgroup) -> bool {
        other.basis().into_iter().all(|b| self.contains(pc, b))
    }

    /// Canonical coset representative of `v` modulo this subgroup, assumed normal.
    pub fn reduce(&self, pc: &PcPresentation, v: &[i64]) -> ExpVec {
        let mut v = v.to_vec();
        for k in 0..v.len() {
            if v[k] == 0 {
                continue;
            }
            if let Some(b) = &self.basis[k] {
                let q = v[k].div_euclid(b[k]);
                if q != 0 {
                    let t = pc.pow(b, -q);
                    v = pc.mul(&t, &v);
                }
            }
        }
        v
    }

    /// Adds `v` and keeps the echelon shape; returns whether anything changed.
    fn insert(&mut self, pc: &PcPresentation, v: ExpVec) -> bool {
        let mut changed = false;
        let mut queue = vec![v];
        while let Some(mut v) = queue.pop() {
            while let Some(k) = lead(&v) {
                let m = pc.relative_order(k) as i64;
                match self.basis[k].take() {
                    None => {
                        if v[k] < 0 {
                            v = pc.inverse(&v);
                        }
                        if m > 0 {
                            let g = v[k].gcd(&m);
                            if g != v[k] {
                                // v^s has leading exponent gcd(v_k, m)
                                let s = modular_inverse(v[k] / g, m / g);
                                queue.push(pc.pow(&v, s));
                            }
                            queue.push(pc.pow(&v, m / g));
                        }
                        self.basis[k] = Some(v);
                        changed = true;
                        break;
                    }
                    Some(mut b) => {
                        if v[k] % b[k] == 0 {
                            let t = pc.pow(&b, -(v[k] / b[k]));
                            v = pc.mul(&t, &v);
                            self.basis[k] = Some(b);
                            continue;
                        }
                        // Euclid on leading exponents; each step is invertible
                        changed = true;
                        while v[k] != 0 {
                            let q = b[k].div_euclid(v[k]);
                            let r = pc.mul(&b, &pc.pow(&v, -q));
                            b = v;
                            v = r;
                        }
                        if b[k] < 0 {
                            b = pc.inverse(&b);
                        }
                        if m > 0 {
                            let g = b[k].gcd(&m);
                            if g != b[k] {
                                let s = modular_inverse(b[k] / g, m / g);
                                queue.push(pc.pow(&b, s));
                            }
                            queue.push(pc.pow(&b, m / g));
                        }
                        self.basis[k] = Some(b);
                    }
                }
            }
        }
        changed
    }

    fn close(&mut self, pc: &PcPresentation, normal: bool) {
        loop {
            let mut changed = false;
            let current: Vec<ExpVec> = self.basis().into_iter().cloned().collect();
            let mut extra: Vec<ExpVec> = Vec::new();
            for (a, x) in current.iter().enumerate() {
                for y in &current[..a] {
                    extra.push(pc.comm(x, y));
                }
                if normal {
                    for j in 0..pc.len() {
                        extra.push(pc.comm(x, &pc.unit(j)));
                    }
                }
            }
            for v in extra {
                if !self.contains(pc, &v) {
                    changed |= self.insert(pc, v);
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Reduces each basis element at the later pivots into `[0, pivot)`, so
    /// equal subgroups have equal bases.
    fn canonicalize(&mut self, pc: &PcPresentation) {
        let pivots: Vec<usize> = (0..self.basis.len()).filter(|&k| self.basis[k].is_some()).collect();
        for (a, &i) in pivots.iter().enumerate() {
            let mut b = self.basis[i].take().unwrap();
            for &k in &pivots[a + 1..] {
                let lead_k = self.basis[k].as_ref().unwrap()[k];
                let q = b[k].div_euclid(lead_k);
                if q != 0 {
                    b = pc.mul(&b, &pc.pow(self.basis[k].as_ref().unwrap(), -q));
                }
            }
            self.basis[i] = Some(b);
        }
    }

    /// Join with another subgroup.
    pub fn join(&self, pc: &PcPresentation, other: &Subgroup) -> Subgroup {
        let gens: Vec<ExpVec> = self.basis().into_iter().chain(other.basis()).cloned().collect();
        Subgroup::generate(pc, &gens)
    }

    /// Builds the quotient presentation by this subgroup, which must be normal.
    pub fn quotient(&self, pc: &PcPresentation) -> Quotient {
        let n = pc.len();
        let mut kept = Vec::new();
        let mut position = vec![None; n];
        let mut gens = Vec::new();
        for k in 0..n {
            let order = match &self.basis[k] {
                Some(b) if b[k] == 1 => continue,
                Some(b) => b[k] as u64,
                None => pc.relative_order(k),
            };
            position[k] = Some(kept.len());
            kept.push(k);
            let g = &pc.generators()[k];
            gens.push(PcGenerator { id: g.id.clone(), weight: g.weight, order });
        }
        let project = |v: &[i64]| -> ExpVec {
            let r = self.reduce(pc, v);
            kept.iter().map(|&k| r[k]).collect()
        };
        let mut powers = BTreeMap::new();
        let mut comms = BTreeMap::new();
        for (a, &k) in kept.iter().enumerate() {
            if gens[a].order > 0 {
                powers.insert(a, project(&pc.pow(&pc.unit(k), gens[a].order as i64)));
            }
            for (b, &l) in kept.iter().enumerate().skip(a + 1) {
                let c = project(pc.commutator_relation(l, k));
                if !is_zero(&c) {
                    comms.insert((b, a), c);
                }
            }
        }
        let class = gens.iter().map(|g| g.weight).max().unwrap_or(1);
        let presentation = PcPresentation::new_unchecked(gens, powers, comms, class)
            .expect("quotient of a valid presentation by a normal subgroup is valid");
        Quotient { presentation, kept, subgroup: self.clone() }
    }
}

/// `a⁻¹ mod m` for coprime `a`, `m`.
fn modular_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// Quotient `G/N` with the projection from `G`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub presentation: PcPresentation,
    /// Positions of `G` that survive as generators of the quotient.
    pub kept: Vec<usize>,
    pub subgroup: Subgroup,
}

impl Quotient {
    pub fn project(&self, pc: &PcPresentation, v: &[i64]) -> ExpVec {
        let r = self.subgroup.reduce(pc, v);
        self.kept.iter().map(|&k| r[k]).collect()
    }

    /// A preimage in `G` of a quotient element.
    pub fn lift(&self, pc: &PcPresentation, v: &[i64]) -> ExpVec {
        let mut out = pc.identity();
        for (a, &k) in self.kept.iter().enumerate() {
            out[k] = v[a];
        }
        out
    }
}
