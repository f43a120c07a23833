//! Small finite groups as multiplication tables, with subgroup arithmetic by
//! closure. Used as brute-force ground truth for commutator calculus.

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::nilpotent::{ExpVec, PcPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteError {
    #[error("group too large: {0} elements")]
    TooLarge(usize),
    #[error("presentation is not finite")]
    Infinite,
    #[error("map is not a homomorphism")]
    NotHomomorphism,
    #[error("map is not bijective")]
    NotBijective,
    #[error("action does not respect the relations of the acting group")]
    ActionMismatch,
}

pub const ELEMENT_CAP: usize = 1 << 14;

/// Finite group on `0..order` with identity 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<u32>,
}

/// A subset of a finite group, used for subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: Vec<bool>,
}

impl Subset {
    pub fn contains(&self, x: u32) -> bool {
        self.bits[x as usize]
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> Vec<u32> {
        (0..self.bits.len() as u32).filter(|&x| self.bits[x as usize]).collect()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset { bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| a && b).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1 && self.bits[0]
    }
}

impl FiniteGroup {
    /// Closure of `gens` under a multiplication; element 0 is `identity`.
    pub fn from_generators<T, F>(identity: T, gens: &[T], mul: F) -> Result<(Self, Vec<T>), FiniteError>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::from([(identity, 0)]);
        let mut frontier = 0;
        while frontier < elements.len() {
            let x = elements[frontier].clone();
            frontier += 1;
            for g in gens {
                let y = mul(&x, g);
                if !index.contains_key(&y) {
                    if elements.len() >= ELEMENT_CAP {
                        return Err(FiniteError::TooLarge(elements.len()));
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                table[a * n + b] = index[&mul(x, y)];
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok((FiniteGroup::from_table_unchecked(n, table, generators), elements))
    }

    fn from_table_unchecked(order: usize, table: Vec<u32>, generators: Vec<u32>) -> Self {
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            inverses[a] = (0..order as u32).find(|&b| table[a * order + b as usize] == 0).expect("group has inverses");
        }
        FiniteGroup { order, table, inverses, generators }
    }

    /// Elements of a finite pc group, indexed by mixed radix over exponent vectors.
    pub fn from_pc(pc: &PcPresentation) -> Result<(Self, Vec<ExpVec>), FiniteError> {
        let order = pc.order().ok_or(FiniteError::Infinite)?;
        if order > ELEMENT_CAP as u128 {
            return Err(FiniteError::TooLarge(order as usize));
        }
        let gens: Vec<ExpVec> = (0..pc.len()).map(|i| pc.unit(i)).collect();
        Self::from_generators(pc.identity(), &gens, |x, y| pc.mul(x, y))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let base = if e < 0 { self.inv(a) } else { a };
        (0..e.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn comm(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `b⁻¹ a b`.
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subset {
        Subset { bits: vec![true; self.order] }
    }

    pub fn trivial(&self) -> Subset {
        let mut bits = vec![false; self.order];
        bits[0] = true;
        Subset { bits }
    }

    pub fn subset(&self, elements: &[u32]) -> Subset {
        let mut bits = vec![false; self.order];
        for &x in elements {
            bits[x as usize] = true;
        }
        Subset { bits }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Subset {
        let mut bits = vec![false; self.order];
        bits[0] = true;
        let mut queue = vec![0u32];
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !bits[y as usize] {
                    bits[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        Subset { bits }
    }

    pub fn is_subgroup(&self, s: &Subset) -> bool {
        s.contains(0) && s.elements().iter().all(|&a| s.elements().iter().all(|&b| s.contains(self.mul(a, b))))
    }

    /// Normal closure of `gens` in the whole group.
    pub fn normal_closure(&self, gens: &[u32]) -> Subset {
        let mut all: Vec<u32> = Vec::new();
        for &g in gens {
            for x in 0..self.order as u32 {
                all.push(self.conj(g, x));
            }
        }
        all.sort_unstable();
        all.dedup();
        self.closure(&all)
    }

    pub fn is_normal(&self, s: &Subset) -> bool {
        s.elements().iter().all(|&a| self.generators.iter().all(|&g| s.contains(self.conj(a, g))))
    }

    /// `[A, B]`, generated by all `[a, b]`.
    pub fn commutator(&self, a: &Subset, b: &Subset) -> Subset {
        let mut gens = Vec::new();
        for x in a.elements() {
            for y in b.elements() {
                gens.push(self.comm(x, y));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    /// Subgroup generated by `A ∪ B`.
    pub fn join(&self, a: &Subset, b: &Subset) -> Subset {
        let gens: Vec<u32> = a.elements().into_iter().chain(b.elements()).collect();
        self.closure(&gens)
    }

    /// Subgroup generated by the `p`-th powers of elements of `A`.
    pub fn power_subgroup(&self, a: &Subset, p: i64) -> Subset {
        let gens: Vec<u32> = a.elements().iter().map(|&x| self.pow(x, p)).collect();
        self.closure(&gens)
    }

    /// `γ₁ = G ⊇ γ₂ ⊇ …` until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subset> {
        let mut series = vec![self.whole()];
        loop {
            let next = self.commutator(series.last().unwrap(), &self.whole());
            if &next == series.last().unwrap() {
                return series;
            }
            series.push(next);
        }
    }

    /// `γₖ(G)`, with `γ₁ = G`.
    pub fn gamma(&self, k: usize) -> Subset {
        let mut s = self.whole();
        for _ in 1..k {
            s = self.commutator(&s, &self.whole());
        }
        s
    }

    /// `[X, G, …, G]` with `m` copies of `G`.
    pub fn iterated_commutator(&self, x: &Subset, m: usize) -> Subset {
        let mut s = x.clone();
        for _ in 0..m {
            s = self.commutator(&s, &self.whole());
        }
        s
    }

    /// Does `x ↦ images[x]` define an automorphism? Checks multiplicativity and bijectivity.
    pub fn is_automorphism(&self, images: &[u32]) -> Result<(), FiniteError> {
        let mut seen = vec![false; self.order];
        for &y in images {
            if std::mem::replace(&mut seen[y as usize], true) {
                return Err(FiniteError::NotBijective);
            }
        }
        for a in 0..self.order as u32 {
            for b in 0..self.order as u32 {
                if images[self.mul(a, b) as usize] != self.mul(images[a as usize], images[b as usize]) {
                    return Err(FiniteError::NotHomomorphism);
                }
            }
        }
        Ok(())
    }

    /// Permutation of elements induced by conjugation `x ↦ g⁻¹ x g`.
    pub fn inner(&self, g: u32) -> Vec<u32> {
        (0..self.order as u32).map(|x| self.conj(x, g)).collect()
    }

    /// All conjugacy class representatives (least element of each class).
    pub fn class_representatives(&self) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order as u32 {
            if seen[x as usize] {
                continue;
            }
            reps.push(x);
            for g in 0..self.order as u32 {
                seen[self.conj(x, g) as usize] = true;
            }
        }
        reps
    }
}

/// Direct product `A × B` with element `(a, b)` at index `a·|B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = ((x / nb) as u32, (x % nb) as u32);
            let (ya, yb) = ((y / nb) as u32, (y % nb) as u32);
            table[x * n + y] = a.mul(xa, ya) * nb as u32 + b.mul(xb, yb);
        }
    }
    let mut gens: Vec<u32> = a.generators().iter().map(|&g| g * nb as u32).collect();
    gens.extend(b.generators().iter().copied());
    FiniteGroup::from_table_unchecked(n, table, gens)
}
