//! Nilpotent quotients `G/γ_{c+1}(G)` of finitely presented groups.
//!
//! The quotient is computed as `F/γ_{c+1}(F)` modulo the normal closure of
//! the relator images, where `F` is free on the presentation generators.
//! Weight `k` generators of the result span `γₖ(G)/γₖ₊₁(G)`.

use num_bigint::BigInt;
use serde::Serialize;

use super::free::free_nilpotent;
use super::pc::{ExpVec, PcPresentation};
use super::subgroup::Subgroup;
use super::{NilpotentError, DEFAULT_CLASS_CAP, DEFAULT_GENERATOR_CAP};
use crate::snf::{abelian_invariants, AbelianInvariants, IntMatrix};
use crate::words::{Presentation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NqConfig {
    pub class_cap: usize,
    pub generator_cap: usize,
}

impl Default for NqConfig {
    fn default() -> Self {
        NqConfig { class_cap: DEFAULT_CLASS_CAP, generator_cap: DEFAULT_GENERATOR_CAP }
    }
}

#[derive(Debug, Clone)]
pub struct NilpotentQuotient {
    pub class: usize,
    pub quotient: PcPresentation,
    /// Image of each presentation generator.
    pub gen_map: Vec<ExpVec>,
    /// Invariants of `γₖ/γₖ₊₁` for `k = 1..=class`.
    pub layer_invariants: Vec<AbelianInvariants>,
    /// A word in the presentation generators mapping to each pc generator.
    pub pc_gen_words: Vec<Word>,
}

pub fn nq(p: &Presentation, c: usize) -> Result<NilpotentQuotient, NilpotentError> {
    nq_with(p, c, NqConfig::default())
}

pub fn nq_with(p: &Presentation, c: usize, config: NqConfig) -> Result<NilpotentQuotient, NilpotentError> {
    if c == 0 {
        return Err(NilpotentError::Degenerate);
    }
    if c > config.class_cap {
        return Err(NilpotentError::ClassCap { class: c, cap: config.class_cap });
    }
    if p.rank() == 0 {
        let quotient = PcPresentation::new_unchecked(Vec::new(), Default::default(), Default::default(), c).expect("empty presentation");
        let trivial = AbelianInvariants { rank: 0, torsion: Vec::new() };
        return Ok(NilpotentQuotient {
            class: c,
            quotient,
            gen_map: Vec::new(),
            layer_invariants: vec![trivial; c],
            pc_gen_words: Vec::new(),
        });
    }
    let free = free_nilpotent(p.rank(), c, config.generator_cap)?;
    let fp = &free.presentation;
    let relators: Vec<ExpVec> = p.relators().iter().map(|r| free.evaluate(r)).collect();
    let n = Subgroup::normal_closure(fp, &relators);
    let q = n.quotient(fp);
    let gen_map = (0..p.rank()).map(|g| q.project(fp, &fp.unit(g))).collect();
    let pc_gen_words = q.kept.iter().map(|&k| free.words[k].clone()).collect();
    let quotient = q.presentation;
    let layer_invariants = (1..=c).map(|k| layer_invariants(&quotient, k)).collect();
    Ok(NilpotentQuotient { class: c, quotient, gen_map, layer_invariants, pc_gen_words })
}

/// Invariants of the abelian group spanned by the weight-`k` generators,
/// read from the power relations restricted to that layer.
pub(crate) fn layer_invariants(pc: &PcPresentation, k: usize) -> AbelianInvariants {
    let layer = pc.layer(k);
    let mut rows = Vec::new();
    for (a, &g) in layer.iter().enumerate() {
        let m = pc.relative_order(g);
        if m == 0 {
            continue;
        }
        let rhs = pc.power_relation(g).expect("finite order has a power relation");
        let mut row = vec![BigInt::from(0); layer.len()];
        row[a] = BigInt::from(m);
        for (b, &h) in layer.iter().enumerate() {
            row[b] -= rhs[h];
        }
        rows.push(row);
    }
    let mut matrix = IntMatrix::zeros(rows.len(), layer.len());
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            matrix[(i, j)] = x.clone();
        }
    }
    abelian_invariants(&matrix)
}

impl NilpotentQuotient {
    /// Image of a word in the presentation generators.
    pub fn evaluate(&self, w: &Word) -> ExpVec {
        let pc = &self.quotient;
        let mut out = pc.identity();
        for &(g, e) in w.syllables() {
            let img = pc.pow(&self.gen_map[g], e);
            pc.mul_assign(&mut out, &img);
        }
        out
    }

    /// Orders of the layers, `None` for infinite ones.
    pub fn layer_orders(&self) -> Vec<Option<u128>> {
        self.layer_invariants.iter().map(|inv| (inv.rank == 0).then(|| inv.torsion.iter().map(|&t| t as u128).product())).collect()
    }
}
