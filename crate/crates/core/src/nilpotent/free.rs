//! Free nilpotent groups `F_d/γ_{c+1}(F_d)` on basic commutators.
//!
//! Basic commutators are the bracketed Lyndon words of length at most `c`,
//! ordered by length and then lexicographically. The image of the group
//! commutator built from a Lyndon word's standard bracketing in
//! `γₙ/γₙ₊₁` is that Lyndon basis element, so any element can be sifted
//! layer by layer through its Magnus expansion.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use super::pc::{ExpVec, PcGenerator, PcPresentation};
use super::NilpotentError;
use crate::magnus::{lie_coordinates, lyndon_basis, magnus_expand, standard_factorization, Monomial, TruncSeries};
use crate::words::Word;

/// A free nilpotent group with the words realizing its pc generators.
#[derive(Debug, Clone)]
pub struct FreeNilpotent {
    pub rank: usize,
    pub class: usize,
    pub presentation: PcPresentation,
    /// Lyndon word of each pc generator.
    pub lyndon: Vec<Monomial>,
    /// Each pc generator as a word in the free generators.
    pub words: Vec<Word>,
}

/// Group commutator realizing the standard bracketing of a Lyndon word.
pub fn bracket_word(lyndon: &[u16]) -> Word {
    if lyndon.len() == 1 {
        return Word::generator(lyndon[0] as usize);
    }
    let (u, v) = standard_factorization(lyndon);
    bracket_word(u).commutator(&bracket_word(v))
}

fn series_pow(s: &TruncSeries, inv: &TruncSeries, e: i64) -> TruncSeries {
    let base = if e < 0 { inv } else { s };
    let mut out = TruncSeries::one(s.degree_cap());
    for _ in 0..e.unsigned_abs() {
        out = out.mul(base);
    }
    out
}

struct Sifter {
    rank: usize,
    class: usize,
    lyndon: Vec<Monomial>,
    weight: Vec<usize>,
    series: Vec<TruncSeries>,
    inverse_series: Vec<TruncSeries>,
}

impl Sifter {
    /// Normal form of the element with Magnus series `s`, using only
    /// generators of weight at least `from`.
    fn sift(&self, mut s: TruncSeries, from: usize) -> ExpVec {
        let mut out = vec![0i64; self.lyndon.len()];
        for n in from..=self.class {
            let part = s.homogeneous(n);
            if part.is_empty() {
                continue;
            }
            debug_assert!(s.lowest_degree() == Some(n));
            let coords = lie_coordinates(&part, self.rank, n).expect("layer part of a group element is Lie");
            let mut layer = TruncSeries::one(self.class);
            for (k, l) in self.lyndon.iter().enumerate() {
                if self.weight[k] != n {
                    continue;
                }
                if let Some(c) = coords.coeffs.get(l) {
                    let e = c.to_i64().expect("exponent fits in i64");
                    out[k] = e;
                    layer = layer.mul(&series_pow(&self.series[k], &self.inverse_series[k], e));
                }
            }
            s = layer.inverse().mul(&s);
        }
        debug_assert!(s.is_one());
        out
    }
}

/// `F_d/γ_{c+1}(F_d)` with at most `gen_cap` pc generators.
pub fn free_nilpotent(d: usize, c: usize, gen_cap: usize) -> Result<FreeNilpotent, NilpotentError> {
    if d == 0 || c == 0 {
        return Err(NilpotentError::Degenerate);
    }
    let mut lyndon = Vec::new();
    let mut weight = Vec::new();
    for n in 1..=c {
        let layer = lyndon_basis(d, n);
        if lyndon.len() + layer.len() > gen_cap {
            return Err(NilpotentError::GeneratorCap { cap: gen_cap });
        }
        weight.extend(std::iter::repeat_n(n, layer.len()));
        lyndon.extend(layer);
    }
    let words: Vec<Word> = lyndon.iter().map(|l| bracket_word(l)).collect();
    let series: Vec<TruncSeries> = words.iter().map(|w| magnus_expand(w, c)).collect();
    let inverse_series: Vec<TruncSeries> = series.iter().map(TruncSeries::inverse).collect();
    let sifter = Sifter { rank: d, class: c, lyndon: lyndon.clone(), weight: weight.clone(), series, inverse_series };
    let n = lyndon.len();
    let mut comms = BTreeMap::new();
    for j in 0..n {
        for i in 0..j {
            let w = weight[i] + weight[j];
            if w > c {
                continue;
            }
            // [gⱼ, gᵢ] = gⱼ⁻¹ gᵢ⁻¹ gⱼ gᵢ
            let s = sifter.inverse_series[j].mul(&sifter.inverse_series[i]).mul(&sifter.series[j]).mul(&sifter.series[i]);
            let v = sifter.sift(s, w);
            if v.iter().any(|e| !e.is_zero()) {
                comms.insert((j, i), v);
            }
        }
    }
    let gens = weight.iter().enumerate().map(|(k, &w)| PcGenerator { id: format!("g{}", k + 1), weight: w, order: 0 }).collect();
    let presentation = PcPresentation::new_unchecked(gens, BTreeMap::new(), comms, c).expect("free nilpotent relations are normal words");
    Ok(FreeNilpotent { rank: d, class: c, presentation, lyndon, words })
}

impl FreeNilpotent {
    /// Image of a word in the free generators.
    pub fn evaluate(&self, w: &Word) -> ExpVec {
        let pc = &self.presentation;
        let mut out = pc.identity();
        for &(g, e) in w.syllables() {
            assert!(g < self.rank, "generator {g} outside rank {}", self.rank);
            pc.mul_gen_pow(&mut out, g, e);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::{lcs_weight, witt_number, Weight};
    use crate::par::Execution;
    use crate::words::tests::word_strategy;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        let f = free_nilpotent(2, 1, 64).unwrap();
        assert_eq!(f.presentation.len(), 2);
        let f = free_nilpotent(2, 2, 64).unwrap();
        assert_eq!(f.presentation.len(), 3);
        // g3 = [a, b], so [g2, g1] = [b, a] = g3⁻¹
        assert_eq!(f.presentation.commutator_relation(1, 0), &vec![0, 0, -1]);
        let f = free_nilpotent(2, 3, 64).unwrap();
        let layers: Vec<usize> = (1..=3).map(|k| f.presentation.layer(k).len()).collect();
        assert_eq!(layers, vec![2, 1, 2]);
    }

    #[test]
    fn layer_sizes_are_witt_numbers() {
        for d in 1..=3 {
            for c in 1..=4 {
                let f = free_nilpotent(d, c, 128).unwrap();
                for k in 1..=c {
                    assert_eq!(f.presentation.layer(k).len() as u64, witt_number(d, k));
                }
            }
        }
    }

    #[test]
    fn consistent() {
        for (d, c) in [(2, 3), (2, 4), (3, 3), (2, 5)] {
            free_nilpotent(d, c, 128).unwrap().presentation.check_consistency(Execution::default()).unwrap();
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(free_nilpotent(3, 5, 64).unwrap_err(), NilpotentError::GeneratorCap { cap: 64 });
    }

    #[test]
    fn generator_words_evaluate_to_units() {
        let f = free_nilpotent(3, 3, 64).unwrap();
        for (k, w) in f.words.iter().enumerate() {
            assert_eq!(f.evaluate(w), f.presentation.unit(k));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn evaluation_is_a_homomorphism(u in word_strategy(2, 10), v in word_strategy(2, 10)) {
            let f = free_nilpotent(2, 4, 64).unwrap();
            let pc = &f.presentation;
            prop_assert_eq!(f.evaluate(&u.multiply(&v)), pc.mul(&f.evaluate(&u), &f.evaluate(&v)));
        }

        #[test]
        fn collection_is_associative(w in word_strategy(2, 12), g in 0usize..2, e in -2i64..=2) {
            let f = free_nilpotent(2, 4, 64).unwrap();
            let pc = &f.presentation;
            let x = pc.unit(g);
            let x = pc.pow(&x, e);
            let lhs = pc.mul(&x, &f.evaluate(&w));
            let rhs = f.evaluate(&Word::power_of(g, e).multiply(&w));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn weight_is_first_surviving_class(w in word_strategy(2, 10)) {
            prop_assume!(!w.is_identity());
            let weight = match lcs_weight(&w).unwrap() { Weight::Finite(n) => n, Weight::Infinite => unreachable!() };
            let survives = (1..=5).find(|&c| {
                let f = free_nilpotent(2, c, 64).unwrap();
                f.evaluate(&w).iter().any(|&e| e != 0)
            });
            prop_assert_eq!(survives, if weight <= 5 { Some(weight) } else { None });
        }
    }
}
