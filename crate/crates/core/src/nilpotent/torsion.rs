//! Torsion subgroups of pc groups and the torsion-free quotient probe.

use num_integer::Integer;
use serde::Serialize;

use super::nq::{nq_with, NqConfig};
use super::pc::{ExpVec, PcPresentation};
use super::subgroup::Subgroup;
use super::NilpotentError;
use crate::words::Presentation;

/// The torsion subgroup `T` of a nilpotent pc group.
#[derive(Debug, Clone)]
pub struct TorsionInfo {
    pub subgroup: Subgroup,
    pub order: u128,
    pub is_torsion_free: bool,
}

/// Computes `T` bottom-up along the pc series: with `Tᵢ = T ∩ Gᵢ`, the
/// quotient `Tᵢ/Tᵢ₊₁` is the subgroup of `Gᵢ/Gᵢ₊₁` generated by the least
/// `a` for which some `gᵢ^a z` (`z ∈ Gᵢ₊₁`) is torsion modulo `Tᵢ₊₁`.
pub fn torsion_subgroup(pc: &PcPresentation) -> TorsionInfo {
    let n = pc.len();
    let mut t = Subgroup::trivial(pc);
    for i in (0..n).rev() {
        let m = pc.relative_order(i) as i64;
        if m == 0 {
            continue;
        }
        let q = t.quotient(pc);
        let qi = q.kept.iter().position(|&k| k == i).expect("Tᵢ₊₁ lies in Gᵢ₊₁");
        for a in divisors(m).into_iter().filter(|&a| a < m) {
            if let Some(x) = torsion_root(&q.presentation, qi, a, m / a) {
                let mut gens: Vec<ExpVec> = t.basis().into_iter().cloned().collect();
                gens.push(q.lift(pc, &x));
                t = Subgroup::normal_closure(pc, &gens);
                break;
            }
        }
    }
    let order = t.order(pc).expect("torsion elements lead at finite positions");
    TorsionInfo { is_torsion_free: t.is_trivial(), subgroup: t, order }
}

fn divisors(m: i64) -> Vec<i64> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// Finds `x = gᵢ^a z` with `z ∈ Gᵢ₊₁` and `x^k = 1`, or proves none exists.
///
/// With the coordinates of `z` fixed below `j`, coordinate `j` of `x^k` is
/// `c + k·zⱼ` because `gⱼ` is central modulo `Gⱼ₊₁`; each step is a linear
/// congruence with finitely many solutions.
fn torsion_root(pc: &PcPresentation, i: usize, a: i64, k: i64) -> Option<ExpVec> {
    let mut x = pc.identity();
    x[i] = a;
    search(pc, &mut x, i + 1, k)
}

fn search(pc: &PcPresentation, x: &mut ExpVec, j: usize, k: i64) -> Option<ExpVec> {
    let power = pc.pow(x, k);
    debug_assert!(power[..j].iter().all(|&e| e == 0));
    if j == pc.len() {
        return power.iter().all(|&e| e == 0).then(|| x.clone());
    }
    let c = power[j];
    let m = pc.relative_order(j) as i64;
    let candidates: Vec<i64> = if m == 0 {
        if c % k != 0 {
            return None;
        }
        vec![-c / k]
    } else {
        // k·z ≡ −c (mod m)
        let g = k.gcd(&m);
        if c.rem_euclid(g) != 0 {
            return None;
        }
        let (kg, mg) = (k / g, m / g);
        let inv = if mg == 1 { 0 } else { kg.extended_gcd(&mg).x.rem_euclid(mg) };
        let base = ((-c / g).rem_euclid(mg) * inv).rem_euclid(mg);
        (0..g).map(|t| base + t * mg).collect()
    };
    for z in candidates {
        x[j] = z;
        if let Some(found) = search(pc, x, j + 1, k) {
            return Some(found);
        }
    }
    x[j] = 0;
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TfProbeEntry {
    /// `c` such that this entry describes `G/γ_{c+1}(G)`.
    pub class: usize,
    pub torsion_free: bool,
    pub torsion_order: u128,
}

/// Bounded-class evidence for torsion-free lower central quotients. The
/// report covers classes `1..=class_bound` only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TfProbe {
    pub class_bound: usize,
    pub entries: Vec<TfProbeEntry>,
}

impl TfProbe {
    pub fn all_torsion_free(&self) -> bool {
        self.entries.iter().all(|e| e.torsion_free)
    }
}

pub fn enough_tf_probe(p: &Presentation, c_max: usize) -> Result<TfProbe, NilpotentError> {
    enough_tf_probe_with(p, c_max, NqConfig::default())
}

pub fn enough_tf_probe_with(p: &Presentation, c_max: usize, config: NqConfig) -> Result<TfProbe, NilpotentError> {
    let mut entries = Vec::new();
    for c in 1..=c_max {
        let q = nq_with(p, c, config)?;
        let t = torsion_subgroup(&q.quotient);
        entries.push(TfProbeEntry { class: c, torsion_free: t.is_torsion_free, torsion_order: t.order });
    }
    Ok(TfProbe { class_bound: c_max, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::free::free_nilpotent;
    use crate::nilpotent::nq::nq;
    use crate::nilpotent::pc::tests::{gen, heisenberg};
    use crate::words::parse_presentation;
    use std::collections::BTreeMap;

    /// Elements with coordinates in `[-b, b]` (or `[0, m)`) of order ≤ `max_order`.
    fn bounded_torsion(pc: &PcPresentation, b: i64, max_order: i64) -> Vec<ExpVec> {
        let mut all = vec![vec![]];
        for g in pc.generators() {
            let range: Vec<i64> = if g.order == 0 { (-b..=b).collect() } else { (0..g.order as i64).collect() };
            all = all.into_iter().flat_map(|v: Vec<i64>| range.iter().map(move |&e| [v.clone(), vec![e]].concat())).collect();
        }
        all.into_iter()
            .filter(|x| x.iter().any(|&e| e != 0))
            .filter(|x| (1..=max_order).any(|k| pc.pow(x, k).iter().all(|&e| e == 0)))
            .collect()
    }

    #[test]
    fn free_nilpotent_is_torsion_free() {
        let f = free_nilpotent(2, 2, 64).unwrap();
        let t = torsion_subgroup(&f.presentation);
        assert!(t.is_torsion_free);
        assert!(bounded_torsion(&f.presentation, 3, 12).is_empty());
    }

    #[test]
    fn z_times_z2() {
        let pc = PcPresentation::new(vec![gen("a", 1, 0), gen("b", 1, 2)], BTreeMap::new(), BTreeMap::new(), 1).unwrap();
        let t = torsion_subgroup(&pc);
        assert!(!t.is_torsion_free);
        assert_eq!(t.order, 2);
    }

    #[test]
    fn hidden_torsion_above_infinite_generator() {
        // a² = c with c central of infinite order and b of order 2 with b² = c⁻¹... use
        // ⟨a, b | b² = 1, a central⟩ written with b first: b has order 2, a infinite.
        let pc = PcPresentation::new(
            vec![gen("b", 1, 2), gen("a", 1, 0), gen("c", 1, 0)],
            BTreeMap::from([(0, vec![0, 1, 0])]),
            BTreeMap::new(),
            1,
        )
        .unwrap();
        // b² = a, so b has infinite order; torsion-free
        assert!(torsion_subgroup(&pc).is_torsion_free);
        let pc = PcPresentation::new(vec![gen("b", 1, 2), gen("a", 1, 0)], BTreeMap::from([(0, vec![0, 2])]), BTreeMap::new(), 1).unwrap();
        // b² = a², so b a⁻¹ has order 2
        let t = torsion_subgroup(&pc);
        assert_eq!(t.order, 2);
        assert!(t.subgroup.contains(&pc, &pc.mul(&[1, 0], &[0, -1])));
    }

    #[test]
    fn klein_bottle_quotient_has_torsion() {
        let p = parse_presentation("gens: a b\nrel: a b a b^-1").unwrap();
        let q = nq(&p, 2).unwrap();
        let t = torsion_subgroup(&q.quotient);
        assert!(!t.is_torsion_free);
        let witnesses = bounded_torsion(&q.quotient, 2, 2);
        assert!(!witnesses.is_empty());
        for w in &witnesses {
            assert!(t.subgroup.contains(&q.quotient, w));
        }
    }

    #[test]
    fn torsion_agrees_with_bounded_search() {
        let cases = ["gens: a b\nrel: a^2 [a,b]^3", "gens: a b\nrel: [a,b]^2", "gens: a b\nrel: a^4 b^6", "gens: a b\nrel: [[a,b],a]^2"];
        for text in cases {
            let p = parse_presentation(text).unwrap();
            let q = nq(&p, 3).unwrap();
            let t = torsion_subgroup(&q.quotient);
            let found = bounded_torsion(&q.quotient, 2, 12);
            if t.is_torsion_free {
                assert!(found.is_empty(), "{text}");
            }
            for w in &found {
                assert!(t.subgroup.contains(&q.quotient, w), "{text}");
            }
            for b in t.subgroup.basis() {
                assert!(q.quotient.element_order(b).is_none());
                let k = t.order as i64;
                assert!(q.quotient.pow(b, k).iter().all(|&e| e == 0), "{text}");
            }
        }
    }

    #[test]
    fn heisenberg_is_torsion_free() {
        assert!(torsion_subgroup(&heisenberg()).is_torsion_free);
    }

    #[test]
    fn probe_examples() {
        let f2 = Presentation::free(&["a", "b"]);
        assert!(enough_tf_probe(&f2, 4).unwrap().all_torsion_free());
        let genus2 = parse_presentation("gens: a b c d\nrel: [a,b] [c,d]").unwrap();
        assert!(enough_tf_probe(&genus2, 3).unwrap().all_torsion_free());
        let klein = parse_presentation("gens: a b\nrel: a b a b^-1").unwrap();
        let probe = enough_tf_probe(&klein, 2).unwrap();
        assert!(probe.entries.iter().all(|e| !e.torsion_free));
        assert_eq!(probe.class_bound, 2);
    }
}
