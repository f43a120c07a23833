//! Finitely generated subgroups of infinite powers `F^I` of a finite group,
//! with sparse elements.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::json;

use crate::finite::FiniteGroup;
use crate::report::{Verdict, VerificationRecord};

/// Element of `F^I`: non-identity coordinates only.
pub type SparseElement = BTreeMap<usize, u32>;

fn sparse_mul(f: &FiniteGroup, a: &SparseElement, b: &SparseElement) -> SparseElement {
    let mut out = a.clone();
    for (&i, &y) in b {
        let x = out.get(&i).copied().unwrap_or(0);
        let z = f.mul(x, y);
        if z == 0 {
            out.remove(&i);
        } else {
            out.insert(i, z);
        }
    }
    out
}

fn bfs<T: Clone + Eq + std::hash::Hash>(identity: T, gens: &[T], mul: impl Fn(&T, &T) -> T, cap: usize) -> Option<usize> {
    let mut seen: HashSet<T> = HashSet::from([identity.clone()]);
    let mut queue = vec![identity];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push(y);
            }
        }
    }
    Some(seen.len())
}

/// The subgroup of `F^I` generated by `gens` embeds in `F^J`, `J` one index
/// per distinct coordinate pattern `μ(i) = (g₁(i), …, g_r(i))`; hence it is
/// finite of order dividing `|F|^|J|`. Both sides are enumerated up to `cap`.
pub fn product_subgroup_check(
    f: &FiniteGroup,
    index_size: usize,
    gens: &[SparseElement],
    cap: usize,
    instance: &str,
) -> VerificationRecord {
    let mut rec = VerificationRecord::new("product_of_finite_groups", instance);
    let in_range = gens.iter().all(|g| g.keys().all(|&i| i < index_size) && g.values().all(|&x| (x as usize) < f.order()));
    if !rec.hypothesis("generators lie in F^I", in_range) {
        return rec.conclude(Verdict::Inapplicable);
    }
    let support: std::collections::BTreeSet<usize> = gens.iter().flat_map(|g| g.keys().copied()).collect();
    let mut patterns: Vec<Vec<u32>> = support.iter().map(|i| gens.iter().map(|g| g.get(i).copied().unwrap_or(0)).collect()).collect();
    if support.len() < index_size {
        patterns.push(vec![0; gens.len()]);
    }
    patterns.sort();
    patterns.dedup();
    let projected: Vec<Vec<u32>> = (0..gens.len()).map(|k| patterns.iter().map(|pat| pat[k]).collect()).collect();
    let order_j = bfs(vec![0u32; patterns.len()], &projected, |a, b| a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect(), cap);
    let order_i = bfs(SparseElement::new(), gens, |a, b| sparse_mul(f, a, b), cap);
    let (Some(oj), Some(oi)) = (order_j, order_i) else {
        return rec.conclude(Verdict::Inconclusive);
    };
    let bound = BigUint::from(f.order()).pow(patterns.len() as u32);
    let divides = bound.mod_floor(&BigUint::from(oi)).is_zero();
    rec.with_witness(json!({ "patterns": patterns.len(), "order": oi, "projected_order": oj })).check(oi == oj && divides)
}
