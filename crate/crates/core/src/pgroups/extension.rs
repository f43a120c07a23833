//! The subgroup `U = V·(γₙ(G) ∩ p⁻¹(W))` of an extension `1 → H → G → Q → 1`
//! on finite instances.

use serde_json::json;

use crate::finite::{FiniteGroup, Subset};
use crate::report::{Verdict, VerificationRecord};

/// A finite extension: `kernel` is `H`, `w_preimage` is `p⁻¹(W)` for `W ≤ Q = G/H`.
#[derive(Debug, Clone)]
pub struct ExtensionInstance {
    pub name: String,
    pub group: FiniteGroup,
    pub kernel: Subset,
    pub v: Subset,
    pub n: usize,
    pub w_preimage: Subset,
}

impl ExtensionInstance {
    pub fn u(&self) -> Subset {
        let g = &self.group;
        g.join(&self.v, &g.gamma(self.n).intersection(&self.w_preimage))
    }
}

/// Builds `U` and checks that `1 → H/V → G/U → Q/W → 1` is exact.
pub fn lemma_extension_construction_check(inst: &ExtensionInstance) -> VerificationRecord {
    let g = &inst.group;
    let (h, v, wt) = (&inst.kernel, &inst.v, &inst.w_preimage);
    let mut rec = VerificationRecord::new("extension_construction", &format!("{} (n = {})", inst.name, inst.n));
    let gamma = g.gamma(inst.n.max(1));
    rec.hypothesis("n >= 1", inst.n >= 1);
    rec.hypothesis("H normal in G", g.is_subgroup(h) && g.is_normal(h));
    rec.hypothesis("V normal in G and contained in H", g.is_subgroup(v) && g.is_normal(v) && v.is_subset(h));
    rec.hypothesis("gamma_n(G) ∩ H ⊆ V", gamma.intersection(h).is_subset(v));
    rec.hypothesis("p^-1(W) normal in G and contains H", g.is_subgroup(wt) && g.is_normal(wt) && h.is_subset(wt));
    rec.hypothesis("W ⊆ gamma_n(Q)", wt.is_subset(&g.join(h, &gamma)));
    if !rec.hypotheses_hold() {
        return rec.conclude(Verdict::Inapplicable);
    }
    let u = inst.u();
    let normal = g.is_normal(&u);
    let injective = h.intersection(&u) == *v;
    let middle = g.join(h, &u) == *wt;
    let orders = g.order() / u.len() == (h.len() / v.len()) * (g.order() / wt.len());
    rec.with_witness(json!({
        "order_u": u.len(),
        "u_normal": normal,
        "h_cap_u_is_v": injective,
        "h_u_is_preimage": middle,
        "orders_multiply": orders,
    }))
    .check(normal && injective && middle && orders && u.is_subset(wt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::direct_product;
    use crate::finite::tests::{cyclic, dihedral};
    use crate::pgroups::fixture;

    fn center(g: &FiniteGroup, within: &Subset) -> Subset {
        let els = within.elements();
        let c: Vec<u32> = els.iter().copied().filter(|&x| els.iter().all(|&y| g.comm(x, y) == 0)).collect();
        g.subset(&c)
    }

    #[test]
    fn degenerate_quotient() {
        let (g, _) = FiniteGroup::from_pc(fixture("d16").unwrap().pc()).unwrap();
        for n in 1..=4 {
            for v in [g.whole(), g.gamma(2), g.gamma(3), center(&g, &g.whole())] {
                let inst =
                    ExtensionInstance { name: "d16".into(), group: g.clone(), kernel: g.whole(), v: v.clone(), n, w_preimage: g.whole() };
                let rec = lemma_extension_construction_check(&inst);
                if g.gamma(n).is_subset(&v) {
                    assert!(rec.passed());
                    assert_eq!(inst.u(), g.join(&v, &g.gamma(n)));
                } else {
                    assert_eq!(rec.verdict, Verdict::Inapplicable);
                }
            }
        }
    }

    #[test]
    fn heisenberg_mod_8() {
        let mul = |x: &(i64, i64, i64), y: &(i64, i64, i64)| ((x.0 + y.0) % 8, (x.1 + y.1) % 8, (x.2 + y.2 + x.0 * y.1) % 8);
        let (g, els) = FiniteGroup::from_generators((0, 0, 0), &[(1, 0, 0), (0, 1, 0)], mul).unwrap();
        assert_eq!(g.order(), 512);
        let h_els: Vec<u32> = (0..512u32).filter(|&i| els[i as usize].0 % 2 == 0).collect();
        let h = g.subset(&h_els);
        let hh = g.commutator(&h, &h);
        let frattini = g.join(&hh, &g.power_subgroup(&h, 2));
        let candidates = [h.clone(), hh.clone(), frattini.clone(), center(&g, &h), g.join(&hh, &g.power_subgroup(&h, 4)), g.trivial()];
        let mut passes = 0;
        for v in &candidates {
            for n in 1..=5 {
                for wt in [h.clone(), g.whole()] {
                    let inst = ExtensionInstance {
                        name: "heis(Z/8)".into(),
                        group: g.clone(),
                        kernel: h.clone(),
                        v: v.clone(),
                        n,
                        w_preimage: wt,
                    };
                    let rec = lemma_extension_construction_check(&inst);
                    assert_ne!(rec.verdict, Verdict::Fail, "{rec:?}");
                    passes += usize::from(rec.passed());
                }
            }
        }
        assert!(passes >= 10, "only {passes} applicable instances");
    }

    #[test]
    fn split_product() {
        let (hg, _) = FiniteGroup::from_pc(fixture("q8").unwrap().pc()).unwrap();
        let q = dihedral(4);
        let g = direct_product(&hg, &q);
        let nq = q.order() as u32;
        let embed_h = |s: &Subset| g.subset(&s.elements().iter().map(|&a| a * nq).collect::<Vec<_>>());
        let product = |a: &Subset, b: &Subset| {
            g.subset(&a.elements().iter().flat_map(|&x| b.elements().into_iter().map(move |y| x * nq + y)).collect::<Vec<_>>())
        };
        let h = embed_h(&hg.whole());
        for n in 1..=3 {
            for w in [q.trivial(), q.gamma(2), q.whole()] {
                for v in [hg.whole(), hg.gamma(2), hg.trivial()] {
                    let inst = ExtensionInstance {
                        name: "q8 x d8".into(),
                        group: g.clone(),
                        kernel: h.clone(),
                        v: embed_h(&v),
                        n,
                        w_preimage: product(&hg.whole(), &w),
                    };
                    let rec = lemma_extension_construction_check(&inst);
                    if rec.hypotheses_hold() {
                        assert!(rec.passed());
                        assert_eq!(inst.u(), product(&v, &w));
                    }
                }
            }
        }
        let _ = cyclic(2);
    }
}
