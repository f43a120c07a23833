//! Finite split extensions `H ⋊ Q`, the τ-map and commutator inclusions.

use std::collections::HashMap;

use serde_json::json;

use super::ExtensionError;
use crate::finite::{FiniteGroup, Subset};
use crate::nilpotent::{ExpVec, PcPresentation};
use crate::par::{self, Execution};
use crate::pgroups::{fixture, Automorphism};
use crate::report::{Verdict, VerificationRecord};

/// `H ⋊ Q` with `(h₁, q₁)(h₂, q₂) = (h₁·(q₁▷h₂), q₁q₂)`; `Q` acts through
/// one automorphism of `H` per pc generator.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub name: String,
    kernel: PcPresentation,
    quotient: PcPresentation,
    actions: Vec<Automorphism>,
    phi: HashMap<ExpVec, Automorphism>,
    group: FiniteGroup,
    elements: Vec<(ExpVec, ExpVec)>,
    index: HashMap<(ExpVec, ExpVec), u32>,
}

fn compose(pc: &PcPresentation, a: &Automorphism, b: &Automorphism) -> Automorphism {
    // a ∘ b
    b.then(pc, a)
}

fn phi_of(kernel: &PcPresentation, actions: &[Automorphism], q: &[i64]) -> Automorphism {
    let mut out = Automorphism::identity(kernel);
    for i in (0..q.len()).rev() {
        for _ in 0..q[i] {
            out = out.then(kernel, &actions[i]);
        }
    }
    out
}

impl SemidirectProduct {
    pub fn new(name: &str, kernel: PcPresentation, quotient: PcPresentation, actions: Vec<Automorphism>) -> Result<Self, ExtensionError> {
        if !kernel.is_finite() || !quotient.is_finite() {
            return Err(crate::finite::FiniteError::Infinite.into());
        }
        if actions.len() != quotient.len() {
            return Err(ExtensionError::Dimension("one automorphism per quotient generator".into()));
        }
        for a in &actions {
            Automorphism::new(&kernel, a.images().to_vec())?;
        }
        let phi = |q: &[i64]| phi_of(&kernel, &actions, q);
        for i in 0..quotient.len() {
            let m = quotient.relative_order(i);
            let rhs = quotient.power_relation(i).cloned().unwrap_or_else(|| quotient.identity());
            if actions[i].pow(&kernel, m) != phi(&rhs) {
                return Err(ExtensionError::ActionMismatch(format!("power relation of generator {}", i + 1)));
            }
            for j in i + 1..quotient.len() {
                let lhs = compose(&kernel, &compose(&kernel, &actions[j], &actions[i]), &phi(quotient.commutator_relation(j, i)));
                if lhs != compose(&kernel, &actions[i], &actions[j]) {
                    return Err(ExtensionError::ActionMismatch(format!("commutator of generators {} and {}", j + 1, i + 1)));
                }
            }
        }
        let mut phi_table = HashMap::new();
        let (_, q_elements) = FiniteGroup::from_pc(&quotient)?;
        for q in q_elements {
            phi_table.insert(q.clone(), phi(&q));
        }
        let mut gens: Vec<(ExpVec, ExpVec)> = (0..kernel.len()).map(|i| (kernel.unit(i), quotient.identity())).collect();
        gens.extend((0..quotient.len()).map(|i| (kernel.identity(), quotient.unit(i))));
        let mul = |a: &(ExpVec, ExpVec), b: &(ExpVec, ExpVec)| {
            (kernel.mul(&a.0, &phi_table[&a.1].apply(&kernel, &b.0)), quotient.mul(&a.1, &b.1))
        };
        let (group, elements) = FiniteGroup::from_generators((kernel.identity(), quotient.identity()), &gens, mul)?;
        let index = elements.iter().enumerate().map(|(i, x)| (x.clone(), i as u32)).collect();
        Ok(SemidirectProduct { name: name.into(), kernel, quotient, actions, phi: phi_table, group, elements, index })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kernel_presentation(&self) -> &PcPresentation {
        &self.kernel
    }

    pub fn quotient_presentation(&self) -> &PcPresentation {
        &self.quotient
    }

    pub fn actions(&self) -> &[Automorphism] {
        &self.actions
    }

    pub fn element(&self, g: u32) -> &(ExpVec, ExpVec) {
        &self.elements[g as usize]
    }

    pub fn index_of(&self, h: &[i64], q: &[i64]) -> u32 {
        self.index[&(h.to_vec(), q.to_vec())]
    }

    /// `q ▷ h`.
    pub fn act(&self, q: &[i64], h: &[i64]) -> ExpVec {
        self.phi[q].apply(&self.kernel, h)
    }

    /// `H` as a subset of `G`.
    pub fn kernel(&self) -> Subset {
        let id = self.quotient.identity();
        let members: Vec<u32> = (0..self.elements.len() as u32).filter(|&g| self.elements[g as usize].1 == id).collect();
        self.group.subset(&members)
    }

    /// The section `j(q) = (1, q)`.
    pub fn section(&self, q: &[i64]) -> u32 {
        self.index_of(&self.kernel.identity(), q)
    }

    /// The projection `p(g) = q`.
    pub fn projection(&self, g: u32) -> &ExpVec {
        &self.elements[g as usize].1
    }

    /// `τ(g) = j(p(g)⁻¹)·g`, that is `τ(h, q) = q⁻¹ ▷ h`.
    pub fn tau(&self, g: u32) -> u32 {
        let q_inv = self.quotient.inverse(self.projection(g));
        self.group.mul(self.section(&q_inv), g)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// `τ(g₁g₂) = p(g₂)⁻¹ τ(g₁) p(g₂) · τ(g₂)` on all pairs.
pub fn tau_equation_check(g: &SemidirectProduct, exec: Execution) -> VerificationRecord {
    let grp = g.group();
    let n = grp.order();
    let failures: Vec<(u32, u32)> = par::map_range(exec, n, |a| {
        let a = a as u32;
        (0..n as u32)
            .filter(|&b| {
                let lhs = g.tau(grp.mul(a, b));
                let rhs = grp.mul(grp.conj(g.tau(a), g.section(g.projection(b))), g.tau(b));
                lhs != rhs
            })
            .map(|b| (a, b))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    let mut rec = VerificationRecord::new("tau_equation", &g.name);
    rec.hypothesis("extension is split", true);
    let witness = json!({ "pairs_checked": n * n, "failures": failures.len() });
    rec.with_witness(witness).check(failures.is_empty())
}

/// Length of `K = X₀ ⊇ X₁ ⊇ …`, `X_{t+1} = [X_t, G]·K'`, until it reaches `K'`;
/// `None` if it stabilizes above `K'`.
pub fn acts_unipotently(g: &FiniteGroup, k: &Subset, k_prime: &Subset) -> Option<usize> {
    let mut x = g.join(k, k_prime);
    let mut steps = 0;
    while &x != k_prime {
        let next = g.join(&g.commutator(&x, &g.whole()), k_prime);
        if next == x {
            return None;
        }
        x = next;
        steps += 1;
    }
    Some(steps.max(1))
}

/// `τ(γ_{2^m}(G)) ⊆ γ^m H G^m` when `G` acts unipotently on `H₁(H; Z)`.
pub fn falk_randell_inclusion_check(g: &SemidirectProduct, m: usize) -> VerificationRecord {
    let grp = g.group();
    let h = g.kernel();
    let mut rec = VerificationRecord::new("falk_randell_inclusion", &format!("{} (m = {m})", g.name));
    let hh = grp.commutator(&h, &h);
    if !rec.hypothesis("G acts unipotently on H1(H; Z)", acts_unipotently(grp, &h, &hh).is_some()) {
        return rec.conclude(Verdict::Inapplicable);
    }
    let gamma = grp.gamma(1 << m);
    let target = grp.iterated_commutator(&h, m);
    let image: Vec<u32> = gamma.elements().into_iter().map(|x| g.tau(x)).collect();
    let ok = image.iter().all(|&t| target.contains(t));
    rec.with_witness(json!({ "gamma_order": gamma.len(), "target_order": target.len() })).check(ok)
}

/// `[γ_k(G), H] ⊆ γ^m H G^m` with `k = m(m−1)/2 + 1`.
pub fn hall_inclusion_check(g: &FiniteGroup, h: &Subset, m: usize, instance: &str) -> VerificationRecord {
    let mut rec = VerificationRecord::new("hall_inclusion", &format!("{instance} (m = {m})"));
    if !rec.hypothesis("H normal in G", g.is_subgroup(h) && g.is_normal(h)) {
        return rec.conclude(Verdict::Inapplicable);
    }
    let k = m * m.saturating_sub(1) / 2 + 1;
    let lhs = g.commutator(&g.gamma(k), h);
    let rhs = g.iterated_commutator(h, m);
    rec.with_witness(json!({ "k": k, "lhs_order": lhs.len(), "rhs_order": rhs.len() })).check(lhs.is_subset(&rhs))
}

/// Chain `1 = G₀ ≤ … ≤ G_n = G`: if `G` acts unipotently on each
/// `H₁(G_{i+1}/G_i)`, it acts unipotently on every `H₁(G_i)`.
pub fn iterated_unipotence_check(g: &FiniteGroup, chain: &[Subset], instance: &str) -> VerificationRecord {
    let mut rec = VerificationRecord::new("iterated_unipotence", instance);
    let ends = chain.first().is_some_and(Subset::is_trivial) && chain.last() == Some(&g.whole());
    rec.hypothesis("chain runs from 1 to G", ends);
    let normal = chain.iter().all(|s| g.is_subgroup(s) && g.is_normal(s)) && chain.windows(2).all(|w| w[0].is_subset(&w[1]));
    rec.hypothesis("ascending chain of normal subgroups", normal);
    if !rec.hypotheses_hold() {
        return rec.conclude(Verdict::Inapplicable);
    }
    let layers_ok = chain.windows(2).all(|w| {
        let k_prime = g.join(&w[0], &g.commutator(&w[1], &w[1]));
        acts_unipotently(g, &w[1], &k_prime).is_some()
    });
    if !rec.hypothesis("G acts unipotently on each H1(G_{i+1}/G_i)", layers_ok) {
        return rec.conclude(Verdict::Inapplicable);
    }
    let lengths: Vec<Option<usize>> = chain.iter().map(|k| acts_unipotently(g, k, &g.commutator(k, k))).collect();
    let ok = lengths.iter().all(Option::is_some);
    rec.with_witness(json!({ "lengths": lengths })).check(ok)
}

fn cyclic_pc(m: u64) -> PcPresentation {
    PcPresentation::from_json_str(&format!(r#"{{"generators":[{{"id":"q","weight":1,"order":{m}}}],"class":1}}"#)).expect("cyclic pc")
}

fn heisenberg_pc(p: u64) -> PcPresentation {
    let text = format!(
        r#"{{"generators":[{{"id":"x","weight":1,"order":{p}}},{{"id":"y","weight":1,"order":{p}}},{{"id":"z","weight":2,"order":{p}}}],
            "commutators":{{"y,x":[[2,1]]}},"class":2}}"#
    );
    PcPresentation::from_json_str(&text).expect("Heisenberg pc")
}

/// `x ↦ x`, `y ↦ xy`.
fn shear(pc: &PcPresentation) -> Automorphism {
    let x = pc.unit(0);
    let y = pc.mul(&x, &pc.unit(1));
    let z = pc.comm(&y, &x);
    Automorphism::new(pc, vec![x, y, z]).expect("shear is an automorphism")
}

/// `x ↔ y`.
fn swap_xy(pc: &PcPresentation) -> Automorphism {
    let z = pc.inverse(&pc.unit(2));
    Automorphism::new(pc, vec![pc.unit(1), pc.unit(0), z]).expect("swap is an automorphism")
}

/// The split fixtures used by the τ, Falk–Randell and Hall checks.
pub fn split_fixtures() -> Vec<SemidirectProduct> {
    let mut out = Vec::new();
    for p in [2, 3] {
        let h = heisenberg_pc(p);
        let a = if p == 2 { swap_xy(&h) } else { shear(&h) };
        out.push(SemidirectProduct::new(&format!("heis(Z/{p}) x| Z/{p}"), h, cyclic_pc(p), vec![a]).unwrap());
    }
    let c4 = cyclic_pc(4);
    let inversion = Automorphism::new(&c4, vec![c4.pow(&c4.unit(0), -1)]).unwrap();
    out.push(SemidirectProduct::new("Z/4 x| Z/2", c4, cyclic_pc(2), vec![inversion]).unwrap());
    let c3 = cyclic_pc(3);
    let inversion = Automorphism::new(&c3, vec![c3.pow(&c3.unit(0), -1)]).unwrap();
    out.push(SemidirectProduct::new("Z/3 x| Z/2", c3, cyclic_pc(2), vec![inversion]).unwrap());
    let c4xc2 = fixture("c4xc2").unwrap().pc().clone();
    let id = Automorphism::identity(&c4xc2);
    out.push(SemidirectProduct::new("(Z/4 x Z/2) x Z/2", c4xc2, cyclic_pc(2), vec![id]).unwrap());
    out.push(d8_wreath_c2());
    out
}

/// `D₄ ≀ C₂ = (D₄ × D₄) ⋊ C₂`, of order 128.
fn d8_wreath_c2() -> SemidirectProduct {
    let text = r#"{"generators":[
        {"id":"x1","weight":1,"order":2},{"id":"y1","weight":1,"order":2},
        {"id":"x2","weight":1,"order":2},{"id":"y2","weight":1,"order":2},
        {"id":"z1","weight":2,"order":2},{"id":"z2","weight":2,"order":2}],
        "powers":{"y1":[[4,1]],"y2":[[5,1]]},
        "commutators":{"y1,x1":[[4,1]],"y2,x2":[[5,1]]},"class":2}"#;
    let h = PcPresentation::from_json_str(text).expect("D4 x D4");
    let swap = Automorphism::new(&h, [2, 3, 0, 1, 5, 4].iter().map(|&i| h.unit(i)).collect()).unwrap();
    SemidirectProduct::new("D4 wr C2", h, cyclic_pc(2), vec![swap]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_expected_orders() {
        let orders: Vec<usize> = split_fixtures().iter().map(SemidirectProduct::order).collect();
        assert_eq!(orders, vec![16, 81, 8, 6, 16, 128]);
    }

    #[test]
    fn tau_basics() {
        for g in split_fixtures() {
            let grp = g.group();
            let h = g.kernel();
            for x in h.elements() {
                assert_eq!(g.tau(x), x);
            }
            for x in 0..grp.order() as u32 {
                assert!(h.contains(g.tau(x)));
                let q = g.projection(x).clone();
                assert_eq!(g.tau(g.section(&q)), 0);
                // defining formula on pairs: τ(h, q) = q⁻¹ ▷ h
                let (hh, qq) = g.element(x).clone();
                let direct = g.act(&g.quotient_presentation().inverse(&qq), &hh);
                assert_eq!(g.tau(x), g.index_of(&direct, &g.quotient_presentation().identity()));
            }
        }
    }

    #[test]
    fn tau_equation_on_all_fixtures() {
        for g in split_fixtures() {
            assert!(tau_equation_check(&g, Execution::default()).passed(), "{}", g.name);
        }
    }

    #[test]
    fn falk_randell_and_hall() {
        let mut applicable = 0;
        for g in split_fixtures() {
            for m in 0..=3 {
                let rec = falk_randell_inclusion_check(&g, m);
                assert_ne!(rec.verdict, Verdict::Fail, "{rec:?}");
                applicable += usize::from(rec.passed());
                let hall = hall_inclusion_check(g.group(), &g.kernel(), m, &g.name);
                assert!(hall.passed(), "{hall:?}");
            }
        }
        assert!(applicable >= 12);
        // Z/3 ⋊ Z/2 = S₃ acts by −1 on Z/3
        let s3 = &split_fixtures()[3];
        assert_eq!(falk_randell_inclusion_check(s3, 1).verdict, Verdict::Inapplicable);
    }

    #[test]
    fn hall_on_wreath_product_subgroups() {
        let w = d8_wreath_c2();
        let g = w.group();
        let mut normals = vec![w.kernel(), g.gamma(2), g.gamma(3), g.whole()];
        normals.push(g.normal_closure(&[1]));
        for h in &normals {
            for m in 1..=3 {
                assert!(hall_inclusion_check(g, h, m, "D4 wr C2").passed());
            }
        }
    }

    #[test]
    fn iterated_unipotence_examples() {
        let d8 = fixture("d8").unwrap();
        let (g, _) = FiniteGroup::from_pc(d8.pc()).unwrap();
        let series: Vec<Subset> = g.lower_central_series().into_iter().rev().collect();
        assert!(iterated_unipotence_check(&g, &series, "d8 central series").passed());
        let single = vec![g.trivial(), g.whole()];
        assert!(iterated_unipotence_check(&g, &single, "d8").passed());
        // unitriangular 3×3 over F₂ with its natural flag
        type M = [[u8; 3]; 3];
        let mul = |a: &M, b: &M| {
            let mut c = [[0u8; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<u8>() % 2;
                }
            }
            c
        };
        let id: M = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let e12: M = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
        let e23: M = [[1, 0, 0], [0, 1, 1], [0, 0, 1]];
        let (u, els) = FiniteGroup::from_generators(id, &[e12, e23], mul).unwrap();
        let corner: Vec<u32> = (0..u.order() as u32).filter(|&i| els[i as usize][0][1] == 0 && els[i as usize][1][2] == 0).collect();
        let chain = vec![u.trivial(), u.subset(&corner), u.whole()];
        assert!(iterated_unipotence_check(&u, &chain, "U3(F2)").passed());
        // S₃ is not nilpotent: the layer hypothesis fails
        let s3 = &split_fixtures()[3];
        let chain = vec![s3.group().trivial(), s3.kernel(), s3.group().whole()];
        assert_eq!(iterated_unipotence_check(s3.group(), &chain, "S3").verdict, Verdict::Inapplicable);
    }

    #[test]
    fn rejects_bad_actions() {
        let h = heisenberg_pc(3);
        // the shear has order 3, so it is not an action of Z/2
        assert!(matches!(SemidirectProduct::new("bad", h.clone(), cyclic_pc(2), vec![shear(&h)]), Err(ExtensionError::ActionMismatch(_))));
    }
}
