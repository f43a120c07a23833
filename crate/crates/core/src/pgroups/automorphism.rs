//! Automorphisms of finite pc groups given by images of the pc generators.

use serde_json::json;

use super::{p_lower_central_series, subgroup_elements, FinitePGroup, PGroupError};
use crate::nilpotent::{ExpVec, PcPresentation, Subgroup};
use crate::report::{Verdict, VerificationRecord};

/// Largest group order for which automorphisms are enumerated.
pub const AUTOMORPHISM_CAP: u128 = 1 << 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<ExpVec>,
}

/// Acting generators, each by an automorphism of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub generators: Vec<String>,
    pub images: Vec<Automorphism>,
}

fn apply_partial(pc: &PcPresentation, images: &[Option<ExpVec>], x: &[i64]) -> ExpVec {
    let mut out = pc.identity();
    for (i, &e) in x.iter().enumerate() {
        if e != 0 {
            let img = images[i].as_ref().expect("image assigned for every occurring generator");
            pc.mul_assign(&mut out, &pc.pow(img, e));
        }
    }
    out
}

/// Relations of generator `i` (its power relation and `[gⱼ, gᵢ]` for `j > i`)
/// hold for the assigned images.
fn relations_hold_at(pc: &PcPresentation, images: &[Option<ExpVec>], i: usize) -> bool {
    let xi = images[i].as_ref().unwrap();
    let m = pc.relative_order(i);
    if m != 0 {
        let rhs = pc.power_relation(i).cloned().unwrap_or_else(|| pc.identity());
        if pc.pow(xi, m as i64) != apply_partial(pc, images, &rhs) {
            return false;
        }
    }
    (i + 1..pc.len()).all(|j| {
        let xj = images[j].as_ref().unwrap();
        pc.comm(xj, xi) == apply_partial(pc, images, pc.commutator_relation(j, i))
    })
}

impl Automorphism {
    /// Checks that the images satisfy every defining relation and generate the group.
    pub fn new(pc: &PcPresentation, images: Vec<ExpVec>) -> Result<Self, PGroupError> {
        if images.len() != pc.len() || images.iter().any(|x| x.len() != pc.len() || !pc.is_normal(x)) {
            return Err(PGroupError::NotAutomorphism("images must be normal words, one per generator".into()));
        }
        if !pc.is_finite() {
            return Err(PGroupError::NotAutomorphism("bijectivity is only checked for finite groups".into()));
        }
        let partial: Vec<Option<ExpVec>> = images.iter().cloned().map(Some).collect();
        if let Some(i) = (0..pc.len()).find(|&i| !relations_hold_at(pc, &partial, i)) {
            return Err(PGroupError::NotAutomorphism(format!("relations of generator {} fail", i + 1)));
        }
        if Subgroup::generate(pc, &images).order(pc) != pc.order() {
            return Err(PGroupError::NotAutomorphism("images do not generate".into()));
        }
        Ok(Automorphism { images })
    }

    /// Images taken as given; for infinite groups whose maps are known to be automorphisms.
    pub(crate) fn from_images_unchecked(images: Vec<ExpVec>) -> Self {
        Automorphism { images }
    }

    pub fn identity(pc: &PcPresentation) -> Self {
        Automorphism { images: (0..pc.len()).map(|i| pc.unit(i)).collect() }
    }

    /// Conjugation `x ↦ g⁻¹xg`.
    pub fn inner(pc: &PcPresentation, g: &[i64]) -> Self {
        Automorphism { images: (0..pc.len()).map(|i| pc.conjugate(&pc.unit(i), g)).collect() }
    }

    pub fn images(&self) -> &[ExpVec] {
        &self.images
    }

    pub fn apply(&self, pc: &PcPresentation, x: &[i64]) -> ExpVec {
        let mut out = pc.identity();
        for (i, &e) in x.iter().enumerate() {
            if e != 0 {
                pc.mul_assign(&mut out, &pc.pow(&self.images[i], e));
            }
        }
        out
    }

    /// `x ↦ other(self(x))`.
    pub fn then(&self, pc: &PcPresentation, other: &Automorphism) -> Automorphism {
        Automorphism { images: self.images.iter().map(|x| other.apply(pc, x)).collect() }
    }

    pub fn pow(&self, pc: &PcPresentation, e: u64) -> Automorphism {
        let mut out = Automorphism::identity(pc);
        for _ in 0..e {
            out = out.then(pc, self);
        }
        out
    }

    pub fn is_identity(&self, pc: &PcPresentation) -> bool {
        self.images.iter().enumerate().all(|(i, x)| *x == pc.unit(i))
    }
}

/// Every automorphism inducing the identity on `G/Φ(G) = H₁(G, Z/p)`, by
/// backtracking over images `gᵢ·Φ(G)` from the last generator up.
pub fn h1_trivial_automorphisms(g: &FinitePGroup) -> Result<Vec<Automorphism>, PGroupError> {
    if g.order() > AUTOMORPHISM_CAP {
        return Err(PGroupError::TooLarge(g.order()));
    }
    let pc = g.pc();
    let chain = p_lower_central_series(g);
    let frattini = chain.subgroups.get(1).cloned().unwrap_or_else(|| Subgroup::trivial(pc));
    let phi = subgroup_elements(pc, &frattini);
    let n = pc.len();
    let mut images: Vec<Option<ExpVec>> = vec![None; n];
    let mut out = Vec::new();
    fn search(pc: &PcPresentation, phi: &[ExpVec], i: usize, images: &mut Vec<Option<ExpVec>>, out: &mut Vec<Automorphism>) {
        for f in phi {
            images[i] = Some(pc.mul(&pc.unit(i), f));
            if !relations_hold_at(pc, images, i) {
                continue;
            }
            if i == 0 {
                out.push(Automorphism { images: images.iter().map(|x| x.clone().unwrap()).collect() });
            } else {
                search(pc, phi, i - 1, images, out);
            }
        }
        images[i] = None;
    }
    if n == 0 {
        return Ok(vec![Automorphism { images: Vec::new() }]);
    }
    search(pc, &phi, n - 1, &mut images, &mut out);
    Ok(out)
}

/// If `α` is trivial on `γ₁ᵖ/γ₂ᵖ`, then `α^{p^{k−1}} = id` with `k` the nilpotent p-length.
pub fn check_power_lemma_automorphism(g: &FinitePGroup, alpha: &Automorphism, instance: &str) -> VerificationRecord {
    let pc = g.pc();
    let mut rec = VerificationRecord::new("power_lemma_automorphism", instance);
    if !rec.hypothesis("group is nontrivial", !pc.is_empty()) {
        return rec.conclude(Verdict::Inapplicable);
    }
    let chain = p_lower_central_series(g);
    let frattini = &chain.subgroups[1];
    let trivial_on_h1 = (0..pc.len()).all(|i| frattini.contains(pc, &pc.mul(&pc.inverse(&pc.unit(i)), &alpha.apply(pc, &pc.unit(i)))));
    if !rec.hypothesis("acts trivially on H1(G, Z/p)", trivial_on_h1) {
        return rec.conclude(Verdict::Inapplicable);
    }
    let k = chain.length;
    let exponent = g.prime().pow(k as u32 - 1);
    let ok = alpha.pow(pc, exponent).is_identity(pc);
    rec.with_witness(json!({ "p_length": k, "exponent": exponent })).check(ok)
}

#[cfg(test)]
mod tests {
    use super::super::{fixture, fixtures};
    use super::*;
    use crate::finite::FiniteGroup;

    #[test]
    fn identity_and_inner_automorphisms_of_d8() {
        let d8 = fixture("d8").unwrap();
        let pc = d8.pc();
        assert!(check_power_lemma_automorphism(&d8, &Automorphism::identity(pc), "d8").passed());
        for x in d8.elements() {
            let a = Automorphism::inner(pc, &x);
            Automorphism::new(pc, a.images().to_vec()).unwrap();
            let rec = check_power_lemma_automorphism(&d8, &a, "d8");
            assert!(rec.passed());
            assert_eq!(rec.witness.unwrap()["p_length"], 2);
            assert!(a.pow(pc, 2).is_identity(pc));
        }
    }

    #[test]
    fn cube_map_of_z4() {
        let c4 = super::super::tests::cyclic_p_group(2, 2);
        let pc = c4.pc();
        let cube = Automorphism::new(pc, vec![pc.pow(&pc.unit(0), 3), pc.unit(1)]).unwrap();
        let rec = check_power_lemma_automorphism(&c4, &cube, "c4");
        assert!(rec.passed());
        assert_eq!(rec.witness.unwrap()["exponent"], 2);
    }

    #[test]
    fn swap_is_inapplicable() {
        let g = fixture("c2^3").unwrap();
        let pc = g.pc();
        let swap = Automorphism::new(pc, vec![pc.unit(1), pc.unit(0), pc.unit(2)]).unwrap();
        assert_eq!(check_power_lemma_automorphism(&g, &swap, "c2^3").verdict, Verdict::Inapplicable);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let d8 = fixture("d8").unwrap();
        let pc = d8.pc();
        assert!(Automorphism::new(pc, vec![pc.unit(1), pc.unit(1), pc.unit(2)]).is_err());
        assert!(Automorphism::new(pc, vec![pc.identity(), pc.unit(1), pc.unit(2)]).is_err());
    }

    /// Brute force: all bijections on the Cayley table fixing cosets of Φ.
    fn h1_trivial_count_by_table(g: &FinitePGroup) -> usize {
        let pc = g.pc();
        let elements = g.elements();
        let frattini = p_lower_central_series(g).subgroups[1].clone();
        let (fg, fe) = FiniteGroup::from_pc(pc).unwrap();
        let index = |x: &ExpVec| fe.iter().position(|y| y == x).unwrap() as u32;
        let candidates: Vec<Vec<ExpVec>> = (0..pc.len())
            .map(|i| elements.iter().filter(|x| frattini.contains(pc, &pc.mul(&pc.inverse(&pc.unit(i)), x))).cloned().collect())
            .collect();
        let mut count = 0;
        let mut choice = vec![0usize; pc.len()];
        loop {
            let imgs: Vec<ExpVec> = choice.iter().enumerate().map(|(i, &c)| candidates[i][c].clone()).collect();
            let map = Automorphism { images: imgs };
            let table: Vec<u32> = fe.iter().map(|x| index(&map.apply(pc, x))).collect();
            if fg.is_automorphism(&table).is_ok() {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return count;
                }
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn enumeration_matches_table_check_on_order_8() {
        for name in super::super::ORDER_8 {
            let g = fixture(name).unwrap();
            let auts = h1_trivial_automorphisms(&g).unwrap();
            assert_eq!(auts.len(), h1_trivial_count_by_table(&g), "{name}");
            for a in &auts {
                Automorphism::new(g.pc(), a.images().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn power_lemma_holds_on_all_fixtures() {
        for (name, g) in fixtures() {
            let auts = h1_trivial_automorphisms(&g).unwrap();
            assert!(!auts.is_empty());
            for a in &auts {
                assert!(check_power_lemma_automorphism(&g, a, name).passed(), "{name}");
            }
        }
    }
}
