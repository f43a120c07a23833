//! Finite p-groups on consistent pc presentations: p-lower central series,
//! automorphisms, power lemmas, unipotent actions and normal cores.

mod automorphism;
mod extension;
mod linear;
mod product;

use serde::Serialize;
use thiserror::Error;

use crate::nilpotent::{ExpVec, PcError, PcJson, PcPresentation, Subgroup};

pub use automorphism::{check_power_lemma_automorphism, h1_trivial_automorphisms, Automorphism, GroupAction, AUTOMORPHISM_CAP};
pub use extension::{lemma_extension_construction_check, ExtensionInstance};
pub use linear::{check_power_lemma_matrix, is_unipotent_action, unipotent_mod_p_transfer, FpMatrix, LinearAction, Ring, Unipotence};
pub use product::{product_subgroup_check, SparseElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PGroupError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("relative orders are not all equal to one prime")]
    MixedOrders,
    #[error("fixture prime {given} does not match relative order {found}")]
    PrimeMismatch { given: u64, found: u64 },
    #[error("trivial group")]
    Trivial,
    #[error("group of order {0} exceeds the enumeration cap")]
    TooLarge(u128),
    #[error("subset is not closed under the group operation")]
    NotSubgroup,
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("matrix: {0}")]
    BadMatrix(String),
    #[error("unknown fixture {0}")]
    UnknownFixture(String),
    #[error(transparent)]
    Pc(#[from] PcError),
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A finite p-group: a consistent pc presentation whose relative orders all equal `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePGroup {
    pc: PcPresentation,
    prime: u64,
}

impl FinitePGroup {
    pub fn new(pc: PcPresentation) -> Result<Self, PGroupError> {
        let p = pc.generators().first().map_or(2, |g| g.order);
        if !is_prime(p) {
            return Err(if p == 0 { PGroupError::MixedOrders } else { PGroupError::NotPrime(p) });
        }
        if pc.generators().iter().any(|g| g.order != p) {
            return Err(PGroupError::MixedOrders);
        }
        Ok(FinitePGroup { pc, prime: p })
    }

    /// Parses the pc JSON format with its `"prime"` field.
    pub fn from_json_str(text: &str) -> Result<Self, PGroupError> {
        let json: PcJson = serde_json::from_str(text).map_err(|e| PcError::Json(e.to_string()))?;
        let g = FinitePGroup::new(PcPresentation::from_json(&json)?)?;
        if let Some(given) = json.prime {
            if given != g.prime && !g.pc.is_empty() {
                return Err(PGroupError::PrimeMismatch { given, found: g.prime });
            }
        }
        Ok(g)
    }

    pub fn pc(&self) -> &PcPresentation {
        &self.pc
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn order(&self) -> u128 {
        (self.prime as u128).pow(self.pc.len() as u32)
    }

    /// All elements as normal forms, in mixed-radix order.
    pub fn elements(&self) -> Vec<ExpVec> {
        subgroup_elements(&self.pc, &Subgroup::whole(&self.pc))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(&self.pc)
    }

    pub fn is_central(&self, s: &Subgroup) -> bool {
        s.basis().iter().all(|b| (0..self.pc.len()).all(|i| self.pc.comm(b, &self.pc.unit(i)).iter().all(|&e| e == 0)))
    }
}

/// All elements of a subgroup of a finite pc group.
pub fn subgroup_elements(pc: &PcPresentation, s: &Subgroup) -> Vec<ExpVec> {
    let mut out = vec![pc.identity()];
    for b in s.basis().into_iter().rev() {
        let lead = b.iter().position(|&e| e != 0).expect("basis elements are nontrivial");
        let steps = pc.relative_order(lead) as i64 / b[lead];
        let mut next = Vec::with_capacity(out.len() * steps as usize);
        let mut power = pc.identity();
        for _ in 0..steps {
            next.extend(out.iter().map(|x| pc.mul(&power, x)));
            power = pc.mul(&power, b);
        }
        out = next;
    }
    out
}

pub const ORDER_8: [&str; 5] = ["c8", "c4xc2", "c2^3", "d8", "q8"];
pub const ORDER_16: [&str; 14] =
    ["c16", "c4xc4", "c2^2:c4", "c4:c4", "c8xc2", "m16", "d16", "sd16", "q16", "c4xc2^2", "c2xd8", "c2xq8", "pauli", "c2^4"];

fn fixture_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "c8" => include_str!("../../fixtures/c8.json"),
        "c4xc2" => include_str!("../../fixtures/c4xc2.json"),
        "c2^3" => include_str!("../../fixtures/c23.json"),
        "d8" => include_str!("../../fixtures/d8.json"),
        "q8" => include_str!("../../fixtures/q8.json"),
        "c16" => include_str!("../../fixtures/c16.json"),
        "c4xc4" => include_str!("../../fixtures/c4xc4.json"),
        "c2^2:c4" => include_str!("../../fixtures/c22_c4.json"),
        "c4:c4" => include_str!("../../fixtures/c4_c4.json"),
        "c8xc2" => include_str!("../../fixtures/c8xc2.json"),
        "m16" => include_str!("../../fixtures/m16.json"),
        "d16" => include_str!("../../fixtures/d16.json"),
        "sd16" => include_str!("../../fixtures/sd16.json"),
        "q16" => include_str!("../../fixtures/q16.json"),
        "c4xc2^2" => include_str!("../../fixtures/c4xc22.json"),
        "c2xd8" => include_str!("../../fixtures/c2xd8.json"),
        "c2xq8" => include_str!("../../fixtures/c2xq8.json"),
        "pauli" => include_str!("../../fixtures/pauli.json"),
        "c2^4" => include_str!("../../fixtures/c24.json"),
        _ => return None,
    })
}

/// A shipped 2-group of order 8 or 16 by name (see [`ORDER_8`], [`ORDER_16`]).
pub fn fixture(name: &str) -> Result<FinitePGroup, PGroupError> {
    let text = fixture_text(name).ok_or_else(|| PGroupError::UnknownFixture(name.into()))?;
    FinitePGroup::from_json_str(text)
}

/// All shipped fixtures, order 8 first.
pub fn fixtures() -> Vec<(&'static str, FinitePGroup)> {
    ORDER_8.iter().chain(ORDER_16.iter()).map(|&n| (n, fixture(n).expect("shipped fixtures parse"))).collect()
}

/// `γ₁ᵖ ⊇ γ₂ᵖ ⊇ … ⊇ {1}`.
#[derive(Debug, Clone, Serialize)]
pub struct PSeriesChain {
    pub prime: u64,
    /// Echelon generators of each term, ending with the trivial group.
    pub terms: Vec<Vec<ExpVec>>,
    pub orders: Vec<u128>,
    /// Number of nontrivial terms.
    pub length: usize,
    #[serde(skip)]
    pub subgroups: Vec<Subgroup>,
}

pub fn p_lower_central_series(g: &FinitePGroup) -> PSeriesChain {
    let pc = &g.pc;
    let p = g.prime as i64;
    let mut subgroups = vec![Subgroup::whole(pc)];
    while !subgroups.last().unwrap().is_trivial() {
        let cur = subgroups.last().unwrap();
        let mut gens = Vec::new();
        for b in cur.basis() {
            gens.push(pc.pow(b, p));
            for i in 0..pc.len() {
                gens.push(pc.comm(b, &pc.unit(i)));
            }
        }
        let next = Subgroup::normal_closure(pc, &gens);
        assert!(&next != cur, "p-lower central series of a finite p-group descends");
        subgroups.push(next);
    }
    PSeriesChain {
        prime: g.prime,
        terms: subgroups.iter().map(|s| s.basis().into_iter().cloned().collect()).collect(),
        orders: subgroups.iter().map(|s| s.order(pc).expect("finite")).collect(),
        length: subgroups.len() - 1,
        subgroups,
    }
}

/// Smallest `l` with `γ_{l+1}ᵖ(G) = 1`.
pub fn nilpotent_p_length(g: &FinitePGroup) -> Result<usize, PGroupError> {
    if g.pc.is_empty() {
        return Err(PGroupError::Trivial);
    }
    Ok(p_lower_central_series(g).length)
}

/// Largest normal subgroup contained in the subgroup with the given elements.
pub fn normal_core(g: &FinitePGroup, elements: &[ExpVec]) -> Result<Subgroup, PGroupError> {
    let pc = &g.pc;
    let set: std::collections::HashSet<&ExpVec> = elements.iter().collect();
    if !set.contains(&pc.identity()) || elements.iter().any(|a| elements.iter().any(|b| !set.contains(&pc.mul(a, b)))) {
        return Err(PGroupError::NotSubgroup);
    }
    Ok(normal_core_of(g, &Subgroup::generate(pc, elements)))
}

/// `U^G = ⋂_g g⁻¹Ug`.
pub fn normal_core_of(g: &FinitePGroup, u: &Subgroup) -> Subgroup {
    let pc = &g.pc;
    let all = g.elements();
    let core: Vec<ExpVec> =
        subgroup_elements(pc, u).into_iter().filter(|x| all.iter().all(|h| u.contains(pc, &pc.conjugate(x, h)))).collect();
    Subgroup::generate(pc, &core)
}
