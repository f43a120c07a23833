//! Magnus expansion of free-group words into truncated noncommutative power
//! series, lower-central-series weights, the Lyndon basis of the free Lie
//! ring and the primitivity test for one-relator groups.
//!
//! The Magnus map sends a generator `x` to `1 + X`. An element `w` of a free
//! group lies in `γₙ(F)` exactly when `magnus(w) − 1` has no terms of degree
//! below `n`; the degree-`n` part is then a Lie polynomial, which is the
//! image of `w` in `γₙ(F)/γₙ₊₁(F)` under the standard isomorphism with the
//! degree-`n` component of the free Lie ring.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::words::{Presentation, Word};

/// A monomial in the noncommuting variables `X₀, X₁, …`.
pub type Monomial = Vec<u16>;

pub const DEFAULT_WEIGHT_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagnusError {
    #[error("weight exceeds cap {cap}: magnus(w) - 1 vanishes through degree {cap}")]
    WeightExceedsCap { cap: usize },
    #[error("the identity word has infinite weight")]
    IdentityWord,
    #[error("expected at most one relator, found {0}")]
    TooManyRelators(usize),
    #[error("the relator is the identity")]
    IdentityRelator,
    #[error("degree-{degree} part is not a Lie element over the Lyndon basis")]
    NotLie { degree: usize },
}

/// A noncommutative power series truncated above `degree_cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    degree_cap: usize,
    constant: BigInt,
    terms: BTreeMap<Monomial, BigInt>,
}

fn add_term(map: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Generalized binomial coefficients `C(e, k)` for `k = 0..=n`.
fn binomials(e: i64, n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    out.push(c.clone());
    for k in 1..=n {
        c = c * BigInt::from(e - (k as i64 - 1)) / BigInt::from(k as i64);
        out.push(c.clone());
    }
    out
}

impl TruncSeries {
    pub fn one(degree_cap: usize) -> Self {
        TruncSeries { degree_cap, constant: BigInt::one(), terms: BTreeMap::new() }
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    /// Non-constant terms; never contains zero coefficients.
    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &[u16]) -> BigInt {
        if m.is_empty() {
            return self.constant.clone();
        }
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.constant.is_one() && self.terms.is_empty()
    }

    /// Homogeneous part of the given positive degree.
    pub fn homogeneous(&self, degree: usize) -> BTreeMap<Monomial, BigInt> {
        self.terms.iter().filter(|(m, _)| m.len() == degree).map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    /// Lowest degree ≥ 1 carrying a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).min()
    }

    /// Right multiplication by `(1 + X_gen)^exp`.
    pub fn mul_generator_power(&mut self, gen: usize, exp: i64) {
        let d = self.degree_cap;
        let gen = u16::try_from(gen).expect("generator index fits in u16");
        let binom = binomials(exp, d);
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        let mut constant = BigInt::zero();
        let push = |m: &[u16], c: &BigInt, out: &mut BTreeMap<Monomial, BigInt>, constant: &mut BigInt| {
            for (k, b) in binom.iter().enumerate().take(d - m.len() + 1) {
                if b.is_zero() {
                    continue;
                }
                if m.is_empty() && k == 0 {
                    *constant += c * b;
                    continue;
                }
                let mut mono = Vec::with_capacity(m.len() + k);
                mono.extend_from_slice(m);
                mono.extend(std::iter::repeat_n(gen, k));
                add_term(out, mono, c * b);
            }
        };
        let c0 = self.constant.clone();
        push(&[], &c0, &mut out, &mut constant);
        for (m, c) in &self.terms {
            push(m, c, &mut out, &mut constant);
        }
        self.constant = constant;
        self.terms = out;
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let d = self.degree_cap.min(other.degree_cap);
        let mut terms = BTreeMap::new();
        let constant = &self.constant * &other.constant;
        let lhs: Vec<(&[u16], &BigInt)> =
            std::iter::once((&[][..], &self.constant)).chain(self.terms.iter().map(|(m, c)| (m.as_slice(), c))).collect();
        let rhs: Vec<(&[u16], &BigInt)> =
            std::iter::once((&[][..], &other.constant)).chain(other.terms.iter().map(|(m, c)| (m.as_slice(), c))).collect();
        for (m1, c1) in &lhs {
            if c1.is_zero() {
                continue;
            }
            for (m2, c2) in &rhs {
                if m1.len() + m2.len() > d || (m1.is_empty() && m2.is_empty()) || c2.is_zero() {
                    continue;
                }
                let mut m = m1.to_vec();
                m.extend_from_slice(m2);
                add_term(&mut terms, m, *c1 * *c2);
            }
        }
        TruncSeries { degree_cap: d, constant, terms }
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> TruncSeries {
        assert!(self.constant.is_one(), "only series with constant term 1 are inverted here");
        // (1 + n)^-1 = Σ (-n)^k
        let neg = TruncSeries {
            degree_cap: self.degree_cap,
            constant: BigInt::zero(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        };
        let mut result = TruncSeries::one(self.degree_cap);
        let mut power = TruncSeries::one(self.degree_cap);
        for _ in 0..self.degree_cap {
            power = power.mul(&neg);
            if power.terms.is_empty() {
                break;
            }
            for (m, c) in &power.terms {
                add_term(&mut result.terms, m.clone(), c.clone());
            }
        }
        result
    }
}

/// The Magnus expansion of `w` truncated above degree `degree_cap`.
pub fn magnus_expand(w: &Word, degree_cap: usize) -> TruncSeries {
    assert!(degree_cap >= 1, "degree cap must be positive");
    let mut s = TruncSeries::one(degree_cap);
    for &(g, e) in w.syllables() {
        s.mul_generator_power(g, e);
    }
    s
}

/// Lower-central-series weight: the largest `n` with `w ∈ γₙ(F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(n) => write!(f, "{n}"),
            Weight::Infinite => f.write_str("infinite"),
        }
    }
}

pub fn lcs_weight(w: &Word) -> Result<Weight, MagnusError> {
    lcs_weight_capped(w, DEFAULT_WEIGHT_CAP)
}

pub fn lcs_weight_capped(w: &Word, cap: usize) -> Result<Weight, MagnusError> {
    if w.is_identity() {
        return Ok(Weight::Infinite);
    }
    for d in 1..=cap {
        if let Some(k) = magnus_expand(w, d).lowest_degree() {
            return Ok(Weight::Finite(k));
        }
    }
    Err(MagnusError::WeightExceedsCap { cap })
}

/// Witt's formula `(1/n) Σ_{k|n} μ(k) d^{n/k}`.
pub fn witt_number(d: usize, n: usize) -> u64 {
    assert!(n >= 1);
    let mut total: i128 = 0;
    for k in 1..=n {
        if n.is_multiple_of(k) {
            total += mobius(k) as i128 * (d as i128).pow((n / k) as u32);
        }
    }
    (total / n as i128) as u64
}

pub(crate) fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// All Lyndon words of length exactly `n` over `d` letters, in lexicographic order.
pub fn lyndon_basis(d: usize, n: usize) -> Vec<Monomial> {
    assert!(d >= 1 && n >= 1);
    let mut out = Vec::new();
    // Duval's generation of Lyndon words of length ≤ n in lexicographic order
    let mut w: Vec<u16> = vec![0];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as usize == d - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

pub fn is_lyndon(w: &[u16]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Noncommutative polynomial with integer coefficients.
pub type Polynomial = BTreeMap<Monomial, BigInt>;

/// Standard bracketing of a Lyndon word expanded in the tensor algebra.
pub fn lyndon_bracket(word: &[u16]) -> Polynomial {
    let mut p = Polynomial::new();
    if word.len() == 1 {
        p.insert(word.to_vec(), BigInt::one());
        return p;
    }
    let (u, v) = standard_factorization(word);
    let pu = lyndon_bracket(u);
    let pv = lyndon_bracket(v);
    for (m1, c1) in &pu {
        for (m2, c2) in &pv {
            let mut a = m1.clone();
            a.extend_from_slice(m2);
            add_term(&mut p, a, c1 * c2);
            let mut b = m2.clone();
            b.extend_from_slice(m1);
            add_term(&mut p, b, -(c1 * c2));
        }
    }
    p
}

/// `w = u·v` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(word: &[u16]) -> (&[u16], &[u16]) {
    let i = (1..word.len()).find(|&i| is_lyndon(&word[i..])).expect("a single letter is Lyndon");
    (&word[..i], &word[i..])
}

/// An element of the degree-`n` component of the free Lie ring on `rank` letters,
/// in coordinates over the Lyndon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    pub rank: usize,
    pub degree: usize,
    pub coeffs: BTreeMap<Monomial, BigInt>,
}

impl LieElement {
    /// gcd of all coordinates (0 for the zero element).
    pub fn coefficient_gcd(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, k: i64) -> LieElement {
        let k = BigInt::from(k);
        LieElement {
            rank: self.rank,
            degree: self.degree,
            coeffs: self.coeffs.iter().filter(|_| !k.is_zero()).map(|(m, c)| (m.clone(), c * &k)).collect(),
        }
    }

    /// Renders as e.g. `2·(a) + 1·(cd)` with letters named `a, b, c, …`.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(m, c)| {
                let letters: String = m.iter().map(|&x| letter_name(x)).collect();
                format!("{c}·({letters})")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn letter_name(x: u16) -> String {
    if x < 26 {
        ((b'a' + x as u8) as char).to_string()
    } else {
        format!("x{x}")
    }
}

impl Serialize for LieElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coeffs: Vec<(Vec<u16>, String)> = self.coeffs.iter().map(|(m, c)| (m.clone(), c.to_string())).collect();
        let mut st = s.serialize_struct("LieElement", 3)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Expresses a homogeneous Lie polynomial over the Lyndon basis.
///
/// The bracketing of a Lyndon word `ℓ` is `ℓ` plus lexicographically larger
/// monomials, so processing Lyndon words in increasing order reads each
/// coordinate off the current coefficient of `ℓ`.
pub fn lie_coordinates(part: &Polynomial, rank: usize, degree: usize) -> Result<LieElement, MagnusError> {
    let mut residual = part.clone();
    let mut coeffs = BTreeMap::new();
    for lw in lyndon_basis(rank, degree) {
        let Some(c) = residual.get(&lw).cloned() else { continue };
        for (m, b) in lyndon_bracket(&lw) {
            add_term(&mut residual, m, -(&c * b));
        }
        coeffs.insert(lw, c);
    }
    if !residual.is_empty() {
        return Err(MagnusError::NotLie { degree });
    }
    Ok(LieElement { rank, degree, coeffs })
}

/// Image of `w` in `γₙ(F)/γₙ₊₁(F)` where `n` is its weight; `rank` is the free-group rank.
pub fn lie_image(w: &Word, rank: usize) -> Result<LieElement, MagnusError> {
    lie_image_capped(w, rank, DEFAULT_WEIGHT_CAP)
}

pub fn lie_image_capped(w: &Word, rank: usize, cap: usize) -> Result<LieElement, MagnusError> {
    let n = match lcs_weight_capped(w, cap)? {
        Weight::Finite(n) => n,
        Weight::Infinite => return Err(MagnusError::IdentityWord),
    };
    let part = magnus_expand(w, n).homogeneous(n);
    lie_coordinates(&part, rank, n)
}

/// Witness for the primitivity of a one-relator presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitivityCertificate {
    pub weight: Weight,
    pub lie_image: Option<LieElement>,
    #[serde(serialize_with = "crate::report::bigint_as_string")]
    pub coefficient_gcd: BigInt,
    pub verdict: bool,
}

pub fn is_primitive_relator(p: &Presentation) -> Result<PrimitivityCertificate, MagnusError> {
    is_primitive_relator_capped(p, DEFAULT_WEIGHT_CAP)
}

pub fn is_primitive_relator_capped(p: &Presentation, cap: usize) -> Result<PrimitivityCertificate, MagnusError> {
    match p.relators() {
        [] => Ok(PrimitivityCertificate { weight: Weight::Infinite, lie_image: None, coefficient_gcd: BigInt::zero(), verdict: true }),
        [r] => {
            if r.is_identity() {
                return Err(MagnusError::IdentityRelator);
            }
            let weight = lcs_weight_capped(r, cap)?;
            let image = lie_image_capped(r, p.rank(), cap)?;
            let g = image.coefficient_gcd();
            Ok(PrimitivityCertificate { weight, verdict: g.is_one(), coefficient_gcd: g, lie_image: Some(image) })
        }
        rels => Err(MagnusError::TooManyRelators(rels.len())),
    }
}

/// Weight-one sufficient criterion: the nonzero exponent sums of the relator
/// have gcd 1. With `strict`, their least common multiple must be 1 instead.
pub fn exponent_sum_criterion(p: &Presentation, strict: bool) -> Result<bool, MagnusError> {
    let r = match p.relators() {
        [r] => r,
        [] => return Err(MagnusError::TooManyRelators(0)),
        rels => return Err(MagnusError::TooManyRelators(rels.len())),
    };
    if r.is_identity() {
        return Err(MagnusError::IdentityRelator);
    }
    let sums: Vec<BigInt> = r.exponent_sums(p.rank()).into_iter().filter(|&s| s != 0).map(BigInt::from).collect();
    if sums.is_empty() {
        return Ok(false);
    }
    if strict {
        let l = sums.iter().fold(BigInt::one(), |l, s| l.lcm(s));
        Ok(l.abs().is_one())
    } else {
        let g = sums.iter().fold(BigInt::zero(), |g, s| g.gcd(s));
        Ok(g.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{parse_presentation, tests::word_strategy};
    use proptest::prelude::*;

    /// Independent oracle: expand letter by letter with explicit inverse series.
    fn brute_magnus(w: &Word, d: usize) -> BTreeMap<Monomial, i64> {
        let mut series: BTreeMap<Monomial, i64> = BTreeMap::from([(vec![], 1)]);
        for (g, s) in w.letters() {
            let g = g as u16;
            // factor: 1 + X  or  1 - X + X^2 - ...
            let factor: Vec<(Monomial, i64)> = if s > 0 {
                vec![(vec![], 1), (vec![g], 1)]
            } else {
                (0..=d).map(|k| (vec![g; k], if k % 2 == 0 { 1 } else { -1 })).collect()
            };
            let mut next = BTreeMap::new();
            for (m, c) in &series {
                for (f, e) in &factor {
                    if m.len() + f.len() <= d {
                        let mut mm = m.clone();
                        mm.extend(f);
                        *next.entry(mm).or_insert(0) += c * e;
                    }
                }
            }
            next.retain(|_, c| *c != 0);
            series = next;
        }
        series
    }

    fn as_i64(s: &TruncSeries) -> BTreeMap<Monomial, i64> {
        let mut out: BTreeMap<Monomial, i64> = s.terms().iter().map(|(m, c)| (m.clone(), i64::try_from(c).unwrap())).collect();
        if !s.constant().is_zero() {
            out.insert(vec![], i64::try_from(s.constant()).unwrap());
        }
        out
    }

    fn w(letters: &[i64]) -> Word {
        Word::from_letters(letters)
    }

    #[test]
    fn expansion_examples() {
        let a = magnus_expand(&w(&[1]), 2);
        assert_eq!(as_i64(&a), BTreeMap::from([(vec![], 1), (vec![0], 1)]));
        assert!(magnus_expand(&w(&[1, -1]), 5).is_one());
        let comm = magnus_expand(&w(&[-1, -2, 1, 2]), 2);
        let oracle = brute_magnus(&w(&[-1, -2, 1, 2]), 2);
        assert_eq!(oracle, BTreeMap::from([(vec![], 1), (vec![0, 1], 1), (vec![1, 0], -1)]));
        assert_eq!(as_i64(&comm), oracle);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(lcs_weight(&w(&[1])).unwrap(), Weight::Finite(1));
        assert_eq!(lcs_weight(&w(&[-1, -2, 1, 2])).unwrap(), Weight::Finite(2));
        let ab = w(&[-1, -2, 1, 2]);
        let abb = ab.commutator(&w(&[2]));
        // oracle: degree-3 part of the brute-force series is nonzero, degrees 1-2 vanish
        let oracle = brute_magnus(&abb, 3);
        assert!(oracle.keys().all(|m| m.is_empty() || m.len() == 3));
        assert!(oracle.keys().any(|m| m.len() == 3));
        assert_eq!(lcs_weight(&abb).unwrap(), Weight::Finite(3));
        assert_eq!(lcs_weight(&Word::identity()).unwrap(), Weight::Infinite);
    }

    #[test]
    fn weight_cap_error() {
        let ab = w(&[-1, -2, 1, 2]);
        let deep = ab.commutator(&w(&[1])).commutator(&w(&[2]));
        assert_eq!(lcs_weight_capped(&deep, 3), Err(MagnusError::WeightExceedsCap { cap: 3 }));
        assert_eq!(lcs_weight_capped(&deep, 4).unwrap(), Weight::Finite(4));
    }

    /// Exhaustive oracle: every word of length n over d letters that is
    /// strictly smaller than all its proper suffixes.
    fn lyndon_oracle(d: usize, n: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let total = d.pow(n as u32);
        for mut code in 0..total {
            let mut word = vec![0u16; n];
            for i in (0..n).rev() {
                word[i] = (code % d) as u16;
                code /= d;
            }
            if (1..n).all(|i| word[..] < word[i..]) {
                out.push(word);
            }
        }
        out
    }

    #[test]
    fn lyndon_examples() {
        assert_eq!(lyndon_basis(2, 1), vec![vec![0], vec![1]]);
        assert_eq!(lyndon_basis(2, 2), lyndon_oracle(2, 2));
        assert_eq!(lyndon_basis(2, 2), vec![vec![0, 1]]);
        assert_eq!(lyndon_basis(2, 3), vec![vec![0, 0, 1], vec![0, 1, 1]]);
        assert_eq!(lyndon_basis(2, 3), lyndon_oracle(2, 3));
    }

    #[test]
    fn lyndon_counts_match_witt_and_oracle() {
        for d in 1..=3 {
            for n in 1..=8 {
                let basis = lyndon_basis(d, n);
                assert_eq!(basis.len() as u64, witt_number(d, n), "d={d} n={n}");
                if n <= 6 {
                    assert_eq!(basis, lyndon_oracle(d, n));
                }
            }
        }
    }

    #[test]
    fn lie_image_examples() {
        let sq = lie_image(&w(&[1, 1]), 2).unwrap();
        assert_eq!(sq.degree, 1);
        assert_eq!(sq.coeffs, BTreeMap::from([(vec![0], BigInt::from(2))]));
        let comm = lie_image(&w(&[-1, -2, 1, 2]), 2).unwrap();
        assert_eq!(comm.coeffs, BTreeMap::from([(vec![0, 1], BigInt::one())]));
        let genus2 = lie_image(&w(&[-1, -2, 1, 2, -3, -4, 3, 4]), 4).unwrap();
        assert_eq!(genus2.degree, 2);
        assert_eq!(genus2.coeffs, BTreeMap::from([(vec![0, 1], BigInt::one()), (vec![2, 3], BigInt::one())]));
    }

    #[test]
    fn lyndon_bracket_is_triangular() {
        for lw in lyndon_basis(3, 5) {
            let p = lyndon_bracket(&lw);
            assert_eq!(p.get(&lw), Some(&BigInt::one()));
            assert!(p.keys().all(|m| m >= &lw));
        }
    }

    #[test]
    fn primitivity_examples() {
        let free = parse_presentation("gens: a b").unwrap();
        let c = is_primitive_relator(&free).unwrap();
        assert!(c.verdict);
        assert_eq!(c.weight, Weight::Infinite);

        let surface = parse_presentation("gens: a b c d\nrel: [a,b] [c,d]").unwrap();
        let c = is_primitive_relator(&surface).unwrap();
        assert!(c.verdict);
        assert_eq!(c.weight, Weight::Finite(2));
        assert_eq!(c.coefficient_gcd, BigInt::one());

        let klein = parse_presentation("gens: a b\nrel: a b a b^-1").unwrap();
        let c = is_primitive_relator(&klein).unwrap();
        assert!(!c.verdict);
        assert_eq!(c.weight, Weight::Finite(1));
        assert_eq!(c.coefficient_gcd, BigInt::from(2));
        assert_eq!(c.lie_image.unwrap().coeffs, BTreeMap::from([(vec![0], BigInt::from(2))]));
    }

    #[test]
    fn primitivity_errors() {
        let two = parse_presentation("gens: a b\nrel: a\nrel: b").unwrap();
        assert_eq!(is_primitive_relator(&two), Err(MagnusError::TooManyRelators(2)));
        let id = parse_presentation("gens: a b\nrel: a a^-1").unwrap();
        assert_eq!(is_primitive_relator(&id), Err(MagnusError::IdentityRelator));
    }

    #[test]
    fn exponent_sum_criterion_examples() {
        let p = parse_presentation("gens: a b\nrel: a b^2 a^-1 b").unwrap();
        assert!(!exponent_sum_criterion(&p, false).unwrap());
        let p = parse_presentation("gens: a b\nrel: a b a b^2").unwrap();
        assert!(exponent_sum_criterion(&p, false).unwrap());
        assert!(!exponent_sum_criterion(&p, true).unwrap());
        let c = is_primitive_relator(&p).unwrap();
        assert!(c.verdict && c.weight == Weight::Finite(1));
        let p = parse_presentation("gens: a b\nrel: [a,b]").unwrap();
        assert!(!exponent_sum_criterion(&p, false).unwrap());
        let p = parse_presentation("gens: a b\nrel: a b^-1").unwrap();
        assert!(exponent_sum_criterion(&p, true).unwrap());
    }

    #[test]
    fn gcd_is_independent_of_letter_order() {
        let rels = ["[a,b]^2 [a,c]^4", "[[a,b],c]^3 [[a,b],b]^6", "a^4 b^6", "[a,b] [a,c]^2"];
        for r in rels {
            let p = parse_presentation(&format!("gens: a b c\nrel: {r}")).unwrap();
            let q = parse_presentation(&format!("gens: c a b\nrel: {r}")).unwrap();
            let gp = is_primitive_relator(&p).unwrap();
            let gq = is_primitive_relator(&q).unwrap();
            assert_eq!(gp.coefficient_gcd, gq.coefficient_gcd, "{r}");
            assert_eq!(gp.weight, gq.weight);
        }
    }

    #[test]
    fn inverse_series() {
        let s = magnus_expand(&w(&[1, 2, -1, 2, 2]), 4);
        assert!(s.mul(&s.inverse()).is_one());
        assert_eq!(s.inverse(), magnus_expand(&w(&[1, 2, -1, 2, 2]).inverse(), 4));
    }

    proptest! {
        #[test]
        fn magnus_is_multiplicative(u in word_strategy(3, 10), v in word_strategy(3, 10), d in 1usize..=5) {
            let lhs = magnus_expand(&u.multiply(&v), d);
            let rhs = magnus_expand(&u, d).mul(&magnus_expand(&v, d));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn magnus_matches_letterwise_oracle(u in word_strategy(2, 8), d in 1usize..=4) {
            prop_assert_eq!(as_i64(&magnus_expand(&u, d)), brute_magnus(&u, d));
        }

        #[test]
        fn commutator_weight_is_superadditive(u in word_strategy(2, 6), v in word_strategy(2, 6)) {
            prop_assume!(!u.is_identity() && !v.is_identity());
            let c = u.commutator(&v);
            let (Weight::Finite(wu), Weight::Finite(wv)) = (lcs_weight(&u).unwrap(), lcs_weight(&v).unwrap()) else {
                unreachable!()
            };
            prop_assume!(wu + wv <= 8);
            match lcs_weight_capped(&c, wu + wv).unwrap_or(Weight::Infinite) {
                Weight::Finite(wc) => prop_assert!(wc >= wu + wv),
                Weight::Infinite => {}
            }
        }

        #[test]
        fn lie_image_of_powers_scales(u in word_strategy(2, 8), k in 1i64..=4) {
            prop_assume!(!u.is_identity());
            let uk = u.pow(k);
            prop_assume!(lcs_weight(&uk).unwrap() == lcs_weight(&u).unwrap());
            prop_assert_eq!(lie_image(&uk, 2).unwrap(), lie_image(&u, 2).unwrap().scale(k));
        }
    }
}
