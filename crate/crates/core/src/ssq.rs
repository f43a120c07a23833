//! Fourth-quadrant cohomological spectral sequences: the zone of influence of
//! the row `t = 0`, dependency sets `V(r, s, t)`, and page computations for
//! small fixtures over finite abelian groups.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::par::{self, Execution};
use crate::report::VerificationRecord;

pub type Point = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsqError {
    #[error("page index {0} must be at least 2")]
    Page(i64),
    #[error("window {0}x{1} is empty")]
    Window(i64, i64),
    #[error("inconsistent fixture: {0}")]
    Fixture(String),
    #[error("invalid fixture JSON: {0}")]
    Json(String),
}

/// `{0 ≤ s ≤ width, −height ≤ t ≤ 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub width: i64,
    pub height: i64,
}

impl Window {
    pub fn new(width: i64, height: i64) -> Result<Self, SsqError> {
        if width < 1 || height < 1 {
            return Err(SsqError::Window(width, height));
        }
        Ok(Window { width, height })
    }

    pub fn contains(&self, (s, t): Point) -> bool {
        (0..=self.width).contains(&s) && (-self.height..=0).contains(&t)
    }
}

/// `d_k(x, y) = (x + k, y − k + 1)`.
pub fn differential(k: i64, (x, y): Point) -> Point {
    (x + k, y - k + 1)
}

/// How the zone recursion treats points leaving the fourth quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZoneRule {
    /// Intersect with `ℤ_{≥0} × ℤ_{≤0}` after every step.
    Quadrant,
    /// Keep every point; a deliberately wrong rule used as a negative control.
    Unrestricted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZoneSet {
    pub r: i64,
    pub window: Window,
    pub points: BTreeSet<Point>,
}

/// Total reach `2 + 3 + ⋯ + (r − 1)` of the differentials used to build `Z_r`.
pub fn margin(r: i64) -> i64 {
    (2..r).sum()
}

pub fn zone(r: i64, window: Window) -> Result<ZoneSet, SsqError> {
    zone_with(r, window, ZoneRule::Quadrant)
}

/// `Z_r` restricted to `window`. Each point of `Z_r` is reached from `Z_2` by
/// a chain of at most `r − 2` steps whose sizes sum to at most [`margin`], so
/// the recursion runs on the window enlarged by that margin on every side and
/// truncation cannot lose anything visible in `window`.
pub fn zone_with(r: i64, window: Window, rule: ZoneRule) -> Result<ZoneSet, SsqError> {
    if r < 2 {
        return Err(SsqError::Page(r));
    }
    let m = margin(r);
    let (s_max, t_min) = (window.width + m, -(window.height + m));
    let s_min = if rule == ZoneRule::Quadrant { 0 } else { -m };
    let t_max = if rule == ZoneRule::Quadrant { 0 } else { m };
    let inside = |(s, t): Point| (s_min..=s_max).contains(&s) && (t_min..=t_max).contains(&t);
    let mut z: HashSet<Point> = (1..=s_max).map(|x| (x, 0)).collect();
    for k in 2..r {
        let mut next = z.clone();
        for &p in &z {
            let up = differential(k, p);
            let down = (p.0 - k, p.1 + k - 1);
            for q in [up, down] {
                if inside(q) {
                    next.insert(q);
                }
            }
        }
        z = next;
    }
    let points = z
        .into_iter()
        .filter(|&(s, t)| match rule {
            ZoneRule::Quadrant => window.contains((s, t)),
            ZoneRule::Unrestricted => (-m..=window.width).contains(&s) && (-window.height..=m).contains(&t),
        })
        .collect();
    Ok(ZoneSet { r, window, points })
}

/// Checks that no `(s, t) ∈ Z_r` with `s + t ≤ 0` appears for `2 ≤ r ≤ r_max`.
pub fn zone_exclusion_check(r_max: i64, window: Window) -> Result<VerificationRecord, SsqError> {
    zone_exclusion_check_with(r_max, window, ZoneRule::Quadrant)
}

pub fn zone_exclusion_check_with(r_max: i64, window: Window, rule: ZoneRule) -> Result<VerificationRecord, SsqError> {
    if r_max < 2 {
        return Err(SsqError::Page(r_max));
    }
    let rec = VerificationRecord::new("zone_exclusion", &format!("r<={r_max}, window {}x{}", window.width, window.height));
    let mut sizes = Vec::new();
    let mut offending = None;
    for r in 2..=r_max {
        let z = zone_with(r, window, rule)?;
        sizes.push(z.points.len());
        if offending.is_none() {
            offending = z.points.iter().find(|&&(s, t)| s + t <= 0).map(|&p| (r, p));
        }
    }
    let mut witness = json!({ "sizes": sizes });
    if let Some((r, (s, t))) = offending {
        witness["counterexample"] = json!({ "r": r, "point": [s, t] });
    }
    Ok(rec.with_witness(witness).check(offending.is_none()))
}

/// `V(r, s, t)`: positions of `E₂` that determine `E_r^{s,t}`.
pub fn dependency_set(r: i64, s: i64, t: i64) -> Result<BTreeSet<Point>, SsqError> {
    dependencies(r, s, t, false)
}

/// `V(r, s, t)` for fourth-quadrant sequences, where positions outside the
/// quadrant carry zero groups and are dropped from the recursion.
pub fn quadrant_dependency_set(r: i64, s: i64, t: i64) -> Result<BTreeSet<Point>, SsqError> {
    dependencies(r, s, t, true)
}

fn dependencies(r: i64, s: i64, t: i64, quadrant: bool) -> Result<BTreeSet<Point>, SsqError> {
    if r < 2 {
        return Err(SsqError::Page(r));
    }
    let mut frontier: Vec<Point> = vec![(s, t)];
    for k in (3..=r).rev() {
        let mut next = Vec::with_capacity(3 * frontier.len());
        for &(x, y) in &frontier {
            for p in [(x - k + 1, y + k - 2), (x, y), (x + k - 1, y - k + 2)] {
                if !quadrant || (p.0 >= 0 && p.1 <= 0) {
                    next.push(p);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }
    if quadrant {
        frontier.retain(|&(x, y)| x >= 0 && y <= 0);
    }
    Ok(frontier.into_iter().collect())
}

/// Checks that quadrant dependency sets of positions with `s + t ≤ 0` in the
/// window avoid `{(x, 0) : x ≥ 1}`, for `2 ≤ r ≤ r_max`.
pub fn dependency_exclusion_check(r_max: i64, window: Window) -> Result<VerificationRecord, SsqError> {
    dependency_exclusion_check_with(r_max, window, Execution::default())
}

pub fn dependency_exclusion_check_with(r_max: i64, window: Window, exec: Execution) -> Result<VerificationRecord, SsqError> {
    if r_max < 2 {
        return Err(SsqError::Page(r_max));
    }
    let rec = VerificationRecord::new("dependency_exclusion", &format!("r<={r_max}, window {}x{}", window.width, window.height));
    let rs: Vec<i64> = (2..=r_max).collect();
    let hits = par::map(exec, &rs, |&r| {
        let mut reach = Reach::default();
        (0..=window.width)
            .flat_map(|s| (-window.height..=(-s).min(0)).map(move |t| (s, t)))
            .find_map(|p| reach.witness(r, p).map(|q| (r, p, q)))
    });
    let offending = hits.into_iter().flatten().next();
    let positions: usize = (0..=window.width).map(|s| (window.height - s.max(0) + 1).max(0) as usize).sum();
    let mut witness = json!({ "positions_checked": positions * rs.len() });
    if let Some((r, (s, t), (x, y))) = offending {
        witness["counterexample"] = json!({ "r": r, "position": [s, t], "point": [x, y] });
    }
    Ok(rec.with_witness(witness).check(offending.is_none()))
}

/// Memoized search for a point `(x, 0)` with `x ≥ 1` in a quadrant dependency set.
#[derive(Default)]
struct Reach {
    memo: HashMap<(i64, Point), Option<Point>>,
}

impl Reach {
    fn witness(&mut self, k: i64, p: Point) -> Option<Point> {
        if k == 2 {
            return (p.1 == 0 && p.0 >= 1).then_some(p);
        }
        if let Some(&hit) = self.memo.get(&(k, p)) {
            return hit;
        }
        let (x, y) = p;
        let hit = [(x - k + 1, y + k - 2), (x, y), (x + k - 1, y - k + 2)]
            .into_iter()
            .filter(|q| q.0 >= 0 && q.1 <= 0)
            .find_map(|q| self.witness(k - 1, q));
        self.memo.insert((k, p), hit);
        hit
    }
}

/// Finite abelian group `⊕ ℤ/nᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteAbelian(pub Vec<u64>);

impl FiniteAbelian {
    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &n in &self.0 {
            out = out.into_iter().flat_map(|v| (0..n).map(move |a| [v.clone(), vec![a]].concat())).collect();
        }
        out
    }
}

/// A homomorphism `E_r^{s,t} → E_r^{s+r,t−r+1}` given on representatives in
/// `E₂`: column `j` is the image of generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureDifferential {
    pub r: i64,
    pub source: Point,
    pub matrix: Vec<Vec<i64>>,
}

/// A finitely supported fourth-quadrant spectral sequence with explicit
/// differentials; missing differentials are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSequenceFixture {
    pub name: String,
    pub prime: u64,
    pub e2: Vec<(Point, FiniteAbelian)>,
    #[serde(default)]
    pub differentials: Vec<FixtureDifferential>,
}

/// `E_r^{s,t} = Z/B` with `B ⊆ Z ⊆ E₂^{s,t}` as element sets.
#[derive(Debug, Clone)]
struct Subquotient {
    cycles: BTreeSet<Vec<u64>>,
    boundaries: BTreeSet<Vec<u64>>,
}

impl Subquotient {
    fn order(&self) -> u64 {
        (self.cycles.len() / self.boundaries.len()) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PageOrders {
    pub r: i64,
    pub orders: BTreeMap<String, u64>,
}

fn key((s, t): Point) -> String {
    format!("{s},{t}")
}

impl SpectralSequenceFixture {
    pub fn from_json_str(text: &str) -> Result<Self, SsqError> {
        let f: SpectralSequenceFixture = serde_json::from_str(text).map_err(|e| SsqError::Json(e.to_string()))?;
        f.validate()?;
        Ok(f)
    }

    fn group(&self, p: Point) -> Option<&FiniteAbelian> {
        self.e2.iter().find(|(q, _)| *q == p).map(|(_, g)| g)
    }

    fn validate(&self) -> Result<(), SsqError> {
        for &((s, t), ref g) in &self.e2 {
            if s < 0 || t > 0 {
                return Err(SsqError::Fixture(format!("({s},{t}) is outside the fourth quadrant")));
            }
            if g.0.contains(&0) {
                return Err(SsqError::Fixture(format!("({s},{t}) is infinite")));
            }
        }
        for d in &self.differentials {
            if d.r < 2 {
                return Err(SsqError::Page(d.r));
            }
            let src = self.group(d.source).ok_or_else(|| SsqError::Fixture(format!("no group at {:?}", d.source)))?;
            let target = differential(d.r, d.source);
            let tgt = self.group(target).ok_or_else(|| SsqError::Fixture(format!("no group at {target:?}")))?;
            if d.matrix.len() != tgt.0.len() || d.matrix.iter().any(|row| row.len() != src.0.len()) {
                return Err(SsqError::Fixture(format!("matrix shape at {:?}", d.source)));
            }
            for (j, &n) in src.0.iter().enumerate() {
                for (i, &m) in tgt.0.iter().enumerate() {
                    if (d.matrix[i][j] * n as i64).rem_euclid(m as i64) != 0 {
                        return Err(SsqError::Fixture(format!("differential at {:?} is not well defined", d.source)));
                    }
                }
            }
        }
        Ok(())
    }

    fn apply(&self, d: &FixtureDifferential, x: &[u64]) -> Vec<u64> {
        let tgt = self.group(differential(d.r, d.source)).expect("validated");
        tgt.0
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let v: i64 = d.matrix[i].iter().zip(x).map(|(&a, &b)| a * b as i64).sum();
                v.rem_euclid(m as i64) as u64
            })
            .collect()
    }

    fn last_page(&self) -> i64 {
        let span = self.e2.iter().map(|((s, t), _)| s - t).max().unwrap_or(0);
        self.differentials.iter().map(|d| d.r).max().unwrap_or(2).max(span + 2)
    }

    /// Orders of every page from `E₂` up to the page where all differentials vanish.
    pub fn pages(&self) -> Result<Vec<PageOrders>, SsqError> {
        self.validate()?;
        let mut state: BTreeMap<Point, Subquotient> = self
            .e2
            .iter()
            .map(|(p, g)| {
                let zero = vec![0; g.0.len()];
                (*p, Subquotient { cycles: g.elements().into_iter().collect(), boundaries: BTreeSet::from([zero]) })
            })
            .collect();
        let snapshot = |r: i64, state: &BTreeMap<Point, Subquotient>| PageOrders {
            r,
            orders: state.iter().map(|(&p, q)| (key(p), q.order())).collect(),
        };
        let mut out = vec![snapshot(2, &state)];
        for r in 2..=self.last_page() {
            let ds: Vec<&FixtureDifferential> = self.differentials.iter().filter(|d| d.r == r).collect();
            let mut next = state.clone();
            for d in &ds {
                let target = differential(r, d.source);
                let src = &state[&d.source];
                let tgt = &state[&target];
                for z in &src.cycles {
                    let img = self.apply(d, z);
                    if !tgt.cycles.contains(&img) {
                        return Err(SsqError::Fixture(format!("d{r} at {:?} leaves the cycles", d.source)));
                    }
                }
                for b in &src.boundaries {
                    if !tgt.boundaries.contains(&self.apply(d, b)) {
                        return Err(SsqError::Fixture(format!("d{r} at {:?} does not preserve boundaries", d.source)));
                    }
                }
                if let Some(d2) = ds.iter().find(|e| e.source == target) {
                    let after = &state[&differential(r, target)];
                    if src.cycles.iter().any(|z| !after.boundaries.contains(&self.apply(d2, &self.apply(d, z)))) {
                        return Err(SsqError::Fixture(format!("d{r} squares to a nonzero map at {:?}", d.source)));
                    }
                }
                next.get_mut(&d.source).expect("present").cycles.retain(|z| tgt.boundaries.contains(&self.apply(d, z)));
                let new_boundaries: Vec<Vec<u64>> = src.cycles.iter().map(|z| self.apply(d, z)).collect();
                let tgt_next = next.get_mut(&target).expect("present");
                let gens: BTreeSet<Vec<u64>> = new_boundaries.into_iter().collect();
                let moduli = &self.group(target).expect("validated").0;
                tgt_next.boundaries = span(&tgt_next.boundaries, &gens, moduli);
            }
            state = next;
            out.push(snapshot(r + 1, &state));
        }
        Ok(out)
    }
}

/// Subgroup generated by `a ∪ b` (both already subgroups or generating sets).
fn span(a: &BTreeSet<Vec<u64>>, b: &BTreeSet<Vec<u64>>, moduli: &[u64]) -> BTreeSet<Vec<u64>> {
    let add = |x: &[u64], y: &[u64]| -> Vec<u64> { x.iter().zip(y).zip(moduli).map(|((a, b), m)| (a + b) % m).collect() };
    let mut out: BTreeSet<Vec<u64>> = a.clone();
    out.insert(vec![0; moduli.len()]);
    let gens: Vec<Vec<u64>> = a.iter().chain(b).cloned().collect();
    let mut frontier: Vec<Vec<u64>> = out.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = add(&x, g);
            if out.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    out
}

fn is_power_of(n: u64, p: u64) -> bool {
    let mut n = n;
    while n.is_multiple_of(p) && n > 1 {
        n /= p;
    }
    n == 1
}

/// Checks subquotient monotonicity `|E_{r+1}| divides |E_r|`, and that on every
/// diagonal `s + t = n` whose `E₂` terms are `p`-groups, each `E_∞` term and
/// each filtration quotient `hⁿ/Hⁿ_k` (of order `∏_{s<k} |E_∞^{s,n−s}|`) is a `p`-group.
pub fn finspecseq_property_check(f: &SpectralSequenceFixture) -> Result<VerificationRecord, SsqError> {
    let pages = f.pages()?;
    let mut rec = VerificationRecord::new("finspecseq", &f.name);
    let p = f.prime;
    let monotone = pages.windows(2).all(|w| w[0].orders.iter().all(|(k, &a)| a % w[1].orders[k] == 0));
    rec.hypothesis("pages shrink", monotone);
    let infinity = &pages.last().expect("at least E2").orders;
    let mut diagonals: BTreeMap<i64, Vec<(i64, u64, u64)>> = BTreeMap::new();
    for ((s, t), g) in &f.e2 {
        diagonals.entry(s + t).or_default().push((*s, g.order(), infinity[&key((*s, *t))]));
    }
    let mut ok = monotone;
    let mut extensions = BTreeMap::new();
    for (n, mut entries) in diagonals {
        if !entries.iter().all(|&(_, e2, _)| is_power_of(e2, p)) {
            continue;
        }
        entries.sort_unstable();
        let mut acc = 1u64;
        let mut quotients = Vec::new();
        for &(_, _, inf) in &entries {
            ok &= is_power_of(inf, p);
            acc *= inf;
            ok &= is_power_of(acc, p);
            quotients.push(acc);
        }
        extensions.insert(n.to_string(), quotients);
    }
    let final_page = pages.last().map(|pg| pg.r).unwrap_or(2);
    Ok(rec.with_witness(json!({ "infinity_page": final_page, "e_infinity": infinity, "filtration_quotients": extensions })).check(ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use proptest::prelude::*;

    #[test]
    fn zone_examples() {
        let w = Window::new(10, 10).unwrap();
        let z2 = zone(2, w).unwrap();
        assert_eq!(z2.points, (1..=10).map(|x| (x, 0)).collect());
        assert!(zone(3, w).unwrap().points.contains(&(3, -1)));
        for r in 2..=12 {
            assert!(!zone(r, Window::new(30, 30).unwrap()).unwrap().points.contains(&(0, 0)));
        }
        assert_eq!(zone(1, w), Err(SsqError::Page(1)));
        assert!(Window::new(0, 4).is_err());
    }

    /// Paths from `Z₂` enumerated directly over all sign sequences.
    fn zone_by_paths(r: i64, w: Window) -> BTreeSet<Point> {
        let m = margin(r);
        let mut out = BTreeSet::new();
        for x in 1..=w.width + m {
            let mut reach = BTreeSet::from([(x, 0)]);
            for k in 2..r {
                let mut next = reach.clone();
                for &(s, t) in &reach {
                    for e in [1, -1] {
                        let q = (s + e * k, t + e * (1 - k));
                        if q.0 >= 0 && q.1 <= 0 {
                            next.insert(q);
                        }
                    }
                }
                reach = next;
            }
            out.extend(reach.into_iter().filter(|&p| w.contains(p)));
        }
        out
    }

    #[test]
    fn zone_matches_path_enumeration() {
        for r in 2..=7 {
            let w = Window::new(12, 12).unwrap();
            assert_eq!(zone(r, w).unwrap().points, zone_by_paths(r, w), "r={r}");
        }
    }

    #[test]
    fn zone_window_is_sound() {
        // the same points appear in a small window and in the corner of a large one
        for r in 2..=8 {
            let small = zone(r, Window::new(8, 8).unwrap()).unwrap().points;
            let big: BTreeSet<Point> =
                zone(r, Window::new(40, 40).unwrap()).unwrap().points.into_iter().filter(|&(s, t)| s <= 8 && t >= -8).collect();
            assert_eq!(small, big);
        }
    }

    #[test]
    fn zone_grows() {
        let w = Window::new(20, 20).unwrap();
        for r in 2..10 {
            assert!(zone(r, w).unwrap().points.is_subset(&zone(r + 1, w).unwrap().points));
        }
    }

    #[test]
    fn exclusion() {
        let w = Window::new(60, 60).unwrap();
        assert_eq!(zone_exclusion_check(2, w).unwrap().verdict, Verdict::Pass);
        assert_eq!(zone_exclusion_check(12, w).unwrap().verdict, Verdict::Pass);
        let corrupted = zone_exclusion_check_with(4, Window::new(10, 10).unwrap(), ZoneRule::Unrestricted).unwrap();
        assert_eq!(corrupted.verdict, Verdict::Fail);
    }

    #[test]
    fn memoized_reach_matches_sets() {
        let mut reach = Reach::default();
        let mut hits = 0;
        for r in 2..=7 {
            for s in 0..=12 {
                for t in -12..=0 {
                    let explicit = quadrant_dependency_set(r, s, t).unwrap().into_iter().find(|&(x, y)| y == 0 && x >= 1);
                    let found = reach.witness(r, (s, t));
                    assert_eq!(explicit.is_some(), found.is_some(), "r={r} ({s},{t})");
                    if let Some(p) = found {
                        assert!(quadrant_dependency_set(r, s, t).unwrap().contains(&p));
                        hits += 1;
                    }
                }
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn dependency_examples() {
        assert_eq!(dependency_set(2, 5, -3).unwrap(), BTreeSet::from([(5, -3)]));
        assert_eq!(dependency_set(3, 0, 0).unwrap(), BTreeSet::from([(-2, 1), (0, 0), (2, -1)]));
        assert_eq!(quadrant_dependency_set(3, 0, 0).unwrap(), BTreeSet::from([(0, 0), (2, -1)]));
        assert!(dependency_set(1, 0, 0).is_err());
        assert_eq!(dependency_exclusion_check(12, Window::new(30, 30).unwrap()).unwrap().verdict, Verdict::Pass);
    }

    fn v_recursive(r: i64, s: i64, t: i64) -> BTreeSet<Point> {
        if r == 2 {
            return BTreeSet::from([(s, t)]);
        }
        let mut out = v_recursive(r - 1, s - r + 1, t + r - 2);
        out.extend(v_recursive(r - 1, s, t));
        out.extend(v_recursive(r - 1, s + r - 1, t - r + 2));
        out
    }

    proptest! {
        #[test]
        fn dependency_sets_follow_the_recursion(r in 2i64..8, s in -10i64..10, t in -10i64..10) {
            let v = dependency_set(r, s, t).unwrap();
            prop_assert_eq!(&v, &v_recursive(r, s, t));
            prop_assert!(v.len() as u64 <= 3u64.pow((r - 2) as u32));
            prop_assert!(v.contains(&(s, t)));
            let q = quadrant_dependency_set(r, s, t).unwrap();
            prop_assert!(q.is_subset(&v));
        }
    }

    fn fixture(e2: Vec<(Point, Vec<u64>)>, differentials: Vec<FixtureDifferential>) -> SpectralSequenceFixture {
        SpectralSequenceFixture {
            name: "fixture".into(),
            prime: 2,
            e2: e2.into_iter().map(|(p, g)| (p, FiniteAbelian(g))).collect(),
            differentials,
        }
    }

    #[test]
    fn zero_fixture() {
        let f = fixture(vec![((0, 0), vec![]), ((1, -1), vec![])], vec![]);
        let pages = f.pages().unwrap();
        assert!(pages.last().unwrap().orders.values().all(|&o| o == 1));
        assert_eq!(finspecseq_property_check(&f).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn one_differential() {
        let d = |m| vec![FixtureDifferential { r: 2, source: (0, 0), matrix: m }];
        // Z/4 → Z/4, x ↦ 2x: kernel and cokernel are Z/2
        let f = fixture(vec![((0, 0), vec![4]), ((2, -1), vec![4])], d(vec![vec![2]]));
        let last = f.pages().unwrap().pop().unwrap();
        assert_eq!((last.orders["0,0"], last.orders["2,-1"]), (2, 2));
        // Z/4 → Z/2 reduction: kernel Z/2, target killed
        let f = fixture(vec![((0, 0), vec![4]), ((2, -1), vec![2])], d(vec![vec![1]]));
        let last = f.pages().unwrap().pop().unwrap();
        assert_eq!((last.orders["0,0"], last.orders["2,-1"]), (2, 1));
        assert_eq!(finspecseq_property_check(&f).unwrap().verdict, Verdict::Pass);
        // Z/2 → Z/4 by x ↦ x is not well defined
        let bad = fixture(vec![((0, 0), vec![2]), ((2, -1), vec![4])], d(vec![vec![1]]));
        assert!(matches!(bad.pages(), Err(SsqError::Fixture(_))));
    }

    #[test]
    fn degenerate_diagonal() {
        let f = fixture(vec![((0, 0), vec![2]), ((1, -1), vec![2]), ((2, -2), vec![2, 2])], vec![]);
        let rec = finspecseq_property_check(&f).unwrap();
        assert_eq!(rec.verdict, Verdict::Pass);
        let w = rec.witness.unwrap();
        assert_eq!(w["filtration_quotients"]["0"], json!([2, 4, 16]));
    }

    #[test]
    fn later_differentials_and_json() {
        // d2 kills part of (0,0); d3 then acts on what is left
        let text = r#"{"name":"three pages","prime":2,
            "e2":[[[0,0],[2,2]],[[2,-1],[2]],[[3,-2],[2]]],
            "differentials":[{"r":2,"source":[0,0],"matrix":[[1,0]]},{"r":3,"source":[0,0],"matrix":[[0,1]]}]}"#;
        let f = SpectralSequenceFixture::from_json_str(text).unwrap();
        let pages = f.pages().unwrap();
        let last = pages.last().unwrap();
        assert_eq!((last.orders["0,0"], last.orders["2,-1"], last.orders["3,-2"]), (1, 1, 1));
        assert_eq!(pages[1].orders["0,0"], 2);
        assert_eq!(finspecseq_property_check(&f).unwrap().verdict, Verdict::Pass);
        let nonzero_square = r#"{"name":"bad","prime":2,
            "e2":[[[0,0],[2]],[[2,-1],[2]],[[4,-2],[2]]],
            "differentials":[{"r":2,"source":[0,0],"matrix":[[1]]},{"r":2,"source":[2,-1],"matrix":[[1]]}]}"#;
        assert!(SpectralSequenceFixture::from_json_str(nonzero_square).unwrap().pages().is_err());
    }

    #[test]
    fn mixed_primes_are_skipped() {
        let f = SpectralSequenceFixture {
            name: "odd".into(),
            prime: 2,
            e2: vec![((0, 0), FiniteAbelian(vec![3])), ((1, 0), FiniteAbelian(vec![2]))],
            differentials: vec![],
        };
        assert_eq!(finspecseq_property_check(&f).unwrap().verdict, Verdict::Pass);
    }
}
