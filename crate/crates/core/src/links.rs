//! Linking diagrams and primitivity of link groups.
//!
//! A diagram is primitive when for every prime `p` some spanning tree avoids
//! labels divisible by `p`. Only finitely many primes need checking: if `p`
//! divides no nonzero label, the edges surviving mod `p` are exactly the
//! nonzero-labeled ones, so one connectivity test covers all such primes.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("malformed linking diagram: {0}")]
    Malformed(String),
    #[error("invalid link JSON: {0}")]
    Json(String),
}

/// Complete graph on the components, labeled by linking numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingDiagram {
    components: usize,
    /// `labels[(i, j)]` for `1 ≤ i < j ≤ d`.
    labels: BTreeMap<(usize, usize), i64>,
}

#[derive(Serialize, Deserialize)]
struct LinkJson {
    components: usize,
    linking: Vec<(usize, usize, i64)>,
}

impl LinkingDiagram {
    pub fn new(components: usize, linking: &[(usize, usize, i64)]) -> Result<Self, LinkError> {
        if components == 0 {
            return Err(LinkError::Malformed("a link has at least one component".into()));
        }
        let mut labels = BTreeMap::new();
        for &(i, j, lk) in linking {
            if !(1 <= i && i < j && j <= components) {
                return Err(LinkError::Malformed(format!("pair ({i}, {j}) needs 1 <= i < j <= {components}")));
            }
            if labels.insert((i, j), lk).is_some() {
                return Err(LinkError::Malformed(format!("pair ({i}, {j}) listed twice")));
            }
        }
        let expected = components * (components - 1) / 2;
        if labels.len() != expected {
            let missing = (1..=components)
                .flat_map(|i| (i + 1..=components).map(move |j| (i, j)))
                .find(|p| !labels.contains_key(p))
                .expect("some pair is missing");
            return Err(LinkError::Malformed(format!("pair {missing:?} is missing")));
        }
        Ok(LinkingDiagram { components, labels })
    }

    pub fn from_json_str(text: &str) -> Result<Self, LinkError> {
        let json: LinkJson = serde_json::from_str(text).map_err(|e| LinkError::Json(e.to_string()))?;
        LinkingDiagram::new(json.components, &json.linking)
    }

    pub fn to_json(&self) -> String {
        let linking = self.labels.iter().map(|(&(i, j), &lk)| (i, j, lk)).collect();
        serde_json::to_string(&LinkJson { components: self.components, linking }).expect("serializable")
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn label(&self, i: usize, j: usize) -> i64 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.labels[&key]
    }

    /// Edges as `(i, j, lk)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.labels.iter().map(|(&(i, j), &lk)| (i, j, lk))
    }

    /// Every label multiplied by `k`.
    pub fn scaled(&self, k: i64) -> Self {
        let labels = self.labels.iter().map(|(&e, &lk)| (e, lk * k)).collect();
        LinkingDiagram { components: self.components, labels }
    }
}

/// A single prime, or every prime dividing no nonzero label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PrimeClass {
    Generic,
    Prime(u64),
}

impl Serialize for PrimeClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PrimeClass::Generic => s.serialize_str("generic"),
            PrimeClass::Prime(p) => s.serialize_u64(*p),
        }
    }
}

impl std::fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PrimeClass::Generic => f.write_str("generic"),
            PrimeClass::Prime(p) => write!(f, "p={p}"),
        }
    }
}

/// A spanning tree of surviving edges, or the vertex set of the component of
/// vertex 1 when the surviving edges do not connect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeCertificate {
    Tree(Vec<(usize, usize)>),
    Cut(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeWitness {
    pub prime: PrimeClass,
    pub certificate: PrimeCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitivityReport {
    pub components: usize,
    pub primitive: bool,
    pub checked_primes: Vec<PrimeClass>,
    pub witnesses: Vec<PrimeWitness>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Primes dividing at least one nonzero label, ascending.
pub fn relevant_primes(d: &LinkingDiagram) -> Vec<u64> {
    let mut primes: Vec<u64> = d.labels.values().filter(|&&lk| lk != 0).flat_map(|&lk| prime_factors(lk.unsigned_abs())).collect();
    primes.sort_unstable();
    primes.dedup();
    primes
}

fn certificate(d: &LinkingDiagram, survives: impl Fn(i64) -> bool) -> PrimeCertificate {
    let n = d.components;
    let mut uf = UnionFind::<usize>::new(n);
    let mut tree = Vec::new();
    for (i, j, lk) in d.edges() {
        if survives(lk) && uf.union(i - 1, j - 1) {
            tree.push((i, j));
        }
    }
    if tree.len() + 1 == n {
        PrimeCertificate::Tree(tree)
    } else {
        let root = uf.find(0);
        PrimeCertificate::Cut((1..=n).filter(|&v| uf.find(v - 1) == root).collect())
    }
}

pub fn is_primitive_link(d: &LinkingDiagram) -> PrimitivityReport {
    let mut witnesses = vec![PrimeWitness { prime: PrimeClass::Generic, certificate: certificate(d, |lk| lk != 0) }];
    for p in relevant_primes(d) {
        let certificate = certificate(d, |lk| lk.rem_euclid(p as i64) != 0);
        witnesses.push(PrimeWitness { prime: PrimeClass::Prime(p), certificate });
    }
    let primitive = witnesses.iter().all(|w| matches!(w.certificate, PrimeCertificate::Tree(_)));
    PrimitivityReport { components: d.components, primitive, checked_primes: witnesses.iter().map(|w| w.prime).collect(), witnesses }
}

/// Checks a certificate independently of how it was produced: a tree must
/// have `d − 1` surviving edges and connect all vertices; a cut must be a
/// proper nonempty vertex set with no surviving edge leaving it.
pub fn verify_certificate(d: &LinkingDiagram, w: &PrimeWitness) -> bool {
    let survives = |lk: i64| match w.prime {
        PrimeClass::Generic => lk != 0,
        PrimeClass::Prime(p) => lk.rem_euclid(p as i64) != 0,
    };
    let n = d.components;
    match &w.certificate {
        PrimeCertificate::Tree(edges) => {
            if edges.len() + 1 != n || edges.iter().any(|&(i, j)| i >= j || j > n || !survives(d.label(i, j))) {
                return false;
            }
            let mut reached = vec![false; n + 1];
            reached[1] = true;
            for _ in 0..n {
                for &(i, j) in edges {
                    if reached[i] || reached[j] {
                        reached[i] = true;
                        reached[j] = true;
                    }
                }
            }
            reached[1..].iter().all(|&r| r)
        }
        PrimeCertificate::Cut(side) => {
            let inside = |v: usize| side.contains(&v);
            !side.is_empty() && side.len() < n && d.edges().all(|(i, j, lk)| inside(i) == inside(j) || !survives(lk))
        }
    }
}
