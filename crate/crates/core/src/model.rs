//! Core data model: part specifications, edges (vectors), families, vertices,
//! and set families over the part index set.
//!
//! Conventions: parts and symbols are 1-indexed everywhere on the public
//! surface. An edge of an r-partite r-graph is a vector (a_1, ..., a_r) with
//! a_l in {1, ..., n_l}; two edges are disjoint exactly when they differ in
//! every coordinate.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of vectors a product space may hold before
/// materialization-style operations refuse it.
pub const DEFAULT_VECTOR_LIMIT: u64 = 1_000_000;

/// Part sizes (n_1, ..., n_r) of the product space X_1 x ... x X_r.
///
/// Sizes are stored exactly as given; callers sort them when a theorem
/// assumes a sorted order. The configured vector limit travels with the
/// spec but does not take part in equality or hashing.
#[derive(Clone, Debug)]
pub struct PartSpec {
    sizes: Vec<u32>,
    vector_limit: u64,
}

impl PartSpec {
    pub fn new(sizes: Vec<u32>) -> Result<Self> {
        Self::with_vector_limit(sizes, DEFAULT_VECTOR_LIMIT)
    }

    pub fn with_vector_limit(sizes: Vec<u32>, vector_limit: u64) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::TooFewParts(sizes.len()));
        }
        for (i, &n) in sizes.iter().enumerate() {
            if n < 2 {
                return Err(Error::PartTooSmall { part: i + 1, size: n });
            }
        }
        let spec = PartSpec { sizes, vector_limit };
        let count = spec.vector_count();
        if count > vector_limit as u128 {
            return Err(Error::VectorBudget {
                count,
                limit: vector_limit,
            });
        }
        Ok(spec)
    }

    /// Equal-size spec with r parts of n symbols each.
    pub fn symmetric(r: usize, n: u32) -> Result<Self> {
        Self::new(vec![n; r])
    }

    pub fn part_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// Size of the given part (1-indexed).
    pub fn size_of(&self, part: usize) -> u32 {
        self.sizes[part - 1]
    }

    pub fn check_part(&self, part: usize) -> Result<()> {
        if part < 1 || part > self.part_count() {
            return Err(Error::PartRange {
                part,
                r: self.part_count(),
            });
        }
        Ok(())
    }

    pub fn min_size(&self) -> u32 {
        *self.sizes.iter().min().expect("at least two parts")
    }

    pub fn vector_count(&self) -> u128 {
        self.sizes.iter().map(|&n| n as u128).product()
    }

    pub fn vector_limit(&self) -> u64 {
        self.vector_limit
    }

    /// The common part size when all parts are equal.
    pub fn symmetric_size(&self) -> Option<u32> {
        let n = self.sizes[0];
        self.sizes.iter().all(|&m| m == n).then_some(n)
    }

    /// Validates one edge against this spec; `edge_index` feeds error messages.
    pub fn check_edge(&self, edge: &Edge, edge_index: usize) -> Result<()> {
        if edge.arity() != self.part_count() {
            return Err(Error::EdgeArity {
                edge_index,
                expected: self.part_count(),
                got: edge.arity(),
            });
        }
        for (i, &x) in edge.coords().iter().enumerate() {
            let size = self.sizes[i];
            if x < 1 || x > size {
                return Err(Error::CoordinateRange {
                    edge_index,
                    part: i + 1,
                    symbol: x,
                    size,
                });
            }
        }
        Ok(())
    }

    /// All vectors of the product space in canonical (lexicographic) order.
    pub fn all_vectors(&self) -> Result<Vec<Edge>> {
        let count = self.vector_count();
        if count > self.vector_limit as u128 {
            return Err(Error::VectorBudget {
                count,
                limit: self.vector_limit,
            });
        }
        let r = self.part_count();
        let mut out = Vec::with_capacity(count as usize);
        let mut cur = vec![1u32; r];
        loop {
            out.push(Edge::new(cur.clone()));
            // odometer increment, least significant coordinate last
            let mut i = r;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < self.sizes[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 1;
            }
        }
    }
}

impl PartialEq for PartSpec {
    fn eq(&self, other: &Self) -> bool {
        self.sizes == other.sizes
    }
}

impl Eq for PartSpec {}

impl std::hash::Hash for PartSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.sizes.hash(state);
    }
}

impl fmt::Display for PartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.sizes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// One edge: a symbol per part, 1-indexed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Edge(Vec<u32>);

impl Edge {
    pub fn new(coords: Vec<u32>) -> Self {
        Edge(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Coordinate in the given part (1-indexed).
    pub fn coord(&self, part: usize) -> u32 {
        self.0[part - 1]
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Canonical sort key; the derived `Ord` compares exactly this.
    pub fn sort_key(&self) -> &[u32] {
        &self.0
    }

    /// Copy of this edge with one coordinate replaced (1-indexed part).
    pub fn with_coord(&self, part: usize, symbol: u32) -> Edge {
        let mut c = self.0.clone();
        c[part - 1] = symbol;
        Edge(c)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A vertex of the r-partite vertex set: symbol `symbol` inside part `part`.
/// Canonical order is (part, symbol).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub part: usize,
    pub symbol: u32,
}

impl Vertex {
    pub fn new(part: usize, symbol: u32) -> Self {
        Vertex { part, symbol }
    }

    /// True when the edge uses this vertex.
    pub fn covers(&self, e: &Edge) -> bool {
        e.coord(self.part) == self.symbol
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.part, self.symbol)
    }
}

/// A finite family of edges over one product space.
///
/// Held as a hash set for membership plus a canonically sorted list for
/// iteration and serialization; equality is set equality.
#[derive(Clone, Debug)]
pub struct Family {
    spec: PartSpec,
    edges: Vec<Edge>,
    index: HashSet<Edge>,
}

impl Family {
    /// Validates, deduplicates, and canonically sorts the given edges.
    pub fn new(spec: PartSpec, edges: Vec<Edge>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            spec.check_edge(e, i)?;
        }
        let index: HashSet<Edge> = edges.into_iter().collect();
        let mut edges: Vec<Edge> = index.iter().cloned().collect();
        edges.sort();
        Ok(Family { spec, edges, index })
    }

    pub fn empty(spec: PartSpec) -> Self {
        Family {
            spec,
            edges: Vec::new(),
            index: HashSet::new(),
        }
    }

    /// The complete family holding every vector of the space.
    pub fn complete(spec: &PartSpec) -> Result<Self> {
        let edges = spec.all_vectors()?;
        let index = edges.iter().cloned().collect();
        Ok(Family {
            spec: spec.clone(),
            edges,
            index,
        })
    }

    pub fn spec(&self) -> &PartSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.index.contains(e)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edge> {
        self.edges.iter()
    }

    /// All vertices of the underlying space in canonical order.
    pub fn all_vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        for part in 1..=self.spec.part_count() {
            for symbol in 1..=self.spec.size_of(part) {
                out.push(Vertex::new(part, symbol));
            }
        }
        out
    }

    /// Relabels parts and symbols.
    ///
    /// `part_perm[l-1]` is the new position of part `l` (both 1-indexed) and
    /// `symbol_perms[l-1][x-1]` is the new name of symbol `x` in part `l`.
    /// Part sizes move with the parts, so permuting unequal parts is legal and
    /// yields a family over the permuted spec.
    pub fn relabel(&self, part_perm: &[usize], symbol_perms: &[Vec<u32>]) -> Result<Family> {
        let r = self.spec.part_count();
        if part_perm.len() != r || symbol_perms.len() != r {
            return Err(Error::BadRelabeling(format!(
                "expected {r} part images and {r} symbol permutations"
            )));
        }
        let mut seen = vec![false; r];
        for &p in part_perm {
            if p < 1 || p > r || seen[p - 1] {
                return Err(Error::BadRelabeling(format!(
                    "part images must form a permutation of 1..={r}"
                )));
            }
            seen[p - 1] = true;
        }
        let mut new_sizes = vec![0u32; r];
        for l in 1..=r {
            let n = self.spec.size_of(l);
            let perm = &symbol_perms[l - 1];
            if perm.len() != n as usize {
                return Err(Error::BadRelabeling(format!(
                    "part {l} has {n} symbols but its permutation lists {}",
                    perm.len()
                )));
            }
            let mut hit = vec![false; n as usize];
            for &y in perm {
                if y < 1 || y > n || hit[(y - 1) as usize] {
                    return Err(Error::BadRelabeling(format!(
                        "symbol images for part {l} must form a permutation of 1..={n}"
                    )));
                }
                hit[(y - 1) as usize] = true;
            }
            new_sizes[part_perm[l - 1] - 1] = n;
        }
        let new_spec = PartSpec::with_vector_limit(new_sizes, self.spec.vector_limit)?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut c = vec![0u32; r];
                for l in 1..=r {
                    c[part_perm[l - 1] - 1] = symbol_perms[l - 1][(e.coord(l) - 1) as usize];
                }
                Edge::new(c)
            })
            .collect();
        Family::new(new_spec, edges)
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut out = serializer.serialize_struct("Family", 2)?;
        out.serialize_field("sizes", self.spec.sizes())?;
        let coords: Vec<&[u32]> = self.edges.iter().map(Edge::coords).collect();
        out.serialize_field("edges", &coords)?;
        out.end()
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            sizes: Vec<u32>,
            edges: Vec<Vec<u32>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let spec = PartSpec::new(repr.sizes).map_err(serde::de::Error::custom)?;
        Family::new(spec, repr.edges.into_iter().map(Edge::new).collect())
            .map_err(serde::de::Error::custom)
    }
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.edges == other.edges
    }
}

impl Eq for Family {}

/// Lexicographic order on the canonical edge lists, specs first.
impl PartialOrd for Family {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Family {
    fn cmp(&self, other: &Self) -> Ordering {
        self.spec
            .sizes()
            .cmp(other.spec.sizes())
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

/// A family of subsets of the part index set [r] = {1, ..., r}.
///
/// Members are kept deduplicated in lexicographic order of their ascending
/// element sequences (the natural `BTreeSet` order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground_size: usize,
    sets: BTreeSet<BTreeSet<usize>>,
}

impl SetFamily {
    pub fn new<I, S>(ground_size: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        let mut out = BTreeSet::new();
        for s in sets {
            let s: BTreeSet<usize> = s.into_iter().collect();
            for &e in &s {
                if e < 1 || e > ground_size {
                    return Err(Error::GroundRange {
                        element: e,
                        ground: ground_size,
                    });
                }
            }
            out.insert(s);
        }
        Ok(SetFamily {
            ground_size,
            sets: out,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> impl Iterator<Item = &BTreeSet<usize>> {
        self.sets.iter()
    }

    pub fn contains(&self, s: &BTreeSet<usize>) -> bool {
        self.sets.contains(s)
    }

    /// Largest member cardinality (0 for the empty family).
    pub fn max_rank(&self) -> usize {
        self.sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Every pair of members shares at least t elements.
    pub fn is_t_intersecting(&self, t: usize) -> bool {
        let v: Vec<&BTreeSet<usize>> = self.sets.iter().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i].intersection(v[j]).count() < t {
                    return false;
                }
            }
        }
        true
    }

    /// Elements common to every member; None for the empty family.
    pub fn common_elements(&self) -> Option<BTreeSet<usize>> {
        let mut it = self.sets.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, s| acc.intersection(s).cloned().collect()))
    }

    /// No member contains another.
    pub fn is_antichain(&self) -> bool {
        let v: Vec<&BTreeSet<usize>> = self.sets.iter().collect();
        for i in 0..v.len() {
            for j in 0..v.len() {
                if i != j && v[i].is_subset(v[j]) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, e) in s.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}
