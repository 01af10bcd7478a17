//! Family invariants: pairwise intersection, matching number, transversal
//! number, fixed coordinates, projections, and the two non-triviality
//! predicates.
//!
//! Matching and transversal numbers are exact. Values are computed with a
//! branch-and-bound that branches on the least-frequent symbol of the most
//! constrained part (complete: a maximum matching either uses an edge at that
//! symbol or avoids the symbol entirely). Witnesses are then recovered by a
//! second search in canonical edge/vertex order, so the reported witness is
//! always the lexicographically least optimal one.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Edge, Family, SetFamily, Vertex};

/// Number of coordinates in which the two edges agree.
pub fn intersection_size(a: &Edge, b: &Edge) -> Result<usize> {
    if a.arity() != b.arity() {
        return Err(Error::SpecMismatch);
    }
    Ok(a.coords()
        .iter()
        .zip(b.coords())
        .filter(|(x, y)| x == y)
        .count())
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x != y)
}

/// Every pair of edges agrees in at least t coordinates. Vacuously true for
/// families with fewer than two edges.
pub fn is_t_intersecting(f: &Family, t: usize) -> Result<bool> {
    let r = f.spec().part_count();
    if t > r {
        return Err(Error::TRange { t, min: 0, max: r });
    }
    let edges = f.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let mut common = 0;
            let (a, b) = (edges[i].coords(), edges[j].coords());
            let mut left = r;
            for k in 0..r {
                if a[k] == b[k] {
                    common += 1;
                    if common >= t {
                        break;
                    }
                }
                left -= 1;
                if common + left < t {
                    break;
                }
            }
            if common < t {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Minimum pairwise agreement over all edge pairs; r when |F| <= 1.
pub fn min_pairwise_intersection(f: &Family) -> usize {
    let r = f.spec().part_count();
    let edges = f.edges();
    let mut best = r;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let c = edges[i]
                .coords()
                .iter()
                .zip(edges[j].coords())
                .filter(|(x, y)| x == y)
                .count();
            best = best.min(c);
            if best == 0 {
                return 0;
            }
        }
    }
    best
}

/// Coordinates fixed across the whole family; None (undefined) when empty.
pub fn fixed_coordinates(f: &Family) -> Option<BTreeSet<usize>> {
    let mut it = f.iter();
    let first = it.next()?;
    let r = f.spec().part_count();
    let mut fixed: BTreeSet<usize> = (1..=r).collect();
    for e in it {
        fixed.retain(|&l| e.coord(l) == first.coord(l));
        if fixed.is_empty() {
            break;
        }
    }
    Some(fixed)
}

/// The set of coordinates equal to 1.
pub fn projection(e: &Edge) -> BTreeSet<usize> {
    e.coords()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x == 1)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Projections of all edges, as a set family over [r].
pub fn projection_family(f: &Family) -> SetFamily {
    SetFamily::new(
        f.spec().part_count(),
        f.iter().map(|e| projection(e).into_iter().collect::<Vec<_>>()),
    )
    .expect("projections stay inside [r]")
}

// ---------------------------------------------------------------------------
// matching number

/// Distinct symbols per part among `edges`, capped by `edges.len()`; an upper
/// bound for the largest matching inside `edges`.
fn distinct_symbol_bound(edges: &[&[u32]], r: usize) -> usize {
    if edges.is_empty() {
        return 0;
    }
    let mut bound = edges.len();
    for l in 0..r {
        let mut symbols = BTreeSet::new();
        for e in edges {
            symbols.insert(e[l]);
        }
        bound = bound.min(symbols.len());
    }
    bound
}

fn slice_matching_exceeds(edges: &[&[u32]], pool: &[usize], budget: usize) -> bool {
    let mut chosen: Vec<usize> = Vec::new();
    for &i in pool {
        if chosen.iter().all(|&j| disjoint(edges[i], edges[j])) {
            chosen.push(i);
            if chosen.len() > budget {
                return true;
            }
        }
    }
    false
}

/// Finds a transversal of at most `budget` vertices, branching on the
/// vertices of the first uncovered edge; vertices are (0-based part, symbol).
fn slice_find_cover(
    edges: &[&[u32]],
    r: usize,
    uncovered: &[usize],
    budget: usize,
    chosen: &mut Vec<(usize, u32)>,
) -> bool {
    if uncovered.is_empty() {
        return true;
    }
    if budget == 0 || slice_matching_exceeds(edges, uncovered, budget) {
        return false;
    }
    let e = edges[uncovered[0]];
    for part in 0..r {
        let x = e[part];
        let rest: Vec<usize> = uncovered
            .iter()
            .copied()
            .filter(|&i| edges[i][part] != x)
            .collect();
        chosen.push((part, x));
        if slice_find_cover(edges, r, &rest, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Cover built by repeatedly taking the vertex covering the most remaining
/// edges. Not always minimum, but when its size hits tau its classes tend to
/// be skewed, which is what `tight_cover_matching` wants.
fn slice_greedy_cover(edges: &[&[u32]]) -> Vec<(usize, u32)> {
    let mut uncovered: Vec<usize> = (0..edges.len()).collect();
    let mut cover = Vec::new();
    while !uncovered.is_empty() {
        let mut counts: std::collections::BTreeMap<(usize, u32), usize> = Default::default();
        for &i in &uncovered {
            for (part, &x) in edges[i].iter().enumerate() {
                *counts.entry((part, x)).or_insert(0) += 1;
            }
        }
        let (&best, _) = counts
            .iter()
            .max_by_key(|(_, &c)| c)
            .expect("uncovered edges have vertices");
        uncovered.retain(|&i| edges[i][best.0] != best.1);
        cover.push(best);
    }
    cover
}

/// Exact k-matching test in the tight case tau = k: disjoint edges never
/// share a vertex, so a k-matching meets each cover vertex exactly once and
/// avoids every other cover vertex; search one representative per vertex.
/// Gives up (None) once the class DFS exceeds its node budget.
fn tight_cover_matching(edges: &[&[u32]], cover: &[(usize, u32)], k: usize) -> Option<bool> {
    let mut classes: Vec<Vec<&[u32]>> = vec![Vec::new(); k];
    for &e in edges {
        let mut hit = None;
        let mut multi = false;
        for (ci, &(part, x)) in cover.iter().enumerate() {
            if e[part] == x {
                if hit.is_some() {
                    multi = true;
                    break;
                }
                hit = Some(ci);
            }
        }
        if !multi {
            classes[hit.expect("cover vertices cover every edge")].push(e);
        }
    }
    if classes.iter().any(Vec::is_empty) {
        return Some(false);
    }
    classes.sort_by_key(Vec::len);
    fn dfs<'a>(
        classes: &[Vec<&'a [u32]>],
        chosen: &mut Vec<&'a [u32]>,
        budget: &mut usize,
    ) -> Option<bool> {
        let Some(class) = classes.get(chosen.len()) else {
            return Some(true);
        };
        for &e in class {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            if chosen.iter().all(|c| disjoint(c, e)) {
                chosen.push(e);
                match dfs(classes, chosen, budget) {
                    Some(false) => {}
                    other => return other,
                }
                chosen.pop();
            }
        }
        Some(false)
    }
    dfs(&classes, &mut Vec::new(), &mut 200_000)
}

/// Families this large get a transversal-guided shortcut before the
/// branching below; smaller ones are cheaper to branch directly.
const COVER_GUIDED_MIN: usize = 256;

/// Exact test for a matching of k pairwise disjoint edges.
pub(crate) fn exists_k_matching(edges: &[&[u32]], r: usize, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if edges.len() < k || distinct_symbol_bound(edges, r) < k {
        return false;
    }
    if edges.len() >= COVER_GUIDED_MIN {
        let all: Vec<usize> = (0..edges.len()).collect();
        if slice_matching_exceeds(edges, &all, k - 1) {
            return true;
        }
        let mut exact = Vec::new();
        if slice_find_cover(edges, r, &all, k - 1, &mut exact) {
            return false; // tau < k forces nu < k
        }
        let greedy = slice_greedy_cover(edges);
        let cover = if greedy.len() == k {
            Some(greedy)
        } else {
            exact.clear();
            slice_find_cover(edges, r, &all, k, &mut exact).then_some(exact)
        };
        if let Some(cover) = cover {
            if let Some(answer) = tight_cover_matching(edges, &cover, k) {
                return answer;
            }
        }
        // tau > k, or the tight search gave up: branch below
    }
    // most constrained part, then its least frequent symbol
    let mut pick: Option<(usize, u32, usize)> = None; // (part idx, symbol, edge count)
    let mut fewest_symbols = usize::MAX;
    for l in 0..r {
        let mut counts: std::collections::BTreeMap<u32, usize> = Default::default();
        for e in edges {
            *counts.entry(e[l]).or_insert(0) += 1;
        }
        if counts.len() < fewest_symbols {
            fewest_symbols = counts.len();
            let (&x, &c) = counts.iter().min_by_key(|(_, &c)| c).expect("nonempty");
            pick = Some((l, x, c));
        }
    }
    let (l, x, _) = pick.expect("edges nonempty");
    // branch A: some edge at (l, x) joins the matching
    for (i, e) in edges.iter().enumerate() {
        if e[l] == x {
            let rest: Vec<&[u32]> = edges
                .iter()
                .enumerate()
                .filter(|&(j, f)| j != i && disjoint(e, f))
                .map(|(_, f)| *f)
                .collect();
            if exists_k_matching(&rest, r, k - 1) {
                return true;
            }
        }
    }
    // branch B: the matching avoids symbol x in part l entirely
    let rest: Vec<&[u32]> = edges.iter().filter(|e| e[l] != x).copied().collect();
    exists_k_matching(&rest, r, k)
}

/// Greedy matching in canonical order; a lower bound for nu.
fn greedy_matching(edges: &[Edge]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if chosen
            .iter()
            .all(|&j| disjoint(e.coords(), edges[j].coords()))
        {
            chosen.push(i);
        }
    }
    chosen
}

/// Lexicographically least matching of exactly `target` edges, by use/skip
/// search in canonical order pruned with the scarcest-part bound.
fn lex_matching_witness(edges: &[Edge], r: usize, target: usize) -> Option<Vec<Edge>> {
    fn dfs(
        edges: &[Edge],
        r: usize,
        pool: &[usize],
        current: &mut Vec<usize>,
        target: usize,
    ) -> bool {
        if current.len() == target {
            return true;
        }
        for (pos, &i) in pool.iter().enumerate() {
            let filtered: Vec<usize> = pool[pos + 1..]
                .iter()
                .copied()
                .filter(|&j| disjoint(edges[i].coords(), edges[j].coords()))
                .collect();
            let slices: Vec<&[u32]> = filtered.iter().map(|&j| edges[j].coords()).collect();
            if current.len() + 1 + distinct_symbol_bound(&slices, r) >= target {
                current.push(i);
                if dfs(edges, r, &filtered, current, target) {
                    return true;
                }
                current.pop();
            }
        }
        false
    }
    let pool: Vec<usize> = (0..edges.len()).collect();
    let mut current = Vec::new();
    dfs(edges, r, &pool, &mut current, target)
        .then(|| current.into_iter().map(|i| edges[i].clone()).collect())
}

/// Exact matching number with the lexicographically least maximum matching.
pub fn matching_number(f: &Family) -> (usize, Vec<Edge>) {
    if f.is_empty() {
        return (0, Vec::new());
    }
    let r = f.spec().part_count();
    let slices: Vec<&[u32]> = f.iter().map(|e| e.coords()).collect();
    let mut nu = greedy_matching(f.edges()).len();
    while exists_k_matching(&slices, r, nu + 1) {
        nu += 1;
    }
    let witness =
        lex_matching_witness(f.edges(), r, nu).expect("a maximum matching of size nu exists");
    (nu, witness)
}

/// True when nu(F) <= s, without computing nu exactly.
pub(crate) fn matching_number_at_most(f: &Family, s: usize) -> bool {
    let r = f.spec().part_count();
    let slices: Vec<&[u32]> = f.iter().map(|e| e.coords()).collect();
    !exists_k_matching(&slices, r, s + 1)
}

// ---------------------------------------------------------------------------
// transversal number

fn uncovered_after(edges: &[Edge], uncovered: &[usize], v: Vertex) -> Vec<usize> {
    uncovered
        .iter()
        .copied()
        .filter(|&i| !v.covers(&edges[i]))
        .collect()
}

/// True when the pool holds more than `budget` pairwise disjoint edges,
/// found greedily; a cheap certificate that no `budget`-vertex cover exists.
fn matching_exceeds(edges: &[Edge], pool: &[usize], budget: usize) -> bool {
    let mut chosen: Vec<usize> = Vec::new();
    for &i in pool {
        if chosen
            .iter()
            .all(|&j| disjoint(edges[i].coords(), edges[j].coords()))
        {
            chosen.push(i);
            if chosen.len() > budget {
                return true;
            }
        }
    }
    false
}

fn cover_within_floor(
    edges: &[Edge],
    r: usize,
    uncovered: &[usize],
    budget: usize,
    floor: Option<Vertex>,
) -> bool {
    if uncovered.is_empty() {
        return true;
    }
    if budget == 0 || matching_exceeds(edges, uncovered, budget) {
        return false;
    }
    let e = &edges[uncovered[0]];
    for part in 1..=r {
        let v = Vertex::new(part, e.coord(part));
        if floor.map_or(false, |m| v < m) {
            continue;
        }
        if cover_within_floor(edges, r, &uncovered_after(edges, uncovered, v), budget - 1, floor) {
            return true;
        }
    }
    false
}

/// Exact test for a transversal of at most `budget` vertices. Branches on the
/// r vertices of the first uncovered edge.
pub(crate) fn cover_within(edges: &[Edge], r: usize, uncovered: &[usize], budget: usize) -> bool {
    cover_within_floor(edges, r, uncovered, budget, None)
}

/// Lexicographically least transversal of exactly `target` vertices: scan
/// vertices in ascending order and keep one exactly when the rest can still
/// be covered with the remaining budget drawn from strictly later vertices.
fn lex_cover_witness(f: &Family, target: usize) -> Option<Vec<Vertex>> {
    let edges = f.edges();
    let r = f.spec().part_count();
    let vertices = f.all_vertices();
    let mut uncovered: Vec<usize> = (0..edges.len()).collect();
    let mut chosen: Vec<Vertex> = Vec::new();
    for (idx, &v) in vertices.iter().enumerate() {
        if uncovered.is_empty() || chosen.len() == target {
            break;
        }
        let rest = uncovered_after(edges, &uncovered, v);
        if rest.len() == uncovered.len() {
            continue; // covers nothing new; a minimum cover never wastes a vertex
        }
        let budget = target - chosen.len() - 1;
        let feasible = if rest.is_empty() {
            budget == 0
        } else {
            budget > 0
                && vertices.get(idx + 1).map_or(false, |&m| {
                    cover_within_floor(edges, r, &rest, budget, Some(m))
                })
        };
        if feasible {
            chosen.push(v);
            uncovered = rest;
        }
    }
    (uncovered.is_empty() && chosen.len() == target).then_some(chosen)
}

/// Exact transversal number with the lexicographically least minimum
/// transversal.
pub fn transversal_number(f: &Family) -> (usize, Vec<Vertex>) {
    if f.is_empty() {
        return (0, Vec::new());
    }
    let r = f.spec().part_count();
    let edges = f.edges();
    let all: Vec<usize> = (0..edges.len()).collect();
    // any single part is a transversal, so tau <= min part size
    let mut tau = f.spec().min_size() as usize;
    while tau > 0 && cover_within(edges, r, &all, tau - 1) {
        tau -= 1;
    }
    let witness = lex_cover_witness(f, tau).expect("a minimum transversal of size tau exists");
    (tau, witness)
}

/// True when tau(F) > s, without computing tau exactly.
pub(crate) fn transversal_number_above(f: &Family, s: usize) -> bool {
    let r = f.spec().part_count();
    let all: Vec<usize> = (0..f.len()).collect();
    !cover_within(f.edges(), r, &all, s)
}

// ---------------------------------------------------------------------------
// non-triviality

/// Non-trivial in the matching sense: nu(F) <= s < tau(F).
pub fn is_nontrivial_matching_family(f: &Family, s: usize) -> Result<bool> {
    if s < 1 {
        return Err(Error::SRange {
            s,
            limit: f.spec().min_size(),
        });
    }
    Ok(matching_number_at_most(f, s) && transversal_number_above(f, s))
}

/// Non-trivial in the intersection sense: t-intersecting with fewer than t
/// fixed coordinates. The empty family is not non-trivial.
pub fn is_nontrivial_intersecting_family(f: &Family, t: usize) -> Result<bool> {
    let r = f.spec().part_count();
    if t < 1 || t > r - 1 {
        return Err(Error::TRange {
            t,
            min: 1,
            max: r - 1,
        });
    }
    match fixed_coordinates(f) {
        None => Ok(false),
        Some(fixed) => Ok(fixed.len() < t && is_t_intersecting(f, t)?),
    }
}

/// Everything at once, for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub matching_number: usize,
    pub matching_witness: Vec<Edge>,
    pub transversal_number: usize,
    pub transversal_witness: Vec<Vertex>,
    pub min_pairwise_intersection: usize,
    /// None means undefined (empty family).
    pub fixed_coordinates: Option<BTreeSet<usize>>,
}

pub fn analyze(f: &Family) -> AnalysisReport {
    let (nu, nu_witness) = matching_number(f);
    let (tau, tau_witness) = transversal_number(f);
    AnalysisReport {
        matching_number: nu,
        matching_witness: nu_witness,
        transversal_number: tau,
        transversal_witness: tau_witness,
        min_pairwise_intersection: min_pairwise_intersection(f),
        fixed_coordinates: fixed_coordinates(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PartSpec;

    fn family(sizes: &[u32], edges: &[&[u32]]) -> Family {
        let spec = PartSpec::new(sizes.to_vec()).unwrap();
        Family::new(spec, edges.iter().map(|c| Edge::new(c.to_vec())).collect()).unwrap()
    }

    #[test]
    fn intersection_size_counts_agreements() {
        let a = Edge::new(vec![1, 2, 3]);
        let b = Edge::new(vec![1, 3, 3]);
        assert_eq!(intersection_size(&a, &b).unwrap(), 2);
        assert!(intersection_size(&a, &Edge::new(vec![1, 2])).is_err());
    }

    #[test]
    fn diagonal_matching_in_complete_family() {
        let spec = PartSpec::symmetric(3, 3).unwrap();
        let f = Family::complete(&spec).unwrap();
        let (nu, w) = matching_number(&f);
        assert_eq!(nu, 3);
        assert_eq!(w.len(), 3);
        // lex-least maximum matching starts at the all-ones vector
        assert_eq!(w[0], Edge::new(vec![1, 1, 1]));
        assert_eq!(w[1], Edge::new(vec![2, 2, 2]));
    }

    #[test]
    fn transversal_of_complete_bipartite() {
        let spec = PartSpec::symmetric(2, 2).unwrap();
        let f = Family::complete(&spec).unwrap();
        let (tau, w) = transversal_number(&f);
        assert_eq!(tau, 2);
        assert_eq!(w, vec![Vertex::new(1, 1), Vertex::new(1, 2)]);
    }

    #[test]
    fn matching_witness_is_lex_least() {
        let f = family(&[2, 2], &[&[1, 1], &[1, 2], &[2, 1], &[2, 2]]);
        let (nu, w) = matching_number(&f);
        assert_eq!(nu, 2);
        assert_eq!(w, vec![Edge::new(vec![1, 1]), Edge::new(vec![2, 2])]);
    }

    #[test]
    fn star_has_transversal_one() {
        let f = family(&[2, 2, 2], &[&[1, 1, 1], &[1, 1, 2], &[1, 2, 1], &[1, 2, 2]]);
        let (tau, w) = transversal_number(&f);
        assert_eq!(tau, 1);
        assert_eq!(w, vec![Vertex::new(1, 1)]);
        let (nu, _) = matching_number(&f);
        assert_eq!(nu, 1);
    }

    #[test]
    fn hilton_milner_style_family_at_n2() {
        // the triangle extension on three parts of two symbols
        let f = family(&[2, 2, 2], &[&[1, 1, 1], &[1, 1, 2], &[1, 2, 1], &[2, 1, 1]]);
        let (nu, _) = matching_number(&f);
        let (tau, w) = transversal_number(&f);
        assert_eq!((nu, tau), (1, 2));
        assert_eq!(w, vec![Vertex::new(1, 1), Vertex::new(1, 2)]);
        assert!(is_nontrivial_matching_family(&f, 1).unwrap());
        assert!(is_nontrivial_intersecting_family(&f, 1).unwrap());
        assert_eq!(fixed_coordinates(&f), Some(BTreeSet::new()));
        assert_eq!(min_pairwise_intersection(&f), 1);
    }

    #[test]
    fn empty_and_singleton_conventions() {
        let spec = PartSpec::symmetric(3, 2).unwrap();
        let empty = Family::empty(spec.clone());
        assert_eq!(matching_number(&empty).0, 0);
        assert_eq!(transversal_number(&empty).0, 0);
        assert_eq!(fixed_coordinates(&empty), None);
        assert_eq!(min_pairwise_intersection(&empty), 3);
        assert!(is_t_intersecting(&empty, 3).unwrap());
        assert!(!is_nontrivial_intersecting_family(&empty, 1).unwrap());
        assert!(!is_nontrivial_matching_family(&empty, 1).unwrap());

        let single = family(&[2, 2, 2], &[&[2, 1, 2]]);
        assert_eq!(fixed_coordinates(&single), Some(BTreeSet::from([1, 2, 3])));
        assert_eq!(min_pairwise_intersection(&single), 3);
        assert!(!is_nontrivial_intersecting_family(&single, 1).unwrap());
    }

    #[test]
    fn projections() {
        let e = Edge::new(vec![1, 2, 1, 3]);
        assert_eq!(projection(&e), BTreeSet::from([1, 3]));
        let f = family(&[2, 2], &[&[1, 1], &[2, 2]]);
        let p = projection_family(&f);
        assert_eq!(p.to_string(), "{{},{1,2}}");
    }

    #[test]
    fn t_intersecting_thresholds() {
        let f = family(&[2, 2, 2, 2], &[&[1, 1, 1, 1], &[1, 1, 2, 2], &[1, 2, 1, 2]]);
        assert!(is_t_intersecting(&f, 2).unwrap());
        assert!(!is_t_intersecting(&f, 3).unwrap());
        assert!(is_t_intersecting(&f, 0).unwrap());
        assert!(!is_t_intersecting(&f, 4).unwrap());
        assert!(is_t_intersecting(&f, 5).is_err());
    }
}
