//! Exact branch and bound search for maximum non-trivial families.
//!
//! The solver enumerates families as index sets over the candidate vectors in
//! canonical order, so every family is visited at most once. Symmetry breaking
//! exploits the relabeling group: some optimum family contains the all-ones
//! vector, and its second edge can be normalized under the stabilizer of that
//! root. Both reductions are optional so the unrestricted search stays
//! available as an oracle check.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::analysis;
use crate::error::{Error, Result};
use crate::formulas::Formula;
use crate::model::{Edge, Family, PartSpec, SetFamily};

/// Which extremal quantity is maximized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Largest family with matching number at most `s` and transversal number
    /// above `s`.
    Matching { s: usize },
    /// Largest t-intersecting family with fewer than `t` fixed coordinates.
    Intersecting { t: usize },
}

/// A validated maximization instance.
#[derive(Clone, Debug)]
pub struct SearchProblem {
    spec: PartSpec,
    mode: SearchMode,
}

impl SearchProblem {
    pub fn matching(spec: PartSpec, s: usize) -> Result<Self> {
        let r = spec.part_count();
        if r < 3 {
            return Err(Error::NeedsThreeParts { r });
        }
        let limit = spec.min_size();
        if s < 1 || s >= limit as usize {
            return Err(Error::SRange { s, limit });
        }
        Ok(SearchProblem {
            spec,
            mode: SearchMode::Matching { s },
        })
    }

    pub fn intersecting(spec: PartSpec, t: usize) -> Result<Self> {
        let r = spec.part_count();
        if r < 3 {
            return Err(Error::NeedsThreeParts { r });
        }
        if t < 1 || t > r - 2 {
            return Err(Error::TRange {
                t,
                min: 1,
                max: r - 2,
            });
        }
        Ok(SearchProblem {
            spec,
            mode: SearchMode::Intersecting { t },
        })
    }

    pub fn spec(&self) -> &PartSpec {
        &self.spec
    }

    pub fn mode(&self) -> SearchMode {
        self.mode
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Abort once this many search nodes have been expanded; the result is
    /// then a lower bound and `exhaustive` is false.
    pub node_budget: u64,
    /// Force the all-ones root and normalize the second edge. Turning this
    /// off searches every family; useful only for cross-checks.
    pub symmetry_breaking: bool,
    /// Worker threads for the top-level frontier of the value phase.
    pub threads: usize,
    /// Refuse product spaces with more vectors than this.
    pub vector_cap: u64,
    /// Size of a known valid family, used to seed the pruning bound. The
    /// caller must guarantee a non-trivial family of this size exists.
    pub initial_lower_bound: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: 100_000_000,
            symmetry_breaking: true,
            threads: 1,
            vector_cap: 4096,
            initial_lower_bound: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Largest non-trivial family size found; exact when `exhaustive`.
    pub optimum: usize,
    /// A family attaining `optimum`. On exhaustive runs this is the
    /// lexicographically least optimum family, so reruns reproduce it.
    pub witness: Option<Family>,
    pub nodes: u64,
    pub exhaustive: bool,
}

// ---------------------------------------------------------------------------
// bit sets over candidate indices

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Intersection with `other`, keeping only indices strictly above `i`.
    fn intersect_above(&self, other: &Bits, i: usize) -> Bits {
        let mut words: Vec<u64> = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a & b)
            .collect();
        let w = i / 64;
        for word in words.iter_mut().take(w) {
            *word = 0;
        }
        words[w] &= !(u64::MAX >> (63 - i % 64));
        Bits(words)
    }

    fn iter(&self) -> BitsIter<'_> {
        BitsIter {
            words: &self.0,
            idx: 0,
            cur: 0,
        }
    }
}

struct BitsIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for BitsIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.cur == 0 {
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
            self.idx += 1;
        }
        let b = self.cur.trailing_zeros() as usize;
        self.cur &= self.cur - 1;
        Some((self.idx - 1) * 64 + b)
    }
}

// ---------------------------------------------------------------------------
// shared search context

/// Internal goal; matching with s = 1 is solved as 1-intersecting, since
/// families with nu <= 1 are exactly the intersecting families and tau > 1
/// means no fixed coordinate.
#[derive(Clone, Copy)]
enum Goal {
    Inter { t: usize },
    Match { s: usize },
}

struct Ctx<'a> {
    cands: &'a [Edge],
    r: usize,
    goal: Goal,
    /// Pairwise compatibility, intersecting goal only.
    compat: Vec<Bits>,
    budget: u64,
    nodes: &'a AtomicU64,
    exhausted: &'a AtomicBool,
    best: &'a AtomicUsize,
    best_family: &'a Mutex<Vec<usize>>,
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x != y)
}

impl Ctx<'_> {
    /// Counts one expanded node; true once the budget is gone.
    fn spent(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(false, Ordering::Relaxed);
            return true;
        }
        false
    }

    /// Number of coordinates on which every listed candidate agrees; `r` for
    /// the empty list.
    fn fixed_count(&self, idxs: impl IntoIterator<Item = usize>) -> usize {
        let mut it = idxs.into_iter();
        let first = match it.next() {
            Some(i) => i,
            None => return self.r,
        };
        let base = self.cands[first].coords();
        let mut fixed = vec![true; self.r];
        let mut count = self.r;
        for i in it {
            let c = self.cands[i].coords();
            for l in 0..self.r {
                if fixed[l] && c[l] != base[l] {
                    fixed[l] = false;
                    count -= 1;
                }
            }
            if count == 0 {
                break;
            }
        }
        count
    }

    fn edges_of(&self, idxs: impl IntoIterator<Item = usize>) -> Vec<Edge> {
        idxs.into_iter().map(|i| self.cands[i].clone()).collect()
    }

    /// Non-triviality of the chosen prefix; feasibility is maintained by
    /// construction, so only the trivial side is tested.
    fn chosen_nontrivial(&self, chosen: &[usize]) -> bool {
        match self.goal {
            Goal::Inter { t } => self.fixed_count(chosen.iter().copied()) < t,
            Goal::Match { s } => {
                let edges = self.edges_of(chosen.iter().copied());
                let all: Vec<usize> = (0..edges.len()).collect();
                !analysis::cover_within(&edges, self.r, &all, s)
            }
        }
    }

    /// True when even chosen plus the whole pool stays trivial; every
    /// subfamily of a trivial family is trivial, so the branch is dead while
    /// non-triviality has not been reached yet.
    fn union_trivial(&self, chosen: &[usize], pool: &Bits) -> bool {
        let idxs = chosen.iter().copied().chain(pool.iter());
        match self.goal {
            Goal::Inter { t } => self.fixed_count(idxs) >= t,
            Goal::Match { s } => {
                let edges = self.edges_of(idxs);
                let all: Vec<usize> = (0..edges.len()).collect();
                analysis::cover_within(&edges, self.r, &all, s)
            }
        }
    }

    /// Can `j` join `chosen` without pushing the matching number above `s`?
    /// An (s+1)-matching through `j` needs s disjoint chosen edges that all
    /// avoid `j`.
    fn match_feasible(&self, chosen: &[usize], j: usize, s: usize) -> bool {
        let cj = self.cands[j].coords();
        let rest: Vec<&[u32]> = chosen
            .iter()
            .map(|&k| self.cands[k].coords())
            .filter(|c| disjoint(c, cj))
            .collect();
        !analysis::exists_k_matching(&rest, self.r, s)
    }

    /// Pool after adding candidate `i`: members of `base` above `i` that stay
    /// feasible alongside `chosen` (which already includes `i`).
    fn shrink_pool(&self, chosen: &[usize], i: usize, base: &Bits) -> Bits {
        match self.goal {
            Goal::Inter { .. } => base.intersect_above(&self.compat[i], i),
            Goal::Match { s } => {
                let mut out = Bits::empty(self.cands.len());
                for j in base.iter() {
                    if j > i && self.match_feasible(chosen, j, s) {
                        out.insert(j);
                    }
                }
                out
            }
        }
    }

    /// Upper bound on how many pool members one feasible family can still
    /// absorb. Intersecting pools are already pairwise-filtered, so the count
    /// stands; for matchings the pool splits into greedily maximal matchings
    /// and a family with nu <= s takes at most s edges from each.
    fn pool_cap(&self, pool: &Bits) -> usize {
        match self.goal {
            Goal::Inter { .. } => pool.count(),
            Goal::Match { s } => {
                let mut remaining: Vec<&[u32]> =
                    pool.iter().map(|i| self.cands[i].coords()).collect();
                let mut cap = 0usize;
                while !remaining.is_empty() {
                    let mut group: Vec<usize> = Vec::new();
                    'next: for (k, c) in remaining.iter().enumerate() {
                        for &g in &group {
                            if !disjoint(remaining[g], c) {
                                continue 'next;
                            }
                        }
                        group.push(k);
                    }
                    cap += group.len().min(s);
                    let mut cursor = group.iter().copied().peekable();
                    remaining = remaining
                        .into_iter()
                        .enumerate()
                        .filter(|(k, _)| {
                            if cursor.peek() == Some(k) {
                                cursor.next();
                                false
                            } else {
                                true
                            }
                        })
                        .map(|(_, c)| c)
                        .collect();
                }
                cap
            }
        }
    }

    fn record(&self, chosen: &[usize]) {
        let len = chosen.len();
        let prev = self.best.fetch_max(len, Ordering::Relaxed);
        if len > prev {
            let mut guard = self.best_family.lock().expect("search mutex poisoned");
            if len > guard.len() {
                *guard = chosen.to_vec();
            }
        }
    }
}

// ---------------------------------------------------------------------------
// value phase: determine the optimum size

fn value_dfs(ctx: &Ctx<'_>, chosen: &mut Vec<usize>, pool: &Bits, nontrivial: bool) {
    if ctx.spent() {
        return;
    }
    if nontrivial {
        ctx.record(chosen);
    } else if ctx.union_trivial(chosen, pool) {
        return;
    }
    let elems: Vec<usize> = pool.iter().collect();
    let cap = ctx.pool_cap(pool);
    for (pos, &i) in elems.iter().enumerate() {
        // everything before `pos` already got its turn as the next edge
        if chosen.len() + cap.min(elems.len() - pos) <= ctx.best.load(Ordering::Relaxed) {
            return;
        }
        chosen.push(i);
        let next_pool = ctx.shrink_pool(chosen, i, pool);
        let flag = nontrivial || ctx.chosen_nontrivial(chosen);
        value_dfs(ctx, chosen, &next_pool, flag);
        chosen.pop();
        if !ctx.exhausted.load(Ordering::Relaxed) {
            return;
        }
    }
}

/// Second edges kept under symmetry breaking: with the all-ones root fixed,
/// symbol permutations fixing 1 turn every non-1 coordinate into 2, and part
/// permutations inside blocks of equal part sizes sort the pattern, so the
/// orbit minimum has only 1s and 2s and no 2 before a 1 within a block.
fn is_orbit_representative(edge: &Edge, sizes: &[u32]) -> bool {
    let coords = edge.coords();
    if coords.iter().any(|&c| c > 2) {
        return false;
    }
    for (i, &c) in coords.iter().enumerate() {
        if c == 1
            && coords[..i]
                .iter()
                .zip(sizes)
                .any(|(&d, &m)| d == 2 && m == sizes[i])
        {
            return false;
        }
    }
    true
}

/// Top-level branches of the value phase, each an independent DFS task.
struct Task {
    chosen: Vec<usize>,
    pool: Bits,
}

fn run_task(ctx: &Ctx<'_>, task: &Task) {
    let mut chosen = task.chosen.clone();
    let flag = ctx.chosen_nontrivial(&chosen);
    value_dfs(ctx, &mut chosen, &task.pool, flag);
}

// ---------------------------------------------------------------------------
// witness phase: lexicographically least optimum family

/// Include-first use/skip search; the first complete family is the
/// lexicographically least one of the target size.
fn witness_dfs(
    ctx: &Ctx<'_>,
    chosen: &mut Vec<usize>,
    pool: &Bits,
    nontrivial: bool,
    target: usize,
) -> Option<Vec<usize>> {
    if ctx.spent() {
        return None;
    }
    if chosen.len() == target {
        return nontrivial.then(|| chosen.clone());
    }
    if chosen.len() + ctx.pool_cap(pool) < target {
        return None;
    }
    if !nontrivial && ctx.union_trivial(chosen, pool) {
        return None;
    }
    let i = pool.min().expect("pool holds enough candidates to reach the target");
    chosen.push(i);
    let next_pool = ctx.shrink_pool(chosen, i, pool);
    let flag = nontrivial || ctx.chosen_nontrivial(chosen);
    if let Some(found) = witness_dfs(ctx, chosen, &next_pool, flag, target) {
        chosen.pop();
        return Some(found);
    }
    chosen.pop();
    let mut rest = pool.clone();
    rest.remove(i);
    witness_dfs(ctx, chosen, &rest, nontrivial, target)
}

// ---------------------------------------------------------------------------
// driver

pub fn solve(problem: &SearchProblem, opts: &SearchOptions) -> Result<SearchResult> {
    let spec = &problem.spec;
    let count = spec.vector_count();
    if count > opts.vector_cap as u128 {
        return Err(Error::Infeasible(format!(
            "product space {} holds {count} vectors, above the search cap of {}",
            spec, opts.vector_cap
        )));
    }
    let cands = spec.all_vectors()?;
    let n = cands.len();
    let r = spec.part_count();
    let goal = match problem.mode {
        SearchMode::Matching { s: 1 } => Goal::Inter { t: 1 },
        SearchMode::Matching { s } => Goal::Match { s },
        SearchMode::Intersecting { t } => Goal::Inter { t },
    };
    let compat = match goal {
        Goal::Inter { t } => {
            let mut rows = vec![Bits::empty(n); n];
            for i in 0..n {
                for j in i + 1..n {
                    let agree = cands[i]
                        .coords()
                        .iter()
                        .zip(cands[j].coords())
                        .filter(|(x, y)| x == y)
                        .count();
                    if agree >= t {
                        rows[i].insert(j);
                        rows[j].insert(i);
                    }
                }
            }
            rows
        }
        Goal::Match { .. } => Vec::new(),
    };

    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(true);
    let best = AtomicUsize::new(opts.initial_lower_bound);
    let best_family = Mutex::new(Vec::new());
    let ctx = Ctx {
        cands: &cands,
        r,
        goal,
        compat,
        budget: opts.node_budget,
        nodes: &nodes,
        exhausted: &exhausted,
        best: &best,
        best_family: &best_family,
    };

    let all = Bits::full(n);
    let tasks: Vec<Task> = if opts.symmetry_breaking {
        // root = candidate 0 = the all-ones vector; branch on the second edge
        let root_pool = ctx.shrink_pool(&[0], 0, &all);
        root_pool
            .iter()
            .filter(|&i| is_orbit_representative(&cands[i], spec.sizes()))
            .map(|i| {
                let chosen = vec![0, i];
                let pool = ctx.shrink_pool(&chosen, i, &root_pool);
                Task { chosen, pool }
            })
            .collect()
    } else {
        (0..n)
            .map(|i| {
                let chosen = vec![i];
                let pool = ctx.shrink_pool(&chosen, i, &all);
                Task { chosen, pool }
            })
            .collect()
    };

    if opts.threads <= 1 || tasks.len() <= 1 {
        for task in &tasks {
            run_task(&ctx, task);
        }
    } else {
        let cursor = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..opts.threads {
                scope.spawn(|| loop {
                    let k = cursor.fetch_add(1, Ordering::Relaxed);
                    if k >= tasks.len() {
                        break;
                    }
                    run_task(&ctx, &tasks[k]);
                });
            }
        });
    }

    let value_exhaustive = exhausted.load(Ordering::Relaxed);
    let optimum = best.load(Ordering::Relaxed);
    let recorded: Vec<usize> = best_family.lock().expect("search mutex poisoned").clone();

    let witness_idxs: Option<Vec<usize>> = if optimum == 0 {
        None
    } else if value_exhaustive {
        let found = if opts.symmetry_breaking {
            let root_pool = ctx.shrink_pool(&[0], 0, &all);
            let mut chosen = vec![0];
            witness_dfs(&ctx, &mut chosen, &root_pool, false, optimum)
        } else {
            let mut chosen = Vec::new();
            witness_dfs(&ctx, &mut chosen, &all, false, optimum)
        };
        match found {
            Some(w) => Some(w),
            None if exhausted.load(Ordering::Relaxed) => {
                return Err(Error::Internal(format!(
                    "no family of the proven optimum size {optimum} was reconstructed"
                )));
            }
            // witness search ran out of budget; fall back to the value phase record
            None => (recorded.len() == optimum).then_some(recorded),
        }
    } else {
        (recorded.len() == optimum && optimum > 0).then_some(recorded)
    };

    let witness = match witness_idxs {
        Some(idxs) => Some(Family::new(
            spec.clone(),
            idxs.into_iter().map(|i| cands[i].clone()).collect(),
        )?),
        None => None,
    };
    if let Some(f) = &witness {
        debug_assert_eq!(f.len(), optimum);
        debug_assert!(match problem.mode {
            SearchMode::Matching { s } =>
                analysis::is_nontrivial_matching_family(f, s).unwrap_or(false),
            SearchMode::Intersecting { t } =>
                analysis::is_nontrivial_intersecting_family(f, t).unwrap_or(false),
        });
    }

    Ok(SearchResult {
        optimum,
        witness,
        nodes: nodes.load(Ordering::Relaxed),
        exhaustive: value_exhaustive,
    })
}

// ---------------------------------------------------------------------------
// uniform problem on abstract (t+1)-subsets

/// Outcome of the exhaustive uniform search: the largest t-intersecting
/// family of (t+1)-subsets of [r], with every maximum family classified
/// against the star and the simplex up to ground permutations.
#[derive(Clone, Debug)]
pub struct UniformSearchResult {
    pub r: usize,
    pub t: usize,
    pub optimum: usize,
    /// max(r - t, t + 2), the closed-form value.
    pub formula_value: usize,
    pub witnesses: Vec<SetFamily>,
    pub star_attains: bool,
    pub simplex_attains: bool,
    pub all_star_or_simplex: bool,
}

const UNIFORM_MAX_R: usize = 8;

fn subset_masks(r: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for mask in 0u32..1 << r {
        if mask.count_ones() as usize == k {
            out.push(mask);
        }
    }
    out
}

fn mask_family_to_sets(r: usize, masks: &[u32]) -> SetFamily {
    let sets: Vec<std::collections::BTreeSet<usize>> = masks
        .iter()
        .map(|&m| (1..=r).filter(|&e| m >> (e - 1) & 1 == 1).collect())
        .collect();
    SetFamily::new(r, sets).expect("masks index into the ground set")
}

fn sets_to_masks(fam: &SetFamily) -> Vec<u32> {
    fam.sets()
        .map(|s| s.iter().fold(0u32, |m, &e| m | 1 << (e - 1)))
        .collect()
}

/// Least relabeling of a mask family under all permutations of [r].
fn canonical_masks(masks: &[u32], r: usize) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    let mut perm: Vec<usize> = (0..r).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut image: Vec<u32> = masks
            .iter()
            .map(|&m| {
                let mut out = 0u32;
                for (from, &to) in p.iter().enumerate() {
                    if m >> from & 1 == 1 {
                        out |= 1 << to;
                    }
                }
                out
            })
            .collect();
        image.sort_unstable();
        if best.as_ref().map_or(true, |b| image < *b) {
            best = Some(image);
        }
    });
    best.expect("at least the identity permutation")
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Exhaustively solves the uniform problem for r <= 8.
pub fn solve_uniform(r: usize, t: usize) -> Result<UniformSearchResult> {
    if r > UNIFORM_MAX_R {
        return Err(Error::UniformRTooLarge { r, max: UNIFORM_MAX_R });
    }
    let formula_value = Formula::UniformMax { r, t }
        .evaluate()?
        .try_into()
        .map_err(|_| Error::Internal("uniform maximum overflows usize".into()))?;
    let cands = subset_masks(r, t + 1);
    let n = cands.len();
    let mut compat = vec![Bits::empty(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if (cands[i] & cands[j]).count_ones() as usize >= t {
                compat[i].insert(j);
                compat[j].insert(i);
            }
        }
    }

    // pass 1: maximum clique size
    fn clique_size(compat: &[Bits], chosen: usize, pool: &Bits, best: &mut usize) {
        *best = (*best).max(chosen);
        let elems: Vec<usize> = pool.iter().collect();
        for (pos, &i) in elems.iter().enumerate() {
            if chosen + (elems.len() - pos) <= *best {
                return;
            }
            let next = pool.intersect_above(&compat[i], i);
            clique_size(compat, chosen + 1, &next, best);
        }
    }

    // pass 2: every clique of exactly the maximum size
    fn collect_cliques(
        compat: &[Bits],
        chosen: &mut Vec<usize>,
        pool: &Bits,
        target: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == target {
            out.push(chosen.clone());
            return;
        }
        let elems: Vec<usize> = pool.iter().collect();
        for (pos, &i) in elems.iter().enumerate() {
            if chosen.len() + (elems.len() - pos) < target {
                return;
            }
            let next = pool.intersect_above(&compat[i], i);
            chosen.push(i);
            collect_cliques(compat, chosen, &next, target, out);
            chosen.pop();
        }
    }

    let all = Bits::full(n);
    let mut best = 0usize;
    clique_size(&compat, 0, &all, &mut best);
    let mut families: Vec<Vec<usize>> = Vec::new();
    collect_cliques(&compat, &mut Vec::new(), &all, best, &mut families);

    let star_canon = canonical_masks(&sets_to_masks(&crate::constructions::uniform_star(r, t)?), r);
    let simplex = crate::constructions::uniform_simplex(t)?;
    let simplex_canon = canonical_masks(&sets_to_masks(&simplex), r);

    let mut star_attains = false;
    let mut simplex_attains = false;
    let mut all_star_or_simplex = true;
    let mut witnesses = Vec::with_capacity(families.len());
    for idxs in &families {
        let masks: Vec<u32> = idxs.iter().map(|&i| cands[i]).collect();
        let canon = canonical_masks(&masks, r);
        if canon == star_canon {
            star_attains = true;
        } else if canon == simplex_canon {
            simplex_attains = true;
        } else {
            all_star_or_simplex = false;
        }
        witnesses.push(mask_family_to_sets(r, &masks));
    }

    Ok(UniformSearchResult {
        r,
        t,
        optimum: best,
        formula_value,
        witnesses,
        star_attains,
        simplex_attains,
        all_star_or_simplex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn sym(r: usize, n: u32) -> PartSpec {
        PartSpec::symmetric(r, n).unwrap()
    }

    #[test]
    fn matching_s1_cube() {
        let problem = SearchProblem::matching(sym(3, 2), 1).unwrap();
        let result = solve(&problem, &SearchOptions::default()).unwrap();
        assert!(result.exhaustive);
        assert_eq!(result.optimum, 4);
        let w = result.witness.unwrap();
        assert_eq!(w.len(), 4);
        assert!(analysis::is_nontrivial_matching_family(&w, 1).unwrap());
        // the lex-least optimum family is the canonical extremal one
        assert_eq!(w, constructions::hilton_milner(&sym(3, 2)).unwrap());
    }

    #[test]
    fn intersecting_t1_matches_matching_s1() {
        let spec = sym(3, 3);
        let m = solve(
            &SearchProblem::matching(spec.clone(), 1).unwrap(),
            &SearchOptions::default(),
        )
        .unwrap();
        let i = solve(
            &SearchProblem::intersecting(spec, 1).unwrap(),
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(m.optimum, 7);
        assert_eq!(i.optimum, 7);
        assert_eq!(m.witness, i.witness);
    }

    #[test]
    fn asymmetric_matching_is_size_sum() {
        // largest non-trivial family in 2 x 2 x 3 has 2 + 2 + 3 - 2 = 5 edges
        let spec = PartSpec::new(vec![2, 2, 3]).unwrap();
        let problem = SearchProblem::matching(spec, 1).unwrap();
        let result = solve(&problem, &SearchOptions::default()).unwrap();
        assert!(result.exhaustive);
        assert_eq!(result.optimum, 5);
    }

    #[test]
    fn intersecting_rminus2_four_parts() {
        let problem = SearchProblem::intersecting(sym(4, 2), 2).unwrap();
        let result = solve(&problem, &SearchOptions::default()).unwrap();
        assert!(result.exhaustive);
        assert_eq!(result.optimum, 5);
        let w = result.witness.unwrap();
        assert!(analysis::is_nontrivial_intersecting_family(&w, 2).unwrap());
    }

    #[test]
    fn matching_s2_three_cubed() {
        // 16 beats the layered family of size 15: take the x = 1 layer minus
        // (1,3,3) together with the block {2,3} x {1,2} x {1,2}
        let problem = SearchProblem::matching(sym(3, 3), 2).unwrap();
        let result = solve(&problem, &SearchOptions::default()).unwrap();
        assert!(result.exhaustive);
        assert_eq!(result.optimum, 16);
        let w = result.witness.unwrap();
        let (nu, _) = analysis::matching_number(&w);
        let (tau, _) = analysis::transversal_number(&w);
        assert_eq!((nu, tau), (2, 3));
    }

    #[test]
    fn symmetry_breaking_off_agrees() {
        let spec = sym(3, 2);
        let on = solve(
            &SearchProblem::intersecting(spec.clone(), 1).unwrap(),
            &SearchOptions::default(),
        )
        .unwrap();
        let off = solve(
            &SearchProblem::intersecting(spec, 1).unwrap(),
            &SearchOptions {
                symmetry_breaking: false,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(on.optimum, off.optimum);
        assert_eq!(on.witness, off.witness);
    }

    #[test]
    fn witness_is_deterministic() {
        let spec = PartSpec::new(vec![3, 2, 2]).unwrap();
        let solve_once = || {
            solve(
                &SearchProblem::matching(spec.clone(), 1).unwrap(),
                &SearchOptions::default(),
            )
            .unwrap()
        };
        let a = solve_once();
        let b = solve_once();
        assert_eq!(a.optimum, 5);
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn threads_agree_with_sequential() {
        let spec = sym(3, 3);
        let seq = solve(
            &SearchProblem::matching(spec.clone(), 1).unwrap(),
            &SearchOptions::default(),
        )
        .unwrap();
        let par = solve(
            &SearchProblem::matching(spec, 1).unwrap(),
            &SearchOptions {
                threads: 4,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(seq.optimum, par.optimum);
        assert_eq!(seq.witness, par.witness);
    }

    #[test]
    fn seeded_lower_bound_is_sound() {
        let spec = sym(3, 3);
        let seeded = solve(
            &SearchProblem::matching(spec, 1).unwrap(),
            &SearchOptions {
                initial_lower_bound: 7,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert!(seeded.exhaustive);
        assert_eq!(seeded.optimum, 7);
        assert_eq!(seeded.witness.unwrap().len(), 7);
    }

    #[test]
    fn tiny_budget_reports_inexhaustive() {
        let problem = SearchProblem::matching(sym(3, 3), 1).unwrap();
        let result = solve(
            &problem,
            &SearchOptions {
                node_budget: 5,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert!(!result.exhaustive);
        assert!(result.optimum <= 7);
    }

    #[test]
    fn vector_cap_rejects_large_spaces() {
        let problem = SearchProblem::matching(sym(3, 20), 1).unwrap();
        let err = solve(
            &problem,
            &SearchOptions {
                vector_cap: 4096,
                ..SearchOptions::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
    }

    #[test]
    fn problem_validation() {
        assert!(SearchProblem::matching(sym(2, 3), 1).is_err());
        assert!(SearchProblem::matching(sym(3, 2), 2).is_err());
        assert!(SearchProblem::intersecting(sym(3, 2), 2).is_err());
        assert!(SearchProblem::intersecting(sym(4, 2), 0).is_err());
    }

    #[test]
    fn orbit_representatives() {
        let sizes = [3, 3, 3];
        let rep = |c: &[u32]| is_orbit_representative(&Edge::new(c.to_vec()), &sizes);
        assert!(rep(&[1, 1, 2]));
        assert!(rep(&[1, 2, 2]));
        assert!(rep(&[2, 2, 2]));
        assert!(!rep(&[2, 1, 2]));
        assert!(!rep(&[1, 1, 3]));
        // only parts of equal size may be swapped: with sizes (2,3,2) the
        // outer parts form a block, with all-distinct sizes nothing moves
        let mixed = [2, 3, 2];
        assert!(is_orbit_representative(&Edge::new(vec![2, 1, 2]), &mixed));
        assert!(!is_orbit_representative(&Edge::new(vec![2, 1, 1]), &mixed));
        let distinct = [2, 3, 4];
        assert!(is_orbit_representative(&Edge::new(vec![2, 1, 1]), &distinct));
    }

    #[test]
    fn uniform_results_match_frozen_classification() {
        // (r, t, optimum, star attains, simplex attains)
        let table = [
            (3, 1, 3, false, true),
            (4, 1, 3, true, true),
            (4, 2, 4, false, true),
            (5, 1, 4, true, false),
            (5, 2, 4, false, true),
            (5, 3, 5, false, true),
            (6, 1, 5, true, false),
            (6, 2, 4, true, true),
            (6, 3, 5, false, true),
            (6, 4, 6, false, true),
        ];
        for (r, t, optimum, star, simplex) in table {
            let res = solve_uniform(r, t).unwrap();
            assert_eq!(res.optimum, optimum, "optimum at r={r} t={t}");
            assert_eq!(res.formula_value, optimum, "formula at r={r} t={t}");
            assert_eq!(res.star_attains, star, "star at r={r} t={t}");
            assert_eq!(res.simplex_attains, simplex, "simplex at r={r} t={t}");
            assert!(res.all_star_or_simplex, "stray witness at r={r} t={t}");
            assert!(!res.witnesses.is_empty());
        }
    }

    #[test]
    fn uniform_r3_witnesses_are_triangles_only() {
        let res = solve_uniform(3, 1).unwrap();
        // on [3] the star {12, 13} has size 2; only the triangle attains 3
        assert_eq!(res.witnesses.len(), 1);
        assert!(!res.star_attains);
    }

    #[test]
    fn uniform_validation() {
        assert!(matches!(
            solve_uniform(9, 1),
            Err(Error::UniformRTooLarge { r: 9, max: 8 })
        ));
        assert!(solve_uniform(4, 3).is_err());
    }
}
