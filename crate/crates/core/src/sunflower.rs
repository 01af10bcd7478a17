//! Shrinking, bases, and sunflowers for set families over an arbitrary
//! ordered ground type.
//!
//! A base of a family is reached by repeatedly shrinking: pick a nonempty
//! core C properly contained in some member and replace every superset of C
//! by C itself. Shrinking can only increase the maximum number of pairwise
//! disjoint members, so a shrink is accepted exactly when that number stays
//! put. The fixpoint of accepted shrinks is an antichain in which every
//! original member contains some base member. Each accepted step is logged,
//! and the log replays.
//!
//! A sunflower with core C is a collection of members, each containing C,
//! that are pairwise disjoint outside C. The Erdos-Rado bound guarantees one
//! with k petals in any family larger than rank! * (k-1)^rank.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::analysis;
use crate::error::{Error, Result};
use crate::model::{Family, Vertex};

/// A family of nonempty sets over an explicit ground set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroundedSetFamily<V: Ord> {
    ground: BTreeSet<V>,
    sets: BTreeSet<BTreeSet<V>>,
}

impl<V: Ord + Copy + fmt::Display> GroundedSetFamily<V> {
    pub fn new<I>(ground: BTreeSet<V>, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = BTreeSet<V>>,
    {
        let sets: BTreeSet<BTreeSet<V>> = sets.into_iter().collect();
        for s in &sets {
            if s.is_empty() {
                return Err(Error::EmptySetMember);
            }
            for v in s {
                if !ground.contains(v) {
                    return Err(Error::GroundMembership(v.to_string()));
                }
            }
        }
        Ok(GroundedSetFamily { ground, sets })
    }

    /// Ground set inferred as the union of the members.
    pub fn from_sets<I>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = BTreeSet<V>>,
    {
        let sets: Vec<BTreeSet<V>> = sets.into_iter().collect();
        let ground: BTreeSet<V> = sets.iter().flatten().copied().collect();
        Self::new(ground, sets)
    }

    pub fn ground(&self) -> &BTreeSet<V> {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> impl Iterator<Item = &BTreeSet<V>> {
        self.sets.iter()
    }

    pub fn contains(&self, s: &BTreeSet<V>) -> bool {
        self.sets.contains(s)
    }

    /// Size of the largest member; 0 for the empty family.
    pub fn rank(&self) -> usize {
        self.sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn is_antichain(&self) -> bool {
        self.sets
            .iter()
            .all(|a| !self.sets.iter().any(|b| a != b && a.is_superset(b)))
    }

    /// True when every member of `original` contains some member of `self`.
    pub fn supports(&self, original: &GroundedSetFamily<V>) -> bool {
        original
            .sets
            .iter()
            .all(|m| self.sets.iter().any(|b| m.is_superset(b)))
    }
}

impl<V: Ord + Copy + fmt::Display> fmt::Display for GroundedSetFamily<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, v) in s.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Replaces every superset of `core` (including equal sets) by `core`.
/// `core` must be nonempty and properly contained in at least one member.
pub fn shrink<V: Ord + Copy + fmt::Display>(
    f: &GroundedSetFamily<V>,
    core: &BTreeSet<V>,
) -> Result<GroundedSetFamily<V>> {
    if core.is_empty() {
        return Err(Error::EmptyShrinkCore);
    }
    if !f.sets.iter().any(|s| s.is_superset(core) && s != core) {
        return Err(Error::ShrinkCoreNotContained);
    }
    let mut sets: BTreeSet<BTreeSet<V>> = f
        .sets
        .iter()
        .filter(|s| !s.is_superset(core))
        .cloned()
        .collect();
    sets.insert(core.clone());
    GroundedSetFamily::new(f.ground.clone(), sets)
}

fn disjoint<V: Ord>(a: &BTreeSet<V>, b: &BTreeSet<V>) -> bool {
    a.intersection(b).next().is_none()
}

/// Exact maximum number of pairwise disjoint members.
pub fn set_matching_number<V: Ord + Copy + fmt::Display>(f: &GroundedSetFamily<V>) -> usize {
    let sets: Vec<&BTreeSet<V>> = f.sets.iter().collect();
    let mut best = 0;
    let mut chosen: Vec<usize> = Vec::new();
    fn rec<V: Ord>(
        sets: &[&BTreeSet<V>],
        start: usize,
        chosen: &mut Vec<usize>,
        best: &mut usize,
    ) {
        if chosen.len() > *best {
            *best = chosen.len();
        }
        if chosen.len() + (sets.len() - start) <= *best {
            return;
        }
        for i in start..sets.len() {
            if chosen.iter().all(|&j| disjoint(sets[j], sets[i])) {
                chosen.push(i);
                rec(sets, i + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    rec(&sets, 0, &mut chosen, &mut best);
    best
}

/// First (in canonical member order) collection of exactly `k` pairwise
/// disjoint members, as indices into `sets`.
fn lex_disjoint_witness<V: Ord>(sets: &[&BTreeSet<V>], k: usize) -> Option<Vec<usize>> {
    fn rec<V: Ord>(
        sets: &[&BTreeSet<V>],
        start: usize,
        k: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == k {
            return true;
        }
        if chosen.len() + (sets.len() - start) < k {
            return false;
        }
        for i in start..sets.len() {
            if chosen.iter().all(|&j| disjoint(sets[j], sets[i])) {
                chosen.push(i);
                if rec(sets, i + 1, k, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if rec(sets, 0, k, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

/// Exact minimum number of ground elements meeting every member.
pub fn set_transversal_number<V: Ord + Copy + fmt::Display>(f: &GroundedSetFamily<V>) -> usize {
    fn covers<V: Ord>(cover: &[V], s: &BTreeSet<V>) -> bool {
        cover.iter().any(|v| s.contains(v))
    }
    fn can_cover<V: Ord + Copy>(
        sets: &[&BTreeSet<V>],
        cover: &mut Vec<V>,
        budget: usize,
    ) -> bool {
        let uncovered = match sets.iter().find(|s| !covers(cover, s)) {
            None => return true,
            Some(s) => s,
        };
        if budget == 0 {
            return false;
        }
        for &v in uncovered.iter() {
            cover.push(v);
            if can_cover(sets, cover, budget - 1) {
                cover.pop();
                return true;
            }
            cover.pop();
        }
        false
    }
    let sets: Vec<&BTreeSet<V>> = f.sets.iter().collect();
    if sets.is_empty() {
        return 0;
    }
    let lower = set_matching_number(f);
    let mut cover: Vec<V> = Vec::new();
    for budget in lower..=sets.len() {
        if can_cover(&sets, &mut cover, budget) {
            return budget;
        }
    }
    sets.len()
}

/// A core with petals containing it that are pairwise disjoint outside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sunflower<V: Ord> {
    pub core: BTreeSet<V>,
    pub petals: Vec<BTreeSet<V>>,
}

impl<V: Ord + Clone> Sunflower<V> {
    /// Checks the defining invariants: every petal contains the core, petals
    /// are pairwise disjoint outside it, and the core is exactly the petal
    /// intersection (for a single petal, the petal itself).
    pub fn check(&self) -> bool {
        if self.petals.is_empty() {
            return false;
        }
        if !self.petals.iter().all(|p| p.is_superset(&self.core)) {
            return false;
        }
        let reduced: Vec<BTreeSet<V>> = self
            .petals
            .iter()
            .map(|p| p.difference(&self.core).cloned().collect())
            .collect();
        for i in 0..reduced.len() {
            for j in i + 1..reduced.len() {
                if !disjoint(&reduced[i], &reduced[j]) {
                    return false;
                }
            }
        }
        let mut common = self.petals[0].clone();
        for p in &self.petals[1..] {
            common = common.intersection(p).cloned().collect();
        }
        common == self.core
    }

    pub fn petal_count(&self) -> usize {
        self.petals.len()
    }
}

/// Finds a sunflower with exactly `petal_count` petals among the members, if
/// one exists. Candidate cores are the pairwise member intersections plus the
/// empty set, scanned in canonical order; the petals are the first disjoint
/// selection in member order. A single petal is always the least member.
pub fn find_sunflower<V: Ord + Copy + fmt::Display>(
    f: &GroundedSetFamily<V>,
    petal_count: usize,
) -> Result<Option<Sunflower<V>>> {
    if petal_count == 0 {
        return Err(Error::PetalCountZero);
    }
    if f.len() < petal_count {
        return Ok(None);
    }
    if petal_count == 1 {
        let m = f.sets.iter().next().expect("nonempty").clone();
        return Ok(Some(Sunflower {
            core: m.clone(),
            petals: vec![m],
        }));
    }
    let members: Vec<&BTreeSet<V>> = f.sets.iter().collect();
    let mut cores: BTreeSet<BTreeSet<V>> = BTreeSet::new();
    cores.insert(BTreeSet::new());
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            cores.insert(members[i].intersection(members[j]).copied().collect());
        }
    }
    for core in cores {
        let petal_candidates: Vec<&BTreeSet<V>> = members
            .iter()
            .copied()
            .filter(|m| m.is_superset(&core))
            .collect();
        if petal_candidates.len() < petal_count {
            continue;
        }
        let reduced: Vec<BTreeSet<V>> = petal_candidates
            .iter()
            .map(|m| m.difference(&core).copied().collect())
            .collect();
        let reduced_refs: Vec<&BTreeSet<V>> = reduced.iter().collect();
        if let Some(indices) = lex_disjoint_witness(&reduced_refs, petal_count) {
            let petals: Vec<BTreeSet<V>> = indices
                .into_iter()
                .map(|i| petal_candidates[i].clone())
                .collect();
            let flower = Sunflower { core, petals };
            debug_assert!(flower.check());
            return Ok(Some(flower));
        }
    }
    Ok(None)
}

/// One accepted shrink: the core, the members it replaced, and the matching
/// number after the step (unchanged by acceptance).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "V: Serialize", deserialize = "V: Deserialize<'de> + Ord"))]
pub struct ShrinkStep<V: Ord> {
    pub core: BTreeSet<V>,
    pub removed: Vec<BTreeSet<V>>,
    pub matching_number: usize,
}

/// A base with the shrink steps that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct BaseFamily<V: Ord> {
    family: GroundedSetFamily<V>,
    provenance: Vec<ShrinkStep<V>>,
}

impl<V: Ord + Copy + fmt::Display + Serialize> BaseFamily<V> {
    pub fn family(&self) -> &GroundedSetFamily<V> {
        &self.family
    }

    pub fn provenance(&self) -> &[ShrinkStep<V>] {
        &self.provenance
    }

    /// One JSON object per accepted shrink, in order, newline-terminated.
    pub fn provenance_jsonl(&self) -> String {
        let mut out = String::new();
        for step in &self.provenance {
            out.push_str(&serde_json::to_string(step).expect("serializable step"));
            out.push('\n');
        }
        out
    }

    /// Member count by cardinality.
    pub fn size_distribution(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut dist = std::collections::BTreeMap::new();
        for s in self.family.sets() {
            *dist.entry(s.len()).or_insert(0) += 1;
        }
        dist
    }
}

/// Applies logged shrink steps to `original`, reproducing the base they came
/// from.
pub fn replay_provenance<V>(
    original: &GroundedSetFamily<V>,
    jsonl: &str,
) -> Result<GroundedSetFamily<V>>
where
    V: Ord + Copy + fmt::Display + Serialize + DeserializeOwned,
{
    let mut current = original.clone();
    for line in jsonl.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let step: ShrinkStep<V> = serde_json::from_str(line)
            .map_err(|e| Error::Internal(format!("bad provenance line: {e}")))?;
        current = shrink(&current, &step.core)?;
    }
    Ok(current)
}

fn proper_subsets_desc<V: Ord + Copy>(m: &BTreeSet<V>) -> Vec<BTreeSet<V>> {
    let elements: Vec<V> = m.iter().copied().collect();
    let n = elements.len();
    let mut subsets: Vec<BTreeSet<V>> = Vec::new();
    for mask in 1u64..((1 << n) - 1) {
        subsets.push(
            elements
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect(),
        );
    }
    subsets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    subsets
}

/// Shrinks to a fixpoint: members are scanned in canonical order, candidate
/// cores in decreasing cardinality then lexicographic order, and the first
/// shrink that keeps the matching number is applied; the scan restarts until
/// nothing is accepted. The result is an antichain every original member
/// contains a member of.
pub fn compute_base<V: Ord + Copy + fmt::Display>(f: &GroundedSetFamily<V>) -> BaseFamily<V> {
    let nu = set_matching_number(f);
    let mut current = f.clone();
    let mut provenance = Vec::new();
    'outer: loop {
        let members: Vec<BTreeSet<V>> = current.sets.iter().cloned().collect();
        for m in &members {
            for core in proper_subsets_desc(m) {
                let candidate = shrink(&current, &core).expect("core under a member");
                if set_matching_number(&candidate) == nu {
                    let removed: Vec<BTreeSet<V>> = current
                        .sets
                        .iter()
                        .filter(|s| s.is_superset(&core))
                        .cloned()
                        .collect();
                    provenance.push(ShrinkStep {
                        core,
                        removed,
                        matching_number: nu,
                    });
                    current = candidate;
                    continue 'outer;
                }
            }
        }
        break;
    }
    debug_assert!(current.is_antichain());
    debug_assert!(current.supports(f));
    BaseFamily {
        family: current,
        provenance,
    }
}

/// Erdos-Rado check: a family larger than rank! * (petals-1)^rank must
/// contain a sunflower with that many petals.
#[derive(Debug, Clone, Serialize)]
pub struct ErdosRadoReport<V: Ord> {
    pub family_size: usize,
    pub rank: usize,
    pub petal_count: usize,
    /// Decimal rendering of rank! * (petals-1)^rank.
    pub bound: String,
    pub exceeded: bool,
    pub sunflower: Option<Sunflower<V>>,
}

pub fn erdos_rado_check<V: Ord + Copy + fmt::Display>(
    f: &GroundedSetFamily<V>,
    petal_count: usize,
) -> Result<ErdosRadoReport<V>> {
    if petal_count == 0 {
        return Err(Error::PetalCountZero);
    }
    let rank = f.rank();
    let mut bound = BigInt::from(1);
    for i in 1..=rank {
        bound *= i;
    }
    bound *= BigInt::from(petal_count as u64 - 1).pow(rank as u32);
    let exceeded = BigInt::from(f.len()) > bound;
    let sunflower = find_sunflower(f, petal_count)?;
    if exceeded && sunflower.is_none() {
        return Err(Error::Internal(format!(
            "family of size {} exceeds the sunflower bound {} but no {}-petal sunflower was found",
            f.len(),
            bound,
            petal_count
        )));
    }
    Ok(ErdosRadoReport {
        family_size: f.len(),
        rank,
        petal_count,
        bound: bound.to_string(),
        exceeded,
        sunflower,
    })
}

/// Base pipeline for a partite family with nu <= s < tau, with the structural
/// facts the base must then satisfy.
#[derive(Debug, Clone, Serialize)]
pub struct PartiteBaseReport {
    pub s: usize,
    pub family_matching_number: usize,
    pub family_transversal_number: usize,
    pub base: BaseFamily<Vertex>,
    pub base_matching_number: usize,
    pub base_transversal_number: usize,
    /// rs + 1: no sunflower with this many petals may exist in the base.
    pub forbidden_petal_count: usize,
    pub has_forbidden_sunflower: bool,
    /// Decimal rendering of r! * (rs)^r.
    pub size_bound: String,
    pub size_within_bound: bool,
}

impl PartiteBaseReport {
    pub fn all_ok(&self) -> bool {
        self.base_matching_number == self.family_matching_number
            && self.base_transversal_number > self.s
            && !self.has_forbidden_sunflower
            && self.size_within_bound
    }
}

/// Vertex-set view of a partite family: each edge becomes its set of tagged
/// vertices, over the ground set of all vertices of the product space.
pub fn grounded_from_family(f: &Family) -> GroundedSetFamily<Vertex> {
    let spec = f.spec();
    let mut ground: BTreeSet<Vertex> = BTreeSet::new();
    for part in 1..=spec.part_count() {
        for symbol in 1..=spec.size_of(part) {
            ground.insert(Vertex::new(part, symbol));
        }
    }
    let sets = f.iter().map(|e| {
        e.coords()
            .iter()
            .enumerate()
            .map(|(i, &c)| Vertex::new(i + 1, c))
            .collect::<BTreeSet<Vertex>>()
    });
    GroundedSetFamily::new(ground, sets).expect("edges are nonempty and in range")
}

/// Computes the base of a partite family that is non-trivial in the matching
/// sense for `s` (nu <= s < tau, both checked), and verifies the base facts:
/// matching number preserved, transversal number still above s, no sunflower
/// with rs+1 petals, and size at most r! * (rs)^r.
pub fn base_of_partite_family(f: &Family, s: usize) -> Result<PartiteBaseReport> {
    let r = f.spec().part_count();
    if s < 1 {
        return Err(Error::SRange {
            s,
            limit: f.spec().min_size(),
        });
    }
    let (nu, _) = analysis::matching_number(f);
    if nu > s {
        return Err(Error::MatchingAboveS { nu, s });
    }
    let (tau, _) = analysis::transversal_number(f);
    if tau <= s {
        return Err(Error::CoverAtMostS { tau, s });
    }
    let grounded = grounded_from_family(f);
    let base = compute_base(&grounded);
    let base_nu = set_matching_number(base.family());
    let base_tau = set_transversal_number(base.family());
    let forbidden = r * s + 1;
    let flower = find_sunflower(base.family(), forbidden)?;
    let mut bound = BigInt::from(1);
    for i in 1..=r {
        bound *= i;
    }
    bound *= BigInt::from((r * s) as u64).pow(r as u32);
    let size_within_bound = BigInt::from(base.family().len()) <= bound;
    Ok(PartiteBaseReport {
        s,
        family_matching_number: nu,
        family_transversal_number: tau,
        base,
        base_matching_number: base_nu,
        base_transversal_number: base_tau,
        forbidden_petal_count: forbidden,
        has_forbidden_sunflower: flower.is_some(),
        size_bound: bound.to_string(),
        size_within_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::model::PartSpec;

    fn gf(sets: &[&[usize]]) -> GroundedSetFamily<usize> {
        GroundedSetFamily::from_sets(
            sets.iter().map(|s| s.iter().copied().collect::<BTreeSet<usize>>()),
        )
        .unwrap()
    }

    fn bset(s: &[usize]) -> BTreeSet<usize> {
        s.iter().copied().collect()
    }

    fn worked_example_family() -> GroundedSetFamily<usize> {
        GroundedSetFamily::new(
            (1..=5).collect(),
            [
                bset(&[1, 2]),
                bset(&[1, 3, 4]),
                bset(&[1, 3, 5]),
                bset(&[2, 3]),
                bset(&[3, 4, 5]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn grounded_family_validation() {
        assert!(matches!(
            GroundedSetFamily::new((1..=3).collect(), [BTreeSet::new()]),
            Err(Error::EmptySetMember)
        ));
        assert!(matches!(
            GroundedSetFamily::new((1..=3).collect(), [bset(&[4])]),
            Err(Error::GroundMembership(_))
        ));
    }

    #[test]
    fn shrink_worked_example() {
        let f = worked_example_family();
        let f2 = shrink(&f, &bset(&[1])).unwrap();
        assert_eq!(format!("{f2}"), "{{1},{2,3},{3,4,5}}");
        let f3 = shrink(&f2, &bset(&[3])).unwrap();
        assert_eq!(format!("{f3}"), "{{1},{3}}");
    }

    #[test]
    fn shrink_validation() {
        let f = worked_example_family();
        assert!(matches!(
            shrink(&f, &BTreeSet::new()),
            Err(Error::EmptyShrinkCore)
        ));
        assert!(matches!(
            shrink(&f, &bset(&[2, 4])),
            Err(Error::ShrinkCoreNotContained)
        ));
        // {2,3} is a member but not a proper subset of any member
        assert!(matches!(
            shrink(&shrink(&f, &bset(&[1])).unwrap(), &bset(&[2, 3])),
            Err(Error::ShrinkCoreNotContained)
        ));
    }

    #[test]
    fn matching_numbers() {
        assert_eq!(set_matching_number(&worked_example_family()), 2);
        assert_eq!(set_matching_number(&gf(&[&[1], &[2, 3], &[3, 4, 5]])), 2);
        assert_eq!(set_matching_number(&gf(&[&[1], &[2, 3], &[4]])), 3);
        assert_eq!(set_matching_number(&gf(&[&[1, 2], &[3, 4], &[5, 6]])), 3);
        assert_eq!(
            set_matching_number(&GroundedSetFamily::<usize>::from_sets([]).unwrap()),
            0
        );
    }

    #[test]
    fn transversal_numbers() {
        assert_eq!(set_transversal_number(&worked_example_family()), 2);
        assert_eq!(set_transversal_number(&gf(&[&[1], &[2, 3], &[3, 4, 5]])), 2);
        assert_eq!(set_transversal_number(&gf(&[&[1, 2], &[3, 4], &[5, 6]])), 3);
        assert_eq!(set_transversal_number(&gf(&[&[1, 2], &[2, 3], &[1, 3]])), 2);
        assert_eq!(
            set_transversal_number(&GroundedSetFamily::<usize>::from_sets([]).unwrap()),
            0
        );
    }

    #[test]
    fn base_of_worked_example() {
        let f = worked_example_family();
        let base = compute_base(&f);
        assert_eq!(format!("{}", base.family()), "{{1},{3}}");
        assert!(base.family().is_antichain());
        assert!(base.family().supports(&f));
        assert_eq!(base.provenance().len(), 2);
        assert_eq!(base.provenance()[0].core, bset(&[1]));
        assert_eq!(base.provenance()[1].core, bset(&[3]));
        assert_eq!(base.provenance()[0].matching_number, 2);
        assert_eq!(
            base.size_distribution(),
            std::collections::BTreeMap::from([(1, 2)])
        );
    }

    #[test]
    fn rejected_shrink_increases_matching() {
        let f2 = shrink(&worked_example_family(), &bset(&[1])).unwrap();
        let rejected = shrink(&f2, &bset(&[4])).unwrap();
        assert_eq!(format!("{rejected}"), "{{1},{2,3},{4}}");
        assert_eq!(set_matching_number(&rejected), 3);
        assert_eq!(set_matching_number(&f2), 2);
    }

    #[test]
    fn base_replay_roundtrip() {
        let f = worked_example_family();
        let base = compute_base(&f);
        let jsonl = base.provenance_jsonl();
        assert_eq!(jsonl.lines().count(), 2);
        let replayed = replay_provenance(&f, &jsonl).unwrap();
        assert_eq!(&replayed, base.family());
    }

    #[test]
    fn antichain_is_fixpoint_when_no_shrink_preserves() {
        // pairwise disjoint singleton pair: any shrink is impossible
        let f = gf(&[&[1], &[2]]);
        let base = compute_base(&f);
        assert_eq!(base.family(), &f);
        assert!(base.provenance().is_empty());
    }

    #[test]
    fn sunflower_basics() {
        let f = gf(&[&[1, 2], &[1, 3], &[1, 4]]);
        let flower = find_sunflower(&f, 3).unwrap().unwrap();
        assert_eq!(flower.core, bset(&[1]));
        assert_eq!(flower.petal_count(), 3);
        assert!(flower.check());

        let triangle = gf(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert!(find_sunflower(&triangle, 3).unwrap().is_none());
        let two = find_sunflower(&triangle, 2).unwrap().unwrap();
        assert!(two.check());

        let single = find_sunflower(&triangle, 1).unwrap().unwrap();
        assert_eq!(single.core, bset(&[1, 2]));
        assert_eq!(single.petals, vec![bset(&[1, 2])]);
        assert!(single.check());

        assert!(find_sunflower(&triangle, 4).unwrap().is_none());
        assert!(matches!(
            find_sunflower(&triangle, 0),
            Err(Error::PetalCountZero)
        ));
    }

    #[test]
    fn sunflower_with_disjoint_petals() {
        let f = gf(&[&[1, 2], &[3, 4], &[5, 6], &[1, 3]]);
        let flower = find_sunflower(&f, 3).unwrap().unwrap();
        assert!(flower.check());
        assert_eq!(flower.core, BTreeSet::new());
    }

    #[test]
    fn sunflower_completeness_small() {
        // brute force over all member subsets, compared with the finder
        let families: Vec<GroundedSetFamily<usize>> = vec![
            gf(&[&[1, 2], &[2, 3], &[1, 3], &[1, 4], &[1, 5]]),
            gf(&[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]]),
            gf(&[&[1], &[1, 2], &[1, 2, 3], &[4, 5], &[4, 6]]),
        ];
        for f in &families {
            let members: Vec<BTreeSet<usize>> = f.sets().cloned().collect();
            for k in 1..=members.len() {
                let mut exists = false;
                fn rec(
                    members: &[BTreeSet<usize>],
                    k: usize,
                    start: usize,
                    chosen: &mut Vec<BTreeSet<usize>>,
                    exists: &mut bool,
                ) {
                    if *exists {
                        return;
                    }
                    if chosen.len() == k {
                        let core: BTreeSet<usize> = chosen
                            .iter()
                            .skip(1)
                            .fold(chosen[0].clone(), |acc, s| {
                                acc.intersection(s).copied().collect()
                            });
                        let ok = chosen.iter().enumerate().all(|(i, a)| {
                            chosen.iter().skip(i + 1).all(|b| {
                                a.intersection(b).all(|x| core.contains(x))
                            })
                        });
                        if ok {
                            *exists = true;
                        }
                        return;
                    }
                    for i in start..members.len() {
                        chosen.push(members[i].clone());
                        rec(members, k, i + 1, chosen, exists);
                        chosen.pop();
                    }
                }
                let mut chosen = Vec::new();
                rec(&members, k, 0, &mut chosen, &mut exists);
                let found = find_sunflower(f, k).unwrap();
                assert_eq!(found.is_some(), exists, "k={k} on {f}");
                if let Some(fl) = found {
                    assert!(fl.check());
                    assert_eq!(fl.petal_count(), k);
                }
            }
        }
    }

    #[test]
    fn erdos_rado_reports() {
        // 9 two-sets, no 3 pairwise disjoint outside a common core is not
        // required; bound 2!*2^2 = 8 is exceeded, so a sunflower must exist
        let f = gf(&[
            &[1, 2],
            &[1, 3],
            &[1, 4],
            &[2, 3],
            &[2, 4],
            &[3, 4],
            &[5, 6],
            &[5, 7],
            &[6, 7],
        ]);
        let report = erdos_rado_check(&f, 3).unwrap();
        assert_eq!(report.bound, "8");
        assert!(report.exceeded);
        let flower = report.sunflower.unwrap();
        assert!(flower.check());
        assert_eq!(flower.petal_count(), 3);

        let small = gf(&[&[1, 2], &[2, 3]]);
        let report = erdos_rado_check(&small, 3).unwrap();
        assert!(!report.exceeded);

        let report = erdos_rado_check(&small, 1).unwrap();
        assert_eq!(report.bound, "0");
        assert!(report.exceeded);
        assert!(report.sunflower.is_some());
    }

    #[test]
    fn partite_base_pipeline() {
        let spec = PartSpec::symmetric(3, 3).unwrap();
        let f = constructions::layered_hilton_milner(&spec, 1).unwrap();
        let report = base_of_partite_family(&f, 1).unwrap();
        assert_eq!(report.family_matching_number, 1);
        assert_eq!(report.family_transversal_number, 2);
        assert_eq!(report.forbidden_petal_count, 4);
        assert!(report.all_ok(), "{report:?}");
        assert_eq!(report.size_bound, "162");
    }

    #[test]
    fn partite_base_rejects_trivial() {
        // a star: all edges through (1,1); tau = 1
        let spec = PartSpec::symmetric(3, 2).unwrap();
        let f = Family::new(
            spec,
            vec![
                crate::model::Edge::new(vec![1, 1, 1]),
                crate::model::Edge::new(vec![1, 2, 2]),
            ],
        )
        .unwrap();
        assert!(matches!(
            base_of_partite_family(&f, 1),
            Err(Error::CoverAtMostS { tau: 1, s: 1 })
        ));
        let matching2 = Family::new(
            PartSpec::symmetric(3, 2).unwrap(),
            vec![
                crate::model::Edge::new(vec![1, 1, 1]),
                crate::model::Edge::new(vec![2, 2, 2]),
            ],
        )
        .unwrap();
        assert!(matches!(
            base_of_partite_family(&matching2, 1),
            Err(Error::MatchingAboveS { nu: 2, s: 1 })
        ));
    }

    #[test]
    fn grounded_from_family_tags_vertices() {
        let spec = PartSpec::new(vec![2, 3]).unwrap();
        let f = Family::new(spec, vec![crate::model::Edge::new(vec![2, 3])]).unwrap();
        let g = grounded_from_family(&f);
        assert_eq!(g.ground().len(), 5);
        assert_eq!(g.len(), 1);
        let only = g.sets().next().unwrap();
        assert!(only.contains(&Vertex::new(1, 2)));
        assert!(only.contains(&Vertex::new(2, 3)));
    }
}
