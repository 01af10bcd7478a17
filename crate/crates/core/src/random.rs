//! Seeded generators for randomized property suites.
//!
//! Everything here is deterministic given the RNG state, so suites that seed
//! a `ChaCha8Rng` reproduce exactly. The non-trivial generators first try
//! rejection sampling (greedy growth from a shuffled vector order) and fall
//! back to a randomly relabeled construction, so they never spin forever on
//! small product spaces.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis;
use crate::constructions;
use crate::error::{Error, Result};
use crate::model::{Edge, Family, PartSpec};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random sizes in 2..=n_max for r parts.
pub fn random_spec<R: Rng>(rng: &mut R, r: usize, n_max: u32) -> Result<PartSpec> {
    let sizes = (0..r).map(|_| rng.gen_range(2..=n_max)).collect();
    PartSpec::new(sizes)
}

/// A uniformly random family of at most `max_size` edges.
pub fn random_family<R: Rng>(rng: &mut R, spec: &PartSpec, max_size: usize) -> Result<Family> {
    let vectors = spec.all_vectors()?;
    let cap = max_size.min(vectors.len());
    let k = rng.gen_range(0..=cap);
    let indices = rand::seq::index::sample(rng, vectors.len(), k);
    let edges = indices.iter().map(|i| vectors[i].clone()).collect();
    Family::new(spec.clone(), edges)
}

/// A random t-intersecting family grown greedily along a shuffled vector
/// order; possibly trivial.
pub fn random_t_intersecting<R: Rng>(
    rng: &mut R,
    spec: &PartSpec,
    t: usize,
    target_size: usize,
) -> Result<Family> {
    let r = spec.part_count();
    if t < 1 || t > r - 1 {
        return Err(Error::TRange { t, min: 1, max: r - 1 });
    }
    let mut vectors = spec.all_vectors()?;
    vectors.shuffle(rng);
    let mut chosen: Vec<Edge> = Vec::new();
    for v in vectors {
        if chosen.len() >= target_size {
            break;
        }
        let fits = chosen
            .iter()
            .all(|e| agreement(e.coords(), v.coords()) >= t);
        if fits {
            chosen.push(v);
        }
    }
    Family::new(spec.clone(), chosen)
}

fn agreement(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x == y).count()
}

/// Random relabeling: a size-preserving-or-not part permutation plus a
/// symbol permutation in every part.
pub fn random_relabel<R: Rng>(rng: &mut R, f: &Family) -> Family {
    let r = f.spec().part_count();
    let mut part_perm: Vec<usize> = (1..=r).collect();
    part_perm.shuffle(rng);
    let symbol_perms: Vec<Vec<u32>> = (1..=r)
        .map(|l| {
            let mut p: Vec<u32> = (1..=f.spec().size_of(l)).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    f.relabel(&part_perm, &symbol_perms)
        .expect("generated permutations are valid")
}

/// A random non-trivial t-intersecting family: greedy growth retried a few
/// times, then a relabeled extension of the star-like family as a fallback.
pub fn random_nontrivial_t_intersecting<R: Rng>(
    rng: &mut R,
    spec: &PartSpec,
    t: usize,
) -> Result<Family> {
    let r = spec.part_count();
    if r < 3 {
        return Err(Error::NeedsThreeParts { r });
    }
    if t < 1 || t > r - 2 {
        return Err(Error::TRange { t, min: 1, max: r - 2 });
    }
    let total = spec.vector_count() as usize;
    for _ in 0..24 {
        let target = rng.gen_range(3..=total.max(3));
        let f = random_t_intersecting(rng, spec, t, target)?;
        if analysis::is_nontrivial_intersecting_family(&f, t)? {
            return Ok(f);
        }
    }
    let base = constructions::extend(
        &constructions::generalized_hilton_milner_sets(r, t)?,
        spec,
    )?;
    let f = random_relabel(rng, &base);
    debug_assert!(analysis::is_nontrivial_intersecting_family(&f, t)?);
    Ok(f)
}

/// A random family that is non-trivial in the matching sense: nu <= s < tau.
/// Plants s pairwise disjoint edges, grows while nu stays at most s, keeps
/// the result when tau exceeds s, and falls back to a relabeled layered
/// family.
pub fn random_nontrivial_matching<R: Rng>(
    rng: &mut R,
    spec: &PartSpec,
    s: usize,
) -> Result<Family> {
    let r = spec.part_count();
    if r < 3 {
        return Err(Error::NeedsThreeParts { r });
    }
    let min_size = spec.min_size();
    if s < 1 || s >= min_size as usize {
        return Err(Error::SRange { s, limit: min_size });
    }
    for _ in 0..24 {
        let mut vectors = spec.all_vectors()?;
        vectors.shuffle(rng);
        let mut chosen: Vec<Edge> = Vec::new();
        // plant a matching of size s first so nu lands exactly on s
        for v in &vectors {
            if chosen.len() == s {
                break;
            }
            if chosen
                .iter()
                .all(|e| agreement(e.coords(), v.coords()) == 0)
            {
                chosen.push(v.clone());
            }
        }
        for v in vectors {
            if chosen.contains(&v) {
                continue;
            }
            let mut tentative: Vec<&[u32]> = chosen.iter().map(|e| e.coords()).collect();
            tentative.push(v.coords());
            if !analysis::exists_k_matching(&tentative, r, s + 1) {
                chosen.push(v);
            }
        }
        let f = Family::new(spec.clone(), chosen)?;
        if analysis::is_nontrivial_matching_family(&f, s)? {
            return Ok(f);
        }
    }
    let mut edges = constructions::hilton_milner(spec)?.edges().to_vec();
    if s >= 2 {
        for v in spec.all_vectors()? {
            let last = v.coord(r);
            if 2 <= last && last as usize <= s && !edges.contains(&v) {
                edges.push(v);
            }
        }
    }
    let f = random_relabel(rng, &Family::new(spec.clone(), edges)?);
    if !analysis::is_nontrivial_matching_family(&f, s)? {
        return Err(Error::Internal(format!(
            "fallback family is trivial for s = {s} over {}",
            spec
        )));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_runs_repeat() {
        let spec = PartSpec::symmetric(3, 3).unwrap();
        let a = random_family(&mut rng_from_seed(7), &spec, 10).unwrap();
        let b = random_family(&mut rng_from_seed(7), &spec, 10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn intersecting_generator_is_intersecting() {
        let mut rng = rng_from_seed(11);
        for _ in 0..50 {
            let spec = random_spec(&mut rng, 3, 4).unwrap();
            let t = rng.gen_range(1..=2);
            let f = random_t_intersecting(&mut rng, &spec, t, 12).unwrap();
            assert!(analysis::is_t_intersecting(&f, t).unwrap());
        }
    }

    #[test]
    fn nontrivial_intersecting_generator_holds_predicate() {
        let mut rng = rng_from_seed(23);
        for _ in 0..50 {
            let spec = random_spec(&mut rng, 3, 4).unwrap();
            let f = random_nontrivial_t_intersecting(&mut rng, &spec, 1).unwrap();
            assert!(analysis::is_nontrivial_intersecting_family(&f, 1).unwrap());
        }
    }

    #[test]
    fn nontrivial_matching_generator_holds_predicate() {
        let mut rng = rng_from_seed(5);
        for _ in 0..30 {
            let spec = random_spec(&mut rng, 3, 4).unwrap();
            let s_cap = (spec.min_size() - 1) as usize;
            let s = rng.gen_range(1..=s_cap.min(2));
            let f = random_nontrivial_matching(&mut rng, &spec, s).unwrap();
            let (nu, _) = analysis::matching_number(&f);
            let (tau, _) = analysis::transversal_number(&f);
            assert!(nu <= s && s < tau, "nu={nu} s={s} tau={tau}");
        }
    }

    #[test]
    fn relabel_preserves_size_and_invariants() {
        let mut rng = rng_from_seed(99);
        let spec = PartSpec::new(vec![3, 2, 4]).unwrap();
        let f = constructions::hilton_milner(&spec).unwrap();
        for _ in 0..20 {
            let g = random_relabel(&mut rng, &f);
            assert_eq!(g.len(), f.len());
            let (nu, _) = analysis::matching_number(&g);
            let (tau, _) = analysis::transversal_number(&g);
            assert_eq!((nu, tau), (1, 2));
        }
    }

    #[test]
    fn generators_validate_ranges() {
        let mut rng = rng_from_seed(1);
        let spec = PartSpec::symmetric(3, 2).unwrap();
        assert!(random_t_intersecting(&mut rng, &spec, 0, 5).is_err());
        assert!(random_t_intersecting(&mut rng, &spec, 3, 5).is_err());
        assert!(random_nontrivial_t_intersecting(&mut rng, &spec, 2).is_err());
        assert!(random_nontrivial_matching(&mut rng, &spec, 2).is_err());
        let two = PartSpec::symmetric(2, 3).unwrap();
        assert!(random_nontrivial_matching(&mut rng, &two, 1).is_err());
    }
}
