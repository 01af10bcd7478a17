//! Extremal families built by extending set families over [r] to partite
//! families, plus the uniform set families they come from.
//!
//! `extend` turns a family `h` of subsets of [r] into the largest partite
//! family whose every edge has a projection containing some member of `h`.
//! The named constructions are specific extensions:
//!
//! * `hilton_milner`: extension of {{l, r} : l < r} together with [r-1].
//! * `layered_hilton_milner`: the above plus every vector whose last
//!   coordinate lies in 2..=s.
//! * `generalized_hilton_milner`: extension of {[t] Union {l} : l > t}
//!   together with the complements [r] minus {l} for l <= t.
//! * `simplex_family`: extension of all (t+1)-subsets of [t+2].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Edge, Family, PartSpec, SetFamily};

fn projection_mask(e: &Edge) -> u64 {
    let mut mask = 0u64;
    for (i, &c) in e.coords().iter().enumerate() {
        if c == 1 {
            mask |= 1 << i;
        }
    }
    mask
}

fn set_mask(s: &BTreeSet<usize>) -> u64 {
    s.iter().fold(0u64, |m, &el| m | (1 << (el - 1)))
}

/// The largest family over `spec` whose every edge projection contains a
/// member of `h`. An empty `h` yields the empty family; a member that is the
/// empty set yields the complete family.
pub fn extend(h: &SetFamily, spec: &PartSpec) -> Result<Family> {
    let r = spec.part_count();
    if h.ground_size() != r {
        return Err(Error::GroundSizeMismatch {
            expected: r,
            got: h.ground_size(),
        });
    }
    let member_masks: Vec<u64> = h.sets().map(set_mask).collect();
    let vectors = spec.all_vectors()?;
    let edges: Vec<Edge> = if r <= 20 {
        // superset closure over all 2^r masks, then a table lookup per vector
        let mut good = vec![false; 1usize << r];
        for &m in &member_masks {
            good[m as usize] = true;
        }
        for bit in 0..r {
            for mask in 0..good.len() {
                if mask & (1 << bit) != 0 && good[mask ^ (1 << bit)] {
                    good[mask] = true;
                }
            }
        }
        vectors
            .into_iter()
            .filter(|v| good[projection_mask(v) as usize])
            .collect()
    } else {
        vectors
            .into_iter()
            .filter(|v| {
                let p = projection_mask(v);
                member_masks.iter().any(|&m| m & p == m)
            })
            .collect()
    };
    Family::new(spec.clone(), edges)
}

fn hilton_milner_sets(r: usize) -> Result<SetFamily> {
    if r < 3 {
        return Err(Error::NeedsThreeParts { r });
    }
    let mut sets: Vec<BTreeSet<usize>> =
        (1..r).map(|l| BTreeSet::from([l, r])).collect();
    sets.push((1..r).collect());
    SetFamily::new(r, sets)
}

pub(crate) fn generalized_hilton_milner_sets(r: usize, t: usize) -> Result<SetFamily> {
    check_t(r, t)?;
    let mut sets: Vec<BTreeSet<usize>> = (t + 1..=r)
        .map(|l| {
            let mut s: BTreeSet<usize> = (1..=t).collect();
            s.insert(l);
            s
        })
        .collect();
    for l in 1..=t {
        sets.push((1..=r).filter(|&x| x != l).collect());
    }
    SetFamily::new(r, sets)
}

fn check_t(r: usize, t: usize) -> Result<()> {
    if r < 3 {
        return Err(Error::NeedsThreeParts { r });
    }
    if t < 1 || t > r - 2 {
        return Err(Error::TRange { t, min: 1, max: r - 2 });
    }
    Ok(())
}

fn require_symmetric(spec: &PartSpec) -> Result<u32> {
    spec.symmetric_size().ok_or(Error::EqualSizesRequired)
}

/// The family with matching number 1 and transversal number 2: every vector
/// that is 1 somewhere among the first r-1 coordinates and 1 in the last, plus
/// every vector that is 1 on all of the first r-1 coordinates. Size for equal
/// parts n: n^(r-1) - (n-1)^(r-1) + n - 1.
pub fn hilton_milner(spec: &PartSpec) -> Result<Family> {
    extend(&hilton_milner_sets(spec.part_count())?, spec)
}

/// The layered extremal family for matching number s over equal part sizes n:
/// `hilton_milner` plus all vectors whose last coordinate is between 2 and s.
/// Size s*n^(r-1) - (n-1)^(r-1) + n - s; matching number s, transversal
/// number s + 1.
pub fn layered_hilton_milner(spec: &PartSpec, s: usize) -> Result<Family> {
    let n = require_symmetric(spec)?;
    if s < 1 || s >= n as usize {
        return Err(Error::SRange { s, limit: n });
    }
    let r = spec.part_count();
    let base = hilton_milner(spec)?;
    let mut edges: Vec<Edge> = base.edges().to_vec();
    if s >= 2 {
        for v in spec.all_vectors()? {
            let last = v.coord(r);
            if 2 <= last && last as usize <= s && !base.contains(&v) {
                edges.push(v);
            }
        }
    }
    Family::new(spec.clone(), edges)
}

/// The star-like extremal t-intersecting family over equal part sizes n.
/// Size n^(r-t) - (n-1)^(r-t) + t(n-1).
pub fn generalized_hilton_milner(spec: &PartSpec, t: usize) -> Result<Family> {
    require_symmetric(spec)?;
    extend(&generalized_hilton_milner_sets(spec.part_count(), t)?, spec)
}

/// The simplex-based extremal t-intersecting family over equal part sizes n:
/// extension of all (t+1)-subsets of [t+2]. Size
/// (t+2)n^(r-t-1) - (t+1)n^(r-t-2).
pub fn simplex_family(spec: &PartSpec, t: usize) -> Result<Family> {
    require_symmetric(spec)?;
    let r = spec.part_count();
    check_t(r, t)?;
    let sets: Vec<BTreeSet<usize>> = subsets_of_size(t + 2, t + 1);
    extend(&SetFamily::new(r, sets)?, spec)
}

fn subsets_of_size(m: usize, k: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, m: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<BTreeSet<usize>>) {
        if current.len() == k {
            out.push(current.iter().copied().collect());
            return;
        }
        for x in start..=m {
            current.push(x);
            rec(x + 1, m, k, current, out);
            current.pop();
        }
    }
    rec(1, m, k, &mut current, &mut out);
    out
}

/// All (t+1)-subsets of [r] containing [t]: the t-intersecting star. Size
/// r - t.
pub fn uniform_star(r: usize, t: usize) -> Result<SetFamily> {
    check_t(r, t)?;
    let sets: Vec<BTreeSet<usize>> = (t + 1..=r)
        .map(|i| {
            let mut s: BTreeSet<usize> = (1..=t).collect();
            s.insert(i);
            s
        })
        .collect();
    SetFamily::new(r, sets)
}

/// All (t+1)-subsets of [t+2]: pairwise intersections have size exactly t.
/// Size t + 2, on ground set [t+2].
pub fn uniform_simplex(t: usize) -> Result<SetFamily> {
    if t < 1 {
        return Err(Error::TTooSmall { t });
    }
    SetFamily::new(t + 2, subsets_of_size(t + 2, t + 1))
}
