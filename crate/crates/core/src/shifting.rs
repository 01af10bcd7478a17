//! The (1 <- j)-shift and its fixpoint machinery.
//!
//! `apply_shift(f, l, j)` replaces symbol j by 1 in coordinate l of every
//! edge, except where the altered edge already lies in f; this keeps the
//! family size constant and preserves every t-intersection property. A family
//! is l-shifted when every such shift at part l is the identity.
//!
//! Shifting can destroy non-triviality: a single shift may force t common
//! coordinates. A non-trivial t-intersecting family where that happens for
//! some symbol at part l is called l-shift-resistant.
//! `shift_closure_preserving_nontriviality` applies shifts that keep the
//! family non-trivial until each part is either shifted or resistant, and
//! `verify_structure_lemmas` checks the structural facts that hold at such a
//! fixpoint.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::analysis::{fixed_coordinates, is_nontrivial_intersecting_family, is_t_intersecting};
use crate::error::{Error, Result};
use crate::model::{Edge, Family};

/// Result of a single shift: the image family plus how many edges moved and
/// how many stayed because their image was already present.
#[derive(Debug, Clone, Serialize)]
pub struct ShiftOutcome {
    pub family: Family,
    pub moved_count: usize,
    pub blocked_count: usize,
}

impl ShiftOutcome {
    pub fn changed(&self) -> bool {
        self.moved_count > 0
    }
}

/// Classification of every part at a shift-closure fixpoint.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ResistanceReport {
    /// Parts where some shift would make the family trivial, with the
    /// witnessing symbol.
    pub resistant_parts: BTreeMap<usize, u32>,
    /// Parts where every shift is the identity.
    pub shifted_parts: BTreeSet<usize>,
}

impl ResistanceReport {
    pub fn is_coordinatewise_shifted(&self) -> bool {
        self.resistant_parts.is_empty()
    }
}

fn check_shift_args(f: &Family, part: usize, symbol: u32) -> Result<()> {
    f.spec().check_part(part)?;
    let size = f.spec().size_of(part);
    if symbol < 2 || symbol > size {
        return Err(Error::ShiftSymbol { symbol, size });
    }
    Ok(())
}

/// The (1 <- symbol)-shift at the given part. Each edge with the symbol there
/// has it replaced by 1 unless the altered edge is already in `f`.
pub fn apply_shift(f: &Family, part: usize, symbol: u32) -> Result<ShiftOutcome> {
    check_shift_args(f, part, symbol)?;
    let mut moved_count = 0;
    let mut blocked_count = 0;
    let mut edges: Vec<Edge> = Vec::with_capacity(f.len());
    for e in f.iter() {
        if e.coord(part) == symbol {
            let image = e.with_coord(part, 1);
            if f.contains(&image) {
                blocked_count += 1;
                edges.push(e.clone());
            } else {
                moved_count += 1;
                edges.push(image);
            }
        } else {
            edges.push(e.clone());
        }
    }
    let family = Family::new(f.spec().clone(), edges)?;
    debug_assert_eq!(family.len(), f.len());
    Ok(ShiftOutcome {
        family,
        moved_count,
        blocked_count,
    })
}

/// True when every shift at this part is the identity.
pub fn is_part_shifted(f: &Family, part: usize) -> Result<bool> {
    f.spec().check_part(part)?;
    for e in f.iter() {
        let symbol = e.coord(part);
        if symbol != 1 && !f.contains(&e.with_coord(part, 1)) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_coordinatewise_shifted(f: &Family) -> Result<bool> {
    for part in 1..=f.spec().part_count() {
        if !is_part_shifted(f, part)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_nontrivial_t_intersecting(f: &Family, t: usize) -> Result<()> {
    let r = f.spec().part_count();
    if t < 1 || t > r - 2 {
        return Err(Error::TRange { t, min: 1, max: r - 2 });
    }
    if !is_t_intersecting(f, t)? {
        return Err(Error::NotTIntersecting { t });
    }
    if !is_nontrivial_intersecting_family(f, t)? {
        return Err(Error::TrivialIntersecting { t });
    }
    Ok(())
}

fn is_trivial(f: &Family, t: usize) -> bool {
    match fixed_coordinates(f) {
        None => true,
        Some(fixed) => fixed.len() >= t,
    }
}

/// If some shift at this part would make the non-trivial t-intersecting `f`
/// trivial, returns the witnessing symbol. The fixpoint structure admits at
/// most one witness; finding two is reported as an internal inconsistency.
pub fn detect_shift_resistance(f: &Family, t: usize, part: usize) -> Result<Option<u32>> {
    f.spec().check_part(part)?;
    check_nontrivial_t_intersecting(f, t)?;
    let mut witness = None;
    for symbol in 2..=f.spec().size_of(part) {
        let out = apply_shift(f, part, symbol)?;
        if is_trivial(&out.family, t) {
            if let Some(prev) = witness {
                return Err(Error::Internal(format!(
                    "parts {prev} and {symbol} both witness shift resistance at part {part}"
                )));
            }
            witness = Some(symbol);
        }
    }
    Ok(witness)
}

/// Applies shifts that keep the family non-trivial until none is left: parts
/// are scanned in order, symbols in increasing order, and a shift is applied
/// when it moves at least one edge and the result stays non-trivial. Shifts
/// that would trivialize are retried after any later change. The returned
/// family has every part either shifted or resistant, recorded in the report.
pub fn shift_closure_preserving_nontriviality(
    f: &Family,
    t: usize,
) -> Result<(Family, ResistanceReport)> {
    check_nontrivial_t_intersecting(f, t)?;
    let r = f.spec().part_count();
    let mut current = f.clone();
    let mut skipped: HashSet<(usize, u32)> = HashSet::new();
    loop {
        let mut changed = false;
        for part in 1..=r {
            for symbol in 2..=current.spec().size_of(part) {
                if skipped.contains(&(part, symbol)) {
                    continue;
                }
                let out = apply_shift(&current, part, symbol)?;
                if !out.changed() {
                    continue;
                }
                if is_trivial(&out.family, t) {
                    skipped.insert((part, symbol));
                    continue;
                }
                current = out.family;
                changed = true;
                skipped.clear();
            }
        }
        if !changed {
            break;
        }
    }
    let mut report = ResistanceReport::default();
    for part in 1..=r {
        if is_part_shifted(&current, part)? {
            report.shifted_parts.insert(part);
        } else {
            match detect_shift_resistance(&current, t, part)? {
                Some(x) => {
                    report.resistant_parts.insert(part, x);
                }
                None => {
                    return Err(Error::Internal(format!(
                        "part {part} neither shifted nor resistant at fixpoint"
                    )))
                }
            }
        }
    }
    Ok((current, report))
}

/// Structural facts checked at one resistant part.
#[derive(Debug, Clone, Serialize)]
pub struct ResistantPartCheck {
    pub part: usize,
    pub witness: u32,
    /// The family fixes exactly t-1 coordinates.
    pub fixed_count_is_t_minus_1: bool,
    /// No edge uses a symbol other than 1 or the witness at this part.
    pub only_two_symbols: bool,
    /// Both symbol classes at this part are nonempty.
    pub both_classes_nonempty: bool,
    /// Every edge carrying the witness moves under the shift: no image is
    /// already present.
    pub no_blocked_edges: bool,
}

impl ResistantPartCheck {
    pub fn all_ok(&self) -> bool {
        self.fixed_count_is_t_minus_1
            && self.only_two_symbols
            && self.both_classes_nonempty
            && self.no_blocked_edges
    }
}

/// One size bound, evaluated exactly.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    /// Decimal rendering of the bound.
    pub bound: String,
    pub family_size: usize,
    pub holds: bool,
}

/// Outcome of `verify_structure_lemmas`.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub coordinatewise_shifted: bool,
    /// Number of fixed coordinates of the family.
    pub fixed_count: usize,
    /// Number of resistant parts (b).
    pub resistant_count: usize,
    pub part_checks: Vec<ResistantPartCheck>,
    /// |f| <= 2^(b-1) n^(r-b-t+1); present only when not coordinate-wise
    /// shifted and part sizes are equal.
    pub power_bound: Option<BoundCheck>,
    /// |f| <= (t+2)n^(r-t-1) - (t+1)n^(r-t-2); same conditions.
    pub simplex_bound: Option<BoundCheck>,
}

impl StructureReport {
    pub fn all_ok(&self) -> bool {
        self.part_checks.iter().all(|c| c.all_ok())
            && self.power_bound.as_ref().map_or(true, |b| b.holds)
            && self.simplex_bound.as_ref().map_or(true, |b| b.holds)
    }
}

fn sat_pow(base: u128, exp: i64) -> u128 {
    if exp < 0 {
        return 0;
    }
    let mut out: u128 = 1;
    for _ in 0..exp {
        out = out.saturating_mul(base);
    }
    out
}

/// Checks the structural facts that hold at a shift-closure fixpoint: per
/// resistant part the two-symbol structure, and for fixpoints that are not
/// coordinate-wise shifted the two size bounds (equal part sizes only).
/// Errors if `f` is not non-trivial t-intersecting or some part is neither
/// shifted nor resistant.
pub fn verify_structure_lemmas(f: &Family, t: usize) -> Result<StructureReport> {
    check_nontrivial_t_intersecting(f, t)?;
    let r = f.spec().part_count();
    let fixed = fixed_coordinates(f).unwrap_or_default();
    let mut part_checks = Vec::new();
    let mut shifted_count = 0;
    for part in 1..=r {
        if is_part_shifted(f, part)? {
            shifted_count += 1;
            continue;
        }
        let witness = detect_shift_resistance(f, t, part)?
            .ok_or(Error::NotShiftFixpoint { part })?;
        let mut with_one = 0usize;
        let mut with_witness = 0usize;
        let mut other_symbols = 0usize;
        let mut blocked = 0usize;
        for e in f.iter() {
            let c = e.coord(part);
            if c == 1 {
                with_one += 1;
            } else if c == witness {
                with_witness += 1;
                if f.contains(&e.with_coord(part, 1)) {
                    blocked += 1;
                }
            } else {
                other_symbols += 1;
            }
        }
        part_checks.push(ResistantPartCheck {
            part,
            witness,
            fixed_count_is_t_minus_1: fixed.len() == t - 1,
            only_two_symbols: other_symbols == 0,
            both_classes_nonempty: with_one > 0 && with_witness > 0,
            no_blocked_edges: blocked == 0,
        });
    }
    let b = r - shifted_count;
    let coordinatewise_shifted = b == 0;
    let (power_bound, simplex_bound) = match (coordinatewise_shifted, f.spec().symmetric_size()) {
        (false, Some(n)) => {
            let n = n as u128;
            let size = f.len() as u128;
            let power = sat_pow(2, b as i64 - 1)
                .saturating_mul(sat_pow(n, r as i64 - b as i64 - t as i64 + 1));
            let simplex = (t as u128 + 2) * sat_pow(n, r as i64 - t as i64 - 1)
                - (t as u128 + 1) * sat_pow(n, r as i64 - t as i64 - 2);
            let mk = |bound: u128| {
                Some(BoundCheck {
                    bound: bound.to_string(),
                    family_size: f.len(),
                    holds: size <= bound,
                })
            };
            (mk(power), mk(simplex))
        }
        _ => (None, None),
    };
    Ok(StructureReport {
        coordinatewise_shifted,
        fixed_count: fixed.len(),
        resistant_count: b,
        part_checks,
        power_bound,
        simplex_bound,
    })
}
