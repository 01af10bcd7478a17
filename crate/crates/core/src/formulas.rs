//! Closed-form extremal values, evaluated exactly in arbitrary-precision
//! integers. Parameter ranges are validated against each formula's stated
//! domain; asymmetric formulas sort part sizes in nonincreasing order
//! themselves, so callers may pass sizes as stored.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn pow(base: u64, exp: usize) -> BigInt {
    big(base).pow(exp as u32)
}

fn sorted_desc(sizes: &[u32]) -> Vec<u64> {
    let mut v: Vec<u64> = sizes.iter().map(|&n| n as u64).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn check_sizes(sizes: &[u32], r_min: usize) -> Result<()> {
    if sizes.len() < r_min {
        return Err(Error::NeedsThreeParts { r: sizes.len() });
    }
    for (i, &n) in sizes.iter().enumerate() {
        if n < 2 {
            return Err(Error::PartTooSmall { part: i + 1, size: n });
        }
    }
    Ok(())
}

fn check_rt(r: usize, t: usize) -> Result<()> {
    if r < 3 {
        return Err(Error::NeedsThreeParts { r });
    }
    if t < 1 || t > r - 2 {
        return Err(Error::TRange { t, min: 1, max: r - 2 });
    }
    Ok(())
}

/// A named closed form with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Formula {
    /// Largest non-trivial intersecting family, s = 1, equal sizes:
    /// n^(r-1) - (n-1)^(r-1) + n - 1.
    M0S1 { r: usize, n: u32 },
    /// Large-n value for matchings, s >= 1, equal sizes:
    /// s*n^(r-1) - (n-1)^(r-1) + n - s.
    M0Symmetric { r: usize, s: usize, n: u32 },
    /// Exact three-part value, s = 1, any sizes: n1 + n2 + n3 - 2.
    M0Asym3 { sizes: [u32; 3] },
    /// Large-n asymmetric value; at r = 4 the maximum of two branches.
    M0Asym { s: usize, sizes: Vec<u32> },
    /// Exact value at t = r - 2, any sizes: n1 + ... + nr - r + 1.
    #[serde(rename = "iota0_rminus2")]
    Iota0RMinus2 { sizes: Vec<u32> },
    /// Star-like branch, equal sizes: n^(r-t) - (n-1)^(r-t) + t(n-1).
    Iota0StarBranch { r: usize, t: usize, n: u32 },
    /// Simplex branch, equal sizes: (t+2)n^(r-t-1) - (t+1)n^(r-t-2).
    Iota0SimplexBranch { r: usize, t: usize, n: u32 },
    /// Large-n t-intersecting value: max of the two branches.
    Iota0Symmetric { r: usize, t: usize, n: u32 },
    /// Upper bound for families with nu <= s: s times the product of all part
    /// sizes except the smallest.
    MatchingUpperBound { s: usize, sizes: Vec<u32> },
    /// Largest t-intersecting (t+1)-uniform set family on [r]: max(r-t, t+2).
    UniformMax { r: usize, t: usize },
}

impl Formula {
    pub fn name(&self) -> &'static str {
        match self {
            Formula::M0S1 { .. } => "m0_s1",
            Formula::M0Symmetric { .. } => "m0_symmetric",
            Formula::M0Asym3 { .. } => "m0_asym3",
            Formula::M0Asym { .. } => "m0_asym",
            Formula::Iota0RMinus2 { .. } => "iota0_rminus2",
            Formula::Iota0StarBranch { .. } => "iota0_star_branch",
            Formula::Iota0SimplexBranch { .. } => "iota0_simplex_branch",
            Formula::Iota0Symmetric { .. } => "iota0_symmetric",
            Formula::MatchingUpperBound { .. } => "matching_upper_bound",
            Formula::UniformMax { .. } => "uniform_max",
        }
    }

    pub fn evaluate(&self) -> Result<BigInt> {
        match *self {
            Formula::M0S1 { r, n } => {
                Formula::M0Symmetric { r, s: 1, n }.evaluate()
            }
            Formula::M0Symmetric { r, s, n } => {
                if r < 3 {
                    return Err(Error::NeedsThreeParts { r });
                }
                if n < 2 {
                    return Err(Error::NRange { n });
                }
                if s < 1 || s >= n as usize {
                    return Err(Error::SRange { s, limit: n });
                }
                let n64 = n as u64;
                Ok(big(s as u64) * pow(n64, r - 1) - pow(n64 - 1, r - 1) + big(n64)
                    - big(s as u64))
            }
            Formula::M0Asym3 { sizes } => {
                check_sizes(&sizes, 3)?;
                Ok(sizes.iter().map(|&n| big(n as u64)).sum::<BigInt>() - big(2))
            }
            Formula::M0Asym { s, ref sizes } => {
                check_sizes(sizes, 3)?;
                let v = sorted_desc(sizes);
                let r = v.len();
                let smallest = v[r - 1];
                if s < 1 || s as u64 >= smallest {
                    return Err(Error::SRange {
                        s,
                        limit: smallest as u32,
                    });
                }
                let head = &v[..r - 1];
                let tail = v[r - 1];
                let prod: BigInt = head.iter().map(|&n| big(n)).product();
                let prod_minus: BigInt = head.iter().map(|&n| big(n - 1)).product();
                let first = big(s as u64) * &prod - &prod_minus + big(tail) - big(s as u64);
                if r == 4 {
                    // second branch: the largest part crossed with an optimal
                    // three-part family on the rest
                    let inner = big(s as u64) * big(v[1]) * big(v[2])
                        - big(v[1] - 1) * big(v[2] - 1)
                        + big(v[3])
                        - big(s as u64);
                    let second = big(v[0]) * inner;
                    Ok(first.max(second))
                } else {
                    Ok(first)
                }
            }
            Formula::Iota0RMinus2 { ref sizes } => {
                check_sizes(sizes, 3)?;
                let r = sizes.len();
                Ok(sizes.iter().map(|&n| big(n as u64)).sum::<BigInt>() - big(r as u64)
                    + big(1))
            }
            Formula::Iota0StarBranch { r, t, n } => {
                check_rt(r, t)?;
                if n < 2 {
                    return Err(Error::NRange { n });
                }
                let n64 = n as u64;
                Ok(pow(n64, r - t) - pow(n64 - 1, r - t) + big(t as u64) * big(n64 - 1))
            }
            Formula::Iota0SimplexBranch { r, t, n } => {
                check_rt(r, t)?;
                if n < 2 {
                    return Err(Error::NRange { n });
                }
                let n64 = n as u64;
                Ok(big(t as u64 + 2) * pow(n64, r - t - 1)
                    - big(t as u64 + 1) * pow(n64, r - t - 2))
            }
            Formula::Iota0Symmetric { r, t, n } => {
                let star = Formula::Iota0StarBranch { r, t, n }.evaluate()?;
                let simplex = Formula::Iota0SimplexBranch { r, t, n }.evaluate()?;
                Ok(star.max(simplex))
            }
            Formula::MatchingUpperBound { s, ref sizes } => {
                check_sizes(sizes, 2)?;
                let v = sorted_desc(sizes);
                if s < 1 {
                    return Err(Error::SRange {
                        s,
                        limit: v[v.len() - 1] as u32,
                    });
                }
                Ok(big(s as u64) * v[..v.len() - 1].iter().map(|&n| big(n)).product::<BigInt>())
            }
            Formula::UniformMax { r, t } => {
                check_rt(r, t)?;
                Ok(big((r - t).max(t + 2) as u64))
            }
        }
    }
}

/// A formula together with its evaluated value.
#[derive(Debug, Clone, Serialize)]
pub struct FormulaValue {
    pub formula: Formula,
    /// Decimal rendering; exact.
    pub value: String,
}

pub fn evaluate(formula: Formula) -> Result<FormulaValue> {
    let value = formula.evaluate()?.to_string();
    Ok(FormulaValue { formula, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(f: Formula) -> BigInt {
        f.evaluate().unwrap()
    }

    #[test]
    fn s1_values() {
        assert_eq!(val(Formula::M0S1 { r: 3, n: 2 }), big(4));
        assert_eq!(val(Formula::M0S1 { r: 3, n: 3 }), big(7));
        assert_eq!(val(Formula::M0S1 { r: 3, n: 4 }), big(10));
        assert_eq!(val(Formula::M0S1 { r: 4, n: 2 }), big(8));
        assert_eq!(val(Formula::M0S1 { r: 4, n: 3 }), big(21));
    }

    #[test]
    fn symmetric_matching_values() {
        assert_eq!(val(Formula::M0Symmetric { r: 3, s: 2, n: 3 }), big(15));
        assert_eq!(val(Formula::M0Symmetric { r: 3, s: 2, n: 4 }), big(25));
        assert!(Formula::M0Symmetric { r: 3, s: 3, n: 3 }.evaluate().is_err());
        assert!(Formula::M0Symmetric { r: 2, s: 1, n: 3 }.evaluate().is_err());
    }

    #[test]
    fn asym3_is_sum_minus_two() {
        assert_eq!(val(Formula::M0Asym3 { sizes: [3, 2, 2] }), big(5));
        assert_eq!(val(Formula::M0Asym3 { sizes: [4, 4, 4] }), big(10));
    }

    #[test]
    fn asym_general_agrees_with_asym3() {
        for sizes in [[2, 2, 2], [4, 3, 2], [4, 4, 4]] {
            assert_eq!(
                val(Formula::M0Asym {
                    s: 1,
                    sizes: sizes.to_vec()
                }),
                val(Formula::M0Asym3 { sizes })
            );
        }
    }

    #[test]
    fn asym_r4_takes_branch_maximum() {
        // sizes (3,2,2,2), s = 1: first branch 11, second branch 3*(4-1+2-1) = 12
        assert_eq!(
            val(Formula::M0Asym {
                s: 1,
                sizes: vec![3, 2, 2, 2]
            }),
            big(12)
        );
        // equal sizes n = 3: both branches give 21 = m0_s1(4,3)
        assert_eq!(
            val(Formula::M0Asym {
                s: 1,
                sizes: vec![3, 3, 3, 3]
            }),
            big(21)
        );
    }

    #[test]
    fn iota0_branches_and_max() {
        assert_eq!(val(Formula::Iota0StarBranch { r: 4, t: 2, n: 2 }), big(5));
        assert_eq!(val(Formula::Iota0SimplexBranch { r: 4, t: 2, n: 2 }), big(5));
        assert_eq!(val(Formula::Iota0Symmetric { r: 4, t: 2, n: 2 }), big(5));
        // r = 5, t = 2, n = 2: star branch 9, simplex branch 10
        assert_eq!(val(Formula::Iota0StarBranch { r: 5, t: 2, n: 2 }), big(9));
        assert_eq!(val(Formula::Iota0SimplexBranch { r: 5, t: 2, n: 2 }), big(10));
        assert_eq!(val(Formula::Iota0Symmetric { r: 5, t: 2, n: 2 }), big(10));
        assert!(Formula::Iota0Symmetric { r: 4, t: 3, n: 2 }.evaluate().is_err());
    }

    #[test]
    fn iota0_rminus2_any_sizes() {
        assert_eq!(
            val(Formula::Iota0RMinus2 {
                sizes: vec![2, 2, 2, 2]
            }),
            big(5)
        );
        assert_eq!(
            val(Formula::Iota0RMinus2 {
                sizes: vec![3, 3, 2, 2]
            }),
            big(7)
        );
    }

    #[test]
    fn matching_upper_bound_drops_smallest() {
        assert_eq!(
            val(Formula::MatchingUpperBound {
                s: 2,
                sizes: vec![2, 4, 3]
            }),
            big(24)
        );
    }

    #[test]
    fn uniform_max_values() {
        assert_eq!(val(Formula::UniformMax { r: 3, t: 1 }), big(3));
        assert_eq!(val(Formula::UniformMax { r: 5, t: 1 }), big(4));
        assert_eq!(val(Formula::UniformMax { r: 4, t: 2 }), big(4));
        assert_eq!(val(Formula::UniformMax { r: 6, t: 2 }), big(4));
    }

    #[test]
    fn big_parameters_do_not_overflow() {
        // 100^11 exceeds u64; the exact value must still come out right
        let v = val(Formula::M0S1 { r: 12, n: 100 });
        let expect = pow(100, 11) - pow(99, 11) + big(99);
        assert_eq!(v, expect);
        assert!(v > BigInt::from(u64::MAX));
    }
}
