//! Closed-form bounds and exact values of `ar(n, kC3)`.
//!
//! All arithmetic is done in exact integers. The mid-range upper bound is
//! half-integral when `n - 3k` is odd; it is evaluated in doubled units and
//! floored, which is valid because the anti-Ramsey number is an integer.

use serde::Serialize;

use crate::error::{Error, Result};

/// Which range of `n` relative to `k` an instance falls into.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// `n < 3k`: no room for `k` disjoint triangles.
    Trivial,
    /// `n = 3k`.
    Base,
    /// `3k < n < 2k^2 - k + 2`.
    Mid,
    /// `n >= 2k^2 - k + 2`.
    Stable,
}

/// Origin of a reported number.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// `C(n, 2)`: a rainbow `K_n` has no `kC3` when `n < 3k`.
    TooFewVertices,
    /// `ar(n, C3) = n - 1`.
    SingleTriangle,
    /// Best of the two extremal colorings.
    ExtremalColorings,
    /// Exact value at `n = 3k`.
    BaseCase,
    /// Upper bound for `3k <= n <= 2k^2 - k + 2`, floored.
    MidRangeUpper,
    /// Exact value for `n >= 2k^2 - k + 2`.
    StableRange,
    /// Lower and upper bounds coincide.
    Sandwich,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ProvenanceTags {
    pub lower: Provenance,
    pub upper: Provenance,
    pub exact: Option<Provenance>,
}

/// Everything known in closed form about one `(n, k)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BoundsReport {
    pub n: u64,
    pub k: u64,
    pub region: Region,
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    /// Value predicted by the equality conjecture (the lower bound); never
    /// promoted to `exact` unless proven.
    pub conjectured: Option<u64>,
    pub provenance: ProvenanceTags,
}

#[inline]
pub fn binom2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// First index of the stable range, `2k^2 - k + 2`.
pub fn stable_start(k: u64) -> u64 {
    2 * k * k - k + 2
}

pub fn region(n: u64, k: u64) -> Region {
    if n < 3 * k {
        Region::Trivial
    } else if n == 3 * k {
        Region::Base
    } else if n < stable_start(k) {
        Region::Mid
    } else {
        Region::Stable
    }
}

fn check_domain(n: u64, k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::domain(format!("k = {k}: the bound formulas need k >= 2")));
    }
    if n < 3 * k {
        return Err(Error::domain(format!("n = {n} < 3k = {}: use exact_value", 3 * k)));
    }
    Ok(())
}

/// Colors of the rainbow-clique-plus-pendant-stars coloring, `C(3k-1, 2) + n - 3k + 1`.
pub fn clique_construction_count(n: u64, k: u64) -> u64 {
    binom2(3 * k - 1) + n + 1 - 3 * k
}

/// Colors of the join coloring, `floor((n-k+2)^2/4) + (k-2)(n-k+2) + C(k-2, 2) + 1`.
pub fn join_construction_count(n: u64, k: u64) -> u64 {
    let m = n + 2 - k;
    m * m / 4 + (k - 2) * m + binom2(k - 2) + 1
}

pub fn lower_bound(n: u64, k: u64) -> Result<u64> {
    check_domain(n, k)?;
    Ok(clique_construction_count(n, k).max(join_construction_count(n, k)))
}

/// Twice the mid-range expression, as a signed integer (exact).
pub(crate) fn mid_upper_doubled(n: u64, k: u64) -> i128 {
    let (n, k) = (n as i128, k as i128);
    let m = n - k + 2;
    let body = m * m / 4 + (k - 2) * m + (k - 2) * (k - 3) / 2 + (k - 1) * (k - 1) + 1;
    2 * body - (n - 3 * k)
}

pub fn upper_bound(n: u64, k: u64) -> Result<u64> {
    check_domain(n, k)?;
    Ok(match region(n, k) {
        Region::Stable => join_construction_count(n, k),
        _ => mid_upper_doubled(n, k).div_euclid(2) as u64,
    })
}

pub fn exact_value(n: u64, k: u64) -> Result<Option<u64>> {
    if n == 0 || k == 0 {
        return Err(Error::domain("n and k must be positive"));
    }
    if k == 1 {
        return Ok(Some(n - 1));
    }
    Ok(match region(n, k) {
        Region::Trivial => Some(binom2(n)),
        Region::Base => Some(binom2(3 * k - 1) + 1),
        Region::Stable => Some(join_construction_count(n, k)),
        Region::Mid => {
            let (lo, hi) = (lower_bound(n, k)?, upper_bound(n, k)?);
            (lo == hi).then_some(lo)
        }
    })
}

pub fn report(n: u64, k: u64) -> Result<BoundsReport> {
    use Provenance::*;
    if n == 0 || k == 0 {
        return Err(Error::domain("n and k must be positive"));
    }
    if k == 1 {
        let v = n - 1;
        let tag = if n < 3 { TooFewVertices } else { SingleTriangle };
        return Ok(BoundsReport {
            n,
            k,
            region: region(n, k),
            lower: v,
            upper: v,
            exact: Some(v),
            conjectured: Some(v),
            provenance: ProvenanceTags { lower: tag, upper: tag, exact: Some(tag) },
        });
    }
    let reg = region(n, k);
    if reg == Region::Trivial {
        let v = binom2(n);
        return Ok(BoundsReport {
            n,
            k,
            region: reg,
            lower: v,
            upper: v,
            exact: Some(v),
            conjectured: Some(v),
            provenance: ProvenanceTags {
                lower: TooFewVertices,
                upper: TooFewVertices,
                exact: Some(TooFewVertices),
            },
        });
    }
    let lower = lower_bound(n, k)?;
    let upper = upper_bound(n, k)?;
    let exact = exact_value(n, k)?;
    let (upper_tag, exact_tag) = match reg {
        Region::Base => (MidRangeUpper, Some(BaseCase)),
        Region::Stable => (StableRange, Some(StableRange)),
        _ => (MidRangeUpper, exact.map(|_| Sandwich)),
    };
    Ok(BoundsReport {
        n,
        k,
        region: reg,
        lower,
        upper,
        exact,
        conjectured: Some(lower),
        provenance: ProvenanceTags { lower: ExtremalColorings, upper: upper_tag, exact: exact_tag },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(6, 2).unwrap(), 11);
        assert_eq!(lower_bound(9, 3).unwrap(), 29);
        // floor(20^2 / 4) + 1 beats C(5,2) + 15.
        assert_eq!(lower_bound(20, 2).unwrap(), 101);
        assert!(lower_bound(5, 2).is_err());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound(9, 3).unwrap(), 29);
        // 12 + 0 + 0 + 1 - 1/2 + 1 = 13.5.
        assert_eq!(mid_upper_doubled(7, 2), 27);
        assert_eq!(upper_bound(7, 2).unwrap(), 13);
        assert_eq!(upper_bound(8, 2).unwrap(), 17);
    }

    #[test]
    fn exact_value_examples() {
        assert_eq!(exact_value(5, 2).unwrap(), Some(10));
        assert_eq!(exact_value(8, 2).unwrap(), Some(17));
        assert_eq!(exact_value(7, 2).unwrap(), Some(13));
        assert_eq!(exact_value(7, 1).unwrap(), Some(6));
        assert_eq!(exact_value(10, 3).unwrap(), None);
    }

    #[test]
    fn report_examples() {
        let r = report(10, 3).unwrap();
        // C(8,2)+2 = 30 and 20+9+0+1 = 30; upper 20+9+0+4-1/2+1 = 33.5.
        assert_eq!((r.region, r.lower, r.upper, r.exact), (Region::Mid, 30, 33, None));
        let r = report(6, 2).unwrap();
        assert_eq!((r.region, r.exact), (Region::Base, Some(11)));
        let r = report(4, 2).unwrap();
        assert_eq!((r.region, r.exact), (Region::Trivial, Some(6)));
        let r = report(2, 2).unwrap();
        assert_eq!((r.region, r.exact), (Region::Trivial, Some(1)));
    }

    #[test]
    fn lower_never_exceeds_upper() {
        for k in 2..=6 {
            for n in 3 * k..=60 {
                assert!(lower_bound(n, k).unwrap() <= upper_bound(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn base_case_identities() {
        for k in 2..=10u64 {
            let n = 3 * k;
            assert!(clique_construction_count(n, k) >= join_construction_count(n, k));
            assert_eq!(lower_bound(n, k).unwrap(), binom2(3 * k - 1) + 1);
            assert_eq!(upper_bound(n, k).unwrap(), binom2(3 * k - 1) + 1);
        }
    }

    #[test]
    fn range_formulas_meet_at_stable_start() {
        for k in 2..=10u64 {
            let n = stable_start(k);
            assert_eq!(mid_upper_doubled(n, k), 2 * join_construction_count(n, k) as i128);
            assert_eq!(upper_bound(n, k).unwrap(), join_construction_count(n, k));
        }
    }

    #[test]
    fn k2_is_always_exact() {
        for n in 1..=200 {
            assert!(exact_value(n, 2).unwrap().is_some(), "n={n}");
        }
    }

    #[test]
    fn report_serializes_with_stable_fields() {
        let v = serde_json::to_value(report(8, 2).unwrap()).unwrap();
        assert_eq!(v["region"], "stable");
        assert_eq!(v["exact"], 17);
        assert_eq!(v["provenance"]["exact"], "stable-range");
        for key in ["n", "k", "region", "lower", "upper", "exact", "conjectured", "provenance"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
