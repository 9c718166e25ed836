//! Closed-form predictions for game values, as exact numbers where a formula
//! pins the value and as intervals where only bounds are known.
//!
//! Families whose formulas involve the unrestricted game value `D` (which has
//! no closed form) take it as a caller-supplied parameter, normally produced
//! by the solver at a saturated change budget.

use super::{turan_number, ProblemKind};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A predicted game value: exact when `lo == hi`, otherwise a closed
/// interval. `source` is the formula the numbers came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub lo: u32,
    pub hi: u32,
    pub source: String,
}

impl Prediction {
    fn exact_value(v: u32, source: &str) -> Prediction {
        Prediction {
            lo: v,
            hi: v,
            source: source.to_string(),
        }
    }

    fn interval(lo: u32, hi: u32, source: &str) -> Prediction {
        debug_assert!(lo <= hi, "inverted prediction interval");
        Prediction {
            lo,
            hi,
            source: source.to_string(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact(&self) -> Option<u32> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(&self, v: u32) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl std::fmt::Display for Prediction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PredictError {
    #[error(
        "prediction for {kind} at k={k} needs the unrestricted game value; \
         solve at a saturated change budget and pass it in"
    )]
    NeedsUnrestrictedValue { kind: String, k: u32 },
}

pub fn ceil_log2(n: usize) -> u32 {
    debug_assert!(n >= 1);
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// The zero-change value of the at-most-d group-testing problem, min(d, n).
pub fn gt_at_most_zero_change(n: usize, d: usize) -> u32 {
    d.min(n) as u32
}

fn ceil_3n2_minus_2(n: usize) -> u32 {
    ((3 * n).div_ceil(2) - 2) as u32
}

/// Predicted `D_k` for the family. `unrestricted` is the game value at a
/// saturated change budget, required by the group-testing formulas and the
/// sorting interval at `k >= 2`.
pub fn predicted_value(
    kind: ProblemKind,
    k: u32,
    unrestricted: Option<u32>,
) -> Result<Prediction, PredictError> {
    let n = kind.n();
    let need_d = || PredictError::NeedsUnrestrictedValue {
        kind: kind.label(),
        k,
    };
    Ok(match kind {
        ProblemKind::Search { .. } => Prediction::exact_value(
            (k + 1).min(ceil_log2(n)),
            "min{k+1, ceil(log2 n)}",
        ),
        ProblemKind::GtExact { d, .. } => {
            if d == 0 || d == n {
                // A single possible input certifies immediately.
                Prediction::exact_value(0, "single input")
            } else {
                let dv = unrestricted.ok_or_else(need_d)?;
                Prediction::exact_value((k + 1).min(dv), "min{k+1, D}")
            }
        }
        ProblemKind::GtAtMost { d, .. } => {
            if d == 0 {
                Prediction::exact_value(0, "single input")
            } else if (n as u64) > (d as u64 - 1) << k.min(63) {
                Prediction::exact_value(k + d as u32, "k+d, for n > (d-1)*2^k")
            } else {
                let dv = unrestricted.ok_or_else(need_d)?;
                Prediction::interval(
                    (k + 1).min(dv),
                    (k + d as u32).min(dv),
                    "[min{k+1, D}, min{k+d, D}]",
                )
            }
        }
        ProblemKind::Sorting { .. } => match k {
            0 => Prediction::exact_value((n - 1) as u32, "n-1"),
            1 => Prediction::exact_value(ceil_3n2_minus_2(n), "ceil(3n/2)-2"),
            _ => {
                let dv = unrestricted.ok_or_else(need_d)?;
                let lo = ceil_3n2_minus_2(n).max((k + 1).min(dv));
                Prediction::interval(lo, dv, "[max{ceil(3n/2)-2, min{k+1, D}}, D]")
            }
        },
        ProblemKind::MinMax { .. } => Prediction::exact_value(
            ((n as u32) + k - 1).min(ceil_3n2_minus_2(n)),
            "min{n+k-1, ceil(3n/2)-2}",
        ),
        ProblemKind::MaxOnly { .. } => Prediction::exact_value((n - 1) as u32, "n-1"),
        ProblemKind::Connectivity { .. } => {
            let all_pairs = (n * (n - 1) / 2) as u32;
            if k == 0 {
                Prediction::exact_value((n * n / 4) as u32, "floor(n^2/4)")
            } else if k as usize >= n.saturating_sub(2) {
                Prediction::exact_value(all_pairs, "C(n,2), for k >= n-2")
            } else {
                let t = turan_number(n, k as usize + 2) as u32;
                Prediction::interval(
                    t,
                    (t + n as u32 - 1).min(all_pairs),
                    "[t(n,k+2), min{t(n,k+2)+n-1, C(n,2)}]",
                )
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(9), 4);
    }

    #[test]
    fn search_closed_form() {
        let p = predicted_value(ProblemKind::Search { n: 8 }, 2, None).unwrap();
        assert_eq!(p.exact(), Some(3));
        let p = predicted_value(ProblemKind::Search { n: 4 }, 9, None).unwrap();
        assert_eq!(p.exact(), Some(2));
    }

    #[test]
    fn gt_formulas() {
        // 3 > (2-1)*2^1, so the value is pinned without knowing D.
        let p = predicted_value(ProblemKind::GtAtMost { n: 3, d: 2 }, 1, None).unwrap();
        assert_eq!(p.exact(), Some(3));
        assert_eq!(gt_at_most_zero_change(5, 3), 3);
        assert_eq!(gt_at_most_zero_change(2, 3), 2);

        // Below the threshold the interval needs D.
        let err = predicted_value(ProblemKind::GtAtMost { n: 4, d: 3 }, 3, None).unwrap_err();
        assert!(matches!(err, PredictError::NeedsUnrestrictedValue { .. }));
        let p = predicted_value(ProblemKind::GtAtMost { n: 4, d: 3 }, 3, Some(4)).unwrap();
        assert_eq!((p.lo, p.hi), (4, 4));

        let p = predicted_value(ProblemKind::GtExact { n: 5, d: 2 }, 1, Some(4)).unwrap();
        assert_eq!(p.exact(), Some(2));
        let err = predicted_value(ProblemKind::GtExact { n: 5, d: 2 }, 1, None).unwrap_err();
        assert!(matches!(err, PredictError::NeedsUnrestrictedValue { .. }));
    }

    #[test]
    fn sorting_and_selection() {
        assert_eq!(
            predicted_value(ProblemKind::Sorting { n: 5 }, 0, None).unwrap().exact(),
            Some(4)
        );
        assert_eq!(
            predicted_value(ProblemKind::Sorting { n: 5 }, 1, None).unwrap().exact(),
            Some(6)
        );
        let p = predicted_value(ProblemKind::Sorting { n: 4 }, 2, Some(5)).unwrap();
        assert_eq!((p.lo, p.hi), (4, 5));

        assert_eq!(
            predicted_value(ProblemKind::MinMax { n: 5 }, 1, None).unwrap().exact(),
            Some(5)
        );
        assert_eq!(
            predicted_value(ProblemKind::MaxOnly { n: 7 }, 3, None).unwrap().exact(),
            Some(6)
        );
    }

    #[test]
    fn connectivity_formulas() {
        assert_eq!(
            predicted_value(ProblemKind::Connectivity { n: 4 }, 0, None).unwrap().exact(),
            Some(4)
        );
        assert_eq!(
            predicted_value(ProblemKind::Connectivity { n: 4 }, 2, None).unwrap().exact(),
            Some(6)
        );
        let p = predicted_value(ProblemKind::Connectivity { n: 5 }, 1, None).unwrap();
        assert_eq!((p.lo, p.hi), (8, 10));
        let p = predicted_value(ProblemKind::Connectivity { n: 4 }, 1, None).unwrap();
        assert_eq!((p.lo, p.hi), (5, 6));
    }

    #[test]
    fn intervals_are_ordered() {
        for n in 2..=8 {
            for k in 0..=6u32 {
                for kind in [
                    ProblemKind::Search { n },
                    ProblemKind::Sorting { n },
                    ProblemKind::MinMax { n },
                    ProblemKind::MaxOnly { n },
                    ProblemKind::Connectivity { n },
                ] {
                    if let Ok(p) = predicted_value(kind, k, Some(100)) {
                        assert!(p.lo <= p.hi, "{kind} k={k}");
                    }
                }
            }
        }
    }
}
