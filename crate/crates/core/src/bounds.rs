//! Closed-form upper and lower bounds on `r(E(b); t)` in terms of the
//! homogeneous Rado number `R` or the length `n` of an excellent coloring,
//! together with the colorings and maps that realize them.
//!
//! Every formula requires `s >= 1` and `s | b`; violations are rejected rather
//! than approximated.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{is_excellent_coloring, is_good_coloring, Coloring};
use crate::equation::{ceil_div, coeff_sum_s, validate_coeffs, Equation, EquationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Equation(#[from] EquationError),
    #[error("s = 0: divisibility-based bounds need sum(coeffs) >= 2")]
    ZeroS,
    #[error("s = {s} does not divide b = {b}")]
    NotDivisible { s: i64, b: i64 },
    #[error("{name} must be at least {min}, got {value}")]
    OutOfRange { name: &'static str, value: i64, min: i64 },
    #[error("no bound theorem applies to the homogeneous equation (shift 0)")]
    Homogeneous,
    #[error("input coloring is not excellent for the given coefficients")]
    NotExcellent,
    #[error("constructed coloring is not good for {0}")]
    ConstructionInvalid(String),
    #[error("lifted solution pulls back to offset j = {j}, outside 0..={max}")]
    OffsetOutOfRange { j: i64, max: i64 },
}

/// Validates coefficients and `s | b`, returning `(s, b / s)`.
fn ratio(coeffs: &[i64], b: i64) -> Result<(i64, i64), BoundsError> {
    validate_coeffs(coeffs)?;
    let s = coeff_sum_s(coeffs);
    if s == 0 {
        return Err(BoundsError::ZeroS);
    }
    if b % s != 0 {
        return Err(BoundsError::NotDivisible { s, b });
    }
    Ok((s, b / s))
}

fn at_least(name: &'static str, value: i64, min: i64) -> Result<(), BoundsError> {
    if value < min {
        return Err(BoundsError::OutOfRange { name, value, min });
    }
    Ok(())
}

/// Upper bound for `E(-b)`: `(b/s + 1) R - b/s`.
pub fn upper_bound_neg(coeffs: &[i64], b: i64, r: i64) -> Result<i64, BoundsError> {
    at_least("b", b, 1)?;
    at_least("R", r, 1)?;
    let (_, beta) = ratio(coeffs, b)?;
    Ok((beta + 1) * r - beta)
}

/// Lower bound for `E(-b)` from an excellent coloring of length `n`: `(b/s + 1) n + 1`.
pub fn lower_bound_neg(coeffs: &[i64], b: i64, n: i64) -> Result<i64, BoundsError> {
    at_least("b", b, 1)?;
    at_least("n", n, 1)?;
    let (_, beta) = ratio(coeffs, b)?;
    Ok((beta + 1) * n + 1)
}

/// Upper bound for `E(b)`, `b > 0`: `b/s - ceil(b / (s R)) + 1`.
pub fn upper_bound_pos(coeffs: &[i64], b: i64, r: i64) -> Result<i64, BoundsError> {
    at_least("b", b, 1)?;
    at_least("R", r, 1)?;
    let (s, beta) = ratio(coeffs, b)?;
    let d = PositiveSplit::new(beta, r);
    debug_assert_eq!(d.m, ceil_div(b, s * r));
    // b = s (R m - q) and the bound equals (R - 1) m - q + 1.
    let value = beta - d.m + 1;
    debug_assert_eq!(value, (r - 1) * d.m - d.q + 1);
    Ok(value)
}

/// Lower bound for `E(b)`, `b > 0`, from an excellent coloring of length `n`:
/// `b/s - ceil(b / (s (n + 1))) + 1`.
pub fn lower_bound_pos(coeffs: &[i64], b: i64, n: i64) -> Result<i64, BoundsError> {
    at_least("b", b, 1)?;
    at_least("n", n, 1)?;
    let (_, beta) = ratio(coeffs, b)?;
    let d = PositiveSplit::new(beta, n + 1);
    Ok(n * d.m - d.q + 1)
}

/// `(ceil((b + 1) / (s + 1)), b / s)`: bounds for `E(b)`, `b > 0`, valid for
/// every number of colors even when `E(0)` is not regular.
pub fn trivial_bounds(coeffs: &[i64], b: i64) -> Result<(i64, i64), BoundsError> {
    at_least("b", b, 1)?;
    let (s, beta) = ratio(coeffs, b)?;
    Ok((ceil_div(b + 1, s + 1), beta))
}

/// Writes `beta = period * m - q` with `m = ceil(beta / period)`, `0 <= q < period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PositiveSplit {
    pub m: i64,
    pub q: i64,
}

impl PositiveSplit {
    pub fn new(beta: i64, period: i64) -> Self {
        let m = ceil_div(beta, period);
        let q = period * m - beta;
        debug_assert!((0..period).contains(&q));
        PositiveSplit { m, q }
    }
}

/// The map `w -> (b/s + 1) w - b/s` carrying solutions of `E(0)` to solutions of `E(-b)`.
pub fn injection_neg(w: i64, b: i64, s: i64) -> i64 {
    assert!(s >= 1 && b % s == 0, "injection_neg needs s | b");
    let beta = b / s;
    (beta + 1) * w - beta
}

/// The map `w -> (R - w) m - q + w` carrying solutions of `E(0)` in `[1, R]`
/// to solutions of `E(s (R m - q))`.
pub fn injection_pos(w: i64, r: i64, m: i64, q: i64) -> i64 {
    (r - w) * m - q + w
}

/// Largest offset `j` a solution of the lifted `E(-b)` can pull back to:
/// `ceil(s b / (b + s))`, never more than `s`.
pub fn lift_offset_bound(s: i64, b: i64) -> i64 {
    let bound = ceil_div(s * b, b + s);
    assert!((0..=s).contains(&bound));
    bound
}

/// Repeats every position of an excellent coloring `b/s + 1` times, giving a
/// good coloring for `E(-b)` on `[1, (b/s + 1) n]`.
pub fn lift_coloring_neg(chi: &Coloring, coeffs: &[i64], b: i64) -> Result<Coloring, BoundsError> {
    at_least("b", b, 1)?;
    let (s, beta) = ratio(coeffs, b)?;
    if !is_excellent_coloring(coeffs, chi) {
        return Err(BoundsError::NotExcellent);
    }
    let lifted = repeat_each(chi, beta + 1);
    let target = Equation::new(coeffs.to_vec(), -b)?;
    check_pullback(&target, chi.len() as i64, s, beta)?;
    if !is_good_coloring(&target, &lifted) {
        return Err(BoundsError::ConstructionInvalid(target.to_string()));
    }
    Ok(lifted)
}

/// `alpha(i) = chi(ceil(i / factor))`.
fn repeat_each(chi: &Coloring, factor: i64) -> Coloring {
    let colors = chi
        .colors()
        .iter()
        .flat_map(|&c| std::iter::repeat(c).take(factor as usize))
        .collect();
    Coloring::new(chi.num_colors(), colors).expect("colors come from a valid coloring")
}

/// Every solution of `E(-b)` on the lifted interval maps, position by
/// position through `ceil(x / (beta + 1))`, onto a solution of
/// `c.d + j = d_k` with `0 <= j <= ceil(s b / (b + s))`.
fn check_pullback(target: &Equation, n: i64, s: i64, beta: i64) -> Result<(), BoundsError> {
    let factor = beta + 1;
    let b = s * beta;
    let max = lift_offset_bound(s, b);
    let coeffs = target.coeffs();
    let mut bad = None;
    for p in 1..=factor * n {
        target.for_each_solution_with_max(p, |xs| {
            if bad.is_some() {
                return;
            }
            let (last, rest) = xs.split_last().unwrap();
            let lhs: i64 = coeffs.iter().zip(rest).map(|(c, &x)| c * ceil_div(x, factor)).sum();
            let j = ceil_div(*last, factor) - lhs;
            if !(0..=max).contains(&j) {
                bad = Some(j);
            }
        });
    }
    match bad {
        Some(j) => Err(BoundsError::OffsetOutOfRange { j, max }),
        None => Ok(()),
    }
}

/// Builds a good coloring for `E(b)`, `b > 0`, on `[1, n m - q]` from an
/// excellent coloring on `[1, n]`: lift for `E(-s (m - 1))` onto `[1, m n]`,
/// keep the first `m n - q` positions and reverse them.
pub fn lift_coloring_pos(chi: &Coloring, coeffs: &[i64], b: i64) -> Result<Coloring, BoundsError> {
    at_least("b", b, 1)?;
    let (s, beta) = ratio(coeffs, b)?;
    if !is_excellent_coloring(coeffs, chi) {
        return Err(BoundsError::NotExcellent);
    }
    let n = chi.len() as i64;
    let PositiveSplit { m, q } = PositiveSplit::new(beta, n + 1);
    let alpha = if m == 1 {
        chi.clone()
    } else {
        lift_coloring_neg(chi, coeffs, s * (m - 1))?
    };
    debug_assert_eq!(alpha.len() as i64, m * n);
    let result = alpha.truncated((n * m - q) as usize).reversed();
    let target = Equation::new(coeffs.to_vec(), b)?;
    if !is_good_coloring(&target, &result) {
        return Err(BoundsError::ConstructionInvalid(target.to_string()));
    }
    Ok(result)
}

/// Which result a bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Upper bound for negative shift from `R`.
    NegativeUpper,
    /// Lower bound for negative shift from an excellent coloring.
    NegativeLower,
    /// Upper bound for positive shift from `R`.
    PositiveUpper,
    /// Lower bound for positive shift from an excellent coloring.
    PositiveLower,
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: i64,
    pub source: BoundSource,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInputs {
    /// `R = r(E(0); t)`, certified by the caller.
    pub homogeneous_rado: Option<i64>,
    /// Length of an excellent `t`-coloring, certified by the caller.
    pub excellent_length: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub equation: Equation,
    pub num_colors: usize,
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub inputs_used: BoundInputs,
}

impl BoundsReport {
    /// The exact value, when the lower and upper bounds meet.
    pub fn exact(&self) -> Option<i64> {
        match (self.lower, self.upper) {
            (Some(lo), Some(hi)) if lo.value == hi.value => Some(lo.value),
            _ => None,
        }
    }
}

/// Collects the best applicable lower and upper bounds for `eq` with `t`
/// colors. The trivial bounds for positive shifts always apply; the others
/// only when the corresponding input is supplied. Ties prefer the
/// non-trivial source.
pub fn bounds_report(eq: &Equation, t: usize, inputs: &BoundInputs) -> Result<BoundsReport, BoundsError> {
    let coeffs = eq.coeffs();
    let shift = eq.shift();
    if shift == 0 {
        return Err(BoundsError::Homogeneous);
    }
    ratio(coeffs, shift)?;
    let mut lower: Option<Bound> = None;
    let mut upper: Option<Bound> = None;
    let mut used = BoundInputs::default();
    let mut offer_lower = |b: Bound| {
        if lower.map_or(true, |cur| b.value > cur.value) {
            lower = Some(b);
        }
    };
    let mut offer_upper = |b: Bound| {
        if upper.map_or(true, |cur| b.value < cur.value) {
            upper = Some(b);
        }
    };

    if let Some(n) = inputs.excellent_length.filter(|&n| n >= 1) {
        used.excellent_length = Some(n);
        let value = if shift < 0 {
            lower_bound_neg(coeffs, -shift, n)?
        } else {
            lower_bound_pos(coeffs, shift, n)?
        };
        let source = if shift < 0 {
            BoundSource::NegativeLower
        } else {
            BoundSource::PositiveLower
        };
        offer_lower(Bound { value, source });
    }
    if let Some(r) = inputs.homogeneous_rado {
        used.homogeneous_rado = Some(r);
        let value = if shift < 0 {
            upper_bound_neg(coeffs, -shift, r)?
        } else {
            upper_bound_pos(coeffs, shift, r)?
        };
        let source = if shift < 0 {
            BoundSource::NegativeUpper
        } else {
            BoundSource::PositiveUpper
        };
        offer_upper(Bound { value, source });
    }
    if shift > 0 {
        let (lo, hi) = trivial_bounds(coeffs, shift)?;
        offer_lower(Bound {
            value: lo,
            source: BoundSource::Trivial,
        });
        offer_upper(Bound {
            value: hi,
            source: BoundSource::Trivial,
        });
    }
    Ok(BoundsReport {
        equation: eq.clone(),
        num_colors: t,
        lower,
        upper,
        inputs_used: used,
    })
}
