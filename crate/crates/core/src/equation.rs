//! The equation family `c_1 x_1 + ... + c_{k-1} x_{k-1} = x_k + shift` with
//! positive left-hand coefficients, its solutions, and regularity.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error("coefficient list is empty")]
    NoCoefficients,
    #[error("coefficient {0} is not positive")]
    NonPositiveCoefficient(i64),
    #[error("tuple has {got} entries, equation has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("cannot parse equation: {0}")]
    Parse(String),
}

/// Mathematical ceiling of `a / d` for `d >= 1`, rounding toward +infinity.
pub fn ceil_div(a: i64, d: i64) -> i64 {
    assert!(d >= 1, "ceil_div needs a positive divisor, got {d}");
    a.div_euclid(d) + i64::from(a.rem_euclid(d) != 0)
}

/// `c_1 x_1 + ... + c_{k-1} x_{k-1} = x_k + shift`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawEquation", into = "RawEquation")]
pub struct Equation {
    coeffs: Vec<i64>,
    shift: i64,
}

#[derive(Serialize, Deserialize)]
struct RawEquation {
    coeffs: Vec<i64>,
    shift: i64,
}

impl TryFrom<RawEquation> for Equation {
    type Error = EquationError;
    fn try_from(raw: RawEquation) -> Result<Self, Self::Error> {
        Equation::new(raw.coeffs, raw.shift)
    }
}

impl From<Equation> for RawEquation {
    fn from(eq: Equation) -> Self {
        RawEquation {
            coeffs: eq.coeffs,
            shift: eq.shift,
        }
    }
}

/// Checks a left-hand coefficient list: non-empty, every entry at least 1.
pub fn validate_coeffs(coeffs: &[i64]) -> Result<(), EquationError> {
    if coeffs.is_empty() {
        return Err(EquationError::NoCoefficients);
    }
    match coeffs.iter().find(|&&c| c < 1) {
        Some(&c) => Err(EquationError::NonPositiveCoefficient(c)),
        None => Ok(()),
    }
}

/// `s = sum(coeffs) - 1` for a coefficient list.
pub fn coeff_sum_s(coeffs: &[i64]) -> i64 {
    coeffs.iter().sum::<i64>() - 1
}

impl Equation {
    pub fn new(coeffs: Vec<i64>, shift: i64) -> Result<Self, EquationError> {
        validate_coeffs(&coeffs)?;
        Ok(Equation { coeffs, shift })
    }

    /// The homogeneous equation `E(0)` with the same coefficients.
    pub fn homogeneous(coeffs: Vec<i64>) -> Result<Self, EquationError> {
        Equation::new(coeffs, 0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Number of variables `k`.
    pub fn arity(&self) -> usize {
        self.coeffs.len() + 1
    }

    /// `s = (sum of coefficients) - 1`.
    pub fn sum_s(&self) -> i64 {
        coeff_sum_s(&self.coeffs)
    }

    pub fn with_shift(&self, shift: i64) -> Equation {
        Equation {
            coeffs: self.coeffs.clone(),
            shift,
        }
    }

    pub fn is_solution(&self, tuple: &SolutionTuple) -> Result<bool, EquationError> {
        let values = tuple.values();
        if values.len() != self.arity() {
            return Err(EquationError::ArityMismatch {
                expected: self.arity(),
                got: values.len(),
            });
        }
        let (last, rest) = values.split_last().expect("arity is at least 2");
        let lhs: i64 = self.coeffs.iter().zip(rest).map(|(c, x)| c * x).sum();
        Ok(lhs == last + self.shift)
    }

    /// All ordered solutions with entries in `[1, p]` and maximum entry exactly
    /// `p`, in lexicographic order.
    pub fn solutions_with_max(&self, p: i64) -> Vec<SolutionTuple> {
        let mut out = Vec::new();
        self.for_each_solution_with_max(p, |xs| out.push(SolutionTuple(xs.to_vec())));
        out
    }

    /// Streaming form of [`Equation::solutions_with_max`]; the slice holds
    /// `x_1..x_k`.
    pub fn for_each_solution_with_max(&self, p: i64, mut f: impl FnMut(&[i64])) {
        if p < 1 {
            return;
        }
        let mut xs = vec![0i64; self.arity()];
        self.walk(0, 0, false, p, &mut xs, &mut f);
    }

    fn walk(&self, i: usize, partial: i64, hit_max: bool, p: i64, xs: &mut [i64], f: &mut impl FnMut(&[i64])) {
        let k1 = self.coeffs.len();
        // x_k = partial - shift must stay <= p, and coefficients are positive.
        let limit = p + self.shift;
        if i == k1 {
            let last = partial - self.shift;
            if (1..=p).contains(&last) && (hit_max || last == p) {
                xs[k1] = last;
                f(xs);
            }
            return;
        }
        let c = self.coeffs[i];
        // remaining coefficients contribute at least their sum
        let rest_min: i64 = self.coeffs[i + 1..].iter().sum();
        for x in 1..=p {
            let next = partial + c * x;
            if next + rest_min > limit {
                break;
            }
            xs[i] = x;
            self.walk(i + 1, next, hit_max || x == p, p, xs, f);
        }
    }

    pub fn regularity_status(&self) -> RegularityStatus {
        if self.shift == 0 {
            return if has_zero_subset_sum(&self.coeffs) {
                RegularityStatus::HomogeneousRegular
            } else {
                RegularityStatus::HomogeneousNotRegular
            };
        }
        let s = self.sum_s();
        if s == 0 {
            return RegularityStatus::DegenerateS;
        }
        if self.shift % s != 0 {
            return RegularityStatus::NotRegular;
        }
        if self.shift / s > 0 {
            RegularityStatus::RegularPositiveRatio
        } else if has_zero_subset_sum(&self.coeffs) {
            RegularityStatus::RegularNegativeRatioHomRegular
        } else {
            RegularityStatus::NotRegular
        }
    }
}

/// Whether some nonempty sub-multiset of `{c_1, ..., c_{k-1}, -1}` sums to 0.
fn has_zero_subset_sum(coeffs: &[i64]) -> bool {
    let signed = coeffs.iter().copied().chain(std::iter::once(-1));
    let mut reachable: BTreeSet<i64> = BTreeSet::new();
    for c in signed {
        let mut next = reachable.clone();
        next.insert(c);
        for &r in &reachable {
            next.insert(r + c);
        }
        if next.contains(&0) {
            return true;
        }
        reachable = next;
    }
    false
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        write!(f, "coeffs={} shift={}", coeffs.join(","), self.shift)
    }
}

/// Parses `coeffs=1,1 shift=-1`; a missing `shift` means 0.
impl FromStr for Equation {
    type Err = EquationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut coeffs = None;
        let mut shift = 0;
        for field in s.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| EquationError::Parse(format!("expected key=value, got `{field}`")))?;
            match key {
                "coeffs" => coeffs = Some(parse_coeff_list(value)?),
                "shift" => {
                    shift = value
                        .parse()
                        .map_err(|_| EquationError::Parse(format!("bad shift `{value}`")))?
                }
                other => return Err(EquationError::Parse(format!("unknown field `{other}`"))),
            }
        }
        let coeffs = coeffs.ok_or_else(|| EquationError::Parse("missing coeffs".into()))?;
        Equation::new(coeffs, shift)
    }
}

/// Parses a comma-separated coefficient list such as `1,1,2`.
pub fn parse_coeff_list(text: &str) -> Result<Vec<i64>, EquationError> {
    let coeffs = text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| EquationError::Parse(format!("bad coefficient `{c}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    validate_coeffs(&coeffs)?;
    Ok(coeffs)
}

/// An ordered tuple `(x_1, ..., x_k)` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SolutionTuple(pub Vec<i64>);

impl SolutionTuple {
    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for SolutionTuple {
    fn from(v: Vec<i64>) -> Self {
        SolutionTuple(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularityStatus {
    /// `shift / s` is a positive integer.
    RegularPositiveRatio,
    /// `shift / s` is a negative integer and `E(0)` is regular.
    RegularNegativeRatioHomRegular,
    NotRegular,
    /// `s = 0` with a nonzero shift: `x = y + shift` has no solutions at all.
    DegenerateS,
    HomogeneousRegular,
    HomogeneousNotRegular,
}

impl RegularityStatus {
    pub fn is_regular(self) -> bool {
        matches!(
            self,
            RegularityStatus::RegularPositiveRatio
                | RegularityStatus::RegularNegativeRatioHomRegular
                | RegularityStatus::HomogeneousRegular
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(coeffs: &[i64], shift: i64) -> Equation {
        Equation::new(coeffs.to_vec(), shift).unwrap()
    }

    fn tuples(list: &[&[i64]]) -> Vec<SolutionTuple> {
        list.iter().map(|t| SolutionTuple(t.to_vec())).collect()
    }

    #[test]
    fn ceiling_rounds_up_for_any_sign() {
        assert_eq!(ceil_div(7, 2), 4);
        assert_eq!(ceil_div(6, 2), 3);
        assert_eq!(ceil_div(-7, 2), -3);
        assert_eq!(ceil_div(-6, 2), -3);
        assert_eq!(ceil_div(0, 5), 0);
        assert_eq!(ceil_div(-1, 3), 0);
    }

    #[test]
    fn rejects_bad_coefficients() {
        assert_eq!(Equation::new(vec![], 0), Err(EquationError::NoCoefficients));
        assert_eq!(
            Equation::new(vec![1, 0], 0),
            Err(EquationError::NonPositiveCoefficient(0))
        );
        assert_eq!(
            Equation::new(vec![-2, 1], 0),
            Err(EquationError::NonPositiveCoefficient(-2))
        );
    }

    #[test]
    fn s_is_coefficient_sum_minus_one() {
        assert_eq!(eq(&[1, 1], 0).sum_s(), 1);
        assert_eq!(eq(&[3, 1], 2).sum_s(), 3);
        assert_eq!(eq(&[1, 1, 1, 1, 1], 0).sum_s(), 4);
        assert_eq!(eq(&[1], 0).sum_s(), 0);
    }

    #[test]
    fn solution_check() {
        let t = SolutionTuple(vec![1, 1, 2]);
        assert!(eq(&[1, 1], 0).is_solution(&t).unwrap());
        assert!(eq(&[3, 1], 2).is_solution(&t).unwrap());
        assert!(!eq(&[1, 1], -1).is_solution(&t).unwrap());
        assert_eq!(
            eq(&[1, 1], 0).is_solution(&SolutionTuple(vec![1, 2])),
            Err(EquationError::ArityMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn solutions_with_given_max() {
        assert_eq!(eq(&[1, 1], 0).solutions_with_max(2), tuples(&[&[1, 1, 2]]));
        assert!(eq(&[1, 1], 0).solutions_with_max(1).is_empty());
        assert_eq!(
            eq(&[1, 1], 2).solutions_with_max(2),
            tuples(&[&[1, 2, 1], &[2, 1, 1], &[2, 2, 2]])
        );
        assert!(eq(&[1, 1], 0).solutions_with_max(0).is_empty());
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(eq(&[1, 1], 0).regularity_status(), RegularityStatus::HomogeneousRegular);
        assert_eq!(eq(&[3, 1], 2).regularity_status(), RegularityStatus::NotRegular);
        assert_eq!(
            eq(&[1, 1], -3).regularity_status(),
            RegularityStatus::RegularNegativeRatioHomRegular
        );
        assert_eq!(
            eq(&[1, 1], 4).regularity_status(),
            RegularityStatus::RegularPositiveRatio
        );
        assert_eq!(
            eq(&[2, 2], 0).regularity_status(),
            RegularityStatus::HomogeneousNotRegular
        );
        // E(0) for 2x+2y=z is not regular, so the negative-ratio case fails.
        assert_eq!(eq(&[2, 2], -3).regularity_status(), RegularityStatus::NotRegular);
        assert_eq!(eq(&[1], 5).regularity_status(), RegularityStatus::DegenerateS);
        assert_eq!(eq(&[1], 0).regularity_status(), RegularityStatus::HomogeneousRegular);
    }

    #[test]
    fn text_format_round_trip() {
        let e: Equation = "coeffs=1,1 shift=-1".parse().unwrap();
        assert_eq!(e, eq(&[1, 1], -1));
        assert_eq!(e.to_string(), "coeffs=1,1 shift=-1");
        assert_eq!("coeffs=3,1".parse::<Equation>().unwrap(), eq(&[3, 1], 0));
        assert!("shift=2".parse::<Equation>().is_err());
        assert!("coeffs=1,x".parse::<Equation>().is_err());
        assert!("coeffs=1,0 shift=1".parse::<Equation>().is_err());
    }
}
