//! Known homogeneous Rado numbers `R_C(t)` and the closed-form values of the
//! corollaries built on them.

use serde::{Deserialize, Serialize};

use crate::bounds::BoundsError;
use crate::coloring::{is_good_coloring, Coloring};
use crate::equation::{ceil_div, coeff_sum_s, validate_coeffs, Equation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Source {
    /// Quoted from the literature.
    Cited { citation: String },
    /// Established by exhaustive search; `witness` is a good coloring of length `R - 1`.
    DerivedBySearch { witness: Coloring, engine_version: String },
    /// Solved for from a published closed form.
    DerivedByAlgebra { derivation: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownValue {
    pub coeffs: Vec<i64>,
    pub num_colors: usize,
    pub value: i64,
    pub source: Source,
}

#[derive(Debug, Clone, Default)]
pub struct Registry {
    entries: Vec<KnownValue>,
}

fn all_ones(coeffs: &[i64]) -> bool {
    coeffs.iter().all(|&c| c == 1)
}

impl Registry {
    /// Values traceable to the literature, and nothing else.
    pub fn builtin() -> Self {
        let cited = |coeffs: &[i64], t: usize, value: i64, citation: &str| KnownValue {
            coeffs: coeffs.to_vec(),
            num_colors: t,
            value,
            source: Source::Cited {
                citation: citation.to_string(),
            },
        };
        let algebra = |coeffs: &[i64], value: i64, line: usize, slope: i64| KnownValue {
            coeffs: coeffs.to_vec(),
            num_colors: 3,
            value,
            source: Source::DerivedByAlgebra {
                derivation: format!(
                    "3-color corollary line {line}: r = {slope}m + {value} = (m + 1) R - m, so R = {value}"
                ),
            },
        };
        Registry {
            entries: vec![
                cited(&[1, 1], 2, 5, "Schur number s(2) = 5"),
                cited(&[1, 1], 3, 14, "Schur number s(3) = 14"),
                cited(&[1, 1], 4, 45, "Schur number s(4) = 45"),
                cited(&[1, 1], 5, 161, "Schur number s(5) = 161"),
                algebra(&[1, 1, 1], 43, 2, 42),
                algebra(&[1, 1, 1, 1], 94, 3, 93),
                algebra(&[1, 1, 1, 1, 1], 173, 4, 172),
            ],
        }
    }

    /// Adds a search-derived value after checking its witness. Returns false
    /// (and stores nothing) if the witness is not a good coloring of length
    /// `value - 1` or the key is already present.
    pub fn insert_derived(&mut self, coeffs: &[i64], value: i64, witness: Coloring, engine_version: &str) -> bool {
        let Ok(eq) = Equation::homogeneous(coeffs.to_vec()) else {
            return false;
        };
        if witness.len() as i64 != value - 1 || !is_good_coloring(&eq, &witness) {
            return false;
        }
        if self.known_r(coeffs, witness.num_colors()).is_some() {
            return false;
        }
        self.entries.push(KnownValue {
            coeffs: coeffs.to_vec(),
            num_colors: witness.num_colors(),
            value,
            source: Source::DerivedBySearch {
                witness,
                engine_version: engine_version.to_string(),
            },
        });
        true
    }

    pub fn entries(&self) -> &[KnownValue] {
        &self.entries
    }

    /// Looks up `R_C(t)`. Two-color values for `x_1 + ... + x_{k-1} = x_k` come
    /// from the cited formula `k^2 - k - 1`.
    pub fn known_r(&self, coeffs: &[i64], t: usize) -> Option<KnownValue> {
        if let Some(hit) = self.entries.iter().find(|e| e.coeffs == coeffs && e.num_colors == t) {
            return Some(hit.clone());
        }
        if t == 2 && !coeffs.is_empty() && all_ones(coeffs) {
            let k = coeffs.len() as i64 + 1;
            return Some(KnownValue {
                coeffs: coeffs.to_vec(),
                num_colors: 2,
                value: k * k - k - 1,
                source: Source::Cited {
                    citation: format!("r(x_1 + ... + x_{{k-1}} = x_k; 2) = k^2 - k - 1 with k = {k}"),
                },
            });
        }
        None
    }
}

/// Closed forms for the families `x_1 + ... + x_{k-1} = x_k + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Corollary {
    /// `r(x_1 + ... + x_{k-1} = x_k - b; 2) = (m + 1)(k^2 - k - 2) + 1`, `m = b / (k - 2)`.
    NegativeTwoColor { k: i64, b: i64 },
    /// The four 3-color lines `r = slope * m + R` for `k - 2 = line`, shift `-line * m`.
    NegativeThreeColor { line: i64, m: i64 },
    /// `r(x_1 + ... + x_{k-1} = x_k + b; 2) = m - ceil(m / (k^2 - k - 1)) + 1`, `m = b / (k - 2)`.
    PositiveTwoColor { k: i64, b: i64 },
    /// `r(x + y = z + b; 3) = b - ceil(b / 14) + 1`.
    PositiveSchurThreeColor { b: i64 },
}

/// `(slope, R)` for the four 3-color lines.
const THREE_COLOR_LINES: [(i64, i64); 4] = [(13, 14), (42, 43), (93, 94), (172, 173)];

impl Corollary {
    /// The equation and color count the corollary is about.
    pub fn instance(self) -> Result<(Equation, usize), BoundsError> {
        self.value()?;
        let ones = |k: i64| vec![1i64; (k - 1) as usize];
        let (eq, t) = match self {
            Corollary::NegativeTwoColor { k, b } => (Equation::new(ones(k), -b)?, 2),
            Corollary::NegativeThreeColor { line, m } => (Equation::new(ones(line + 2), -line * m)?, 3),
            Corollary::PositiveTwoColor { k, b } => (Equation::new(ones(k), b)?, 2),
            Corollary::PositiveSchurThreeColor { b } => (Equation::new(vec![1, 1], b)?, 3),
        };
        Ok((eq, t))
    }

    pub fn value(self) -> Result<i64, BoundsError> {
        match self {
            Corollary::NegativeTwoColor { k, b } => {
                let m = all_ones_ratio(k, b)?;
                Ok((m + 1) * (k * k - k - 2) + 1)
            }
            Corollary::NegativeThreeColor { line, m } => {
                if !(1..=4).contains(&line) {
                    return Err(BoundsError::OutOfRange {
                        name: "line",
                        value: line,
                        min: 1,
                    });
                }
                if m < 1 {
                    return Err(BoundsError::OutOfRange {
                        name: "m",
                        value: m,
                        min: 1,
                    });
                }
                let (slope, r) = THREE_COLOR_LINES[(line - 1) as usize];
                Ok(slope * m + r)
            }
            Corollary::PositiveTwoColor { k, b } => {
                let m = all_ones_ratio(k, b)?;
                Ok(m - ceil_div(m, k * k - k - 1) + 1)
            }
            Corollary::PositiveSchurThreeColor { b } => {
                if b < 1 {
                    return Err(BoundsError::OutOfRange {
                        name: "b",
                        value: b,
                        min: 1,
                    });
                }
                Ok(b - ceil_div(b, 14) + 1)
            }
        }
    }
}

fn all_ones_ratio(k: i64, b: i64) -> Result<i64, BoundsError> {
    if k < 3 {
        return Err(BoundsError::OutOfRange {
            name: "k",
            value: k,
            min: 3,
        });
    }
    if b < 1 {
        return Err(BoundsError::OutOfRange {
            name: "b",
            value: b,
            min: 1,
        });
    }
    if b % (k - 2) != 0 {
        return Err(BoundsError::NotDivisible { s: k - 2, b });
    }
    Ok(b / (k - 2))
}

/// The formula claimed in an earlier survey for `r(x + y = z + b; 3)`:
/// `b - ceil((b - 1) / 14)`.
pub fn survey_claim_schur_positive(b: i64) -> i64 {
    b - ceil_div(b - 1, 14)
}

/// Conjectured exact value of `r(E(shift); t)` given `R = r(E(0); t)`:
/// `shift/s - ceil(shift / (s R)) + 1` for positive shifts and
/// `(-shift/s)(R - 1) + R` for negative ones.
pub fn conjecture_value(coeffs: &[i64], shift: i64, r: i64) -> Result<i64, BoundsError> {
    validate_coeffs(coeffs)?;
    if shift == 0 {
        return Err(BoundsError::Homogeneous);
    }
    if r < 1 {
        return Err(BoundsError::OutOfRange {
            name: "R",
            value: r,
            min: 1,
        });
    }
    let s = coeff_sum_s(coeffs);
    if s == 0 {
        return Err(BoundsError::ZeroS);
    }
    if shift % s != 0 {
        return Err(BoundsError::NotDivisible { s, b: shift });
    }
    let beta = shift / s;
    Ok(if shift > 0 {
        beta - ceil_div(shift, s * r) + 1
    } else {
        -beta * (r - 1) + r
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookups() {
        let reg = Registry::builtin();
        assert_eq!(reg.known_r(&[1, 1], 2).unwrap().value, 5);
        assert_eq!(reg.known_r(&[1, 1, 1, 1], 2).unwrap().value, 19);
        let v = reg.known_r(&[1, 1, 1], 3).unwrap();
        assert_eq!(v.value, 43);
        assert!(matches!(v.source, Source::DerivedByAlgebra { .. }));
        assert_eq!(reg.known_r(&[1, 1, 1, 1], 3).unwrap().value, 94);
        assert_eq!(reg.known_r(&[1, 1, 1, 1, 1], 3).unwrap().value, 173);
        assert_eq!(reg.known_r(&[2, 1], 2), None);
        assert_eq!(reg.known_r(&[1, 1], 6), None);
    }

    #[test]
    fn derived_values_need_valid_witness() {
        let mut reg = Registry::builtin();
        // 2x + y = z, two colors: 1 1 2 2 2 2 2 2 1 1 is good, so R >= 11.
        let w = Coloring::parse("1 1 2 2 2 2 2 2 1 1", Some(2)).unwrap();
        assert!(!reg.insert_derived(&[2, 1], 12, w.clone(), "test"));
        assert!(reg.insert_derived(&[2, 1], 11, w.clone(), "test"));
        assert!(!reg.insert_derived(&[2, 1], 11, w, "test"));
        let bad = Coloring::parse("1 1 1 1", Some(2)).unwrap();
        assert!(!reg.insert_derived(&[1, 1, 2], 5, bad, "test"));
        assert_eq!(reg.known_r(&[2, 1], 2).unwrap().value, 11);
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(Corollary::NegativeTwoColor { k: 3, b: 2 }.value(), Ok(13));
        assert_eq!(Corollary::NegativeThreeColor { line: 1, m: 5 }.value(), Ok(79));
        assert_eq!(Corollary::PositiveSchurThreeColor { b: 28 }.value(), Ok(27));
        assert_eq!(Corollary::PositiveTwoColor { k: 4, b: 22 }.value(), Ok(11));
        assert_eq!(
            Corollary::NegativeTwoColor { k: 4, b: 3 }.value(),
            Err(BoundsError::NotDivisible { s: 2, b: 3 })
        );
        assert!(Corollary::NegativeTwoColor { k: 2, b: 3 }.value().is_err());
        assert!(Corollary::NegativeThreeColor { line: 5, m: 1 }.value().is_err());
        let (eq, t) = Corollary::NegativeThreeColor { line: 2, m: 1 }.instance().unwrap();
        assert_eq!((eq.coeffs(), eq.shift(), t), (&[1i64, 1, 1][..], -2, 3));
    }

    #[test]
    fn conjecture_examples() {
        assert_eq!(conjecture_value(&[1, 1], -5, 14), Ok(79));
        assert_eq!(conjecture_value(&[1, 1], 28, 14), Ok(27));
        assert_eq!(conjecture_value(&[1, 1, 1], -2, 11), Ok(21));
        assert_eq!(conjecture_value(&[1, 1], 0, 5), Err(BoundsError::Homogeneous));
        assert_eq!(
            conjecture_value(&[1, 1, 1], 3, 11),
            Err(BoundsError::NotDivisible { s: 2, b: 3 })
        );
    }

    #[test]
    fn survey_formula_differs_off_one_mod_fourteen() {
        for b in 1..=60 {
            let paper = Corollary::PositiveSchurThreeColor { b }.value().unwrap();
            assert_eq!(paper == survey_claim_schur_positive(b), b % 14 == 1, "b = {b}");
        }
    }
}
