//! Colorings of `[1, n]` and the goodness / excellence predicates.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equation::{coeff_sum_s, Equation};

/// A color; colors are 1-based, so valid values are `1..=num_colors`.
pub type Color = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("number of colors must be between 1 and 255, got {0}")]
    BadColorCount(usize),
    #[error("color {color} at position {position} is outside 1..={num_colors}")]
    ColorOutOfRange {
        position: usize,
        color: usize,
        num_colors: usize,
    },
    #[error("cannot parse coloring: {0}")]
    Parse(String),
}

/// A coloring of the positions `1..=n` with colors from `1..=num_colors`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    num_colors: usize,
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(num_colors: usize, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if !(1..=usize::from(Color::MAX)).contains(&num_colors) {
            return Err(ColoringError::BadColorCount(num_colors));
        }
        if let Some((i, &c)) = colors
            .iter()
            .enumerate()
            .find(|(_, &c)| c == 0 || usize::from(c) > num_colors)
        {
            return Err(ColoringError::ColorOutOfRange {
                position: i + 1,
                color: c.into(),
                num_colors,
            });
        }
        Ok(Coloring { num_colors, colors })
    }

    /// Uses the largest color present as the color count (at least 1).
    pub fn from_colors(colors: Vec<Color>) -> Result<Self, ColoringError> {
        let t = colors.iter().copied().max().unwrap_or(1).max(1);
        Coloring::new(t.into(), colors)
    }

    /// Parses whitespace-separated 1-based colors, e.g. `1 2 2 1`.
    pub fn parse(text: &str, num_colors: Option<usize>) -> Result<Self, ColoringError> {
        let colors = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Color>()
                    .map_err(|_| ColoringError::Parse(format!("bad color `{tok}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        match num_colors {
            Some(t) => Coloring::new(t, colors),
            None => Coloring::from_colors(colors),
        }
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Color of position `i` (1-based).
    pub fn color_at(&self, i: usize) -> Color {
        self.colors[i - 1]
    }

    /// First occurrence of each color precedes the first occurrence of the next.
    pub fn is_canonical(&self) -> bool {
        let mut max_seen = 0;
        for &c in &self.colors {
            if c > max_seen + 1 {
                return false;
            }
            max_seen = max_seen.max(c);
        }
        true
    }

    /// Relabels colors in order of first appearance.
    pub fn canonicalize(&self) -> Coloring {
        let mut map = vec![0 as Color; self.num_colors + 1];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                let slot = &mut map[usize::from(c)];
                if *slot == 0 {
                    next += 1;
                    *slot = next;
                }
                *slot
            })
            .collect();
        Coloring {
            num_colors: self.num_colors,
            colors,
        }
    }

    pub fn reversed(&self) -> Coloring {
        let mut colors = self.colors.clone();
        colors.reverse();
        Coloring {
            num_colors: self.num_colors,
            colors,
        }
    }

    pub fn truncated(&self, len: usize) -> Coloring {
        Coloring {
            num_colors: self.num_colors,
            colors: self.colors[..len.min(self.len())].to_vec(),
        }
    }

    /// Returns some monochromatic solution of `eq` inside `[1, n]`, if any.
    pub fn find_monochromatic(&self, eq: &Equation) -> Option<Vec<i64>> {
        let mut found = None;
        for p in 1..=self.len() as i64 {
            eq.for_each_solution_with_max(p, |xs| {
                if found.is_none() && self.is_monochromatic(xs) {
                    found = Some(xs.to_vec());
                }
            });
            if found.is_some() {
                break;
            }
        }
        found
    }

    fn is_monochromatic(&self, xs: &[i64]) -> bool {
        let first = self.color_at(xs[0] as usize);
        xs.iter().all(|&x| self.color_at(x as usize) == first)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// No solution of `eq` inside `[1, n]` is monochromatic.
pub fn is_good_coloring(eq: &Equation, col: &Coloring) -> bool {
    col.find_monochromatic(eq).is_none()
}

/// Good for `c_1 x_1 + ... + c_{k-1} x_{k-1} + j = x_k` for every `0 <= j <= s`.
pub fn is_excellent_coloring(coeffs: &[i64], col: &Coloring) -> bool {
    excellence_equations(coeffs).iter().all(|eq| is_good_coloring(eq, col))
}

/// The equations `E(-j)` for `j = 0..=s` that make up the excellence condition.
pub fn excellence_equations(coeffs: &[i64]) -> Vec<Equation> {
    let s = coeff_sum_s(coeffs).max(0);
    (0..=s)
        .map(|j| Equation::new(coeffs.to_vec(), -j).expect("coefficients validated by caller"))
        .collect()
}
