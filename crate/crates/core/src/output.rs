//! The shared JSON result record emitted by every command.

use serde::{Deserialize, Serialize};

use crate::bounds::{Bound, BoundsReport};
use crate::coloring::{Color, Coloring};
use crate::search::{ExcellenceResult, ExcellenceStatus, RadoResult, RadoStatus};

/// Stable result schema. `value` is set only when the quantity is known
/// exactly; the witness is the coloring backing it (or the best one found).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub coeffs: Vec<i64>,
    /// `None` for excellence results, which cover a range of shifts.
    pub shift: Option<i64>,
    pub colors: usize,
    pub status: String,
    pub value: Option<i64>,
    pub witness: Option<Vec<Color>>,
    pub method: String,
    pub elapsed_ms: u64,
    pub engine_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsFields>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsFields {
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub homogeneous_rado: Option<i64>,
    pub excellent_length: Option<i64>,
}

fn witness(col: &Coloring) -> Option<Vec<Color>> {
    Some(col.colors().to_vec())
}

impl ResultRecord {
    pub fn from_rado(res: &RadoResult, method: &str) -> Self {
        let (status, value) = match res.status {
            RadoStatus::Exact(r) => ("exact", Some(r as i64)),
            RadoStatus::ExceedsCap(_) => ("exceeds_cap", None),
            RadoStatus::Timeout { .. } => ("timeout", None),
        };
        ResultRecord {
            coeffs: res.equation.coeffs().to_vec(),
            shift: Some(res.equation.shift()),
            colors: res.num_colors,
            status: status.into(),
            value,
            witness: witness(&res.witness),
            method: method.into(),
            elapsed_ms: res.elapsed.as_millis() as u64,
            engine_version: crate::ENGINE_VERSION.into(),
            bounds: None,
        }
    }

    pub fn from_excellence(res: &ExcellenceResult, method: &str) -> Self {
        let (status, value) = match res.status {
            ExcellenceStatus::Exact(n) => ("exact", Some(n as i64)),
            ExcellenceStatus::ExceedsCap(_) => ("exceeds_cap", None),
            ExcellenceStatus::Timeout { .. } => ("timeout", None),
        };
        ResultRecord {
            coeffs: res.coeffs.clone(),
            shift: None,
            colors: res.num_colors,
            status: status.into(),
            value,
            witness: witness(&res.witness),
            method: method.into(),
            elapsed_ms: res.elapsed.as_millis() as u64,
            engine_version: crate::ENGINE_VERSION.into(),
            bounds: None,
        }
    }

    /// `status` is `exact` when the bounds meet, `bounded` otherwise.
    pub fn from_bounds(rep: &BoundsReport, elapsed_ms: u64) -> Self {
        let value = rep.exact();
        ResultRecord {
            coeffs: rep.equation.coeffs().to_vec(),
            shift: Some(rep.equation.shift()),
            colors: rep.num_colors,
            status: if value.is_some() { "exact" } else { "bounded" }.into(),
            value,
            witness: None,
            method: "bounds".into(),
            elapsed_ms,
            engine_version: crate::ENGINE_VERSION.into(),
            bounds: Some(BoundsFields {
                lower: rep.lower,
                upper: rep.upper,
                homogeneous_rado: rep.inputs_used.homogeneous_rado,
                excellent_length: rep.inputs_used.excellent_length,
            }),
        }
    }
}
