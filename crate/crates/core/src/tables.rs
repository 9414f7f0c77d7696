//! Bundled reference vectors and a mechanical verifier.
//!
//! The fixture ships the recorded low-λ vectors: per-degree records from the
//! general search, per-order vectors from integer searches and annealing, and
//! the squared two-parameter family. `verify` recomputes every constant and
//! checks it against the reference value under truncation semantics
//! (reference decimals are truncations, not roundings). Rows whose reference
//! value is known to disagree with direct evaluation carry a note and are
//! flagged instead of failed.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::louboutin::derive_constants;
use crate::specialfn::{verify_g_inequalities, GridCheckReport, Parity};
use crate::trigpoly::{CoefficientVector, DEFAULT_MIN_RESOLUTION};
use crate::Result;

/// Headline cap: every bundled vector (and the general degree-32 record)
/// must come in at or below this λ.
pub const ASSEMBLY_LAMBDA_CAP: f64 = 9.122545;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub m: usize,
    /// Reference λ, a truncated decimal string.
    pub lambda: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderRow {
    /// Character orders this vector serves.
    pub orders: Vec<u64>,
    pub a: Vec<f64>,
    pub lambda: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    /// Present when the reference value is known to disagree with direct
    /// evaluation; such rows are flagged, not failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferenceVector {
    pub label: String,
    pub lambda: String,
    pub a: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SquaredFamily {
    pub alpha: f64,
    pub beta: f64,
    pub c: String,
    pub lambda: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferenceData {
    pub degree_records: Vec<DegreeRecord>,
    pub general_vector: ReferenceVector,
    pub integer_orders: Vec<OrderRow>,
    pub annealed_orders: Vec<OrderRow>,
    pub squared_family: SquaredFamily,
}

const REFERENCE_JSON: &str = include_str!("../data/reference.json");

/// The bundled reference data (parsed once).
pub fn reference_data() -> &'static ReferenceData {
    static DATA: OnceLock<ReferenceData> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(REFERENCE_JSON).expect("bundled fixture parses"))
}

/// Parses reference data from an external file, for overriding the bundle.
pub fn load_reference_data(text: &str) -> Result<ReferenceData> {
    Ok(serde_json::from_str(text)?)
}

/// Truncation check: does `x`, truncated (not rounded) to the decimal places
/// of `reference`, reproduce the reference digits? A relative cushion of
/// 1e-11 absorbs evaluation rounding just below truncation boundaries.
pub fn truncates_to(x: f64, reference: &str) -> bool {
    let places = reference.split('.').nth(1).map_or(0, str::len);
    let scale = 10f64.powi(places as i32);
    let scaled = x * scale;
    let cushion = (scaled.abs() * 1e-11).max(1e-9);
    let got = (scaled + cushion).floor();
    let want: f64 = reference
        .replace('.', "")
        .parse()
        .expect("reference is numeric");
    got == want
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyStatus {
    Pass,
    /// Known anomaly: recomputed value reported, reference not matched.
    Flagged,
    Fail,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyItem {
    pub name: String,
    pub status: VerifyStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub items: Vec<VerifyItem>,
    /// The G-inequality grid checks backing the validity range.
    pub grid_checks: Vec<GridCheckReport>,
    /// Largest recomputed λ across all bundled vectors.
    pub max_lambda: f64,
    /// Orders 3..=32 all covered and `max_lambda ≤ ASSEMBLY_LAMBDA_CAP`.
    pub assembly_ok: bool,
}

impl VerifyReport {
    pub fn failed(&self) -> bool {
        !self.assembly_ok || self.items.iter().any(|i| i.status == VerifyStatus::Fail)
    }
}

fn push(items: &mut Vec<VerifyItem>, name: String, status: VerifyStatus, detail: String) {
    items.push(VerifyItem {
        name,
        status,
        detail,
    });
}

fn check_order_row(
    row: &OrderRow,
    check_roots: bool,
    items: &mut Vec<VerifyItem>,
    max_lambda: &mut f64,
) -> Result<()> {
    let name = format!("orders {:?}", row.orders);
    let vector = CoefficientVector::new(row.a.clone())?;
    let min_order = *row
        .orders
        .iter()
        .min()
        .expect("rows name at least one order");
    if vector.m as u64 >= min_order {
        push(
            items,
            name,
            VerifyStatus::Fail,
            format!("degree {} is not below the order {min_order}", vector.m),
        );
        return Ok(());
    }
    let constants = derive_constants(&vector)?;
    *max_lambda = max_lambda.max(constants.lambda);

    if let Some(c_ref) = &row.c {
        let status = if truncates_to(constants.c, c_ref) {
            VerifyStatus::Pass
        } else {
            VerifyStatus::Fail
        };
        push(
            items,
            format!("{name} c"),
            status,
            format!("computed c = {:.10} vs reference {c_ref}", constants.c),
        );
    }

    let matches = truncates_to(constants.lambda, &row.lambda);
    match (&row.note, matches) {
        (None, true) => push(
            items,
            name,
            VerifyStatus::Pass,
            format!("λ = {:.10} truncates to {}", constants.lambda, row.lambda),
        ),
        (None, false) => push(
            items,
            name,
            VerifyStatus::Fail,
            format!(
                "λ = {:.10} does not truncate to {}",
                constants.lambda, row.lambda
            ),
        ),
        (Some(note), false) => push(
            items,
            name,
            VerifyStatus::Flagged,
            format!("computed λ = {:.10}; {note}", constants.lambda),
        ),
        (Some(note), true) => push(
            items,
            name,
            VerifyStatus::Fail,
            format!(
                "row is flagged ({note}) but unexpectedly matches {}",
                row.lambda
            ),
        ),
    }

    if check_roots {
        for &d in &row.orders {
            let worst = vector
                .values_at_roots(d as usize)?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            let status = if worst >= -1e-9 {
                VerifyStatus::Pass
            } else {
                VerifyStatus::Fail
            };
            push(
                items,
                format!("orders {:?} roots at d = {d}", row.orders),
                status,
                format!("least root value {worst:.3e}"),
            );
        }
    }
    Ok(())
}

/// Recomputes every bundled constant and reports pass/flag/fail per item.
///
/// - integer and annealed order rows: λ (and c where recorded) under
///   truncation; annealed rows additionally prove their root values ≥ -1e-9;
/// - the degree-32 general vector: λ truncation against the degree records
///   and certified global nonnegativity at the `-1e-6` rounding tolerance;
/// - the squared family: c and λ truncation through the product pipeline;
/// - assembly: orders 3..=32 covered and max λ ≤ [`ASSEMBLY_LAMBDA_CAP`].
pub fn verify(data: &ReferenceData) -> Result<VerifyReport> {
    let mut items = Vec::new();
    let mut max_lambda = f64::NEG_INFINITY;

    for row in &data.integer_orders {
        check_order_row(row, false, &mut items, &mut max_lambda)?;
    }
    for row in &data.annealed_orders {
        check_order_row(row, true, &mut items, &mut max_lambda)?;
    }

    // the two rows recorded with identical reference λ: settle the coincidence
    let twelve = data.integer_orders.iter().find(|r| r.orders == [12]);
    let thirteen = data.integer_orders.iter().find(|r| r.orders == [13]);
    if let (Some(r12), Some(r13)) = (twelve, thirteen) {
        let l12 = derive_constants(&CoefficientVector::new(r12.a.clone())?)?.lambda;
        let l13 = derive_constants(&CoefficientVector::new(r13.a.clone())?)?.lambda;
        let same = (l12 * 1e5).floor() == (l13 * 1e5).floor();
        push(
            &mut items,
            "orders 12/13 shared reference λ".into(),
            VerifyStatus::Flagged,
            if same {
                format!("direct evaluation confirms the coincidence: {l12:.10} vs {l13:.10}")
            } else {
                format!("not a real coincidence: direct evaluation gives {l12:.10} vs {l13:.10}")
            },
        );
    }

    // general degree-32 vector
    let general = CoefficientVector::new(data.general_vector.a.clone())?;
    let constants = derive_constants(&general)?;
    max_lambda = max_lambda.max(constants.lambda);
    let expected = data
        .degree_records
        .iter()
        .find(|r| r.m == general.m)
        .map(|r| r.lambda.as_str())
        .unwrap_or(data.general_vector.lambda.as_str());
    push(
        &mut items,
        data.general_vector.label.clone(),
        if truncates_to(constants.lambda, expected) {
            VerifyStatus::Pass
        } else {
            VerifyStatus::Fail
        },
        format!("λ = {:.12} vs reference {expected}", constants.lambda),
    );
    let report = general.global_min(DEFAULT_MIN_RESOLUTION)?;
    let nonneg = report.min_value >= -1e-6 && report.error_bound <= 1e-6;
    push(
        &mut items,
        format!("{} nonnegativity", data.general_vector.label),
        if nonneg {
            VerifyStatus::Pass
        } else {
            VerifyStatus::Fail
        },
        format!(
            "min {:.3e} at θ = {:.6}, certified within {:.3e}",
            report.min_value, report.theta_star, report.error_bound
        ),
    );

    // squared family pipeline
    let fam = &data.squared_family;
    let base = CoefficientVector::new(vec![1.0, fam.alpha / 2.0, fam.beta / 2.0])?;
    let squared = base.multiply(&base);
    let constants = derive_constants(&squared)?;
    let ok = truncates_to(constants.c, &fam.c) && truncates_to(constants.lambda, &fam.lambda);
    push(
        &mut items,
        format!("squared family α = {}, β = {}", fam.alpha, fam.beta),
        if ok {
            VerifyStatus::Pass
        } else {
            VerifyStatus::Fail
        },
        format!(
            "c = {:.8}, λ = {:.8} vs references {}, {}",
            constants.c, constants.lambda, fam.c, fam.lambda
        ),
    );

    // G-inequality grids behind the s(q) ≤ 1.92326 validity collapse
    let mut grid_checks = Vec::new();
    for (parity, s_max) in [(Parity::Odd, 2.28266), (Parity::Even, 2.97675)] {
        let check = verify_g_inequalities(parity, s_max, 1e-3)?;
        push(
            &mut items,
            format!("G inequalities ({parity:?} parity, s ≤ {s_max})"),
            if check.pass {
                VerifyStatus::Pass
            } else {
                VerifyStatus::Fail
            },
            format!("margin {:.3e} at step {:.0e}", check.margin, check.step),
        );
        grid_checks.push(check);
    }

    // assembly: order coverage and the λ cap
    let mut covered: Vec<u64> = data
        .integer_orders
        .iter()
        .chain(&data.annealed_orders)
        .flat_map(|r| r.orders.iter().copied())
        .collect();
    covered.sort_unstable();
    covered.dedup();
    let missing: Vec<u64> = (3..=32).filter(|d| !covered.contains(d)).collect();
    let assembly_ok = missing.is_empty() && max_lambda <= ASSEMBLY_LAMBDA_CAP;
    push(
        &mut items,
        "assembly".into(),
        if assembly_ok { VerifyStatus::Pass } else { VerifyStatus::Fail },
        format!(
            "orders 3..=32 missing {missing:?}; max λ = {max_lambda:.10} (cap {ASSEMBLY_LAMBDA_CAP})"
        ),
    );

    Ok(VerifyReport {
        items,
        grid_checks,
        max_lambda,
        assembly_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_parses_and_is_well_formed() {
        let data = reference_data();
        assert_eq!(data.general_vector.a.len(), 33);
        assert_eq!(data.integer_orders.len(), 12);
        assert_eq!(data.annealed_orders.len(), 17);
        for row in &data.annealed_orders {
            assert_eq!(row.orders.len(), 1);
            assert_eq!(row.a.len(), row.orders[0] as usize, "degree must be d - 1");
        }
    }

    #[test]
    fn truncation_semantics() {
        assert!(truncates_to(9.104882751, "9.10488"));
        assert!(truncates_to(9.104889999, "9.10488"));
        assert!(!truncates_to(9.104879999, "9.10488"));
        assert!(!truncates_to(9.10489001, "9.10488"));
        assert!(truncates_to(9.12254419009, "9.12254419"));
        // rounding would give 3.7294; truncation keeps 3.7293
        assert!(truncates_to(3.72935702, "3.72935"));
    }

    #[test]
    fn fixture_round_trips_exactly() {
        let data = reference_data();
        let text = serde_json::to_string(data).unwrap();
        let back: ReferenceData = serde_json::from_str(&text).unwrap();
        assert_eq!(back.general_vector.a, data.general_vector.a);
        for (x, y) in back.annealed_orders.iter().zip(&data.annealed_orders) {
            assert_eq!(x.a, y.a);
        }
    }

    #[test]
    fn every_bundled_vector_round_trips_as_coefficient_json() {
        let data = reference_data();
        let all: Vec<&Vec<f64>> = data
            .integer_orders
            .iter()
            .chain(&data.annealed_orders)
            .map(|r| &r.a)
            .chain(std::iter::once(&data.general_vector.a))
            .collect();
        for a in all {
            let v = CoefficientVector::new(a.clone()).unwrap();
            let text = v.to_json();
            let back = CoefficientVector::from_json(&text).unwrap();
            assert_eq!(back.a, v.a, "decimal round-trip must be exact");
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn verify_passes_on_bundle() {
        let report = verify(reference_data()).unwrap();
        for item in &report.items {
            assert_ne!(
                item.status,
                VerifyStatus::Fail,
                "{}: {}",
                item.name,
                item.detail
            );
        }
        assert!(report.assembly_ok);
        assert!(!report.failed());
        assert_eq!(report.grid_checks.len(), 2);
        assert!(report.grid_checks.iter().all(|c| c.pass && c.margin > 0.0));
        // the known anomalies surface as flags
        let flagged: Vec<_> = report
            .items
            .iter()
            .filter(|i| i.status == VerifyStatus::Flagged)
            .map(|i| i.name.clone())
            .collect();
        assert_eq!(flagged.len(), 4, "{flagged:?}");
    }

    #[test]
    fn lambda_thresholds_hold() {
        use crate::louboutin::derive_constants;
        let data = reference_data();
        for row in &data.annealed_orders {
            let v = CoefficientVector::new(row.a.clone()).unwrap();
            let lambda = derive_constants(&v).unwrap().lambda;
            assert!(
                lambda < 9.1224,
                "annealed orders {:?}: λ = {lambda}",
                row.orders
            );
        }
        for row in &data.integer_orders {
            let v = CoefficientVector::new(row.a.clone()).unwrap();
            let lambda = derive_constants(&v).unwrap().lambda;
            assert!(lambda <= ASSEMBLY_LAMBDA_CAP);
            if row.note.is_none() {
                assert!(
                    lambda < 9.12,
                    "integer orders {:?}: λ = {lambda}",
                    row.orders
                );
            }
        }
    }
}
