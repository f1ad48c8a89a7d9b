//! Growth-rate comparison of the undelayed and delayed families.
//!
//! The index ratio `ln rho_A / ln eta_a` drives the alignment rule
//! `G_M ~ F_N` with `N = floor(ratio * M)`; this module computes the ratio,
//! its short decimal expansion, the logarithmic quotient behind the
//! `eta_a^5 ~ e * rho_A^5` coincidence, and alignment samples.

use crate::ap::{PrecisionContext, Real};
use crate::characteristic::{golden_roots, plastic_roots};
use crate::error::{Error, Result};
use crate::sequences::{Natural, RecurrenceSpec};

/// Minimum context precision for the ratio and quotient reports.
pub const RATIO_MIN_DIGITS: u32 = 25;

/// The index ratio with the partial sums of its expansion
/// `7/12 + (3/10^3)(7/12)^2 + 3/10^6 - 9/10^9` and their signed residuals.
#[derive(Clone, Debug)]
pub struct RatioReport {
    pub ratio: Real,
    pub partials: Vec<Real>,
    pub residuals: Vec<Real>,
}

/// The logarithmic quotient `ln(eta_a / rho_A)`, its published rational
/// approximation, and the relative error of `eta_a^5` against `e * rho_A^5`.
///
/// The sources print the quotient as a positive number, which fixes the
/// orientation: `eta_a` is the larger base, so the positive logarithm is
/// `ln(eta_a / rho_A)`.
#[derive(Clone, Debug)]
pub struct MysteryReport {
    pub log_quotient: Real,
    pub approx_value: Real,
    pub rho5_relative_error: Real,
}

/// One alignment sample: `N = floor(ratio * M)` with both terms and the
/// logarithmic gap `|ln G_M - ln F_N|`.
#[derive(Clone, Debug)]
pub struct AlignmentSample {
    pub m: u64,
    pub n: u64,
    pub g_m: Natural,
    pub f_n: Natural,
    pub log_gap: Real,
}

fn require_ratio_digits(ctx: &PrecisionContext) -> Result<()> {
    if ctx.digits() < RATIO_MIN_DIGITS {
        return Err(Error::InsufficientPrecision {
            required: RATIO_MIN_DIGITS,
            available: ctx.digits(),
        });
    }
    Ok(())
}

fn ratio_value(ctx: &PrecisionContext) -> Real {
    let rho_a = plastic_roots(ctx).rho_a;
    let eta_a = golden_roots(ctx).eta_a;
    &rho_a.ln() / &eta_a.ln()
}

/// Computes `ln rho_A / ln eta_a` with the expansion partial sums.
pub fn log_ratio(ctx: &PrecisionContext) -> Result<RatioReport> {
    require_ratio_digits(ctx)?;
    let scale = ctx.scale();
    let ratio = ratio_value(ctx);
    let terms = [
        Real::from_ratio(7, 12, scale),
        Real::from_ratio(49, 48_000, scale),
        Real::from_ratio(3, 1_000_000, scale),
        Real::from_ratio(-9, 1_000_000_000, scale),
    ];
    let mut partials = Vec::with_capacity(terms.len());
    let mut residuals = Vec::with_capacity(terms.len());
    let mut sum = Real::zero(scale);
    for term in &terms {
        sum = &sum + term;
        partials.push(sum.clone());
        residuals.push(&sum - &ratio);
    }
    Ok(RatioReport { ratio, partials, residuals })
}

/// Computes the logarithmic quotient report.
pub fn mystery_quotient(ctx: &PrecisionContext) -> Result<MysteryReport> {
    require_ratio_digits(ctx)?;
    let scale = ctx.scale();
    let rho_a = plastic_roots(ctx).rho_a;
    let eta_a = golden_roots(ctx).eta_a;
    let log_quotient = (&eta_a / &rho_a).ln();
    let approx_value = &(&(&(&Real::from_ratio(1, 5, scale)
        + &Real::from_ratio(1, 80_000, scale))
        - &Real::from_ratio(1, 4_000_000, scale))
        + &Real::from_ratio(2, 2_700_000_000, scale))
        - &Real::from_ratio(41, 10_000_000_000_000, scale);
    let rho5_relative_error =
        &(&log_quotient.mul_i64(5) - &Real::one(scale)).exp() - &Real::one(scale);
    Ok(MysteryReport { log_quotient, approx_value, rho5_relative_error })
}

/// Aligns `G_M` with `F_N` for `N = floor(ratio * M)` at full ratio
/// precision.
pub fn growth_alignment(m: u64, ctx: &PrecisionContext) -> AlignmentSample {
    assert!(m >= 1, "alignment index must be positive");
    let scale = ctx.scale();
    let ratio = ratio_value(ctx);
    let n_int = (&ratio * &Real::from_i64(m as i64, scale)).floor_int();
    let n = u64::try_from(n_int).expect("floor(ratio * m) is a small nonnegative integer");
    let g_m = RecurrenceSpec::gibonacci().natural_term(m as i64);
    let f_n = RecurrenceSpec::fibonacci().natural_term(n as i64);
    let log_gap =
        (&Real::from_natural(&g_m, scale).ln() - &Real::from_natural(&f_n, scale).ln()).abs();
    AlignmentSample { m, n, g_m, f_n, log_gap }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characteristic::{fib_coefficients, gib_coefficients, CoeffMethod};

    fn ctx40() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    fn assert_close(got: &Real, want: &str, tol_exp: i64, label: &str) {
        let want = Real::parse(want, got.scale()).unwrap();
        let diff = (got - &want).abs();
        let tol = Real::pow10(tol_exp, got.scale());
        assert!(diff < tol, "{label}: got {}", got.to_decimal(45.min(got.scale())));
    }

    #[test]
    fn ratio_matches_reference() {
        let report = log_ratio(&ctx40()).unwrap();
        assert_close(
            &report.ratio,
            "0.584357157657404086746367987899312205844711",
            -40,
            "ratio",
        );
    }

    #[test]
    fn expansion_residuals_shrink_monotonically() {
        let report = log_ratio(&ctx40()).unwrap();
        assert_eq!(report.partials.len(), 4);
        let expected = [
            ("-0.00102382432407075", -15),
            ("-0.00000299099073742", -15),
            ("0.0000000090092625799", -17),
            ("0.0000000000092625799", -17),
        ];
        let mut prev: Option<Real> = None;
        for (residual, (want, tol)) in report.residuals.iter().zip(expected) {
            assert_close(residual, want, tol, "residual");
            if let Some(p) = prev {
                assert!(residual.abs() < p.abs());
            }
            prev = Some(residual.clone());
        }
        let bound = Real::pow10(-10, report.ratio.scale());
        assert!(report.residuals.last().unwrap().abs() < bound);
    }

    #[test]
    fn ratio_requires_enough_digits() {
        let ctx = PrecisionContext::new(20).unwrap();
        assert!(matches!(
            log_ratio(&ctx),
            Err(Error::InsufficientPrecision { required: 25, available: 20 })
        ));
        assert!(mystery_quotient(&ctx).is_err());
    }

    #[test]
    fn mystery_quotient_matches_reference() {
        let report = mystery_quotient(&ctx40()).unwrap();
        assert_close(
            &report.log_quotient,
            "0.200012250736641600985708149356490123343161",
            -40,
            "log quotient",
        );
        assert_close(
            &report.approx_value,
            "0.2000122507366407407407407407",
            -28,
            "approximation",
        );
        let diff = (&report.log_quotient - &report.approx_value).abs();
        assert!(diff < Real::pow10(-15, report.log_quotient.scale()));
        assert_close(
            &report.rho5_relative_error,
            "0.000061255559253162898256",
            -22,
            "relative error",
        );
    }

    #[test]
    fn alignment_examples() {
        let ctx = ctx40();
        let s12 = growth_alignment(12, &ctx);
        assert_eq!((s12.n, s12.g_m.clone(), s12.f_n.clone()), (7, 21u32.into(), 21u32.into()));
        assert!(s12.log_gap.is_zero());
        let s23 = growth_alignment(23, &ctx);
        assert_eq!((s23.n, s23.g_m.clone(), s23.f_n.clone()), (13, 465u32.into(), 377u32.into()));
        assert_close(&s23.log_gap, "0.2097922181", -9, "gap at 23");
    }

    #[test]
    fn relative_log_gap_decays() {
        let ctx = ctx40();
        let samples = (100..1000)
            .step_by(50)
            .chain((1000..=5000).step_by(250));
        for m in samples {
            let s = growth_alignment(m, &ctx);
            let rel = &s.log_gap / &Real::from_natural(&s.g_m, ctx.scale()).ln();
            let bound = if m >= 1000 {
                Real::pow10(-2, ctx.scale())
            } else {
                Real::pow10(-2, ctx.scale()).mul_i64(5)
            };
            assert!(rel < bound, "m = {m}");
        }
    }

    #[test]
    fn dominant_terms_bound_both_families() {
        let ctx = PrecisionContext::new(120).unwrap();
        let scale = ctx.scale();
        let cubic = plastic_roots(&ctx);
        let a_coeff = gib_coefficients(&ctx, CoeffMethod::ClosedForm).a_coeff;
        let rho_b_abs = cubic.rho_a.recip().sqrt();
        let g = RecurrenceSpec::gibonacci();
        for m in (10..=300).step_by(10) {
            let err = (&Real::from_natural(&g.natural_term(m), scale)
                - &(&a_coeff * &cubic.rho_a.powi(m as u64)))
                .abs();
            assert!(err < rho_b_abs.powi(m as u64), "G dominant term at {m}");
        }
        let quad = golden_roots(&ctx);
        let a = fib_coefficients(&ctx).a;
        let eta_b_abs = quad.eta_b.abs();
        let f = RecurrenceSpec::fibonacci();
        for n in (10..=300).step_by(10) {
            let err = (&Real::from_natural(&f.natural_term(n), scale)
                - &(&a * &quad.eta_a.powi(n as u64)))
                .abs();
            assert!(err < eta_b_abs.powi(n as u64), "F dominant term at {n}");
        }
    }
}
