//! Characteristic roots and Binet-style coefficients at arbitrary precision.
//!
//! The quadratic `x^2 = x + 1` and cubic `x^3 = x + 1` are solved in closed
//! form (golden mean; Cardano via `x0 = sqrt(23/27)` and the cube roots
//! `D+- = ((1 +- x0)/2)^(1/3)`).  The quartic `x^4 = x + 1` has no compact
//! closed form, so its two real roots are isolated by sign change and
//! refined by Newton iteration; the complex pair then follows exactly from
//! the Vieta relations.  Expansion coefficients for F and G are produced by
//! the closed-form elimination route and, independently, by solving the
//! boundary-condition linear system.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::ap::{Complex, PrecisionContext, Real};
use crate::sequences::{Family, Natural};
use crate::{Error, Result};

/// Roots of `eta^2 = eta + 1`.
#[derive(Clone, Debug)]
pub struct QuadraticRoots {
    /// Golden mean, (1 + sqrt 5)/2.
    pub eta_a: Real,
    /// (1 - sqrt 5)/2.
    pub eta_b: Real,
}

/// Roots of `rho^3 = rho + 1` plus the intermediate closed-form quantities.
#[derive(Clone, Debug)]
pub struct CubicRoots {
    pub x0: Real,
    pub d_plus: Real,
    pub d_minus: Real,
    /// The single real root, D+ + D-.
    pub rho_a: Real,
    /// D+ - D-.
    pub rho_d: Real,
    /// Complex root with positive imaginary part.
    pub rho_b: Complex,
    /// Conjugate of rho_b.
    pub rho_c: Complex,
    /// 2 pi / 3.
    pub phi: Real,
}

/// Roots of `tau^4 = tau + 1`, canonically ordered:
/// real roots ascending, then the complex pair, positive imaginary part first.
#[derive(Clone, Debug)]
pub struct QuarticRoots {
    pub real_roots: [Real; 2],
    pub tau_plus: Complex,
    pub tau_minus: Complex,
}

/// Binet coefficients for F: F_n = a eta_a^n + b eta_b^n.
#[derive(Clone, Debug)]
pub struct FibCoefficients {
    pub a: Real,
    pub b: Real,
}

/// Binet coefficients for G: G_n = A rho_A^n + B rho_B^n + C rho_C^n
/// with B = K - iL and C = K + iL, plus the elimination intermediates.
#[derive(Clone, Debug)]
pub struct GibCoefficients {
    pub a_coeff: Real,
    pub k: Real,
    pub l: Real,
    pub sigma: Real,
    pub delta: Real,
}

/// Route used to obtain [`GibCoefficients`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffMethod {
    /// Eliminate A = 1 - 2K, solve the 2x2 Sigma/Delta system in closed form.
    ClosedForm,
    /// Solve the 3x3 complex boundary system by Gaussian elimination.
    LinearSolve,
}

impl GibCoefficients {
    /// B = K - iL.
    pub fn b(&self) -> Complex {
        Complex::new(self.k.clone(), -&self.l)
    }

    /// C = K + iL.
    pub fn c(&self) -> Complex {
        Complex::new(self.k.clone(), self.l.clone())
    }
}

/// eta_a = (1 + sqrt 5)/2, eta_b = (1 - sqrt 5)/2.
pub fn golden_roots(ctx: &PrecisionContext) -> QuadraticRoots {
    let s = ctx.scale();
    let sqrt5 = Real::from_i64(5, s).sqrt();
    let half = Real::from_ratio(1, 2, s);
    QuadraticRoots {
        eta_a: &(&Real::one(s) + &sqrt5) * &half,
        eta_b: &(&Real::one(s) - &sqrt5) * &half,
    }
}

/// Closed-form roots of the cubic via x0 = sqrt(23/27).
pub fn plastic_roots(ctx: &PrecisionContext) -> CubicRoots {
    let s = ctx.scale();
    let one = Real::one(s);
    let half = Real::from_ratio(1, 2, s);
    let x0 = Real::from_ratio(23, 27, s).sqrt();
    let d_plus = (&(&one + &x0) * &half).nth_root(3);
    let d_minus = (&(&one - &x0) * &half).nth_root(3);
    let rho_a = &d_plus + &d_minus;
    let rho_d = &d_plus - &d_minus;
    // rho_B = e^{i phi} D+ + e^{-i phi} D- = -rho_A/2 + i (sqrt3/2) rho_D
    let sqrt3_half = &Real::from_i64(3, s).sqrt() * &half;
    let rho_b = Complex::new(-&(&rho_a * &half), &sqrt3_half * &rho_d);
    let rho_c = rho_b.conj();
    let phi = &Real::pi(s) * &Real::from_ratio(2, 3, s);
    CubicRoots { x0, d_plus, d_minus, rho_a, rho_d, rho_b, rho_c, phi }
}

const NEWTON_CAP: u32 = 200;

fn quartic_poly(x: &Real) -> Real {
    // x^4 - x - 1
    &(&x.powi(4) - x) - &Real::one(x.scale())
}

fn quartic_newton(lo: i64, hi: i64, s: u32) -> Result<Real> {
    // bisect the integer bracket a little, then let Newton finish
    let mut lo = Real::from_i64(lo, s);
    let mut hi = Real::from_i64(hi, s);
    let half = Real::from_ratio(1, 2, s);
    for _ in 0..8 {
        let mid = &(&lo + &hi) * &half;
        if quartic_poly(&lo).is_negative() == quartic_poly(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = &(&lo + &hi) * &half;
    let four = Real::from_i64(4, s);
    let one = Real::one(s);
    let step_tol = Real::pow10(-(s as i64) + 3, s);
    for _ in 0..NEWTON_CAP {
        let fx = quartic_poly(&x);
        let dfx = &(&four * &x.powi(3)) - &one;
        let step = &fx / &dfx;
        x = &x - &step;
        if step.abs() <= step_tol {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence(NEWTON_CAP))
}

/// All four roots of `tau^4 = tau + 1`.
///
/// The real roots live in (-1, 0) and (1, 2); the complex pair follows from
/// the root sums/products of `tau^4 - tau - 1`, and every root is checked
/// against the context residual tolerance.
pub fn quartic_roots(ctx: &PrecisionContext) -> Result<QuarticRoots> {
    let s = ctx.scale();
    let r_neg = quartic_newton(-1, 0, s)?;
    let r_pos = quartic_newton(1, 2, s)?;
    // remaining pair alpha +- i beta: sum of all roots is 0,
    // product of all roots is -1
    let half = Real::from_ratio(1, 2, s);
    let alpha = -&(&(&r_neg + &r_pos) * &half);
    let mod_sq = -&(Real::one(s) / &(&r_neg * &r_pos));
    let beta = (&mod_sq - &(&alpha * &alpha)).sqrt();
    let tau_plus = Complex::new(alpha.clone(), beta.clone());
    let tau_minus = tau_plus.conj();

    let tol = ctx.tolerance();
    for r in [&r_neg, &r_pos] {
        if quartic_poly(r).abs() > tol {
            return Err(Error::NoConvergence(NEWTON_CAP));
        }
    }
    let resid = complex_quartic_residual(&tau_plus);
    if resid > tol {
        return Err(Error::NoConvergence(NEWTON_CAP));
    }
    Ok(QuarticRoots { real_roots: [r_neg, r_pos], tau_plus, tau_minus })
}

fn complex_quartic_residual(t: &Complex) -> Real {
    let s = t.re.scale();
    let one = Complex::from_real(Real::one(s));
    t.powi(4).sub(t).sub(&one).abs()
}

/// a = eta_a / sqrt5, b = -eta_b / sqrt5 (so that a + b = 1).
pub fn fib_coefficients(ctx: &PrecisionContext) -> FibCoefficients {
    let s = ctx.scale();
    let sqrt5 = Real::from_i64(5, s).sqrt();
    let roots = golden_roots(ctx);
    FibCoefficients { a: &roots.eta_a / &sqrt5, b: -&(&roots.eta_b / &sqrt5) }
}

/// Expansion coefficients for G by the requested route.
pub fn gib_coefficients(ctx: &PrecisionContext, method: CoeffMethod) -> GibCoefficients {
    match method {
        CoeffMethod::ClosedForm => gib_closed_form(ctx),
        CoeffMethod::LinearSolve => gib_linear_solve(ctx),
    }
}

fn gib_closed_form(ctx: &PrecisionContext) -> GibCoefficients {
    let s = ctx.scale();
    let c = plastic_roots(ctx);
    let three_x0 = c.x0.mul_i64(3);
    let three = Real::from_i64(3, s);
    let sigma = &(&(&three * &(&c.d_plus * &c.d_plus)) - &c.d_minus) / &three_x0;
    let delta = &(&c.d_plus - &(&three * &(&c.d_minus * &c.d_minus))) / &three_x0;
    // 6K = 2 - (D+ - D-)(3D+ + 3D- + 1)/(3 x0)
    let lin = &(&c.rho_a.mul_i64(3) + &Real::one(s)) * &c.rho_d;
    let k = (&Real::from_i64(2, s) - &(&lin / &three_x0)).div_i64(6);
    // 2 sqrt3 L = (3D+^2 + 3D-^2 - D+ - D-)/(3 x0)
    let sq_sum = &(&c.d_plus * &c.d_plus) + &(&c.d_minus * &c.d_minus);
    let l_num = &(&three * &sq_sum) - &c.rho_a;
    let l = &(&l_num / &three_x0) / &Real::from_i64(3, s).sqrt().mul_i64(2);
    let a_coeff = &Real::one(s) - &k.mul_i64(2);
    GibCoefficients { a_coeff, k, l, sigma, delta }
}

fn gib_linear_solve(ctx: &PrecisionContext) -> GibCoefficients {
    let s = ctx.scale();
    let c = plastic_roots(ctx);
    let one = Complex::from_real(Real::one(s));
    let ra = Complex::from_real(c.rho_a.clone());
    let rb = c.rho_b.clone();
    let rc = c.rho_c.clone();
    // [1 1 1; ra rb rc; ra^2 rb^2 rc^2] [A B C]^T = [1 1 1]^T
    let mut m = [
        [one.clone(), one.clone(), one.clone(), one.clone()],
        [ra.clone(), rb.clone(), rc.clone(), one.clone()],
        [ra.mul(&ra), rb.mul(&rb), rc.mul(&rc), one.clone()],
    ];
    // Gaussian elimination with partial pivoting by modulus
    #[allow(clippy::needless_range_loop)]
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| m[i][col].norm_sq().cmp(&m[j][col].norm_sq()))
            .expect("nonempty");
        m.swap(col, pivot);
        let inv = one.div(&m[col][col]);
        for j in col..4 {
            m[col][j] = m[col][j].mul(&inv);
        }
        for row in 0..3 {
            if row != col && !m[row][col].is_zero() {
                let factor = m[row][col].clone();
                for j in col..4 {
                    m[row][j] = m[row][j].sub(&factor.mul(&m[col][j]));
                }
            }
        }
    }
    let a_coeff = m[0][3].re.clone();
    // solution order matches the column order A, B, C with B = K - iL
    let k = m[1][3].re.clone();
    let l = -&m[1][3].im;
    // back out Sigma, Delta from the abbreviation with cos phi = -1/2, sin phi = sqrt3/2
    let sqrt3 = Real::from_i64(3, s).sqrt();
    let base = &Real::one(s) - &k.mul_i64(3);
    let sigma = &base + &(&sqrt3 * &l);
    let delta = &base - &(&sqrt3 * &l);
    GibCoefficients { a_coeff, k, l, sigma, delta }
}

// conservative digits-per-index of the dominant roots, used only to enforce
// the binet_eval precision precondition
const LOG10_ETA_A: f64 = 0.208_987_640_249_978_7;
const LOG10_RHO_A: f64 = 0.122_123_837_111_786_8;

/// Evaluates the full Binet ansatz for F or G, rounds to the nearest
/// integer and reports the pre-rounding residual.
///
/// Requires `n * log10(dominant root) + 10 <= ctx.digits`; with that margin
/// the residual is far below 1/2 and rounding is never in doubt.
pub fn binet_eval(family: Family, n: u64, ctx: &PrecisionContext) -> Result<(Natural, Real)> {
    let needed = match family {
        Family::F => (n as f64 * LOG10_ETA_A).ceil() as u32 + 10,
        Family::G => (n as f64 * LOG10_RHO_A).ceil() as u32 + 10,
    };
    if needed > ctx.digits() {
        return Err(Error::InsufficientPrecision { required: needed, available: ctx.digits() });
    }
    let value = match family {
        Family::F => {
            let roots = golden_roots(ctx);
            let coeff = fib_coefficients(ctx);
            // eta_b is negative; powi handles the sign via its mantissa
            &(&coeff.a * &roots.eta_a.powi(n)) + &(&coeff.b * &roots.eta_b.powi(n))
        }
        Family::G => {
            let roots = plastic_roots(ctx);
            let coeff = gib_coefficients(ctx, CoeffMethod::ClosedForm);
            let dominant = &coeff.a_coeff * &roots.rho_a.powi(n);
            let sub = coeff.b().mul(&roots.rho_b.powi(n));
            // B rho_B^n + C rho_C^n = 2 Re(B rho_B^n)
            &dominant + &sub.re.mul_i64(2)
        }
    };
    let rounded: BigInt = value.round_int();
    let residual = (&value - &Real::from_bigint(&rounded, ctx.scale())).abs();
    if residual >= Real::from_ratio(1, 2, ctx.scale()) || rounded.is_negative() {
        return Err(Error::InsufficientPrecision { required: needed + 10, available: ctx.digits() });
    }
    Ok((rounded.to_biguint().expect("checked nonnegative"), residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::RecurrenceSpec;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    fn assert_digits(got: &Real, printed: &str, label: &str) {
        // one unit in the last printed fractional digit; the sources mix
        // truncation and rounding in displayed values
        let s = got.scale();
        let frac = printed.split('.').nth(1).map(|f| f.len()).unwrap_or(0) as i64;
        let want = Real::parse(printed, s).unwrap();
        let diff = (got - &want).abs();
        let tol = Real::pow10(-frac, s);
        assert!(diff <= tol, "{label}: got {got}, want {printed} (diff {diff})");
    }

    #[test]
    fn golden_mean_values() {
        let r = golden_roots(&ctx(30));
        assert_digits(&r.eta_a, "1.61803398874989484820458683436", "eta_a");
        assert_digits(&r.eta_b, "-0.61803398874989484820458683436", "eta_b");
        // Vieta: sum 1, product -1
        let tol = ctx(30).tolerance();
        assert!((&(&r.eta_a + &r.eta_b) - &Real::one(r.eta_a.scale())).abs() <= tol);
        assert!((&(&r.eta_a * &r.eta_b) + &Real::one(r.eta_a.scale())).abs() <= tol);
    }

    #[test]
    fn plastic_closed_form_values() {
        let c = plastic_roots(&ctx(30));
        assert_digits(&c.x0, "0.9229582", "x0");
        assert_digits(&c.d_plus, "0.98699", "D+");
        assert_digits(&c.d_minus, "0.3377", "D-");
        assert_digits(&c.rho_d, "0.649264", "rho_D");
        assert_digits(&c.rho_a, "1.32471795724474602596090885447", "rho_A");
        assert_digits(&c.rho_b.abs(), "0.86883696183270930180656996419", "|rho_B|");
        assert_digits(&c.rho_b.re, "-0.662358978622373012980454427239", "Re rho_B");
        assert_digits(&c.rho_b.im, "0.562279512062301243899182144909", "Im rho_B");
        assert_digits(&c.phi, "2.09439510239319549230842892218", "phi");
        assert_eq!(c.rho_c, c.rho_b.conj());
    }

    #[test]
    fn plastic_root_satisfies_cubic() {
        let c = plastic_roots(&ctx(40));
        let s = c.rho_a.scale();
        let tol = ctx(40).tolerance();
        let resid = (&(&c.rho_a.powi(3) - &c.rho_a) - &Real::one(s)).abs();
        assert!(resid <= tol, "real root residual {resid}");
        let one = Complex::from_real(Real::one(s));
        let cresid = c.rho_b.powi(3).sub(&c.rho_b).sub(&one).abs();
        assert!(cresid <= tol, "complex root residual {cresid}");
    }

    #[test]
    fn cubic_vieta() {
        let c = plastic_roots(&ctx(30));
        let s = c.rho_a.scale();
        let tol = ctx(30).tolerance();
        // e1 = 0
        let e1 = &c.rho_a + &c.rho_b.re.mul_i64(2);
        assert!(e1.abs() <= tol);
        // e3 = rho_A |rho_B|^2 = 1
        let e3 = &c.rho_a * &c.rho_b.norm_sq();
        assert!((&e3 - &Real::one(s)).abs() <= tol);
        // e2 = 2 rho_A Re(rho_B) + |rho_B|^2 = -1
        let e2 = &(&c.rho_a * &c.rho_b.re.mul_i64(2)) + &c.rho_b.norm_sq();
        assert!((&e2 + &Real::one(s)).abs() <= tol);
    }

    #[test]
    fn quartic_printed_values() {
        let q = quartic_roots(&ctx(30)).unwrap();
        assert_digits(&q.real_roots[0], "-0.72449195900051561159", "tau real 1");
        assert_digits(&q.real_roots[1], "1.2207440846057594754", "tau real 2");
        assert_digits(&q.tau_plus.re, "-0.24812606280262193189", "Re tau+");
        assert_digits(&q.tau_plus.im, "1.0339820609759677567", "Im tau+");
        assert_digits(&q.tau_plus.abs(), "1.0633", "|tau+|");
        assert!(q.real_roots[0] < q.real_roots[1]);
        assert!(!q.tau_plus.im.is_negative());
        assert_eq!(q.tau_minus, q.tau_plus.conj());
        // the subdominance trichotomy: |tau| > 1
        let s = q.tau_plus.re.scale();
        assert!(q.tau_plus.abs() > Real::one(s));
    }

    #[test]
    fn quartic_residuals_and_vieta() {
        let cx = ctx(40);
        let q = quartic_roots(&cx).unwrap();
        let tol = cx.tolerance();
        for r in &q.real_roots {
            assert!(quartic_poly(r).abs() <= tol);
        }
        assert!(complex_quartic_residual(&q.tau_plus) <= tol);
        // e1 = 0, e4 = -1
        let s = q.tau_plus.re.scale();
        let e1 = &(&q.real_roots[0] + &q.real_roots[1]) + &q.tau_plus.re.mul_i64(2);
        assert!(e1.abs() <= tol);
        let e4 = &(&q.real_roots[0] * &q.real_roots[1]) * &q.tau_plus.norm_sq();
        assert!((&e4 + &Real::one(s)).abs() <= tol);
    }

    #[test]
    fn fib_coefficient_values() {
        let cx = ctx(30);
        let f = fib_coefficients(&cx);
        assert_digits(&f.a, "0.72360679774997896964091736687", "a");
        let s = f.a.scale();
        let sum = &f.a + &f.b;
        assert!((&sum - &Real::one(s)).abs() <= cx.tolerance(), "a + b = 1");
    }

    #[test]
    fn gib_coefficient_printed_values() {
        for method in [CoeffMethod::ClosedForm, CoeffMethod::LinearSolve] {
            let g = gib_coefficients(&ctx(30), method);
            assert_digits(&g.a_coeff, "0.72212441830311284114", "A");
            assert_digits(&g.k, "0.13893779084844357942", "K");
            assert_digits(&g.l, "0.20225012409895253966", "L");
            assert_digits(&g.sigma, "0.93349411823116565910", "Sigma");
            assert_digits(&g.delta, "0.23287913667817286432", "Delta");
        }
    }

    #[test]
    fn gib_methods_agree() {
        let cf = gib_coefficients(&ctx(30), CoeffMethod::ClosedForm);
        let ls = gib_coefficients(&ctx(30), CoeffMethod::LinearSolve);
        let tol = Real::pow10(-27, cf.a_coeff.scale());
        for (a, b, label) in [
            (&cf.a_coeff, &ls.a_coeff, "A"),
            (&cf.k, &ls.k, "K"),
            (&cf.l, &ls.l, "L"),
            (&cf.sigma, &ls.sigma, "Sigma"),
            (&cf.delta, &ls.delta, "Delta"),
        ] {
            let diff = (a - b).abs();
            assert!(diff <= tol, "{label} differs between methods by {diff}");
        }
    }

    #[test]
    fn gib_invariants() {
        let cx = ctx(30);
        let g = gib_coefficients(&cx, CoeffMethod::ClosedForm);
        let c = plastic_roots(&cx);
        let s = g.k.scale();
        let tol = cx.tolerance();
        // A = 1 - 2K
        let a_check = &Real::one(s) - &g.k.mul_i64(2);
        assert!((&a_check - &g.a_coeff).abs() <= tol);
        // Sigma D+ + Delta D- = 1
        let lhs = &(&g.sigma * &c.d_plus) + &(&g.delta * &c.d_minus);
        assert!((&lhs - &Real::one(s)).abs() <= tol);
        // 3 Sigma D-^2 + 3 Delta D+^2 = 1
        let lhs2 = &(&g.sigma * &(&c.d_minus * &c.d_minus)).mul_i64(3)
            + &(&g.delta * &(&c.d_plus * &c.d_plus)).mul_i64(3);
        assert!((&lhs2 - &Real::one(s)).abs() <= tol);
        // B, C satisfy all three boundary equations
        let b = g.b();
        let cc = g.c();
        let a = Complex::from_real(g.a_coeff.clone());
        let one = Complex::from_real(Real::one(s));
        let ra = Complex::from_real(c.rho_a.clone());
        for power in 0u64..3 {
            let lhs = a
                .mul(&ra.powi(power))
                .add(&b.mul(&c.rho_b.powi(power)))
                .add(&cc.mul(&c.rho_c.powi(power)));
            assert!(lhs.sub(&one).abs() <= tol, "boundary eq at power {power}");
        }
    }

    #[test]
    fn binet_small_values() {
        let cx = ctx(30);
        let (v, resid) = binet_eval(Family::F, 6, &cx).unwrap();
        assert_eq!(v, 13u32.into());
        assert!(resid < Real::pow10(-20, cx.scale()));
        let (v, _) = binet_eval(Family::G, 23, &cx).unwrap();
        assert_eq!(v, 465u32.into());
    }

    #[test]
    fn binet_matches_recurrence_at_large_index() {
        let cx = ctx(60);
        let g = RecurrenceSpec::gibonacci();
        let (v, _) = binet_eval(Family::G, 200, &cx).unwrap();
        assert_eq!(v, g.natural_term(200));
        let f = RecurrenceSpec::fibonacci();
        let (v, _) = binet_eval(Family::F, 200, &cx).unwrap();
        assert_eq!(v, f.natural_term(200));
    }

    #[test]
    fn binet_rejects_insufficient_precision() {
        let cx = ctx(30);
        match binet_eval(Family::F, 300, &cx) {
            Err(Error::InsufficientPrecision { .. }) => {}
            other => panic!("expected precision error, got {other:?}"),
        }
    }

    #[test]
    fn subdominance_trichotomy() {
        let cx = ctx(30);
        let s = cx.scale();
        let one = Real::one(s);
        let q2 = golden_roots(&cx);
        let q3 = plastic_roots(&cx);
        let q4 = quartic_roots(&cx).unwrap();
        assert!(q2.eta_b.abs() < one);
        assert!(q3.rho_b.abs() < one);
        assert!(one < q3.rho_a);
        assert!(one < q4.tau_plus.abs());
    }
}
