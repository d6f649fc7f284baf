//! Sato-Tate statistics for the family `y^2 = x^3 + ax + b` over `F_q`:
//! interval counts `N_I(q)`, the Sato-Tate measure, the Beurling-Selberg
//! sandwich around `N_I(q)`, discrepancy tables and the even moments of the
//! character sums.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::{binomial, Roots};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::beurling::{selberg, IntervalJ, SelbergPolynomial, Sign};
use crate::curves::{character_sum, trace_angle, trace_histogram, HistogramMode, TraceHistogram};
use crate::error::{Error, Result};
use crate::ff::FieldContext;
use crate::traceformula::{curve_cheb_moments, scaled_to_f64};

/// Frozen bound on `|N_I - mu_ST(I) q^2| / q^{7/4}` over the regression grid.
pub const DISCREPANCY_CONSTANT: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoints {
    /// `[alpha, beta]`
    Closed,
    /// `[alpha, beta)`
    HalfOpen,
}

/// An interval of angles inside `[0, pi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleInterval {
    pub alpha: f64,
    pub beta: f64,
    pub endpoints: Endpoints,
}

impl AngleInterval {
    pub fn new(alpha: f64, beta: f64, endpoints: Endpoints) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && 0.0 <= alpha && alpha < beta && beta <= PI) {
            return Err(Error::InvalidInterval { alpha, beta });
        }
        Ok(AngleInterval { alpha, beta, endpoints })
    }

    pub fn closed(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, Endpoints::Closed)
    }

    pub fn half_open(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, Endpoints::HalfOpen)
    }

    pub fn contains(&self, theta: f64) -> bool {
        match self.endpoints {
            Endpoints::Closed => self.alpha <= theta && theta <= self.beta,
            Endpoints::HalfOpen => self.alpha <= theta && theta < self.beta,
        }
    }

    /// `I / (2 pi)` as an interval of `R/Z`.
    pub fn to_unit(&self) -> IntervalJ {
        IntervalJ::new(self.alpha / (2.0 * PI), self.beta / (2.0 * PI))
            .expect("subinterval of [0, 1/2]")
    }
}

/// `n` cells of width `pi / n`; all half-open except the last, which is
/// closed so the cells partition `[0, pi]`.
pub fn interval_grid(n: usize) -> Vec<AngleInterval> {
    (0..n)
        .map(|i| {
            let alpha = PI * i as f64 / n as f64;
            let beta = if i + 1 == n { PI } else { PI * (i + 1) as f64 / n as f64 };
            let endpoints = if i + 1 == n { Endpoints::Closed } else { Endpoints::HalfOpen };
            AngleInterval::new(alpha, beta, endpoints).expect("grid cell")
        })
        .collect()
}

/// `(2/pi) int_I sin^2`, in closed form.
pub fn mu_st(i: &AngleInterval) -> f64 {
    ((i.beta - i.alpha) - ((2.0 * i.beta).sin() - (2.0 * i.alpha).sin()) / 2.0) / PI
}

/// `N_I` read off a trace histogram.
pub fn count_in_histogram(hist: &TraceHistogram, i: &AngleInterval) -> u64 {
    hist.iter()
        .filter(|&(t, c)| c > 0 && i.contains(trace_angle(t, hist.q())))
        .map(|(_, c)| c)
        .sum()
}

/// Number of nonsingular `(a, b)` with `theta_{a,b}` in `I`.
pub fn count_ni(ctx: &FieldContext, i: &AngleInterval, mode: HistogramMode) -> u64 {
    count_in_histogram(&trace_histogram(ctx, mode), i)
}

/// Lower and upper Beurling-Selberg bounds for `N_I`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sandwich {
    pub degree: usize,
    pub lower: f64,
    pub upper: f64,
    /// `2 S(0) - (S(2) + S(-2))` for the minorant and majorant.
    pub main_lower: f64,
    pub main_upper: f64,
}

/// Evaluates
///
/// ```text
/// sum_{a,b} [S(theta/2pi) + S(-theta/2pi)]
///   = n (2 S(0) - P_2) + P_1 C_1 + P_2 C_2 + sum_{3 <= m <= M} P_m (C_m - C_{m-2})
/// ```
///
/// where `P_m = S(m) + S(-m)`, `C_m = sum_{a,b} U_m(cos theta)` and `n` is
/// the number of nonsingular pairs, for the majorant and the minorant of
/// `J = I / 2pi`. Curves with `theta` in `{0, pi}` are seen by both
/// `S(theta/2pi)` and `S(-theta/2pi)`; the minorant side subtracts them once.
pub fn sandwich(hist: &TraceHistogram, i: &AngleInterval, degree: usize) -> Result<Sandwich> {
    if degree < 3 {
        return Err(Error::DegreeTooSmall { got: degree, min: 3 });
    }
    let j = i.to_unit();
    let q = hist.q();
    let n = hist.total() as f64;
    let moments: Vec<f64> = curve_cheb_moments(hist, degree as u32)
        .iter()
        .enumerate()
        .map(|(m, c)| scaled_to_f64(c, q, m as u32))
        .collect();

    let evaluate = |s: &SelbergPolynomial| -> (f64, f64) {
        let p = |m: usize| s.paired_coeff(m as i64).expect("m <= degree");
        let main = 2.0 * s.coeff(0).re - p(2);
        let mut total = n * main + p(1) * moments[1] + p(2) * moments[2];
        for m in 3..=degree {
            total += p(m) * (moments[m] - moments[m - 2]);
        }
        (main, total)
    };
    let (main_upper, upper) = evaluate(&selberg(j, degree, Sign::Majorant)?);
    let (main_lower, lower) = evaluate(&selberg(j, degree, Sign::Minorant)?);

    let root = q.sqrt();
    let boundary: u64 = if root * root == q {
        [2 * root as i64, -2 * root as i64]
            .into_iter()
            .filter(|&t| i.contains(trace_angle(t, q)))
            .map(|t| hist.count(t))
            .sum()
    } else {
        0
    };

    Ok(Sandwich {
        degree,
        lower: lower - boundary as f64,
        upper,
        main_lower,
        main_upper,
    })
}

/// `floor(q^{1/4})`, the default sandwich degree.
pub fn default_degree(q: u64) -> usize {
    q.sqrt().sqrt() as usize
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyRow {
    pub q: u64,
    pub alpha: f64,
    pub beta: f64,
    pub n_i: u64,
    pub main: f64,
    pub diff: f64,
    pub normalized: f64,
}

pub fn discrepancy_row(hist: &TraceHistogram, i: &AngleInterval) -> DiscrepancyRow {
    let q = hist.q();
    let n_i = count_in_histogram(hist, i);
    let main = mu_st(i) * (q as f64).powi(2);
    let diff = n_i as f64 - main;
    DiscrepancyRow {
        q,
        alpha: i.alpha,
        beta: i.beta,
        n_i,
        main,
        diff,
        normalized: diff / (q as f64).powf(1.75),
    }
}

/// One row per `(q, I)`, ordered by `q`, then `alpha`, then `beta`.
pub fn discrepancy_table(q_list: &[u64], grid: &[AngleInterval]) -> Result<Vec<DiscrepancyRow>> {
    let mut qs = q_list.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let contexts = qs
        .iter()
        .map(|&q| FieldContext::with_order(q))
        .collect::<Result<Vec<_>>>()?;
    let per_q: Vec<Vec<DiscrepancyRow>> = contexts
        .par_iter()
        .map(|ctx| {
            let hist = trace_histogram(ctx, HistogramMode::default_for(ctx.q()));
            let mut rows: Vec<DiscrepancyRow> =
                grid.iter().map(|i| discrepancy_row(&hist, i)).collect();
            rows.sort_by(|x, y| {
                x.alpha
                    .total_cmp(&y.alpha)
                    .then(x.beta.total_cmp(&y.beta))
            });
            rows
        })
        .collect();
    Ok(per_q.into_iter().flatten().collect())
}

/// Least-squares slope of `log |diff|` against `log q`; rows with zero
/// difference are skipped.
pub fn exponent_fit(points: &[(u64, f64)]) -> Result<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, d)| *d != 0.0)
        .map(|&(q, d)| ((q as f64).ln(), d.abs().ln()))
        .collect();
    if usable.len() < 3 {
        return Err(Error::TooFewPoints {
            got: usable.len(),
            need: 3,
        });
    }
    let n = usable.len() as f64;
    let mean_x = usable.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = usable.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = usable.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let sxx: f64 = usable.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::TooFewPoints { got: 1, need: 3 });
    }
    Ok(sxy / sxx)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentSum {
    pub order: u32,
    pub q: u64,
    /// `sum_{all a,b} (sum_x chi(x^3 + ax + b))^{2R}`.
    pub value: BigInt,
    /// `value / (C(2R, R) / (R + 1) q^{R+2})`.
    pub ratio: f64,
}

/// Even moments over all `q^2` pairs, singular ones included. The singular
/// pairs are exactly `(-3c^2, 2c^3)`, `c` in `F_q`.
pub fn moment_sum(ctx: &FieldContext, hist: &TraceHistogram, order: u32) -> Result<MomentSum> {
    if order > 5 {
        return Err(Error::MomentOrder(order));
    }
    assert_eq!(ctx.q(), hist.q(), "histogram belongs to a different field");
    let q = ctx.q();
    let e = 2 * order;
    let mut value: BigInt = hist
        .iter()
        .map(|(t, c)| BigInt::from(t).pow(e) * c)
        .sum();
    let (minus3, two) = (ctx.from_int(-3), ctx.from_int(2));
    for c in ctx.elements() {
        let c2 = ctx.square(c);
        let a = ctx.mul(minus3, c2);
        let b = ctx.mul(two, ctx.mul(c2, c));
        value += BigInt::from(character_sum(ctx, a, b)).pow(e);
    }
    let catalan = binomial(BigInt::from(2 * order), BigInt::from(order)) / BigInt::from(order + 1);
    let predicted = catalan * BigInt::from(q).pow(order + 2);
    let ratio = BigRational::new(value.clone(), predicted)
        .to_f64()
        .expect("finite");
    Ok(MomentSum { order, q, value, ratio })
}
