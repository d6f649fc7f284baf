//! Exact experiments on the Sato-Tate distribution of the family
//! `y^2 = x^3 + ax + b` over finite fields `F_q`, `q = p^r`, `p >= 5`.
//!
//! - [`ff`]: arithmetic in `F_q` and its quadratic character
//! - [`curves`]: point counts, trace histograms, automorphisms and orbits
//! - [`classnumber`]: Hurwitz class numbers from reduced forms
//! - [`chebyshev`]: `U_n` and the exact sequence `w_j(t, q)`
//! - [`beurling`]: Beurling-Selberg majorants and minorants
//! - [`modforms`]: Hecke traces from q-expansions (independent oracle)
//! - [`traceformula`]: the Eichler-Selberg trace formula and its class-number sums
//! - [`satotate`]: `N_I(q)`, `mu_ST`, the sandwich bound, discrepancy and moments

pub mod beurling;
pub mod chebyshev;
pub mod classnumber;
pub mod curves;
pub mod error;
pub mod ff;
pub mod modforms;
pub mod satotate;
pub mod traceformula;

pub use beurling::{chi_hat, selberg, IntervalJ, SelbergPolynomial, Sign};
pub use classnumber::{hurwitz, reduced_forms, HurwitzValue, QuadForm};
pub use curves::{
    trace_histogram, verify_deuring, Curve, CurveParams, DeuringReport, HistogramMode,
    PointCount, TraceHistogram,
};
pub use error::{Error, Result};
pub use ff::{FieldContext, FieldElement};
pub use modforms::{miller_basis, trace_tk_mf, CuspBasis, PowerSeries};
pub use satotate::{
    count_ni, discrepancy_table, mu_st, sandwich, AngleInterval, DiscrepancyRow, Endpoints,
    MomentSum, Sandwich,
};
pub use traceformula::{trace_tk_es, EsBreakdown};
