//! Short Weierstrass curves `y^2 = x^3 + ax + b` over `F_q`: point counts,
//! trace histograms, automorphism groups and isomorphism orbits.

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::ops::AddAssign;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use rayon::prelude::*;

use crate::classnumber::hurwitz;
use crate::error::{Error, Result};
use crate::ff::{FieldContext, FieldElement};

/// Above this field size the default histogram mode is [`HistogramMode::Orbit`].
pub const ORBIT_MODE_THRESHOLD: u64 = 200;

/// The coefficient pair `(a, b)` of `y^2 = x^3 + ax + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Curve {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl Curve {
    pub fn new(a: FieldElement, b: FieldElement) -> Self {
        Curve { a, b }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointCount {
    /// `#E(F_q)`, point at infinity included.
    pub count: u64,
    /// `q + 1 - #E(F_q)`.
    pub trace: i64,
}

/// A nonsingular curve together with its trace of Frobenius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveParams {
    pub curve: Curve,
    pub q: u64,
    pub trace: i64,
}

impl CurveParams {
    pub fn new(ctx: &FieldContext, a: FieldElement, b: FieldElement) -> Result<Self> {
        let PointCount { trace, .. } = point_count(ctx, a, b)?;
        Ok(CurveParams {
            curve: Curve::new(a, b),
            q: ctx.q(),
            trace,
        })
    }

    /// `theta` in `[0, pi]` with `2 sqrt(q) cos(theta) = trace`.
    pub fn angle(&self) -> f64 {
        trace_angle(self.trace, self.q)
    }
}

/// `theta_t = arccos(t / (2 sqrt q))`.
pub fn trace_angle(t: i64, q: u64) -> f64 {
    (t as f64 / (2.0 * (q as f64).sqrt())).clamp(-1.0, 1.0).acos()
}

/// `floor(2 sqrt q)`, the Hasse bound on `|t|`.
pub fn trace_bound(q: u64) -> i64 {
    (4 * q).sqrt() as i64
}

/// `4a^3 + 27b^2 != 0`.
pub fn discriminant_nonzero(ctx: &FieldContext, a: FieldElement, b: FieldElement) -> bool {
    let a3 = ctx.mul(ctx.square(a), a);
    let lhs = ctx.mul(ctx.from_int(4), a3);
    let rhs = ctx.mul(ctx.from_int(27), ctx.square(b));
    !ctx.add(lhs, rhs).is_zero()
}

pub fn point_count(ctx: &FieldContext, a: FieldElement, b: FieldElement) -> Result<PointCount> {
    if !discriminant_nonzero(ctx, a, b) {
        return Err(Error::SingularCurve);
    }
    let sum = character_sum(ctx, a, b);
    Ok(PointCount {
        count: (ctx.q() as i64 + 1 + sum) as u64,
        trace: -sum,
    })
}

/// `sum_x chi(x^3 + ax + b)`, defined for singular curves as well.
pub fn character_sum(ctx: &FieldContext, a: FieldElement, b: FieldElement) -> i64 {
    ctx.elements()
        .map(|x| {
            let rhs = ctx.add(ctx.mul(ctx.add(ctx.square(x), a), x), b);
            ctx.quad_char(rhs) as i64
        })
        .sum()
}

/// Exact number of nonsingular pairs `(a, b)` for each trace `|t| <= floor(2 sqrt q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceHistogram {
    q: u64,
    bound: i64,
    counts: Vec<u64>,
}

impl TraceHistogram {
    pub fn empty(q: u64) -> Self {
        let bound = trace_bound(q);
        TraceHistogram {
            q,
            bound,
            counts: vec![0; 2 * bound as usize + 1],
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn count(&self, t: i64) -> u64 {
        if t.abs() > self.bound {
            0
        } else {
            self.counts[(t + self.bound) as usize]
        }
    }

    /// Adds `weight` curves of trace `t`.
    ///
    /// Panics if `t` violates the Hasse bound.
    pub fn record(&mut self, t: i64, weight: u64) {
        assert!(t.abs() <= self.bound, "trace {t} violates the Hasse bound for q = {}", self.q);
        self.counts[(t + self.bound) as usize] += weight;
    }

    /// `(t, count)` pairs in ascending `t`, zero counts included.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - self.bound, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// CSV with header `q,t,count`, one row per `t` in ascending order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "q,t,count")?;
        for (t, c) in self.iter() {
            writeln!(w, "{},{},{}", self.q, t, c)?;
        }
        Ok(())
    }
}

impl AddAssign<&TraceHistogram> for TraceHistogram {
    fn add_assign(&mut self, other: &TraceHistogram) {
        assert_eq!(self.q, other.q, "cannot merge histograms for different fields");
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HistogramMode {
    /// Every pair `(a, b)` point-counted directly.
    Brute,
    /// One point count per isomorphism class, weighted by orbit size.
    Orbit,
}

impl HistogramMode {
    pub fn default_for(q: u64) -> Self {
        if q > ORBIT_MODE_THRESHOLD {
            HistogramMode::Orbit
        } else {
            HistogramMode::Brute
        }
    }
}

pub fn trace_histogram(ctx: &FieldContext, mode: HistogramMode) -> TraceHistogram {
    match mode {
        HistogramMode::Brute => brute_histogram(ctx),
        HistogramMode::Orbit => orbit_histogram(ctx),
    }
}

/// Histogram restricted to `a` in one shard; shards merge by addition.
pub fn brute_histogram_shard(ctx: &FieldContext, a: FieldElement) -> TraceHistogram {
    let q = ctx.q();
    let mut hist = TraceHistogram::empty(q);
    // f[x] = x^3 + a x
    let f: Vec<u32> = ctx
        .elements()
        .map(|x| ctx.mul(ctx.add(ctx.square(x), a), x).index())
        .collect();
    let four_a3 = ctx.mul(ctx.from_int(4), ctx.mul(ctx.square(a), a));
    let twenty_seven = ctx.from_int(27);
    let chi = ctx.character_slice();
    // chi over 0..2p so prime-field addition needs no reduction
    let chi2: Vec<i8> = if ctx.r() == 1 {
        chi.iter().chain(chi.iter()).copied().collect()
    } else {
        Vec::new()
    };
    for b in ctx.elements() {
        let disc = ctx.add(four_a3, ctx.mul(twenty_seven, ctx.square(b)));
        if disc.is_zero() {
            continue;
        }
        let sum: i64 = if ctx.r() == 1 {
            let b = b.index() as usize;
            f.iter().map(|&v| chi2[v as usize + b] as i64).sum()
        } else {
            f.iter()
                .map(|&v| {
                    let v = ctx.element(v).expect("index from this field");
                    chi[ctx.add(v, b).index() as usize] as i64
                })
                .sum()
        };
        hist.record(-sum, 1);
    }
    hist
}

fn brute_histogram(ctx: &FieldContext) -> TraceHistogram {
    let shards: Vec<FieldElement> = ctx.elements().collect();
    shards
        .par_iter()
        .map(|&a| brute_histogram_shard(ctx, a))
        .reduce(
            || TraceHistogram::empty(ctx.q()),
            |mut acc, h| {
                acc += &h;
                acc
            },
        )
}

fn trace_unchecked(ctx: &FieldContext, a: FieldElement, b: FieldElement) -> i64 {
    -character_sum(ctx, a, b)
}

/// Isomorphism classes are visited through representatives: every orbit with
/// `a != 0` meets `{g^i} x F_q` for exactly one `i < gcd(4, q-1)`, inside the
/// set `{(g^i, b), (g^i, -b)}`; orbits with `a = 0` are the cosets of sixth powers.
fn orbit_histogram(ctx: &FieldContext) -> TraceHistogram {
    let q = ctx.q();
    let g = ctx.generator();
    let d4 = 4u64.gcd(&(q - 1));
    let d6 = 6u64.gcd(&(q - 1));

    let mut reps: Vec<(Curve, u64)> = Vec::new();
    for i in 0..d6 {
        reps.push((Curve::new(ctx.zero(), ctx.pow(g, i)), (q - 1) / d6));
    }
    for i in 0..d4 {
        let a = ctx.pow(g, i);
        reps.push((Curve::new(a, ctx.zero()), (q - 1) / d4));
        for b in ctx.units() {
            if d4 == 4 && ctx.neg(b) < b {
                continue;
            }
            if discriminant_nonzero(ctx, a, b) {
                reps.push((Curve::new(a, b), (q - 1) / 2));
            }
        }
    }

    reps.par_chunks(64)
        .map(|chunk| {
            let mut hist = TraceHistogram::empty(q);
            for &(c, weight) in chunk {
                hist.record(trace_unchecked(ctx, c.a, c.b), weight);
            }
            hist
        })
        .reduce(
            || TraceHistogram::empty(q),
            |mut acc, h| {
                acc += &h;
                acc
            },
        )
}

/// `#{u in F_q^* : u^4 a = a, u^6 b = b}`, by direct count.
pub fn aut_size(ctx: &FieldContext, a: FieldElement, b: FieldElement) -> Result<u32> {
    if !discriminant_nonzero(ctx, a, b) {
        return Err(Error::SingularCurve);
    }
    Ok(ctx
        .units()
        .filter(|&u| {
            let u2 = ctx.square(u);
            let u4 = ctx.square(u2);
            let u6 = ctx.mul(u4, u2);
            ctx.mul(u4, a) == a && ctx.mul(u6, b) == b
        })
        .count() as u32)
}

/// `#Aut` from the shape of `(a, b)`: `gcd(4, q-1)` when `b = 0`,
/// `gcd(6, q-1)` when `a = 0`, and 2 otherwise.
pub fn aut_size_closed_form(q: u64, a: FieldElement, b: FieldElement) -> u32 {
    if b.is_zero() {
        4u64.gcd(&(q - 1)) as u32
    } else if a.is_zero() {
        6u64.gcd(&(q - 1)) as u32
    } else {
        2
    }
}

/// `{(u^4 a, u^6 b) : u in F_q^*}`, sorted.
pub fn orbit(ctx: &FieldContext, a: FieldElement, b: FieldElement) -> Result<Vec<Curve>> {
    if !discriminant_nonzero(ctx, a, b) {
        return Err(Error::SingularCurve);
    }
    let set: BTreeSet<Curve> = ctx
        .units()
        .map(|u| {
            let u2 = ctx.square(u);
            let u4 = ctx.square(u2);
            Curve::new(ctx.mul(u4, a), ctx.mul(ctx.mul(u4, u2), b))
        })
        .collect();
    Ok(set.into_iter().collect())
}

/// One trace value compared against `(q - 1) H(4q - t^2) / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeuringRow {
    pub t: i64,
    pub count: u64,
    pub twelve_h: i64,
    pub expected: Ratio<i64>,
    /// `gcd(t, p) = 1`; other rows are informational.
    pub asserted: bool,
}

impl DeuringRow {
    pub fn matches(&self) -> bool {
        Ratio::from_integer(self.count as i64) == self.expected
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeuringReport {
    pub q: u64,
    pub rows: Vec<DeuringRow>,
}

impl DeuringReport {
    /// True when every asserted row matches.
    pub fn passed(&self) -> bool {
        self.rows.iter().filter(|r| r.asserted).all(DeuringRow::matches)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DeuringRow> {
        self.rows.iter().filter(|r| r.asserted && !r.matches())
    }
}

/// Compares each `counts[t]`, `t^2 < 4q`, with the weighted class count
/// `(q - 1) H(4q - t^2) / 2`.
///
/// Only rows with `gcd(t, p) = 1` are asserted.
pub fn verify_deuring(ctx: &FieldContext, hist: &TraceHistogram) -> DeuringReport {
    let q = ctx.q() as i64;
    let p = ctx.p() as i64;
    let rows = hist
        .iter()
        .filter(|&(t, _)| t * t < 4 * q)
        .map(|(t, count)| {
            let twelve_h = hurwitz(4 * q - t * t).expect("positive argument").twelve_h;
            DeuringRow {
                t,
                count,
                twelve_h,
                expected: Ratio::new((q - 1) * twelve_h, 24),
                asserted: t.gcd(&p) == 1,
            }
        })
        .collect();
    DeuringReport { q: ctx.q(), rows }
}
