//! Piecewise-linear functions, intervals, and partitions.
//!
//! `PiecewiseLinear` is the universal concrete function representation of
//! the crate: finitely many breakpoints with strictly increasing abscissae
//! and linear interpolation in between. Evaluation at a breakpoint returns
//! its ordinate bit-exactly; jump discontinuities are unrepresentable by
//! construction, which keeps the variation algebra exact.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{argument_err, domain_err, Result};

/// Default absolute clamp tolerance for endpoint evaluation; mirrors
/// `ToleranceConfig::default().eq_tol`.
pub const DEFAULT_CLAMP_TOL: f64 = 1e-9;

/// A closed interval `[a, b]` with `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return argument_err("interval endpoints must be finite");
        }
        if a > b {
            return argument_err(format!("interval endpoints out of order: [{a}, {b}]"));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.a, self.b).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (a, b) = <(f64, f64)>::deserialize(deserializer)?;
        Interval::new(a, b).map_err(D::Error::custom)
    }
}

/// A real function on a closed interval given by finitely many breakpoints
/// with linear interpolation in between.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(try_from = "PwlRepr")]
pub struct PiecewiseLinear {
    breakpoints: Vec<(f64, f64)>,
}

#[derive(Deserialize)]
struct PwlRepr {
    breakpoints: Vec<(f64, f64)>,
}

impl TryFrom<PwlRepr> for PiecewiseLinear {
    type Error = crate::error::Error;

    fn try_from(raw: PwlRepr) -> Result<Self> {
        PiecewiseLinear::new(raw.breakpoints)
    }
}

impl PiecewiseLinear {
    /// Builds a function from breakpoints, validating strict x-ordering and
    /// finiteness. At least two breakpoints are required.
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return argument_err("a piecewise-linear function needs at least 2 breakpoints");
        }
        for &(x, y) in &breakpoints {
            if !x.is_finite() || !y.is_finite() {
                return argument_err("breakpoints must be finite");
            }
        }
        for pair in breakpoints.windows(2) {
            if pair[0].0 >= pair[1].0 {
                return argument_err(format!(
                    "breakpoint x-coordinates must be strictly increasing: {} then {}",
                    pair[0].0, pair[1].0
                ));
            }
        }
        Ok(Self { breakpoints })
    }

    /// The constant function `c` on `interval`.
    pub fn constant(interval: Interval, c: f64) -> Result<Self> {
        if interval.length() == 0.0 {
            return argument_err("constant function needs an interval of positive length");
        }
        Self::new(vec![(interval.a(), c), (interval.b(), c)])
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    pub fn domain(&self) -> Interval {
        Interval {
            a: self.breakpoints[0].0,
            b: self.breakpoints[self.breakpoints.len() - 1].0,
        }
    }

    /// Index `i` of the segment `[x_i, x_{i+1}]` containing `x`; `x` must be
    /// inside the domain. Breakpoint hits resolve to the segment starting
    /// there (the last segment for the right endpoint).
    pub(crate) fn segment_index(&self, x: f64) -> usize {
        match self
            .breakpoints
            .binary_search_by(|&(bx, _)| bx.total_cmp(&x))
        {
            Ok(i) => i.min(self.breakpoints.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.breakpoints.len() - 2),
        }
    }

    /// Evaluates at `x`, clamping to the endpoint when `x` lies within
    /// `DEFAULT_CLAMP_TOL` outside the domain.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_tol(x, DEFAULT_CLAMP_TOL)
    }

    /// Evaluates at `x` with an explicit clamp tolerance: inputs within
    /// `clamp_tol` outside the domain snap to the nearest endpoint, anything
    /// farther is a domain error. Evaluation at a breakpoint returns its
    /// ordinate bit-exactly.
    pub fn eval_tol(&self, x: f64, clamp_tol: f64) -> Result<f64> {
        let dom = self.domain();
        if !x.is_finite() {
            return domain_err("evaluation point must be finite");
        }
        if x < dom.a {
            if dom.a - x <= clamp_tol {
                return Ok(self.breakpoints[0].1);
            }
            return domain_err(format!("{x} lies below the domain [{}, {}]", dom.a, dom.b));
        }
        if x > dom.b {
            if x - dom.b <= clamp_tol {
                return Ok(self.breakpoints[self.breakpoints.len() - 1].1);
            }
            return domain_err(format!("{x} lies above the domain [{}, {}]", dom.a, dom.b));
        }
        Ok(self.eval_in_domain(x))
    }

    /// Evaluation for callers that already guarantee `x` is inside the
    /// domain (clamps the segment lookup, never panics).
    pub(crate) fn eval_in_domain(&self, x: f64) -> f64 {
        let i = self.segment_index(x);
        let (x0, y0) = self.breakpoints[i];
        let (x1, y1) = self.breakpoints[i + 1];
        if x == x0 {
            return y0;
        }
        if x == x1 {
            return y1;
        }
        let lam = (x - x0) / (x1 - x0);
        y0 + lam * (y1 - y0)
    }

    /// Segment slopes, one per breakpoint pair.
    pub fn slopes(&self) -> impl Iterator<Item = f64> + '_ {
        self.breakpoints
            .windows(2)
            .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
    }

    /// CSV serialization: header `x,y`, one row per breakpoint in
    /// increasing x. Floats print in shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for &(x, y) in &self.breakpoints {
            out.push_str(&format!("{x},{y}\n"));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(header) if header.trim() == "x,y" => {}
            _ => return argument_err("CSV must start with the header `x,y`"),
        }
        let mut breakpoints = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (xs, ys) = line
                .split_once(',')
                .ok_or_else(|| crate::error::Error::Argument(format!(
                    "CSV row {} is not `x,y`: {line:?}",
                    lineno + 2
                )))?;
            let x: f64 = xs.trim().parse().map_err(|_| {
                crate::error::Error::Argument(format!("bad x value in CSV row {}", lineno + 2))
            })?;
            let y: f64 = ys.trim().parse().map_err(|_| {
                crate::error::Error::Argument(format!("bad y value in CSV row {}", lineno + 2))
            })?;
            breakpoints.push((x, y));
        }
        Self::new(breakpoints)
    }
}

/// A finite non-decreasing sequence of points spanning an interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Partition {
    points: Vec<f64>,
}

impl Partition {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return argument_err("a partition needs at least 2 points");
        }
        if points.iter().any(|p| !p.is_finite()) {
            return argument_err("partition points must be finite");
        }
        if points.windows(2).any(|w| w[0] > w[1]) {
            return argument_err("partition points must be non-decreasing");
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn interval(&self) -> Interval {
        Interval {
            a: self.points[0],
            b: self.points[self.points.len() - 1],
        }
    }

    /// The refinement containing this partition's points plus `extra`
    /// (extra points outside the span are ignored).
    pub fn refine_with(&self, extra: &[f64]) -> Partition {
        let iv = self.interval();
        let mut points = self.points.clone();
        points.extend(extra.iter().copied().filter(|x| iv.contains(*x)));
        points.sort_by(f64::total_cmp);
        Partition { points }
    }
}

/// `n + 1` evenly spaced points from `a` to `b` with exact endpoints.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1 && a <= b);
    let mut grid: Vec<f64> = (0..=n).map(|i| a + (b - a) * (i as f64 / n as f64)).collect();
    grid[0] = a;
    grid[n] = b;
    grid
}
