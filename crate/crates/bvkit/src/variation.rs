//! Exact total-variation algebra on piecewise-linear functions.
//!
//! For a piecewise-linear function the supremum over partitions is attained
//! once every breakpoint is included, so total variation reduces to the sum
//! of absolute segment increments. Cut points interpolate exactly before
//! summing, which keeps the additivity and refinement identities at the
//! 1e-12 level. All segment sums run left to right through `KahanSum`.

use crate::error::{argument_err, domain_err, Result};
use crate::kahan::KahanSum;
use crate::pwl::{Partition, PiecewiseLinear, DEFAULT_CLAMP_TOL};

/// A parent function together with its variation function on the same
/// domain: `profile(x) = var(f; a, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationProfile {
    parent: PiecewiseLinear,
    profile: PiecewiseLinear,
}

impl VariationProfile {
    pub fn parent(&self) -> &PiecewiseLinear {
        &self.parent
    }

    pub fn profile(&self) -> &PiecewiseLinear {
        &self.profile
    }

    pub fn into_profile(self) -> PiecewiseLinear {
        self.profile
    }
}

/// `Σ |f(x_i) − f(x_{i−1})|` over the partition points.
pub fn variation_over_partition(f: &PiecewiseLinear, p: &Partition) -> Result<f64> {
    let dom = f.domain();
    let iv = p.interval();
    if iv.a() < dom.a() - DEFAULT_CLAMP_TOL || iv.b() > dom.b() + DEFAULT_CLAMP_TOL {
        return domain_err(format!(
            "partition [{}, {}] leaves the domain [{}, {}]",
            iv.a(),
            iv.b(),
            dom.a(),
            dom.b()
        ));
    }
    let mut acc = KahanSum::new();
    let mut prev = f.eval(p.points()[0])?;
    for &x in &p.points()[1..] {
        let y = f.eval(x)?;
        acc.add((y - prev).abs());
        prev = y;
    }
    Ok(acc.value())
}

/// Exact total variation of `f` over `[a, b] ⊆ domain`: the sum of `|Δy|`
/// over the segments intersected with `[a, b]`, with the cut points
/// interpolated exactly.
pub fn total_variation(f: &PiecewiseLinear, a: f64, b: f64) -> Result<f64> {
    let dom = f.domain();
    if !(a.is_finite() && b.is_finite()) || a > b {
        return domain_err(format!("invalid subinterval [{a}, {b}]"));
    }
    let a = clamp_into(a, dom.a(), dom.b())?;
    let b = clamp_into(b, dom.a(), dom.b())?;
    if a >= b {
        return Ok(0.0);
    }
    let bps = f.breakpoints();
    // First breakpoint strictly above a; last strictly below b.
    let i0 = bps.partition_point(|&(x, _)| x <= a);
    let i1 = bps.partition_point(|&(x, _)| x < b);
    let mut acc = KahanSum::new();
    let mut prev = f.eval_in_domain(a);
    for &(_, y) in &bps[i0..i1] {
        acc.add((y - prev).abs());
        prev = y;
    }
    acc.add((f.eval_in_domain(b) - prev).abs());
    Ok(acc.value())
}

fn clamp_into(x: f64, lo: f64, hi: f64) -> Result<f64> {
    if x < lo {
        if lo - x > DEFAULT_CLAMP_TOL {
            return domain_err(format!("{x} lies below the domain [{lo}, {hi}]"));
        }
        return Ok(lo);
    }
    if x > hi {
        if x - hi > DEFAULT_CLAMP_TOL {
            return domain_err(format!("{x} lies above the domain [{lo}, {hi}]"));
        }
        return Ok(hi);
    }
    Ok(x)
}

/// The variation function `var_f(x) = var(f; a, x)` as a piecewise-linear
/// profile on the parent's breakpoints. Each profile segment's slope is the
/// absolute value of the parent's slope and `profile(a) = 0`.
pub fn variation_function(f: &PiecewiseLinear) -> VariationProfile {
    let bps = f.breakpoints();
    let mut acc = KahanSum::new();
    let mut points = Vec::with_capacity(bps.len());
    points.push((bps[0].0, 0.0));
    for w in bps.windows(2) {
        acc.add((w[1].1 - w[0].1).abs());
        points.push((w[1].0, acc.value()));
    }
    let profile = PiecewiseLinear::new(points).expect("profile inherits valid abscissae");
    VariationProfile {
        parent: f.clone(),
        profile,
    }
}

/// Splits `var(f; a, b)` along a strictly decreasing sequence
/// `b = z_0 > z_1 > …` inside the domain: returns
/// `Σ_n var(f; z_{n+1}, z_n) + var(f; a, z_last)`.
///
/// For piecewise-linear `f` this telescopes to `var(f; a, b)` exactly
/// (up to summation rounding). `z[0]` must equal the right endpoint.
pub fn tail_variation_sum(f: &PiecewiseLinear, z: &[f64]) -> Result<f64> {
    let dom = f.domain();
    if z.is_empty() {
        return argument_err("tail sequence must be non-empty");
    }
    if z[0] != dom.b() {
        return argument_err(format!(
            "tail sequence must start at the right endpoint {} (got {})",
            dom.b(),
            z[0]
        ));
    }
    if z.windows(2).any(|w| w[0] <= w[1]) {
        return argument_err("tail sequence must be strictly decreasing");
    }
    let last = *z.last().unwrap();
    if last < dom.a() - DEFAULT_CLAMP_TOL {
        return domain_err("tail sequence leaves the domain");
    }
    let mut acc = KahanSum::new();
    for w in z.windows(2) {
        acc.add(total_variation(f, w[1], w[0])?);
    }
    acc.add(total_variation(f, dom.a(), last)?);
    Ok(acc.value())
}

/// Maximum absolute segment slope; the best Lipschitz constant of `f`.
pub fn lipschitz_constant(f: &PiecewiseLinear) -> f64 {
    f.slopes().map(f64::abs).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pwl(points: &[(f64, f64)]) -> PiecewiseLinear {
        PiecewiseLinear::new(points.to_vec()).unwrap()
    }

    fn tent() -> PiecewiseLinear {
        pwl(&[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)])
    }

    fn identity() -> PiecewiseLinear {
        pwl(&[(0.0, 0.0), (1.0, 1.0)])
    }

    #[test]
    fn partition_sum_telescopes_for_monotone_functions() {
        let p = Partition::new(vec![0.0, 0.5, 1.0]).unwrap();
        assert_eq!(variation_over_partition(&identity(), &p).unwrap(), 1.0);
    }

    #[test]
    fn partition_sum_misses_oscillation_without_the_peak() {
        let p = Partition::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(variation_over_partition(&tent(), &p).unwrap(), 0.0);
        let p = Partition::new(vec![0.0, 0.5, 1.0]).unwrap();
        assert_eq!(variation_over_partition(&tent(), &p).unwrap(), 2.0);
    }

    #[test]
    fn partition_outside_domain_is_rejected() {
        let p = Partition::new(vec![-1.0, 0.5]).unwrap();
        assert!(variation_over_partition(&tent(), &p).is_err());
    }

    #[test]
    fn total_variation_of_constant_is_zero() {
        let c = pwl(&[(0.0, 0.7), (1.0, 0.7)]);
        assert_eq!(total_variation(&c, 0.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn total_variation_of_tent_is_two() {
        assert_eq!(total_variation(&tent(), 0.0, 1.0).unwrap(), 2.0);
        // Subinterval splitting the peak segment interpolates the cut.
        assert_eq!(total_variation(&tent(), 0.25, 0.75).unwrap(), 1.0);
    }

    #[test]
    fn total_variation_rejects_bad_subintervals() {
        assert!(total_variation(&tent(), 0.5, 0.2).is_err());
        assert!(total_variation(&tent(), -0.5, 0.5).is_err());
        assert!(total_variation(&tent(), 0.0, 1.5).is_err());
        assert_eq!(total_variation(&tent(), 0.3, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn profile_of_identity_is_identity() {
        let vp = variation_function(&identity());
        assert_eq!(vp.profile().breakpoints(), &[(0.0, 0.0), (1.0, 1.0)]);
    }

    #[test]
    fn profile_of_tent_doubles() {
        let vp = variation_function(&tent());
        assert_eq!(
            vp.profile().breakpoints(),
            &[(0.0, 0.0), (0.5, 1.0), (1.0, 2.0)]
        );
    }

    #[test]
    fn tail_sum_telescopes_on_identity_and_tent() {
        assert_eq!(
            tail_variation_sum(&identity(), &[1.0, 0.5, 0.25, 0.125]).unwrap(),
            1.0
        );
        assert_eq!(tail_variation_sum(&tent(), &[1.0, 0.5]).unwrap(), 2.0);
    }

    #[test]
    fn tail_sum_rejects_non_decreasing_sequences() {
        assert!(tail_variation_sum(&tent(), &[1.0, 0.5, 0.5]).is_err());
        assert!(tail_variation_sum(&tent(), &[0.5, 0.25]).is_err());
    }

    #[test]
    fn lipschitz_constants_of_reference_functions() {
        assert_eq!(lipschitz_constant(&identity()), 1.0);
        assert_eq!(lipschitz_constant(&tent()), 2.0);
    }

    /// Random function on [0,1] with dyadic abscissae; `dyadic_values`
    /// additionally quantizes ordinates to multiples of 2^-26 so that
    /// cumulative sums of |Δy| are exactly representable.
    fn arb_pwl(max_pts: usize, dyadic_values: bool) -> impl Strategy<Value = PiecewiseLinear> {
        let n_extra = max_pts.saturating_sub(2);
        (
            proptest::collection::btree_set(1u32..4095, 0..n_extra.max(1)),
            proptest::collection::vec(-1.0f64..1.0, max_pts),
        )
            .prop_map(move |(xs, ys)| {
                let mut axes = vec![0.0, 1.0];
                axes.extend(xs.into_iter().map(|k| k as f64 / 4096.0));
                axes.sort_by(f64::total_cmp);
                let pts: Vec<(f64, f64)> = axes
                    .into_iter()
                    .zip(ys)
                    .map(|(x, y)| {
                        let y = if dyadic_values {
                            (y * (1u64 << 26) as f64).round() / (1u64 << 26) as f64
                        } else {
                            y
                        };
                        (x, y)
                    })
                    .collect();
                PiecewiseLinear::new(pts).unwrap()
            })
    }

    proptest! {
        // var(f;a,b) = var(f;a,c) + var(f;c,b) up to compensated rounding.
        #[test]
        fn additivity_at_interior_points(
            f in arb_pwl(24, false),
            c01 in 0.0f64..1.0,
        ) {
            let total = total_variation(&f, 0.0, 1.0).unwrap();
            let left = total_variation(&f, 0.0, c01).unwrap();
            let right = total_variation(&f, c01, 1.0).unwrap();
            prop_assert!((total - left - right).abs() <= 1e-12 * (1.0 + total));
        }

        // Finer partitions capture at least as much variation, and no
        // partition exceeds the total.
        #[test]
        fn refinement_monotonicity_and_supremum_bound(
            f in arb_pwl(24, false),
            coarse in proptest::collection::vec(0.0f64..1.0, 1..8),
            extra in proptest::collection::vec(0.0f64..1.0, 1..8),
        ) {
            let mut pts = vec![0.0, 1.0];
            pts.extend(coarse);
            pts.sort_by(f64::total_cmp);
            let p = Partition::new(pts).unwrap();
            let q = p.refine_with(&extra);
            let vp = variation_over_partition(&f, &p).unwrap();
            let vq = variation_over_partition(&f, &q).unwrap();
            let total = total_variation(&f, 0.0, 1.0).unwrap();
            prop_assert!(vp <= vq + 1e-12);
            prop_assert!(vq <= total + 1e-12);
        }

        // profile(x) agrees with the from-scratch variation at every x.
        #[test]
        fn profile_matches_pointwise_variation(
            f in arb_pwl(24, false),
            x in 0.0f64..1.0,
        ) {
            let vp = variation_function(&f);
            let direct = total_variation(&f, 0.0, x).unwrap();
            let via_profile = vp.profile().eval(x).unwrap();
            prop_assert!((direct - via_profile).abs() <= 1e-12 * (1.0 + direct));
        }

        // Profile is non-decreasing and dominates the parent's increments:
        // |f(y) − f(x)| <= var_f(y) − var_f(x).
        #[test]
        fn profile_monotone_and_dominates_increments(
            f in arb_pwl(24, false),
            x in 0.0f64..1.0,
            y in 0.0f64..1.0,
        ) {
            let (x, y) = if x <= y { (x, y) } else { (y, x) };
            let vp = variation_function(&f);
            prop_assert!(vp.profile().breakpoints().windows(2).all(|w| w[0].1 <= w[1].1));
            let df = (f.eval(y).unwrap() - f.eval(x).unwrap()).abs();
            let dv = vp.profile().eval(y).unwrap() - vp.profile().eval(x).unwrap();
            prop_assert!(df <= dv + 1e-12);
        }

        // With ordinates on a dyadic grid the cumulative sums are exact, so
        // the parent and its profile have bitwise-equal best Lipschitz
        // constants (both are max |slope|).
        #[test]
        fn lipschitz_equality_is_exact_on_dyadic_values(
            f in arb_pwl(24, true),
        ) {
            let vp = variation_function(&f);
            prop_assert_eq!(lipschitz_constant(&f), lipschitz_constant(vp.profile()));
        }
    }

    #[test]
    fn zigzag_matches_brute_force_partition_supremum() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        // 50-breakpoint zigzag with exact dyadic abscissae.
        let mut xs: Vec<f64> = (0..50).map(|_| rng.gen_range(1u32..4095) as f64 / 4096.0).collect();
        xs.push(0.0);
        xs.push(1.0);
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let pts: Vec<(f64, f64)> = xs
            .iter()
            .map(|&x| (x, rng.gen_range(-1.0f64..1.0)))
            .collect();
        let f = PiecewiseLinear::new(pts).unwrap();
        let total = total_variation(&f, 0.0, 1.0).unwrap();

        // Breakpoint partition attains the supremum.
        let base = Partition::new(f.breakpoints().iter().map(|&(x, _)| x).collect()).unwrap();
        let at_breakpoints = variation_over_partition(&f, &base).unwrap();
        assert!((total - at_breakpoints).abs() <= 1e-12 * (1.0 + total));

        // 1000 random refinements never exceed it.
        for _ in 0..1000 {
            let extra: Vec<f64> = (0..rng.gen_range(1..12))
                .map(|_| rng.gen_range(0.0..1.0))
                .collect();
            let refined = variation_over_partition(&f, &base.refine_with(&extra)).unwrap();
            assert!(refined <= at_breakpoints + 1e-12);
        }
    }
}
