/// Kahan compensated accumulator.
///
/// Segment sums over slowly decaying series (tens of thousands of terms)
/// must stay well below the 1e-12 residual budgets of the variation
/// identities, so every left-to-right segment sum in the crate runs
/// through this accumulator. Summation order is fixed by the caller;
/// results are bitwise deterministic.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    err: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

impl std::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensates_small_terms_against_large_base() {
        let mut acc = KahanSum::new();
        acc.add(1.0);
        for _ in 0..10_000_000 {
            acc.add(1e-16);
        }
        // Naive summation loses every 1e-16 term against 1.0.
        assert!((acc.value() - (1.0 + 1e-9)).abs() < 1e-13);
    }

    #[test]
    fn exact_when_partial_sums_are_representable() {
        let mut acc = KahanSum::new();
        for i in 0..1000 {
            acc.add(i as f64 * 0.25);
        }
        assert_eq!(acc.value(), (0..1000).map(|i| i as f64 * 0.25).sum::<f64>());
        assert_eq!(acc.value(), 999.0 * 1000.0 / 2.0 * 0.25);
    }
}
