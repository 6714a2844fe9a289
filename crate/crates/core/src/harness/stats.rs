//! Small sample-statistics helpers shared by the harness and the checks.

/// Arithmetic mean; NaN for an empty slice.
pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance; zero for fewer than two samples.
pub fn sample_variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

/// `sd / sqrt(len)`.
pub fn standard_error(xs: &[f64]) -> f64 {
    (sample_variance(xs) / xs.len() as f64).sqrt()
}

/// Linearly interpolated quantile of ascending `sorted` data.
pub fn quantile(sorted: &[f64], level: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    let h = (sorted.len() - 1) as f64 * level.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Relative frequencies of sizes `1..=n`.
pub fn size_frequencies(sizes: &[usize], n: usize) -> Vec<f64> {
    let mut counts = vec![0usize; n];
    for &s in sizes {
        counts[s - 1] += 1;
    }
    counts
        .iter()
        .map(|&c| c as f64 / sizes.len() as f64)
        .collect()
}

/// Empirical CDF at `1..=n`.
pub fn empirical_cdf(sizes: &[usize], n: usize) -> Vec<f64> {
    size_frequencies(sizes, n)
        .into_iter()
        .scan(0.0, |acc, f| {
            *acc += f;
            Some(*acc)
        })
        .collect()
}

/// Largest gap between two CDFs tabulated on the same support.
pub fn max_cdf_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles_interpolate() {
        let xs = [0.4, 0.6];
        assert!((quantile(&xs, 0.5) - 0.5).abs() < 1e-15);
        assert_eq!(quantile(&xs, 0.0), 0.4);
        assert_eq!(quantile(&xs, 1.0), 0.6);
        assert_eq!(quantile(&[3.0], 0.95), 3.0);
        let ys: Vec<f64> = (0..=100).map(f64::from).collect();
        assert!((quantile(&ys, 0.05) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn moments() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(mean(&xs), 2.5);
        assert!((sample_variance(&xs) - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(standard_error(&[5.0]), 0.0);
    }

    #[test]
    fn cdfs() {
        let cdf = empirical_cdf(&[1, 1, 2, 3], 3);
        assert_eq!(cdf, vec![0.5, 0.75, 1.0]);
        assert_eq!(max_cdf_distance(&cdf, &[0.5, 0.5, 1.0]), 0.25);
    }
}
