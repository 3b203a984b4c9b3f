//! Pearson correlation, moments and integer histograms.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least 2 points, got {0}")]
    TooFew(usize),
    #[error("zero variance: correlation is undefined")]
    ZeroVariance,
}

/// Sample Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(StatsError::TooFew(xs.len()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::ZeroVariance);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Population moments. Skewness and excess kurtosis are `None` when the
/// variance is zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Moments {
    pub count: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub skewness: Option<f64>,
    pub excess_kurtosis: Option<f64>,
}

impl Moments {
    pub fn of(values: &[f64]) -> Self {
        Self::weighted(values.iter().map(|&v| (v, 1)))
    }

    /// Moments of `(value, multiplicity)` pairs.
    pub fn weighted(items: impl Iterator<Item = (f64, usize)> + Clone) -> Self {
        let count: usize = items.clone().map(|(_, w)| w).sum();
        if count == 0 {
            return Self { count, mean: f64::NAN, std_dev: f64::NAN, skewness: None, excess_kurtosis: None };
        }
        let n = count as f64;
        let mean = items.clone().map(|(v, w)| v * w as f64).sum::<f64>() / n;
        let central = |k: i32| items.clone().map(|(v, w)| (v - mean).powi(k) * w as f64).sum::<f64>() / n;
        let (m2, m3, m4) = (central(2), central(3), central(4));
        let zero = m2 <= f64::EPSILON * mean.abs().max(1.0);
        Self {
            count,
            mean,
            std_dev: m2.sqrt(),
            skewness: (!zero).then(|| m3 / m2.powf(1.5)),
            excess_kurtosis: (!zero).then(|| m4 / (m2 * m2) - 3.0),
        }
    }

    pub fn zero_variance(&self) -> bool {
        self.skewness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bin {
    pub lower: i64,
    pub count: usize,
}

/// Histogram of a set of integer differences, with moments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifferenceSummary {
    pub bin_width: i64,
    /// Contiguous bins from the lowest to the highest occupied one.
    pub histogram: Vec<Bin>,
    pub moments: Moments,
    pub zero_variance: bool,
}

impl DifferenceSummary {
    pub fn total(&self) -> usize {
        self.histogram.iter().map(|b| b.count).sum()
    }

    /// Moments recomputed from bin lower edges; equals the record moments at width 1.
    pub fn moments_from_histogram(&self) -> Moments {
        Moments::weighted(self.histogram.iter().map(|b| (b.lower as f64, b.count)))
    }
}

/// Bins `differences` into integer-edged bins of `bin_width` and computes moments.
pub fn difference_histogram(differences: &[i64], bin_width: i64) -> DifferenceSummary {
    assert!(bin_width >= 1, "bin width must be positive");
    let moments = Moments::of(&differences.iter().map(|&d| d as f64).collect::<Vec<_>>());
    let mut histogram = Vec::new();
    if let (Some(&lo), Some(&hi)) = (differences.iter().min(), differences.iter().max()) {
        let first = lo.div_euclid(bin_width);
        let last = hi.div_euclid(bin_width);
        let mut counts = vec![0usize; (last - first + 1) as usize];
        for d in differences {
            counts[(d.div_euclid(bin_width) - first) as usize] += 1;
        }
        histogram = counts
            .into_iter()
            .enumerate()
            .map(|(i, count)| Bin { lower: (first + i as i64) * bin_width, count })
            .collect();
    }
    let zero_variance = moments.zero_variance();
    DifferenceSummary { bin_width, histogram, moments, zero_variance }
}
