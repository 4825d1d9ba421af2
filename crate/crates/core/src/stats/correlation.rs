use super::{check_pair, mean, StatsError};

/// Pearson, Spearman and their harmonic mean for one method on one dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalScores {
    pub r: f64,
    pub rho: f64,
    pub h: f64,
}

/// Product-moment correlation, computed in two passes.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    check_pair(x, y)?;
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || is_constant(x) {
        return Err(StatsError::ZeroVariance("x"));
    }
    if syy == 0.0 || is_constant(y) {
        return Err(StatsError::ZeroVariance("y"));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

fn is_constant(x: &[f64]) -> bool {
    x.iter().all(|v| *v == x[0])
}

/// 1-based ranks; tied values share the average of their positions.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && x[order[j]] == x[order[i]] {
            j += 1;
        }
        // positions i..j (0-based) hold equal values
        let r = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = r;
        }
        i = j;
    }
    ranks
}

/// Pearson correlation of average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    check_pair(x, y)?;
    pearson(&average_ranks(x), &average_ranks(y))
}

/// `1 − 6Σd²/(n(n²−1))`; only meaningful when neither input has ties.
pub fn spearman_closed_form(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    check_pair(x, y)?;
    let (rx, ry) = (average_ranks(x), average_ranks(y));
    let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b)).sum();
    let n = x.len() as f64;
    Ok(1.0 - 6.0 * d2 / (n * (n * n - 1.0)))
}

/// `2rρ/(r+ρ)`.
pub fn harmonic(r: f64, rho: f64) -> Result<f64, StatsError> {
    let denom = r + rho;
    if denom == 0.0 || !denom.is_finite() {
        return Err(StatsError::UndefinedHarmonic { r, rho });
    }
    Ok(2.0 * r * rho / denom)
}

/// Scores a method against human judgements.
pub fn evaluate(method: &[f64], human: &[f64]) -> Result<EvalScores, StatsError> {
    let r = pearson(method, human)?;
    let rho = spearman(method, human)?;
    Ok(EvalScores {
        r,
        rho,
        h: harmonic(r, rho)?,
    })
}
