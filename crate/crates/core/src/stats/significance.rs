use statrs::distribution::{ContinuousCDF, StudentsT};

use super::{check_pair, mean, sample_sd, StatsError};

/// Conventional significance threshold.
pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTest {
    pub t: f64,
    pub df: f64,
    /// `P(T_df > t)`.
    pub p: f64,
}

/// Upper tail of Student's t distribution.
pub fn student_t_sf(t: f64, df: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t == f64::INFINITY {
        return 0.0;
    }
    if t == f64::NEG_INFINITY {
        return 1.0;
    }
    let dist = StudentsT::new(0.0, 1.0, df).expect("df must be positive");
    // sf is accurate in the upper tail; mirror the lower tail for symmetry
    if t >= 0.0 {
        dist.sf(t)
    } else {
        1.0 - dist.sf(-t)
    }
}

/// Differences whose spread is rounding noise relative to their magnitude count as constant.
fn is_degenerate(d: &[f64], sd: f64) -> bool {
    let scale = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    sd == 0.0 || sd <= scale * 1e-12
}

/// One-sided paired t-test of "A outperforms B" on `d = a − b`.
pub fn paired_ttest_one_sided(a: &[f64], b: &[f64]) -> Result<TTest, StatsError> {
    check_pair(a, b)?;
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let sd = sample_sd(&d);
    if is_degenerate(&d, sd) {
        return Err(StatsError::Degenerate);
    }
    let n = d.len() as f64;
    let t = mean(&d) / (sd / n.sqrt());
    let df = n - 1.0;
    Ok(TTest {
        t,
        df,
        p: student_t_sf(t, df),
    })
}

/// One cell of a significance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PValue {
    /// `None` when the two methods scored identically on every split.
    pub p: Option<f64>,
    /// Set when the differences were constant and `p` was assigned 0 or 1 directly.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignificanceMatrix {
    pub methods: Vec<String>,
    /// `cells[i][j]` tests "method i outperforms method j"; the diagonal is `None`.
    pub cells: Vec<Vec<Option<PValue>>>,
}

impl SignificanceMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<PValue> {
        self.cells[i][j]
    }

    /// Whether method `i` beats method `j` at level `alpha`.
    pub fn is_significant(&self, i: usize, j: usize, alpha: f64) -> bool {
        matches!(self.cells[i][j], Some(PValue { p: Some(p), .. }) if p < alpha)
    }

    /// CSV with method ids as header row and first column; degenerate cells carry a `*`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method");
        for m in &self.methods {
            out.push(',');
            out.push_str(m);
        }
        out.push('\n');
        for (i, row) in self.cells.iter().enumerate() {
            out.push_str(&self.methods[i]);
            for cell in row {
                out.push(',');
                match cell {
                    None => {}
                    Some(PValue { p: None, .. }) => out.push_str("NA*"),
                    Some(PValue { p: Some(p), degenerate }) => {
                        out.push_str(&p.to_string());
                        if *degenerate {
                            out.push('*');
                        }
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Pairwise one-sided p-values over per-split harmonic scores.
pub fn significance_matrix(runs: &[(String, Vec<f64>)]) -> Result<SignificanceMatrix, StatsError> {
    let expected = runs.first().map_or(0, |r| r.1.len());
    for (method, scores) in runs {
        if scores.len() != expected || expected < 2 {
            return Err(StatsError::MismatchedSplits {
                method: method.clone(),
                expected: expected.max(2),
                found: scores.len(),
            });
        }
    }
    let n = runs.len();
    let mut cells = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (&runs[i].1, &runs[j].1);
            cells[i][j] = Some(match paired_ttest_one_sided(a, b) {
                Ok(t) => PValue {
                    p: Some(t.p),
                    degenerate: false,
                },
                Err(StatsError::Degenerate) => {
                    let m = a.iter().zip(b).map(|(x, y)| x - y).sum::<f64>();
                    PValue {
                        p: if m > 0.0 {
                            Some(0.0)
                        } else if m < 0.0 {
                            Some(1.0)
                        } else {
                            None
                        },
                        degenerate: true,
                    }
                }
                Err(e) => return Err(e),
            });
        }
    }
    Ok(SignificanceMatrix {
        methods: runs.iter().map(|r| r.0.clone()).collect(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn df2_closed_form() {
        let t = paired_ttest_one_sided(&[0.1, 0.2, 0.3], &[0.0, 0.0, 0.0]).unwrap();
        assert!((t.t - 12f64.sqrt()).abs() < 1e-12);
        assert_eq!(t.df, 2.0);
        let closed = 1.0 - (0.5 + t.t / (2.0 * (2.0 + t.t * t.t).sqrt()));
        assert!((t.p - closed).abs() < 1e-10);
        assert!((t.p - 0.0371).abs() < 1e-3);
    }

    #[test]
    fn normal_limit() {
        assert!((student_t_sf(1.6449, 1e6) - 0.05).abs() < 1e-3);
        assert_eq!(student_t_sf(0.0, 5.0), 0.5);
        assert_eq!(student_t_sf(f64::INFINITY, 3.0), 0.0);
    }

    #[test]
    fn degenerate_samples() {
        let a = [0.5, 0.6, 0.7];
        assert_eq!(paired_ttest_one_sided(&a, &a), Err(StatsError::Degenerate));
        let b: Vec<f64> = a.iter().map(|x| x - 0.1).collect();
        assert_eq!(paired_ttest_one_sided(&a, &b), Err(StatsError::Degenerate));
    }

    #[test]
    fn matrix_cells() {
        let base: Vec<f64> = (0..12).map(|i| 0.5 + 0.01 * (i as f64) * (i % 3) as f64).collect();
        let better: Vec<f64> = base.iter().map(|x| x + 0.1).collect();
        let noisy: Vec<f64> = base
            .iter()
            .enumerate()
            .map(|(i, x)| x + 0.02 * ((i * 7 % 5) as f64 - 1.5))
            .collect();
        let runs = vec![
            ("a".to_string(), better),
            ("b".to_string(), base.clone()),
            ("c".to_string(), noisy),
            ("d".to_string(), base),
        ];
        let m = significance_matrix(&runs).unwrap();
        assert_eq!(m.get(0, 0), None);
        let ab = m.get(0, 1).unwrap();
        assert!(ab.degenerate && ab.p == Some(0.0));
        assert!(m.is_significant(0, 1, DEFAULT_ALPHA));
        assert_eq!(m.get(1, 0).unwrap().p, Some(1.0));
        let bd = m.get(1, 3).unwrap();
        assert!(bd.degenerate && bd.p.is_none());
        let (bc, cb) = (m.get(1, 2).unwrap(), m.get(2, 1).unwrap());
        assert!(!bc.degenerate);
        assert!((bc.p.unwrap() + cb.p.unwrap() - 1.0).abs() < 1e-12);
        let csv = m.to_csv();
        assert!(csv.starts_with("method,a,b,c,d\n"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn mismatched_splits() {
        let runs = vec![("a".to_string(), vec![0.1, 0.2]), ("b".to_string(), vec![0.1])];
        assert!(matches!(
            significance_matrix(&runs),
            Err(StatsError::MismatchedSplits { .. })
        ));
    }
}
