use super::StatsError;
use crate::data::Dataset;

/// Sizes of `k` contiguous parts of `n` items: the first `n mod k` parts get one extra.
pub fn split_sizes(n: usize, k: usize) -> Result<Vec<usize>, StatsError> {
    if k == 0 || k > n {
        return Err(StatsError::BadSplit { n, k });
    }
    let (base, extra) = (n / k, n % k);
    Ok((0..k).map(|i| base + usize::from(i < extra)).collect())
}

/// Splits `d` into `k` contiguous, order-preserving parts named `<name>-<i>` (1-based).
pub fn uniform_split(d: &Dataset, k: usize) -> Result<Vec<Dataset>, StatsError> {
    let mut start = 0;
    split_sizes(d.len(), k)?
        .into_iter()
        .enumerate()
        .map(|(i, size)| {
            let part = d
                .slice(format!("{}-{}", d.name, i + 1), start, start + size)
                .map_err(|e| StatsError::Dataset(e.to_string()));
            start += size;
            part
        })
        .collect()
}
