//! 0/1 knapsack by a profit table over capacities.

use crate::error::{Error, Result};

/// Default bound on the number of table cells (items × capacities).
pub const DEFAULT_CELL_LIMIT: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackSolution {
    pub profit: u64,
    /// Indices of the chosen items, ascending.
    pub selection: Vec<usize>,
}

pub fn knapsack_dp(weights: &[u64], profits: &[u64], capacity: u64) -> Result<KnapsackSolution> {
    knapsack_dp_bounded(weights, profits, capacity, DEFAULT_CELL_LIMIT)
}

/// Exact optimum; among optimal selections the one taking earlier items
/// whenever possible is returned.
pub fn knapsack_dp_bounded(
    weights: &[u64],
    profits: &[u64],
    capacity: u64,
    cell_limit: u64,
) -> Result<KnapsackSolution> {
    if weights.len() != profits.len() {
        return Err(Error::Precondition(format!(
            "{} weights but {} profits",
            weights.len(),
            profits.len()
        )));
    }
    let items = weights.len();
    // Capacity beyond the total weight is never useful.
    let cap = capacity.min(weights.iter().fold(0u64, |a, &w| a.saturating_add(w)));
    let cells = (items as u64 + 1).saturating_mul(cap.saturating_add(1));
    if cells > cell_limit {
        return Err(Error::CapExceeded(format!(
            "knapsack table needs {cells} cells, limit is {cell_limit}"
        )));
    }
    let cap = cap as usize;
    let width = cap + 1;
    // best[i * width + w]: optimum over items i.. with capacity w.
    let mut best = vec![0u64; (items + 1) * width];
    for i in (0..items).rev() {
        let (row, next) = best.split_at_mut((i + 1) * width);
        let row = &mut row[i * width..];
        for w in 0..width {
            let skip = next[w];
            row[w] = match usize::try_from(weights[i]) {
                Ok(a) if a <= w => skip.max(profits[i] + next[w - a]),
                _ => skip,
            };
        }
    }
    let mut selection = Vec::new();
    let mut w = cap;
    for i in 0..items {
        if let Ok(a) = usize::try_from(weights[i]) {
            if a <= w && profits[i] + best[(i + 1) * width + w - a] == best[i * width + w] {
                selection.push(i);
                w -= a;
            }
        }
    }
    Ok(KnapsackSolution {
        profit: best[cap],
        selection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(weights: &[u64], profits: &[u64], cap: u64) -> u64 {
        (0u32..1 << weights.len())
            .filter_map(|mask| {
                let pick = |v: &[u64]| {
                    (0..v.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| v[i])
                        .sum::<u64>()
                };
                (pick(weights) <= cap).then(|| pick(profits))
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_cases() {
        assert_eq!(knapsack_dp(&[], &[], 10).unwrap().profit, 0);
        let one = knapsack_dp(&[3], &[7], 2).unwrap();
        assert_eq!((one.profit, one.selection.len()), (0, 0));
        let three = knapsack_dp(&[1, 2, 3], &[6, 10, 12], 5).unwrap();
        assert_eq!(three.profit, brute(&[1, 2, 3], &[6, 10, 12], 5));
        assert_eq!(three.profit, 22);
        assert_eq!(three.selection, vec![1, 2]);
    }

    #[test]
    fn ties_prefer_earlier_items() {
        let s = knapsack_dp(&[2, 2], &[5, 5], 2).unwrap();
        assert_eq!(s.selection, vec![0]);
    }

    #[test]
    fn cell_limit() {
        assert!(matches!(
            knapsack_dp_bounded(&[1_000, 1_000], &[1, 1], 2_000, 100),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn huge_weight_never_fits() {
        let s = knapsack_dp(&[u64::MAX, 1], &[100, 1], 5).unwrap();
        assert_eq!(s.profit, 1);
    }
}
