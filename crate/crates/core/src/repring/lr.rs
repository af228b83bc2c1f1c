//! Littlewood–Richardson coefficients by LR-tableau enumeration.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::partition::Partition;

type LrKey = (Partition, Partition, Partition);

fn lr_cache() -> &'static RwLock<HashMap<LrKey, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<LrKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// c^λ_{μν}: the number of LR tableaux of skew shape λ/μ and content ν.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&c) = lr_cache().read().unwrap().get(&key) {
        return c;
    }
    let c = count_tableaux(lambda, mu, nu);
    lr_cache().write().unwrap().insert(key, c);
    c
}

fn count_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let mut cells = Vec::new();
    for i in 0..lambda.len() {
        for j in (mu.part(i)..lambda.part(i)).rev() {
            cells.push((i, j));
        }
    }
    let mut grid: Vec<Vec<usize>> = (0..lambda.len()).map(|i| vec![0; lambda.part(i)]).collect();
    let mut counts = vec![0usize; nu.len() + 1];
    let content: Vec<usize> = std::iter::once(usize::MAX).chain(nu.parts().iter().copied()).collect();
    place(&cells, 0, mu, &mut grid, &mut counts, &content)
}

fn place(
    cells: &[(usize, usize)],
    idx: usize,
    mu: &Partition,
    grid: &mut [Vec<usize>],
    counts: &mut [usize],
    content: &[usize],
) -> u64 {
    let Some(&(i, j)) = cells.get(idx) else {
        return 1;
    };
    // rows weakly increase left to right, so the cell to the right bounds us
    let upper = if j + 1 < grid[i].len() {
        grid[i][j + 1]
    } else {
        content.len() - 1
    };
    // columns strictly increase downward
    let lower = if i > 0 && j >= mu.part(i - 1) {
        grid[i - 1][j] + 1
    } else {
        1
    };
    let mut total = 0;
    for v in lower..=upper.min(i + 1) {
        if counts[v] >= content[v] {
            continue;
        }
        if v > 1 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        counts[v] += 1;
        grid[i][j] = v;
        total += place(cells, idx + 1, mu, grid, counts, content);
        grid[i][j] = 0;
        counts[v] -= 1;
    }
    total
}
