//! Littlewood–Richardson coefficients by direct tableau enumeration.
//!
//! Deliberately independent of [`crate::schur`]: it shares no code with the
//! Pieri/Giambelli product and is meant to check it.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// `c^ν_{λμ}`: the number of semistandard skew tableaux of shape `ν/λ` and
/// content `μ` whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    if nu.size() != lambda.size() + mu.size() {
        return Err(Error::SizeMismatch(alloc::format!(
            "|{nu:?}| != |{lambda:?}| + |{mu:?}|"
        )));
    }
    if !nu.contains(lambda) {
        return Ok(0);
    }
    let rows = nu.len();
    // Cells in reading order: rows top to bottom, each right to left.
    let mut cells = Vec::new();
    for r in 0..rows {
        for c in (lambda.get(r)..nu.get(r)).rev() {
            cells.push((r, c));
        }
    }
    let width = nu.get(0);
    let mut grid = vec![vec![0usize; width]; rows];
    let mut counts = vec![0usize; mu.len() + 1];
    let mut total = 0;
    place(0, &cells, lambda, mu, &mut grid, &mut counts, &mut total);
    Ok(total)
}

fn place(
    idx: usize,
    cells: &[(usize, usize)],
    lambda: &Partition,
    mu: &Partition,
    grid: &mut [Vec<usize>],
    counts: &mut [usize],
    total: &mut u64,
) {
    let Some(&(r, c)) = cells.get(idx) else {
        *total += 1;
        return;
    };
    let row_len = grid[r].len();
    // Weakly increasing along the row: bounded by the already-filled cell to
    // the right.
    let right_in_skew = c + 1 < row_len && grid[r][c + 1] != 0;
    let max = if right_in_skew { grid[r][c + 1] } else { mu.len() };
    // Strictly increasing down columns, when the cell above is in the skew shape.
    let min = if r > 0 && c >= lambda.get(r - 1) {
        grid[r - 1][c] + 1
    } else {
        1
    };
    for v in min..=max {
        if counts[v] == mu.get(v - 1) {
            continue;
        }
        if v > 1 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        counts[v] += 1;
        grid[r][c] = v;
        place(idx + 1, cells, lambda, mu, grid, counts, total);
        grid[r][c] = 0;
        counts[v] -= 1;
    }
}
