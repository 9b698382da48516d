//! Dense linear algebra over F_p for graded-piece computations: rank and
//! nullspace by Gaussian elimination. Sizes here are small (graded slices
//! of desk-scale modules), so no pivoting sophistication is needed.

use crate::algebra::field::PrimeField;

/// Reduces `rows` to row echelon form in place; returns the rank.
pub fn row_reduce(f: &PrimeField, rows: &mut [Vec<u64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..rows.len()).find(|&r| rows[r][col] != 0);
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][col]);
        for c in col..ncols {
            rows[rank][c] = f.mul(rows[rank][c], inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let k = rows[r][col];
                for c in col..ncols {
                    let sub = f.mul(k, rows[rank][c]);
                    rows[r][c] = f.sub(rows[r][c], sub);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(f: &PrimeField, rows: &[Vec<u64>]) -> usize {
    let mut work: Vec<Vec<u64>> = rows.to_vec();
    row_reduce(f, &mut work)
}

/// Basis of the right nullspace of the matrix given by `rows` (each row a
/// vector of length `ncols`).
pub fn nullspace(f: &PrimeField, rows: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = rows.to_vec();
    let rank = row_reduce(f, &mut work);
    work.truncate(rank);
    // locate pivot columns
    let mut pivots: Vec<usize> = Vec::with_capacity(rank);
    let mut col = 0;
    for row in &work {
        while col < ncols && row[col] == 0 {
            col += 1;
        }
        if col < ncols {
            pivots.push(col);
            col += 1;
        }
    }
    let is_pivot = |c: usize| pivots.contains(&c);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot(free) {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            // pivot row r: x_pc = -sum_{free cols} row[c] x_c
            v[pc] = f.neg(work[r][free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let f = PrimeField::new(7).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&f, &rows), 2);
        let ns = nullspace(&f, &rows, 3);
        assert_eq!(ns.len(), 1);
        // check A v = 0
        for row in &rows {
            let mut acc = 0u64;
            for (a, b) in row.iter().zip(&ns[0]) {
                acc = f.add(acc, f.mul(*a, *b));
            }
            assert_eq!(acc, 0);
        }
    }
}
