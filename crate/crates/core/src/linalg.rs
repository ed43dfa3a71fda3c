//! Exact dense linear algebra over ℚ(i).

use crate::fock::{FockState, FockVector};
use crate::scalar::GaussianRational;

/// Coefficients `x` with `Σ x_i columns[i] = target`, if any. Free variables are set to zero.
pub fn solve_combination(columns: &[FockVector], target: &FockVector) -> Option<Vec<GaussianRational>> {
    let mut states: Vec<&FockState> = columns.iter().flat_map(|c| c.iter().map(|(s, _)| s)).collect();
    states.extend(target.iter().map(|(s, _)| s));
    states.sort();
    states.dedup();
    let n = columns.len();
    // augmented rows: one per state
    let mut rows: Vec<Vec<GaussianRational>> = states
        .iter()
        .map(|s| {
            let mut r: Vec<GaussianRational> = columns.iter().map(|c| c.coefficient(s)).collect();
            r.push(target.coefficient(s));
            r
        })
        .collect();
    let pivots = row_reduce(&mut rows, n);
    // inconsistent if a zero row has a nonzero right-hand side
    for r in rows.iter().skip(pivots.len()) {
        if !r[n].is_zero() {
            return None;
        }
    }
    let mut x = vec![GaussianRational::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = rows[row][n].clone();
    }
    Some(x)
}

/// Reduced row echelon form on the first `ncols` columns; returns pivot columns.
pub fn row_reduce(rows: &mut [Vec<GaussianRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..rows[i].len() {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Generalized binomial `x choose j` for integer `x`.
pub fn binomial(x: i64, j: u32) -> num_rational::BigRational {
    let mut acc = crate::scalar::int(1);
    for i in 0..j as i64 {
        acc = acc * crate::scalar::int(x - i) / crate::scalar::int(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{enumerate_basis, FieldContent};
    use crate::scalar::{int, HalfInt};

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(-1, 3), int(-1));
        assert_eq!(binomial(2, 3), int(0));
        assert_eq!(binomial(7, 0), int(1));
    }

    #[test]
    fn recovers_combination() {
        let b = enumerate_basis(FieldContent::NS, HalfInt::from_int(2));
        let cols: Vec<FockVector> = b.iter().take(4).cloned().map(FockVector::basis).collect();
        let mut t = cols[1].scaled(&GaussianRational::from_int(3));
        t.add_scaled(&cols[3], &GaussianRational::i());
        let x = solve_combination(&cols, &t).unwrap();
        assert_eq!(x[1], GaussianRational::from_int(3));
        assert_eq!(x[3], GaussianRational::i());
        let outside = FockVector::basis(b[5].clone());
        assert!(solve_combination(&cols, &outside).is_none());
    }
}
