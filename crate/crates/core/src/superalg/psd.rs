//! Exact positive-semidefiniteness test by symmetric-pivoted LDL*.

use num_traits::{Signed, Zero};

use super::gram::GramMatrix;
use crate::error::Result;
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdResult {
    pub psd: bool,
    /// Pivots in elimination order; zeros for a vanishing trailing block.
    pub pivots: Vec<Rational>,
    /// On failure, an exact vector with ⟨v, Av⟩ < 0.
    pub witness: Option<Vec<GaussianRational>>,
}

/// ⟨v, A v⟩.
pub fn quadratic_form(a: &[Vec<GaussianRational>], v: &[GaussianRational]) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (i, row) in a.iter().enumerate() {
        if v[i].is_zero() {
            continue;
        }
        let mut s = GaussianRational::zero();
        for (j, x) in row.iter().enumerate() {
            if !v[j].is_zero() && !x.is_zero() {
                s += &(x * &v[j]);
            }
        }
        acc += &(&v[i].conj() * &s);
    }
    acc
}

pub fn psd_check(g: &GramMatrix) -> Result<PsdResult> {
    g.check_hermitian()?;
    Ok(psd_matrix(&g.entries))
}

/// Symmetric pivoting picks the largest remaining diagonal, ties to the lowest index.
pub fn psd_matrix(input: &[Vec<GaussianRational>]) -> PsdResult {
    let n = input.len();
    let mut a: Vec<Vec<GaussianRational>> = input.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    // (pivot index, pivot value, row of the reduced matrix at elimination time)
    let mut eliminated: Vec<(usize, Rational, Vec<(usize, GaussianRational)>)> = Vec::new();

    let finish = |eliminated: &[(usize, Rational, Vec<(usize, GaussianRational)>)], mut x: Vec<GaussianRational>| {
        for (p, d, row) in eliminated.iter().rev() {
            let mut s = GaussianRational::zero();
            for (j, aj) in row {
                s += &(aj * &x[*j]);
            }
            x[*p] = -(s.scale(&(Rational::from_integer(1.into()) / d)));
        }
        x
    };

    while !active.is_empty() {
        let mut best = active[0];
        for &i in &active {
            if a[i][i].re > a[best][best].re {
                best = i;
            }
        }
        let d = a[best][best].re.clone();
        if let Some(&neg) = active.iter().find(|&&i| a[i][i].re.is_negative()) {
            let mut x = vec![GaussianRational::zero(); n];
            x[neg] = GaussianRational::one();
            pivots.push(a[neg][neg].re.clone());
            return PsdResult { psd: false, pivots, witness: Some(finish(&eliminated, x)) };
        }
        if d.is_zero() {
            for &i in &active {
                for &j in &active {
                    if i != j && !a[i][j].is_zero() {
                        let mut x = vec![GaussianRational::zero(); n];
                        x[i] = -a[i][j].clone();
                        x[j] = GaussianRational::one();
                        let w = finish(&eliminated, x);
                        return PsdResult { psd: false, pivots, witness: Some(w) };
                    }
                }
            }
            pivots.extend(std::iter::repeat_n(Rational::zero(), active.len()));
            return PsdResult { psd: true, pivots, witness: None };
        }
        active.retain(|&i| i != best);
        let row: Vec<(usize, GaussianRational)> =
            active.iter().filter(|&&j| !a[best][j].is_zero()).map(|&j| (j, a[best][j].clone())).collect();
        let inv = Rational::from_integer(1.into()) / &d;
        for &i in &active {
            let aib = a[i][best].clone();
            if aib.is_zero() {
                continue;
            }
            let f = aib.scale(&inv);
            for (j, abj) in &row {
                let t = &f * abj;
                a[i][*j] -= &t;
            }
        }
        eliminated.push((best, d.clone(), row));
        pivots.push(d);
    }
    PsdResult { psd: true, pivots, witness: None }
}
