//! Central charges of the unitary discrete series.

use crate::error::{Error, Result};
use crate::scalar::{int, rat, Rational};

use super::words::AlgebraKind;

/// `c_p` for `p ≥ 2`.
pub fn discrete_series(kind: AlgebraKind, p: i64) -> Result<Rational> {
    if p < 2 {
        return Err(Error::InvalidParams(format!("discrete series needs p ≥ 2, got {p}")));
    }
    Ok(match kind {
        AlgebraKind::Vir => int(1) - rat(6, p * (p + 1)),
        AlgebraKind::Ns => rat(3, 2) * (int(1) - rat(8, p * (p + 2))),
        AlgebraKind::N2 => int(3) * (int(1) - rat(2, p)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        assert_eq!(discrete_series(AlgebraKind::Vir, 3).unwrap(), rat(1, 2));
        assert_eq!(discrete_series(AlgebraKind::Ns, 4).unwrap(), int(1));
        assert_eq!(discrete_series(AlgebraKind::N2, 4).unwrap(), rat(3, 2));
        assert!(discrete_series(AlgebraKind::Vir, 1).is_err());
    }

    #[test]
    fn increasing_and_bounded() {
        for kind in [AlgebraKind::Vir, AlgebraKind::Ns, AlgebraKind::N2] {
            let limit = match kind {
                AlgebraKind::Vir => int(1),
                AlgebraKind::Ns => rat(3, 2),
                AlgebraKind::N2 => int(3),
            };
            let mut prev = discrete_series(kind, 2).unwrap();
            for p in 3..40 {
                let c = discrete_series(kind, p).unwrap();
                assert!(c > prev && c < limit);
                prev = c;
            }
        }
    }
}
