//! Unitary ranges, collapsing levels and closed-form central-charge identities.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::lie::{central_charge_formula, central_charge_symbolic_formula, dual_coxeter, load_named};
use super::poly::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::scalar::{display_rational, int, parse_rational, rat, Rational};
use crate::superalg::AlgebraKind;

/// `step·ℤ_{≤ bound}`, or `step·ℤ_{< bound}` when strict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRange {
    pub step: Rational,
    pub bound: i64,
    pub strict: bool,
}

impl LevelRange {
    pub fn contains(&self, k: &Rational) -> bool {
        let n = k / &self.step;
        n.is_integer() && if self.strict { n < int(self.bound) } else { n <= int(self.bound) }
    }
}

impl fmt::Display for LevelRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.strict { "<" } else { "≤" };
        if self.step.is_one() {
            write!(f, "ℤ_{{{rel}{}}}", self.bound)
        } else {
            write!(f, "({})ℤ_{{{rel}{}}}", display_rational(&self.step), self.bound)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitaryRange {
    /// g♮ abelian: the discrete series together with the continuum.
    Abelian(AlgebraKind),
    Levels(LevelRange),
    /// Only the collapsing levels give unitary algebras.
    CollapsingOnly,
}

impl fmt::Display for UnitaryRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitaryRange::Abelian(AlgebraKind::Vir) => write!(f, "k = 1/p − 1 (p ≥ 2), k = −1, k < −2"),
            UnitaryRange::Abelian(AlgebraKind::Ns) => write!(f, "k = 1/p − 1 (p ≥ 2), k = −1, k < −3/2"),
            UnitaryRange::Abelian(AlgebraKind::N2) => write!(f, "k = 1/p − 1 (p ≥ 2), k ≤ −1"),
            UnitaryRange::Levels(r) => write!(f, "{r}"),
            UnitaryRange::CollapsingOnly => write!(f, "collapsing levels only"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Trivial,
    Heisenberg,
    /// Simple affine `V_l(sl₂)`.
    AffineSl2(Rational),
}

impl Target {
    pub fn central_charge(&self) -> Rational {
        match self {
            Target::Trivial => int(0),
            Target::Heisenberg => int(1),
            Target::AffineSl2(l) => int(3) * l / (l + int(2)),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Trivial => write!(f, "ℂΩ"),
            Target::Heisenberg => write!(f, "M(1)"),
            Target::AffineSl2(l) => write!(f, "V_{}(sl2)", display_rational(l)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    pub k: Rational,
    pub target: Target,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub h_dual: Rational,
    pub sdim: Rational,
    pub range: UnitaryRange,
    pub collapsing: Vec<Collapse>,
}

impl CatalogEntry {
    /// `c(k)`; `None` at the critical level.
    pub fn central_charge(&self, k: &Rational) -> Option<Rational> {
        central_charge_formula(&self.h_dual, &self.sdim, k).ok()
    }
}

/// Lowercase, with `(`, `|`, `,`, `;` folded into `_`: `spo(2|3)` → `spo_2_3`.
pub fn normalize_name(name: &str) -> String {
    let mut s: String = name
        .trim()
        .to_ascii_lowercase()
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ')')
        .map(|c| if matches!(c, '(' | '|' | ',' | ';') { '_' } else { c })
        .collect();
    while s.contains("__") {
        s = s.replace("__", "_");
    }
    s
}

/// The orbit of `a` under `a ↦ 1/a` and `a ↦ −1 − a`.
pub fn d21_orbit(a: &Rational) -> Result<Vec<Rational>> {
    if a.is_zero() || *a == int(-1) {
        return Err(Error::InvalidParams(format!("D(2,1;a) needs a ∉ {{0, −1}}, got {}", display_rational(a))));
    }
    let one = int(1);
    let b = -(a + &one);
    Ok(vec![a.clone(), a.recip(), b.clone(), b.recip(), (a + &one).recip() * a * int(-1), -(a + &one) / a])
}

/// Representative `≥ 1` of the orbit.
pub fn canonical_d21(a: &Rational) -> Result<Rational> {
    d21_orbit(a)?
        .into_iter()
        .filter(|x| x.is_positive())
        .max()
        .ok_or_else(|| Error::InvalidParams("no positive element in the D(2,1;a) orbit".into()))
}

fn parse_u32(s: &str) -> Option<i64> {
    s.parse::<u32>().ok().map(i64::from)
}

fn lattice(step: Rational, bound: i64, strict: bool) -> UnitaryRange {
    UnitaryRange::Levels(LevelRange { step, bound, strict })
}

fn spo_2_m(m: i64) -> CatalogEntry {
    CatalogEntry {
        name: format!("spo_2_{m}"),
        h_dual: int(2) - rat(m, 2),
        sdim: int(3) + rat(m * (m - 5), 2),
        range: lattice(rat(1, 2), -2, false),
        collapsing: vec![Collapse { k: rat(-1, 2), target: Target::Trivial }],
    }
}

/// Catalog lookup; `D(2,1;a)` is canonicalized first and `a = 1` resolves to `spo(2|4)`.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let n = normalize_name(name);
    let parts: Vec<&str> = n.split('_').collect();
    let unknown = || Error::UnknownAlgebra(name.to_string());
    let entry = match parts.as_slice() {
        ["sl2"] | ["sl", "2"] => CatalogEntry {
            name: "sl2".into(),
            h_dual: int(2),
            sdim: int(3),
            range: UnitaryRange::Abelian(AlgebraKind::Vir),
            collapsing: vec![],
        },
        ["spo", "2", "1"] => CatalogEntry {
            name: "spo_2_1".into(),
            h_dual: rat(3, 2),
            sdim: int(1),
            range: UnitaryRange::Abelian(AlgebraKind::Ns),
            collapsing: vec![],
        },
        ["spo", "2", "2"] | ["sl", "2", "1"] => CatalogEntry {
            name: "spo_2_2".into(),
            h_dual: int(1),
            sdim: int(0),
            range: UnitaryRange::Abelian(AlgebraKind::N2),
            collapsing: vec![],
        },
        ["spo", "2", "3"] => CatalogEntry {
            name: "spo_2_3".into(),
            h_dual: rat(1, 2),
            sdim: int(0),
            range: lattice(rat(1, 4), -3, false),
            collapsing: vec![
                Collapse { k: rat(-1, 2), target: Target::Trivial },
                Collapse { k: rat(-3, 4), target: Target::AffineSl2(int(1)) },
            ],
        },
        ["spo", "2", m] => match parse_u32(m) {
            Some(m) if m >= 4 => spo_2_m(m),
            _ => return Err(unknown()),
        },
        ["psl", "2", "2"] => CatalogEntry {
            name: "psl_2_2".into(),
            h_dual: int(0),
            sdim: int(-2),
            range: lattice(int(1), -2, false),
            collapsing: vec![Collapse { k: int(-1), target: Target::Trivial }],
        },
        ["sl", "2", m] => match parse_u32(m) {
            Some(m) if m >= 3 => CatalogEntry {
                name: format!("sl_2_{m}"),
                h_dual: int(2 - m),
                sdim: int(m * m - 4 * m + 3),
                range: UnitaryRange::CollapsingOnly,
                collapsing: vec![Collapse { k: int(-1), target: Target::Heisenberg }],
            },
            _ => return Err(unknown()),
        },
        ["sl", m, k] => match (parse_u32(m), parse_u32(k)) {
            (Some(m), Some(k)) if m > 2 && k >= 1 && !(k..=k + 2).contains(&m) => CatalogEntry {
                name: format!("sl_{m}_{k}"),
                h_dual: int(m - k),
                sdim: int((m - k) * (m - k) - 1),
                range: UnitaryRange::CollapsingOnly,
                collapsing: vec![Collapse { k: int(-1), target: Target::Heisenberg }],
            },
            _ => return Err(unknown()),
        },
        ["osp", m, k] => match (parse_u32(m), parse_u32(k)) {
            (Some(m), Some(k)) if m >= 1 && k >= 1 && m - k >= 10 && (m - k).is_even() => {
                let s = m - k;
                CatalogEntry {
                    name: format!("osp_{m}_{k}"),
                    h_dual: int(s - 2),
                    sdim: rat(s * (s - 1), 2),
                    range: UnitaryRange::CollapsingOnly,
                    collapsing: vec![Collapse { k: int(-2), target: Target::AffineSl2(rat(s - 8, 2)) }],
                }
            }
            _ => return Err(unknown()),
        },
        ["d", "2", "1", a] => {
            let a = canonical_d21(&parse_rational(a)?)?;
            if a.is_one() {
                return Ok(spo_2_m(4));
            }
            let (m, k) = (a.numer().clone(), a.denom().clone());
            let step = Rational::new(&m * &k, &m + &k);
            let mut collapsing = Vec::new();
            if a.is_integer() {
                // a = m ≥ 2
                collapsing.push(Collapse { k: -(&a / (&a + int(1))), target: Target::AffineSl2(&a - int(1)) });
            }
            CatalogEntry {
                name: format!("D_2_1_{}", display_rational(&a)),
                h_dual: int(0),
                sdim: int(1),
                range: lattice(step, 0, true),
                collapsing,
            }
        }
        ["f4"] | ["f", "4"] => CatalogEntry {
            name: "F4".into(),
            h_dual: int(-2),
            sdim: int(8),
            range: lattice(rat(2, 3), -2, false),
            collapsing: vec![Collapse { k: rat(-2, 3), target: Target::Trivial }],
        },
        ["g3"] | ["g", "3"] => CatalogEntry {
            name: "G3".into(),
            h_dual: rat(-3, 2),
            sdim: int(3),
            range: lattice(rat(3, 4), -2, false),
            collapsing: vec![Collapse { k: rat(-3, 4), target: Target::Trivial }],
        },
        ["g2"] | ["g", "2"] => CatalogEntry {
            name: "G2".into(),
            h_dual: int(4),
            sdim: int(14),
            range: UnitaryRange::CollapsingOnly,
            collapsing: vec![Collapse { k: rat(-4, 3), target: Target::AffineSl2(int(1)) }],
        },
        _ => return Err(unknown()),
    };
    Ok(entry)
}

pub fn unitary_range(name: &str) -> Result<UnitaryRange> {
    Ok(lookup(name)?.range)
}

pub fn collapsing_levels(name: &str) -> Result<Vec<Collapse>> {
    Ok(lookup(name)?.collapsing)
}

/// Names accepted by [`identity_check`].
pub const IDENTITY_NAMES: [&str; 6] = ["sl2", "spo_2_1", "spo_2_2", "spo_2_3", "psl_2_2", "D_2_1"];

/// `c(k) + shift ≡ closed form`, reduced on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub label: String,
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
}

impl IdentityCheck {
    pub fn verified(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn line(&self) -> String {
        format!("{}: {}", self.label, if self.verified() { "VERIFIED" } else { "FAILED" })
    }
}

fn poly(c: &[Rational]) -> Polynomial {
    Polynomial::new(c.to_vec())
}

/// Bundled algebras use `h∨` and `sdim` computed from their structure constants; `D(2,1;a)` uses `h∨ = 0`, `d = 1`.
pub fn identity_check(name: &str) -> Result<IdentityCheck> {
    let n = normalize_name(name);
    let key = if n.starts_with("d_2_1") { "D_2_1".to_string() } else { n };
    let (h, d) = if key == "D_2_1" {
        (int(0), int(1))
    } else {
        let g = load_named(&key)?;
        (dual_coxeter(&g)?, int(g.sdim()))
    };
    let c = central_charge_symbolic_formula(&h, &d);
    let k1 = poly(&[int(1), int(1)]);
    let sq = &k1 * &k1;
    let (label, shift, rhs) = match key.as_str() {
        // 1 − 6(k+1)²/(k+2)
        "sl2" => (
            "c(k) ≡ 1 − 6(k+1)²/(k+2)",
            int(0),
            RationalFunction::new(&poly(&[int(2), int(1)]) - &sq.scale(&int(6)), poly(&[int(2), int(1)]))?,
        ),
        "spo_2_1" => (
            "c(k) ≡ 3/2 − 12(k+1)²/(2k+3)",
            int(0),
            RationalFunction::new(&poly(&[rat(9, 2), int(3)]) - &sq.scale(&int(12)), poly(&[int(3), int(2)]))?,
        ),
        "spo_2_2" => ("c(k) ≡ −3(2k+1)", int(0), RationalFunction::poly(poly(&[int(-3), int(-6)]))),
        "spo_2_3" => ("c(k) + 1/2 ≡ −(6k+3)", rat(1, 2), RationalFunction::poly(poly(&[int(-3), int(-6)]))),
        "psl_2_2" => ("c(k) ≡ −6(k+1)", int(0), RationalFunction::poly(poly(&[int(-6), int(-6)]))),
        "D_2_1" => ("c(k) + 3 ≡ −6k", int(3), RationalFunction::poly(poly(&[int(0), int(-6)]))),
        _ => return Err(Error::UnknownAlgebra(name.to_string())),
    };
    let lhs = &c + &RationalFunction::constant(shift);
    Ok(IdentityCheck { name: key, label: label.to_string(), lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold() {
        for n in IDENTITY_NAMES {
            let c = identity_check(n).unwrap();
            assert!(c.verified(), "{n}: {} vs {}", c.lhs, c.rhs);
        }
        assert_eq!(identity_check("sl2").unwrap().line(), "c(k) ≡ 1 − 6(k+1)²/(k+2): VERIFIED");
        assert_eq!(identity_check("D(2,1;3)").unwrap().name, "D_2_1");
        assert!(identity_check("G2").is_err());
    }

    #[test]
    fn ranges() {
        let r = unitary_range("spo(2|3)").unwrap();
        assert_eq!(r.to_string(), "(1/4)ℤ_{≤-3}");
        let UnitaryRange::Levels(l) = r else { panic!() };
        assert!(l.contains(&rat(-3, 4)) && l.contains(&int(-1)) && !l.contains(&rat(-1, 2)) && !l.contains(&rat(-7, 8)));
        let f4 = lookup("F(4)").unwrap();
        assert_eq!((f4.h_dual.clone(), f4.sdim.clone()), (int(-2), int(8)));
        assert_eq!(f4.range.to_string(), "(2/3)ℤ_{≤-2}");
        assert!(matches!(unitary_range("sl2").unwrap(), UnitaryRange::Abelian(AlgebraKind::Vir)));
        assert!(lookup("e8").is_err());
        assert!(lookup("sl(4|2)").is_err());
        assert!(lookup("osp(13|2)").is_err());
    }

    #[test]
    fn d21_canonicalization() {
        let a = rat(3, 2);
        for b in d21_orbit(&a).unwrap() {
            assert_eq!(canonical_d21(&b).unwrap(), a);
        }
        assert!(lookup("D(2,1;0)").is_err());
        assert!(lookup("D(2,1;-1)").is_err());
        assert_eq!(lookup("D(2,1;1)").unwrap().name, "spo_2_4");
        assert_eq!(lookup("D(2,1;-1/2)").unwrap().name, "spo_2_4");
        let e = lookup("D(2,1;-1/3)").unwrap();
        assert_eq!(e.name, "D_2_1_2");
        assert_eq!(e.range.to_string(), "(2/3)ℤ_{<0}");
        assert_eq!(e.collapsing, vec![Collapse { k: rat(-2, 3), target: Target::AffineSl2(int(1)) }]);
    }

    #[test]
    fn collapsing_central_charges_match_targets() {
        // away from the critical level, c(k) of the collapsing level equals c of the target
        let mut names: Vec<String> = ["sl_2_3", "sl_2_5", "psl_2_2", "spo_2_3", "spo_2_4", "spo_2_6", "F4", "G3", "G2", "sl_5_1", "sl_7_3", "osp_12_2", "osp_17_5"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        names.extend((2..6).map(|m| format!("D_2_1_{m}")));
        let mut checked = 0;
        for n in names {
            let e = lookup(&n).unwrap();
            assert!(!e.collapsing.is_empty(), "{n}");
            for col in &e.collapsing {
                match e.central_charge(&col.k) {
                    Some(c) => {
                        assert_eq!(c, col.target.central_charge(), "{n} at {}", col.k);
                        checked += 1;
                    }
                    None => assert_eq!(col.k, -e.h_dual.clone(), "{n}"),
                }
            }
        }
        assert!(checked >= 15);
    }

    #[test]
    fn spo_2_m_closed_forms() {
        for m in 0..4 {
            let name = ["sl2", "spo_2_1", "spo_2_2", "spo_2_3"][m as usize];
            let g = load_named(name).unwrap();
            assert_eq!(dual_coxeter(&g).unwrap(), int(2) - rat(m, 2));
            assert_eq!(int(g.sdim()), int(3) + rat(m * (m - 5), 2));
            let e = lookup(name).unwrap();
            assert_eq!((e.h_dual, e.sdim), (int(2) - rat(m, 2), int(3) + rat(m * (m - 5), 2)));
        }
        assert_eq!(lookup("spo_2_3").unwrap().central_charge(&rat(-3, 4)), Some(int(1)));
    }
}
