//! Free-field realizations of NS and N2 on boson–fermion Fock spaces.
//!
//! In the N2 family the fermion pair is normalized so that every generator
//! has coefficients in ℚ(i).

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{FieldContent, FockVector};
use crate::oscillators::{
    bilinear_mode, circle_derivative_mode, field_mode, tail_sum, BilinearSpec, CachedOperator, FieldRef, ModeOperator,
};
use crate::scalar::{int, rat, rational_serde, GaussianRational, HalfInt, Parity, Rational};
use crate::superalg::words::{pbw_words, AlgebraKind, Letter, Word};

pub use crate::superalg::words::Role;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ns,
    N2,
}

impl Family {
    pub fn content(self) -> FieldContent {
        match self {
            Family::Ns => FieldContent::NS,
            Family::N2 => FieldContent::N2,
        }
    }

    pub fn algebra(self) -> AlgebraKind {
        match self {
            Family::Ns => AlgebraKind::Ns,
            Family::N2 => AlgebraKind::N2,
        }
    }

    pub fn roles(self) -> &'static [Role] {
        self.algebra().roles()
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_lowercase().as_str() {
            "ns" => Some(Family::Ns),
            "n2" => Some(Family::N2),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ns => "ns",
            Family::N2 => "n2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Tilde,
    Bs,
    Unitary,
}

impl Variant {
    pub fn parse(s: &str) -> Option<Variant> {
        match s.to_ascii_lowercase().as_str() {
            "tilde" => Some(Variant::Tilde),
            "bs" => Some(Variant::Bs),
            "unitary" => Some(Variant::Unitary),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Tilde => "tilde",
            Variant::Bs => "bs",
            Variant::Unitary => "unitary",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationParams {
    pub family: Family,
    pub variant: Variant,
    #[serde(with = "rational_serde")]
    pub kappa: Rational,
    #[serde(with = "rational_serde", default = "Rational::zero")]
    pub eta: Rational,
    #[serde(with = "rational_serde", default = "Rational::zero")]
    pub omega: Rational,
}

impl RealizationParams {
    pub fn new(family: Family, variant: Variant, kappa: Rational, eta: Rational, omega: Rational) -> Result<Self> {
        let p = Self { family, variant, kappa, eta, omega };
        p.validate()?;
        Ok(p)
    }

    pub fn ns(variant: Variant, kappa: Rational) -> Self {
        Self { family: Family::Ns, variant, kappa, eta: Rational::zero(), omega: Rational::zero() }
    }

    pub fn n2(variant: Variant, kappa: Rational) -> Self {
        Self { family: Family::N2, variant, kappa, eta: Rational::zero(), omega: Rational::zero() }
    }

    pub fn with_eta(mut self, eta: Rational) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_omega(mut self, omega: Rational) -> Self {
        self.omega = omega;
        self
    }

    /// η needs UNITARY; ω needs N2 UNITARY.
    pub fn validate(&self) -> Result<()> {
        if self.variant != Variant::Unitary && !self.eta.is_zero() {
            return Err(Error::InvalidParams("eta is only meaningful for the unitary variant".into()));
        }
        if !(self.variant == Variant::Unitary && self.family == Family::N2) && !self.omega.is_zero() {
            return Err(Error::InvalidParams("omega is only meaningful for the N2 unitary variant".into()));
        }
        Ok(())
    }

    pub fn content(&self) -> FieldContent {
        self.family.content()
    }

    pub fn central_charge(&self) -> Rational {
        let k2 = &self.kappa * &self.kappa;
        match self.family {
            Family::Ns => rat(3, 2) + int(12) * k2,
            Family::N2 => int(3) + int(12) * k2,
        }
    }

    /// Expected `L_0` eigenvalue on Ω.
    pub fn lowest_weight(&self) -> Rational {
        if self.variant != Variant::Unitary {
            return Rational::zero();
        }
        let mut s = &self.kappa * &self.kappa + &self.eta * &self.eta;
        if self.family == Family::N2 {
            s += &self.omega * &self.omega;
        }
        s / int(2)
    }

    /// Expected `J_0` eigenvalue on Ω (N2 only).
    pub fn charge(&self) -> Rational {
        if self.family == Family::N2 && self.variant == Variant::Unitary {
            int(2) * &self.kappa * &self.omega
        } else {
            Rational::zero()
        }
    }

    pub fn is_vacuum(&self) -> bool {
        self.lowest_weight().is_zero() && self.charge().is_zero()
    }
}

impl fmt::Display for RealizationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::scalar::display_rational as d;
        write!(f, "{} {} κ={}", self.family, self.variant, d(&self.kappa))?;
        if self.variant == Variant::Unitary {
            write!(f, " η={}", d(&self.eta))?;
            if self.family == Family::N2 {
                write!(f, " ω={}", d(&self.omega))?;
            }
        }
        Ok(())
    }
}

fn re(r: Rational) -> GaussianRational {
    GaussianRational::real(r)
}

fn im(r: Rational) -> GaussianRational {
    GaussianRational::imag(r)
}

/// Accumulates a homogeneous sum of mode operators.
struct Sum {
    op: ModeOperator,
}

impl Sum {
    fn new(content: FieldContent, shift: HalfInt, parity: Parity) -> Self {
        Self { op: ModeOperator::zero(content, shift, parity) }
    }

    fn add(&mut self, coef: GaussianRational, term: Result<ModeOperator>) -> Result<()> {
        if coef.is_zero() {
            return Ok(());
        }
        let t = term?.scaled(&coef);
        let op = std::mem::replace(&mut self.op, ModeOperator::zero(t.content(), t.weight_shift(), t.parity()));
        self.op = op.plus(t)?;
        Ok(())
    }

    fn add_scalar(&mut self, content: FieldContent, coef: GaussianRational) -> Result<()> {
        self.add(coef.clone(), Ok(ModeOperator::identity(content)))
    }
}

/// The mode `role_index` of the realization.
pub fn make_mode(params: &RealizationParams, role: Role, index: HalfInt) -> Result<ModeOperator> {
    params.validate()?;
    if !params.family.roles().contains(&role) {
        return Err(Error::InvalidParams(format!("role {role} does not belong to {}", params.family)));
    }
    if !role.accepts(index) {
        return Err(Error::IndexLattice { what: role.to_string(), index: index.to_string() });
    }
    match params.family {
        Family::Ns => ns_mode(params, role, index),
        Family::N2 => n2_mode(params, role, index),
    }
}

fn one() -> GaussianRational {
    GaussianRational::one()
}

fn half() -> GaussianRational {
    re(rat(1, 2))
}

fn ns_mode(p: &RealizationParams, role: Role, k: HalfInt) -> Result<ModeOperator> {
    let c = FieldContent::NS;
    let kappa = &p.kappa;
    let kr = k.to_rational();
    let (j, f) = (FieldRef::Boson(0), FieldRef::Fermion(0));
    match role {
        Role::L => {
            let mut s = Sum::new(c, k, Parity::Even);
            s.add(half(), bilinear_mode(c, BilinearSpec::BosonSquare(0), k))?;
            s.add(half(), bilinear_mode(c, BilinearSpec::FermionDerivative(0), k))?;
            match p.variant {
                Variant::Tilde => s.add(im(-(kappa * (int(1) + &kr))), field_mode(c, j, k))?,
                Variant::Bs => {
                    s.add(im(-(kappa * (int(1) + &kr))), field_mode(c, j, k))?;
                    s.add(im(-(kappa * int(2))), tail_sum(c, j, k))?;
                }
                Variant::Unitary => {
                    s.add(re(p.eta.clone()), field_mode(c, j, k))?;
                    s.add(re(kappa.clone()), circle_derivative_mode(c, j, k))?;
                    if k == HalfInt::ZERO {
                        s.add_scalar(c, re(p.lowest_weight()))?;
                    }
                }
            }
            Ok(s.op)
        }
        Role::G => {
            let mut s = Sum::new(c, k, Parity::Odd);
            s.add(one(), bilinear_mode(c, BilinearSpec::BosonFermion(0, 0), k))?;
            let lin = int(1) + int(2) * &kr;
            match p.variant {
                Variant::Tilde => s.add(im(-(kappa * lin)), field_mode(c, f, k))?,
                Variant::Bs => {
                    s.add(im(-(kappa * lin)), field_mode(c, f, k))?;
                    s.add(im(-(kappa * int(2))), tail_sum(c, f, k))?;
                }
                Variant::Unitary => {
                    s.add(re(p.eta.clone()), field_mode(c, f, k))?;
                    s.add(re(kappa * int(2)), circle_derivative_mode(c, f, k))?;
                }
            }
            Ok(s.op)
        }
        _ => unreachable!("role checked by make_mode"),
    }
}

fn n2_mode(p: &RealizationParams, role: Role, k: HalfInt) -> Result<ModeOperator> {
    let c = FieldContent::N2;
    let kappa = &p.kappa;
    let kr = k.to_rational();
    let (jp, jm) = (FieldRef::Boson(0), FieldRef::Boson(1));
    let (fp, fm) = (FieldRef::Fermion(0), FieldRef::Fermion(1));
    match role {
        Role::L => {
            let mut s = Sum::new(c, k, Parity::Even);
            for sp in 0..2 {
                s.add(half(), bilinear_mode(c, BilinearSpec::BosonSquare(sp), k))?;
                s.add(half(), bilinear_mode(c, BilinearSpec::FermionDerivative(sp), k))?;
            }
            match p.variant {
                Variant::Tilde => s.add(im(-(kappa * (int(1) + &kr))), field_mode(c, jm, k))?,
                Variant::Bs => {
                    s.add(im(-(kappa * (int(1) + &kr))), field_mode(c, jm, k))?;
                    s.add(im(-(kappa * int(2))), tail_sum(c, jm, k))?;
                }
                Variant::Unitary => {
                    s.add(re(p.omega.clone()), field_mode(c, jp, k))?;
                    s.add(re(p.eta.clone()), field_mode(c, jm, k))?;
                    s.add(re(kappa.clone()), circle_derivative_mode(c, jm, k))?;
                    if k == HalfInt::ZERO {
                        s.add_scalar(c, re(p.lowest_weight()))?;
                    }
                }
            }
            Ok(s.op)
        }
        Role::G1 | Role::G2 => {
            let mut s = Sum::new(c, k, Parity::Odd);
            // Ĝ¹ = :J⁺Φ⁺: − :J⁻Φ⁻:,  Ĝ² = :J⁺Φ⁻: + :J⁻Φ⁺:
            let (partner, sign) = if role == Role::G1 {
                s.add(one(), bilinear_mode(c, BilinearSpec::BosonFermion(0, 0), k))?;
                s.add(-one(), bilinear_mode(c, BilinearSpec::BosonFermion(1, 1), k))?;
                (fm, 1)
            } else {
                s.add(one(), bilinear_mode(c, BilinearSpec::BosonFermion(0, 1), k))?;
                s.add(one(), bilinear_mode(c, BilinearSpec::BosonFermion(1, 0), k))?;
                (fp, -1)
            };
            let sign = int(sign);
            let lin = int(1) + int(2) * &kr;
            match p.variant {
                Variant::Tilde => s.add(im(&sign * kappa * lin), field_mode(c, partner, k))?,
                Variant::Bs => {
                    s.add(im(&sign * kappa * lin), field_mode(c, partner, k))?;
                    s.add(im(&sign * kappa * int(2)), tail_sum(c, partner, k))?;
                }
                Variant::Unitary => {
                    // Ĝ¹ += ωΦ⁺ − ηΦ⁻ − 2κ(Φ⁻)′,  Ĝ² += ωΦ⁻ + ηΦ⁺ + 2κ(Φ⁺)′
                    let other = if role == Role::G1 { fp } else { fm };
                    s.add(re(p.omega.clone()), field_mode(c, other, k))?;
                    s.add(re(-(&sign * &p.eta)), field_mode(c, partner, k))?;
                    s.add(re(-(&sign * kappa * int(2))), circle_derivative_mode(c, partner, k))?;
                }
            }
            Ok(s.op)
        }
        Role::J => {
            let mut s = Sum::new(c, k, Parity::Even);
            s.add(im(int(-1)), bilinear_mode(c, BilinearSpec::FermionPair(0, 1), k))?;
            s.add(re(kappa * int(2)), field_mode(c, jp, k))?;
            if k == HalfInt::ZERO {
                s.add_scalar(c, re(p.charge()))?;
            }
            Ok(s.op)
        }
        _ => unreachable!("role checked by make_mode"),
    }
}

/// A realization with a cache of constructed modes.
pub struct Realization {
    params: RealizationParams,
    cache: HashMap<Letter, CachedOperator>,
}

impl Realization {
    pub fn new(params: RealizationParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params, cache: HashMap::new() })
    }

    pub fn params(&self) -> &RealizationParams {
        &self.params
    }

    pub fn content(&self) -> FieldContent {
        self.params.content()
    }

    fn cached(&mut self, role: Role, index: HalfInt) -> Result<&mut CachedOperator> {
        let key = Letter::new(role, index);
        if !self.cache.contains_key(&key) {
            let op = make_mode(&self.params, role, index)?;
            self.cache.insert(key, CachedOperator::new(op));
        }
        Ok(self.cache.get_mut(&key).expect("inserted above"))
    }

    pub fn mode(&mut self, role: Role, index: HalfInt) -> Result<&ModeOperator> {
        Ok(self.cached(role, index)?.operator())
    }

    pub fn apply(&mut self, role: Role, index: HalfInt, v: &FockVector) -> Result<FockVector> {
        Ok(self.cached(role, index)?.apply(v))
    }

    pub fn apply_letter(&mut self, l: Letter, v: &FockVector) -> Result<FockVector> {
        self.apply(l.role, l.index, v)
    }

    /// `w Ω`, rightmost letter first.
    pub fn word_vector(&mut self, w: &[Letter]) -> Result<FockVector> {
        let mut v = FockVector::vacuum(self.content());
        for l in w.iter().rev() {
            if v.is_zero() {
                break;
            }
            v = self.apply(l.role, l.index, &v)?;
        }
        Ok(v)
    }

    pub fn vacuum(&self) -> FockVector {
        FockVector::vacuum(self.content())
    }
}

/// PBW words of weight ≤ `max_level` with their vectors. The vacuum rule
/// applies when the lowest weight is zero.
pub fn cyclic_words(params: &RealizationParams, max_level: HalfInt) -> Result<Vec<(Word, FockVector)>> {
    let mut r = Realization::new(params.clone())?;
    let mut memo: HashMap<Word, FockVector> = HashMap::new();
    let mut out = Vec::new();
    let vacuum = params.is_vacuum();
    let mut tw = 0;
    while tw <= max_level.twice() {
        for w in pbw_words(params.family.algebra(), HalfInt::from_twice(tw), vacuum) {
            let v = if w.is_empty() {
                r.vacuum()
            } else {
                // every suffix of a PBW word is a PBW word of lower weight
                let rest = memo.get(&w[1..]).cloned().map_or_else(|| r.word_vector(&w[1..]), Ok)?;
                r.apply(w[0].role, w[0].index, &rest)?
            };
            memo.insert(w.clone(), v.clone());
            out.push((w, v));
        }
        tw += 1;
    }
    Ok(out)
}
