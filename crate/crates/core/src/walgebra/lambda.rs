//! λ-brackets of the strong generators of a minimal W-algebra and the
//! mode commutators they induce.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::lie::{dual_coxeter, g_natural, killing_g0, minimal_gradation, project_natural, Element, GNatural, LieSuperalgebra, MinimalGradation};
use super::poly::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::linalg::binomial;
use crate::scalar::{int, HalfInt, Rational};

/// Generators and the composites that appear in their brackets.
/// `J` indices refer to the g♮ basis, `G` indices to the g_{−1/2} basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WSymbol {
    Vacuum,
    Nu,
    J(usize),
    G(usize),
    /// `:J^{u_a} J^{u_b}:`
    JJ(usize, usize),
    /// `T J^{u_a}`
    TJ(usize),
}

impl fmt::Display for WSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WSymbol::Vacuum => write!(f, "Ω"),
            WSymbol::Nu => write!(f, "ν"),
            WSymbol::J(a) => write!(f, "J{a}"),
            WSymbol::G(a) => write!(f, "G{a}"),
            WSymbol::JJ(a, b) => write!(f, ":J{a}J{b}:"),
            WSymbol::TJ(a) => write!(f, "TJ{a}"),
        }
    }
}

/// Finite combination of symbols with coefficients in ℚ(k); zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WElement(BTreeMap<WSymbol, RationalFunction>);

impl WElement {
    pub fn add_term(&mut self, s: WSymbol, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        let v = match self.0.remove(&s) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.0.insert(s, v);
        }
    }

    pub fn add(&mut self, other: &WElement) {
        for (s, c) in &other.0 {
            self.add_term(*s, c);
        }
    }

    pub fn scaled(&self, c: &RationalFunction) -> WElement {
        let mut out = WElement::default();
        for (s, v) in &self.0 {
            out.add_term(*s, &(v * c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, s: WSymbol) -> RationalFunction {
        self.0.get(&s).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WSymbol, &RationalFunction)> {
        self.0.iter()
    }
}

impl fmt::Display for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(s, c)| format!("[{c}]·{s}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Entry `j` is the coefficient of `λ^j`, that is `(a_{(j)}b)/j!`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LambdaPolynomial(pub BTreeMap<u32, WElement>);

impl LambdaPolynomial {
    fn set(&mut self, j: u32, e: WElement) {
        if !e.is_zero() {
            self.0.insert(j, e);
        }
    }

    pub fn get(&self, j: u32) -> WElement {
        self.0.get(&j).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<u32> {
        self.0.keys().copied().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    JJ,
    JG,
    GG,
}

impl BracketKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "JJ" => Some(BracketKind::JJ),
            "JG" => Some(BracketKind::JG),
            "GG" => Some(BracketKind::GG),
            _ => None,
        }
    }
}

/// A validated algebra with its gradation, g♮ and `h∨`.
#[derive(Clone, Debug)]
pub struct MinimalData {
    pub g: LieSuperalgebra,
    pub grading: MinimalGradation,
    pub natural: GNatural,
    pub h_dual: Rational,
}

fn rf(r: Rational) -> RationalFunction {
    RationalFunction::constant(r)
}

impl MinimalData {
    pub fn new(g: LieSuperalgebra) -> Result<Self> {
        let grading = minimal_gradation(&g)?;
        let natural = g_natural(&g, &grading)?;
        let h_dual = dual_coxeter(&g)?;
        Ok(Self { g, grading, natural, h_dual })
    }

    /// `⟨u, v⟩ = B(e, [u, v])` on g_{−1/2}, where `[u, v] ∈ ℂf`.
    pub fn pairing(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.g.form_on(&self.g.basis(self.g.e), &self.g.bracket(u, v))
    }

    fn in_span(&self, a: &[Rational], idx: &[usize]) -> bool {
        a.iter().enumerate().all(|(i, c)| c.is_zero() || idx.contains(&i))
    }

    fn check_natural(&self, a: &[Rational], what: &str) -> Result<()> {
        if self.natural.dim() == 0 {
            return Err(Error::Subspace(format!("g♮ of {} is zero, so {what} has no J-slot", self.g.name)));
        }
        let x = self.g.basis(self.g.x);
        if a.len() != self.g.dim() || !self.in_span(a, self.grading.g0()) || !self.g.form_on(a, &x).is_zero() {
            return Err(Error::Subspace(format!("{what} is not in g♮")));
        }
        Ok(())
    }

    fn check_minus_half(&self, a: &[Rational], what: &str) -> Result<()> {
        if a.len() != self.g.dim() || !self.in_span(a, self.grading.g_minus_half()) {
            return Err(Error::Subspace(format!("{what} is not in g_-1/2")));
        }
        Ok(())
    }

    /// `J^{a}` for `a ∈ g♮`, expanded over the g♮ basis.
    fn j_of(&self, a: &[Rational]) -> WElement {
        let mut out = WElement::default();
        for (i, c) in self.natural.coords(&self.g, a).into_iter().enumerate() {
            out.add_term(WSymbol::J(i), &rf(c));
        }
        out
    }

    fn tj_of(&self, a: &[Rational]) -> WElement {
        let mut out = WElement::default();
        for (i, c) in self.natural.coords(&self.g, a).into_iter().enumerate() {
            out.add_term(WSymbol::TJ(i), &rf(c));
        }
        out
    }

    fn jj_of(&self, a: &[Rational], b: &[Rational]) -> WElement {
        let ca = self.natural.coords(&self.g, a);
        let cb = self.natural.coords(&self.g, b);
        let mut out = WElement::default();
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                out.add_term(WSymbol::JJ(i, j), &rf(x * y));
            }
        }
        out
    }

    fn g_of(&self, a: &[Rational]) -> WElement {
        let mut out = WElement::default();
        for (pos, &i) in self.grading.g_minus_half().iter().enumerate() {
            out.add_term(WSymbol::G(pos), &rf(a[i].clone()));
        }
        out
    }

    /// The configured `p(k)`, if the structure file supplies one.
    pub fn p_of_k(&self) -> Option<Polynomial> {
        self.g.pk.as_ref().map(|(c0, c1)| Polynomial::new(vec![c0.clone(), c1.clone(), int(1)]))
    }

    /// `[a_λ b]` for the generator pair selected by `kind`.
    pub fn lambda_bracket(&self, kind: BracketKind, u: &[Rational], v: &[Rational], pk: Option<&Polynomial>) -> Result<LambdaPolynomial> {
        let g = &self.g;
        let mut lp = LambdaPolynomial::default();
        match kind {
            BracketKind::JJ => {
                self.check_natural(u, "u")?;
                self.check_natural(v, "v")?;
                lp.set(0, self.j_of(&g.bracket(u, v)));
                // (k + h∨/2)B(u,v) − ¼κ_{g0}(u,v)
                let b = g.form_on(u, v);
                let kap = killing_g0(g, &self.grading, u, v);
                let c = RationalFunction::poly(Polynomial::linear(b.clone(), &self.h_dual / int(2) * &b - kap / int(4)));
                let mut e = WElement::default();
                e.add_term(WSymbol::Vacuum, &c);
                lp.set(1, e);
            }
            BracketKind::JG => {
                self.check_natural(u, "u")?;
                self.check_minus_half(v, "v")?;
                lp.set(0, self.g_of(&g.bracket(u, v)));
            }
            BracketKind::GG => {
                self.check_minus_half(u, "u")?;
                self.check_minus_half(v, "v")?;
                let p = match pk.cloned().or_else(|| self.p_of_k()) {
                    Some(p) => p,
                    None => return Err(Error::Unsupported(format!("p(k) is not configured for {}", g.name))),
                };
                let uv = self.pairing(u, v);
                let nat = &self.natural;
                let e = g.basis(g.e);
                let w = project_natural(g, &g.bracket(&g.bracket(&e, u), v));
                // ⟨[u_α, u], [v, u^β]⟩
                let m: Vec<Vec<Rational>> = nat
                    .basis
                    .iter()
                    .map(|ua| nat.dual.iter().map(|ub| self.pairing(&g.bracket(ua, u), &g.bracket(v, ub))).collect())
                    .collect();
                let mut l0 = WElement::default();
                l0.add_term(WSymbol::Nu, &RationalFunction::poly(Polynomial::linear(&uv * int(-2), &uv * int(-2) * &self.h_dual)));
                for a in 0..nat.dim() {
                    l0.add(&self.jj_of(&nat.dual[a], &nat.basis[a]).scaled(&rf(uv.clone())));
                    for b in 0..nat.dim() {
                        if !m[a][b].is_zero() {
                            l0.add(&self.jj_of(&nat.dual[a], &nat.basis[b]).scaled(&rf(&m[a][b] * int(2))));
                        }
                    }
                }
                l0.add(&self.tj_of(&w).scaled(&RationalFunction::poly(Polynomial::linear(int(2), int(2)))));
                lp.set(0, l0);
                let mut l1 = self.j_of(&w);
                for a in 0..nat.dim() {
                    for b in 0..nat.dim() {
                        if !m[a][b].is_zero() {
                            l1.add(&self.j_of(&g.bracket(&nat.dual[a], &nat.basis[b])).scaled(&rf(m[a][b].clone())));
                        }
                    }
                }
                lp.set(1, l1.scaled(&rf(int(2))));
                let mut l2 = WElement::default();
                l2.add_term(WSymbol::Vacuum, &RationalFunction::poly(p.scale(&(&uv * int(2)))));
                lp.set(2, l2);
            }
        }
        Ok(lp)
    }

    /// The basis vector `b_i` as an element.
    pub fn element(&self, symbol: &str) -> Result<Element> {
        self.g.symbol_index(symbol).map(|i| self.g.basis(i)).ok_or_else(|| Error::Parse(format!("unknown symbol {symbol}")))
    }
}

/// `[a_p, b_q]` as modes at `p + q` plus a central scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeCombination {
    pub index: HalfInt,
    pub terms: WElement,
    pub scalar: RationalFunction,
}

/// `Σ_j C(p + d_a − 1, j) · j! · lp(j)` placed at mode `p + q`; Ω-terms become `δ_{p+q,0}` scalars.
pub fn borcherds_modes(a_weight: HalfInt, lp: &LambdaPolynomial, p: HalfInt, q: HalfInt) -> Result<ModeCombination> {
    let top = (p + a_weight - HalfInt::from_int(1))
        .as_int()
        .ok_or_else(|| Error::IndexLattice { what: "mode of a field of this weight".into(), index: p.to_string() })?;
    let index = p + q;
    let mut terms = WElement::default();
    let mut scalar = RationalFunction::zero();
    for (&j, e) in &lp.0 {
        let mut fact = int(1);
        for i in 1..=j as i64 {
            fact *= int(i);
        }
        let c = rf(binomial(top, j) * fact);
        if c.is_zero() {
            continue;
        }
        for (s, v) in e.iter() {
            if *s == WSymbol::Vacuum {
                if index == HalfInt::ZERO {
                    scalar = &scalar + &(v * &c);
                }
            } else {
                terms.add_term(*s, &(v * &c));
            }
        }
    }
    Ok(ModeCombination { index, terms, scalar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::walgebra::lie::{central_charge_symbolic, load_named};

    fn md(name: &str) -> MinimalData {
        MinimalData::new(load_named(name).unwrap()).unwrap()
    }

    #[test]
    fn gg_for_spo21() {
        let d = md("spo_2_1");
        let v = d.g.basis(d.grading.g_minus_half()[0]);
        let lp = d.lambda_bracket(BracketKind::GG, &v, &v, None).unwrap();
        assert_eq!(lp.support(), vec![0, 2]);
        let uv = d.pairing(&v, &v);
        assert!(!uv.is_zero());
        let nu = lp.get(0).coefficient(WSymbol::Nu);
        assert_eq!(nu, RationalFunction::poly(Polynomial::linear(&uv * int(-2), &uv * int(-3))));
        // [G_λ G] ∝ 2ν + (c/3)λ² forces the λ² entry to be ν-coefficient · c/6
        let c = central_charge_symbolic(&d.g).unwrap();
        let want = &(&nu * &c) * &rf(rat(1, 6));
        assert_eq!(lp.get(2).coefficient(WSymbol::Vacuum), want);
    }

    #[test]
    fn jg_single_term() {
        for name in ["spo_2_2", "spo_2_3", "psl_2_2"] {
            let d = md(name);
            for u in &d.natural.basis {
                for &i in d.grading.g_minus_half() {
                    let lp = d.lambda_bracket(BracketKind::JG, u, &d.g.basis(i), None).unwrap();
                    assert!(lp.support().iter().all(|&j| j == 0));
                    let m = borcherds_modes(HalfInt::from_int(1), &lp, HalfInt::from_int(2), HalfInt::from_twice(-3)).unwrap();
                    assert_eq!(m.terms, lp.get(0));
                    assert!(m.scalar.is_zero());
                }
            }
        }
    }

    #[test]
    fn jj_errors_without_natural() {
        let d = md("sl2");
        let x = d.g.basis(d.g.x);
        assert!(matches!(d.lambda_bracket(BracketKind::JJ, &x, &x, None), Err(Error::Subspace(_))));
        let d = md("spo_2_3");
        assert!(d.lambda_bracket(BracketKind::JJ, &x_of(&d), &d.natural.basis[0], None).is_err());
        assert!(matches!(
            d.lambda_bracket(BracketKind::GG, &d.g.basis(d.grading.g_minus_half()[0]), &d.g.basis(d.grading.g_minus_half()[1]), None),
            Err(Error::Unsupported(_))
        ));
    }

    fn x_of(d: &MinimalData) -> Element {
        d.g.basis(d.g.x)
    }

    #[test]
    fn jj_modes_are_antisymmetric() {
        for name in ["spo_2_2", "spo_2_3", "psl_2_2"] {
            let d = md(name);
            let one = HalfInt::from_int(1);
            for u in &d.natural.basis {
                for v in &d.natural.basis {
                    let luv = d.lambda_bracket(BracketKind::JJ, u, v, None).unwrap();
                    let lvu = d.lambda_bracket(BracketKind::JJ, v, u, None).unwrap();
                    for m in -2..=2 {
                        for n in -2..=2 {
                            let (m, n) = (HalfInt::from_int(m), HalfInt::from_int(n));
                            let a = borcherds_modes(one, &luv, m, n).unwrap();
                            let b = borcherds_modes(one, &lvu, n, m).unwrap();
                            let mut sum = a.terms.clone();
                            sum.add(&b.terms);
                            assert!(sum.is_zero(), "{name}");
                            assert!((&a.scalar + &b.scalar).is_zero(), "{name}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn jj_central_term() {
        // [J^u_m, J^u_{−m}] = m·γ(k) with γ from the λ¹ entry
        let d = md("spo_2_2");
        let u = &d.natural.basis[0];
        let lp = d.lambda_bracket(BracketKind::JJ, u, u, None).unwrap();
        let gamma = lp.get(1).coefficient(WSymbol::Vacuum);
        let m = borcherds_modes(HalfInt::from_int(1), &lp, HalfInt::from_int(3), HalfInt::from_int(-3)).unwrap();
        assert_eq!(m.scalar, &gamma * &rf(int(3)));
        assert!(m.terms.is_zero());
        assert!(borcherds_modes(HalfInt::from_int(1), &lp, HalfInt::from_twice(1), HalfInt::ZERO).is_err());
    }
}
