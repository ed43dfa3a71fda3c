//! Bracket tables of the Virasoro, Neveu–Schwarz and N=2 algebras.

use super::words::{AlgebraKind, Letter, Role};
use crate::scalar::{int, rat, GaussianRational, HalfInt, Rational};

/// `[a, b] = Σ coef·letter + central`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Bracket {
    pub terms: Vec<(GaussianRational, Letter)>,
    pub central: GaussianRational,
}

impl Bracket {
    fn zero() -> Self {
        Self::default()
    }

    fn term(coef: GaussianRational, l: Letter) -> Self {
        let mut b = Self::zero();
        b.push(coef, l);
        b
    }

    fn push(&mut self, coef: GaussianRational, l: Letter) {
        if !coef.is_zero() {
            self.terms.push((coef, l));
        }
    }

    fn with_central(mut self, c: GaussianRational) -> Self {
        self.central = c;
        self
    }

    pub fn scaled(&self, k: &GaussianRational) -> Self {
        Self {
            terms: self.terms.iter().map(|(c, l)| (c * k, *l)).filter(|(c, _)| !c.is_zero()).collect(),
            central: &self.central * k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }
}

/// A structural bracket on generator modes at fixed central charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub kind: AlgebraKind,
    pub c: Rational,
}

fn re(r: Rational) -> GaussianRational {
    GaussianRational::real(r)
}

fn im(r: Rational) -> GaussianRational {
    GaussianRational::imag(r)
}

impl Presentation {
    pub fn new(kind: AlgebraKind, c: Rational) -> Self {
        Self { kind, c }
    }

    pub fn roles(&self) -> &'static [Role] {
        self.kind.roles()
    }

    /// Supercommutator `[a, b]`; letters outside the algebra bracket to zero.
    pub fn bracket(&self, a: Letter, b: Letter) -> Bracket {
        let roles = self.roles();
        if !roles.contains(&a.role) || !roles.contains(&b.role) {
            return Bracket::zero();
        }
        if a.role <= b.role {
            self.ordered(a, b)
        } else {
            // [a, b] = −(−1)^{|a||b|} [b, a]
            let sign = -a.role.parity().koszul(b.role.parity());
            self.ordered(b, a).scaled(&GaussianRational::from_int(sign))
        }
    }

    fn ordered(&self, a: Letter, b: Letter) -> Bracket {
        let m = a.index.to_rational();
        let n = b.index.to_rational();
        let sum = a.index + b.index;
        let delta = sum == HalfInt::ZERO;
        let c = &self.c;
        use Role::*;
        match (a.role, b.role) {
            (L, L) => {
                let mut br = Bracket::term(re(&m - &n), Letter::new(L, sum));
                if delta {
                    br.central = re(c * (&m * &m * &m - &m) / int(12));
                }
                br
            }
            (L, G) | (L, G1) | (L, G2) => Bracket::term(re(&m / int(2) - &n), Letter::new(b.role, sum)),
            (G, G) | (G1, G1) | (G2, G2) => {
                let br = Bracket::term(re(int(2)), Letter::new(L, sum));
                if delta {
                    br.with_central(re(c / int(3) * (&m * &m - rat(1, 4))))
                } else {
                    br
                }
            }
            (G1, G2) => Bracket::term(im(&m - &n), Letter::new(J, sum)),
            (G1, J) => Bracket::term(im(int(-1)), Letter::new(G2, sum)),
            (G2, J) => Bracket::term(im(int(1)), Letter::new(G1, sum)),
            (L, J) => Bracket::term(re(-n), Letter::new(J, sum)),
            (J, J) => {
                if delta {
                    Bracket::zero().with_central(re(c / int(3) * m))
                } else {
                    Bracket::zero()
                }
            }
            _ => Bracket::zero(),
        }
    }
}

/// `[[a,b],c]` expanded to second order, returned as coefficient on letters plus central part.
pub fn nested(p: &Presentation, a: Letter, b: Letter, c: Letter) -> Bracket {
    let inner = p.bracket(a, b);
    let mut out = Bracket::zero();
    for (k, l) in &inner.terms {
        let br = p.bracket(*l, c).scaled(k);
        out.terms.extend(br.terms);
        out.central += &br.central;
    }
    out
}

/// Collects like letters; drops zeros.
pub fn normalize(b: &Bracket) -> Bracket {
    let mut acc: std::collections::BTreeMap<Letter, GaussianRational> = Default::default();
    for (k, l) in &b.terms {
        *acc.entry(*l).or_default() += k;
    }
    Bracket { terms: acc.into_iter().filter(|(_, k)| !k.is_zero()).map(|(l, k)| (k, l)).collect(), central: b.central.clone() }
}

/// Super-Jacobi defect `[a,[b,c]] − [[a,b],c] − (−1)^{|a||b|}[b,[a,c]]`.
pub fn jacobi_defect(p: &Presentation, a: Letter, b: Letter, c: Letter) -> Bracket {
    let mut total = Bracket::zero();
    let mut add = |br: Bracket, k: i64| {
        let br = br.scaled(&GaussianRational::from_int(k));
        total.terms.extend(br.terms);
        total.central += &br.central;
    };
    // [a,[b,c]]
    let bc = p.bracket(b, c);
    let mut t1 = Bracket::zero();
    for (k, l) in &bc.terms {
        let br = p.bracket(a, *l).scaled(k);
        t1.terms.extend(br.terms);
        t1.central += &br.central;
    }
    add(t1, 1);
    add(nested(p, a, b, c), -1);
    let ac = p.bracket(a, c);
    let mut t3 = Bracket::zero();
    for (k, l) in &ac.terms {
        let br = p.bracket(b, *l).scaled(k);
        t3.terms.extend(br.terms);
        t3.central += &br.central;
    }
    add(t3, -a.role.parity().koszul(b.role.parity()));
    let n = normalize(&total);
    if n.central.is_zero() && n.terms.is_empty() {
        Bracket::zero()
    } else {
        n
    }
}

/// Every letter of the algebra with |index| ≤ `window`.
pub fn letters_in_window(kind: AlgebraKind, window: HalfInt) -> Vec<Letter> {
    let mut out = Vec::new();
    for &role in kind.roles() {
        let mut t = -window.twice();
        while t <= window.twice() {
            let idx = HalfInt::from_twice(t);
            if role.accepts(idx) {
                out.push(Letter::new(role, idx));
            }
            t += 1;
        }
    }
    out
}
