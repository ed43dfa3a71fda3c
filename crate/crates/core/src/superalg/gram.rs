//! Vacuum expectations of words and abstract lowest-weight Gram matrices.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::words::{pbw_words, word_adjoint, Letter, Role, Word};
use crate::error::{Error, Result};
use crate::scalar::{rational_serde, GaussianRational, HalfInt, Rational};

/// Lowest weight `(c, h, q)`; `vacuum` adds `L_{-1}` and the `G_{-1/2}` to the annihilators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowestWeightData {
    #[serde(with = "rational_serde")]
    pub c: Rational,
    #[serde(with = "rational_serde")]
    pub h: Rational,
    #[serde(with = "rational_serde")]
    pub q: Rational,
    pub vacuum: bool,
}

impl LowestWeightData {
    pub fn vacuum(c: Rational) -> Self {
        Self { c, h: Rational::from_integer(0.into()), q: Rational::from_integer(0.into()), vacuum: true }
    }

    pub fn new(c: Rational, h: Rational, q: Rational) -> Self {
        Self { c, h, q, vacuum: false }
    }
}

/// Which adjacent pair (annihilator, creator) the reduction swaps next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Rightmost,
    Leftmost,
    /// Pseudo-random choice keyed on the word and the seed.
    Seeded(u64),
}

/// Memoizing evaluator of `⟨Ω, w Ω⟩`.
pub struct Reducer {
    pres: Presentation,
    lw: LowestWeightData,
    strategy: Strategy,
    memo: HashMap<Word, GaussianRational>,
}

impl Reducer {
    pub fn new(pres: Presentation, lw: LowestWeightData, strategy: Strategy) -> Self {
        Self { pres, lw, strategy, memo: HashMap::new() }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    fn zero_mode_value(&self, role: Role) -> Option<Rational> {
        match role {
            Role::L => Some(self.lw.h.clone()),
            Role::J => Some(self.lw.q.clone()),
            _ => None,
        }
    }

    fn annihilates_right(&self, l: Letter) -> bool {
        l.index.is_positive() || (self.lw.vacuum && l.kills_vacuum())
    }

    fn annihilates_left(&self, l: Letter) -> bool {
        self.annihilates_right(l.adjoint())
    }

    fn pick(&self, w: &[Letter], candidates: &[usize]) -> usize {
        match self.strategy {
            Strategy::Rightmost => *candidates.last().unwrap(),
            Strategy::Leftmost => candidates[0],
            Strategy::Seeded(seed) => {
                let mut h = std::collections::hash_map::DefaultHasher::new();
                seed.hash(&mut h);
                w.hash(&mut h);
                candidates[(h.finish() % candidates.len() as u64) as usize]
            }
        }
    }

    /// `⟨Ω, w Ω⟩` from the relations and the lowest-weight conditions only.
    pub fn expectation(&mut self, w: &[Letter]) -> GaussianRational {
        if w.is_empty() {
            return GaussianRational::one();
        }
        let total = w.iter().fold(HalfInt::ZERO, |a, l| a + l.index);
        if total != HalfInt::ZERO {
            return GaussianRational::zero();
        }
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let v = self.compute(w);
        self.memo.insert(w.to_vec(), v.clone());
        v
    }

    fn compute(&mut self, w: &[Letter]) -> GaussianRational {
        let n = w.len();
        let last = w[n - 1];
        if last.index == HalfInt::ZERO {
            return match self.zero_mode_value(last.role) {
                Some(x) => self.expectation(&w[..n - 1]).scale(&x),
                None => GaussianRational::zero(),
            };
        }
        if self.annihilates_right(last) {
            return GaussianRational::zero();
        }
        let first = w[0];
        if first.index == HalfInt::ZERO {
            return match self.zero_mode_value(first.role) {
                Some(x) => self.expectation(&w[1..]).scale(&x),
                None => GaussianRational::zero(),
            };
        }
        if first.index.is_negative() || self.annihilates_left(first) {
            return GaussianRational::zero();
        }
        let candidates: Vec<usize> =
            (0..n - 1).filter(|&i| !w[i].index.is_negative() && w[i + 1].index.is_negative()).collect();
        let i = self.pick(w, &candidates);
        let (x, y) = (w[i], w[i + 1]);
        // X Y = (−1)^{|X||Y|} Y X + [X, Y]
        let mut swapped = w.to_vec();
        swapped.swap(i, i + 1);
        let sign = x.role.parity().koszul(y.role.parity());
        let mut acc = self.expectation(&swapped).scale_int(sign);
        let br = self.pres.bracket(x, y);
        for (k, z) in &br.terms {
            let mut nw = Vec::with_capacity(n - 1);
            nw.extend_from_slice(&w[..i]);
            nw.push(*z);
            nw.extend_from_slice(&w[i + 2..]);
            acc += &(&self.expectation(&nw) * k);
        }
        if !br.central.is_zero() {
            let mut nw = Vec::with_capacity(n - 2);
            nw.extend_from_slice(&w[..i]);
            nw.extend_from_slice(&w[i + 2..]);
            acc += &(&self.expectation(&nw) * &br.central);
        }
        acc
    }

    /// `⟨left Ω, right Ω⟩`.
    pub fn pairing(&mut self, left: &[Letter], right: &[Letter]) -> GaussianRational {
        let mut w = word_adjoint(left);
        w.extend_from_slice(right);
        self.expectation(&w)
    }
}

pub fn vacuum_expectation(left: &[Letter], right: &[Letter], lw: &LowestWeightData, pres: &Presentation) -> GaussianRational {
    Reducer::new(pres.clone(), lw.clone(), Strategy::Rightmost).pairing(left, right)
}

/// Hermitian matrix of pairings of words at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub level: HalfInt,
    pub words: Vec<Word>,
    pub entries: Vec<Vec<GaussianRational>>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_violation().is_none()
    }

    pub fn hermitian_violation(&self) -> Option<(usize, usize)> {
        let n = self.entries.len();
        for i in 0..n {
            if self.entries[i].len() != n {
                return Some((i, 0));
            }
            for j in i..n {
                if self.entries[i][j] != self.entries[j][i].conj() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().flatten().all(GaussianRational::is_real)
    }

    pub fn check_hermitian(&self) -> Result<()> {
        match self.hermitian_violation() {
            Some((i, j)) => Err(Error::NotHermitian(i, j)),
            None => Ok(()),
        }
    }
}

pub fn abstract_gram_with(reducer: &mut Reducer, level: HalfInt) -> GramMatrix {
    let kind = reducer.pres.kind;
    let words = pbw_words(kind, level, reducer.lw.vacuum);
    let n = words.len();
    let mut entries = vec![vec![GaussianRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] = reducer.pairing(&words[i], &words[j]);
        }
    }
    GramMatrix { level, words, entries }
}

pub fn abstract_gram(pres: &Presentation, lw: &LowestWeightData, level: HalfInt) -> GramMatrix {
    let mut r = Reducer::new(pres.clone(), lw.clone(), Strategy::Rightmost);
    abstract_gram_with(&mut r, level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::words::AlgebraKind;
    use crate::scalar::{int, rat};

    fn l(role: Role, tw: i64) -> Letter {
        Letter::new(role, HalfInt::from_twice(tw))
    }

    fn g(r: Rational) -> GaussianRational {
        GaussianRational::real(r)
    }

    #[test]
    fn expectation_examples() {
        let c = rat(7, 5);
        let vir = Presentation::new(AlgebraKind::Vir, c.clone());
        let vac = LowestWeightData::vacuum(c.clone());
        let w = vec![l(Role::L, -4)];
        assert_eq!(vacuum_expectation(&w, &w, &vac, &vir), g(&c / int(2)));
        let ns = Presentation::new(AlgebraKind::Ns, c.clone());
        let w = vec![l(Role::G, -3)];
        assert_eq!(vacuum_expectation(&w, &w, &vac, &ns), g(&c * int(2) / int(3)));
        let h = rat(3, 7);
        let lw = LowestWeightData::new(c.clone(), h.clone(), int(0));
        let w = vec![l(Role::L, -2)];
        assert_eq!(vacuum_expectation(&w, &w, &lw, &vir), g(&h * int(2)));
    }

    #[test]
    fn small_grams() {
        let c = rat(3, 2);
        let vir = Presentation::new(AlgebraKind::Vir, c.clone());
        let g2 = abstract_gram(&vir, &LowestWeightData::vacuum(c.clone()), HalfInt::from_int(2));
        assert_eq!(g2.entries, vec![vec![g(rat(3, 4))]]);
        let ns = Presentation::new(AlgebraKind::Ns, c.clone());
        let g = abstract_gram(&ns, &LowestWeightData::vacuum(c.clone()), HalfInt::from_twice(3));
        assert_eq!(g.entries, vec![vec![GaussianRational::one()]]);
        for kind in [AlgebraKind::Vir, AlgebraKind::Ns, AlgebraKind::N2] {
            let p = Presentation::new(kind, int(5));
            let g0 = abstract_gram(&p, &LowestWeightData::new(int(5), int(1), int(1)), HalfInt::ZERO);
            assert_eq!(g0.entries, vec![vec![GaussianRational::one()]]);
        }
    }

    #[test]
    fn kac_determinant_level_two() {
        // det at level 2 of the Verma module: 2h(16h² + 2(c−5)h + c)
        let c = rat(1, 3);
        let h = rat(2, 9);
        let vir = Presentation::new(AlgebraKind::Vir, c.clone());
        let gm = abstract_gram(&vir, &LowestWeightData::new(c.clone(), h.clone(), int(0)), HalfInt::from_int(2));
        let e = &gm.entries;
        let det = &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0]);
        let want = &h * int(2) * (int(16) * &h * &h + int(2) * (&c - int(5)) * &h + &c);
        assert_eq!(det, g(want));
    }

    #[test]
    fn conjugate_symmetric_and_confluent() {
        let c = rat(9, 2);
        let lws = [
            (AlgebraKind::Ns, LowestWeightData::new(c.clone(), rat(1, 4), int(0))),
            (AlgebraKind::N2, LowestWeightData::new(int(6), rat(5, 8), int(1))),
            (AlgebraKind::Vir, LowestWeightData::vacuum(c.clone())),
        ];
        for (kind, lw) in lws {
            let p = Presentation::new(kind, lw.c.clone());
            let mut base = Reducer::new(p.clone(), lw.clone(), Strategy::Rightmost);
            let mut tw = 0;
            while tw <= if kind == AlgebraKind::N2 { 4 } else { 6 } {
                let words = pbw_words(kind, HalfInt::from_twice(tw), lw.vacuum);
                for strategy in [Strategy::Leftmost, Strategy::Seeded(7), Strategy::Seeded(1234)] {
                    let mut other = Reducer::new(p.clone(), lw.clone(), strategy);
                    for a in &words {
                        for b in &words {
                            let x = base.pairing(a, b);
                            assert_eq!(x, other.pairing(a, b));
                            assert_eq!(x, base.pairing(b, a).conj());
                        }
                    }
                }
                tw += 1;
            }
        }
    }
}
