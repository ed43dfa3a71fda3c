//! Boson–fermion Fock superspaces.
//!
//! A [`FockState`] is a monomial of creation modes applied to the vacuum Ω.
//! Fermion creators are kept species-major with modes strictly descending, which
//! fixes every anticommutation sign.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, HalfInt, Parity, Rational};

/// Number of boson and fermion species.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldContent {
    pub bosons: usize,
    pub fermions: usize,
}

impl FieldContent {
    pub const NS: FieldContent = FieldContent { bosons: 1, fermions: 1 };
    pub const N2: FieldContent = FieldContent { bosons: 2, fermions: 2 };

    pub const fn new(bosons: usize, fermions: usize) -> Self {
        Self { bosons, fermions }
    }
}

/// Basis monomial. Ordered by weight, then boson content, then fermion content.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    twice_weight: u32,
    /// Per species, positive modes in weakly descending order.
    bosons: Vec<Vec<u32>>,
    /// Per species, twice the (odd) modes in strictly descending order.
    fermions: Vec<Vec<u32>>,
}

impl FockState {
    pub fn vacuum(content: FieldContent) -> Self {
        Self {
            twice_weight: 0,
            bosons: vec![Vec::new(); content.bosons],
            fermions: vec![Vec::new(); content.fermions],
        }
    }

    /// Builds a state from per-species creation modes (positive integers for
    /// bosons, positive half-odd values for fermions). Order inside a species is
    /// irrelevant for bosons; fermions are sorted and the sign of the sorting
    /// permutation is returned alongside.
    pub fn from_modes(bosons: Vec<Vec<u32>>, fermions: Vec<Vec<HalfInt>>) -> Result<(Self, i64)> {
        let mut tw: u64 = 0;
        let mut bs = Vec::with_capacity(bosons.len());
        for mut modes in bosons {
            if modes.iter().any(|&m| m == 0) {
                return Err(Error::InvalidParams("boson creation modes must be positive".into()));
            }
            modes.sort_unstable_by(|a, b| b.cmp(a));
            tw += modes.iter().map(|&m| 2 * m as u64).sum::<u64>();
            bs.push(modes);
        }
        let mut sign = 1;
        let mut fs = Vec::with_capacity(fermions.len());
        for modes in fermions {
            let mut tw_modes = Vec::with_capacity(modes.len());
            for n in modes {
                if !n.is_half_odd() || !n.is_positive() {
                    return Err(Error::IndexLattice { what: "fermion creation mode".into(), index: n.to_string() });
                }
                tw_modes.push(n.twice() as u32);
            }
            // insertion sort, tracking transpositions
            for i in 1..tw_modes.len() {
                let mut j = i;
                while j > 0 && tw_modes[j - 1] < tw_modes[j] {
                    tw_modes.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
                if j > 0 && tw_modes[j - 1] == tw_modes[j] {
                    return Err(Error::InvalidParams("repeated fermion mode".into()));
                }
            }
            tw += tw_modes.iter().map(|&m| m as u64).sum::<u64>();
            fs.push(tw_modes);
        }
        let st = Self { twice_weight: tw as u32, bosons: bs, fermions: fs };
        Ok((st, sign))
    }

    pub fn content(&self) -> FieldContent {
        FieldContent::new(self.bosons.len(), self.fermions.len())
    }

    pub fn weight(&self) -> HalfInt {
        HalfInt::from_twice(self.twice_weight as i64)
    }

    pub(crate) fn twice_weight(&self) -> i64 {
        self.twice_weight as i64
    }

    pub fn parity(&self) -> Parity {
        let n: usize = self.fermions.iter().map(Vec::len).sum();
        Parity::from_bit(n % 2 == 1)
    }

    pub fn is_vacuum(&self) -> bool {
        self.twice_weight == 0
    }

    pub fn boson_modes(&self, species: usize) -> &[u32] {
        &self.bosons[species]
    }

    /// Twice the fermion modes of `species`, descending.
    pub fn fermion_twice_modes(&self, species: usize) -> &[u32] {
        &self.fermions[species]
    }

    pub fn multiplicity(&self, species: usize, m: u32) -> usize {
        self.bosons[species].iter().filter(|&&x| x == m).count()
    }

    /// Adds one boson creator `J_{-m}`.
    pub(crate) fn with_boson(&self, species: usize, m: u32) -> Self {
        let mut s = self.clone();
        let modes = &mut s.bosons[species];
        let pos = modes.iter().position(|&x| x <= m).unwrap_or(modes.len());
        modes.insert(pos, m);
        s.twice_weight += 2 * m;
        s
    }

    /// Removes one boson creator `J_{-m}`; `None` if absent.
    pub(crate) fn without_boson(&self, species: usize, m: u32) -> Option<Self> {
        let pos = self.bosons[species].iter().position(|&x| x == m)?;
        let mut s = self.clone();
        s.bosons[species].remove(pos);
        s.twice_weight -= 2 * m;
        Some(s)
    }

    /// Number of fermion creators standing left of the canonical slot of
    /// `(species, twice_mode)`.
    fn fermions_before(&self, species: usize, twice_mode: u32) -> usize {
        let earlier: usize = self.fermions[..species].iter().map(Vec::len).sum();
        earlier + self.fermions[species].iter().take_while(|&&x| x > twice_mode).count()
    }

    /// Applies the creator `Φ_{-n}`; returns the sign and the new state, or `None` by nilpotence.
    pub(crate) fn with_fermion(&self, species: usize, twice_mode: u32) -> Option<(i64, Self)> {
        if self.fermions[species].contains(&twice_mode) {
            return None;
        }
        let before = self.fermions_before(species, twice_mode);
        let mut s = self.clone();
        let modes = &mut s.fermions[species];
        let pos = modes.iter().position(|&x| x < twice_mode).unwrap_or(modes.len());
        modes.insert(pos, twice_mode);
        s.twice_weight += twice_mode;
        Some((sign_of(before), s))
    }

    /// Applies the annihilator `Φ_n`; `None` when `Φ_{-n}` is absent.
    pub(crate) fn without_fermion(&self, species: usize, twice_mode: u32) -> Option<(i64, Self)> {
        let pos = self.fermions[species].iter().position(|&x| x == twice_mode)?;
        let before = self.fermions_before(species, twice_mode);
        let mut s = self.clone();
        s.fermions[species].remove(pos);
        s.twice_weight -= twice_mode;
        Some((sign_of(before), s))
    }

    /// ‖s‖² = Π m^k·k! over boson modes m of multiplicity k.
    pub fn norm_sq(&self) -> Rational {
        let mut acc = BigInt::one();
        for modes in &self.bosons {
            let mut i = 0;
            while i < modes.len() {
                let m = modes[i];
                let mut k = 0u32;
                while i < modes.len() && modes[i] == m {
                    k += 1;
                    i += 1;
                    acc *= BigInt::from(m) * BigInt::from(k);
                }
            }
        }
        Rational::from_integer(acc)
    }
}

fn sign_of(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (s, modes) in self.bosons.iter().enumerate() {
            let mut i = 0;
            while i < modes.len() {
                let m = modes[i];
                let k = modes[i..].iter().take_while(|&&x| x == m).count();
                let label = if self.bosons.len() == 1 { "J".to_string() } else { format!("J{s}") };
                if k > 1 {
                    parts.push(format!("{label}(-{m})^{k}"));
                } else {
                    parts.push(format!("{label}(-{m})"));
                }
                i += k;
            }
        }
        for (s, modes) in self.fermions.iter().enumerate() {
            let label = if self.fermions.len() == 1 { "F".to_string() } else { format!("F{s}") };
            for &t in modes {
                parts.push(format!("{label}(-{t}/2)"));
            }
        }
        parts.push("Ω".into());
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Partitions of `n` into parts ≤ `max_part`, descending.
fn partitions(n: u32, max_part: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for p in (1..=max_part.min(n)).rev() {
        cur.push(p);
        partitions(n - p, p, out, cur);
        cur.pop();
    }
}

/// Strictly descending sets of odd numbers below `max_part` summing to `n`.
fn odd_distinct(n: u32, max_part: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    let mut p = max_part.min(n);
    if p % 2 == 0 {
        p = p.saturating_sub(1);
    }
    while p >= 1 {
        cur.push(p);
        odd_distinct(n - p, p.saturating_sub(2), out, cur);
        cur.pop();
        if p < 2 {
            break;
        }
        p -= 2;
    }
}

/// Per-species candidates: (twice weight, modes).
fn boson_candidates(max_tw: u32) -> Vec<(u32, Vec<u32>)> {
    let mut res = Vec::new();
    for n in 0..=max_tw / 2 {
        let mut out = Vec::new();
        partitions(n, n, &mut out, &mut Vec::new());
        res.extend(out.into_iter().map(|p| (2 * n, p)));
    }
    res
}

fn fermion_candidates(max_tw: u32) -> Vec<(u32, Vec<u32>)> {
    let mut res = Vec::new();
    for tw in 0..=max_tw {
        let mut out = Vec::new();
        odd_distinct(tw, tw, &mut out, &mut Vec::new());
        res.extend(out.into_iter().map(|p| (tw, p)));
    }
    res
}

/// Every state of weight ≤ `max_weight`, sorted in the canonical order.
pub fn enumerate_basis(content: FieldContent, max_weight: HalfInt) -> Vec<FockState> {
    if max_weight.is_negative() {
        return Vec::new();
    }
    let max_tw = max_weight.twice() as u32;
    let bc = boson_candidates(max_tw);
    let fc = fermion_candidates(max_tw);
    let mut states = vec![FockState::vacuum(content)];
    for s in 0..content.bosons {
        let mut next = Vec::new();
        for st in &states {
            for (tw, modes) in &bc {
                if st.twice_weight + tw <= max_tw {
                    let mut ns = st.clone();
                    ns.bosons[s] = modes.clone();
                    ns.twice_weight += tw;
                    next.push(ns);
                }
            }
        }
        states = next;
    }
    for s in 0..content.fermions {
        let mut next = Vec::new();
        for st in &states {
            for (tw, modes) in &fc {
                if st.twice_weight + tw <= max_tw {
                    let mut ns = st.clone();
                    ns.fermions[s] = modes.clone();
                    ns.twice_weight += tw;
                    next.push(ns);
                }
            }
        }
        states = next;
    }
    states.sort();
    states
}

/// States of weight exactly `weight`.
pub fn enumerate_level(content: FieldContent, weight: HalfInt) -> Vec<FockState> {
    enumerate_basis(content, weight).into_iter().filter(|s| s.weight() == weight).collect()
}

pub fn state_norm_sq(s: &FockState) -> Rational {
    s.norm_sq()
}

/// Finite linear combination of basis states; never stores a zero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct FockVector {
    content: FieldContent,
    terms: BTreeMap<FockState, GaussianRational>,
}

impl FockVector {
    pub fn zero(content: FieldContent) -> Self {
        Self { content, terms: BTreeMap::new() }
    }

    pub fn vacuum(content: FieldContent) -> Self {
        Self::basis(FockState::vacuum(content))
    }

    pub fn basis(state: FockState) -> Self {
        let content = state.content();
        let mut terms = BTreeMap::new();
        terms.insert(state, GaussianRational::one());
        Self { content, terms }
    }

    pub fn content(&self) -> FieldContent {
        self.content
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockState, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &FockState) -> GaussianRational {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    /// Largest weight in the support (twice), or `None` for the zero vector.
    pub fn max_twice_weight(&self) -> Option<i64> {
        self.terms.keys().map(FockState::twice_weight).max()
    }

    pub fn add_term(&mut self, state: FockState, coef: GaussianRational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(state) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += coef · other`.
    pub fn add_scaled(&mut self, other: &FockVector, coef: &GaussianRational) {
        if coef.is_zero() {
            return;
        }
        for (s, c) in &other.terms {
            self.add_term(s.clone(), c * coef);
        }
    }

    pub fn scaled(&self, coef: &GaussianRational) -> FockVector {
        if coef.is_zero() {
            return FockVector::zero(self.content);
        }
        let terms = self.terms.iter().map(|(s, c)| (s.clone(), c * coef)).collect();
        FockVector { content: self.content, terms }
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut r = self.clone();
        r.add_scaled(other, &GaussianRational::from_int(-1));
        r
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut r = self.clone();
        r.add_scaled(other, &GaussianRational::one());
        r
    }

    /// ‖v‖² as an exact rational.
    pub fn norm_sq(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (s, c)| acc + c.norm_sq() * s.norm_sq())
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, c)| format!("({c})·{s}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// ⟨u, v⟩, conjugate-linear in `u`.
pub fn inner_product(u: &FockVector, v: &FockVector) -> Result<GaussianRational> {
    if u.content != v.content {
        return Err(Error::ContentMismatch(format!("{:?} vs {:?}", u.content, v.content)));
    }
    let (small, large, conj_small) = if u.terms.len() <= v.terms.len() { (u, v, true) } else { (v, u, false) };
    let mut acc = GaussianRational::zero();
    for (s, a) in &small.terms {
        if let Some(b) = large.terms.get(s) {
            let term = if conj_small { &a.conj() * b } else { &b.conj() * a };
            acc += &term.scale(&s.norm_sq());
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn h(tw: i64) -> HalfInt {
        HalfInt::from_twice(tw)
    }

    fn st(b: Vec<Vec<u32>>, f: Vec<Vec<i64>>) -> FockState {
        let f = f.into_iter().map(|v| v.into_iter().map(h).collect()).collect();
        FockState::from_modes(b, f).unwrap().0
    }

    /// Coefficients of Π(1−q^m)^{-b} Π(1+q^{n−1/2})^{f} up to q^{max}, indexed by twice-weight.
    fn generating_function(content: FieldContent, max_tw: usize) -> Vec<u64> {
        let mut c = vec![0u64; max_tw + 1];
        c[0] = 1;
        for _ in 0..content.bosons {
            for m in 1..=max_tw / 2 {
                let step = 2 * m;
                for t in step..=max_tw {
                    c[t] += c[t - step];
                }
            }
        }
        for _ in 0..content.fermions {
            let mut tw = 1;
            while tw <= max_tw {
                for t in (tw..=max_tw).rev() {
                    c[t] += c[t - tw];
                }
                tw += 2;
            }
        }
        c
    }

    #[test]
    fn small_bases() {
        assert_eq!(enumerate_basis(FieldContent::NS, HalfInt::ZERO).len(), 1);
        assert_eq!(enumerate_basis(FieldContent::NS, HalfInt::from_int(1)).len(), 3);
        let b2 = enumerate_basis(FieldContent::NS, HalfInt::from_int(2));
        // Ω; F(-1/2); J(-1); F(-3/2); J(-1)F(-1/2); J(-2); J(-1)^2; F(-3/2)F(-1/2)
        assert_eq!(b2.len(), 8);
        assert_eq!(enumerate_basis(FieldContent::new(0, 0), HalfInt::from_int(3)).len(), 1);
    }

    #[test]
    fn basis_counts_match_generating_function() {
        for content in [FieldContent::NS, FieldContent::N2, FieldContent::new(1, 0), FieldContent::new(0, 2)] {
            let gf = generating_function(content, 12);
            let basis = enumerate_basis(content, HalfInt::from_int(6));
            for (tw, &want) in gf.iter().enumerate() {
                let got = basis.iter().filter(|s| s.twice_weight() == tw as i64).count() as u64;
                assert_eq!(got, want, "content {content:?}, twice weight {tw}");
            }
        }
    }

    #[test]
    fn basis_is_sorted_and_unique() {
        let b = enumerate_basis(FieldContent::N2, HalfInt::from_int(3));
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert!(b.windows(2).all(|w| w[0].weight() <= w[1].weight()));
    }

    #[test]
    fn norms() {
        assert_eq!(FockState::vacuum(FieldContent::NS).norm_sq(), int(1));
        assert_eq!(st(vec![vec![1, 1]], vec![vec![]]).norm_sq(), int(2));
        assert_eq!(st(vec![vec![2]], vec![vec![3]]).norm_sq(), int(2));
        assert_eq!(st(vec![vec![3, 3, 1]], vec![vec![]]).norm_sq(), int(18));
    }

    #[test]
    fn inner_products() {
        let omega = FockVector::vacuum(FieldContent::NS);
        assert_eq!(inner_product(&omega, &omega).unwrap(), GaussianRational::one());
        let f = FockVector::basis(st(vec![vec![]], vec![vec![1]]));
        let j = FockVector::basis(st(vec![vec![1]], vec![vec![]]));
        assert!(inner_product(&f, &j).unwrap().is_zero());
        let ij = j.scaled(&GaussianRational::i());
        assert_eq!(inner_product(&ij, &j).unwrap(), -GaussianRational::i());
        let other = FockVector::vacuum(FieldContent::N2);
        assert!(matches!(inner_product(&omega, &other), Err(Error::ContentMismatch(_))));
    }

    #[test]
    fn fermion_ordering_sign() {
        let (s, sign) = FockState::from_modes(vec![], vec![vec![h(1), h(3)]]).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(s.fermion_twice_modes(0), &[3, 1]);
        assert_eq!(s.weight(), HalfInt::from_int(2));
        assert_eq!(s.parity(), Parity::Even);
    }

    #[test]
    fn weight_and_parity_additive() {
        for s in enumerate_basis(FieldContent::N2, HalfInt::from_int(2)) {
            let b: u32 = (0..2).flat_map(|i| s.boson_modes(i).iter().map(|m| 2 * m)).sum();
            let f: u32 = (0..2).flat_map(|i| s.fermion_twice_modes(i).iter().copied()).sum();
            assert_eq!(s.twice_weight(), (b + f) as i64);
            let nf: usize = (0..2).map(|i| s.fermion_twice_modes(i).len()).sum();
            assert_eq!(s.parity().is_odd(), nf % 2 == 1);
        }
    }
}
