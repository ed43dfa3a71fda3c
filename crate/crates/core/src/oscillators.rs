//! Mode operators of free bosons and fermions, their shifted normal powers and
//! the alternating tail sums.
//!
//! Every primitive sends a basis state to a finite combination with integer
//! coefficients, so application is exact and needs no truncation.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fock::{FieldContent, FockState, FockVector};
use crate::scalar::{GaussianRational, HalfInt, Parity};

/// One free field: the boson current `J^s` or the fermion `Φ^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldRef {
    Boson(usize),
    Fermion(usize),
}

impl FieldRef {
    pub fn parity(self) -> Parity {
        match self {
            FieldRef::Boson(_) => Parity::Even,
            FieldRef::Fermion(_) => Parity::Odd,
        }
    }

    /// Whether `index` lies on this field's mode lattice.
    pub fn accepts(self, index: HalfInt) -> bool {
        match self {
            FieldRef::Boson(_) => index.is_integer(),
            FieldRef::Fermion(_) => index.is_half_odd(),
        }
    }

    fn validate(self, content: FieldContent) -> Result<()> {
        match self {
            FieldRef::Boson(s) if s >= content.bosons => Err(Error::SpeciesOutOfRange { index: s, count: content.bosons }),
            FieldRef::Fermion(s) if s >= content.fermions => {
                Err(Error::SpeciesOutOfRange { index: s, count: content.fermions })
            }
            _ => Ok(()),
        }
    }

    fn check_index(self, index: HalfInt) -> Result<()> {
        if self.accepts(index) {
            Ok(())
        } else {
            Err(Error::IndexLattice { what: format!("{self}"), index: index.to_string() })
        }
    }
}

impl fmt::Display for FieldRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldRef::Boson(s) => write!(f, "J{s}"),
            FieldRef::Fermion(s) => write!(f, "F{s}"),
        }
    }
}

/// The four shifted normal powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BilinearSpec {
    /// `:J^s J^s:`
    BosonSquare(usize),
    /// `:∂Φ^s Φ^s:`
    FermionDerivative(usize),
    /// `:J^s Φ^t:`
    BosonFermion(usize, usize),
    /// `:Φ^s Φ^t:`, s ≠ t
    FermionPair(usize, usize),
}

impl BilinearSpec {
    fn fields(self) -> (FieldRef, FieldRef) {
        match self {
            BilinearSpec::BosonSquare(s) => (FieldRef::Boson(s), FieldRef::Boson(s)),
            BilinearSpec::FermionDerivative(s) => (FieldRef::Fermion(s), FieldRef::Fermion(s)),
            BilinearSpec::BosonFermion(s, t) => (FieldRef::Boson(s), FieldRef::Fermion(t)),
            BilinearSpec::FermionPair(s, t) => (FieldRef::Fermion(s), FieldRef::Fermion(t)),
        }
    }

    pub fn parity(self) -> Parity {
        let (a, b) = self.fields();
        a.parity() + b.parity()
    }

    /// Modes of the bilinear live on ℤ for even specs and ℤ+½ for `:JΦ:`.
    pub fn accepts(self, k: HalfInt) -> bool {
        match self.parity() {
            Parity::Even => k.is_integer(),
            Parity::Odd => k.is_half_odd(),
        }
    }
}

/// Elementary action; each maps basis states to finite integer combinations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Primitive {
    Mode { field: FieldRef, twice_index: i64 },
    Bilinear { spec: BilinearSpec, twice_index: i64 },
    /// `Σ_{j≤-1} (-1)^j A_{m-j}`.
    Tail { field: FieldRef, twice_m: i64 },
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::Mode { field, twice_index } => write!(f, "{field}[{}]", HalfInt::from_twice(*twice_index)),
            Primitive::Bilinear { spec, twice_index } => write!(f, "{spec:?}[{}]", HalfInt::from_twice(*twice_index)),
            Primitive::Tail { field, twice_m } => write!(f, "tail({field},{})", HalfInt::from_twice(*twice_m)),
        }
    }
}

/// A single free-field mode on one basis state.
pub(crate) fn mode_on_state(field: FieldRef, twice_index: i64, st: &FockState) -> Option<(FockState, i64)> {
    match field {
        FieldRef::Boson(s) => {
            let m = twice_index / 2;
            match m.cmp(&0) {
                std::cmp::Ordering::Less => Some((st.with_boson(s, (-m) as u32), 1)),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => {
                    let k = st.multiplicity(s, m as u32) as i64;
                    if k == 0 {
                        return None;
                    }
                    st.without_boson(s, m as u32).map(|t| (t, m * k))
                }
            }
        }
        FieldRef::Fermion(s) => {
            if twice_index < 0 {
                st.with_fermion(s, (-twice_index) as u32).map(|(sg, t)| (t, sg))
            } else {
                st.without_fermion(s, twice_index as u32).map(|(sg, t)| (t, sg))
            }
        }
    }
}

/// `first` acts, then `second`; result scaled by `coef`.
fn two_modes(
    second: (FieldRef, i64),
    first: (FieldRef, i64),
    coef: i64,
    st: &FockState,
    out: &mut Vec<(FockState, i64)>,
) {
    if coef == 0 {
        return;
    }
    if let Some((t, c1)) = mode_on_state(first.0, first.1, st) {
        if let Some((u, c2)) = mode_on_state(second.0, second.1, &t) {
            out.push((u, coef * c1 * c2));
        }
    }
}

/// Lattice offset: 0 for integer (boson) modes, 1 for half-odd (fermion) modes in twice units.
fn lattice_start(field: FieldRef, lo: i64) -> i64 {
    let odd = matches!(field, FieldRef::Fermion(_));
    let want = if odd { 1 } else { 0 };
    if lo.rem_euclid(2) == want {
        lo
    } else {
        lo + 1
    }
}

fn bilinear_on_state(spec: BilinearSpec, tk: i64, st: &FockState, out: &mut Vec<(FockState, i64)>) {
    let tw = st.twice_weight();
    let (left, right) = spec.fields();
    // only a ∈ [k − w, w] contributes
    let mut ta = lattice_start(left, tk - tw);
    while ta <= tw {
        let tb = tk - ta;
        match spec {
            BilinearSpec::BosonSquare(_) => {
                if ta < 0 {
                    two_modes((left, ta), (right, tb), 1, st, out);
                } else {
                    two_modes((right, tb), (left, ta), 1, st, out);
                }
            }
            BilinearSpec::FermionDerivative(_) => {
                // coefficient −a − 1/2
                let c = (-ta - 1) / 2;
                if ta < 0 {
                    two_modes((left, ta), (right, tb), c, st, out);
                } else {
                    two_modes((right, tb), (left, ta), -c, st, out);
                }
            }
            BilinearSpec::BosonFermion(_, _) => two_modes((left, ta), (right, tb), 1, st, out),
            BilinearSpec::FermionPair(_, _) => {
                if ta < 0 {
                    two_modes((left, ta), (right, tb), 1, st, out);
                } else {
                    two_modes((right, tb), (left, ta), -1, st, out);
                }
            }
        }
        ta += 2;
    }
}

fn tail_on_state(field: FieldRef, tm: i64, st: &FockState, out: &mut Vec<(FockState, i64)>) {
    let tw = st.twice_weight();
    // i = m − j runs from m + 1 up to the weight; sign (−1)^{m − i}
    let mut ti = tm + 2;
    while ti <= tw {
        let sign = if ((tm - ti) / 2) % 2 == 0 { 1 } else { -1 };
        if let Some((t, c)) = mode_on_state(field, ti, st) {
            out.push((t, sign * c));
        }
        ti += 2;
    }
}

impl Primitive {
    pub fn act_on_state(&self, st: &FockState, out: &mut Vec<(FockState, i64)>) {
        match *self {
            Primitive::Mode { field, twice_index } => {
                if let Some(r) = mode_on_state(field, twice_index, st) {
                    out.push(r);
                }
            }
            Primitive::Bilinear { spec, twice_index } => bilinear_on_state(spec, twice_index, st, out),
            Primitive::Tail { field, twice_m } => tail_on_state(field, twice_m, st, out),
        }
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut res = FockVector::zero(v.content());
        let mut buf = Vec::new();
        for (st, c) in v.iter() {
            buf.clear();
            self.act_on_state(st, &mut buf);
            for (t, k) in buf.drain(..) {
                res.add_term(t, c.scale_int(k));
            }
        }
        res
    }
}

/// A finite sum of scalar multiples of primitive products.
#[derive(Clone, Debug)]
pub struct ModeOperator {
    content: FieldContent,
    /// Each term: coefficient and factors written left to right (rightmost acts first).
    terms: Vec<(GaussianRational, Vec<Primitive>)>,
    weight_shift: HalfInt,
    parity: Parity,
    homogeneous: bool,
}

impl ModeOperator {
    pub fn zero(content: FieldContent, weight_shift: HalfInt, parity: Parity) -> Self {
        Self { content, terms: Vec::new(), weight_shift, parity, homogeneous: true }
    }

    pub fn identity(content: FieldContent) -> Self {
        Self::scalar(content, GaussianRational::one())
    }

    pub fn scalar(content: FieldContent, c: GaussianRational) -> Self {
        let mut op = Self::zero(content, HalfInt::ZERO, Parity::Even);
        if !c.is_zero() {
            op.terms.push((c, Vec::new()));
        }
        op
    }

    fn single(content: FieldContent, p: Primitive, shift: HalfInt, parity: Parity, homogeneous: bool) -> Self {
        Self { content, terms: vec![(GaussianRational::one(), vec![p])], weight_shift: shift, parity, homogeneous }
    }

    pub fn content(&self) -> FieldContent {
        self.content
    }

    /// Declared shift δ: output weight is input weight − δ (exact when homogeneous).
    pub fn weight_shift(&self) -> HalfInt {
        self.weight_shift
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// False once a tail sum enters: tails mix the mode index.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(GaussianRational, Vec<Primitive>)] {
        &self.terms
    }

    pub fn scaled(mut self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            self.terms.clear();
            return self;
        }
        for (k, _) in &mut self.terms {
            *k = &*k * c;
        }
        self
    }

    /// Sum; both operands must agree on parity, and on shift unless one is zero.
    pub fn plus(mut self, other: ModeOperator) -> Result<Self> {
        if self.content != other.content {
            return Err(Error::ContentMismatch("operator sum".into()));
        }
        if other.is_zero() {
            return Ok(self);
        }
        if self.is_zero() {
            return Ok(other);
        }
        if self.parity != other.parity {
            return Err(Error::InvalidParams("sum of operators of different parity".into()));
        }
        // a scalar attached to a nonzero index is only possible inside an index-0 family
        if self.weight_shift != other.weight_shift {
            return Err(Error::InvalidParams(format!(
                "sum of operators with shifts {} and {}",
                self.weight_shift, other.weight_shift
            )));
        }
        self.homogeneous &= other.homogeneous;
        self.terms.extend(other.terms);
        Ok(self)
    }

    /// Product `self ∘ other`.
    pub fn compose(&self, other: &ModeOperator) -> Result<Self> {
        if self.content != other.content {
            return Err(Error::ContentMismatch("operator product".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, fa) in &self.terms {
            for (b, fb) in &other.terms {
                let mut f = fa.clone();
                f.extend(fb.iter().cloned());
                terms.push((a * b, f));
            }
        }
        Ok(Self {
            content: self.content,
            terms,
            weight_shift: self.weight_shift + other.weight_shift,
            parity: self.parity + other.parity,
            homogeneous: self.homogeneous && other.homogeneous,
        })
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut res = FockVector::zero(v.content());
        for (c, factors) in &self.terms {
            let mut w = v.clone();
            for p in factors.iter().rev() {
                if w.is_zero() {
                    break;
                }
                w = p.apply(&w);
            }
            res.add_scaled(&w, c);
        }
        res
    }
}

/// A mode operator memoizing its image of every basis state it has seen.
#[derive(Clone, Debug)]
pub struct CachedOperator {
    op: ModeOperator,
    images: HashMap<FockState, FockVector>,
}

impl CachedOperator {
    pub fn new(op: ModeOperator) -> Self {
        Self { op, images: HashMap::new() }
    }

    pub fn operator(&self) -> &ModeOperator {
        &self.op
    }

    pub fn apply(&mut self, v: &FockVector) -> FockVector {
        let mut res = FockVector::zero(v.content());
        for (st, c) in v.iter() {
            if !self.images.contains_key(st) {
                let img = self.op.apply(&FockVector::basis(st.clone()));
                self.images.insert(st.clone(), img);
            }
            res.add_scaled(&self.images[st], c);
        }
        res
    }
}

/// Applies `ops[0] ∘ ops[1] ∘ …` to `v`, rightmost first.
pub fn apply_product(ops: &[&ModeOperator], v: &FockVector) -> FockVector {
    let mut w = v.clone();
    for op in ops.iter().rev() {
        if w.is_zero() {
            break;
        }
        w = op.apply(&w);
    }
    w
}

/// `J^s_m`.
pub fn boson_mode(content: FieldContent, species: usize, m: i64) -> Result<ModeOperator> {
    let field = FieldRef::Boson(species);
    field.validate(content)?;
    let p = Primitive::Mode { field, twice_index: 2 * m };
    Ok(ModeOperator::single(content, p, HalfInt::from_int(m), Parity::Even, true))
}

/// `Φ^s_n`, n ∈ ℤ − ½.
pub fn fermion_mode(content: FieldContent, species: usize, n: HalfInt) -> Result<ModeOperator> {
    let field = FieldRef::Fermion(species);
    field.validate(content)?;
    field.check_index(n)?;
    let p = Primitive::Mode { field, twice_index: n.twice() };
    Ok(ModeOperator::single(content, p, n, Parity::Odd, true))
}

/// Mode of either free field.
pub fn field_mode(content: FieldContent, field: FieldRef, n: HalfInt) -> Result<ModeOperator> {
    match field {
        FieldRef::Boson(s) => {
            field.check_index(n)?;
            boson_mode(content, s, n.twice() / 2)
        }
        FieldRef::Fermion(s) => fermion_mode(content, s, n),
    }
}

/// k-th mode of a shifted normal power.
pub fn bilinear_mode(content: FieldContent, spec: BilinearSpec, k: HalfInt) -> Result<ModeOperator> {
    let (a, b) = spec.fields();
    a.validate(content)?;
    b.validate(content)?;
    if let BilinearSpec::FermionPair(s, t) = spec {
        if s == t {
            return Err(Error::InvalidParams("fermion pair needs distinct species".into()));
        }
    }
    if !spec.accepts(k) {
        return Err(Error::IndexLattice { what: format!("{spec:?}"), index: k.to_string() });
    }
    let p = Primitive::Bilinear { spec, twice_index: k.twice() };
    Ok(ModeOperator::single(content, p, k, spec.parity(), true))
}

/// `Σ_{j≤-1} (-1)^j A_{m-j}`.
pub fn tail_sum(content: FieldContent, field: FieldRef, m: HalfInt) -> Result<ModeOperator> {
    field.validate(content)?;
    field.check_index(m)?;
    let p = Primitive::Tail { field, twice_m: m.twice() };
    Ok(ModeOperator::single(content, p, m, field.parity(), false))
}

/// `A'_n = −i n A_n`.
pub fn circle_derivative_mode(content: FieldContent, field: FieldRef, n: HalfInt) -> Result<ModeOperator> {
    let base = field_mode(content, field, n)?;
    let c = GaussianRational::imag(-n.to_rational());
    Ok(base.scaled(&c))
}
