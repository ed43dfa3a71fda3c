//! Lie superalgebras from structure-constant files, minimal gradations,
//! g♮ with dual bases, Casimir eigenvalues and the central charge.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::poly::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::scalar::{display_rational, int, parse_rational, rat, Parity, Rational};

/// An element in basis coordinates.
pub type Element = Vec<Rational>;

/// Names of the bundled structure files.
pub const BUNDLED: [&str; 5] = ["sl2", "spo_2_1", "spo_2_2", "spo_2_3", "psl_2_2"];

/// Overrides the directory of structure files.
pub const DATA_DIR_ENV: &str = "FREEFIELD_DATA_DIR";

fn bundled_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "sl2" => include_str!("../../data/sl2.lsa"),
        "spo_2_1" => include_str!("../../data/spo_2_1.lsa"),
        "spo_2_2" => include_str!("../../data/spo_2_2.lsa"),
        "spo_2_3" => include_str!("../../data/spo_2_3.lsa"),
        "psl_2_2" => include_str!("../../data/psl_2_2.lsa"),
        _ => return None,
    })
}

/// Loads `<name>.lsa` from the override directory if set, else the bundled copy.
pub fn load_named(name: &str) -> Result<LieSuperalgebra> {
    if let Ok(dir) = std::env::var(DATA_DIR_ENV) {
        let path = std::path::Path::new(&dir).join(format!("{name}.lsa"));
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        return load_superalgebra(&text);
    }
    let text = bundled_text(name).ok_or_else(|| Error::UnknownAlgebra(name.to_string()))?;
    load_superalgebra(text)
}

/// Validated structure data with `B(x, x) = 1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSuperalgebra {
    pub name: String,
    pub symbols: Vec<String>,
    pub parities: Vec<Parity>,
    /// `brackets[a][b]` = coordinates of `[b_a, b_b]`.
    pub brackets: Vec<Vec<Element>>,
    pub form: Vec<Vec<Rational>>,
    pub e: usize,
    pub x: usize,
    pub f: usize,
    /// `(c0, c1)` of the monic `p(k) = k² + c1·k + c0`, when supplied.
    pub pk: Option<(Rational, Rational)>,
}

struct Raw {
    name: Option<String>,
    symbols: Vec<String>,
    parities: Vec<Parity>,
    brackets: Vec<(String, String, String, Rational, usize)>,
    forms: Vec<(String, String, Rational, usize)>,
    triple: Option<(String, String, String)>,
    pk: Option<(Rational, Rational)>,
}

fn parse_raw(text: &str) -> Result<Raw> {
    let mut raw = Raw {
        name: None,
        symbols: vec![],
        parities: vec![],
        brackets: vec![],
        forms: vec![],
        triple: None,
        pk: None,
    };
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let t: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("line {}: malformed `{line}`", ln + 1));
        let num = |s: &str| parse_rational(s).map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)));
        match (t[0], t.len()) {
            ("name", 2) => raw.name = Some(t[1].to_string()),
            ("basis", 3) => {
                if raw.symbols.iter().any(|s| s == t[1]) {
                    return Err(Error::Parse(format!("line {}: duplicate symbol {}", ln + 1, t[1])));
                }
                raw.symbols.push(t[1].to_string());
                raw.parities.push(match t[2] {
                    "0" => Parity::Even,
                    "1" => Parity::Odd,
                    _ => return Err(bad()),
                });
            }
            ("triple", 4) => raw.triple = Some((t[1].into(), t[2].into(), t[3].into())),
            ("bracket", 5) => raw.brackets.push((t[1].into(), t[2].into(), t[3].into(), num(t[4])?, ln + 1)),
            ("form", 4) => raw.forms.push((t[1].into(), t[2].into(), num(t[3])?, ln + 1)),
            ("pk", 3) => raw.pk = Some((num(t[1])?, num(t[2])?)),
            _ => return Err(bad()),
        }
    }
    Ok(raw)
}

/// Parses and validates a structure file; the form is rescaled to `B(x, x) = 1/2`.
pub fn load_superalgebra(text: &str) -> Result<LieSuperalgebra> {
    let raw = parse_raw(text)?;
    let n = raw.symbols.len();
    if n == 0 {
        return Err(Error::Parse("no basis symbols".into()));
    }
    let idx: HashMap<&str, usize> = raw.symbols.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let look = |s: &str, line: usize| {
        idx.get(s).copied().ok_or_else(|| Error::Parse(format!("line {line}: unknown symbol {s}")))
    };
    let mut brackets = vec![vec![vec![Rational::zero(); n]; n]; n];
    for (a, b, c, v, line) in &raw.brackets {
        let (a, b, c) = (look(a, *line)?, look(b, *line)?, look(c, *line)?);
        brackets[a][b][c] += v;
    }
    let mut form = vec![vec![Rational::zero(); n]; n];
    for (a, b, v, line) in &raw.forms {
        let (a, b) = (look(a, *line)?, look(b, *line)?);
        if !form[a][b].is_zero() || (a != b && !form[b][a].is_zero()) {
            return Err(Error::Parse(format!("line {line}: form entry given twice")));
        }
        // entries are listed once; the other one follows from supersymmetry
        form[a][b] = v.clone();
        if a != b {
            form[b][a] = v * int(raw.parities[a].koszul(raw.parities[b]));
        }
    }
    let (e, x, f) = match &raw.triple {
        Some((e, x, f)) => (look(e, 0)?, look(x, 0)?, look(f, 0)?),
        None => return Err(Error::MissingTriple("no `triple` line".into())),
    };
    let mut g = LieSuperalgebra {
        name: raw.name.unwrap_or_else(|| "unnamed".into()),
        symbols: raw.symbols,
        parities: raw.parities,
        brackets,
        form,
        e,
        x,
        f,
        pk: raw.pk,
    };
    g.validate()?;
    let bxx = g.form[x][x].clone();
    if bxx.is_zero() {
        return Err(Error::InvalidParams("B(x, x) = 0".into()));
    }
    let s = rat(1, 2) / bxx;
    for row in g.form.iter_mut() {
        for v in row.iter_mut() {
            *v *= &s;
        }
    }
    Ok(g)
}

impl LieSuperalgebra {
    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    /// `dim g_0̄ − dim g_1̄`.
    pub fn sdim(&self) -> i64 {
        self.parities.iter().map(|p| if p.is_odd() { -1 } else { 1 }).sum()
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn symbol_index(&self, s: &str) -> Option<usize> {
        self.symbols.iter().position(|t| t == s)
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Element {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for a in 0..n {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if v[b].is_zero() {
                    continue;
                }
                let k = &u[a] * &v[b];
                for (c, s) in self.brackets[a][b].iter().enumerate() {
                    if !s.is_zero() {
                        out[c] += &k * s;
                    }
                }
            }
        }
        out
    }

    pub fn form_on(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                if !vb.is_zero() && !self.form[a][b].is_zero() {
                    acc += ua * vb * &self.form[a][b];
                }
            }
        }
        acc
    }

    fn sym(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let p = &self.parities;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !self.brackets[a][b][c].is_zero() && p[c] != p[a] + p[b] {
                        return Err(Error::BracketSymmetry(self.sym(a).into(), self.sym(b).into()));
                    }
                }
                // [a, b] = −(−1)^{|a||b|}[b, a]
                let s = int(-p[a].koszul(p[b]));
                if (0..n).any(|c| self.brackets[a][b][c] != &s * &self.brackets[b][a][c]) {
                    return Err(Error::BracketSymmetry(self.sym(a).into(), self.sym(b).into()));
                }
                if !self.form[a][b].is_zero() && p[a] != p[b] {
                    return Err(Error::FormSymmetry(self.sym(a).into(), self.sym(b).into()));
                }
                if self.form[a][b] != int(p[a].koszul(p[b])) * &self.form[b][a] {
                    return Err(Error::FormSymmetry(self.sym(a).into(), self.sym(b).into()));
                }
            }
        }
        let basis: Vec<Element> = (0..n).map(|i| self.basis(i)).collect();
        for a in 0..n {
            for b in 0..n {
                let ab = self.bracket(&basis[a], &basis[b]);
                for c in 0..n {
                    // [a,[b,c]] = [[a,b],c] + (−1)^{|a||b|}[b,[a,c]]
                    let lhs = self.bracket(&basis[a], &self.bracket(&basis[b], &basis[c]));
                    let t1 = self.bracket(&ab, &basis[c]);
                    let t2 = self.bracket(&basis[b], &self.bracket(&basis[a], &basis[c]));
                    let s = int(p[a].koszul(p[b]));
                    if (0..n).any(|i| lhs[i] != &t1[i] + &s * &t2[i]) {
                        return Err(Error::Jacobi(self.sym(a).into(), self.sym(b).into(), self.sym(c).into()));
                    }
                    if self.form_on(&ab, &basis[c]) != self.form_on(&basis[a], &self.bracket(&basis[b], &basis[c])) {
                        return Err(Error::NonInvariantForm(
                            self.sym(a).into(),
                            self.sym(b).into(),
                            self.sym(c).into(),
                        ));
                    }
                }
            }
        }
        let (e, x, f) = (&basis[self.e], &basis[self.x], &basis[self.f]);
        let neg_f: Element = f.iter().map(|v| -v).collect();
        if self.bracket(x, e) != *e || self.bracket(x, f) != neg_f {
            return Err(Error::MissingTriple("[x, e] = e and [x, f] = −f fail".into()));
        }
        let ef = self.bracket(e, f);
        let s = &ef[self.x];
        if s.is_zero() || ef.iter().enumerate().any(|(i, v)| i != self.x && !v.is_zero()) {
            return Err(Error::MissingTriple("[e, f] is not a nonzero multiple of x".into()));
        }
        Ok(())
    }
}

/// Basis indices of the ad x eigenspaces for −1, −1/2, 0, 1/2, 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalGradation {
    pub spaces: [Vec<usize>; 5],
    /// The parity of g_j is 2j mod 2.
    pub parity_compatible: bool,
}

pub const GRADES: [(i64, i64); 5] = [(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)];

impl MinimalGradation {
    pub fn dims(&self) -> [usize; 5] {
        [0, 1, 2, 3, 4].map(|i| self.spaces[i].len())
    }

    pub fn g0(&self) -> &[usize] {
        &self.spaces[2]
    }

    pub fn g_minus_half(&self) -> &[usize] {
        &self.spaces[1]
    }
}

pub fn minimal_gradation(g: &LieSuperalgebra) -> Result<MinimalGradation> {
    let x = g.basis(g.x);
    let mut spaces: [Vec<usize>; 5] = Default::default();
    let mut compatible = true;
    for i in 0..g.dim() {
        let img = g.bracket(&x, &g.basis(i));
        if img.iter().enumerate().any(|(j, v)| j != i && !v.is_zero()) {
            return Err(Error::NonMinimalGradation(format!("ad x is not diagonal on {}", g.symbols[i])));
        }
        let lambda = &img[i];
        let slot = GRADES
            .iter()
            .position(|&(n, d)| *lambda == rat(n, d))
            .ok_or_else(|| Error::NonMinimalGradation(format!("eigenvalue {} on {}", display_rational(lambda), g.symbols[i])))?;
        let odd_grade = GRADES[slot].1 == 2;
        compatible &= g.parities[i].is_odd() == odd_grade;
        spaces[slot].push(i);
    }
    if spaces[0].len() != 1 || spaces[4].len() != 1 {
        return Err(Error::NonMinimalGradation(format!(
            "dim g_-1 = {}, dim g_1 = {}",
            spaces[0].len(),
            spaces[4].len()
        )));
    }
    Ok(MinimalGradation { spaces, parity_compatible: compatible })
}

/// Solves `m·y = rhs` for square invertible `m`.
fn solve(m: &[Vec<Rational>], rhs: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let cols = rhs.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = m.iter().zip(rhs).map(|(r, b)| r.iter().chain(b).cloned().collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n + cols {
                    let t = &f * &a[col][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `g♮ = {a ∈ g_0 | B(a, x) = 0}` with dual bases `B(u_α, u^β) = δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GNatural {
    pub basis: Vec<Element>,
    pub dual: Vec<Element>,
}

impl GNatural {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `a ∈ g♮` in `basis`.
    pub fn coords(&self, g: &LieSuperalgebra, a: &[Rational]) -> Vec<Rational> {
        self.dual.iter().map(|d| g.form_on(a, d)).collect()
    }
}

pub fn g_natural(g: &LieSuperalgebra, grading: &MinimalGradation) -> Result<GNatural> {
    let x = g.basis(g.x);
    let g0 = grading.g0();
    let phi: Vec<Rational> = g0.iter().map(|&i| g.form_on(&g.basis(i), &x)).collect();
    let pivot = phi.iter().position(|v| !v.is_zero()).ok_or(Error::DegenerateRestriction)?;
    let mut basis = Vec::new();
    for (j, &i) in g0.iter().enumerate() {
        if j == pivot {
            continue;
        }
        let mut v = g.basis(i);
        let r = &phi[j] / &phi[pivot];
        v[g0[pivot]] -= r;
        basis.push(v);
    }
    let d = basis.len();
    let gram: Vec<Vec<Rational>> = basis.iter().map(|a| basis.iter().map(|b| g.form_on(a, b)).collect()).collect();
    // u^β = Σ_γ Y_{γβ} u_γ with gram·Y = 1
    let ident: Vec<Vec<Rational>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    let y = solve(&gram, &ident).ok_or(Error::DegenerateRestriction)?;
    let dual = (0..d)
        .map(|b| {
            let mut v = vec![Rational::zero(); g.dim()];
            for (c, u) in basis.iter().enumerate() {
                for (i, ui) in u.iter().enumerate() {
                    v[i] += &y[c][b] * ui;
                }
            }
            v
        })
        .collect();
    Ok(GNatural { basis, dual })
}

/// Orthogonal projection `g_0 → g♮`, `a − 2B(a, x)·x`.
pub fn project_natural(g: &LieSuperalgebra, a: &[Rational]) -> Element {
    let x = g.basis(g.x);
    let t = g.form_on(a, &x) / g.form_on(&x, &x);
    a.iter().zip(&x).map(|(ai, xi)| ai - &t * xi).collect()
}

fn ad_matrix(g: &LieSuperalgebra, u: &[Rational]) -> Vec<Vec<Rational>> {
    // column j = [u, b_j]
    let n = g.dim();
    let cols: Vec<Element> = (0..n).map(|j| g.bracket(u, &g.basis(j))).collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][k] * &bk[j];
            }
        }
    }
    out
}

/// Casimir `Σ_i ad(b_i) ad(b^i)` with `B(b^i, b_j) = δ`, asserted scalar; returns half its eigenvalue.
pub fn dual_coxeter(g: &LieSuperalgebra) -> Result<Rational> {
    let n = g.dim();
    let ident: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    // row i of B⁻¹ holds the coordinates of b^i
    let y = solve(&g.form, &ident).ok_or_else(|| Error::InvalidParams("B is degenerate".into()))?;
    let mut cas = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        let dual: Element = y[i].clone();
        let prod = matmul(&ad_matrix(g, &g.basis(i)), &ad_matrix(g, &dual));
        for r in 0..n {
            for c in 0..n {
                cas[r][c] += &prod[r][c];
            }
        }
    }
    let lam = cas[0][0].clone();
    for r in 0..n {
        for c in 0..n {
            let want = if r == c { lam.clone() } else { Rational::zero() };
            if cas[r][c] != want {
                return Err(Error::NonScalarCasimir);
            }
        }
    }
    Ok(lam / int(2))
}

/// Supertrace form of ad restricted to g_0: `κ(u, v) = str_{g_0}(ad u ad v)`.
pub fn killing_g0(g: &LieSuperalgebra, grading: &MinimalGradation, u: &[Rational], v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for &i in grading.g0() {
        let img = g.bracket(u, &g.bracket(v, &g.basis(i)));
        let sign = if g.parities[i].is_odd() { -1 } else { 1 };
        acc += &img[i] * int(sign);
    }
    acc
}

/// `c(k) = kd/(k + h∨) − 6k + h∨ − 4`.
pub fn central_charge_formula(h_dual: &Rational, sdim: &Rational, k: &Rational) -> Result<Rational> {
    let s = k + h_dual;
    if s.is_zero() {
        return Err(Error::CriticalLevel(display_rational(k)));
    }
    Ok(k * sdim / s - int(6) * k + h_dual - int(4))
}

pub fn central_charge_symbolic_formula(h_dual: &Rational, sdim: &Rational) -> RationalFunction {
    let k = Polynomial::k();
    let first = RationalFunction::new(k.scale(sdim), Polynomial::linear(int(1), h_dual.clone())).expect("nonzero");
    let rest = RationalFunction::poly(Polynomial::linear(int(-6), h_dual - int(4)));
    &first + &rest
}

pub fn central_charge(g: &LieSuperalgebra, k: &Rational) -> Result<Rational> {
    central_charge_formula(&dual_coxeter(g)?, &int(g.sdim()), k)
}

pub fn central_charge_symbolic(g: &LieSuperalgebra) -> Result<RationalFunction> {
    Ok(central_charge_symbolic_formula(&dual_coxeter(g)?, &int(g.sdim())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<LieSuperalgebra> {
        BUNDLED.iter().map(|n| load_named(n).unwrap()).collect()
    }

    #[test]
    fn bundled_load() {
        let gs = all();
        let sd: Vec<i64> = gs.iter().map(LieSuperalgebra::sdim).collect();
        assert_eq!(sd, vec![3, 1, 0, 0, -2]);
        for g in &gs {
            assert_eq!(g.form[g.x][g.x], rat(1, 2));
        }
        assert!(matches!(load_named("nope"), Err(Error::UnknownAlgebra(_))));
    }

    #[test]
    fn corrupted_tables_are_diagnosed() {
        let text = bundled_text("spo_2_1").unwrap();
        let bad = text.replace("bracket vp1 vm1 x 2", "bracket vp1 vm1 x 3").replace("bracket vm1 vp1 x 2", "bracket vm1 vp1 x 3");
        assert!(matches!(load_superalgebra(&bad), Err(Error::Jacobi(..))), "{:?}", load_superalgebra(&bad));
        let asym = text.replace("bracket vm1 vp1 x 2", "bracket vm1 vp1 x 1");
        assert!(matches!(load_superalgebra(&asym), Err(Error::BracketSymmetry(..))));
        let form = text.replace("form vp1 vm1 -2", "form vp1 vm1 -3");
        assert!(matches!(load_superalgebra(&form), Err(Error::NonInvariantForm(..))));
        let no_triple = text.replace("triple e x f", "");
        assert!(matches!(load_superalgebra(&no_triple), Err(Error::MissingTriple(_))));
        assert!(matches!(load_superalgebra("basis a 2"), Err(Error::Parse(_))));
    }

    #[test]
    fn gradations() {
        let gs = all();
        let dims: Vec<[usize; 5]> = gs.iter().map(|g| minimal_gradation(g).unwrap().dims()).collect();
        assert_eq!(dims[0], [1, 0, 1, 0, 1]);
        assert_eq!(dims[1], [1, 1, 1, 1, 1]);
        assert_eq!(dims[2], [1, 2, 2, 2, 1]);
        for g in &gs {
            assert!(minimal_gradation(g).unwrap().parity_compatible, "{}", g.name);
        }
    }

    #[test]
    fn natural_subalgebras() {
        let dims: Vec<usize> = all()
            .iter()
            .map(|g| {
                let gr = minimal_gradation(g).unwrap();
                let nat = g_natural(g, &gr).unwrap();
                let x = g.basis(g.x);
                for (a, u) in nat.basis.iter().enumerate() {
                    assert!(g.form_on(u, &x).is_zero());
                    for (b, w) in nat.dual.iter().enumerate() {
                        assert_eq!(g.form_on(u, w), if a == b { int(1) } else { int(0) });
                    }
                    assert_eq!(project_natural(g, u), *u);
                }
                assert!(project_natural(g, &x).iter().all(Zero::is_zero));
                nat.dim()
            })
            .collect();
        assert_eq!(dims, vec![0, 0, 1, 3, 3]);
    }

    #[test]
    fn dual_coxeter_numbers() {
        let h: Vec<Rational> = all().iter().map(|g| dual_coxeter(g).unwrap()).collect();
        assert_eq!(h, vec![int(2), rat(3, 2), int(1), rat(1, 2), int(0)]);
    }

    #[test]
    fn central_charge_values() {
        let sl2 = load_named("sl2").unwrap();
        assert_eq!(central_charge(&sl2, &rat(-2, 3)).unwrap(), rat(1, 2));
        assert!(matches!(central_charge(&sl2, &int(-2)), Err(Error::CriticalLevel(_))));
        let sym = central_charge_symbolic(&sl2).unwrap();
        assert_eq!(sym.eval(&rat(-2, 3)).unwrap(), rat(1, 2));
    }
}
