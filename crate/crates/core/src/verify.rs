//! Relation residuals, weak symmetry, free-field Gram matrices, oracle
//! equivalence and Borcherds consistency on the realizations.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{enumerate_basis, inner_product, FockState, FockVector};
use crate::linalg::{binomial, solve_combination};
use crate::realizations::{cyclic_words, Family, Realization, RealizationParams, Variant};
use crate::report::{CheckReport, ResidualEntry};
use crate::scalar::{format_rational, int, GaussianRational, HalfInt, Rational};
use crate::superalg::presentation::letters_in_window;
use crate::superalg::words::{format_word, word_weight};
use crate::superalg::{abstract_gram, GramMatrix, Letter, LowestWeightData, Presentation, Role, Word};

pub fn param_echo(p: &RealizationParams) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("family".into(), p.family.to_string());
    m.insert("variant".into(), p.variant.to_string());
    m.insert("kappa".into(), format_rational(&p.kappa));
    m.insert("eta".into(), format_rational(&p.eta));
    m.insert("omega".into(), format_rational(&p.omega));
    m
}

fn basis_vectors(p: &RealizationParams, cutoff: HalfInt) -> Vec<(FockState, FockVector)> {
    enumerate_basis(p.content(), cutoff).into_iter().map(|s| (s.clone(), FockVector::basis(s))).collect()
}

/// Accumulates `‖defect‖²` over basis vectors, keeping the first offender.
struct Accum {
    residual: Rational,
    witness: Option<String>,
}

impl Accum {
    fn new() -> Self {
        Self { residual: Rational::zero(), witness: None }
    }

    fn add(&mut self, defect: &FockVector, at: &FockState) {
        let r = defect.norm_sq();
        if !r.is_zero() {
            self.residual += &r;
            if self.witness.is_none() {
                self.witness = Some(format!("{at}"));
            }
        }
    }

    fn entry(self, indices: String) -> ResidualEntry {
        ResidualEntry::new(indices, self.residual).with_witness(self.witness)
    }
}

/// `[a, b]v − RHS v` for every relation with |indices| ≤ `window` and every basis `v` of weight ≤ `cutoff`.
pub fn check_relations(params: &RealizationParams, window: u32, cutoff: HalfInt) -> Result<CheckReport> {
    if window == 0 {
        return Err(Error::InvalidParams("mode window must be at least 1".into()));
    }
    let mut r = Realization::new(params.clone())?;
    let pres = Presentation::new(params.family.algebra(), params.central_charge());
    let letters = letters_in_window(pres.kind, HalfInt::from_int(window as i64));
    let basis = basis_vectors(params, cutoff);
    let mut entries = Vec::new();
    for (i, &a) in letters.iter().enumerate() {
        for &b in &letters[i..] {
            let br = pres.bracket(a, b);
            let sign = GaussianRational::from_int(a.role.parity().koszul(b.role.parity()));
            let mut acc = Accum::new();
            for (st, v) in &basis {
                let bv = r.apply_letter(b, v)?;
                let abv = r.apply_letter(a, &bv)?;
                let av = r.apply_letter(a, v)?;
                let bav = r.apply_letter(b, &av)?;
                let mut defect = abv;
                defect.add_scaled(&bav, &-&sign);
                for (k, z) in &br.terms {
                    let zv = r.apply_letter(*z, v)?;
                    defect.add_scaled(&zv, &-k);
                }
                defect.add_scaled(v, &-&br.central);
                acc.add(&defect, st);
            }
            entries.push(acc.entry(format!("[{a}, {b}]")));
        }
    }
    let mut echo = param_echo(params);
    echo.insert("window".into(), window.to_string());
    echo.insert("cutoff".into(), cutoff.to_string());
    Ok(CheckReport::exact("relations", echo, entries))
}

/// `2⟨Ω, (L_2 L_{−2} − L_{−2} L_2 − 4 L_0)Ω⟩ / ⟨Ω, Ω⟩`.
pub fn measure_central_charge(params: &RealizationParams) -> Result<Rational> {
    let mut r = Realization::new(params.clone())?;
    let om = r.vacuum();
    let (p2, m2) = (HalfInt::from_int(2), HalfInt::from_int(-2));
    let a = r.apply(Role::L, m2, &om)?;
    let a = r.apply(Role::L, p2, &a)?;
    let b = r.apply(Role::L, p2, &om)?;
    let b = r.apply(Role::L, m2, &b)?;
    let l0 = r.apply(Role::L, HalfInt::ZERO, &om)?;
    let mut x = a.sub(&b);
    x.add_scaled(&l0, &GaussianRational::from_int(-4));
    let num = inner_product(&om, &x)?;
    let den = inner_product(&om, &om)?;
    let v = &(&num * &GaussianRational::from_int(2)) * &den.inv().expect("⟨Ω,Ω⟩ = 1");
    if !v.is_real() {
        return Err(Error::InvalidParams("central term is not real".into()));
    }
    Ok(v.re)
}

/// `L_0Ω = hΩ`, `J_0Ω = qΩ`, positive modes kill Ω, and for vacuum-type
/// parameters also `L_{−1}Ω = 0` and `G_{−1/2}Ω = 0`.
pub fn check_lowest_weight(params: &RealizationParams) -> Result<CheckReport> {
    let mut r = Realization::new(params.clone())?;
    let om = r.vacuum();
    let mut entries = Vec::new();
    let eig = |r: &mut Realization, role: Role, value: Rational| -> Result<ResidualEntry> {
        let v = r.apply(role, HalfInt::ZERO, &om)?;
        let d = v.sub(&om.scaled(&GaussianRational::real(value.clone())));
        Ok(ResidualEntry::new(format!("{role}_{{0}}Ω − {}Ω", format_rational(&value)), d.norm_sq()))
    };
    entries.push(eig(&mut r, Role::L, params.lowest_weight())?);
    if params.family == Family::N2 {
        entries.push(eig(&mut r, Role::J, params.charge())?);
    }
    let roles = params.family.roles();
    for &role in roles {
        for t in 1..=4 {
            let idx = HalfInt::from_twice(t);
            if role.accepts(idx) {
                let v = r.apply(role, idx, &om)?;
                entries.push(ResidualEntry::new(format!("{role}_{{{idx}}}Ω"), v.norm_sq()));
            }
        }
    }
    if params.is_vacuum() {
        for &role in roles {
            if role == Role::J {
                continue;
            }
            let mut t = role.vacuum_creation_start().twice() + 2;
            while t < 0 {
                let idx = HalfInt::from_twice(t);
                let v = r.apply(role, idx, &om)?;
                entries.push(ResidualEntry::new(format!("{role}_{{{idx}}}Ω"), v.norm_sq()));
                t += 2;
            }
        }
    }
    Ok(CheckReport::exact("lowest_weight", param_echo(params), entries))
}

/// Every (n, m) with n ≠ m, |n|, |m| ≤ `bound` on the lattice of `role`.
pub fn symmetric_pairs(role: Role, bound: u32) -> Vec<(HalfInt, HalfInt)> {
    let b = 2 * bound as i64;
    let idx: Vec<HalfInt> = (-b..=b).map(HalfInt::from_twice).filter(|&i| role.accepts(i)).collect();
    let mut out = Vec::new();
    for &n in &idx {
        for &m in &idx {
            if n != m {
                out.push((n, m));
            }
        }
    }
    out
}

/// `Σ_{u,v} |⟨X u, v⟩ − ⟨u, Y v⟩|²` over the basis, with the first violating element.
fn adjoint_defect(
    r: &mut Realization,
    basis: &[(FockState, FockVector)],
    x: &[(GaussianRational, Letter)],
    y: &[(GaussianRational, Letter)],
) -> Result<(Rational, Option<String>)> {
    let apply = |r: &mut Realization, ops: &[(GaussianRational, Letter)], v: &FockVector| -> Result<FockVector> {
        let mut out = FockVector::zero(v.content());
        for (k, l) in ops {
            out.add_scaled(&r.apply_letter(*l, v)?, k);
        }
        Ok(out)
    };
    let xs: Vec<FockVector> = basis.iter().map(|(_, u)| apply(r, x, u)).collect::<Result<_>>()?;
    let ys: Vec<FockVector> = basis.iter().map(|(_, v)| apply(r, y, v)).collect::<Result<_>>()?;
    let norms: Vec<GaussianRational> = basis.iter().map(|(s, _)| GaussianRational::real(s.norm_sq())).collect();
    let mut total = Rational::zero();
    let mut witness = None;
    for (i, (u, _)) in basis.iter().enumerate() {
        for (j, (v, _)) in basis.iter().enumerate() {
            let lhs = &xs[i].coefficient(v).conj() * &norms[j];
            let rhs = &ys[j].coefficient(u) * &norms[i];
            let d = &lhs - &rhs;
            if !d.is_zero() {
                total += d.norm_sq();
                if witness.is_none() {
                    witness = Some(format!("u = {u}, v = {v}: {lhs:?} vs {rhs:?}"));
                }
            }
        }
    }
    Ok((total, witness))
}

/// `⟨(A_n − (−1)^{n−m}A_m)u, v⟩ = ⟨u, (A_{−n} − (−1)^{n−m}A_{−m})v⟩` for each pair.
pub fn check_weak_symmetry(
    params: &RealizationParams,
    role: Role,
    pairs: &[(HalfInt, HalfInt)],
    cutoff: HalfInt,
) -> Result<CheckReport> {
    if params.variant != Variant::Bs {
        return Err(Error::InvalidParams("weak symmetry is checked on the BS family".into()));
    }
    if !params.family.roles().contains(&role) {
        return Err(Error::Unsupported(format!("role {role} in {}", params.family)));
    }
    let mut r = Realization::new(params.clone())?;
    let basis = basis_vectors(params, cutoff);
    let mut entries = Vec::new();
    for &(n, m) in pairs {
        if !role.accepts(n) || !role.accepts(m) || n == m {
            return Err(Error::IndexLattice { what: "weak symmetry pair".into(), index: format!("({n}, {m})") });
        }
        let diff = (n - m).as_int().expect("same lattice");
        let s = GaussianRational::from_int(if diff.rem_euclid(2) == 0 { 1 } else { -1 });
        let one = GaussianRational::one();
        let x = [(one.clone(), Letter::new(role, n)), (-&s, Letter::new(role, m))];
        let y = [(one, Letter::new(role, -n)), (-&s, Letter::new(role, -m))];
        let (res, w) = adjoint_defect(&mut r, &basis, &x, &y)?;
        entries.push(ResidualEntry::new(format!("{role}: ({n}, {m})"), res).with_witness(w));
    }
    let mut echo = param_echo(params);
    echo.insert("role".into(), role.to_string());
    echo.insert("cutoff".into(), cutoff.to_string());
    Ok(CheckReport::exact(format!("weak_symmetry_{role}"), echo, entries))
}

/// Plain symmetry `⟨A_n u, v⟩ = ⟨u, A_{−n} v⟩`; an expected-failure control for BS.
pub fn single_mode_symmetry(params: &RealizationParams, role: Role, n: HalfInt, cutoff: HalfInt) -> Result<CheckReport> {
    let mut r = Realization::new(params.clone())?;
    let basis = basis_vectors(params, cutoff);
    let one = GaussianRational::one();
    let (res, w) =
        adjoint_defect(&mut r, &basis, &[(one.clone(), Letter::new(role, n))], &[(one, Letter::new(role, -n))])?;
    let mut echo = param_echo(params);
    echo.insert("mode".into(), Letter::new(role, n).to_string());
    echo.insert("cutoff".into(), cutoff.to_string());
    let entries = vec![ResidualEntry::new(format!("{role}_{{{n}}}"), res).with_witness(w)];
    Ok(CheckReport::exact("single_mode_symmetry_control", echo, entries).as_control())
}

fn gram_at(words: &[(Word, FockVector)], level: HalfInt) -> Result<GramMatrix> {
    let at: Vec<&(Word, FockVector)> =
        words.iter().filter(|(w, _)| word_weight(w) == level).collect();
    let mut entries = Vec::with_capacity(at.len());
    for (_, vi) in &at {
        let mut row = Vec::with_capacity(at.len());
        for (_, vj) in &at {
            row.push(inner_product(vi, vj)?);
        }
        entries.push(row);
    }
    let g = GramMatrix { level, words: at.iter().map(|(w, _)| w.clone()).collect(), entries };
    g.check_hermitian()?;
    Ok(g)
}

/// Gram matrix of the cyclic words of exactly weight `level`.
pub fn gram_freefield(params: &RealizationParams, level: HalfInt) -> Result<GramMatrix> {
    if level.is_negative() {
        return Err(Error::InvalidParams("negative level".into()));
    }
    gram_at(&cyclic_words(params, level)?, level)
}

pub fn lowest_weight_data(params: &RealizationParams) -> LowestWeightData {
    LowestWeightData {
        c: params.central_charge(),
        h: params.lowest_weight(),
        q: params.charge(),
        vacuum: params.is_vacuum(),
    }
}

/// Free-field Gram equals the abstract Gram at every level ≤ `max_level`.
pub fn oracle_compare(params: &RealizationParams, max_level: HalfInt) -> Result<CheckReport> {
    if params.variant == Variant::Tilde {
        return Err(Error::Unsupported("the TILDE family carries no compatible inner product".into()));
    }
    let words = cyclic_words(params, max_level)?;
    let lw = lowest_weight_data(params);
    let pres = Presentation::new(params.family.algebra(), lw.c.clone());
    let mut entries = Vec::new();
    for tw in 0..=max_level.twice() {
        let level = HalfInt::from_twice(tw);
        let ff = gram_at(&words, level)?;
        let ab = abstract_gram(&pres, &lw, level);
        if ff.words != ab.words {
            return Err(Error::Subspace(format!("word lists differ at level {level}")));
        }
        let mut res = Rational::zero();
        let mut witness = None;
        for i in 0..ff.dim() {
            for j in 0..ff.dim() {
                let d = &ff.entries[i][j] - &ab.entries[i][j];
                if !d.is_zero() {
                    res += d.norm_sq();
                    witness.get_or_insert_with(|| {
                        format!("⟨{}, {}⟩", format_word(&ff.words[i]), format_word(&ff.words[j]))
                    });
                }
            }
        }
        entries.push(ResidualEntry::new(format!("level {level}"), res).with_witness(witness));
    }
    let mut echo = param_echo(params);
    echo.insert("max_level".into(), max_level.to_string());
    echo.insert("c".into(), format_rational(&lw.c));
    echo.insert("h".into(), format_rational(&lw.h));
    echo.insert("q".into(), format_rational(&lw.q));
    echo.insert("vacuum".into(), lw.vacuum.to_string());
    Ok(CheckReport::exact("oracle_compare", echo, entries))
}

/// Mode `(w Ω)_p` of the field attached to a short vacuum word.
fn word_field_mode(r: &mut Realization, w: &[Letter], p: HalfInt, v: &FockVector) -> Result<FockVector> {
    match w {
        [] => Ok(if p == HalfInt::ZERO { v.clone() } else { FockVector::zero(v.content()) }),
        [x] if x.index == -x.role.conformal_weight() => r.apply(x.role, p, v),
        [t, x] if *t == Letter::new(Role::L, HalfInt::from_int(-1)) && x.index == -x.role.conformal_weight() => {
            // (L_{−1}a)_p = −(p + d_a) a_p
            let k = -(p + x.role.conformal_weight()).to_rational();
            Ok(r.apply(x.role, p, v)?.scaled(&GaussianRational::real(k)))
        }
        _ => Err(Error::Unsupported(format!("field of {}", format_word(w)))),
    }
}

/// `[G_m, G_n]v` directly against `Σ_j C(m + 1/2, j)(G_{(j)}G)_{m+n} v`.
pub fn borcherds_consistency(params: &RealizationParams, m: HalfInt, n: HalfInt, cutoff: HalfInt) -> Result<CheckReport> {
    if params.family != Family::Ns {
        return Err(Error::Unsupported("Borcherds consistency is checked on NS".into()));
    }
    if !params.is_vacuum() {
        return Err(Error::Unsupported("Borcherds consistency needs a vacuum-type realization".into()));
    }
    if !Role::G.accepts(m) || !Role::G.accepts(n) {
        return Err(Error::IndexLattice { what: "G mode".into(), index: format!("({m}, {n})") });
    }
    let mut r = Realization::new(params.clone())?;
    let d = Role::G.conformal_weight();
    let words = cyclic_words(params, HalfInt::from_int(2))?;
    let tau = r.apply(Role::G, -d, &r.vacuum())?;
    // G_{(j)}G = G_{j − d + 1} τ, decomposed over word vectors of weight 2 − j
    let mut products: Vec<Vec<(GaussianRational, Word)>> = Vec::new();
    for j in 0.. {
        let idx = HalfInt::from_int(j) - d + HalfInt::from_int(1);
        let prod = r.apply(Role::G, idx, &tau)?;
        let weight = d + d - HalfInt::from_int(j + 1);
        if weight.is_negative() {
            if !prod.is_zero() {
                return Err(Error::Subspace(format!("G_({j})G is nonzero below weight zero")));
            }
            break;
        }
        let at: Vec<&(Word, FockVector)> =
            words.iter().filter(|(w, _)| word_weight(w) == weight).collect();
        let cols: Vec<FockVector> = at.iter().map(|(_, v)| v.clone()).collect();
        let x = solve_combination(&cols, &prod)
            .ok_or_else(|| Error::Subspace(format!("G_({j})G outside the cyclic span")))?;
        products.push(at.iter().zip(x).filter(|(_, k)| !k.is_zero()).map(|((w, _), k)| (k, w.clone())).collect());
    }
    let x = (m + d - HalfInt::from_int(1)).as_int().expect("integral");
    let basis = basis_vectors(params, cutoff);
    let mut acc = Accum::new();
    for (st, v) in &basis {
        let nv = r.apply(Role::G, n, v)?;
        let direct = r.apply(Role::G, m, &nv)?;
        let mv = r.apply(Role::G, m, v)?;
        let direct = direct.add(&r.apply(Role::G, n, &mv)?);
        let mut sum = FockVector::zero(v.content());
        for (j, terms) in products.iter().enumerate() {
            let b = GaussianRational::real(binomial(x, j as u32));
            if b.is_zero() {
                continue;
            }
            for (k, w) in terms {
                let f = word_field_mode(&mut r, w, m + n, v)?;
                sum.add_scaled(&f, &(&b * k));
            }
        }
        acc.add(&direct.sub(&sum), st);
    }
    let mut echo = param_echo(params);
    echo.insert("m".into(), m.to_string());
    echo.insert("n".into(), n.to_string());
    echo.insert("cutoff".into(), cutoff.to_string());
    let entries = vec![acc.entry(format!("[G_{{{m}}}, G_{{{n}}}]"))];
    Ok(CheckReport::exact("borcherds", echo, entries))
}

/// The parameter grid used by the relation and oracle suites.
pub fn sample_grid() -> Vec<RealizationParams> {
    use crate::scalar::rat;
    let mut out = Vec::new();
    for variant in [Variant::Tilde, Variant::Bs, Variant::Unitary] {
        for kappa in [int(0), rat(1, 3), rat(1, 2)] {
            let etas: &[i64] = if variant == Variant::Unitary { &[0, 1] } else { &[0] };
            for &eta in etas {
                out.push(RealizationParams::ns(variant, kappa.clone()).with_eta(int(eta)));
            }
        }
    }
    for variant in [Variant::Bs, Variant::Unitary] {
        for kappa in [int(0), rat(1, 2)] {
            let free: &[i64] = if variant == Variant::Unitary { &[0, 1] } else { &[0] };
            for &eta in free {
                for &omega in free {
                    out.push(RealizationParams::n2(variant, kappa.clone()).with_eta(int(eta)).with_omega(int(omega)));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::superalg::psd_check;

    fn h(tw: i64) -> HalfInt {
        HalfInt::from_twice(tw)
    }

    #[test]
    fn relations_examples() {
        let p = RealizationParams::ns(Variant::Unitary, rat(1, 2));
        let rep = check_relations(&p, 2, h(6)).unwrap();
        assert!(rep.passed(), "{:?}", rep.offenders().next());
        let p = RealizationParams::ns(Variant::Tilde, rat(1, 2));
        assert!(check_relations(&p, 2, h(4)).unwrap().passed());
        let p = RealizationParams::n2(Variant::Bs, rat(1, 2));
        let rep = check_relations(&p, 2, h(4)).unwrap();
        assert!(rep.passed(), "{:?}", rep.offenders().next());
        assert!(check_relations(&p, 0, h(2)).is_err());
    }

    #[test]
    fn relations_detect_wrong_central_charge() {
        // a realization at κ evaluated against the presentation at another c must fail
        let p = RealizationParams::ns(Variant::Bs, rat(1, 2));
        let mut r = Realization::new(p.clone()).unwrap();
        let om = r.vacuum();
        let x = r.apply(Role::G, h(-3), &om).unwrap();
        let x = r.apply(Role::G, h(3), &x).unwrap();
        let want = om.scaled(&GaussianRational::real(rat(2, 3) * p.central_charge()));
        assert_eq!(x, want);
        assert_ne!(x, om.scaled(&GaussianRational::real(rat(2, 3) * rat(3, 2))));
    }

    #[test]
    fn central_charge_examples() {
        assert_eq!(measure_central_charge(&RealizationParams::ns(Variant::Bs, int(0))).unwrap(), rat(3, 2));
        assert_eq!(measure_central_charge(&RealizationParams::ns(Variant::Bs, rat(1, 2))).unwrap(), rat(9, 2));
        assert_eq!(measure_central_charge(&RealizationParams::n2(Variant::Unitary, rat(1, 2))).unwrap(), int(6));
    }

    #[test]
    fn lowest_weight_checks() {
        for p in sample_grid() {
            let rep = check_lowest_weight(&p).unwrap();
            assert!(rep.passed(), "{p}: {:?}", rep.offenders().next());
        }
    }

    #[test]
    fn weak_symmetry_examples() {
        let p = RealizationParams::ns(Variant::Bs, rat(1, 2));
        assert!(check_weak_symmetry(&p, Role::L, &[(h(4), h(0))], h(6)).unwrap().passed());
        let ctl = single_mode_symmetry(&p, Role::L, h(2), h(6)).unwrap();
        assert!(!ctl.passed() && ctl.healthy());
        assert!(ctl.entries[0].witness.is_some());
        let q = RealizationParams::n2(Variant::Bs, rat(1, 2));
        assert!(check_weak_symmetry(&q, Role::G1, &[(h(3), h(1))], h(4)).unwrap().passed());
        let u = RealizationParams::ns(Variant::Unitary, rat(1, 2));
        assert!(check_weak_symmetry(&u, Role::L, &[(h(4), h(0))], h(2)).is_err());
    }

    #[test]
    fn gram_examples() {
        let p = RealizationParams::ns(Variant::Unitary, int(0));
        assert_eq!(gram_freefield(&p, h(3)).unwrap().entries, vec![vec![GaussianRational::one()]]);
        assert_eq!(gram_freefield(&p, h(0)).unwrap().entries, vec![vec![GaussianRational::one()]]);
        let bs = RealizationParams::ns(Variant::Bs, rat(1, 2));
        let g = gram_freefield(&bs, h(4)).unwrap();
        let ab = abstract_gram(&Presentation::new(crate::superalg::AlgebraKind::Ns, rat(9, 2)), &LowestWeightData::vacuum(rat(9, 2)), h(4));
        assert_eq!(g, ab);
        assert!(psd_check(&g).unwrap().psd);
    }

    #[test]
    fn oracle_examples() {
        let p = RealizationParams::ns(Variant::Bs, rat(1, 2));
        assert!(oracle_compare(&p, h(6)).unwrap().passed());
        let p = RealizationParams::ns(Variant::Unitary, rat(1, 2)).with_eta(rat(1, 2));
        let rep = oracle_compare(&p, h(4)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.params["h"], "1/4");
        let p = RealizationParams::n2(Variant::Unitary, rat(1, 2)).with_omega(int(1));
        let rep = oracle_compare(&p, h(3)).unwrap();
        assert!(rep.passed(), "{:?}", rep.offenders().next());
        assert_eq!((rep.params["c"].as_str(), rep.params["h"].as_str(), rep.params["q"].as_str()), ("6/1", "5/8", "1/1"));
        assert!(oracle_compare(&RealizationParams::ns(Variant::Tilde, int(0)), h(2)).is_err());
    }

    #[test]
    fn borcherds_examples() {
        for kappa in [int(0), rat(1, 2)] {
            let p = RealizationParams::ns(Variant::Bs, kappa);
            for (m, n) in [(3, -3), (1, 1), (1, -1)] {
                let rep = borcherds_consistency(&p, h(m), h(n), h(6)).unwrap();
                assert!(rep.passed(), "{:?}", rep.offenders().next());
            }
        }
        let u = RealizationParams::ns(Variant::Unitary, int(1));
        assert!(borcherds_consistency(&u, h(1), h(1), h(2)).is_err());
    }

    #[test]
    fn borcherds_detects_a_wrong_sum() {
        // dropping the central j = 2 term must break (3/2, −3/2) on Ω
        let p = RealizationParams::ns(Variant::Bs, int(0));
        let mut r = Realization::new(p).unwrap();
        let om = r.vacuum();
        let a = r.apply(Role::G, h(-3), &om).unwrap();
        let direct = r.apply(Role::G, h(3), &a).unwrap();
        assert_eq!(direct, om.scaled(&GaussianRational::one()));
    }
}
