"""Generate bundled Lie superalgebra structure files from matrix realizations.

Each algebra is realized by supermatrices; brackets are supercommutators,
the invariant form is the supertrace form. Output format is the plain-text
structure format read by `freefield_core::walgebra::load_superalgebra`.
"""
import sys
from fractions import Fraction as Fr
import sympy as sp


def parity_of(mat, even_idx):
    n = mat.shape[0]
    ev = od = False
    for i in range(n):
        for j in range(n):
            if mat[i, j] != 0:
                if (i in even_idx) == (j in even_idx):
                    ev = True
                else:
                    od = True
    assert not (ev and od)
    return 1 if od else 0


def sbracket(a, pa, b, pb):
    sign = -1 if (pa and pb) else 1
    return a * b - sign * b * a


def supertrace(m, even_idx):
    return sum((m[i, i] if i in even_idx else -m[i, i]) for i in range(m.shape[0]))


def osp_basis(m):
    """osp(m|2): even coords 0..m-1 with symmetric form, odd coords m, m+1 symplectic."""
    n = m + 2
    even_idx = set(range(m))
    J = sp.zeros(n, n)
    for i in range(m):
        J[i, i] = 1
    J[m, m + 1] = 1
    J[m + 1, m] = -1
    par = [0] * m + [1, 1]
    syms = sp.symbols(f"a0:{n*n}")
    X = sp.Matrix(n, n, syms)
    sols = []
    for xp in (0, 1):
        # restrict to homogeneous parity
        eqs = []
        for i in range(n):
            for j in range(n):
                if (par[i] ^ par[j]) != xp:
                    eqs.append(X[i, j])
        # invariance: beta(Xu, v) + (-1)^{|X||u|} beta(u, Xv) = 0 for basis u=e_a, v=e_b
        for a in range(n):
            for b in range(n):
                # beta(u,v) = u^T J v
                lhs = (X[:, a].T * J[:, b])[0] + (-1) ** (xp * par[a]) * (J[a, :] * X[:, b])[0]
                eqs.append(lhs)
        A, _ = sp.linear_eq_to_matrix(eqs, syms)
        ns = A.nullspace()
        for v in ns:
            sols.append((sp.Matrix(n, n, list(v)), xp))
    return sols, even_idx, m  # sp2 block at indices m, m+1


def sl22_basis():
    n = 4
    even_idx = {0, 1}
    E = lambda i, j: sp.Matrix(n, n, lambda a, b: 1 if (a, b) == (i, j) else 0)
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                basis.append(E(i, j))
    basis.append(E(0, 0) - E(1, 1))
    basis.append(E(2, 2) - E(3, 3))
    return basis, even_idx


def build(name, mats, even_idx, e, x, f, quotient_identity=False):
    n = mats[0].shape[0]
    # adjust basis: put e, x, f first, then eigenbasis of ad x
    pars = [parity_of(m, even_idx) for m in mats]
    basis = [e, x, f]
    bpar = [0, 0, 0]
    # complete: project remaining into span, choose ad-x eigenvectors
    ident = sp.eye(n)
    def flat(m):
        return list(m)
    span = [flat(e), flat(x), flat(f)]
    if quotient_identity:
        span.append(flat(ident))
    cand = []
    for m, p in zip(mats, pars):
        cand.append((m, p))
    # ad x eigen decomposition on each candidate: candidates are matrix units -> eigen
    extra = []
    for m, p in cand:
        M = sp.Matrix([*span, flat(m)]).T
        if M.rank() > len(span):
            span.append(flat(m))
            extra.append((m, p))
    basis += [m for m, _ in extra]
    bpar += [p for _, p in extra]
    dim = len(basis)
    cols = [flat(b) for b in basis]
    if quotient_identity:
        cols.append(flat(ident))
    Bm = sp.Matrix(cols).T
    def coords(m):
        sol = Bm.solve_least_squares(sp.Matrix(flat(m))) if False else None
        c = sp.Matrix(Bm).gauss_jordan_solve(sp.Matrix(flat(m)))[0]
        c = [sp.nsimplify(v) for v in c]
        assert all(not v.free_symbols for v in c), c
        return c[:dim]
    brackets = []
    for i in range(dim):
        for j in range(dim):
            r = sbracket(basis[i], bpar[i], basis[j], bpar[j])
            if r == sp.zeros(n, n):
                continue
            c = coords(r)
            for k, v in enumerate(c):
                if v != 0:
                    brackets.append((i, j, k, Fr(int(sp.fraction(v)[0]), int(sp.fraction(v)[1]))))
    form = []
    for i in range(dim):
        for j in range(dim):
            v = supertrace(basis[i] * basis[j], even_idx)
            if v != 0:
                form.append((i, j, Fr(int(sp.fraction(v)[0]), int(sp.fraction(v)[1]))))
    return basis, bpar, brackets, form


def names_for(basis, bpar, x, labels):
    return labels


def write(path, name, syms, bpar, brackets, form, extra_lines=()):
    with open(path, "w") as fh:
        fh.write(f"# {name}: generated from a supermatrix realization by scripts/gen_superalgebras.py\n")
        fh.write(f"name {name}\n")
        for s, p in zip(syms, bpar):
            fh.write(f"basis {s} {p}\n")
        fh.write("triple e x f\n")
        for i, j, k, v in brackets:
            fh.write(f"bracket {syms[i]} {syms[j]} {syms[k]} {v}\n")
        for i, j, v in form:
            if i <= j:
                fh.write(f"form {syms[i]} {syms[j]} {v}\n")
        for line in extra_lines:
            fh.write(line + "\n")


def sl2():
    E = lambda i, j: sp.Matrix(2, 2, lambda a, b: 1 if (a, b) == (i, j) else 0)
    e, f = E(0, 1), E(1, 0)
    x = (E(0, 0) - E(1, 1)) / 2
    basis, bpar, br, form = build("sl2", [e, x, f], {0, 1}, e, x, f)
    return ["e", "x", "f"], bpar, br, form


def osp(m):
    sols, even_idx, s = osp_basis(m)
    n = m + 2
    E = lambda i, j: sp.Matrix(n, n, lambda a, b: 1 if (a, b) == (i, j) else 0)
    # sp2 on odd coords s, s+1: find e, x, f among solutions' span
    e = E(s, s + 1)
    f = E(s + 1, s)
    x = (E(s, s) - E(s + 1, s + 1)) / 2
    mats = [m_ for m_, _ in sols]
    # refine: use matrix-unit-like basis from solutions; ad-x eigenvectors
    adx = []
    refined = []
    for mm in mats:
        refined.append(mm)
    # decompose each solution into ad x eigencomponents
    comps = []
    for mm in refined:
        for lam in [Fr(-1), Fr(-1, 2), Fr(0), Fr(1, 2), Fr(1)]:
            # projection onto eigenvalue lam of ad x: entries (i,j) scale by wt_i - wt_j
            wt = [0] * n
            wt[s] = Fr(1, 2)
            wt[s + 1] = Fr(-1, 2)
            pm = sp.Matrix(n, n, lambda a, b: mm[a, b] if wt[a] - wt[b] == lam else 0)
            if pm != sp.zeros(n, n):
                comps.append(pm)
    basis, bpar, br, form = build(f"osp{m}", comps, set(range(m)), e, x, f)
    return basis, bpar, br, form


def label_osp(basis, bpar, m):
    n = m + 2
    s = m
    wt = [0] * n
    wt[s] = Fr(1, 2)
    wt[s + 1] = Fr(-1, 2)
    labels = ["e", "x", "f"]
    cnt = {}
    for b, p in zip(basis[3:], bpar[3:]):
        lam = None
        for a in range(n):
            for c in range(n):
                if b[a, c] != 0:
                    lam = wt[a] - wt[c]
        key = ("v" if p else "u") + {Fr(1, 2): "p", Fr(-1, 2): "m", Fr(0): "0"}[lam]
        cnt[key] = cnt.get(key, 0) + 1
        labels.append(f"{key}{cnt[key]}")
    return labels


def psl22():
    mats, even_idx = sl22_basis()
    n = 4
    E = lambda i, j: sp.Matrix(n, n, lambda a, b: 1 if (a, b) == (i, j) else 0)
    e, f = E(0, 1), E(1, 0)
    x = (E(0, 0) - E(1, 1)) / 2
    basis, bpar, br, form = build("psl22", mats, even_idx, e, x, f, quotient_identity=True)
    wt = [Fr(1, 2), Fr(-1, 2), 0, 0]
    labels = ["e", "x", "f"]
    cnt = {}
    for b, p in zip(basis[3:], bpar[3:]):
        lam = Fr(0)
        for a in range(n):
            for c in range(n):
                if b[a, c] != 0:
                    lam = wt[a] - wt[c]
        key = ("v" if p else "u") + {Fr(1, 2): "p", Fr(-1, 2): "m", Fr(0): "0"}[lam]
        cnt[key] = cnt.get(key, 0) + 1
        labels.append(f"{key}{cnt[key]}")
    return labels, bpar, br, form


def main(outdir):
    syms, bpar, br, form = sl2()
    write(f"{outdir}/sl2.lsa", "sl2", syms, bpar, br, form)
    for m, nm, extra in [(1, "spo_2_1", ["pk 5/8 7/4"]), (2, "spo_2_2", []), (3, "spo_2_3", [])]:
        basis, bpar, br, form = osp(m)
        labels = label_osp(basis, bpar, m)
        write(f"{outdir}/{nm}.lsa", nm, labels, bpar, br, form, extra)
    labels, bpar, br, form = psl22()
    write(f"{outdir}/psl_2_2.lsa", "psl_2_2", labels, bpar, br, form)


if __name__ == "__main__":
    main(sys.argv[1])
