import random

import pytest

from liesplit.liealg import build_double, build_gl, build_sl, build_so_even, change_basis
from liesplit.invariants import (
    EliminationInfeasible,
    aks_restrict,
    bidecompose,
    charpoly_coefficients,
    custom_basis,
    double_shift_basis,
    eliminate_on_subspace,
    ggs_check,
    hilbert_basis,
    jacobian_rank,
    poly_det,
    poly_pfaffian,
    restrict_to_t0,
    transport_basis,
    verify_invariance,
)
from liesplit.poisson import poisson_bracket
from liesplit.poly import Polynomial
from liesplit.rationals import QQ, QQ0, QQ1
from liesplit.splitting import (
    BracketParameter,
    contract,
    horospherical_splitting,
    make_decomposition,
    make_splitting,
    pencil_member,
)


def _gl_block_indices(gl, sizes):
    order = [(i, j) for i in range(gl.matrix_size) for j in range(gl.matrix_size) if i < j]
    order += [(i, i) for i in range(gl.matrix_size)]
    order += [(i, j) for i in range(gl.matrix_size) for j in range(gl.matrix_size) if i > j]
    bounds = []
    start = 0
    for s in sizes:
        bounds.append((start, start + s))
        start += s

    def inside(i, j):
        return any(a <= i < b and a <= j < b for a, b in bounds)

    return [k for k, (i, j) in enumerate(order) if inside(i, j)]


def sl3_paper_splitting():
    g = build_sl(3)
    cart = g.triangular.cartan
    v = [QQ0] * 8
    v[cart[0]] = QQ1
    v[cart[1]] = QQ1  # diag(1, 0, -1)
    return g, horospherical_splitting(g, [v])


# -- Hilbert bases -------------------------------------------------------


def test_sl2_charpoly_is_the_casimir():
    sl2 = build_sl(2)
    B = hilbert_basis(sl2, "charpoly")
    assert B.degrees == [2]
    e, h, f = (Polynomial.variable(3, i) for i in range(3))
    target = h * h + 4 * e * f
    assert B.polys[0].canonical()[0] == target.canonical()[0]


def test_gl3_trace_powers():
    B = hilbert_basis(build_gl(3), "trace_powers")
    assert B.degrees == [1, 2, 3]


def test_so8_minors_and_pfaffian():
    so8 = build_so_even(4)
    B = hilbert_basis(so8, "so_minors_pfaffian")
    assert B.degrees == [2, 4, 6, 4]
    pf = B.polys[-1]
    delta8 = charpoly_coefficients(so8)[8]
    assert pf * pf == delta8


def test_so_odd_half_rank_rejected():
    # over the rationals Pf^2 = -Delta_2n when n is odd; the documented
    # sign-convention error is raised
    so6 = build_so_even(3)
    with pytest.raises(ValueError, match="sign convention"):
        hilbert_basis(so6, "so_minors_pfaffian")


def test_invariance_checks():
    sl2 = build_sl(2)
    e, h, f = (Polynomial.variable(3, i) for i in range(3))
    assert verify_invariance(sl2, h * h + 4 * e * f)
    assert not verify_invariance(sl2, h * h)
    assert verify_invariance(sl2, Polynomial.constant(3, QQ(7, 3)))


def test_poly_det_and_pfaffian_standard_forms():
    # det of a 3x3 constant matrix and Pf of the standard skew form
    nv = 1
    c = lambda v: Polynomial.constant(nv, v)
    det = poly_det([[c(2), c(0), c(0)], [c(0), c(3), c(0)], [c(0), c(0), c(4)]])
    assert det == c(24)
    z = c(0)
    std = [
        [z, c(1), z, z],
        [c(-1), z, z, z],
        [z, z, z, c(1)],
        [z, z, c(-1), z],
    ]
    assert poly_pfaffian(std) == c(1)


# -- bi-decomposition ------------------------------------------------------


def test_bidecompose_sl2_casimir():
    sl2 = build_sl(2)
    S = make_splitting(sl2, (0, 1))
    e, h, f = (Polynomial.variable(3, i) for i in range(3))
    C = h * h + 4 * e * f
    dec = bidecompose(S, C)
    assert [c.bidegree for c in dec.components] == [(1, 1), (2, 0)]
    assert dec.top == 4 * e * f
    assert dec.bottom == h * h


def test_bidecompose_monomial_single_component():
    sl2 = build_sl(2)
    S = make_splitting(sl2, (0, 1))
    e = Polynomial.variable(3, 0)
    f = Polynomial.variable(3, 2)
    dec = bidecompose(S, e * f**2)
    assert len(dec.components) == 1
    assert dec.top is dec.components[0].poly


def test_bidecompose_requires_homogeneous():
    sl2 = build_sl(2)
    S = make_splitting(sl2, (0, 1))
    e = Polynomial.variable(3, 0)
    with pytest.raises(ValueError):
        bidecompose(S, e + e * e)


def test_bidecompose_double_casimir_components():
    d = build_double(build_sl(2))
    S = horospherical_splitting(d, [[QQ0, QQ1, QQ0, -QQ1]])
    e, h, f, xi = (Polynomial.variable(4, i) for i in range(4))
    C = h * h + 4 * e * f
    Bc = transport_basis(custom_basis(d, [(C, 2)], verify=False), S)
    dec = bidecompose(S, Bc.polys[0])
    names = S.algebra.names
    m = Polynomial.variable(4, names.index("t1_1"))
    p = Polynomial.variable(4, names.index("t0_1"))
    eA = Polynomial.variable(4, names.index("E12"))
    fA = Polynomial.variable(4, names.index("E21"))
    assert dec.component(0) == QQ(1, 4) * p * p
    assert dec.component(1) == QQ(1, 2) * m * p + 4 * eA * fA
    assert dec.component(2) == QQ(1, 4) * m * m


def test_reconstruction_property():
    g, S = sl3_paper_splitting()
    B = transport_basis(hilbert_basis(g, "trace_powers"), S)
    for F, d in B.generators:
        dec = bidecompose(S, F)
        total = Polynomial.zero(F.nvars)
        for c in dec.components:
            total = total + c.poly
        assert total == F


def test_extreme_components_invariant_under_contractions():
    g, S = sl3_paper_splitting()
    B = transport_basis(hilbert_basis(g, "trace_powers"), S)
    ch = contract(S, "keep_h")
    cr = contract(S, "keep_r")
    for F, d in B.generators:
        dec = bidecompose(S, F)
        assert verify_invariance(ch, dec.top)
        assert verify_invariance(cr, dec.bottom)


def test_pencil_commutativity_of_components():
    rng = random.Random(1)
    g, S = sl3_paper_splitting()
    B = transport_basis(hilbert_basis(g, "trace_powers"), S)
    comps = []
    for F, d in B.generators:
        comps.extend(c.poly for c in bidecompose(S, F).components)
    params = [BracketParameter(1, 0), BracketParameter(0, 1), BracketParameter(1, 1)]
    params += [BracketParameter(1, rng.randint(2, 30)) for _ in range(5)]
    for _ in range(8):
        a, b = rng.sample(range(len(comps)), 2)
        for p in params:
            assert poisson_bracket(pencil_member(S, p), comps[a], comps[b]).is_zero()


def test_complement_independence_operator():
    # two complements to b in sl2: m = <f> and m~ = <f + a e + b h>; the
    # substitution operator carries top components to top components exactly
    sl2 = build_sl(2)
    e, h, f = (Polynomial.variable(3, i) for i in range(3))
    C = h * h + 4 * e * f
    S = make_splitting(sl2, (0, 1))
    top_m = bidecompose(S, C).top
    for alpha, beta in ((1, 0), (0, 1), (3, -2)):
        # operator L: identity on b, f -> f + alpha e + beta h
        image = f + alpha * e + beta * h
        L_top = top_m.substitute({2: image})
        # decomposition with respect to the tilted complement, via the
        # adapted basis (e, h, f~), mapped back to the original coordinates
        adapted = change_basis(
            sl2,
            [[1, 0, 0], [0, 1, 0], [QQ(alpha), QQ(beta), 1]],
            ["e", "h", "ft"],
        )
        A = adapted.base_change.transpose()
        from liesplit.linalg import inverse

        fwd = inverse(A)
        C_new = C.map_vars([Polynomial.linear_form(3, fwd.rows[i]) for i in range(3)], 3)
        D2 = make_decomposition(adapted, (0, 1))
        top_new = bidecompose(D2, C_new).top
        back = top_new.map_vars([Polynomial.linear_form(3, A.rows[i]) for i in range(3)], 3)
        assert back == L_top


# -- ggs checks ------------------------------------------------------------


def test_ggs_sl2_borel():
    sl2 = build_sl(2)
    S = make_splitting(sl2, (0, 1))
    B = hilbert_basis(sl2, "charpoly")
    rep = ggs_check(S, B, side="h")
    assert rep.sum_m == 1 == rep.dim_m
    assert rep.verdict and rep.consistent


def test_ggs_gl4_dichotomy():
    gl4 = build_gl(4)
    D13 = make_decomposition(gl4, _gl_block_indices(gl4, [1, 3]))
    trace = hilbert_basis(gl4, "trace_powers")
    charp = hilbert_basis(gl4, "charpoly")
    r1 = ggs_check(D13, trace)
    assert (r1.sum_m, r1.dim_m, r1.verdict) == (8, 6, False)
    assert r1.consistent
    r2 = ggs_check(D13, charp)
    assert (r2.sum_m, r2.dim_m, r2.verdict) == (6, 6, True)
    assert r2.consistent
    D22 = make_decomposition(gl4, _gl_block_indices(gl4, [2, 2]))
    assert ggs_check(D22, trace).verdict
    assert ggs_check(D22, charp).verdict


def test_ggs_jacobian_consistency_across_cases():
    # degree-sum verdict and Jacobian-rank independence agree on builders
    g, S = sl3_paper_splitting()
    B = transport_basis(hilbert_basis(g, "trace_powers"), S)
    rep = ggs_check(S, B, side="h")
    assert not rep.verdict
    assert rep.consistent  # jacobian rank < rank exactly when verdict fails


# -- elimination -----------------------------------------------------------


def _sl4_splitting():
    g = build_sl(4)
    cart = g.triangular.cartan
    t0 = [[QQ0] * 15]
    t0[0][cart[0]] = QQ1
    t0[0][cart[2]] = -QQ1  # diag(1,-1,-1,1)
    t1 = []
    for diag in ([1, 0, 0, -1], [0, 1, -1, 0]):
        v = [QQ0] * 15
        run = QQ0
        for k, i in enumerate(cart):
            run = run + QQ(diag[k])
            v[i] = run
        t1.append(v)
    return g, horospherical_splitting(g, t1, t0_basis=t0)


def test_eliminate_sl4_quartic():
    g, S = _sl4_splitting()
    B = transport_basis(hilbert_basis(g, "trace_powers"), S)
    assert restrict_to_t0(S, B.polys[0]) == Polynomial.monomial(1, [2], 4)
    assert restrict_to_t0(S, B.polys[1]).is_zero()
    mod = eliminate_on_subspace(B, S, keep=[0])
    P2, P3, P4 = B.polys
    assert mod.polys[1] == P3
    assert mod.polys[2] == P4 - QQ(1, 4) * P2 * P2
    assert restrict_to_t0(S, mod.polys[2]).is_zero()
    rep = ggs_check(S, mod, side="h")
    assert rep.verdict and rep.consistent


def test_eliminate_sl3_infeasible():
    g, S = sl3_paper_splitting()
    B = transport_basis(hilbert_basis(g, "trace_powers"), S)
    assert restrict_to_t0(S, B.polys[0]) == Polynomial.monomial(1, [2], 6)
    assert restrict_to_t0(S, B.polys[1]) == Polynomial.monomial(1, [3], -6)
    with pytest.raises(EliminationInfeasible):
        eliminate_on_subspace(B, S, keep=[0])


def test_double_shift_bidegree():
    d = build_double(build_sl(2))
    e, h, f, xi = (Polynomial.variable(4, i) for i in range(4))
    C = h * h + 4 * e * f
    B = custom_basis(d, [(C, 2), (xi, 1)], verify=False)
    sh = double_shift_basis(B, side="h")
    assert sh.polys[0] == C - xi * xi
    S = horospherical_splitting(d, [[QQ0, QQ1, QQ0, -QQ1]])
    shifted = transport_basis(sh, S)
    dec = bidecompose(S, shifted.polys[0])
    assert [c.bidegree for c in dec.components] == [(1, 1)]
    # r-side shift for even degree coincides with the h-side shift
    assert double_shift_basis(B, side="r").polys[0] == sh.polys[0]


# -- AKS restriction ---------------------------------------------------------


def test_aks_sl2_singleton():
    sl2 = build_sl(2)
    S = make_splitting(sl2, (0, 1))
    rep = aks_restrict(S, hilbert_basis(sl2, "charpoly"))
    assert len(rep.side_h.generators) == 1
    assert rep.side_h.commutes and rep.side_r.commutes
    # the pure-b part of the Casimir is the toral square
    hvar = Polynomial.variable(2, 1)
    assert rep.side_h.generators[0].canonical()[0] == (hvar * hvar).canonical()[0]


def test_aks_sl3_two_generators_commute():
    sl3 = build_sl(3)
    S = make_splitting(sl3, tuple(sl3.triangular.plus) + tuple(sl3.triangular.cartan))
    rep = aks_restrict(S, hilbert_basis(sl3, "charpoly"))
    assert len(rep.side_h.generators) == 2
    assert rep.side_h.commutes
    assert rep.side_r.commutes


# -- transcendence-degree stability (small ranks) ----------------------------


def test_trdeg_of_top_components_matches_rank_on_borel():
    for n in (2, 3):
        g = build_sl(n)
        S = make_splitting(g, tuple(g.triangular.plus) + tuple(g.triangular.cartan))
        B = hilbert_basis(g, "charpoly")
        tops = [bidecompose(S, F).top for F, _ in B.generators]
        assert jacobian_rank(tops, trials=5, seed=0) == g.rank
