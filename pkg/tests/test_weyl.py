import random

import pytest

from liesplit.poly import Polynomial
from liesplit.rationals import QQ, QQ0, QQ1
from liesplit.weyl import (
    SatakeDiagram,
    build_root_system,
    enumerate_weyl,
    invariant_basis,
    restriction_check,
    reynolds_average,
    reynolds_invariant_basis,
    satake_subspaces,
    w0_compute,
)


def test_positive_root_counts():
    assert len(build_root_system("A", 2).positive_roots) == 3
    assert len(build_root_system("D", 4).positive_roots) == 12
    assert len(build_root_system("E6").positive_roots) == 36


def test_weyl_orders_small():
    assert enumerate_weyl(build_root_system("A", 2)).order == 6
    assert enumerate_weyl(build_root_system("A", 3)).order == 24
    assert enumerate_weyl(build_root_system("D", 4)).order == 192


def test_enumeration_cap():
    with pytest.raises(ValueError):
        enumerate_weyl(build_root_system("D", 4), cap=100)


def test_elements_permute_roots_exhaustive():
    for label, rank in (("A", 2), ("A", 3), ("A", 4), ("D", 4)):
        rs = build_root_system(label, rank)
        W = enumerate_weyl(rs)
        roots = set(rs.positive_roots) | {tuple(-x for x in r) for r in rs.positive_roots}
        for el in W.elements:
            m = W.matrix(el)
            for r in rs.positive_roots:
                assert tuple(m.matvec(r)) in roots


def test_satake_a3_matches_symmetric_diagonal():
    rs = build_root_system("A", 3)
    t0, t1 = satake_subspaces(rs, SatakeDiagram(((1, 3),)))
    assert len(t0) == 1
    assert tuple(int(x) for x in t0[0]) == (1, -1, -1, 1)
    assert len(t1) == 3 - 1  # inside the sum-zero hyperplane


def test_satake_dn_arrow_spans_last_axis():
    rs = build_root_system("D", 4)
    t0, _ = satake_subspaces(rs, SatakeDiagram(((3, 4),)))
    assert len(t0) == 1
    v = [int(x) for x in t0[0]]
    assert v[:3] == [0, 0, 0] and v[3] != 0


def test_satake_e6_dimension():
    rs = build_root_system("E6")
    t0, t1 = satake_subspaces(rs, SatakeDiagram(((1, 5), (2, 4))))
    assert len(t0) == 2 and len(t1) == 4


def test_satake_validation():
    with pytest.raises(ValueError):
        SatakeDiagram(((1, 1),))
    with pytest.raises(ValueError):
        SatakeDiagram(((1, 2), (2, 3)))
    rs = build_root_system("A", 2)
    with pytest.raises(ValueError):
        satake_subspaces(rs, SatakeDiagram(((1, 9),)))


def test_w0_a4_is_s2():
    rs = build_root_system("A", 4)
    W = enumerate_weyl(rs)
    t0, _ = satake_subspaces(rs, SatakeDiagram(((1, 4), (2, 3))))
    rep = w0_compute(W, t0)
    assert rep.orders == (120, 8, 4, 2)
    assert rep.element_orders == {1: 1, 2: 1}


def test_w0_full_space_recovers_w():
    rs = build_root_system("A", 2)
    W = enumerate_weyl(rs)
    basis = [tuple(QQ1 if i == j else QQ0 for i in range(3)) for j in range(3)]
    rep = w0_compute(W, basis)
    assert rep.order_n == W.order
    assert rep.order_z == 1
    assert rep.order_w0 == W.order


def test_restriction_sl5_fails_at_degree_one():
    rs = build_root_system("A", 4)
    W = enumerate_weyl(rs)
    t0, _ = satake_subspaces(rs, SatakeDiagram(((1, 4), (2, 3))))
    rc = restriction_check(W, t0)
    assert rc.per_degree[0] == (1, 0, 1)
    assert rc.first_failure_degree == 1
    assert not rc.verdict_up_to_dmax


def test_restriction_so8_passes_all_degrees():
    rs = build_root_system("D", 4)
    W = enumerate_weyl(rs)
    t0, _ = satake_subspaces(rs, SatakeDiagram(((3, 4),)))
    rc = restriction_check(W, t0)
    assert rc.first_failure_degree is None
    assert rc.verdict_up_to_dmax
    assert rc.dmax == 6
    for d, image_dim, inv_dim in rc.per_degree:
        assert image_dim == inv_dim == (1 if d % 2 == 0 else 0)


def test_reynolds_idempotent():
    rng = random.Random(2)
    rs = build_root_system("A", 2)
    W = enumerate_weyl(rs)
    mats = [W.matrix(el) for el in W.elements]
    for _ in range(5):
        terms = {
            bytes(rng.randint(0, 2) for _ in range(3)): QQ(rng.randint(-5, 5), rng.randint(1, 4))
            for _ in range(4)
        }
        F = Polynomial(3, terms)
        once = reynolds_average(mats, F)
        twice = reynolds_average(mats, once)
        assert once == twice


def test_fixed_space_matches_reynolds_span():
    # generator fixed-space == image of full-group averaging, degree by degree
    for label, rank in (("A", 2), ("A", 3), ("D", 3)):
        rs = build_root_system(label, rank)
        W = enumerate_weyl(rs)
        gens = [W.matrix(g) for g in W.generators]
        all_mats = [W.matrix(el) for el in W.elements]
        for d in (1, 2, 3):
            fixed = invariant_basis(gens, d, rs.model_dim)
            rey = reynolds_invariant_basis(all_mats, d, rs.model_dim)
            assert len(fixed) == len(rey)
            for p in rey:
                assert reynolds_average(all_mats, p) == p


def test_image_dimension_monotone_under_products():
    # products of lower-degree restricted invariants stay inside the
    # restricted image of the matching degree
    rs = build_root_system("A", 3)
    W = enumerate_weyl(rs)
    t0, _ = satake_subspaces(rs, SatakeDiagram(((1, 3),)))
    gens = [W.matrix(g) for g in W.generators]
    a = len(t0)
    restr = [
        Polynomial.linear_form(a, [QQ(t0[s][i]) for s in range(a)]) for i in range(rs.model_dim)
    ]

    def image_polys(d):
        return [p.map_vars(restr, a) for p in invariant_basis(gens, d, rs.model_dim)]

    from liesplit.linalg import Matrix, rank

    i2 = image_polys(2)
    i4 = image_polys(4)
    prods = [p * q for p in i2 for q in i2]
    monos = sorted({e for p in i4 + prods for e in p.terms})
    base = [[p.terms.get(e, QQ0) for e in monos] for p in i4]
    r_base = rank(Matrix(base)) if base else 0
    both = base + [[p.terms.get(e, QQ0) for e in monos] for p in prods]
    assert rank(Matrix(both)) == r_base


def test_restriction_verdicts_match_ggs_routes():
    # the cross-module verdict table: sl4 yes, sl3 no, sl5 no, so8 yes
    cases = [
        ("A", 3, ((1, 3),), True),
        ("A", 2, ((1, 2),), False),
        ("A", 4, ((1, 4), (2, 3)), False),
        ("D", 4, ((3, 4),), True),
    ]
    for label, rank_, arrows, expected in cases:
        rs = build_root_system(label, rank_)
        W = enumerate_weyl(rs)
        t0, _ = satake_subspaces(rs, SatakeDiagram(arrows))
        rc = restriction_check(W, t0)
        assert rc.verdict_up_to_dmax == expected


def test_restriction_full_table_without_short_circuit():
    rs = build_root_system("A", 4)
    W = enumerate_weyl(rs)
    t0, _ = satake_subspaces(rs, SatakeDiagram(((1, 4), (2, 3))))
    rc = restriction_check(W, t0, dmax=4, stop_at_failure=False)
    assert rc.first_failure_degree == 1
    assert [d for d, _, _ in rc.per_degree] == [1, 2, 3, 4]
    assert not rc.stopped_early
    for d, image_dim, inv_dim in rc.per_degree:
        assert image_dim <= inv_dim
