"""Symmetric invariants: Hilbert bases, bi-degrees, and generating-system tests.

Invariants of the matrix builders are polynomials on the dual space via
the trace-form identification of the algebra with its dual (one half of
the trace for the antidiagonal orthogonal realization).  Concretely the
generic dual element is the matrix Y(x) = sum_a y_a X_a with G y = x,
where G is the Gram matrix of the invariant form on the chosen basis;
characteristic coefficients, power traces, principal-minor sums and the
Pfaffian are then exact polynomials in the dual coordinates x.

The good-generating-system test is a degree-sum criterion: for a
subalgebra h with complement m, sum_j deg_m F_j^bullet >= dim m always,
with equality exactly when the top components stay algebraically
independent.  The report cross-checks the degree sum against an exact
Jacobian rank at sampled points; the two must agree on builder algebras.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .liealg import LieAlgebra, sub_algebra
from .linalg import Matrix, inverse, rank, solve
from .poisson import poisson_bracket
from .poly import Polynomial
from .rationals import QQ, QQ0, QQ1
from .splitting import Decomposition, Splitting


# -- generic dual element and determinant/pfaffian expansion -----------


def dual_matrix(L: LieAlgebra):
    """Entries of Y(x), the generic dual element in the matrix realization."""
    if L.realization is None or any(m is None for m in L.realization) or L.gram is None:
        raise ValueError(f"{L.kind} carries no complete matrix realization")
    n = L.dim
    ginv = inverse(L.gram)
    y = [Polynomial.linear_form(n, ginv.rows[a]) for a in range(n)]
    size = L.matrix_size
    Y = [[Polynomial.zero(n) for _ in range(size)] for _ in range(size)]
    for a in range(n):
        if y[a].is_zero():
            continue
        for (r, c), v in L.realization[a].items():
            Y[r][c] = Y[r][c] + y[a] * v
    return Y


def poly_det(entries) -> Polynomial:
    """Determinant of a square matrix of polynomials, memoized over column subsets."""
    size = len(entries)
    nv = entries[0][0].nvars if size else 0
    one = Polynomial.constant(nv, 1)
    memo: dict[tuple, Polynomial] = {}

    def det(cols: tuple) -> Polynomial:
        if not cols:
            return one
        got = memo.get(cols)
        if got is not None:
            return got
        r = size - len(cols)
        acc = Polynomial.zero(nv)
        sign = 1
        for t, j in enumerate(cols):
            e = entries[r][j]
            if e.terms:
                sub = det(cols[:t] + cols[t + 1 :])
                acc = acc + e * sub if sign > 0 else acc - e * sub
            sign = -sign
        memo[cols] = acc
        return acc

    return det(tuple(range(size)))


def poly_pfaffian(entries) -> Polynomial:
    """Pfaffian of a skew-symmetric polynomial matrix by first-row expansion.

    Normalized so the block-diagonal standard form (blocks [[0,1],[-1,0]])
    has Pfaffian +1.
    """
    size = len(entries)
    if size % 2:
        raise ValueError("Pfaffian needs even size")
    nv = entries[0][0].nvars if size else 0
    for i in range(size):
        for j in range(i, size):
            if entries[i][j] != -entries[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    one = Polynomial.constant(nv, 1)
    memo: dict[tuple, Polynomial] = {}

    def pf(idx: tuple) -> Polynomial:
        if not idx:
            return one
        got = memo.get(idx)
        if got is not None:
            return got
        i = idx[0]
        rest = idx[1:]
        acc = Polynomial.zero(nv)
        sign = 1
        for t, j in enumerate(rest):
            e = entries[i][j]
            if e.terms:
                sub = pf(rest[:t] + rest[t + 1 :])
                acc = acc + e * sub if sign > 0 else acc - e * sub
            sign = -sign
        memo[idx] = acc
        return acc

    return pf(tuple(range(size)))


def charpoly_coefficients(L: LieAlgebra) -> dict:
    """Map k -> e_k with det(lambda I - Y) = sum_k (-1)^k e_k lambda^(N-k)."""
    Y = dual_matrix(L)
    size = L.matrix_size
    n = L.dim
    lam = Polynomial.variable(n + 1, n)
    entries = [
        [
            (lam - Y[r][c].lift(n + 1) if r == c else -Y[r][c].lift(n + 1))
            for c in range(size)
        ]
        for r in range(size)
    ]
    full = poly_det(entries)
    by_lambda: dict[int, dict] = {}
    for e, c in full.terms.items():
        by_lambda.setdefault(e[n], {})[e[:n]] = c
    out = {}
    for k in range(1, size + 1):
        terms = by_lambda.get(size - k, {})
        p = Polynomial(n, terms, _clean=True)
        if k % 2:
            p = -p
        out[k] = p
    return out


# -- Hilbert bases ------------------------------------------------------


@dataclass
class HilbertBasis:
    algebra: LieAlgebra
    kind: str
    generators: tuple  # of (Polynomial, degree)

    @property
    def polys(self):
        return [g for g, _ in self.generators]

    @property
    def degrees(self):
        return [d for _, d in self.generators]

    def replace(self, index, poly, kind=None):
        gens = list(self.generators)
        gens[index] = (poly, gens[index][1])
        return HilbertBasis(self.algebra, kind or self.kind, tuple(gens))


def verify_invariance(L: LieAlgebra, F: Polynomial) -> bool:
    """Exact check that {F, x_j} = 0 for every coordinate x_j."""
    from . import _kernels as K

    n = L.dim
    dF = [None] * n
    acc = [dict() for _ in range(n)]
    for (i, j), entries in L.constants.items():
        lin = {}
        for k, c in entries:
            e = bytearray(n)
            e[k] = 1
            lin[bytes(e)] = c
        for a, b, sign in ((i, j, QQ1), (j, i, -QQ1)):
            # contribution of dF/dx_a to {F, x_b}
            if dF[a] is None:
                dF[a] = K.diff_terms(F.terms, a)
            if dF[a]:
                piece = K.mul_terms(dF[a], lin, n)
                K.axpy_terms(acc[b], piece, sign)
    return all(not t for t in acc)


def _b_of(L: LieAlgebra):
    return QQ(L.dim + L.rank, 2)


def hilbert_basis(L: LieAlgebra, kind: str, verify: bool = True) -> HilbertBasis:
    """Builder-backed Hilbert bases.

    kind: 'charpoly', 'trace_powers', 'so_minors_pfaffian',
    'double_extended[:base_kind]' (base kind defaults to charpoly), or a
    ready list of (Polynomial, degree) pairs with kind 'custom'.
    """
    gens: list[tuple[Polynomial, int]] = []
    if kind == "charpoly":
        coeffs = charpoly_coefficients(L)
        # identically-zero coefficients (the trace on sl) are not generators
        for k in range(1, L.matrix_size + 1):
            if coeffs[k].terms:
                gens.append((coeffs[k], k))
    elif kind == "trace_powers":
        Y = dual_matrix(L)
        size = L.matrix_size
        current = Y
        for k in range(1, size + 1):
            tr = Polynomial.zero(L.dim)
            for i in range(size):
                tr = tr + current[i][i]
            if tr.terms:
                gens.append((tr, k))
            if k == size:
                break
            nxt = [[Polynomial.zero(L.dim) for _ in range(size)] for _ in range(size)]
            for i in range(size):
                for j in range(size):
                    acc = Polynomial.zero(L.dim)
                    for t in range(size):
                        if current[i][t].terms and Y[t][j].terms:
                            acc = acc + current[i][t] * Y[t][j]
                    nxt[i][j] = acc
            current = nxt
    elif kind == "so_minors_pfaffian":
        if not L.kind.startswith("so("):
            raise ValueError("so_minors_pfaffian needs the so(2n) builder")
        size = L.matrix_size
        n = size // 2
        if n % 2:
            raise ValueError(
                "Pfaffian sign convention failure: over the rationals the antidiagonal "
                f"realization of so({size}) has Pf^2 = -Delta_{size} when n is odd"
            )
        coeffs = charpoly_coefficients(L)
        for k in range(1, n):
            gens.append((coeffs[2 * k], 2 * k))
        Y = dual_matrix(L)
        K = [[Y[size - 1 - r][c] for c in range(size)] for r in range(size)]
        pf = poly_pfaffian(K)
        if pf * pf != coeffs[size]:
            raise ValueError("Pfaffian sign convention failure: Pf^2 != Delta_2n")
        gens.append((pf, n))
    elif kind.startswith("double_extended"):
        base = L.base_algebra
        if base is None or not L.kind.startswith("double["):
            raise ValueError("double_extended needs a double builder algebra")
        base_kind = kind.split(":", 1)[1] if ":" in kind else "charpoly"
        bb = hilbert_basis(base, base_kind, verify=False)
        ell = L.dim - base.dim
        for g, d in bb.generators:
            gens.append((g.lift(L.dim), d))
        for k in range(ell):
            gens.append((Polynomial.variable(L.dim, base.dim + k), 1))
    else:
        raise ValueError(f"unknown Hilbert basis kind {kind!r}")

    basis = HilbertBasis(L, kind, tuple(gens))
    if L.rank is not None and len(gens) != L.rank:
        raise AssertionError(f"generator count {len(gens)} != rank {L.rank}")
    if L.rank is not None:
        total = sum(d for _, d in gens)
        if QQ(total) != _b_of(L):
            raise AssertionError(f"sum of degrees {total} != b(g) = {_b_of(L)}")
    if verify:
        for g, d in gens:
            if not verify_invariance(L, g):
                raise AssertionError(f"generator of degree {d} is not invariant")
    return basis


def custom_basis(L: LieAlgebra, polys_degrees, verify: bool = True) -> HilbertBasis:
    basis = HilbertBasis(L, "custom", tuple((p, d) for p, d in polys_degrees))
    if verify:
        for g, d in basis.generators:
            if not verify_invariance(L, g):
                raise AssertionError(f"custom generator of degree {d} is not invariant")
    return basis


def transport_basis(B: HilbertBasis, S: Decomposition, verify: bool = False) -> HilbertBasis:
    """Rewrite a basis in the adapted coordinates of a rebuilt splitting."""
    adapted = S.algebra
    if adapted.base_algebra is not B.algebra or adapted.base_change is None:
        raise ValueError("splitting is not an adapted rebuild of the basis algebra")
    A = inverse(adapted.base_change.transpose())
    n = adapted.dim
    images = [Polynomial.linear_form(n, A.rows[i]) for i in range(n)]
    gens = tuple((g.map_vars(images, n), d) for g, d in B.generators)
    out = HilbertBasis(adapted, B.kind + "@adapted", gens)
    if verify:
        for g, d in gens:
            if not verify_invariance(adapted, g):
                raise AssertionError("transported generator lost invariance; bug")
    return out


# -- restriction to subspaces of the algebra ----------------------------


def restrict_to_span(L: LieAlgebra, F: Polynomial, vectors, bound_names=None) -> Polynomial:
    """Restriction of F (a function on the dual) to the image of a subspace.

    The subspace of the algebra spanned by ``vectors`` is carried into the
    dual by the invariant form, i.e. x_a -> <v(c), X_a> with
    v(c) = sum_s c_s vectors[s]; the result is an exact polynomial in the
    parameters c_1..c_k.
    """
    if L.gram is None:
        raise ValueError("restriction needs the invariant-form Gram matrix")
    k = len(vectors)
    images = []
    for a in range(L.dim):
        coeffs = []
        for v in vectors:
            coeffs.append(sum((QQ(v[i]) * L.gram[i, a] for i in range(L.dim) if QQ(v[i])), QQ0))
        images.append(Polynomial.linear_form(k, coeffs))
    return F.map_vars(images, k)


def restrict_to_t0(S: Splitting, F: Polynomial) -> Polynomial:
    if not S.is_horospherical:
        raise ValueError("t0 restrictions need a horospherical splitting")
    unit = []
    for i in S.t0_indices:
        v = [QQ0] * S.algebra.dim
        v[i] = QQ1
        unit.append(v)
    return restrict_to_span(S.algebra, F, unit)


def restrict_to_t1(S: Splitting, F: Polynomial) -> Polynomial:
    if not S.is_horospherical:
        raise ValueError("t1 restrictions need a horospherical splitting")
    unit = []
    for i in S.t1_indices:
        v = [QQ0] * S.algebra.dim
        v[i] = QQ1
        unit.append(v)
    return restrict_to_span(S.algebra, F, unit)


# -- bi-homogeneous decomposition ---------------------------------------


@dataclass
class BiComponent:
    poly: Polynomial
    bidegree: tuple  # (h-degree, r-degree)


@dataclass
class BiDecomposition:
    components: list
    top: Polynomial     # minimal h-degree component (invariant of the keep_h contraction)
    bottom: Polynomial  # minimal r-degree component

    def component(self, i):
        """The (i, d-i) piece, zero when absent."""
        for c in self.components:
            if c.bidegree[0] == i:
                return c.poly
        if self.components:
            return Polynomial.zero(self.components[0].poly.nvars)
        raise ValueError("decomposition of the zero polynomial")


def bidecompose(D: Decomposition, F: Polynomial) -> BiDecomposition:
    """Split a homogeneous F by h-degree; callers split by total degree first."""
    if F.nvars != D.algebra.dim:
        raise ValueError("polynomial does not live on the splitting's algebra")
    if F.is_zero():
        raise ValueError("cannot bidecompose the zero polynomial")
    if not F.is_homogeneous():
        raise ValueError("bidecompose needs a homogeneous polynomial")
    d = F.degree()
    groups: dict[int, dict] = {}
    for e, c in F.terms.items():
        groups.setdefault(D.h_degree_of_exponent(e), {})[e] = c
    comps = [
        BiComponent(Polynomial(F.nvars, t, _clean=True), (i, d - i))
        for i, t in sorted(groups.items())
    ]
    return BiDecomposition(comps, comps[0].poly, comps[-1].poly)


def jacobian_rank(polys, trials: int = 5, seed: int = 0, bound: int = 997) -> int:
    """Max over sampled integer points of the exact Jacobian rank (lower bound on trdeg)."""
    if not polys:
        return 0
    n = polys[0].nvars
    grads = [[p.diff(i) for i in range(n)] for p in polys]
    rng = random.Random(seed)
    best = 0
    for _ in range(max(1, trials)):
        x = [rng.randint(-bound, bound) for _ in range(n)]
        rows = [[g.eval(x) for g in grad] for grad in grads]
        best = max(best, rank(Matrix(rows)))
        if best == min(len(polys), n):
            break
    return best


# -- good generating systems --------------------------------------------


@dataclass
class GgsRow:
    degree: int
    deg_m_top: int          # complement-degree of the relevant extreme component
    deg_h_bottom: int       # h-degree of the other extreme component
    toral_valued: bool | None
    bidegree_top: tuple


@dataclass
class GgsReport:
    side: str
    rows: list
    sum_m: int
    dim_m: int
    verdict: bool
    jacobian_rank_top: int
    rank: int | None
    consistent: bool | None
    a_count: int | None
    dim_toral: int | None
    bidegree_claim_ok: bool | None


def ggs_check(D: Decomposition, B: HilbertBasis, side: str = "h",
              trials: int = 5, seed: int = 0) -> GgsReport:
    """Degree-sum criterion for a good generating system, with Jacobian cross-check.

    side 'h': the complement is r/m and the extreme components are the
    minimal-h-degree ones; side 'r' (full splittings only) is symmetric.
    """
    if B.algebra is not D.algebra:
        raise ValueError("basis and splitting live on different algebras")
    if side not in ("h", "r"):
        raise ValueError("side must be 'h' or 'r'")
    if side == "r" and not isinstance(D, Splitting):
        raise ValueError("side 'r' needs a full splitting")
    horo = getattr(D, "is_horospherical", False)
    toral = D.t0_indices if side == "h" else D.t1_indices
    toral_set = set(toral)
    rows = []
    tops = []
    sum_m = 0
    for F, d in B.generators:
        dec = bidecompose(D, F)
        if side == "h":
            top = dec.top
            hdeg_top = dec.components[0].bidegree[0]
            deg_m = d - hdeg_top
            bidegree_top = (hdeg_top, deg_m)
            other = dec.components[-1].bidegree[0]
        else:
            top = dec.bottom
            hdeg_top = dec.components[-1].bidegree[0]
            deg_m = hdeg_top
            bidegree_top = (hdeg_top, d - hdeg_top)
            other = d - dec.components[0].bidegree[0]
        tval = None
        if horo:
            tval = top.support_vars() <= toral_set
        rows.append(GgsRow(d, deg_m, other, tval, bidegree_top))
        tops.append(top)
        sum_m += deg_m
    dim_m = D.dim_r if side == "h" else D.dim_h
    verdict = sum_m == dim_m
    if sum_m < dim_m:
        raise AssertionError(
            f"sum of complement degrees {sum_m} < dim m = {dim_m}: violates a theorem"
        )
    jrank = jacobian_rank(tops, trials=trials, seed=seed)
    rank_known = D.algebra.rank
    consistent = None
    if rank_known is not None:
        consistent = verdict == (jrank == rank_known)
    a_count = dim_toral = claim_ok = None
    if horo:
        a_count = sum(1 for r in rows if r.toral_valued)
        dim_toral = len(toral)
        if a_count < dim_toral:
            raise AssertionError(
                f"a = {a_count} < dim toral part {dim_toral}: violates a theorem"
            )
        if a_count == dim_toral:
            want = (lambda r: (1, r.degree - 1)) if side == "h" else (lambda r: (r.degree - 1, 1))
            claim_ok = all(r.toral_valued or r.bidegree_top == want(r) for r in rows)
    return GgsReport(side, rows, sum_m, dim_m, verdict, jrank, rank_known,
                     consistent, a_count, dim_toral, claim_ok)


# -- elimination on the toral subspace -----------------------------------


class EliminationInfeasible(ValueError):
    pass


def _weighted_exponents(weights, total):
    """All exponent tuples m with sum m_s * weights_s == total."""
    if not weights:
        return [()] if total == 0 else []
    out = []
    w0 = weights[0]
    for k in range(total // w0 + 1):
        for rest in _weighted_exponents(weights[1:], total - k * w0):
            out.append((k,) + rest)
    return out


def eliminate_on_subspace(B: HilbertBasis, S: Splitting, keep=None,
                          variant: str = "subspace") -> HilbertBasis:
    """Correct non-kept generators so their restrictions to t0 vanish.

    For each non-kept generator P of degree d, an exact linear solve
    expresses P|_t0 as a weighted-degree-d polynomial in the kept
    restrictions; the result replaces P by P - that combination.  The
    modified family is again a Hilbert basis (triangular change).

    variant 'double_h' / 'double_r' instead applies the Cartan-copy
    shifts F - fbar and F - (-1)^deg fbar; the basis must then live on an
    unadapted double builder algebra.
    """
    if variant in ("double_h", "double_r"):
        return double_shift_basis(B, side=variant[-1])
    if variant != "subspace":
        raise ValueError(f"unknown variant {variant!r}")
    if keep is None:
        raise ValueError("the subspace variant needs the kept generator indices")
    keep = sorted(keep)
    if B.algebra is not S.algebra:
        raise ValueError("basis and splitting live on different algebras")
    kept = [(i, *B.generators[i]) for i in keep]
    restrictions = {i: restrict_to_t0(S, g) for i, g, _ in kept}
    weights = [d for _, _, d in kept]
    new_gens = list(B.generators)
    for idx, (P, d) in enumerate(B.generators):
        if idx in keep:
            continue
        target = restrict_to_t0(S, P)
        exps = _weighted_exponents(weights, d)
        if target.is_zero() and not exps:
            continue
        prods = []
        for m in exps:
            prod = Polynomial.constant(len(S.t0_indices), 1)
            for (i, _, _), k in zip(kept, m):
                if k:
                    prod = prod * restrictions[i] ** k
            prods.append(prod)
        monos = sorted({e for p in prods for e in p.terms} | set(target.terms))
        if not monos and target.is_zero():
            continue
        A = Matrix([[p.terms.get(e, QQ0) for p in prods] for e in monos])
        b = [target.terms.get(e, QQ0) for e in monos]
        lam = solve(A, b) if prods else (None if not target.is_zero() else ())
        if lam is None:
            raise EliminationInfeasible(
                f"generator of degree {d}: its t0-restriction is not a weighted-degree "
                f"combination of the kept restrictions"
            )
        correction = Polynomial.zero(B.algebra.dim)
        for coeff, m in zip(lam, exps):
            if coeff:
                term = Polynomial.constant(B.algebra.dim, coeff)
                for (i, g, _), k in zip(kept, m):
                    if k:
                        term = term * g**k
                correction = correction + term
        new_gens[idx] = (P - correction, d)
    return HilbertBasis(B.algebra, f"modified[{B.kind}]", tuple(new_gens))


def double_shift_basis(B: HilbertBasis, side: str = "h") -> HilbertBasis:
    """The corrected generators F_j - fbar_j (side h) / F_j - (-1)^d fbar_j (side r).

    fbar_j is the Cartan restriction of F_j rewritten in the appended
    xi variables via the fixed identification h_i -> xi_i.  Degree-1
    generators (the xi's themselves) pass through unchanged.
    """
    L = B.algebra
    base = L.base_algebra
    if base is None or not L.kind.startswith("double["):
        raise ValueError("double shifts need a basis over a double builder algebra")
    ell = L.dim - base.dim
    cartan = base.triangular.cartan
    n = L.dim
    images = []
    for i in range(n):
        if i in cartan:
            pos = cartan.index(i)
            images.append(Polynomial.variable(n, base.dim + pos))
        elif i >= base.dim:
            images.append(Polynomial.variable(n, i))
        else:
            images.append(Polynomial.zero(n))
    gens = []
    for F, d in B.generators:
        if d == 1:
            gens.append((F, d))
            continue
        fbar = F.map_vars(images, n)
        if side == "h":
            gens.append((F - fbar, d))
        elif side == "r":
            sign = QQ1 if d % 2 == 0 else -QQ1
            gens.append((F - sign * fbar, d))
        else:
            raise ValueError("side must be 'h' or 'r'")
    return HilbertBasis(L, f"double_shift[{side}]", tuple(gens))


# -- AKS restriction ------------------------------------------------------


@dataclass
class AksSide:
    generators: list       # nonzero restricted invariants, over the summand's variables
    commutes: bool
    first_failure: tuple | None


@dataclass
class AksReport:
    side_h: AksSide
    side_r: AksSide


def _aks_side(L, indices, B, pure_side):
    sub = sub_algebra(L, indices)
    gens = []
    for F, d in B.generators:
        dec_terms = {
            e: c for e, c in F.terms.items()
            if all(k == 0 or i in pure_side for i, k in enumerate(e))
        }
        p = Polynomial(L.dim, dec_terms, _clean=True)
        if p.is_zero():
            continue
        gens.append(p.restrict_vars(list(indices)))
    commutes = True
    failure = None
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if not poisson_bracket(sub, gens[a], gens[b]).is_zero():
                commutes = False
                failure = (a, b)
                break
        if failure:
            break
    return AksSide(gens, commutes, failure)


def aks_restrict(S: Splitting, B: HilbertBasis) -> AksReport:
    """Restrictions of the invariants to each summand's dual are Poisson-commutative.

    Side h keeps the pure-h components (the restrictions to Ann(r)) and
    checks pairwise brackets inside S(h) with h's own Lie-Poisson
    structure; side r is symmetric.
    """
    L = S.algebra
    side_h = _aks_side(L, S.h_indices, B, set(S.h_indices))
    side_r = _aks_side(L, S.r_indices, B, set(S.r_indices))
    return AksReport(side_h, side_r)
