"""Root systems, reflection groups, and restriction of invariants to subtori.

Model spaces: types A_n and D_n use the coordinate (epsilon) model, so
group elements are (signed) permutation matrices; E6 uses simple-root
coordinates, where reflections are small integer matrices and the inner
product is the Cartan matrix.  Group elements are packed as int8 bytes
(entries of reflection-group elements in these models stay tiny), which
keeps the full E6 group at roughly 2 MB plus dictionary overhead.

Degree-d invariants of the big group are computed as the joint fixed
space of the simple reflections acting on degree-d polynomials (the same
subspace the group-averaging operator projects onto, computed without
iterating all elements); the little group W0 is always small, so its
invariant dimensions use literal Reynolds averaging of all monomials.
The two routes agree and the test suite cross-checks them on small groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import factorial

from . import _kernels as K
from .linalg import Matrix, inverse, rank, rank_and_nullspace
from .poly import Polynomial
from .rationals import QQ, QQ0, QQ1


def _encode(mat_rows, n) -> bytes:
    out = bytearray(n * n)
    for i in range(n):
        for j in range(n):
            v = int(mat_rows[i][j])
            out[i * n + j] = v & 0xFF
    return bytes(out)


def _decode(b: bytes, n):
    return [[(b[i * n + j] ^ 0x80) - 0x80 for j in range(n)] for i in range(n)]


@dataclass
class RootSystem:
    type_label: str
    rank: int
    model_dim: int
    simple_roots: tuple       # model-space vectors
    positive_roots: tuple     # model-space vectors
    cartan_matrix: Matrix
    gram: Matrix              # inner product on the model space
    reflections: tuple        # generator matrices, encoded int8 bytes

    def known_weyl_order(self) -> int:
        if self.type_label == "A":
            return factorial(self.rank + 1)
        if self.type_label == "D":
            return 2 ** (self.rank - 1) * factorial(self.rank)
        return 51840  # E6

    def default_dmax(self) -> int:
        if self.type_label == "A":
            return self.rank + 1
        if self.type_label == "D":
            return max(2 * self.rank - 2, self.rank)
        return 12  # E6 fundamental degrees 2,5,6,8,9,12


def _reflection_matrix_model(alpha, gram: Matrix, n):
    """s_alpha(v) = v - 2 (v,alpha)/(alpha,alpha) alpha, as columns over the model."""
    ga = gram.matvec(alpha)
    norm = sum((QQ(a) * g for a, g in zip(alpha, ga)), QQ0)
    cols = []
    for j in range(n):
        v = [QQ1 if i == j else QQ0 for i in range(n)]
        coeff = 2 * ga[j] / norm
        cols.append([v[i] - coeff * QQ(alpha[i]) for i in range(n)])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _positive_roots_alpha(cartan: Matrix, rank: int):
    """All positive roots in simple-root coordinates, by reflection closure."""
    simples = [tuple(1 if i == j else 0 for i in range(rank)) for j in range(rank)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rank):
                pairing = sum(v[j] * int(cartan[i, j]) for j in range(rank))
                w = tuple(v[j] - (pairing if j == i else 0) for j in range(rank))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(v for v in seen if all(c >= 0 for c in v))


_E6_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (3, 6))  # chain 1-2-3-4-5, node 6 on 3


def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    """Supported types: ('A', n), ('D', n >= 3), ('E6',)."""
    if type_label == "E6":
        rank = 6
        c = [[0] * 6 for _ in range(6)]
        for i in range(6):
            c[i][i] = 2
        for i, j in _E6_EDGES:
            c[i - 1][j - 1] = c[j - 1][i - 1] = -1
        cartan = Matrix(c)
        gram = cartan  # unit simple roots, all of squared length 2
        n = 6
        simples = tuple(tuple(QQ1 if i == j else QQ0 for i in range(n)) for j in range(n))
    elif type_label == "A":
        if rank is None or rank < 1:
            raise ValueError("A_n needs n >= 1")
        n = rank + 1
        simples = tuple(
            tuple(QQ1 if i == j else (-QQ1 if i == j + 1 else QQ0) for i in range(n))
            for j in range(rank)
        )
        gram = Matrix.identity(n)
        cartan = None
    elif type_label == "D":
        if rank is None or rank < 3:
            raise ValueError("D_n needs n >= 3")
        n = rank
        simples = []
        for j in range(rank - 1):
            simples.append(tuple(QQ1 if i == j else (-QQ1 if i == j + 1 else QQ0) for i in range(n)))
        simples.append(tuple(QQ1 if i >= n - 2 else QQ0 for i in range(n)))
        simples = tuple(simples)
        gram = Matrix.identity(n)
        cartan = None
    else:
        raise ValueError(f"unsupported root system type {type_label!r}")

    if cartan is None:
        rows = []
        for i in range(rank):
            gi = gram.matvec(simples[i])
            rows.append([
                2 * sum((QQ(simples[j][t]) * gi[t] for t in range(n)), QQ0)
                / sum((QQ(simples[i][t]) * gi[t] for t in range(n)), QQ0)
                for j in range(rank)
            ])
        cartan = Matrix([[rows[i][j] for j in range(rank)] for i in range(rank)])

    pos_alpha = _positive_roots_alpha(cartan, rank)
    expected = {"A": rank * (rank + 1) // 2, "D": rank * (rank - 1), "E6": 36}[type_label]
    if len(pos_alpha) != expected:
        raise AssertionError(f"positive root count {len(pos_alpha)} != {expected}")
    positive = tuple(
        tuple(sum((QQ(v[j]) * simples[j][i] for j in range(rank)), QQ0) for i in range(n))
        for v in pos_alpha
    )
    reflections = tuple(
        _encode(_reflection_matrix_model(a, gram, n), n) for a in simples
    )
    return RootSystem(type_label, rank, n, simples, positive, cartan, gram, reflections)


class WeylGroup:
    def __init__(self, root_system: RootSystem, elements, generators):
        self.root_system = root_system
        self.n = root_system.model_dim
        self.elements = elements          # list of bytes, identity first
        self.generators = generators
        self._index = {e: i for i, e in enumerate(elements)}

    @property
    def order(self):
        return len(self.elements)

    def matrix(self, element: bytes) -> Matrix:
        return Matrix(_decode(element, self.n))

    def __contains__(self, element: bytes):
        return element in self._index


def enumerate_weyl(rs: RootSystem, cap: int = 60000) -> WeylGroup:
    """Breadth-first closure of the simple reflections; errors past ``cap``."""
    n = rs.model_dim
    identity = _encode([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)
    seen = {identity}
    order = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for el in frontier:
            for g in rs.reflections:
                w = K.matmul_i8(el, g, n)
                if w not in seen:
                    if len(seen) >= cap:
                        raise ValueError(f"Weyl enumeration exceeded cap {cap}")
                    seen.add(w)
                    order.append(w)
                    nxt.append(w)
        frontier = nxt
    if len(order) != rs.known_weyl_order():
        raise AssertionError(
            f"enumerated order {len(order)} != known order {rs.known_weyl_order()}"
        )
    return WeylGroup(rs, order, rs.reflections)


@dataclass
class SatakeDiagram:
    arrows: tuple  # pairs of 1-based node indices

    def __post_init__(self):
        seen = set()
        for i, j in self.arrows:
            if i == j:
                raise ValueError("an arrow must join two distinct nodes")
            for x in (i, j):
                if x in seen:
                    raise ValueError("arrows must be disjoint")
                seen.add(x)
        object.__setattr__(self, "arrows", tuple((i, j) for i, j in self.arrows))

    def plain_nodes(self, rank):
        used = {x for arrow in self.arrows for x in arrow}
        return tuple(i for i in range(1, rank + 1) if i not in used)


def satake_subspaces(rs: RootSystem, diagram: SatakeDiagram):
    """(t0, t1): t0 = span of the arrow differences, t1 its orthocomplement in t."""
    for i, j in diagram.arrows:
        if not (1 <= i <= rs.rank and 1 <= j <= rs.rank):
            raise ValueError(f"arrow ({i},{j}) outside the diagram")
    t0 = [
        tuple(rs.simple_roots[i - 1][t] - rs.simple_roots[j - 1][t] for t in range(rs.model_dim))
        for i, j in diagram.arrows
    ]
    if t0 and rank(Matrix.from_columns(t0)) != len(t0):
        raise ValueError("arrow differences are dependent")
    # t1 = vectors in the span of the simple roots orthogonal to every t0 vector
    rows = []
    for v in t0:
        gv = rs.gram.matvec(v)
        rows.append([
            sum((QQ(rs.simple_roots[j][t]) * gv[t] for t in range(rs.model_dim)), QQ0)
            for j in range(rs.rank)
        ])
    if rows:
        _, null = rank_and_nullspace(Matrix(rows))
    else:
        null = [tuple(QQ1 if i == j else QQ0 for i in range(rs.rank)) for j in range(rs.rank)]
    t1 = [
        tuple(
            sum((QQ(a[j]) * rs.simple_roots[j][t] for j in range(rs.rank)), QQ0)
            for t in range(rs.model_dim)
        )
        for a in null
    ]
    return t0, t1


@dataclass
class W0Report:
    order_w: int
    order_n: int
    order_z: int
    order_w0: int
    matrices: list            # exact action matrices on the t0 basis
    element_orders: dict      # multiplicative order -> count

    @property
    def orders(self):
        return (self.order_w, self.order_n, self.order_z, self.order_w0)


def w0_compute(W: WeylGroup, t0_basis) -> W0Report:
    """N_W(t0), Z_W(t0), and the induced action W0 = N/Z on t0."""
    rs = W.root_system
    n = rs.model_dim
    a = len(t0_basis)
    T = Matrix.from_columns(t0_basis)
    proj = inverse(T.transpose() * rs.gram * T) * (T.transpose() * rs.gram)
    n_count = 0
    z_count = 0
    w0: dict[tuple, Matrix] = {}
    ident = Matrix.identity(a)
    for el in W.elements:
        m = _decode(el, n)
        cols = []
        member = True
        for u in t0_basis:
            img = [sum(m[i][j] * int(u[j]) for j in range(n)) for i in range(n)]
            y = proj.matvec(img)
            back = T.matvec(y)
            if tuple(back) != tuple(QQ(x) for x in img):
                member = False
                break
            cols.append(y)
        if not member:
            continue
        n_count += 1
        restr = Matrix.from_columns(cols)
        if restr == ident:
            z_count += 1
        key = tuple(tuple(row) for row in restr.rows)
        w0.setdefault(key, restr)
    mats = list(w0.values())
    orders: dict[int, int] = {}
    for mat in mats:
        k = 1
        acc = mat
        while acc != ident:
            acc = acc * mat
            k += 1
            if k > 1000:
                raise AssertionError("runaway element order")
        orders[k] = orders.get(k, 0) + 1
    return W0Report(W.order, n_count, z_count, len(mats), mats, orders)


# -- invariants of reflection groups ------------------------------------


def act_on_poly(m: Matrix, F: Polynomial) -> Polynomial:
    """Substitution action x_i -> sum_j m[i][j] x_j."""
    n = F.nvars
    images = [Polynomial.linear_form(n, m.rows[i]) for i in range(n)]
    return F.map_vars(images, n)


def reynolds_average(matrices, F: Polynomial) -> Polynomial:
    """Average of F over the given matrix set (the full group for exactness)."""
    acc = Polynomial.zero(F.nvars)
    for m in matrices:
        acc = acc + act_on_poly(m, F)
    return acc.scale(QQ(1, len(matrices)))


def _monomials(nvars, degree):
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = bytearray(nvars)
        for i in combo:
            e[i] += 1
        out.append(bytes(e))
    return out


def _monomial_images(m_rows, nvars, degree):
    """Images of all monomials of the given degree under x_i -> row_i . x."""
    lin = [Polynomial.linear_form(nvars, m_rows[i]) for i in range(nvars)]
    images: dict[bytes, Polynomial] = {bytes(nvars): Polynomial.constant(nvars, 1)}
    for d in range(1, degree + 1):
        nxt: dict[bytes, Polynomial] = {}
        for e in _monomials(nvars, d):
            i = next(t for t, k in enumerate(e) if k)
            prev = bytearray(e)
            prev[i] -= 1
            nxt[e] = images[bytes(prev)] * lin[i]
        images = nxt
    return images


def invariant_basis(generator_matrices, degree, nvars):
    """Basis of degree-``degree`` polynomials fixed by all the generators.

    This is exactly the image of the full-group averaging operator in that
    degree, obtained as the joint kernel of (action - identity) without
    iterating over the whole group.
    """
    monos = _monomials(nvars, degree)
    pos = {e: i for i, e in enumerate(monos)}
    rows = []
    for m in generator_matrices:
        # rows of (action - identity) on the degree-d coefficient space
        mat = [[QQ0] * len(monos) for _ in range(len(monos))]
        images = _monomial_images(m.rows, nvars, degree)
        for col, e in enumerate(monos):
            for out_e, c in images[e].terms.items():
                mat[pos[out_e]][col] = c
            mat[pos[e]][col] = mat[pos[e]][col] - QQ1
        rows.extend(mat)
    _, null = rank_and_nullspace(Matrix(rows))
    basis = []
    for v in null:
        terms = {e: c for e, c in zip(monos, v) if c}
        basis.append(Polynomial(nvars, terms, _clean=True))
    return basis


def reynolds_invariant_basis(matrices, degree, nvars):
    """Span of the averages of all degree-``degree`` monomials (small groups)."""
    monos = _monomials(nvars, degree)
    averaged = [reynolds_average(matrices, Polynomial(nvars, {e: QQ1}, _clean=True)) for e in monos]
    mat = Matrix([[p.terms.get(e, QQ0) for e in monos] for p in averaged])
    target = rank(mat)
    basis = []
    picked: list = []
    for p in averaged:
        if p.is_zero():
            continue
        trial = picked + [[p.terms.get(e, QQ0) for e in monos]]
        if rank(Matrix(trial)) > len(picked):
            picked = trial
            basis.append(p)
        if len(basis) == target:
            break
    return basis


@dataclass
class RestrictionReport:
    per_degree: list          # (degree, restricted image dim, W0-invariant dim)
    first_failure_degree: int | None
    verdict_up_to_dmax: bool
    dmax: int
    group_orders: tuple       # (|W|, |N|, |Z|, |W0|)
    stopped_early: bool


def restriction_check(W: WeylGroup, t0_basis, w0: W0Report | None = None,
                      dmax: int | None = None, stop_at_failure: bool = True) -> RestrictionReport:
    """Degree-by-degree surjectivity of restriction onto the W0-invariants of t0.

    Soundness is one-sided: a failing degree certifies that restriction is
    not onto (hence no good generating system exists for the matching
    horospherical subalgebra); success only certifies degrees <= dmax,
    which is recorded in the report.
    """
    rs = W.root_system
    if w0 is None:
        w0 = w0_compute(W, t0_basis)
    if dmax is None:
        dmax = rs.default_dmax()
    n = rs.model_dim
    a = len(t0_basis)
    gen_mats = [W.matrix(g) for g in W.generators]
    # x_i restricted to the subspace: x_i(sum_s c_s u_s) = sum_s u_s[i] c_s
    restr_images = [
        Polynomial.linear_form(a, [QQ(t0_basis[s][i]) for s in range(a)]) for i in range(n)
    ]
    per_degree = []
    first_failure = None
    for d in range(1, dmax + 1):
        inv = invariant_basis(gen_mats, d, n)
        restricted = [p.map_vars(restr_images, a) for p in inv]
        monos = _monomials(a, d)
        mat = Matrix([[p.terms.get(e, QQ0) for e in monos] for p in restricted]) if restricted \
            else Matrix.zeros(1, len(monos))
        image_dim = rank(mat)
        w0_dim = len(reynolds_invariant_basis(w0.matrices, d, a))
        if image_dim > w0_dim:
            raise AssertionError("restricted invariants escape the W0-invariants; bug")
        per_degree.append((d, image_dim, w0_dim))
        if image_dim < w0_dim and first_failure is None:
            first_failure = d
            if stop_at_failure:
                break
    return RestrictionReport(
        per_degree,
        first_failure,
        first_failure is None,
        dmax,
        w0.orders,
        stopped_early=first_failure is not None and per_degree[-1][0] < dmax,
    )
