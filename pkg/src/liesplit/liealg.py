"""Lie algebras from exact structure constants, and the standard builders.

Structure constants are stored sparsely for basis pairs i < j; the
bracket extends by antisymmetry.  Every constructor runs an exhaustive
Jacobi check over all basis triples: there is no unchecked way to make
an algebra.

Builders produce gl(n), sl(n), so(2n) in the antidiagonal realization
(matrices skew with respect to the antidiagonal, so the Cartan is
diagonal and the nilradical strictly upper triangular), direct sums,
and the reductive extension q + t with an abelian copy of the Cartan
appended.  Reductive builders carry triangular data (root labels and
the restriction of the trace form to the Cartan) plus a matrix
realization and the full invariant-form Gram matrix used to identify
the algebra with its dual.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .linalg import Matrix, inverse, rank, rank_and_nullspace
from .rationals import QQ, QQ0


class JacobiError(ValueError):
    def __init__(self, triple, residual):
        self.triple = triple
        self.residual = residual
        super().__init__(f"Jacobi identity fails on basis triple {triple}")


@dataclass
class JacobiReport:
    passed: bool
    first_violation: tuple | None


@dataclass
class TriangularData:
    plus: tuple
    cartan: tuple
    minus: tuple
    root_labels: dict          # root-vector index -> tuple of values on the Cartan basis
    cartan_form: Matrix        # Gram matrix of the invariant form restricted to the Cartan


class LieAlgebra:
    def __init__(self, names, constants, rank=None, triangular=None,
                 realization=None, matrix_size=None, gram=None, kind="custom",
                 base_algebra=None, base_change=None, check=True):
        self.dim = len(names)
        self.names = tuple(names)
        self.constants = {
            pair: tuple((k, QQ(c)) for k, c in entries if QQ(c))
            for pair, entries in constants.items()
        }
        self.constants = {p: e for p, e in self.constants.items() if e}
        for (i, j) in self.constants:
            if not 0 <= i < j < self.dim:
                raise ValueError(f"constants must be indexed by pairs i<j, got {(i, j)}")
        self.rank = rank
        self.triangular = triangular
        self.realization = realization
        self.matrix_size = matrix_size
        self.gram = gram
        self.kind = kind
        self.base_algebra = base_algebra
        self.base_change = base_change
        if check:
            report = jacobi_report(self.dim, self.constants)
            if not report.passed:
                raise JacobiError(report.first_violation, None)

    # -- bracket ------------------------------------------------------
    def bracket_pair(self, i, j):
        """[x_i, x_j] as a sparse dict k -> coefficient."""
        if i == j:
            return {}
        if i < j:
            return dict(self.constants.get((i, j), ()))
        return {k: -c for k, c in self.constants.get((j, i), ())}

    def bracket_vec(self, u, v):
        """Bracket of two coordinate vectors, as a sparse dict."""
        out = {}
        ui = [(i, QQ(c)) for i, c in enumerate(u) if QQ(c)]
        vj = [(j, QQ(c)) for j, c in enumerate(v) if QQ(c)]
        for i, a in ui:
            for j, b in vj:
                for k, c in self.bracket_pair(i, j).items():
                    val = out.get(k, QQ0) + a * b * c
                    if val:
                        out[k] = val
                    elif k in out:
                        del out[k]
        return out

    def index_of(self, name):
        return self.names.index(name)

    def center(self):
        """Basis of the centre, as coordinate vectors."""
        rows = []
        for j in range(self.dim):
            for k in range(self.dim):
                rows.append([QQ(self.bracket_pair(i, j).get(k, QQ0)) for i in range(self.dim)])
        _, basis = rank_and_nullspace(Matrix(rows))
        return basis

    def b_value(self, index):
        """(dim + index)/2; an integer whenever the index has the right parity."""
        return QQ(self.dim + index, 2)

    def __repr__(self):
        return f"LieAlgebra({self.kind}, dim={self.dim})"


def jacobi_report(dim, constants) -> JacobiReport:
    """Exhaustive Jacobi check over all basis triples i < j < k."""

    def pair(i, j):
        if i < j:
            return dict(constants.get((i, j), ()))
        return {k: -c for k, c in constants.get((j, i), ())}

    for i in range(dim):
        for j in range(i + 1, dim):
            cij = pair(i, j)
            for k in range(j + 1, dim):
                acc = {}
                # [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j]
                for idx, inner in ((k, cij), (i, pair(j, k)), (j, pair(k, i))):
                    for m, c in inner.items():
                        for t, d in pair(m, idx).items():
                            val = acc.get(t, QQ0) + c * d
                            if val:
                                acc[t] = val
                            elif t in acc:
                                del acc[t]
                if acc:
                    return JacobiReport(False, (i, j, k))
    return JacobiReport(True, None)


def check_jacobi(arg) -> JacobiReport:
    """Re-run the exhaustive Jacobi check on an algebra (or raw (dim, constants))."""
    if isinstance(arg, LieAlgebra):
        return jacobi_report(arg.dim, arg.constants)
    dim, constants = arg
    norm = {p: tuple((k, QQ(c)) for k, c in entries) for p, entries in constants.items()}
    return jacobi_report(dim, norm)


# -- matrix-realization helpers ---------------------------------------


def _smul(a: dict, b: dict) -> dict:
    """Sparse product of matrices given as {(r, c): coeff}."""
    out = {}
    bysrc: dict[int, list] = {}
    for (r, c), v in b.items():
        bysrc.setdefault(r, []).append((c, v))
    for (r, c), v in a.items():
        for c2, v2 in bysrc.get(c, ()):
            key = (r, c2)
            val = out.get(key, QQ0) + v * v2
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out


def _scomm(a: dict, b: dict) -> dict:
    ab = _smul(a, b)
    ba = _smul(b, a)
    for key, v in ba.items():
        val = ab.get(key, QQ0) - v
        if val:
            ab[key] = val
        elif key in ab:
            del ab[key]
    return ab


def _strace_product(a: dict, b: dict):
    total = QQ0
    for (r, c), v in a.items():
        w = b.get((c, r))
        if w:
            total = total + v * w
    return total


def _constants_from_realization(mats, decompose):
    constants = {}
    n = len(mats)
    for i in range(n):
        for j in range(i + 1, n):
            comm = _scomm(mats[i], mats[j])
            coeffs = decompose(comm)
            entries = tuple((k, c) for k, c in coeffs if c)
            if entries:
                constants[(i, j)] = entries
    return constants


def _gram_from_realization(mats, half=False):
    n = len(mats)
    g = [[QQ0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            v = _strace_product(mats[a], mats[b])
            if half:
                v = v / 2
            g[a][b] = v
            g[b][a] = v
    return Matrix(g)


def _extract_root_labels(constants, cartan, roots, dim):
    """Read alpha(t_c) off the structure constants; Cartan action must be diagonal."""

    def pair(i, j):
        if i < j:
            return dict(constants.get((i, j), ()))
        return {k: -c for k, c in constants.get((j, i), ())}

    labels = {}
    for r in roots:
        vals = []
        for c in cartan:
            br = pair(c, r)
            extra = {k: v for k, v in br.items() if k != r}
            if extra:
                raise ValueError(f"Cartan element {c} does not act diagonally on root vector {r}")
            vals.append(br.get(r, QQ0))
        labels[r] = tuple(vals)
    return labels


def _triangular(constants, plus, cartan, minus, gram, dim):
    roots = tuple(plus) + tuple(minus)
    labels = _extract_root_labels(constants, tuple(cartan), roots, dim)
    cf = Matrix([[gram[a, b] for b in cartan] for a in cartan])
    return TriangularData(tuple(plus), tuple(cartan), tuple(minus), labels, cf)


# -- builders ----------------------------------------------------------


def _ename(i, j, n):
    if n <= 9:
        return f"E{i + 1}{j + 1}"
    return f"E{i + 1}_{j + 1}"


def build_gl(n: int) -> LieAlgebra:
    if n < 1:
        raise ValueError("gl(n) needs n >= 1")
    order = (
        [(i, j) for i in range(n) for j in range(n) if i < j]
        + [(i, i) for i in range(n)]
        + [(i, j) for i in range(n) for j in range(n) if i > j]
    )
    pos = {p: a for a, p in enumerate(order)}
    mats = [{p: QQ(1)} for p in order]
    names = [_ename(i, j, n) for (i, j) in order]

    def decompose(m):
        return [(pos[p], v) for p, v in m.items()]

    constants = _constants_from_realization(mats, decompose)
    gram = _gram_from_realization(mats)
    nup = n * (n - 1) // 2
    plus = tuple(range(nup))
    cartan = tuple(range(nup, nup + n))
    minus = tuple(range(nup + n, len(order)))
    tri = _triangular(constants, plus, cartan, minus, gram, len(order))
    return LieAlgebra(names, constants, rank=n, triangular=tri, realization=mats,
                      matrix_size=n, gram=gram, kind=f"gl({n})")


def build_sl(n: int) -> LieAlgebra:
    if n < 2:
        raise ValueError("sl(n) needs n >= 2")
    uppers = [(i, j) for i in range(n) for j in range(n) if i < j]
    lowers = [(i, j) for i in range(n) for j in range(n) if i > j]
    mats = [{p: QQ(1)} for p in uppers]
    names = [_ename(i, j, n) for (i, j) in uppers]
    for k in range(n - 1):
        mats.append({(k, k): QQ(1), (k + 1, k + 1): QQ(-1)})
        names.append(f"h{k + 1}")
    mats.extend({p: QQ(1)} for p in lowers)
    names.extend(_ename(i, j, n) for (i, j) in lowers)
    nup = len(uppers)
    off_pos = {p: a for a, p in enumerate(uppers)}
    off_pos.update({p: nup + n - 1 + a for a, p in enumerate(lowers)})

    def decompose(m):
        out = [(off_pos[(r, c)], v) for (r, c), v in m.items() if r != c]
        # diagonal decomposes over h_k via partial sums
        run = QQ0
        for k in range(n - 1):
            run = run + m.get((k, k), QQ0)
            if run:
                out.append((nup + k, run))
        return out

    constants = _constants_from_realization(mats, decompose)
    gram = _gram_from_realization(mats)
    plus = tuple(range(nup))
    cartan = tuple(range(nup, nup + n - 1))
    minus = tuple(range(nup + n - 1, len(mats)))
    tri = _triangular(constants, plus, cartan, minus, gram, len(mats))
    return LieAlgebra(names, constants, rank=n - 1, triangular=tri, realization=mats,
                      matrix_size=n, gram=gram, kind=f"sl({n})")


def build_so_even(n: int) -> LieAlgebra:
    """so(2n), realized as matrices skew-symmetric about the antidiagonal."""
    if n < 2:
        raise ValueError("so(2n) needs n >= 2")
    size = 2 * n
    # orbit representatives (i, j) with i + j < size - 1; mirror of (i, j) is
    # (size-1-j, size-1-i) and the antidiagonal itself is forced to zero
    uppers = [(i, j) for i in range(size) for j in range(size) if i < j and i + j < size - 1]
    diag = [(i, i) for i in range(n)]
    lowers = [(i, j) for i in range(size) for j in range(size) if i > j and i + j < size - 1]
    order = uppers + diag + lowers
    pos = {p: a for a, p in enumerate(order)}

    def mat(p):
        i, j = p
        return {(i, j): QQ(1), (size - 1 - j, size - 1 - i): QQ(-1)}

    mats = [mat(p) for p in order]
    names = [f"M{i + 1}{j + 1}" if size <= 9 else f"M{i + 1}_{j + 1}" for (i, j) in order]

    def decompose(m):
        return [(pos[p], v) for p, v in m.items() if p in pos]

    constants = _constants_from_realization(mats, decompose)
    gram = _gram_from_realization(mats, half=True)
    plus = tuple(range(len(uppers)))
    cartan = tuple(range(len(uppers), len(uppers) + n))
    minus = tuple(range(len(uppers) + n, len(order)))
    tri = _triangular(constants, plus, cartan, minus, gram, len(order))
    return LieAlgebra(names, constants, rank=n, triangular=tri, realization=mats,
                      matrix_size=size, gram=gram, kind=f"so({size})")


def build_double(base: LieAlgebra) -> LieAlgebra:
    """The reductive extension: append an abelian copy of the Cartan.

    The appended generators xi_1..xi_l are central; the identification
    with the Cartan basis h_i -> xi_i is fixed once and used by the
    invariant constructions.
    """
    if base.triangular is None or base.rank is None:
        raise ValueError("the double needs a reductive builder algebra")
    ell = len(base.triangular.cartan)
    names = list(base.names) + [f"xi{k + 1}" for k in range(ell)]
    constants = dict(base.constants)  # xi's bracket to zero with everything
    dim = base.dim + ell
    tcf = base.triangular.cartan_form
    gram = None
    if base.gram is not None:
        rows = []
        for i in range(dim):
            row = []
            for j in range(dim):
                if i < base.dim and j < base.dim:
                    row.append(base.gram[i, j])
                elif i >= base.dim and j >= base.dim:
                    row.append(tcf[i - base.dim, j - base.dim])
                else:
                    row.append(QQ0)
            rows.append(row)
        gram = Matrix(rows)
    cartan = tuple(base.triangular.cartan) + tuple(range(base.dim, dim))
    labels = {r: tuple(v) + (QQ0,) * ell for r, v in base.triangular.root_labels.items()}
    cf = Matrix([[gram[a, b] for b in cartan] for a in cartan])
    tri = TriangularData(base.triangular.plus, cartan, base.triangular.minus, labels, cf)
    realization = None
    if base.realization is not None:
        realization = list(base.realization) + [None] * ell
    return LieAlgebra(names, constants, rank=base.rank + ell, triangular=tri,
                      realization=realization, matrix_size=base.matrix_size,
                      gram=gram, kind=f"double[{base.kind}]", base_algebra=base)


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    names = list(a.names)
    for nm in b.names:
        names.append(nm if nm not in a.names else nm + "'")
    constants = dict(a.constants)
    for (i, j), entries in b.constants.items():
        constants[(i + a.dim, j + a.dim)] = tuple((k + a.dim, c) for k, c in entries)
    rank = None
    if a.rank is not None and b.rank is not None:
        rank = a.rank + b.rank
    return LieAlgebra(names, constants, rank=rank, kind=f"sum[{a.kind},{b.kind}]")


def custom_algebra(names, raw_constants, **kw) -> LieAlgebra:
    """Algebra from raw constants {(i, j): [(k, coeff), ...]} with i < j."""
    constants = {
        tuple(pair): tuple((int(k), QQ(c)) for k, c in entries)
        for pair, entries in raw_constants.items()
    }
    return LieAlgebra(names, constants, kind=kw.pop("kind", "custom"), **kw)


def build_algebra(kind: str, **params) -> LieAlgebra:
    """Dispatcher: kind in {gl, sl, so_even, double, direct_sum, custom}."""
    if kind == "gl":
        return build_gl(params["n"])
    if kind == "sl":
        return build_sl(params["n"])
    if kind in ("so_even", "so"):
        n = params["n"]
        if kind == "so":
            if n % 2:
                raise ValueError("only so(2n) is supported")
            n //= 2
        return build_so_even(n)
    if kind == "double":
        base = params.get("base")
        if base is None:
            base = build_algebra(params["base_kind"], n=params["n"])
        return build_double(base)
    if kind == "direct_sum":
        return direct_sum(params["a"], params["b"])
    if kind == "custom":
        return custom_algebra(params["names"], params["constants"])
    raise ValueError(f"unknown builder kind {kind!r}")


def sub_algebra(L: LieAlgebra, indices: Sequence[int], names=None) -> LieAlgebra:
    """The subalgebra spanned by the given basis indices (must be closed)."""
    indices = list(indices)
    pos = {v: i for i, v in enumerate(indices)}
    idx_set = set(indices)
    constants = {}
    for a, i in enumerate(indices):
        for b in range(a + 1, len(indices)):
            j = indices[b]
            br = L.bracket_pair(i, j)
            bad = [k for k in br if k not in idx_set]
            if bad:
                raise ValueError(f"indices {indices} do not span a subalgebra: "
                                 f"[{L.names[i]}, {L.names[j]}] leaves the span")
            entries = tuple((pos[k], c) for k, c in br.items())
            if entries:
                constants[(a, b)] = entries
    if names is None:
        names = [L.names[i] for i in indices]
    return LieAlgebra(names, constants, kind=f"sub[{L.kind}]")


def change_basis(L: LieAlgebra, new_vectors, new_names, kind=None) -> LieAlgebra:
    """Rewrite the algebra in the basis given by ``new_vectors`` (old coordinates)."""
    if len(new_vectors) != L.dim:
        raise ValueError("need a full new basis")
    P = Matrix.from_columns(new_vectors)
    if rank(P) != L.dim:
        raise ValueError("new basis vectors are dependent")
    Pinv = inverse(P)
    constants = {}
    for a in range(L.dim):
        for b in range(a + 1, L.dim):
            w = L.bracket_vec(new_vectors[a], new_vectors[b])
            vec = [w.get(k, QQ0) for k in range(L.dim)]
            coeffs = Pinv.matvec(vec)
            entries = tuple((k, c) for k, c in enumerate(coeffs) if c)
            if entries:
                constants[(a, b)] = entries
    gram = None
    if L.gram is not None:
        gram = P.transpose() * L.gram * P
    realization = None
    if L.realization is not None and all(m is not None for m in L.realization):
        realization = []
        for vec in new_vectors:
            m: dict = {}
            for i, c in enumerate(vec):
                c = QQ(c)
                if c:
                    for p, v in L.realization[i].items():
                        val = m.get(p, QQ0) + c * v
                        if val:
                            m[p] = val
                        elif p in m:
                            del m[p]
            realization.append(m)
    return LieAlgebra(new_names, constants, rank=L.rank, realization=realization,
                      matrix_size=L.matrix_size, gram=gram,
                      kind=kind or f"adapted[{L.kind}]",
                      base_algebra=L, base_change=P)


# -- structure-constant file format ------------------------------------


def algebra_to_json(L: LieAlgebra) -> str:
    brackets = []
    for (i, j) in sorted(L.constants):
        entries = [[k, int(c.numerator), int(c.denominator)] for k, c in L.constants[(i, j)]]
        brackets.append([i, j, entries])
    return json.dumps({"dim": L.dim, "basis_names": list(L.names), "brackets": brackets},
                      indent=1)


def algebra_from_json(text: str) -> LieAlgebra:
    doc = json.loads(text)
    names = doc["basis_names"]
    if len(names) != doc["dim"]:
        raise ValueError("dim does not match the number of basis names")
    constants = {}
    for i, j, entries in doc["brackets"]:
        if not i < j:
            raise ValueError("brackets must be listed for pairs i < j")
        constants[(i, j)] = tuple((int(k), QQ(num, den)) for k, num, den in entries)
    return LieAlgebra(names, constants, kind="custom")
