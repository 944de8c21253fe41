"""Splittings q = h + r, Inonu-Wigner contractions, and the bracket pencil.

A ``Decomposition`` fixes a subalgebra h spanned by basis vectors plus
the complementary coordinate subspace r (not necessarily a subalgebra);
that is enough for the contraction h x r^ab and for bi-degree work.  A
``Splitting`` additionally requires r to be closed, which unlocks the
second contraction and the two-parameter family of compatible brackets

    [.,.]_(a,b) = a*[.,.]_keep_h + b*[.,.]_keep_r,

with (1,1) giving back the original bracket exactly.

``horospherical_splitting`` rebuilds a reductive algebra in a basis
adapted to h+ = u+ + t1 and h- = u- + t0 with t0 the orthogonal
complement of t1 in the Cartan; the new Cartan coordinates are named
t1_i / t0_i and the splitting records both blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .liealg import LieAlgebra, Matrix, TriangularData, change_basis
from .linalg import rank, rank_and_nullspace
from .rationals import QQ, QQ0, QQ1, qq_str


@dataclass(frozen=True)
class BracketParameter:
    """Projective pencil parameter: (1,0) is t=0, (0,1) is t=infinity, (1,t) generic."""

    a: object
    b: object

    def __post_init__(self):
        a, b = QQ(self.a), QQ(self.b)
        if not a and not b:
            raise ValueError("(0, 0) is not a pencil parameter")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def zero_end(cls):
        return cls(1, 0)

    @classmethod
    def infinity_end(cls):
        return cls(0, 1)

    @classmethod
    def generic(cls, t):
        return cls(1, t)

    def label(self) -> str:
        return f"({qq_str(self.a)},{qq_str(self.b)})"


class Decomposition:
    """q = h + m with h a subalgebra and m the complementary coordinate span."""

    def __init__(self, algebra: LieAlgebra, h_indices, r_indices=None, _check=True):
        self.algebra = algebra
        self.h_indices = tuple(h_indices)
        if r_indices is None:
            hs = set(self.h_indices)
            r_indices = [i for i in range(algebra.dim) if i not in hs]
        self.r_indices = tuple(r_indices)
        self.h_set = frozenset(self.h_indices)
        self.r_set = frozenset(self.r_indices)
        if self.h_set | self.r_set != set(range(algebra.dim)) or self.h_set & self.r_set:
            raise ValueError("h and r must partition the basis")
        # fixed adapted order: h block first, then r block
        self.order = self.h_indices + self.r_indices
        if _check:
            self._check_closed(self.h_indices, "h")
        self.t1_indices: tuple = ()
        self.t0_indices: tuple = ()
        self.is_horospherical = False

    def _check_closed(self, indices, label):
        idx = set(indices)
        for a, i in enumerate(indices):
            for j in indices[a + 1 :]:
                esc = [k for k in self.algebra.bracket_pair(i, j) if k not in idx]
                if esc:
                    ni, nj = self.algebra.names[i], self.algebra.names[j]
                    raise ValueError(
                        f"{label} is not a subalgebra: [{ni}, {nj}] has a component "
                        f"on {self.algebra.names[esc[0]]}"
                    )

    @property
    def dim_h(self):
        return len(self.h_indices)

    @property
    def dim_r(self):
        return len(self.r_indices)

    def h_degree_of_exponent(self, e: bytes) -> int:
        return sum(e[i] for i in self.h_indices)

    def __repr__(self):
        return f"{type(self).__name__}(h={self.dim_h}, r={self.dim_r}, dim={self.algebra.dim})"


class Splitting(Decomposition):
    """Both summands are subalgebras."""

    def __init__(self, algebra, h_indices, r_indices=None, _check=True):
        super().__init__(algebra, h_indices, r_indices, _check=_check)
        if _check:
            self._check_closed(self.r_indices, "r")


def make_decomposition(L: LieAlgebra, h_part) -> Decomposition:
    return Decomposition(L, tuple(h_part))


def make_splitting(L: LieAlgebra, h_part) -> Splitting:
    """Splitting with h spanned by the given basis indices and r the rest."""
    return Splitting(L, tuple(h_part))


def _contract_constants(D: Decomposition, keep: frozenset, other: frozenset):
    out = {}
    for (i, j), entries in D.algebra.constants.items():
        if i in keep and j in keep:
            kept = entries
        elif i in other and j in other:
            kept = ()
        else:
            kept = tuple((k, c) for k, c in entries if k in other)
        if kept:
            out[(i, j)] = kept
    return out


def contract(D: Decomposition, side: str = "keep_h") -> LieAlgebra:
    """Inonu-Wigner contraction; same underlying basis and order as D.algebra."""
    if side == "keep_h":
        constants = _contract_constants(D, D.h_set, D.r_set)
    elif side == "keep_r":
        if not isinstance(D, Splitting):
            raise ValueError("keep_r needs r to be a subalgebra (a full splitting)")
        constants = _contract_constants(D, D.r_set, D.h_set)
    else:
        raise ValueError("side must be keep_h or keep_r")
    return LieAlgebra(D.algebra.names, constants, kind=f"contract[{side}]({D.algebra.kind})")


def family_bracket(S: Splitting, p: BracketParameter) -> LieAlgebra:
    """The pencil member a*[,]_0 + b*[,]_infinity; (1,1) is the original algebra."""
    if not isinstance(p, BracketParameter):
        p = BracketParameter(*p)
    c0 = _contract_constants(S, S.h_set, S.r_set)
    cinf = _contract_constants(S, S.r_set, S.h_set)
    keys = set(c0) | set(cinf)
    constants = {}
    for key in keys:
        acc: dict = {}
        for coeff, part in ((p.a, c0.get(key, ())), (p.b, cinf.get(key, ()))):
            if coeff:
                for k, c in part:
                    val = acc.get(k, QQ0) + coeff * c
                    if val:
                        acc[k] = val
                    elif k in acc:
                        del acc[k]
        if acc:
            constants[key] = tuple(acc.items())
    return LieAlgebra(S.algebra.names, constants,
                      kind=f"family{p.label()}({S.algebra.kind})")


def pencil_member(S: Splitting, p) -> LieAlgebra:
    """Convenience: (1,1) returns the original algebra object itself."""
    if not isinstance(p, BracketParameter):
        p = BracketParameter(*p)
    if p.a == QQ1 and p.b == QQ1:
        return S.algebra
    return family_bracket(S, p)


def _normalize_direction(vec):
    """Scale to coprime integers with the first nonzero entry positive."""
    from math import gcd

    den = 1
    for x in vec:
        d = int(QQ(x).denominator)
        den = den // gcd(den, d) * d
    ints = [int(QQ(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(QQ(x) for x in ints)


def horospherical_splitting(L: LieAlgebra, t1_basis, t0_basis=None) -> Splitting:
    """Adapted splitting h+ = u+ + t1, h- = u- + t0 with t0 = t1-perp in the Cartan.

    ``t1_basis`` lists vectors (full coordinates of L) supported on the
    Cartan; the returned splitting lives on a rebuilt algebra whose basis
    is (u+, t1, u-, t0), with Cartan coordinates renamed t1_i / t0_i.
    An explicit ``t0_basis`` may be passed to pin the coordinates used by
    restriction reports; it must span the orthogonal complement of t1.
    """
    tri = L.triangular
    if tri is None:
        raise ValueError("horospherical splittings need a reductive builder algebra")
    cartan = list(tri.cartan)
    ell = len(cartan)
    cpos = {c: i for i, c in enumerate(cartan)}

    def to_cartan(vectors, label):
        out = []
        for v in vectors:
            if len(v) != L.dim:
                raise ValueError(f"{label} vectors must use full algebra coordinates")
            w = [QQ0] * ell
            for i, c in enumerate(v):
                c = QQ(c)
                if not c:
                    continue
                if i not in cpos:
                    raise ValueError(
                        f"{label} vector has a component outside the Cartan ({L.names[i]})"
                    )
                w[cpos[i]] = c
            out.append(w)
        return out

    t1_cart = to_cartan(t1_basis, "t1")
    k = len(t1_cart)
    G = tri.cartan_form
    if k:
        T1 = Matrix.from_columns(t1_cart)
        if rank(T1) != k:
            raise ValueError("t1 vectors are dependent")
        # <,> must stay nondegenerate on t1
        if rank(T1.transpose() * G * T1) != k:
            raise ValueError("the invariant form is degenerate on t1")
        _, t0_cart = rank_and_nullspace(T1.transpose() * G)
        t0_cart = [_normalize_direction(v) for v in t0_cart]
    else:
        t0_cart = [tuple(QQ1 if i == j else QQ0 for i in range(ell)) for j in range(ell)]
    if t0_basis is not None:
        supplied = to_cartan(t0_basis, "t0")
        if len(supplied) != len(t0_cart):
            raise ValueError("supplied t0 has the wrong dimension")
        if k:
            probe = Matrix.from_columns(t1_cart).transpose() * G
            for v in supplied:
                if any(x != 0 for x in probe.matvec(v)):
                    raise ValueError("supplied t0 is not orthogonal to t1")
        if rank(Matrix.from_columns(supplied)) != len(supplied):
            raise ValueError("supplied t0 vectors are dependent")
        t0_cart = supplied

    def full_vec(cart_coords):
        v = [QQ0] * L.dim
        for i, c in enumerate(cart_coords):
            v[cartan[i]] = QQ(c)
        return v

    def unit(i):
        v = [QQ0] * L.dim
        v[i] = QQ1
        return v

    new_vectors = (
        [unit(i) for i in tri.plus]
        + [full_vec(w) for w in t1_cart]
        + [unit(i) for i in tri.minus]
        + [full_vec(w) for w in t0_cart]
    )
    names = (
        [L.names[i] for i in tri.plus]
        + [f"t1_{i + 1}" for i in range(k)]
        + [L.names[i] for i in tri.minus]
        + [f"t0_{i + 1}" for i in range(ell - k)]
    )
    adapted = change_basis(L, new_vectors, names, kind=f"horo[{L.kind}]")

    nplus, nminus = len(tri.plus), len(tri.minus)
    plus = tuple(range(nplus))
    t1_idx = tuple(range(nplus, nplus + k))
    minus = tuple(range(nplus + k, nplus + k + nminus))
    t0_idx = tuple(range(nplus + k + nminus, L.dim))
    cartan_new = t1_idx + t0_idx
    # rebuild triangular data in the adapted coordinates
    from .liealg import _extract_root_labels  # shared constant-reading helper

    labels = _extract_root_labels(adapted.constants, cartan_new, plus + minus, L.dim)
    cf = Matrix([[adapted.gram[a, b] for b in cartan_new] for a in cartan_new])
    adapted.triangular = TriangularData(plus, cartan_new, minus, labels, cf)
    adapted.rank = L.rank

    S = Splitting(adapted, plus + t1_idx, minus + t0_idx)
    S.t1_indices = t1_idx
    S.t0_indices = t0_idx
    S.is_horospherical = True
    return S
