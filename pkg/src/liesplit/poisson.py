"""Lie-Poisson brackets, Poisson tensors at points, and sampled invariants.

Genericity is probabilistic throughout: a "generic" point is the best
witness over seed-deterministic uniform integer samples.  Every sampled
rank is a certificate, so claimed indices are always upper bounds on the
true index and reports store their witnesses for replay.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import _kernels as K
from .liealg import LieAlgebra, sub_algebra
from .linalg import Matrix, rank_and_nullspace, solve
from .poly import Polynomial
from .rationals import QQ, QQ0
from .splitting import BracketParameter, Decomposition, Splitting, pencil_member

DEFAULT_BOUND = 10**6


def poisson_bracket(L: LieAlgebra, F: Polynomial, G: Polynomial) -> Polynomial:
    """{F, G} = sum over i<j of c_ij^k x_k (dF/dx_i dG/dx_j - dF/dx_j dG/dx_i)."""
    if F.nvars != L.dim or G.nvars != L.dim:
        raise ValueError("polynomials must live on the algebra's coordinates")
    n = L.dim
    dF = [None] * n
    dG = [None] * n
    acc: dict = {}
    for (i, j), entries in L.constants.items():
        if dF[i] is None:
            dF[i] = K.diff_terms(F.terms, i)
        if dF[j] is None:
            dF[j] = K.diff_terms(F.terms, j)
        if dG[i] is None:
            dG[i] = K.diff_terms(G.terms, i)
        if dG[j] is None:
            dG[j] = K.diff_terms(G.terms, j)
        if not ((dF[i] and dG[j]) or (dF[j] and dG[i])):
            continue
        cross: dict = {}
        if dF[i] and dG[j]:
            K.axpy_terms(cross, K.mul_terms(dF[i], dG[j], n), QQ(1))
        if dF[j] and dG[i]:
            K.axpy_terms(cross, K.mul_terms(dF[j], dG[i], n), QQ(-1))
        if not cross:
            continue
        lin = {}
        for k, c in entries:
            e = bytearray(n)
            e[k] = 1
            lin[bytes(e)] = c
        K.axpy_terms(acc, K.mul_terms(cross, lin, n), QQ(1))
    return Polynomial(L.dim, acc, _clean=True)


@dataclass
class PoissonTensorSample:
    point: tuple
    parameter: BracketParameter | None
    matrix: Matrix
    rank: int
    order: tuple
    block_a_rank: int | None = None

    def kernel(self):
        _, basis = rank_and_nullspace(self.matrix)
        return basis


def tensor_at(L_or_S, xi, parameter=None) -> PoissonTensorSample:
    """Poisson tensor pi(xi)[a][b] = xi([x_a, x_b]), exact rank included.

    When a splitting is passed, rows/columns follow its adapted order
    (h block first) and the off-diagonal block A gets its own rank
    (dim of the h-orbit of xi when xi kills h).
    """
    if isinstance(L_or_S, Decomposition):
        S = L_or_S
        L = pencil_member(S, parameter) if parameter is not None else S.algebra
        order = S.order
    else:
        S = None
        L = L_or_S
        if parameter is not None:
            raise ValueError("a pencil parameter needs a splitting")
        order = tuple(range(L.dim))
    xi = [QQ(x) for x in xi]
    if len(xi) != L.dim:
        raise ValueError("point length must equal dim")
    n = L.dim
    rows = [[QQ0] * n for _ in range(n)]
    for (i, j), entries in L.constants.items():
        v = QQ0
        for k, c in entries:
            if xi[k]:
                v = v + c * xi[k]
        if v:
            rows[i][j] = v
            rows[j][i] = -v
    mat = Matrix([[rows[a][b] for b in order] for a in order])
    rk, _ = rank_and_nullspace(mat)
    if rk % 2:
        raise AssertionError("skew-symmetric matrices have even rank; elimination bug")
    block_a_rank = None
    if S is not None:
        nh = S.dim_h
        from .linalg import rank as _rank

        block_a_rank = _rank(Matrix([row[nh:] for row in mat.rows[:nh]]))
    if isinstance(parameter, tuple):
        parameter = BracketParameter(*parameter)
    return PoissonTensorSample(tuple(xi), parameter, mat, rk, order, block_a_rank)


@dataclass
class IndexEstimate:
    claimed_index: int
    certified_max_rank: int
    samples: int
    seed: int
    b_value: object
    witness: tuple = field(repr=False, default=())

    def as_dict(self):
        from .rationals import qq_str

        return {
            "claimed_index": self.claimed_index,
            "certified_max_rank": self.certified_max_rank,
            "samples": self.samples,
            "seed": self.seed,
            "b_value": qq_str(self.b_value),
        }


def _sample_point(rng, dim, bound, support=None):
    if support is None:
        return [rng.randint(-bound, bound) for _ in range(dim)]
    xi = [0] * dim
    for i in support:
        xi[i] = rng.randint(-bound, bound)
    return xi


def index_estimate(L: LieAlgebra, trials: int = 8, seed: int = 0,
                   bound: int = DEFAULT_BOUND) -> IndexEstimate:
    """dim - (max sampled rank of pi(xi)); an upper bound on the index, claimed exact."""
    if trials < 1:
        raise ValueError("trials >= 1 required")
    rng = random.Random(seed)
    best_rank = 0
    witness: tuple = ()
    for _ in range(trials):
        xi = _sample_point(rng, L.dim, bound)
        sample = tensor_at(L, xi)
        if sample.rank > best_rank:
            best_rank = sample.rank
            witness = tuple(xi)
    claimed = L.dim - best_rank
    return IndexEstimate(claimed, best_rank, trials, seed, QQ(L.dim + claimed, 2), witness)


def regular_point_check(L: LieAlgebra, xi, estimate: IndexEstimate | None = None,
                        trials: int = 8, seed: int = 0) -> bool:
    """True iff dim ker pi(xi) equals the (cached or freshly claimed) index."""
    if estimate is None:
        estimate = index_estimate(L, trials=trials, seed=seed)
    sample = tensor_at(L, xi)
    return L.dim - sample.rank == estimate.claimed_index


@dataclass
class StabilizerReport:
    h_indices: tuple
    sample_point: tuple
    stabilizer_basis: list
    dim_star: int
    index_star: IndexEstimate
    stabilizer_constants_zero: bool
    subalgebra: LieAlgebra

    @property
    def is_abelian(self):
        return self.stabilizer_constants_zero


def generic_stabilizer(L: LieAlgebra, h_indices, trials: int = 8, seed: int = 0,
                       bound: int = 997) -> StabilizerReport:
    """Stabilizer in h of a generic point of Ann(h) under the h-action on (q/h)*.

    h must span a subalgebra.  For xi in Ann(h) the stabilizer is
    {x in h : xi([x, y]) = 0 for all y in q}; the best (smallest) witness
    over the sampled points is kept, and the stabilizer is returned as an
    abstract algebra with restricted structure constants.
    """
    h_indices = tuple(h_indices)
    hs = set(h_indices)
    r_support = [i for i in range(L.dim) if i not in hs]
    # closure check via sub_algebra construction (raises when h is not closed)
    sub_algebra(L, h_indices)
    rng = random.Random(seed)
    best = None
    # Ann(h) = 0 only when h is everything; the definition then collapses to
    # the stabilizer of a generic point of the full dual.
    support = r_support if r_support else None
    for _ in range(max(1, trials)):
        xi = _sample_point(rng, L.dim, bound, support=support)
        rows = []
        for y in range(L.dim):
            row = []
            for x in h_indices:
                br = L.bracket_pair(x, y)
                row.append(sum((c * xi[k] for k, c in br.items() if xi[k]), QQ0))
            rows.append(row)
        _, basis = rank_and_nullspace(Matrix(rows))
        if best is None or len(basis) < len(best[1]):
            best = (tuple(xi), basis)
    xi, basis = best
    dim_star = len(basis)
    # structure constants of the stabilizer in its own basis
    full_basis = []
    for v in basis:
        w = [QQ0] * L.dim
        for pos, i in enumerate(h_indices):
            w[i] = v[pos]
        full_basis.append(w)
    constants = {}
    all_zero = True
    for a in range(dim_star):
        for b in range(a + 1, dim_star):
            w = L.bracket_vec(full_basis[a], full_basis[b])
            if not w:
                continue
            # must lie in the span of the stabilizer (it is a subalgebra)
            target = [w.get(i, QQ0) for i in range(L.dim)]
            coeffs = solve(Matrix.from_columns(full_basis), target) if full_basis else None
            if coeffs is None:
                raise AssertionError(
                    "sampled stabilizer failed to close under the bracket; sampling bug"
                )
            entries = tuple((k, c) for k, c in enumerate(coeffs) if c)
            if entries:
                constants[(a, b)] = entries
                all_zero = False
    names = [f"s{k + 1}" for k in range(dim_star)]
    stab = LieAlgebra(names, constants, kind="stabilizer")
    idx = index_estimate(stab, trials=max(1, trials), seed=seed + 1, bound=bound) if dim_star \
        else IndexEstimate(0, 0, 0, seed, QQ0)
    return StabilizerReport(h_indices, xi, basis, dim_star, idx, all_zero, stab)


@dataclass
class SphericityReport:
    s0: int
    s_inf: int
    r_gh: int
    r_gr: int
    c_gh: object
    c_gr: object
    rank: int
    verdicts: dict
    h_star: StabilizerReport
    r_star: StabilizerReport
    ind_contraction_h: int
    ind_contraction_r: int


def sphericity(S: Splitting, trials: int = 8, seed: int = 0) -> SphericityReport:
    """Rosenlicht-style invariants s0, s_inf plus rank/complexity bookkeeping.

    Uses s0 = dim Ann(h) - dim h + dim h_star and ind h_star = rank - r(G/H);
    the inequality s0 + s_inf >= rank is a theorem and is enforced loudly.
    """
    L = S.algebra
    if L.rank is None:
        raise ValueError("sphericity needs a reductive builder algebra (known rank)")
    ell = L.rank
    h_star = generic_stabilizer(L, S.h_indices, trials=trials, seed=seed)
    r_star = generic_stabilizer(L, S.r_indices, trials=trials, seed=seed + 17)
    s0 = (L.dim - S.dim_h) - S.dim_h + h_star.dim_star
    s_inf = (L.dim - S.dim_r) - S.dim_r + r_star.dim_star
    if s0 + s_inf < ell:
        raise AssertionError(
            f"s0 + s_inf = {s0 + s_inf} < rank {ell}: violates a theorem, implementation bug"
        )
    r_gh = ell - h_star.index_star.claimed_index
    r_gr = ell - r_star.index_star.claimed_index
    c_gh = QQ(s0 - r_gh, 2)
    c_gr = QQ(s_inf - r_gr, 2)
    for name, c in (("c(G/H)", c_gh), ("c(G/R)", c_gr)):
        if int(c.denominator) != 1 or c < 0:
            raise AssertionError(f"{name} = {c} is not a nonnegative integer; bug detector")
    from .splitting import contract

    ind0 = index_estimate(contract(S, "keep_h"), trials=max(5, trials), seed=seed + 3)
    indinf = index_estimate(contract(S, "keep_r"), trials=max(5, trials), seed=seed + 4)
    verdicts = {
        "sum_equals_rank": s0 + s_inf == ell,
        "nondegenerate": ind0.claimed_index == ell and indinf.claimed_index == ell,
        "h_star_abelian": h_star.is_abelian,
        "r_star_abelian": r_star.is_abelian,
    }
    return SphericityReport(s0, s_inf, r_gh, r_gr, c_gh, c_gr, ell, verdicts,
                            h_star, r_star, ind0.claimed_index, indinf.claimed_index)
