"""Specht modules M_lam with canonical and seminormal bases.

Bases are labelled by SYT(lam) listed increasingly in the order ⊴.  Matrices
act on column vectors: column Q of ``action[i]`` is ``b_Q . C_{s_i}`` (or
``b_Q . C'_{s_i}``) in the chosen basis, so right multiplication by h1 h2 has
matrix ``A(h2) @ A(h1)``.

>>> m = canonical_module((2, 1), "upper")
>>> [str(Q) for Q in m.labels]
['12/3', '13/2']
>>> [[c.pretty() for c in row] for row in m.action[1].tolist()]
[['0', '0'], ['1', '-[2]']]
"""

from __future__ import annotations

import functools
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import hecke
from . import projection
from . import symcomb as sc
from .exactalg import ExactMatrix, LabeledMatrix, RationalFunction, eval_at_zero, normalize_gcd

RF = RationalFunction
_ZERO = RF(0)
_ONE = RF(1)
_U = RF.u()
_UI = RF.monomial(-1)
_QINT2 = RF.qint(2)

BASES = ("C", "C'", "upper-seminormal", "lower-seminormal")


def _kind_check(kind: str) -> None:
    if kind not in ("upper", "lower"):
        raise ValueError(f"unknown kind {kind!r}")


@dataclass
class ModuleRealization:
    """M_lam in one basis, with the right action of each C_{s_i} (or C'_{s_i} for the C' basis)."""

    shape: sc.Partition
    basis: str
    labels: list
    action: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        self.index = {Q: i for i, Q in enumerate(self.labels)}

    @property
    def r(self) -> int:
        return sum(self.shape)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def generator(self) -> str:
        """Which Kazhdan-Lusztig generator the action matrices represent."""
        return "C'" if self.basis == "C'" else "C"

    def T_matrix(self, i: int) -> ExactMatrix:
        """T_s = C_s + u = C'_s - u^-1."""
        shift = _U if self.generator == "C" else -_UI
        return self.action[i] + ExactMatrix.identity(self.dim).scale(shift)

    def T_word_matrices(self, rank: int) -> dict:
        """y -> matrix of T_y for y in S_rank embedded in S_r."""
        key = ("Tw", rank)
        if key not in self._cache:
            out = {sc.identity(rank): ExactMatrix.identity(self.dim)}
            for y in sc.permutations(rank)[1:]:
                j = max(sc.right_descents(y))
                y2 = list(y)
                y2[j - 1], y2[j] = y2[j], y2[j - 1]
                out[y] = self.T_matrix(j) @ out[tuple(y2)]
            self._cache[key] = out
        return self._cache[key]

    def hecke_matrix(self, h: hecke.HeckeElement) -> ExactMatrix:
        """Matrix of right multiplication by h (an element of H_k, k <= r)."""
        words = self.T_word_matrices(h.r)
        out = ExactMatrix.zeros(self.dim, self.dim)
        for y, c in h.to_basis("T").coords.items():
            out = out + words[y].scale(c)
        return out

    def check_relations(self) -> bool:
        """Quadratic and braid relations of the T_s."""
        n = self.dim
        ident = ExactMatrix.identity(n)
        Ts = {i: self.T_matrix(i) for i in range(1, self.r)}
        for i, t in Ts.items():
            if t @ t != t.scale(_U - _UI) + ident:
                return False
            if i + 1 in Ts:
                a, b = t, Ts[i + 1]
                if a @ b @ a != b @ a @ b:
                    return False
            for j in range(i + 2, self.r):
                if t @ Ts[j] != Ts[j] @ t:
                    return False
        return True


# --------------------------------------------------------------------------
# Canonical bases
# --------------------------------------------------------------------------


def cell_representatives(lam: sc.Partition, kind: str) -> dict:
    """Q -> w with w in one fixed right cell realising the label Q.

    Upper: Q(w) = Q with P(w) fixed.  Lower: Q(w) = Q^t with P(w) fixed.
    """
    _kind_check(kind)
    lam = tuple(lam)
    if kind == "upper":
        P = sc.standard_tableaux(lam)[0]
        return {Q: sc.inverse_rsk(P, Q) for Q in sc.standard_tableaux(lam)}
    P = sc.standard_tableaux(sc.conjugate(lam))[0]
    return {Q: sc.inverse_rsk(P, Q.transpose()) for Q in sc.standard_tableaux(lam)}


def mu_tableaux(Qp: sc.Tableau, Q: sc.Tableau, kind: str = "upper") -> int:
    reps = cell_representatives(Q.shape, kind)
    return hecke.kl_table(Q.size()).mu(reps[Qp], reps[Q])


def descent_set(Q: sc.Tableau, kind: str) -> frozenset[int]:
    return sc.descent_set_upper(Q) if kind == "upper" else sc.descent_set_lower(Q)


@functools.lru_cache(maxsize=None)
def canonical_module(lam: Sequence[int], kind: str) -> ModuleRealization:
    """M_lam with the upper basis {C_Q} (action of C_s) or lower basis {C'_Q} (action of C'_s)."""
    _kind_check(kind)
    lam = tuple(lam)
    r = sum(lam)
    labels = sc.sorted_syt(lam)
    reps = cell_representatives(lam, kind)
    table = hecke.kl_table(r) if r > 1 else None
    desc = {Q: descent_set(Q, kind) for Q in labels}
    diag = -_QINT2 if kind == "upper" else _QINT2
    action = {}
    for i in range(1, r):
        M = ExactMatrix.zeros(len(labels), len(labels))
        for b, Q in enumerate(labels):
            if i in desc[Q]:
                M[b, b] = diag
                continue
            for a, Qp in enumerate(labels):
                if i in desc[Qp]:
                    m = table.mu(reps[Qp], reps[Q])
                    if m:
                        M[a, b] = RF(m)
        action[i] = M
    return ModuleRealization(lam, "C" if kind == "upper" else "C'", labels, action)


# --------------------------------------------------------------------------
# Parabolic projections and seminormal bases
# --------------------------------------------------------------------------


def _initial_segment(J) -> int:
    """Return i for J = J_i = {s_1, ..., s_(i-1)}."""
    if isinstance(J, int):
        return J
    gens = sorted(set(J))
    if gens != list(range(1, len(gens) + 1)):
        raise ValueError(f"{gens} is not an initial segment of generators")
    return len(gens) + 1


def projector_matrix(m: ModuleRealization, i: int, mu: sc.Partition) -> ExactMatrix:
    """Right action of the central idempotent p_mu of H_i on m."""
    key = ("p", i, tuple(mu))
    if key not in m._cache:
        if i <= 1:
            M = ExactMatrix.identity(m.dim)
        else:
            M = m.hecke_matrix(projection.central_idempotent(mu, i))
        m._cache[key] = M
    return m._cache[key]


def parabolic_project(m: ModuleRealization, Q: sc.Tableau, J) -> list[RationalFunction]:
    """(C~_Q)^J (or the lower analogue) for J = J_i, as a coordinate vector in m's basis.

    The H_{J_i}-cell of the basis vector of Q has shape sh(Q|[i]).
    """
    i = _initial_segment(J)
    e = [_ZERO] * m.dim
    e[m.index[Q]] = _ONE
    if i <= 1:
        return e
    return projector_matrix(m, i, Q.restrict(i).shape).apply(e)


def single_step_transition(lam: Sequence[int], kind: str) -> LabeledMatrix:
    """Columns (C~_Q)^J (or the lower analogue) for J = J_(r-1)."""
    m = canonical_module(tuple(lam), kind)
    r = m.r
    cols = [parabolic_project(m, Q, r - 1) for Q in m.labels]
    return LabeledMatrix(list(m.labels), list(m.labels), ExactMatrix.from_columns(cols))


@functools.lru_cache(maxsize=None)
def seminormal_transition(lam: Sequence[int], kind: str) -> LabeledMatrix:
    """T(lam) (upper) or T'(lam) (lower): seminormal basis in terms of the canonical basis.

    The basis vector of Q is projected with J = J_(r-1), then J_(r-2), ..., J_2.
    """
    lam = tuple(lam)
    m = canonical_module(lam, kind)
    r = m.r
    cols = []
    for Q in m.labels:
        v = [_ZERO] * m.dim
        v[m.index[Q]] = _ONE
        for i in range(r - 1, 1, -1):
            v = projector_matrix(m, i, Q.restrict(i).shape).apply(v)
        cols.append(v)
    return LabeledMatrix(list(m.labels), list(m.labels), ExactMatrix.from_columns(cols))


def seminormal_module(lam: Sequence[int], kind: str) -> ModuleRealization:
    """Action of C_s in the upper (A^s) or lower (A'^s) seminormal basis."""
    lam = tuple(lam)
    m = canonical_module(lam, kind)
    T = seminormal_transition(lam, kind).matrix
    Tinv = T.inverse()
    shift = ExactMatrix.identity(m.dim).scale(_QINT2)
    action = {}
    for i, M in m.action.items():
        Cs = M if kind == "upper" else M - shift
        action[i] = Tinv @ Cs @ T
    return ModuleRealization(lam, "upper-seminormal" if kind == "upper" else "lower-seminormal", list(m.labels), action)


def check_seminormal(lam: Sequence[int], kind: str = "upper") -> bool:
    """A^{s_j} only links Q', Q that agree on the entries j+2, ..., r."""
    sm = seminormal_module(lam, kind)
    r = sm.r
    pos = {Q: Q.positions() for Q in sm.labels}
    for j, A in sm.action.items():
        for a, Qp in enumerate(sm.labels):
            for b, Q in enumerate(sm.labels):
                if A[a, b] and any(pos[Qp][x] != pos[Q][x] for x in range(j + 2, r + 1)):
                    return False
    return True


# --------------------------------------------------------------------------
# D(lam) and S(lam)
# --------------------------------------------------------------------------


@dataclass
class SMatrixResult:
    S: LabeledMatrix
    D: LabeledMatrix
    edges_used: list
    consistency_checks: int


def _initial_edges(lam: sc.Partition) -> list:
    return [(Q, Q2, i) for Q, Q2, i, initial in sc.dual_knuth_graph(lam) if initial]


@functools.lru_cache(maxsize=None)
def S_matrix(lam: Sequence[int]) -> SMatrixResult:
    """S(lam) with C'_Q = sum S[Q', Q] C_Q', scaled to be the identity at u = 0.

    With g~'_Q = D_QQ g~_Q, S = T D T'^-1 and D^-1 A^s D = A'^s = (A^s)^T, so
    D(lam) is pinned down up to scale by D_Q'Q' / D_QQ = A^s_Q'Q / A^s_QQ'
    along initial dual Knuth edges; every other pair with A^s_Q'Q != 0 is
    used as a consistency assertion.
    """
    lam = tuple(lam)
    up = seminormal_module(lam, "upper")
    labels = up.labels
    idx = up.index
    n = len(labels)
    ratios: dict = {labels[0]: _ONE}
    edges = _initial_edges(lam)
    used = []
    # breadth-first over initial edges
    changed = True
    while changed and len(ratios) < n:
        changed = False
        for Q, Q2, i in edges:
            for a, b in ((Q, Q2), (Q2, Q)):
                if a in ratios and b not in ratios:
                    for s in (i - 1, i):
                        if s < 1 or s >= up.r:
                            continue
                        A = up.action[s]
                        x, y = A[idx[a], idx[b]], A[idx[b], idx[a]]
                        if x and y:
                            # D_bb / D_aa = A_ba / A_ab
                            ratios[b] = ratios[a] * y / x
                            used.append((a, b, s))
                            changed = True
                            break
    if len(ratios) != n:
        raise ArithmeticError(f"initial dual Knuth edges do not reach all of SYT{lam}")
    checks = 0
    for s, A in up.action.items():
        for a, Qa in enumerate(labels):
            for b, Qb in enumerate(labels):
                if a != b and A[a, b] and A[b, a]:
                    if ratios[Qb] / ratios[Qa] != A[b, a] / A[a, b]:
                        raise ArithmeticError(f"inconsistent D ratio on {Qa}, {Qb}")
                    checks += 1
    T = seminormal_transition(lam, "upper").matrix
    Tp = seminormal_transition(lam, "lower").matrix
    D0 = ExactMatrix.zeros(n, n)
    for Q, c in ratios.items():
        D0[idx[Q], idx[Q]] = c
    S0 = T @ D0 @ Tp.inverse()
    scale = _ONE / S0[0, 0]
    S = S0.scale(scale)
    D = D0.scale(scale)
    for a in range(n):
        if eval_at_zero(S[a, a]) != 1:
            raise ArithmeticError("S(lam) diagonal is not 1 at u = 0 after scaling")
    return SMatrixResult(
        LabeledMatrix(list(labels), list(labels), S),
        LabeledMatrix(list(labels), list(labels), D),
        used,
        checks,
    )


def intertwines(lam: Sequence[int]) -> bool:
    """S . Act_C'(h) = Act_C(h) . S for h = C_s, all s."""
    lam = tuple(lam)
    S = S_matrix(lam).S.matrix
    up = canonical_module(lam, "upper")
    low = canonical_module(lam, "lower")
    shift = ExactMatrix.identity(up.dim).scale(_QINT2)
    for i in up.action:
        # C'_s = C_s + [2]
        if S @ low.action[i] != (up.action[i] + shift) @ S:
            return False
    return True


# --------------------------------------------------------------------------
# The bilinear form <C_Q, C'_Q'> = delta
# --------------------------------------------------------------------------


@dataclass
class SpechtForm:
    """Pairing of C-coordinates with C'-coordinates: <x, x'> = x^T x'."""

    shape: sc.Partition

    def pair(self, x: Sequence, xp: Sequence) -> RationalFunction:
        total = _ZERO
        for a, b in zip(x, xp):
            if a and b:
                total = total + RF.coerce(a) * RF.coerce(b)
        return total

    def gram(self, X: ExactMatrix, Xp: ExactMatrix) -> ExactMatrix:
        """Matrix of <X[:, a], Xp[:, b]>."""
        return X.transpose() @ Xp

    def contravariant(self, h: hecke.HeckeElement) -> bool:
        """<x h, x'> = <x, x' h^op> with h^op = h_w T_{w^-1}."""
        up = canonical_module(self.shape, "upper")
        low = canonical_module(self.shape, "lower")
        hop = hecke.HeckeElement(h.r, {sc.inverse(w): c for w, c in h.to_basis("T").coords.items()}, "T")
        return up.hecke_matrix(h).transpose() == low.hecke_matrix(hop)


def specht_form(lam: Sequence[int]) -> SpechtForm:
    return SpechtForm(tuple(lam))


# --------------------------------------------------------------------------
# Positivity predicates
# --------------------------------------------------------------------------

POSITIVITY_SAMPLES = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4))


def nonnegative_at_samples(f: RationalFunction) -> bool:
    """f(a) >= 0 at the sampled positive reals."""
    for a in POSITIVITY_SAMPLES:
        try:
            v = f.evaluate(a)
        except ZeroDivisionError:
            return False
        if v < 0:
            return False
    return True


def coefficientwise_sign(f: RationalFunction) -> int:
    """+1 (-1) if numerator and denominator have all nonnegative (nonpositive) coefficients jointly, else 0."""
    num = [int(c) for c in f.numerator_coefficients() if c]
    den = [int(c) for c in f.denominator_coefficients() if c]
    if all(c > 0 for c in den):
        if all(c > 0 for c in num):
            return 1
        if all(c < 0 for c in num):
            return -1
    return 0


def positivity_report(M: LabeledMatrix) -> dict:
    """Signs after the D(M) normalization (both signs of D tried)."""
    g = normalize_gcd(M)
    entries = [c for _, _, c in g.normalized.entries() if c]
    coef_signs = {coefficientwise_sign(c) for c in entries}
    sampled = all(nonnegative_at_samples(c) for c in entries) or all(nonnegative_at_samples(-c) for c in entries)
    D = g.D
    Dsign = coefficientwise_sign(D) if D.is_laurent() else 0
    return {
        "D": D,
        "coefficientwise": coef_signs in ({1}, {-1}),
        "sampled": sampled,
        "D_in_A": D.is_laurent(),
        "D_sign_coherent": Dsign != 0,
    }
