"""Isotypic projections of canonical bases in tensor space and in H_r.

For a word k of shape lam = sh(k), the projected upper element is
``c~_k = c_k - sum_{sh(j) ◁ lam} a_j c_j`` with the a_j fixed by requiring
``c~_k`` to lie in ``span{c'_l : sh(l†) ⊵ lam}``.  The lower element mirrors
this with the roles of the two bases and of ◁ / ▷ exchanged, and
lam = sh(k†).  Hecke-algebra versions C~_w, C~'_w come from the weight space
of content (1^r) with n = r, where v_w corresponds to the one-line word of w.

>>> c = project_canonical((1, 1, 2), "upper")
>>> sorted((sc.perm_text(k), v.pretty()) for k, v in c.coords.items())
[('112', '1'), ('121', '[2]/[3]'), ('211', '1/[3]')]
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import hecke
from . import symcomb as sc
from . import tensorrep as tr
from .exactalg import ExactMatrix, LabeledMatrix, RationalFunction, solve_linear

RF = RationalFunction
_ZERO = RF(0)
_ONE = RF(1)
KINDS = ("upper", "lower")

# content (1^r) spaces up to this size use the filtration solve by default
FILTRATION_LIMIT = 24


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")


def _add_into(acc: dict, key, c) -> None:
    s = acc.get(key)
    s = c if s is None else s + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


@functools.lru_cache(maxsize=None)
def word_shape(k: sc.Word) -> sc.Partition:
    return sc.rsk(k)[0].shape


@functools.lru_cache(maxsize=None)
def dagger_shape(k: sc.Word) -> sc.Partition:
    return sc.rsk(sc.reverse(k))[0].shape


def _lex_key(lam: sc.Partition) -> tuple:
    """A linear extension of dominance: lam ◁ mu implies key(lam) < key(mu)."""
    return tuple(lam)


# --------------------------------------------------------------------------
# Filtration solve in one weight space
# --------------------------------------------------------------------------


class ProjectedWeightSpace:
    """Projected bases of one weight space T^zeta."""

    def __init__(self, zeta: Sequence[int]):
        self.ws = tr.weight_space(tuple(zeta))
        self.words = self.ws.words
        self._cols: dict[str, dict] = {}

    def shapes(self, kind: str) -> list[sc.Partition]:
        key = word_shape if kind == "upper" else dagger_shape
        return sorted({key(k) for k in self.words}, key=_lex_key)

    def columns(self, kind: str) -> dict[sc.Word, dict[sc.Word, RationalFunction]]:
        """k -> c~_k in c-coordinates (upper) or c~'_k in c'-coordinates (lower)."""
        _check_kind(kind)
        if kind not in self._cols:
            self._cols[kind] = self._solve(kind)
        return self._cols[kind]

    def _solve(self, kind: str) -> dict:
        other = "lower" if kind == "upper" else "upper"
        own_P = self.ws.canonical_matrix(kind).a
        other_P = self.ws.canonical_matrix(other).a
        index = self.ws.index
        out: dict = {}
        for lam in self.shapes(kind):
            if kind == "upper":
                targets = [k for k in self.words if word_shape(k) == lam]
                corr = [k for k in self.words if sc.dominates_strictly(lam, word_shape(k))]
                span = [k for k in self.words if sc.dominance_leq(lam, dagger_shape(k))]
            else:
                targets = [k for k in self.words if dagger_shape(k) == lam]
                corr = [k for k in self.words if sc.dominates_strictly(dagger_shape(k), lam)]
                span = [k for k in self.words if sc.dominance_leq(word_shape(k), lam)]
            if not corr:
                for k in targets:
                    out[k] = {k: _ONE}
                continue
            # c_k = sum_corr a_j c_j + sum_span b_l c'_l
            A = np.concatenate(
                [own_P[:, [index[j] for j in corr]], other_P[:, [index[l] for l in span]]], axis=1
            )
            rhs = own_P[:, [index[k] for k in targets]]
            sol, null = solve_linear(ExactMatrix._wrap(A), ExactMatrix._wrap(rhs), with_nullspace=True)
            if null:
                raise ArithmeticError(f"projection for shape {lam} is not unique")
            for t, k in enumerate(targets):
                col = {k: _ONE}
                for a, j in enumerate(corr):
                    c = sol[a, t]
                    if c:
                        col[j] = -c
                out[k] = col
        return out


@functools.lru_cache(maxsize=None)
def projected_space(zeta: tuple[int, ...]) -> ProjectedWeightSpace:
    return ProjectedWeightSpace(zeta)


def project_canonical(k: Sequence[int], kind: str, n: int | None = None) -> tr.TensorElement:
    """c~_k (upper) or c~'_k (lower), in the c (resp. c') basis."""
    _check_kind(kind)
    k = tuple(k)
    n = max(k) if n is None else n
    cols = projected_space(sc.content(k, n)).columns(kind)
    return tr.TensorElement(n, len(k), dict(cols[k]), kind)


# --------------------------------------------------------------------------
# Isotypic decomposition of tensor space
# --------------------------------------------------------------------------


@dataclass
class IsotypicDecomposition:
    """T = ⊕ T[lam]; per weight space and shape, the basis {c~_k : sh(k) = lam}."""

    n: int
    r: int
    components: dict = field(default_factory=dict)

    @classmethod
    def build(cls, n: int, r: int) -> "IsotypicDecomposition":
        out = cls(n, r)
        for zeta in sc.compositions(r, n):
            ps = projected_space(zeta)
            for k, col in ps.columns("upper").items():
                out.components.setdefault((zeta, word_shape(k)), []).append(
                    tr.TensorElement(n, r, dict(col), "upper")
                )
        return out

    def dimension(self, lam: sc.Partition) -> int:
        return sum(len(v) for (z, l), v in self.components.items() if l == lam)

    def check(self) -> bool:
        """Dimensions add up to n^r and each component has the stated support."""
        if sum(len(v) for v in self.components.values()) != self.n ** self.r:
            return False
        for (zeta, lam), basis in self.components.items():
            for x in basis:
                if any(not sc.dominance_leq(word_shape(j), lam) for j in x.coords):
                    return False
                lower = x.to_basis("lower")
                if any(not sc.dominance_leq(lam, dagger_shape(l)) for l in lower.coords):
                    return False
        return True


def isotypic_project(x: tr.TensorElement, lam: sc.Partition) -> tr.TensorElement:
    """The T[lam]-component of x."""
    lam = tuple(lam)
    if len(lam) > x.n:
        raise ValueError(f"shape {lam} has more than n={x.n} rows")
    xc = x.to_basis("upper").coords
    out: dict = {}
    by_space: dict = {}
    for k, c in xc.items():
        by_space.setdefault(sc.content(k, x.n), {})[k] = c
    for zeta, part in by_space.items():
        cols = projected_space(zeta).columns("upper")
        # c~ is unitriangular: peel the largest shape first
        rest = dict(part)
        while rest:
            k = max(rest, key=lambda l: _lex_key(word_shape(l)))
            a = rest[k]
            for j, t in cols[k].items():
                _add_into(rest, j, -a * t)
            if word_shape(k) == lam:
                for j, t in cols[k].items():
                    _add_into(out, j, a * t)
    return tr.TensorElement(x.n, x.r, out, "upper")


# --------------------------------------------------------------------------
# Projected bases of H_r
# --------------------------------------------------------------------------


def _filtration_columns(r: int, kind: str) -> dict:
    cols = projected_space((1,) * r).columns(kind)
    return {tuple(k): dict(v) for k, v in cols.items()}


def _rank_fraction(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _ideal_columns(r: int) -> dict:
    """C~_w for all w via minimal left ideals of H_r.

    For Q in SYT(lam), span{C~_w : Q(w) = Q} is the left ideal generated by
    C'_{w0(J_lam)} C_{d(j)}, j = RSK^-1(Z_lam, Q): the image of the highest
    weight vector c_j under T^lam -> H_r, v_sort.h -> C'_{w0(J_lam)} h, which
    commutes with the right H_r-action.  C~_w is the element of that ideal
    whose coordinates on the left cell {w' : Q(w') = Q} are delta_w.
    """
    point = Fraction(7, 3)
    out: dict = {}
    cells: dict = {}
    for w in sc.permutations(r):
        cells.setdefault(sc.perm_rsk(w)[1], []).append(w)
    for lam in sc.partitions(r):
        Z = sc.superstandard(lam)
        for Q in sc.standard_tableaux(lam):
            cell = cells[Q]
            j = sc.inverse_rsk(Z, Q)
            d = sc.coset_reps(j)[0]
            g = hecke.left_mul_parabolic_longest(hecke.HeckeElement.basis_element(d, "C"), lam)
            vecs = [g.coords]
            frontier = [g]
            while len(vecs) < len(cell) and frontier:
                nxt = []
                for x in frontier:
                    for i in range(1, r):
                        y = hecke.left_act_generator(x, i)
                        if y.coords and _rank_fraction(
                            [[v[k].evaluate(point) if k in v else Fraction(0) for k in cell] for v in vecs + [y.coords]]
                        ) == len(vecs) + 1:
                            vecs.append(y.coords)
                            nxt.append(y)
                            if len(vecs) == len(cell):
                                break
                    if len(vecs) == len(cell):
                        break
                frontier = nxt
            if len(vecs) != len(cell):
                raise ArithmeticError(f"left ideal for {Q} has dimension below {len(cell)}")
            M = ExactMatrix([[v.get(w, _ZERO) for w in cell] for v in vecs])
            Minv = M.inverse()
            for a, w in enumerate(cell):
                col: dict = {}
                for b, v in enumerate(vecs):
                    c = Minv[a, b]
                    if c:
                        for y, t in v.items():
                            _add_into(col, y, c * t)
                out[w] = col
    return out


def _peel(cols: dict, pos: dict, rhs: dict) -> dict:
    """Solve M x = rhs for unitriangular M given by columns (off-diagonal rows earlier in pos)."""
    rest = dict(rhs)
    x: dict = {}
    while rest:
        w = max(rest, key=pos.__getitem__)
        a = rest[w]
        x[w] = a
        for v, t in cols[w].items():
            _add_into(rest, v, -a * t)
    return x


def _unitriangular_inverse(cols: dict, order: list) -> dict:
    pos = {w: i for i, w in enumerate(order)}
    return {w: _peel(cols, pos, {w: _ONE}) for w in order}


def _duality_lower_columns(r: int, upper: dict) -> dict:
    """C~'_w from (c~_k, c~'_{l†}) = delta: T~' = (T~^-1)^T relabelled by †."""
    order = sorted(upper, key=lambda w: (_lex_key(word_shape(w)), w))
    inv = _unitriangular_inverse(upper, order)
    out: dict = {}
    # T~'_{n, l} = (T~^-1)_{l†, n†}
    for m, col in inv.items():
        for l, c in col.items():
            out.setdefault(sc.reverse(l), {})[sc.reverse(m)] = c
    return out


@functools.lru_cache(maxsize=None)
def _hecke_columns(r: int, kind: str, method: str) -> dict:
    if method == "filtration":
        return _filtration_columns(r, kind)
    if method == "ideal":
        if kind == "upper":
            return _ideal_columns(r)
        return _duality_lower_columns(r, _hecke_columns(r, "upper", "ideal"))
    raise ValueError(f"unknown method {method!r}")


def _default_method(r: int) -> str:
    return "filtration" if math.factorial(r) <= FILTRATION_LIMIT else "ideal"


def hecke_columns(r: int, kind: str, method: str | None = None) -> dict:
    """w -> C~_w in C-coordinates (upper) or C~'_w in C'-coordinates (lower)."""
    _check_kind(kind)
    return _hecke_columns(r, kind, method or _default_method(r))


def hecke_projected_basis(w: sc.Perm, kind: str, method: str | None = None) -> hecke.HeckeElement:
    """C~_w (upper, in the C basis) or C~'_w (lower, in the C' basis)."""
    w = tuple(w)
    cols = hecke_columns(len(w), kind, method)
    return hecke.HeckeElement(len(w), dict(cols[w]), "C" if kind == "upper" else "C'")


def transition_Ttilde(r: int, kind: str, method: str | None = None) -> LabeledMatrix:
    """T~ (upper) or T~' (lower): column w holds the expansion of C~_w / C~'_w."""
    cols = hecke_columns(r, kind, method)
    perms = sc.permutations(r)
    idx = {w: i for i, w in enumerate(perms)}
    M = ExactMatrix.zeros(len(perms), len(perms))
    for w, col in cols.items():
        for y, c in col.items():
            M[idx[y], idx[w]] = c
    return LabeledMatrix(list(perms), list(perms), M)


# --------------------------------------------------------------------------
# Central idempotents
# --------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _idempotents(r: int) -> dict:
    cols = hecke_columns(r, "upper")
    order = sorted(cols, key=lambda w: (_lex_key(word_shape(w)), w))
    ident = sc.identity(r)
    # 1 = C_id = sum_w y_w C~_w
    y = _peel(cols, {w: i for i, w in enumerate(order)}, {ident: _ONE})
    out: dict = {}
    for w, a in y.items():
        acc = out.setdefault(word_shape(w), {})
        for v, t in cols[w].items():
            _add_into(acc, v, a * t)
    return {lam: hecke.HeckeElement(r, c, "C").to_basis("T") for lam, c in out.items()}


def central_idempotent(lam: Sequence[int], r: int | None = None) -> hecke.HeckeElement:
    """The minimal central idempotent p_lam of H_r, in the T basis.

    >>> central_idempotent((2,)).text(pretty=True)
    '(u^-1/[2])*T[12] + (1/[2])*T[21]'
    """
    lam = tuple(lam)
    r = sum(lam) if r is None else r
    if sum(lam) != r:
        raise ValueError(f"{lam} is not a partition of {r}")
    if r == 0:
        raise ValueError("rank must be positive")
    return _idempotents(r).get(lam, hecke.HeckeElement(r, {}, "T"))
