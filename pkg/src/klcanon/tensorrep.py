"""Tensor space T = V^{⊗r}, dim V = n, with commuting actions of U_q(gl_n) and H_r.

Monomials ``v_k`` are indexed by words k in [n]^r.  The Hecke algebra acts on
the right by

* ``v_k T_i^-1 = v_{k s_i}`` if ``k_i < k_{i+1}``,
* ``v_k T_i^-1 = u^-1 v_k`` if ``k_i = k_{i+1}``,
* ``v_k T_i^-1 = (u^-1 - u) v_k + v_{k s_i}`` if ``k_i > k_{i+1}``.

The bar involution is ``bar(v_k) = v_{sort(k)} T_{d(k)}``, extended
semilinearly.  Canonical bases are computed per weight space.

>>> c = canonical_basis((2, 1, 1), "lower")
>>> c.text()
'(u^2)*v[112] + (u)*v[121] + (1)*v[211]'
>>> canonical_basis((1, 2, 1), "upper").text()
'(-u^-1)*v[112] + (1)*v[121]'
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import hecke
from . import symcomb as sc
from .exactalg import ExactMatrix, RationalFunction, bar_correct

RF = RationalFunction
_ZERO = RF(0)
_ONE = RF(1)
_U = RF.u()
_UI = RF.monomial(-1)
_U_MINUS_UI = _U - _UI

BASES = ("monomial", "upper", "lower")

# weight spaces larger than this use the Hecke-algebra route for canonical bases
BAR_SOLVE_LIMIT = 150


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _swap(k: Sequence[int], i: int) -> sc.Word:
    k = list(k)
    k[i - 1], k[i] = k[i], k[i - 1]
    return tuple(k)


# --------------------------------------------------------------------------
# Monomial-level actions
# --------------------------------------------------------------------------


def _act_T(coords: dict, i: int) -> dict:
    """Right action of T_i on a monomial expansion."""
    out: dict = {}
    for k, a in coords.items():
        x, y = k[i - 1], k[i]
        if x < y:
            _add_into(out, _swap(k, i), a)
            _add_into(out, k, a * _U_MINUS_UI)
        elif x == y:
            _add_into(out, k, a * _U)
        else:
            _add_into(out, _swap(k, i), a)
    return out


def _act_T_inv(coords: dict, i: int) -> dict:
    """Right action of T_i^-1 on a monomial expansion."""
    out: dict = {}
    for k, a in coords.items():
        x, y = k[i - 1], k[i]
        if x < y:
            _add_into(out, _swap(k, i), a)
        elif x == y:
            _add_into(out, k, a * _UI)
        else:
            _add_into(out, _swap(k, i), a)
            _add_into(out, k, -a * _U_MINUS_UI)
    return out


def _act_T_perm(coords: dict, w: sc.Perm) -> dict:
    for i in sc.reduced_word(w):
        coords = _act_T(coords, i)
    return coords


@functools.lru_cache(maxsize=None)
def _bar_monomial(k: sc.Word) -> dict:
    """bar(v_k) = v_sort(k) T_{d(k)}."""
    d, _ = sc.coset_reps(k)
    return _act_T_perm({sc.sort_word(k): _ONE}, d)


# --------------------------------------------------------------------------
# Weight spaces and canonical bases
# --------------------------------------------------------------------------


class WeightSpace:
    """The weight space T^zeta: words of content zeta in (inversions, lex) order."""

    def __init__(self, zeta: Sequence[int]):
        self.zeta = tuple(zeta)
        self.n = len(self.zeta)
        self.r = sum(self.zeta)
        self.words = sc.words_of_content(self.zeta)
        self.index = {k: i for i, k in enumerate(self.words)}
        self._P: dict[str, ExactMatrix] = {}

    def __len__(self) -> int:
        return len(self.words)

    def bar_matrix(self) -> ExactMatrix:
        """R with bar(v_j) = sum_i R[i, j] v_i (upper unitriangular)."""
        m = len(self.words)
        R = ExactMatrix.zeros(m, m)
        for j, k in enumerate(self.words):
            for l, c in _bar_monomial(k).items():
                R[self.index[l], j] = c
        return R

    def canonical_matrix(self, kind: str, method: str | None = None) -> ExactMatrix:
        """Column k = the canonical basis element c_k or c'_k in monomials."""
        if kind not in ("upper", "lower"):
            raise ValueError(f"unknown kind {kind!r}")
        if method is None:
            if kind in self._P:
                return self._P[kind]
            method = "bar" if len(self.words) <= BAR_SOLVE_LIMIT else "hecke"
        if method == "bar":
            P = bar_correct(self.bar_matrix(), "negative" if kind == "upper" else "positive")
        elif method == "hecke":
            P = self._canonical_via_hecke(kind)
        else:
            raise ValueError(f"unknown method {method!r}")
        self._P.setdefault(kind, P)
        return P

    def _canonical_via_hecke(self, kind: str) -> ExactMatrix:
        """Images of C_{d(k)} / C'_{D(k)} under v_sort . h (lower divided by [zeta]!)."""
        table = hecke.kl_table(self.r)
        base = tuple(i + 1 for i, z in enumerate(self.zeta) for _ in range(z))
        m = len(self.words)
        P = ExactMatrix.zeros(m, m)
        norm = _ONE
        for z in self.zeta:
            norm = norm * RF.qfactorial(z)
        inv_norm = _ONE / norm
        for j, k in enumerate(self.words):
            d, D = sc.coset_reps(k)
            w = d if kind == "upper" else D
            lw = table.lengths[w]
            col: dict = {}
            for x in table.interval(w):
                lp = table.lower_poly(x, w)
                if kind == "lower":
                    lp = lp.bar()
                elif (lw + table.lengths[x]) % 2:
                    lp = -lp
                l = sc.act(base, x)
                ly = table.lengths[x] - sc.length(l)
                _add_into(col, l, RF.from_laurent(lp) * RF.monomial(-ly))
            for l, c in col.items():
                P[self.index[l], j] = c if kind == "upper" else c * inv_norm
        return P


@functools.lru_cache(maxsize=None)
def weight_space(zeta: tuple[int, ...]) -> WeightSpace:
    return WeightSpace(zeta)


def _space_of(k: Sequence[int], n: int | None = None) -> WeightSpace:
    n = max(k) if n is None else n
    return weight_space(sc.content(k, n))


# --------------------------------------------------------------------------
# Elements
# --------------------------------------------------------------------------


@dataclass
class TensorElement:
    """A finitely supported combination of v_k, c_k or c'_k (k in [n]^r)."""

    n: int
    r: int
    coords: dict = field(default_factory=dict)
    basis: str = "monomial"

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        clean = {}
        for k, c in self.coords.items():
            k = tuple(k)
            if len(k) != self.r or any(not 1 <= x <= self.n for x in k):
                raise ValueError(f"word {k} not in [{self.n}]^{self.r}")
            c = RF.coerce(c)
            if c:
                clean[k] = c
        self.coords = clean

    @classmethod
    def basis_element(cls, k: Sequence[int], n: int, basis: str = "monomial") -> "TensorElement":
        return cls(n, len(k), {tuple(k): _ONE}, basis)

    def _like(self, coords: dict, basis: str | None = None) -> "TensorElement":
        out = TensorElement.__new__(TensorElement)
        out.n, out.r, out.coords, out.basis = self.n, self.r, coords, basis or self.basis
        return out

    def _check(self, other: "TensorElement"):
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("dimension mismatch")

    # -- linear structure ---------------------------------------------------
    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        other = other.to_basis(self.basis)
        out = dict(self.coords)
        for k, c in other.coords.items():
            _add_into(out, k, c)
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = RF.coerce(c)
        if not c:
            return self._like({})
        return self._like({k: a * c for k, a in self.coords.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.n, self.r) == (other.n, other.r) and self.monomial().coords == other.monomial().coords

    def __bool__(self) -> bool:
        return bool(self.coords)

    def coefficient(self, k: Sequence[int]):
        return self.coords.get(tuple(k), _ZERO)

    def weights(self) -> set[tuple[int, ...]]:
        return {sc.content(k, self.n) for k in self.coords}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    # -- bases ----------------------------------------------------------------
    def monomial(self) -> "TensorElement":
        return self.to_basis("monomial")

    def to_basis(self, basis: str) -> "TensorElement":
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        if basis == self.basis:
            return self
        mono = self._to_monomial()
        if basis == "monomial":
            return mono
        return mono._from_monomial(basis)

    def _to_monomial(self) -> "TensorElement":
        if self.basis == "monomial":
            return self
        out: dict = {}
        for k, c in self.coords.items():
            ws = _space_of(k, self.n)
            P = ws.canonical_matrix(self.basis)
            j = ws.index[k]
            for i in range(j + 1):
                p = P[i, j]
                if p:
                    _add_into(out, ws.words[i], p * c)
        return self._like(out, "monomial")

    def _from_monomial(self, basis: str) -> "TensorElement":
        rest = dict(self.coords)
        out = {}
        while rest:
            k = max(rest, key=lambda l: (sc.length(l), l))
            ws = _space_of(k, self.n)
            # c_k = v_k + lower terms, so peel from the top of the order
            k = max((l for l in rest if sc.content(l, self.n) == ws.zeta), key=lambda l: ws.index[l])
            c = rest[k]
            out[k] = c
            P = ws.canonical_matrix(basis)
            j = ws.index[k]
            for i in range(j + 1):
                p = P[i, j]
                if p:
                    _add_into(rest, ws.words[i], -p * c)
        return self._like(out, basis)

    # -- actions --------------------------------------------------------------
    def act(self, h: "hecke.HeckeElement") -> "TensorElement":
        """x . h for h in H_r (result in the monomial basis)."""
        if h.r != self.r:
            raise ValueError(f"rank mismatch: {self.r} vs {h.r}")
        src = self.monomial().coords
        out: dict = {}
        for y, c in h.to_basis("T").coords.items():
            for k, a in _act_T_perm(src, y).items():
                _add_into(out, k, a * c)
        return self._like(out, "monomial")

    def act_T(self, i: int) -> "TensorElement":
        return self._like(_act_T(self.monomial().coords, i), "monomial")

    def act_T_inv(self, i: int) -> "TensorElement":
        return self._like(_act_T_inv(self.monomial().coords, i), "monomial")

    def bar(self) -> "TensorElement":
        out: dict = {}
        for k, c in self.monomial().coords.items():
            cb = c.bar()
            for l, a in _bar_monomial(k).items():
                _add_into(out, l, a * cb)
        return self._like(out, "monomial")

    def text(self, pretty: bool = False) -> str:
        if not self.coords:
            return "0"
        name = {"monomial": "v", "upper": "c", "lower": "c'"}[self.basis]
        parts = []
        for k in sorted(self.coords, key=lambda l: (sc.content(l, self.n), sc.length(l), l)):
            c = self.coords[k]
            parts.append(f"({c.pretty() if pretty else c.to_text()})*{name}[{sc.perm_text(k)}]")
        return " + ".join(parts)


def monomial(k: Sequence[int], n: int | None = None) -> TensorElement:
    return TensorElement.basis_element(k, max(k) if n is None else n)


def canonical_basis(k: Sequence[int], kind: str, n: int | None = None) -> TensorElement:
    """c_k (``kind="upper"``) or c'_k (``kind="lower"``) as a monomial expansion."""
    if kind not in ("upper", "lower"):
        raise ValueError(f"unknown kind {kind!r}")
    n = max(k) if n is None else n
    return TensorElement.basis_element(k, n, kind).monomial()


def hecke_act(x: TensorElement, h: "hecke.HeckeElement") -> TensorElement:
    return x.act(h)


def bar_tensor(x: TensorElement) -> TensorElement:
    return x.bar()


# --------------------------------------------------------------------------
# U_q(gl_n)
# --------------------------------------------------------------------------

GENERATORS = ("E", "F", "K", "Kinv", "qh")


def _k_exponent(i: int, letter: int) -> int:
    """K_i v_j = u^{<alpha_i, eps_j>} v_j."""
    return (letter == i) - (letter == i + 1)


def uq_act(gen: str, i: int, x: TensorElement) -> TensorElement:
    """Left action of E_i, F_i, K_i, K_i^-1 (1 <= i < n) or q^{h_i} (1 <= i <= n).

    The coproduct is iterated with the leftmost tensor factor first:
    F_i acts as sum_p K_i^{⊗(p-1)} ⊗ F_i ⊗ 1, and E_i as
    sum_p 1 ⊗ E_i ⊗ (K_i^-1)^{⊗(r-p)}.
    """
    if gen not in GENERATORS:
        raise ValueError(f"unknown generator {gen!r}")
    bound = x.n if gen == "qh" else x.n - 1
    if not 1 <= i <= bound:
        raise ValueError(f"bad generator index {gen}_{i} for n={x.n}")
    out: dict = {}
    for k, a in x.monomial().coords.items():
        if gen in ("K", "Kinv"):
            e = sum(_k_exponent(i, l) for l in k)
            _add_into(out, k, a * RF.monomial(e if gen == "K" else -e))
        elif gen == "qh":
            _add_into(out, k, a * RF.monomial(sum(1 for l in k if l == i)))
        elif gen == "F":
            e = 0
            for p, l in enumerate(k):
                if l == i:
                    _add_into(out, k[:p] + (i + 1,) + k[p + 1 :], a * RF.monomial(e))
                e += _k_exponent(i, l)
        else:
            e = 0
            for p in range(len(k) - 1, -1, -1):
                if k[p] == i + 1:
                    _add_into(out, k[:p] + (i,) + k[p + 1 :], a * RF.monomial(e))
                e -= _k_exponent(i, k[p])
    return x._like(out, "monomial")


def phi_generator(gen: str) -> str:
    """The antiautomorphism exchanging E_i and F_i and fixing K_i."""
    return {"E": "F", "F": "E"}.get(gen, gen)


# --------------------------------------------------------------------------
# Bilinear form and cells
# --------------------------------------------------------------------------


def bilinear_form(x: TensorElement, y: TensorElement) -> RationalFunction:
    """(x, y) = sum_k x_k bar(bar(y)_{k-dagger}), so that (v_k, bar(v_{l-dagger})) = delta."""
    x._check(y)
    ybar = y.bar().coords
    total = _ZERO
    for k, a in x.monomial().coords.items():
        b = ybar.get(sc.reverse(k))
        if b:
            total = total + a * b.bar()
    return total


def dagger_op(h: "hecke.HeckeElement") -> "hecke.HeckeElement":
    """The antiautomorphism T_i -> T_{r-i}: T_w -> T_{w0 w^-1 w0}."""
    w0 = sc.longest(h.r)
    t = h.to_basis("T")
    return hecke.HeckeElement(
        h.r, {sc.compose(sc.compose(w0, sc.inverse(w)), w0): c for w, c in t.coords.items()}, "T"
    )


def cells_tensor(n: int, r: int, kind: str) -> dict[str, dict]:
    """H_r-cells (``gamma``, keyed by P) and U-cells (``lambda``, keyed by Q)."""
    gamma: dict = {}
    lam: dict = {}
    for k in sc.words(n, r):
        key = k if kind == "upper" else sc.reverse(k)
        P, Q = sc.rsk(key)
        gamma.setdefault(P, []).append(k)
        lam.setdefault(Q, []).append(k)
    return {"gamma": gamma, "lambda": lam}


def all_words(n: int, r: int) -> list[sc.Word]:
    return list(itertools.product(range(1, n + 1), repeat=r))
