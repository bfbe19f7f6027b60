"""The Hecke algebra H_r of S_r and its Kazhdan-Lusztig bases.

Normalization: ``(T_s - u)(T_s + u^-1) = 0``, ``bar(u) = u^-1``,
``bar(T_w) = T_{w^-1}^-1``.  The lower basis ``C'_w = sum_x P'_{x,w} T_x``
has ``P'_{x,w} in u^-1 Z[u^-1]`` for ``x < w``; the upper basis is
``C_w = sum_x (-1)^{l(w)+l(x)} bar(P'_{x,w}) T_x``.

>>> s = (2, 1)
>>> lower(s).to_basis("T").text()
'(u^-1)*T[12] + (1)*T[21]'
>>> upper(s).to_basis("T").text()
'(-u)*T[12] + (1)*T[21]'
>>> (lower(s) * lower(s)).to_basis("C'").text()
"(u^-1 + u)*C'[21]"
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field
from typing import Iterable

from flint import fmpz_poly

from . import symcomb as sc
from .exactalg import ExactMatrix, LaurentPolynomial, RationalFunction, _parse_laurent, bar_correct

RF = RationalFunction
_ZERO = RF(0)
_ONE = RF(1)
_U = RF.u()
_UI = RF.monomial(-1)
_U_MINUS_UI = _U - _UI
_QINT2 = RF.qint(2)

BASES = ("T", "C", "C'")
MEMO_HEADER = "klcanon-kl-memo 1"


# --------------------------------------------------------------------------
# Kazhdan-Lusztig polynomials
# --------------------------------------------------------------------------


def _times(w: sc.Perm, i: int) -> sc.Perm:
    """w s_i: swap positions i, i+1 of the one-line notation."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


class KLTable:
    """KL polynomials and mu values of S_r.

    Polynomials are held in the classical normalization ``P_{x,w}(q)``
    (q = u^2); ``lower_poly`` returns ``P'_{x,w} = u^{l(x)-l(w)} P_{x,w}(u^2)``.
    The support of ``P_{x,w}`` is exactly the Bruhat interval below w.
    """

    def __init__(self, r: int, _polys: dict | None = None):
        self.r = r
        self.perms = sc.permutations(r)
        self.index = {w: i for i, w in enumerate(self.perms)}
        self.lengths = {w: sc.length(w) for w in self.perms}
        self._P: dict[sc.Perm, dict[sc.Perm, fmpz_poly]] = _polys if _polys is not None else {}
        if _polys is None:
            self._compute()
        self._mu_below = {w: self._mus(w) for w in self.perms}
        self._mu_above: dict[sc.Perm, list[tuple[sc.Perm, int]]] = {w: [] for w in self.perms}
        for w, lst in self._mu_below.items():
            for z, m in lst:
                self._mu_above[z].append((w, m))

    # -- construction -----------------------------------------------------
    def _mus(self, w) -> list[tuple[sc.Perm, int]]:
        lw = self.lengths[w]
        out = []
        for x, p in self._P[w].items():
            d = lw - self.lengths[x]
            if d % 2 == 1:
                c = int(p[(d - 1) // 2])
                if c:
                    out.append((x, c))
        return out

    def _compute(self):
        one = fmpz_poly([1])
        ident = self.perms[0]
        self._P[ident] = {ident: one}
        mu_below: dict[sc.Perm, list[tuple[sc.Perm, int]]] = {ident: []}
        L = self.lengths
        for w in self.perms[1:]:
            i = max(sc.right_descents(w))
            v = _times(w, i)
            Pv = self._P[v]
            lw = L[w]
            cands = set(Pv)
            cands.update(_times(x, i) for x in Pv)
            corr = [
                (z, m, fmpz_poly([0] * ((lw - L[z]) // 2) + [m]))
                for z, m in mu_below[v]
                if z[i - 1] > z[i]
            ]
            Pw = {}
            for x in cands:
                xs = _times(x, i)
                down = x[i - 1] > x[i]
                a = Pv.get(xs)
                b = Pv.get(x)
                p = fmpz_poly()
                if down:
                    # q^0 P_{xs,v} + q^1 P_{x,v}
                    if a is not None:
                        p += a
                    if b is not None:
                        p += b.left_shift(1)
                else:
                    if a is not None:
                        p += a.left_shift(1)
                    if b is not None:
                        p += b
                for z, m, qpow in corr:
                    pz = self._P[z].get(x)
                    if pz is not None:
                        p -= qpow * pz
                if not p.is_zero():
                    Pw[x] = p
            self._P[w] = Pw
            mu_below[w] = self._mus(w)

    # -- queries ------------------------------------------------------------
    def classical(self, x, w) -> fmpz_poly:
        return self._P[w].get(x, fmpz_poly())

    def leq(self, x, w) -> bool:
        """Bruhat order, read off the support of P."""
        return x in self._P[w]

    def interval(self, w) -> list[sc.Perm]:
        return list(self._P[w])

    def lower_poly(self, x, w) -> LaurentPolynomial:
        p = self._P[w].get(x)
        if p is None:
            return LaurentPolynomial()
        shift = self.lengths[x] - self.lengths[w]
        return LaurentPolynomial({shift + 2 * e: int(c) for e, c in enumerate(p.coeffs()) if c})

    @functools.lru_cache(maxsize=None)
    def lower_expansion(self, w) -> dict[sc.Perm, RationalFunction]:
        """C'_w in the T-basis."""
        return {x: RF.from_laurent(self.lower_poly(x, w)) for x in self._P[w]}

    @functools.lru_cache(maxsize=None)
    def upper_expansion(self, w) -> dict[sc.Perm, RationalFunction]:
        """C_w in the T-basis."""
        lw = self.lengths[w]
        out = {}
        for x in self._P[w]:
            c = RF.from_laurent(self.lower_poly(x, w).bar())
            out[x] = c if (lw + self.lengths[x]) % 2 == 0 else -c
        return out

    def mu(self, x, w) -> int:
        """mu(x, w), symmetric in its arguments; 0 for incomparable pairs."""
        if self.lengths[x] > self.lengths[w]:
            x, w = w, x
        d = self.lengths[w] - self.lengths[x]
        p = self._P[w].get(x)
        if p is None or d % 2 == 0:
            return 0
        return int(p[(d - 1) // 2])

    def mu_neighbors(self, w) -> list[tuple[sc.Perm, int]]:
        """All (w', mu(w', w)) with mu nonzero."""
        return self._mu_below[w] + self._mu_above[w]

    def num_pairs(self) -> int:
        return sum(len(d) for d in self._P.values())

    # -- persistence ----------------------------------------------------------
    def dump_lines(self) -> Iterable[str]:
        yield f"rank {self.r}"
        for w in self.perms:
            for x in sorted(self._P[w], key=self.index.__getitem__):
                yield f"{sc.perm_text(x)} {sc.perm_text(w)} {self.lower_poly(x, w).to_text()}"
        yield "end"

    @classmethod
    def from_lines(cls, r: int, lines: Iterable[str]) -> "KLTable":
        polys: dict = {}
        for line in lines:
            xs, ws, text = line.split(" ", 2)
            x, w = sc.parse_perm(xs), sc.parse_perm(ws)
            lp = _parse_laurent(text)
            shift = sc.length(x) - sc.length(w)
            coeffs = [0] * ((lp.max_exponent() - shift) // 2 + 1)
            for e, c in lp.coefficients().items():
                coeffs[(e - shift) // 2] = int(c)
            polys.setdefault(w, {})[x] = fmpz_poly(coeffs)
        for w in sc.permutations(r):
            polys.setdefault(w, {})
        return cls(r, polys)


def save_memo(path: str, tables: Iterable[KLTable]) -> None:
    """Write KL tables to a memo file (atomic replace).

    Format: a header line ``klcanon-kl-memo 1``, then per rank a block
    ``rank R`` / lines ``x w P'`` (P' in canonical Laurent text) / ``end``.
    """
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(MEMO_HEADER + "\n")
        for t in sorted(tables, key=lambda t: t.r):
            for line in t.dump_lines():
                fh.write(line + "\n")
    os.replace(tmp, path)


def load_memo(path: str) -> dict[int, KLTable]:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != MEMO_HEADER:
        raise ValueError(f"{path}: not a klcanon KL memo (expected {MEMO_HEADER!r})")
    out = {}
    i = 1
    while i < len(lines):
        head = lines[i].split()
        if len(head) != 2 or head[0] != "rank":
            raise ValueError(f"{path}:{i + 1}: expected 'rank R'")
        r = int(head[1])
        j = lines.index("end", i + 1)
        out[r] = KLTable.from_lines(r, lines[i + 1 : j])
        i = j + 1
    return out


_TABLES: dict[int, KLTable] = {}
_CACHE_PATH: str | None = os.environ.get("KLCANON_KL_CACHE")


def set_cache_path(path: str | None) -> None:
    global _CACHE_PATH
    _CACHE_PATH = path


def kl_table(r: int) -> KLTable:
    """The KL table of S_r, memoized in process and optionally on disk."""
    t = _TABLES.get(r)
    if t is not None:
        return t
    if _CACHE_PATH and os.path.exists(_CACHE_PATH):
        _TABLES.update({k: v for k, v in load_memo(_CACHE_PATH).items() if k not in _TABLES})
        t = _TABLES.get(r)
        if t is not None:
            return t
    t = _TABLES[r] = KLTable(r)
    if _CACHE_PATH:
        save_memo(_CACHE_PATH, _TABLES.values())
    return t


def mu(x: sc.Perm, w: sc.Perm) -> int:
    return kl_table(len(w)).mu(x, w)


def kl_poly(x: sc.Perm, w: sc.Perm) -> LaurentPolynomial:
    """P'_{x,w}."""
    return kl_table(len(w)).lower_poly(x, w)


def cell_of(w: sc.Perm, kind: str = "upper") -> sc.Tableau:
    """Right-cell label: P(w) for C_w, P(w) transposed for C'_w."""
    P = sc.perm_rsk(w)[0]
    if kind == "upper":
        return P
    if kind == "lower":
        return P.transpose()
    raise ValueError(f"unknown kind {kind!r}")


def shape(w: sc.Perm) -> sc.Partition:
    return sc.perm_rsk(w)[0].shape


# --------------------------------------------------------------------------
# Elements
# --------------------------------------------------------------------------


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _right_mul_T_gen(coords: dict, i: int) -> dict:
    """(sum a_x T_x) T_{s_i} in the T-basis."""
    out: dict = {}
    for x, a in coords.items():
        xs = _times(x, i)
        if x[i - 1] < x[i]:
            _add_into(out, xs, a)
        else:
            _add_into(out, xs, a)
            _add_into(out, x, a * _U_MINUS_UI)
    return out


def _scale_into(acc: dict, src: dict, c) -> None:
    for x, a in src.items():
        _add_into(acc, x, a * c)


@functools.lru_cache(maxsize=None)
def _bar_T(x: sc.Perm) -> dict:
    """bar(T_x) = T_{x^-1}^-1 in the T-basis, via bar(T_s) = T_s + u^-1 - u."""
    if sc.length(x) == 0:
        return {x: _ONE}
    i = max(sc.right_descents(x))
    prev = _bar_T(_times(x, i))
    out = _right_mul_T_gen(prev, i)
    _scale_into(out, prev, -_U_MINUS_UI)
    return out


@dataclass
class HeckeElement:
    """A finitely supported combination of T_w, C_w or C'_w (w in S_r)."""

    r: int
    coords: dict = field(default_factory=dict)
    basis: str = "T"

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        self.coords = {w: RF.coerce(c) for w, c in self.coords.items() if c}

    # -- constructors ---------------------------------------------------------
    @classmethod
    def basis_element(cls, w: sc.Perm, basis: str = "T") -> "HeckeElement":
        return cls(len(w), {tuple(w): _ONE}, basis)

    @classmethod
    def one(cls, r: int) -> "HeckeElement":
        return cls.basis_element(sc.identity(r))

    @classmethod
    def zero(cls, r: int, basis: str = "T") -> "HeckeElement":
        return cls(r, {}, basis)

    # -- linear structure -------------------------------------------------------
    def _check(self, other: "HeckeElement"):
        if self.r != other.r:
            raise ValueError(f"rank mismatch: {self.r} vs {other.r}")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        other = other.to_basis(self.basis)
        out = dict(self.coords)
        for w, c in other.coords.items():
            _add_into(out, w, c)
        return HeckeElement(self.r, out, self.basis)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.r, {w: -c for w, c in self.coords.items()}, self.basis)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        c = RF.coerce(c)
        return HeckeElement(self.r, {w: a * c for w, a in self.coords.items()}, self.basis)

    def __rmul__(self, c) -> "HeckeElement":
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, HeckeElement):
            return self.scale(other)
        self._check(other)
        a = self.to_basis("T").coords
        out: dict = {}
        for y, c in other.to_basis("T").coords.items():
            cur = a
            for i in sc.reduced_word(y):
                cur = _right_mul_T_gen(cur, i)
            _scale_into(out, cur, c)
        return HeckeElement(self.r, out, "T").to_basis(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement) or self.r != other.r:
            return NotImplemented
        return self.to_basis("T").coords == other.to_basis("T").coords

    def __bool__(self) -> bool:
        return bool(self.coords)

    def coefficient(self, w: sc.Perm):
        return self.coords.get(tuple(w), _ZERO)

    def support(self) -> list[sc.Perm]:
        return sorted(self.coords, key=lambda w: (sc.length(w), w))

    # -- bases ------------------------------------------------------------------
    def to_basis(self, basis: str) -> "HeckeElement":
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        if basis == self.basis:
            return self
        t = self._to_T()
        if basis == "T":
            return t
        return t._from_T(basis)

    def _to_T(self) -> "HeckeElement":
        if self.basis == "T":
            return self
        table = kl_table(self.r)
        expand = table.lower_expansion if self.basis == "C'" else table.upper_expansion
        out: dict = {}
        for w, c in self.coords.items():
            _scale_into(out, expand(w), c)
        return HeckeElement(self.r, out, "T")

    def _from_T(self, basis: str) -> "HeckeElement":
        """Back-substitution down the length filtration."""
        table = kl_table(self.r)
        expand = table.lower_expansion if basis == "C'" else table.upper_expansion
        rest = dict(self.coords)
        out = {}
        while rest:
            w = max(rest, key=lambda x: (table.lengths[x], x))
            c = rest[w]
            out[w] = c
            _scale_into(rest, expand(w), -c)
        return HeckeElement(self.r, out, basis)

    def bar(self) -> "HeckeElement":
        if self.basis != "T":
            # the KL bases are bar-invariant; tests check this against the T route
            return HeckeElement(self.r, {w: c.bar() for w, c in self.coords.items()}, self.basis)
        return self.bar_via_T()

    def bar_via_T(self) -> "HeckeElement":
        out: dict = {}
        for x, c in self.to_basis("T").coords.items():
            _scale_into(out, _bar_T(x), c.bar())
        return HeckeElement(self.r, out, "T")

    def text(self, pretty: bool = False) -> str:
        if not self.coords:
            return "0"
        name = {"T": "T", "C": "C", "C'": "C'"}[self.basis]
        parts = []
        for w in self.support():
            c = self.coords[w]
            parts.append(f"({c.pretty() if pretty else c.to_text()})*{name}[{sc.perm_text(w)}]")
        return " + ".join(parts)


def T(w: sc.Perm) -> HeckeElement:
    return HeckeElement.basis_element(w, "T")


def upper(w: sc.Perm) -> HeckeElement:
    """C_w."""
    return HeckeElement.basis_element(w, "C")


def lower(w: sc.Perm) -> HeckeElement:
    """C'_w."""
    return HeckeElement.basis_element(w, "C'")


def kl_basis(w: sc.Perm, kind: str) -> HeckeElement:
    """C_w (``kind="upper"``) or C'_w (``kind="lower"``) in the T-basis."""
    if kind == "upper":
        return upper(w).to_basis("T")
    if kind == "lower":
        return lower(w).to_basis("T")
    raise ValueError(f"unknown kind {kind!r}")


def multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a * b


def bar_hecke(a: HeckeElement) -> HeckeElement:
    return a.bar_via_T()


def generator(i: int, r: int) -> sc.Perm:
    return sc.simple(i, r)


# --------------------------------------------------------------------------
# Right action of generators through the closed forms
# --------------------------------------------------------------------------


def act_generator(x: HeckeElement, i: int) -> HeckeElement:
    """x C'_s (C'-basis input) or x C_s (C-basis input) via the mu closed form."""
    if x.basis == "T":
        raise ValueError("closed forms apply to the C or C' basis")
    table = kl_table(x.r)
    diag = _QINT2 if x.basis == "C'" else -_QINT2
    out: dict = {}
    for w, c in x.coords.items():
        if w[i - 1] > w[i]:
            _add_into(out, w, c * diag)
            continue
        for w2, m in table.mu_neighbors(w):
            if w2[i - 1] > w2[i]:
                _add_into(out, w2, c * m)
    return HeckeElement(x.r, out, x.basis)


def right_action_check(w: sc.Perm, i: int) -> bool:
    """Compare C'_w C'_s and C_w C_s with their closed forms."""
    r = len(w)
    s = sc.simple(i, r)
    ok_lower = (lower(w) * lower(s)).to_basis("C'") == act_generator(lower(w), i)
    ok_upper = (upper(w) * upper(s)).to_basis("C") == act_generator(upper(w), i)
    return ok_lower and ok_upper


# --------------------------------------------------------------------------
# Slow oracle: the canonical basis straight from bar-invariance
# --------------------------------------------------------------------------


def bar_matrix(r: int) -> ExactMatrix:
    """R with bar(T_x) = sum_y R[y, x] T_y, rows/cols in ``permutations(r)`` order."""
    perms = sc.permutations(r)
    idx = {w: i for i, w in enumerate(perms)}
    R = ExactMatrix.zeros(len(perms), len(perms))
    for x in perms:
        for y, c in _bar_T(x).items():
            R[idx[y], idx[x]] = c
    return R


def canonical_basis_oracle(r: int, kind: str = "lower") -> dict[sc.Perm, dict[sc.Perm, RationalFunction]]:
    """Every C'_w (or C_w) in the T-basis, computed without the KL recursion."""
    perms = sc.permutations(r)
    P = bar_correct(bar_matrix(r), "negative" if kind == "lower" else "positive")
    return {w: {x: P[i, j] for i, x in enumerate(perms) if P[i, j]} for j, w in enumerate(perms)}


# --------------------------------------------------------------------------
# Left multiplication in the KL bases
# --------------------------------------------------------------------------


def _left_descent(w: sc.Perm, i: int) -> bool:
    """s_i in L(w), i.e. s_i w < w: i+1 appears before i in w."""
    return w.index(i + 1) < w.index(i)


def left_act_generator(x: HeckeElement, i: int) -> HeckeElement:
    """C'_s x (C'-basis input) or C_s x (C-basis input) via the mu closed form."""
    if x.basis == "T":
        raise ValueError("closed forms apply to the C or C' basis")
    table = kl_table(x.r)
    diag = _QINT2 if x.basis == "C'" else -_QINT2
    out: dict = {}
    for w, c in x.coords.items():
        if _left_descent(w, i):
            _add_into(out, w, c * diag)
            continue
        for w2, m in table.mu_neighbors(w):
            if _left_descent(w2, i) and table.mu(w2, w):
                _add_into(out, w2, c * m)
    return HeckeElement(x.r, out, x.basis)


def left_mul_T(x: HeckeElement, i: int) -> HeckeElement:
    """T_s x, using T_s = C_s + u = C'_s - u^-1."""
    if x.basis == "T":
        return (T(sc.simple(i, x.r)) * x)
    shift = _U if x.basis == "C" else -_UI
    return left_act_generator(x, i) + x.scale(shift)


def left_mul_parabolic_longest(x: HeckeElement, zeta: tuple[int, ...]) -> HeckeElement:
    """C'_{w0(J_zeta)} x, one Horner product over coset representatives per block."""
    start = 1
    for m in zeta:
        gens = list(range(start, start + m - 1))
        # C'_{w0(S_m)} = C'_{w0(S_{m-1})} X_m with X_m = sum_e u^{l(e)-(m-1)} T_e
        for top in range(len(gens), 0, -1):
            y = x
            for g in gens[:top]:
                y = x + left_mul_T(y, g).scale(_U)
            x = y.scale(RF.monomial(-top))
        start += m
    return x
