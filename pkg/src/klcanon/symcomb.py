"""Permutations, words, partitions and tableaux.

Conventions
-----------
* A permutation ``w`` is its one-line notation ``(w(1), ..., w(r))``.
  Products compose as functions: ``(v w)(j) = v(w(j))``.
* Permutations act on words on the right by position:
  ``(k . w)_j = k_{w(j)}``; in particular ``k . s_i`` swaps positions i, i+1
  and the word ``12...r`` acted on by ``w`` is the one-line notation of w.
* Tableaux are in English notation, rows listed top to bottom.

>>> rsk((2, 1, 1))
(Tableau(rows=((1, 1), (2,))), Tableau(rows=((1, 3), (2,))))
>>> coset_reps((1, 2, 1))
((1, 3, 2), (2, 3, 1))
>>> str(Tableau.parse("12/3").transpose())
'13/2'
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

Perm = tuple[int, ...]
Word = tuple[int, ...]
Partition = tuple[int, ...]

__all__ = [
    "Perm",
    "Word",
    "Partition",
    "Tableau",
    "identity",
    "simple",
    "compose",
    "inverse",
    "length",
    "right_descents",
    "left_descents",
    "longest",
    "reduced_word",
    "bruhat_leq",
    "permutations",
    "act",
    "sort_word",
    "content",
    "reverse",
    "standardize",
    "parabolic_generators",
    "coset_reps",
    "words",
    "words_of_content",
    "compositions",
    "partitions",
    "conjugate",
    "dominance_leq",
    "dominates_strictly",
    "rsk",
    "inverse_rsk",
    "perm_rsk",
    "superstandard",
    "standard_tableaux",
    "semistandard_tableaux",
    "evacuation",
    "descent_set_upper",
    "descent_set_lower",
    "dual_knuth_graph",
    "last_letter_cmp",
    "last_letter_key",
    "sorted_syt",
    "restrict",
    "parse_perm",
    "perm_text",
    "parse_partition",
    "partition_text",
]


# --------------------------------------------------------------------------
# Permutations
# --------------------------------------------------------------------------


def identity(r: int) -> Perm:
    return tuple(range(1, r + 1))


def simple(i: int, r: int) -> Perm:
    """The simple transposition s_i in S_r (1 <= i < r)."""
    w = list(range(1, r + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def compose(v: Perm, w: Perm) -> Perm:
    """The product v w, i.e. j -> v(w(j))."""
    return tuple(v[j - 1] for j in w)


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, x in enumerate(w, 1):
        out[x - 1] = i
    return tuple(out)


def length(w: Sequence[int]) -> int:
    """Number of inversions (pairs i < j with w_i > w_j); also works on words."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def right_descents(w: Perm) -> frozenset[int]:
    """R(w) = {i : w s_i < w}, as generator indices."""
    return frozenset(i for i in range(1, len(w)) if w[i - 1] > w[i])


def left_descents(w: Perm) -> frozenset[int]:
    return right_descents(inverse(w))


def longest(r: int) -> Perm:
    return tuple(range(r, 0, -1))


def reduced_word(w: Perm) -> tuple[int, ...]:
    """A reduced word (i_1, ..., i_m) with w = s_{i_1} ... s_{i_m}."""
    w = list(w)
    out: list[int] = []
    # peel right descents: w = w' s_i with w' = w s_i shorter
    while True:
        for i in range(1, len(w)):
            if w[i - 1] > w[i]:
                w[i - 1], w[i] = w[i], w[i - 1]
                out.append(i)
                break
        else:
            break
    return tuple(reversed(out))


def bruhat_leq(x: Perm, w: Perm) -> bool:
    """Bruhat order via the rank-matrix (tableau) criterion."""
    r = len(x)
    for i in range(1, r + 1):
        a = sorted(x[:i])
        b = sorted(w[:i])
        if any(p > q for p, q in zip(a, b)):
            return False
    return True


def permutations(r: int) -> list[Perm]:
    """All of S_r, sorted by (length, one-line notation)."""
    return sorted(itertools.permutations(range(1, r + 1)), key=lambda w: (length(w), w))


def parse_perm(text: str) -> Perm:
    text = text.strip()
    if "," in text:
        return tuple(int(x) for x in text.split(","))
    return tuple(int(c) for c in text)


def perm_text(w: Sequence[int]) -> str:
    if all(x < 10 for x in w):
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


# --------------------------------------------------------------------------
# Words
# --------------------------------------------------------------------------


def act(k: Sequence[int], w: Perm) -> Word:
    """Right action of a permutation on a word: (k.w)_j = k_{w(j)}."""
    return tuple(k[j - 1] for j in w)


def sort_word(k: Sequence[int]) -> Word:
    return tuple(sorted(k))


def content(k: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    n = max(k, default=0) if n is None else n
    out = [0] * n
    for x in k:
        out[x - 1] += 1
    return tuple(out)


def reverse(k: Sequence[int]) -> Word:
    """k-dagger: the reversed word."""
    return tuple(reversed(k))


def standardize(k: Sequence[int]) -> Perm:
    """The permutation d with sort(k) . d = k of minimal length."""
    order = sorted(range(len(k)), key=lambda j: (k[j], j))
    d = [0] * len(k)
    for rank, j in enumerate(order, 1):
        d[j] = rank
    return tuple(d)


def parabolic_generators(zeta: Sequence[int]) -> frozenset[int]:
    """J_zeta = {s_i : i, i+1 in the same block of sizes zeta}."""
    out = set()
    start = 1
    for z in zeta:
        out.update(range(start, start + z - 1))
        start += z
    return frozenset(out)


def _longest_parabolic(zeta: Sequence[int]) -> Perm:
    w: list[int] = []
    start = 1
    for z in zeta:
        w.extend(range(start + z - 1, start - 1, -1))
        start += z
    return tuple(w)


def coset_reps(k: Sequence[int]) -> tuple[Perm, Perm]:
    """(d(k), D(k)): minimal and maximal w in the coset with sort(k) . w = k."""
    d = standardize(k)
    zeta = [c for c in content(k) if c]
    return d, compose(_longest_parabolic(zeta), d)


def words(n: int, r: int) -> Iterator[Word]:
    return itertools.product(range(1, n + 1), repeat=r)


def words_of_content(zeta: Sequence[int]) -> list[Word]:
    """All words of the given content, sorted by (inversions, lexicographic)."""
    base = tuple(i + 1 for i, z in enumerate(zeta) for _ in range(z))
    ws = set(itertools.permutations(base))
    return sorted(ws, key=lambda k: (length(k), k))


def compositions(r: int, n: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of r into n parts."""
    if n == 1:
        yield (r,)
        return
    for a in range(r, -1, -1):
        for rest in compositions(r - a, n - 1):
            yield (a,) + rest


# --------------------------------------------------------------------------
# Partitions
# --------------------------------------------------------------------------


def partitions(r: int, max_parts: int | None = None) -> list[Partition]:
    """Partitions of r in reverse lexicographic order."""
    out: list[Partition] = []

    def rec(rem: int, cap: int, acc: list[int]):
        if rem == 0:
            out.append(tuple(acc))
            return
        if max_parts is not None and len(acc) >= max_parts:
            return
        for p in range(min(rem, cap), 0, -1):
            acc.append(p)
            rec(rem - p, p, acc)
            acc.pop()

    rec(r, r, [])
    return out


def conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0])) if lam else ()


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """lam ⊴ mu (same size assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def dominates_strictly(lam: Partition, mu: Partition) -> bool:
    """lam ▷ mu."""
    return lam != mu and dominance_leq(mu, lam)


def parse_partition(text: str) -> Partition:
    return tuple(int(x) for x in text.split(",") if x.strip())


def partition_text(lam: Partition) -> str:
    return ",".join(str(x) for x in lam)


# --------------------------------------------------------------------------
# Tableaux
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Tableau:
    """A Young tableau in English notation; ``rows`` top to bottom."""

    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def parse(cls, text: str) -> "Tableau":
        """Parse ``"124/3"`` or ``"1,2,10/3"``."""
        rows = []
        for part in text.strip().split("/"):
            if "," in part:
                rows.append(tuple(int(x) for x in part.split(",")))
            else:
                rows.append(tuple(int(c) for c in part))
        return cls(tuple(rows))

    def __str__(self) -> str:
        return "/".join(perm_text(r) for r in self.rows)

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def size(self) -> int:
        return sum(self.shape)

    def entries(self) -> list[int]:
        return [x for r in self.rows for x in r]

    def position(self, x: int) -> tuple[int, int]:
        """(row, column), 0-based, of the first occurrence of x."""
        for i, r in enumerate(self.rows):
            for j, y in enumerate(r):
                if y == x:
                    return i, j
        raise KeyError(x)

    def positions(self) -> dict[int, tuple[int, int]]:
        return {x: (i, j) for i, r in enumerate(self.rows) for j, x in enumerate(r)}

    def transpose(self) -> "Tableau":
        shape = self.shape
        if not shape:
            return self
        cols = conjugate(shape)
        return Tableau(tuple(tuple(self.rows[i][j] for i in range(cols[j])) for j in range(len(cols))))

    def is_semistandard(self) -> bool:
        for r in self.rows:
            if any(a > b for a, b in zip(r, r[1:])):
                return False
        for upper, lower in zip(self.rows, self.rows[1:]):
            if len(lower) > len(upper) or any(lower[j] <= upper[j] for j in range(len(lower))):
                return False
        return True

    def is_standard(self) -> bool:
        return self.is_semistandard() and sorted(self.entries()) == list(range(1, self.size() + 1))

    def restrict(self, k: int) -> "Tableau":
        """Q|_[k]: keep the entries <= k."""
        rows = tuple(tuple(x for x in r if x <= k) for r in self.rows)
        return Tableau(tuple(r for r in rows if r))

    def reading_word(self) -> Word:
        return tuple(x for r in reversed(self.rows) for x in r)


def restrict(Q: Tableau, k: int) -> Tableau:
    return Q.restrict(k)


def _row_insert(P: list[list[int]], x: int) -> int:
    """Insert x into P in place; return the row index of the new box."""
    for i, row in enumerate(P):
        # first entry strictly greater than x
        for j, y in enumerate(row):
            if y > x:
                row[j], x = x, y
                break
        else:
            row.append(x)
            return i
    P.append([x])
    return len(P) - 1


def rsk(k: Sequence[int]) -> tuple[Tableau, Tableau]:
    """Row-insertion RSK: (insertion tableau P(k), recording tableau Q(k))."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for t, x in enumerate(k, 1):
        i = _row_insert(P, x)
        if i == len(Q):
            Q.append([])
        Q[i].append(t)
    return Tableau(tuple(map(tuple, P))), Tableau(tuple(map(tuple, Q)))


@functools.lru_cache(maxsize=None)
def perm_rsk(w: Perm) -> tuple[Tableau, Tableau]:
    return rsk(w)


def inverse_rsk(P: Tableau, Q: Tableau) -> Word:
    """Inverse of rsk for a semistandard P and standard Q of the same shape."""
    if P.shape != Q.shape:
        raise ValueError("shape mismatch")
    Pr = [list(r) for r in P.rows]
    pos = Q.positions()
    out: list[int] = []
    for t in range(Q.size(), 0, -1):
        i, j = pos[t]
        x = Pr[i].pop(j)
        if j != len(Pr[i]):
            raise ValueError("Q is not standard")
        for row in reversed(Pr[:i]):
            # largest entry strictly smaller than x
            idx = max(jj for jj, y in enumerate(row) if y < x)
            row[idx], x = x, row[idx]
        out.append(x)
        while Pr and not Pr[-1]:
            Pr.pop()
    return tuple(reversed(out))


def superstandard(lam: Partition) -> Tableau:
    """Z_lambda: row i filled with the letter i."""
    return Tableau(tuple(tuple([i + 1] * p) for i, p in enumerate(lam)))


@functools.lru_cache(maxsize=None)
def standard_tableaux(lam: Partition) -> tuple[Tableau, ...]:
    """All SYT of shape lam (unordered; see sorted_syt)."""
    r = sum(lam)
    if r == 0:
        return (Tableau(()),)
    out = []
    for i in range(len(lam)):
        if lam[i] > (lam[i + 1] if i + 1 < len(lam) else 0):
            mu = list(lam)
            mu[i] -= 1
            mu_t = tuple(p for p in mu if p)
            for T in standard_tableaux(mu_t):
                rows = [list(rw) for rw in T.rows]
                if i == len(rows):
                    rows.append([])
                rows[i].append(r)
                out.append(Tableau(tuple(map(tuple, rows))))
    return tuple(out)


def semistandard_tableaux(lam: Partition, n: int) -> list[Tableau]:
    """SSYT of shape lam with entries in [n]."""
    cells = [(i, j) for i, p in enumerate(lam) for j in range(p)]
    out = []
    grid: dict[tuple[int, int], int] = {}

    def rec(idx: int):
        if idx == len(cells):
            out.append(Tableau(tuple(tuple(grid[(i, j)] for j in range(p)) for i, p in enumerate(lam))))
            return
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = max(lo, grid[(i, j - 1)])
        if i > 0:
            lo = max(lo, grid[(i - 1, j)] + 1)
        for x in range(lo, n + 1):
            grid[(i, j)] = x
            rec(idx + 1)
        grid.pop((i, j), None)

    rec(0)
    return out


def evacuation(Q: Tableau) -> Tableau:
    """Schützenberger involution Q -> Q-dagger of a standard tableau."""
    if not Q.is_standard():
        raise ValueError("evacuation needs a standard tableau")
    r = Q.size()
    rows = [list(rw) for rw in Q.rows]
    result: dict[tuple[int, int], int] = {}
    for t in range(r, 0, -1):
        # remove the minimum entry from the corner and slide
        i, j = 0, 0
        while True:
            right = rows[i][j + 1] if j + 1 < len(rows[i]) else None
            below = rows[i + 1][j] if i + 1 < len(rows) and j < len(rows[i + 1]) else None
            if right is None and below is None:
                break
            if below is None or (right is not None and right < below):
                rows[i][j] = right
                j += 1
            else:
                rows[i][j] = below
                i += 1
        rows[i].pop(j)
        if not rows[i]:
            rows.pop(i)
        result[(i, j)] = t
    shape = Q.shape
    return Tableau(tuple(tuple(result[(i, j)] for j in range(p)) for i, p in enumerate(shape)))


# --------------------------------------------------------------------------
# Descent sets, dual Knuth moves and the last-letter order
# --------------------------------------------------------------------------


def descent_set_upper(Q: Tableau) -> frozenset[int]:
    """R(C_Q) = {s_i : i+1 strictly south of i in Q}."""
    pos = Q.positions()
    return frozenset(i for i in range(1, Q.size()) if pos[i + 1][0] > pos[i][0])


def descent_set_lower(Q: Tableau) -> frozenset[int]:
    """R(C'_Q) = {s_i : i+1 strictly east of i in Q}."""
    pos = Q.positions()
    return frozenset(i for i in range(1, Q.size()) if pos[i + 1][1] > pos[i][1])


def _swap_entries(Q: Tableau, i: int) -> Tableau:
    swap = {i: i + 1, i + 1: i}
    return Tableau(tuple(tuple(swap.get(x, x) for x in r) for r in Q.rows))


@functools.lru_cache(maxsize=None)
def dual_knuth_graph(lam: Partition) -> tuple[tuple[Tableau, Tableau, int, bool], ...]:
    """Dual Knuth edges on SYT(lam) as (Q, Q', i, initial) with Q' = Q with i, i+1 swapped.

    An edge comes from an elementary Knuth move w -> w s_i on a permutation
    with fixed insertion tableau; it swaps the entries i, i+1 of the
    recording tableau.  It is initial when both endpoints meet
    {s_(i-1), s_i} in exactly one right descent.
    """
    r = sum(lam)
    syt = standard_tableaux(lam)
    if not syt or r < 3:
        return ()
    P = syt[0]
    edges = []
    seen = set()
    for Q in syt:
        w = inverse_rsk(P, Q)
        for i in range(1, r):
            a, b = w[i - 1], w[i]
            lo, hi = min(a, b), max(a, b)
            ok = (i >= 2 and lo < w[i - 2] < hi) or (i + 1 <= r - 1 and lo < w[i + 1] < hi)
            if not ok:
                continue
            w2 = list(w)
            w2[i - 1], w2[i] = w2[i], w2[i - 1]
            P2, Q2 = rsk(w2)
            assert P2 == P and Q2 == _swap_entries(Q, i)
            key = frozenset((Q, Q2))
            if key in seen:
                continue
            seen.add(key)
            window = {i - 1, i}
            d1 = len(descent_set_upper(Q) & window)
            d2 = len(descent_set_upper(Q2) & window)
            edges.append((Q, Q2, i, d1 == 1 and d2 == 1))
    return tuple(edges)


def last_letter_cmp(Qp: Tableau, Q: Tableau) -> tuple[int, int | None]:
    """Compare in the total order ⊴ on SYT(lam).

    Returns (sign, k) with sign -1 if Qp ◁ Q, 0 if equal, +1 if Qp ▷ Q, and
    k = k(Qp, Q) the largest entry sitting in different positions.
    """
    if Qp.shape != Q.shape:
        raise ValueError("shape mismatch")
    if Qp == Q:
        return 0, None
    pa, pb = Qp.positions(), Q.positions()
    k = max(x for x in pa if pa[x] != pb[x])
    sa, sb = Qp.restrict(k - 1).shape, Q.restrict(k - 1).shape
    return (-1 if dominance_leq(sb, sa) else 1), k


def last_letter_key(Q: Tableau) -> tuple:
    """Sort key realising ⊴ (increasing).

    Entries are read from r down to 1; an entry in a lower row comes first.
    """
    pos = Q.positions()
    return tuple(-pos[x][0] for x in range(Q.size(), 0, -1))


def sorted_syt(lam: Partition) -> list[Tableau]:
    """SYT(lam) listed increasingly in the order ⊴."""
    return sorted(standard_tableaux(lam), key=last_letter_key)


def last_letter_order(Qp: Tableau, Q: Tableau) -> tuple[str, int | None]:
    """('less' | 'equal' | 'greater', k(Qp, Q)) in the order ⊴.

    >>> last_letter_order(Tableau.parse("123/4"), Tableau.parse("134/2"))
    ('less', 4)
    """
    sign, k = last_letter_cmp(Qp, Q)
    return {-1: "less", 0: "equal", 1: "greater"}[sign], k
