"""Arc diagrams of {1,2}-words and closed forms for the two-row case (n = 2).

A word is read with 2 as "(" and 1 as ")"; matched pairs are arcs.  A word is
Yamanouchi when every 2 is matched.  Lower canonical basis elements are indexed
through the reversed word: ``c'_{k†}`` with ``k† = reverse(k)``, so the
expansions below are dicts ``{k': coefficient}`` standing for
``sum coefficient * c'_{k'†}``.

>>> d = build_diagram((2, 2, 2, 1, 1, 2, 1, 1, 2, 1, 1, 1, 2))
>>> d.arcs
((1, 8), (2, 5), (3, 4), (6, 7), (9, 10))
>>> d.unpaired_ones, d.unpaired_twos
((11, 12), (13,))
>>> sorted((sc.perm_text(k), c.pretty()) for k, c in E1_lower_closed_form((2, 1, 1, 2, 1, 1)).items())
[('111211', '1'), ('211111', '[2]')]
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from . import projection
from . import specht
from . import symcomb as sc
from . import tensorrep as tr
from .exactalg import RationalFunction, qint

RF = RationalFunction
_ONE = RF(1)


# --------------------------------------------------------------------------
# Diagrams and crystal moves
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ArcDiagram:
    """Parenthesis matching of a {1,2}-word; positions are 1-based."""

    word: sc.Word
    arcs: tuple[tuple[int, int], ...]
    unpaired_ones: tuple[int, ...]
    unpaired_twos: tuple[int, ...]

    @property
    def t(self) -> int:
        """Number of unpaired 1s."""
        return len(self.unpaired_ones)

    @property
    def is_yamanouchi(self) -> bool:
        return not self.unpaired_twos

    @property
    def content(self) -> tuple[int, int]:
        return (self.word.count(1), self.word.count(2))

    @property
    def l(self) -> int:
        a, b = self.content
        return a - b

    def well_formed(self) -> bool:
        """Arcs nest without crossing and the unmatched letters read 1...12...2."""
        for a, b in self.arcs:
            if self.word[a - 1] != 2 or self.word[b - 1] != 1:
                return False
            for c, d in self.arcs:
                if a < c < b < d:
                    return False
        rest = [self.word[p - 1] for p in sorted(self.unpaired_ones + self.unpaired_twos)]
        return rest == sorted(rest)

    def text(self) -> str:
        """Three-line rendering: the word, the arc index over each position, the arc list."""
        r = len(self.word)
        width = max(2, len(str(r)), len(str(len(self.arcs))))
        marks = ["."] * r
        for idx, (a, b) in enumerate(self.arcs, 1):
            marks[a - 1] = marks[b - 1] = str(idx)
        lines = [
            "pos  " + " ".join(str(p).rjust(width) for p in range(1, r + 1)),
            "word " + " ".join(str(x).rjust(width) for x in self.word),
            "arc  " + " ".join(m.rjust(width) for m in marks),
            "arcs " + " ".join(f"{i}=({a},{b})" for i, (a, b) in enumerate(self.arcs, 1)),
            "unpaired 1s " + (",".join(map(str, self.unpaired_ones)) or "-")
            + "  unpaired 2s " + (",".join(map(str, self.unpaired_twos)) or "-"),
        ]
        return "\n".join(lines)


def _check_word(k: Sequence[int]) -> sc.Word:
    k = tuple(k)
    if any(x not in (1, 2) for x in k):
        raise ValueError(f"{k} is not a word over {{1,2}}")
    return k


@functools.lru_cache(maxsize=None)
def build_diagram(k: Sequence[int]) -> ArcDiagram:
    """Stack matching with 2 = "(" and 1 = ")".

    >>> build_diagram((2, 1)).arcs, build_diagram((1, 2)).unpaired_ones
    (((1, 2),), (1,))
    """
    k = _check_word(k)
    stack: list[int] = []
    arcs = []
    ones = []
    for p, x in enumerate(k, 1):
        if x == 2:
            stack.append(p)
        elif stack:
            arcs.append((stack.pop(), p))
        else:
            ones.append(p)
    return ArcDiagram(k, tuple(sorted(arcs)), tuple(ones), tuple(stack))


def is_yamanouchi(k: Sequence[int]) -> bool:
    """
    >>> is_yamanouchi((1, 2, 1, 2)), is_yamanouchi((2, 1, 1, 2, 1, 1, 1))
    (False, True)
    """
    return build_diagram(tuple(k)).is_yamanouchi


def _set(k: sc.Word, p: int, x: int) -> sc.Word:
    return k[: p - 1] + (x,) + k[p:]


def F_flip(k: Sequence[int], j: int) -> sc.Word:
    """F_(j)(k): the j-th unpaired 1 from the left replaced by 2."""
    d = build_diagram(tuple(k))
    if not 1 <= j <= d.t:
        raise ValueError(f"{k} has {d.t} unpaired 1s, asked for number {j}")
    return _set(d.word, d.unpaired_ones[j - 1], 2)


def crystal_F1(k: Sequence[int]) -> sc.Word | None:
    """Rightmost unpaired 1 replaced by 2; None when there is none."""
    d = build_diagram(tuple(k))
    return _set(d.word, d.unpaired_ones[-1], 2) if d.unpaired_ones else None


def crystal_E1(k: Sequence[int]) -> sc.Word | None:
    """Leftmost unpaired 2 replaced by 1; None when there is none."""
    d = build_diagram(tuple(k))
    return _set(d.word, d.unpaired_twos[0], 1) if d.unpaired_twos else None


def yamanouchi_words(lam: Sequence[int]) -> list[sc.Word]:
    """Yamanouchi words of content lam = (lam1, lam2), lam1 >= lam2."""
    lam = tuple(lam) + (0,) * (2 - len(lam))
    return [k for k in sc.words_of_content(lam) if is_yamanouchi(k)]


# --------------------------------------------------------------------------
# Closed forms for F_1 on c and E_1 on c'
# --------------------------------------------------------------------------


def F1_upper_closed_form(k: Sequence[int]) -> list[tuple[RationalFunction, sc.Word]]:
    """F_1 c_k = sum_{j=1}^t [j] c_{F_(j)(k)}.

    >>> [(c.pretty(), sc.perm_text(w)) for c, w in F1_upper_closed_form((1, 1, 1))]
    [('1', '211'), ('[2]', '121'), ('[3]', '112')]
    """
    d = build_diagram(tuple(k))
    return [(RF.coerce(qint(j)), F_flip(d.word, j)) for j in range(1, d.t + 1)]


def alpha(kp: Sequence[int], k: Sequence[int]) -> int:
    """The j with F_(j)(k') = k, or 0."""
    kp, k = tuple(kp), tuple(k)
    d = build_diagram(kp)
    for j, p in enumerate(d.unpaired_ones, 1):
        if _set(kp, p, 2) == k:
            return j
    return 0


def E1_lower_closed_form(k: Sequence[int]) -> dict[sc.Word, RationalFunction]:
    """E_1 c'_{k†} = sum [alpha(k', k)] c'_{k'†}, as {k': [alpha]}."""
    k = _check_word(k)
    out = {}
    for p, x in enumerate(k, 1):
        if x == 2:
            kp = _set(k, p, 1)
            a = alpha(kp, k)
            if a:
                out[kp] = RF.coerce(qint(a))
    return out


def _E1_lower_expansion(x: dict) -> dict:
    out: dict = {}
    for k, c in x.items():
        for kp, a in E1_lower_closed_form(k).items():
            _add_into(out, kp, a * c)
    return out


def f_operator(x: dict) -> dict:
    """f(sum a_j c'_{j†}) = sum a_j c'_{F~1(j)†}, dropping terms with F~1 undefined."""
    out: dict = {}
    for j, c in x.items():
        fj = crystal_F1(j)
        if fj is not None:
            _add_into(out, fj, c)
    return out


def R_inverse(x: dict) -> dict:
    """c'_{j†} -> c'_{(j1)†}: append a final 1 to each index word."""
    return {j + (1,): c for j, c in x.items()}


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


# --------------------------------------------------------------------------
# Projection onto the H_{J†}-isotypic component of the cell module
# --------------------------------------------------------------------------


def _two_row(k: sc.Word) -> tuple[int, int]:
    d = build_diagram(k)
    if not d.is_yamanouchi:
        raise ValueError(f"{sc.perm_text(k)} is not Yamanouchi")
    return d.content


def _restrict_to_cell(x: dict, lam: tuple[int, int]) -> dict:
    """Drop c'_{m†} with m outside the cell of lam, after checking sh(m) ▷ lam."""
    padded = (tuple(lam) + (0, 0))[:2]
    shape = tuple(x for x in padded if x)
    out = {}
    for m, c in x.items():
        if sc.content(m, 2) == padded and is_yamanouchi(m):
            out[m] = c
        elif not sc.dominates_strictly(projection.word_shape(m), shape):
            raise ArithmeticError(f"term c'_{sc.perm_text(m)}† is neither in the cell of {lam} nor above it")
    return out


def projected_lower_coefficients(k: Sequence[int]) -> dict[sc.Word, RationalFunction]:
    """(C~'_{Q(k)†})^{J†} as {k': coefficient of c'_{k'†}}, k' Yamanouchi of the same content.

    >>> x = projected_lower_coefficients((2, 1, 1, 2, 1, 1, 1))
    >>> sorted((sc.perm_text(k), c.pretty()) for k, c in x.items())
    [('1112121', '-1/[4]'), ('2111121', '-[2]/[4]'), ('2112111', '1')]
    """
    k = _check_word(k)
    lam = _two_row(k)
    head = k[:-1]
    # lam^1 = (lam1 - 1, lam2) must itself be a partition for the top case
    top = tuple(x for x in (lam[0] - 1, lam[1]) if x) if lam[0] > lam[1] else None
    if not k or projection.word_shape(head) != top:
        return {k: _ONE}
    corr = R_inverse(f_operator(_E1_lower_expansion({head: _ONE})))
    scale = -_ONE / RF.coerce(qint(lam[0] - lam[1] + 1))
    out = {k: _ONE}
    for m, c in corr.items():
        _add_into(out, m, c * scale)
    return _restrict_to_cell(out, lam)


def _lower_element(x: dict, r: int) -> tr.TensorElement:
    return tr.TensorElement(2, r, {sc.reverse(m): c for m, c in x.items()}, "lower")


def projected_lower_tworow(k: Sequence[int]) -> tr.TensorElement:
    """The closed form, in the lower canonical basis of the tensor cell."""
    k = _check_word(k)
    return _lower_element(projected_lower_coefficients(k), len(k))


def generic_projected_lower(k: Sequence[int]) -> dict[sc.Word, RationalFunction]:
    """Same element from the generic machinery.

    Splits c'_{k†} by the first tensor factor (H_{J†} acts on factors 2..r),
    projects each slice onto the isotypic component of shape sh(k|_{r-1}) in
    rank r-1, then keeps the cell terms.
    """
    k = _check_word(k)
    lam = _two_row(k)
    r = len(k)
    if r <= 1:
        return {k: _ONE}
    mu = projection.word_shape(k[:-1])
    x = tr.canonical_basis(sc.reverse(k), "lower", 2).coords
    total: dict = {}
    for a in (1, 2):
        tail = {m[1:]: c for m, c in x.items() if m[0] == a}
        if not tail:
            continue
        y = projection.isotypic_project(tr.TensorElement(2, r - 1, tail, "monomial"), mu).monomial()
        for m, c in y.coords.items():
            _add_into(total, (a,) + m, c)
    lower = tr.TensorElement(2, r, total, "monomial").to_basis("lower")
    return _restrict_to_cell({sc.reverse(m): c for m, c in lower.coords.items()}, lam)


# --------------------------------------------------------------------------
# Relabelling to the Specht module M_lam
# --------------------------------------------------------------------------


def cell_label(k: Sequence[int], parabolic: str = "J†") -> sc.Tableau:
    """Label of c'_{k†} in M_lam: Q(k)† for J† (the cell identification), Q(k) after conjugating to J."""
    Q = sc.rsk(tuple(k))[1]
    if parabolic == "J†":
        return sc.evacuation(Q)
    if parabolic == "J":
        return Q
    raise ValueError(f"unknown parabolic {parabolic!r}")


def relabel(x: dict, parabolic: str = "J†") -> dict[sc.Tableau, RationalFunction]:
    return {cell_label(m, parabolic): c for m, c in x.items()}


def cell_action_matches(lam: Sequence[int]) -> bool:
    """The action of C'_{s_i} on the tensor cell of lam equals the C' action on M_lam under c'_{k†} -> C'_{Q(k)†}."""
    lam = tuple(lam)
    m = specht.canonical_module(lam, "lower")
    r = sum(lam)
    for k in yamanouchi_words(lam):
        col = m.index[cell_label(k)]
        x = tr.canonical_basis(sc.reverse(k), "lower", 2)
        for i in range(1, r):
            y = (x.act_T(i) + x.scale(RF.monomial(-1))).to_basis("lower")
            got = relabel(_restrict_to_cell({sc.reverse(w): c for w, c in y.coords.items()}, lam))
            want = {Q: m.action[i][m.index[Q], col] for Q in m.labels}
            want = {Q: c for Q, c in want.items() if c}
            if got != want:
                return False
    return True


# --------------------------------------------------------------------------
# Checks against the generic actions
# --------------------------------------------------------------------------


def check_F1_upper(k: Sequence[int]) -> bool:
    k = _check_word(k)
    x = tr.canonical_basis(k, "upper", 2)
    got = tr.uq_act("F", 1, x).to_basis("upper").coords
    want = {w: c for c, w in F1_upper_closed_form(k)}
    return got == want


def check_E1_lower(k: Sequence[int]) -> bool:
    k = _check_word(k)
    x = tr.canonical_basis(sc.reverse(k), "lower", 2)
    got = tr.uq_act("E", 1, x).to_basis("lower").coords
    want = {sc.reverse(m): c for m, c in E1_lower_closed_form(k).items()}
    return got == want


def check_projection(k: Sequence[int]) -> bool:
    return projected_lower_coefficients(k) == generic_projected_lower(k)


def check_projection_specht(k: Sequence[int]) -> bool:
    """Closed form after the J relabelling equals the parabolic projection in M_lam for J = J_(r-1)."""
    k = _check_word(k)
    lam = _two_row(k)
    r = len(k)
    m = specht.canonical_module(lam, "lower")
    vec = specht.parabolic_project(m, cell_label(k, "J"), r - 1)
    want = {Q: c for Q, c in zip(m.labels, vec) if c}
    return relabel(projected_lower_coefficients(k), "J") == want


def two_row_shapes(r: int) -> list[tuple[int, int]]:
    return [(r - b, b) for b in range(r // 2 + 1)]


def crosscheck(r: int, specht_limit: int = 6) -> list[str]:
    """All two-row checks at rank r; returns the failing items (empty list = pass)."""
    failures = []
    for k in sc.words(2, r):
        if not build_diagram(k).well_formed():
            failures.append(f"diagram {sc.perm_text(k)}")
        if not check_F1_upper(k):
            failures.append(f"F1 upper {sc.perm_text(k)}")
        if not check_E1_lower(k):
            failures.append(f"E1 lower {sc.perm_text(k)}")
    for lam in two_row_shapes(r):
        for k in yamanouchi_words(lam):
            if not check_projection(k):
                failures.append(f"projection {sc.perm_text(k)}")
            if r <= specht_limit and not check_projection_specht(k):
                failures.append(f"specht projection {sc.perm_text(k)}")
        if r <= specht_limit and not cell_action_matches(lam):
            failures.append(f"cell action {lam}")
    return failures


def crystal_string_consistent(k: Sequence[int]) -> bool:
    """F~1 applied t times empties the unpaired 1s; E~1 undoes each step."""
    k = _check_word(k)
    t = build_diagram(k).t
    cur = k
    for _ in range(t):
        nxt = crystal_F1(cur)
        if nxt is None or crystal_E1(nxt) != cur:
            return False
        cur = nxt
    return crystal_F1(cur) is None

