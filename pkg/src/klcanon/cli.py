"""Command-line driver: computations, verification suites and table emitters.

Exit codes: 0 when every theorem check passes, 1 on a theorem violation,
2 on a usage error or when a resource bound stops a suite early.

>>> rep = run_suite("dke", {"r": 4})
>>> rep.passed, [c["status"] for c in rep.checks][:2]
(True, ['pass', 'pass'])
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from . import hecke
from . import projection
from . import specht
from . import symcomb as sc
from . import tensorrep as tr
from . import tworow
from .exactalg import (
    ExactMatrix,
    GcdNormalizer,
    LabeledMatrix,
    RationalFunction,
    eval_at_infinity,
    eval_at_zero,
    mu_leading,
    normalize_gcd,
    qfactorial,
)

__all__ = ["GcdNormalizer", "VerificationReport", "normalize_gcd", "run_suite", "main"]

RF = RationalFunction
SCHEMA = "klcanon-report/1"

# default rank bounds: Hecke-wide work, n = 2 tensor work, pure combinatorics
HECKE_BOUND = 6
TENSOR_BOUND = 8
COMBINATORIAL_BOUND = 9
BOUNDS = {"hecke": HECKE_BOUND, "tensor": TENSOR_BOUND, "combinatorial": COMBINATORIAL_BOUND}


class ResourceBoundError(RuntimeError):
    pass


# --------------------------------------------------------------------------
# Reports
# --------------------------------------------------------------------------


@dataclass
class VerificationReport:
    suite: str
    kind: str
    params: dict
    checks: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)
    aborted: str | None = None
    schema: str = SCHEMA

    @property
    def passed(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    @property
    def theorem_violation(self) -> bool:
        return self.kind == "theorem" and not self.passed

    def as_dict(self, with_timing: bool = True) -> dict:
        out = {
            "schema": self.schema,
            "version": __version__,
            "suite": self.suite,
            "kind": self.kind,
            "params": self.params,
            "checks": self.checks,
            "aborted": self.aborted,
            "passed": self.passed,
        }
        if with_timing:
            out["timing"] = self.timing
        return out

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.as_dict(with_timing), indent=2, sort_keys=True)


def _check(name: str, ok: bool, witness: str = "") -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "witness": "" if ok else witness}


def _report(name: str, holds: bool, value: str = "") -> dict:
    return {"name": name, "status": "reported", "holds": bool(holds), "value": value}


def _label(x) -> str:
    if isinstance(x, sc.Tableau):
        return str(x)
    if isinstance(x, tuple):
        return sc.perm_text(x)
    return str(x)


def _value_text(f) -> str:
    return RF.coerce(f).pretty()


# --------------------------------------------------------------------------
# Suite items (module level so that worker processes can pickle them)
# --------------------------------------------------------------------------


def _in_K0_Kinf(f) -> bool:
    return eval_at_zero(f) is not None and eval_at_infinity(f) is not None


def _identity_at(M: LabeledMatrix, at: Callable) -> str:
    """Empty string if M is the identity at the point, else a witness."""
    for a, b, f in M.entries():
        want = 1 if a == b else 0
        if at(f) != want:
            return f"({_label(a)},{_label(b)}) = {_value_text(f)}"
    return ""


def item_s_matrix(lam: tuple) -> list:
    res = specht.S_matrix(lam)
    S = res.S
    tag = sc.partition_text(lam)
    bad_bar = [(a, b) for a, b, f in S.entries() if f and not f.is_bar_invariant()]
    bad_k = [(a, b) for a, b, f in S.entries() if f and not _in_K0_Kinf(f)]
    w0 = _identity_at(S, eval_at_zero)
    winf = _identity_at(S, eval_at_infinity)
    return [
        _check(f"S{tag} bar-invariant", not bad_bar, str(bad_bar[:1])),
        _check(f"S{tag} in K0 ∩ K∞", not bad_k, str(bad_k[:1])),
        _check(f"S{tag} = I at u=0", not w0, w0),
        _check(f"S{tag} = I at u=∞", not winf, winf),
        _check(f"S{tag} intertwines", specht.intertwines(lam)),
        _check(f"T{tag} seminormal", specht.check_seminormal(lam, "upper")),
        _check(f"T'{tag} seminormal", specht.check_seminormal(lam, "lower")),
    ]


def projected_transition_witnesses(r: int, kind: str) -> dict:
    """Violations of unitriangularity, bar-invariance, K0 ∩ K∞, identity at 0 and ∞, and the mu rule."""
    M = projection.transition_Ttilde(r, kind)
    sh = {w: hecke.shape(w) for w in M.cols}
    P = {w: sc.perm_rsk(w)[0] for w in M.cols}
    R = {w: sc.right_descents(w) for w in M.cols}
    table = hecke.kl_table(r) if r > 1 else None
    sign = 1 if kind == "upper" else -1
    out = {k: [] for k in ("support", "bar", "K0Kinf", "zero", "infinity", "mu")}
    for wp, w, f in M.entries():
        tag = f"({sc.perm_text(wp)},{sc.perm_text(w)})"
        if wp == w:
            if f != RF(1):
                out["support"].append(tag)
            continue
        if f:
            if kind == "upper":
                ok = sc.dominates_strictly(sh[w], sh[wp])
            else:
                ok = sc.dominates_strictly(sc.conjugate(sh[wp]), sc.conjugate(sh[w]))
            if not ok:
                out["support"].append(tag)
            if not f.is_bar_invariant():
                out["bar"].append(tag)
            if not _in_K0_Kinf(f):
                out["K0Kinf"].append(tag)
                continue
            if eval_at_zero(f) != 0:
                out["zero"].append(tag)
            if eval_at_infinity(f) != 0:
                out["infinity"].append(tag)
        if table is not None and P[wp] != P[w] and R[wp] - R[w]:
            m = mu_leading(f) if f else Fraction(0)
            if m != sign * table.mu(wp, w):
                out["mu"].append(tag)
    return out


def item_projected_transition(r: int, kind: str) -> list:
    name = "T~" if kind == "upper" else "T~'"
    wit = projected_transition_witnesses(r, kind)
    labels = {
        "support": "unitriangular with dominance support",
        "bar": "bar-invariant",
        "K0Kinf": "in K0 ∩ K∞",
        "zero": "identity at u=0",
        "infinity": "identity at u=∞",
        "mu": "mu(T~) = ±mu on (iv) pairs",
    }
    return [_check(f"{name} r={r} {labels[k]}", not v, ", ".join(v[:3])) for k, v in wit.items()]


def duality_witnesses(n: int, r: int) -> list:
    """Pairs (k, l) where (c_k, c'_{l†}) or (c~_k, c~'_{l†}) differs from delta."""
    bad = []
    for zeta in sc.compositions(r, n):
        ws = sc.words_of_content(zeta)
        up = {k: tr.canonical_basis(k, "upper", n) for k in ws}
        low = {k: tr.canonical_basis(sc.reverse(k), "lower", n) for k in ws}
        pup = {k: projection.project_canonical(k, "upper", n).monomial() for k in ws}
        plow = {k: projection.project_canonical(sc.reverse(k), "lower", n).monomial() for k in ws}
        for k in ws:
            for l in ws:
                want = RF(1) if k == l else RF(0)
                if tr.bilinear_form(up[k], low[l]) != want:
                    bad.append(f"c {sc.perm_text(k)},{sc.perm_text(l)}")
                if tr.bilinear_form(pup[k], plow[l]) != want:
                    bad.append(f"c~ {sc.perm_text(k)},{sc.perm_text(l)}")
    return bad


def item_duality(n: int, r: int) -> list:
    bad = duality_witnesses(n, r)
    return [
        _check(f"(c_k, c'_l†) = δ n={n} r={r}", not any(b.startswith("c ") for b in bad), str(bad[:3])),
        _check(f"(c~_k, c~'_l†) = δ n={n} r={r}", not any(b.startswith("c~") for b in bad), str(bad[:3])),
    ]


def item_idempotent(r: int) -> list:
    shapes = sc.partitions(r)
    ps = {lam: projection.central_idempotent(lam, r) for lam in shapes}
    one = hecke.HeckeElement.one(r)
    total = hecke.HeckeElement.zero(r)
    for p in ps.values():
        total = total + p
    bar_bad = [lam for lam, p in ps.items() if p.bar() != p]
    orth_bad = []
    for i, lam in enumerate(shapes):
        for mu in shapes[i:]:
            prod = ps[lam] * ps[mu]
            want = ps[lam] if lam == mu else hecke.HeckeElement.zero(r)
            if prod != want:
                orth_bad.append((lam, mu))
    central_bad = []
    for lam, p in ps.items():
        for i in range(1, r):
            t = hecke.T(sc.simple(i, r))
            if t * p != p * t:
                central_bad.append((lam, i))
    proj_bad = []
    for w in sc.permutations(r):
        got = hecke.upper(w) * ps[hecke.shape(w)]
        if got != projection.hecke_projected_basis(w, "upper"):
            proj_bad.append(sc.perm_text(w))
    return [
        _check(f"sum p_λ = 1 r={r}", total == one),
        _check(f"p_λ bar-invariant r={r}", not bar_bad, str(bar_bad[:2])),
        _check(f"p_λ p_μ = δ p_λ r={r}", not orth_bad, str(orth_bad[:2])),
        _check(f"p_λ central r={r}", not central_bad, str(central_bad[:2])),
        _check(f"C_w p_sh(w) = C~_w r={r}", not proj_bad, str(proj_bad[:3])),
    ]


def item_tworow(r: int) -> list:
    bad = tworow.crosscheck(r)
    groups = {
        "arc diagrams well formed": "diagram",
        "F1 on c_k closed form": "F1 upper",
        "E1 on c'_k† closed form": "E1 lower",
        "projection closed form vs tensor oracle": "projection",
        "projection closed form vs Specht module": "specht projection",
        "cell action vs Specht module": "cell action",
    }
    return [
        _check(f"{label} r={r}", not [b for b in bad if b.startswith(prefix + " ")],
               ", ".join(b for b in bad if b.startswith(prefix + " "))[:200])
        for label, prefix in groups.items()
    ]


# property battery


def item_rsk(r: int) -> list:
    seen = set()
    ok_perm = True
    for w in sc.permutations(r):
        P, Q = sc.perm_rsk(w)
        if P.shape != Q.shape or not P.is_standard() or not Q.is_standard() or sc.inverse_rsk(P, Q) != w:
            ok_perm = False
        seen.add((P, Q))
    ok_perm = ok_perm and len(seen) == math.factorial(r)
    ok_words = True
    for k in sc.words(3, r):
        P, Q = sc.rsk(k)
        if not P.is_semistandard() or not Q.is_standard() or sc.inverse_rsk(P, Q) != k:
            ok_words = False
    return [_check(f"RSK bijective on S_{r}", ok_perm), _check(f"RSK round trip on [3]^{r}", ok_words)]


def item_bar(r: int) -> list:
    ok_h = all(hecke.T(w).bar().bar() == hecke.T(w) for w in sc.permutations(r))
    ok_c = all(hecke.upper(w).bar() == hecke.upper(w) and hecke.lower(w).bar() == hecke.lower(w)
               for w in sc.permutations(r))
    ok_t = all(tr.monomial(k, 2).bar().bar() == tr.monomial(k, 2) for k in sc.words(2, r))
    return [
        _check(f"bar involutive on H_{r}", ok_h),
        _check(f"C_w, C'_w bar-invariant r={r}", ok_c),
        _check(f"bar involutive on V^⊗{r} (n=2)", ok_t),
    ]


def item_kl_positivity(r: int) -> list:
    table = hecke.kl_table(r)
    bad = []
    for w in table.perms:
        for x in table.interval(w):
            if any(int(c) < 0 for c in table.classical(x, w).coeffs()):
                bad.append(f"{sc.perm_text(x)},{sc.perm_text(w)}")
    return [_check(f"KL polynomials nonnegative r={r}", not bad, str(bad[:3]))]


def item_cell_dominance(r: int) -> list:
    """Terms of C_w C_s stay in the right cell of w or move to strictly smaller shapes."""
    bad = []
    for w in sc.permutations(r):
        P, lam = sc.perm_rsk(w)[0], hecke.shape(w)
        for i in range(1, r):
            for wp in hecke.act_generator(hecke.upper(w), i).to_basis("C").coords:
                if sc.perm_rsk(wp)[0] != P and not sc.dominates_strictly(lam, hecke.shape(wp)):
                    bad.append(f"{sc.perm_text(w)}.C_{i} -> {sc.perm_text(wp)}")
    return [_check(f"cell dominance of C_w C_s r={r}", not bad, str(bad[:3]))]


def item_seminormal(r: int) -> list:
    return [
        _check(f"seminormal block structure {sc.partition_text(lam)} {kind}", specht.check_seminormal(lam, kind))
        for lam in sc.partitions(r)
        for kind in ("upper", "lower")
    ]


def dke_connected(lam: tuple) -> bool:
    syt = sc.standard_tableaux(lam)
    adj: dict = {Q: set() for Q in syt}
    for Q, Q2, _, initial in sc.dual_knuth_graph(lam):
        if initial:
            adj[Q].add(Q2)
            adj[Q2].add(Q)
    seen = {syt[0]}
    todo = [syt[0]]
    while todo:
        for Q2 in adj[todo.pop()]:
            if Q2 not in seen:
                seen.add(Q2)
                todo.append(Q2)
    return len(seen) == len(syt)


def item_dke(r: int) -> list:
    return [_check(f"initial dual Knuth graph connected {sc.partition_text(lam)}", dke_connected(lam))
            for lam in sc.partitions(r)]


# conjecture evidence


def item_positivity(lam: tuple) -> list:
    tag = sc.partition_text(lam)
    mats = {
        f"T{tag}": specht.seminormal_transition(lam, "upper"),
        f"T'{tag}^-1": specht.seminormal_transition(lam, "lower").inverse(),
        f"S{tag}": specht.S_matrix(lam).S,
    }
    out = []
    for name, M in mats.items():
        rep = specht.positivity_report(M)
        out.append(_report(f"{name} coefficientwise nonnegative", rep["coefficientwise"], _value_text(rep["D"])))
        out.append(_report(f"{name} nonnegative at samples", rep["sampled"]))
        if not name.startswith("S"):
            out.append(_report(f"D({name}) in A, sign-coherent", rep["D_in_A"] and rep["D_sign_coherent"],
                               _value_text(rep["D"])))
    return out


def item_normalizer(r: int) -> list:
    want = RF.coerce(qfactorial(r))
    out = []
    for kind, name in (("upper", "T~"), ("lower", "T~'")):
        D = normalize_gcd(projection.transition_Ttilde(r, kind)).D
        out.append(_report(f"D({name}) = ±[{r}]! r={r}", D in (want, -want), _value_text(D)))
    return out


def last_column(m: int) -> dict:
    """Last column of T'((m,m)): the label with odd entries in the first row."""
    lam = (m, m)
    T = specht.seminormal_transition(lam, "lower")
    Q = sc.Tableau((tuple(range(1, 2 * m, 2)), tuple(range(2, 2 * m + 1, 2))))
    return T.column(Q)


def power_of_minus_inverse_two(f) -> int | None:
    """e with f = (-1/[2])^e, else None."""
    f = RF.coerce(f)
    base = RF(-1) / RF.qint(2)
    g = RF(1)
    for e in range(0, 64):
        if f == g:
            return e
        g = g * base
    return None


def item_last_column(r: int) -> list:
    col = last_column(r // 2)
    exps = {str(Q): power_of_minus_inverse_two(c) for Q, c in col.items()}
    return [_report(f"last column of T'(({r // 2},{r // 2})) powers of -1/[2]",
                    all(e is not None for e in exps.values()), json.dumps(exps, sort_keys=True))]


ANOMALY = RF.qint(2) ** 3 * RF.qint(5) * (RF.qint(3) - RF(3))


def item_anomaly(r: int) -> list:
    M = projection.transition_Ttilde(r, "upper")
    scale = RF.coerce(qfactorial(r))
    odd = []
    for _, _, f in M.entries():
        if f:
            g = f * scale
            if specht.coefficientwise_sign(g) == 0:
                odd.append(g)
    return [_report(f"non-sign-coherent entries of [{r}]! T~ equal [2]^3[5]([3]-3)",
                    bool(odd) and all(g == ANOMALY for g in odd), f"{len(odd)} entries")]


# --------------------------------------------------------------------------
# Suites
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    kind: str
    resource: str
    default_r: int
    items: Callable[[int], list]


def _shapes_upto(fn, r: int, lo: int = 1) -> list:
    return [(fn, (lam,), k) for k in range(lo, r + 1) for lam in sc.partitions(k)]


def _ranks(fn, ks, *extra) -> list:
    return [(fn, extra + (k,), k) for k in ks]


SUITES = {
    s.name: s
    for s in [
        Suite("s-matrix", "theorem", "hecke", 5, lambda r: _shapes_upto(item_s_matrix, r)),
        Suite("projected-transition", "theorem", "hecke", 5,
              lambda r: [(item_projected_transition, (k, kind), k) for k in range(2, r + 1) for kind in ("upper", "lower")]),
        Suite("duality", "theorem", "hecke", 4,
              lambda r: [(item_duality, (n, k), k) for n in (2, 3) for k in range(1, r + 1)]),
        Suite("idempotent", "theorem", "hecke", 5, lambda r: _ranks(item_idempotent, range(1, r + 1))),
        Suite("tworow-crosscheck", "theorem", "tensor", 8, lambda r: _ranks(item_tworow, range(1, r + 1))),
        Suite("rsk", "theorem", "combinatorial", 6, lambda r: _ranks(item_rsk, range(1, r + 1))),
        Suite("bar", "theorem", "hecke", 4, lambda r: _ranks(item_bar, range(1, r + 1))),
        Suite("kl-positivity", "theorem", "hecke", 6, lambda r: _ranks(item_kl_positivity, range(1, r + 1))),
        Suite("cell-dominance", "theorem", "hecke", 5,
              lambda r: _ranks(item_cell_dominance, range(2, r + 1))),
        Suite("seminormal", "theorem", "hecke", 5, lambda r: _ranks(item_seminormal, range(1, r + 1))),
        Suite("dke", "theorem", "combinatorial", 7, lambda r: _ranks(item_dke, range(1, r + 1))),
        Suite("positivity", "conjecture", "hecke", 6, lambda r: _shapes_upto(item_positivity, r, 2)),
        Suite("normalizer", "conjecture", "hecke", 5, lambda r: _ranks(item_normalizer, range(2, r + 1))),
        Suite("last-column", "conjecture", "hecke", 6, lambda r: _ranks(item_last_column, [k for k in (4, 6) if k <= r])),
        Suite("anomaly", "conjecture", "hecke", 6, lambda r: _ranks(item_anomaly, [6] if r >= 6 else [])),
    ]
}

PROPERTY_SUITES = ("rsk", "bar", "kl-positivity", "cell-dominance", "seminormal", "dke")


def _run_item(job) -> tuple[list, float]:
    fn, args = job
    t0 = time.perf_counter()
    return fn(*args), time.perf_counter() - t0


def run_suite(name: str, params: dict | None = None) -> VerificationReport:
    """Run one suite; params: r (largest rank), max_r (resource bound), jobs."""
    params = dict(params or {})
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    suite = SUITES[name]
    r = params.get("r", suite.default_r)
    bound = params.get("max_r") or BOUNDS[suite.resource]
    jobs = int(params.get("jobs") or 1)
    items = suite.items(r)
    allowed = [(fn, a) for fn, a, rank in items if rank <= bound]
    rep = VerificationReport(name, suite.kind, {"r": r, "max_r": bound})
    if len(allowed) < len(items):
        rep.aborted = f"rank bound {bound} exceeded; {len(items) - len(allowed)} items skipped"
    t0 = time.perf_counter()
    if jobs > 1 and len(allowed) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_item, allowed))
    else:
        results = [_run_item(it) for it in allowed]
    for (fn, args), (checks, dt) in zip(allowed, results):
        rep.checks.extend(checks)
        rep.timing[f"{fn.__name__}{args}"] = round(dt, 3)
    rep.timing["total"] = round(time.perf_counter() - t0, 3)
    return rep


# --------------------------------------------------------------------------
# Figures
# --------------------------------------------------------------------------

S4_TTILDE_COLUMNS = ("1234 1324 2134 1243 1423 1342 2314 3124 2143 2413 4123 2341 3142 3412").split()
S4_TTILDE_ROWS = (
    "1234 1324 2134 1243 1423 1342 2314 3124 2143 2413 4123 2341 3142 3412 "
    "1432 3214 2431 4132 4213 3241 4312 3421 4231 4321"
).split()


def figure_s4_ttilde() -> LabeledMatrix:
    """The C~_w columns of the S_4 table, rows in the printed order."""
    M = projection.transition_Ttilde(4, "upper")
    rows = [sc.parse_perm(x) for x in S4_TTILDE_ROWS]
    cols = [sc.parse_perm(x) for x in S4_TTILDE_COLUMNS]
    out = ExactMatrix.zeros(len(rows), len(cols))
    for i, a in enumerate(rows):
        for j, b in enumerate(cols):
            out[i, j] = M[a, b]
    return LabeledMatrix(rows, cols, out)


def _specht_matrix(lam: tuple, which: str) -> LabeledMatrix:
    if which == "T":
        return specht.seminormal_transition(lam, "upper")
    if which == "Tprime":
        return specht.seminormal_transition(lam, "lower")
    if which == "Tprime-inv":
        return specht.seminormal_transition(lam, "lower").inverse()
    if which == "D":
        return specht.S_matrix(lam).D
    if which == "S":
        return specht.S_matrix(lam).S
    raise ValueError(f"unknown matrix {which!r}")


FIGURES = {
    "s4-ttilde": figure_s4_ttilde,
    "s31-S": lambda: normalize_gcd(_specht_matrix((3, 1), "S")).normalized,
    "s42-S": lambda: normalize_gcd(_specht_matrix((4, 2), "S")).normalized,
    "s42-Tprime-inv": lambda: _specht_matrix((4, 2), "Tprime-inv"),
}


# --------------------------------------------------------------------------
# Output
# --------------------------------------------------------------------------


def _matrix_payload(M: LabeledMatrix) -> dict:
    return {
        "rows": [_label(x) for x in M.rows],
        "cols": [_label(x) for x in M.cols],
        "entries": [[RF.coerce(M.matrix[i, j]).to_text() for j in range(len(M.cols))] for i in range(len(M.rows))],
        "pretty": [[_value_text(M.matrix[i, j]) for j in range(len(M.cols))] for i in range(len(M.rows))],
    }


def _matrix_text(M: LabeledMatrix) -> str:
    p = _matrix_payload(M)
    table = [[""] + p["cols"]] + [[r] + row for r, row in zip(p["rows"], p["pretty"])]
    widths = [max(len(row[j]) for row in table) for j in range(len(table[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in table)


def _matrix_csv(M: LabeledMatrix) -> str:
    p = _matrix_payload(M)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + p["cols"])
    for r, row in zip(p["rows"], p["pretty"]):
        w.writerow([r] + row)
    return buf.getvalue().rstrip("\n")


def _emit_matrix(M: LabeledMatrix, fmt: str, meta: dict) -> str:
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, **meta, **_matrix_payload(M)}, indent=2, sort_keys=True)
    if fmt == "csv":
        return _matrix_csv(M)
    return _matrix_text(M)


def _emit_expansion(coeffs: dict, name: str, fmt: str, meta: dict) -> str:
    """coeffs: label text -> value."""
    if fmt == "json":
        payload = {k: {"value": RF.coerce(v).to_text(), "pretty": _value_text(v)} for k, v in coeffs.items()}
        return json.dumps({"schema": SCHEMA, **meta, "expansion": payload}, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "coefficient"])
        for k, v in coeffs.items():
            w.writerow([k, _value_text(v)])
        return buf.getvalue().rstrip("\n")
    if not coeffs:
        return "0"
    return " + ".join(f"({_value_text(v)})*{name}[{k}]" for k, v in coeffs.items())


def _emit_report(rep: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return rep.to_json()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "check", "status", "detail"])
        for c in rep.checks:
            detail = c.get("witness") or c.get("value", "")
            if c["status"] == "reported":
                detail = f"holds={c['holds']} {detail}".strip()
            w.writerow([rep.suite, c["name"], c["status"], detail])
        return buf.getvalue().rstrip("\n")
    lines = []
    for c in rep.checks:
        if c["status"] == "reported":
            lines.append(f"REPORT {c['name']}: {'holds' if c['holds'] else 'does not hold'} {c['value']}".rstrip())
        else:
            lines.append(f"{c['status'].upper():6} {c['name']}" + (f"  [{c['witness']}]" if c["witness"] else ""))
    if rep.aborted:
        lines.append(f"ABORTED {rep.aborted}")
    lines.append(f"{rep.suite}: {'all pass' if rep.passed else 'FAILURES'} ({rep.timing.get('total', 0)}s)")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def _parse_word(text: str) -> sc.Word:
    """``"2112111"`` or ``"2,1,1"``."""
    parts = text.split(",") if "," in text else list(text)
    return tuple(int(c) for c in parts)


def _check_rank(r: int, args, resource: str) -> None:
    bound = args.max_r or BOUNDS[resource]
    if r > bound:
        raise ResourceBoundError(f"rank {r} exceeds the bound {bound} (raise it with --max-r)")


def cmd_klbasis(args) -> int:
    w = sc.parse_perm(args.w)
    _check_rank(len(w), args, "hecke")
    x = hecke.kl_basis(w, args.kind).to_basis("T")
    coeffs = {sc.perm_text(v): c for v, c in sorted(x.coords.items(), key=lambda t: (sc.length(t[0]), t[0]))}
    print(_emit_expansion(coeffs, "T", args.format, {"command": "klbasis", "w": args.w, "kind": args.kind}))
    return 0


def cmd_tensor_canbasis(args) -> int:
    k = _parse_word(args.word)
    n = args.n or max(k)
    _check_rank(len(k), args, "tensor" if n == 2 else "hecke")
    if args.projected:
        x = projection.project_canonical(k, args.kind, n)
        name = "c" if args.kind == "upper" else "c'"
    else:
        x = tr.canonical_basis(k, args.kind, n)
        name = "v"
    coeffs = {sc.perm_text(j): c for j, c in sorted(x.coords.items())}
    meta = {"command": "tensor-canbasis", "word": args.word, "kind": args.kind, "n": n, "projected": args.projected}
    print(_emit_expansion(coeffs, name, args.format, meta))
    return 0


def cmd_transition(args) -> int:
    _check_rank(args.r, args, "hecke")
    kind = "upper" if args.matrix == "Ttilde" else "lower"
    M = projection.transition_Ttilde(args.r, kind, args.method)
    meta = {"command": "transition", "r": args.r, "matrix": args.matrix, "normalization": args.normalize}
    if args.normalize == "gcd":
        g = normalize_gcd(M, args.matrix)
        M = g.normalized
        meta["D_signs"] = [d.to_text() for d in g.signs]
    print(_emit_matrix(M, args.format, meta))
    return 0


def cmd_idempotent(args) -> int:
    lam = sc.parse_partition(args.shape)
    _check_rank(sum(lam), args, "hecke")
    p = projection.central_idempotent(lam)
    coeffs = {sc.perm_text(v): c for v, c in sorted(p.coords.items(), key=lambda t: (sc.length(t[0]), t[0]))}
    print(_emit_expansion(coeffs, "T", args.format, {"command": "idempotent", "shape": args.shape}))
    return 0


def cmd_specht(args) -> int:
    lam = sc.parse_partition(args.shape)
    _check_rank(sum(lam), args, "hecke")
    M = _specht_matrix(lam, args.matrix)
    meta = {"command": "specht", "shape": args.shape, "matrix": args.matrix, "normalization": args.normalize}
    if args.normalize == "gcd":
        g = normalize_gcd(M, args.matrix)
        M = g.normalized
        meta["D_signs"] = [d.to_text() for d in g.signs]
    print(_emit_matrix(M, args.format, meta))
    return 0


def cmd_tworow(args) -> int:
    if args.op == "yamanouchi" and not args.word:
        if args.r is None:
            raise ValueError("--op yamanouchi needs --r or --word")
        _check_rank(args.r, args, "tensor")
        words = [sc.perm_text(k) for lam in tworow.two_row_shapes(args.r) for k in tworow.yamanouchi_words(lam)]
        if args.format == "json":
            print(json.dumps({"schema": SCHEMA, "command": "tworow", "r": args.r, "yamanouchi": words}, indent=2))
        else:
            print("\n".join(words))
        return 0
    if not args.word:
        raise ValueError(f"--op {args.op} needs --word")
    k = _parse_word(args.word)
    if args.op == "diagram":
        d = tworow.build_diagram(k)
        if args.format == "json":
            print(json.dumps({"schema": SCHEMA, "command": "tworow", "word": args.word, "arcs": d.arcs,
                              "unpaired_ones": d.unpaired_ones, "unpaired_twos": d.unpaired_twos,
                              "yamanouchi": d.is_yamanouchi}, indent=2))
        else:
            print(d.text())
        return 0
    if args.op == "yamanouchi":
        y = tworow.is_yamanouchi(k)
        print(json.dumps({"schema": SCHEMA, "word": args.word, "yamanouchi": y}) if args.format == "json" else str(y))
        return 0
    _check_rank(len(k), args, "tensor")
    x = tworow.projected_lower_coefficients(k)
    coeffs = {sc.perm_text(m) + "†": c for m, c in sorted(x.items())}
    print(_emit_expansion(coeffs, "c'", args.format, {"command": "tworow", "op": "project", "word": args.word}))
    return 0


def cmd_verify(args) -> int:
    names = list(args.suite)
    if "all-theorems" in names:
        names = [n for n, s in SUITES.items() if s.kind == "theorem"]
    elif "all-conjectures" in names:
        names = [n for n, s in SUITES.items() if s.kind == "conjecture"]
    elif "properties" in names:
        names = list(PROPERTY_SUITES)
    violation = aborted = False
    for name in names:
        params = {"max_r": args.max_r, "jobs": args.jobs}
        if args.r is not None:
            params["r"] = args.r
        rep = run_suite(name, params)
        print(_emit_report(rep, args.format))
        violation = violation or rep.theorem_violation
        aborted = aborted or bool(rep.aborted)
    # a violation found before an abort still counts as a violation
    return 1 if violation else 2 if aborted else 0


def cmd_emit(args) -> int:
    M = FIGURES[args.figure]()
    print(_emit_matrix(M, args.format, {"command": "emit", "figure": args.figure}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="klcanon", description="Canonical bases, projections and transition matrices.")
    p.add_argument("--kl-cache", metavar="PATH", help="on-disk memo of KL tables")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for verification suites")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--max-r", type=int, default=None, help="override the default rank bound")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("klbasis", help="C_w or C'_w in the T basis")
    s.add_argument("--w", required=True, help="permutation in one-line notation, e.g. 2143")
    s.add_argument("--kind", choices=("upper", "lower"), default="lower")
    s.set_defaults(func=cmd_klbasis)

    s = sub.add_parser("tensor-canbasis", help="c_k or c'_k in the monomial basis (or projected)")
    s.add_argument("--word", required=True)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--kind", choices=("upper", "lower"), default="lower")
    s.add_argument("--projected", action="store_true", help="c~_k / c~'_k in the canonical basis")
    s.set_defaults(func=cmd_tensor_canbasis)

    s = sub.add_parser("transition", help="T~ or T~' of H_r")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--matrix", choices=("Ttilde", "TtildePrime"), default="Ttilde")
    s.add_argument("--method", choices=("filtration", "ideal"), default=None)
    s.add_argument("--normalize", choices=("none", "gcd"), default="none", help="gcd: multiply by D(M)")
    s.set_defaults(func=cmd_transition)

    s = sub.add_parser("idempotent", help="central idempotent p_lam in the T basis")
    s.add_argument("--shape", required=True, help="partition, e.g. 2,1")
    s.set_defaults(func=cmd_idempotent)

    s = sub.add_parser("specht", help="transition matrices of M_lam")
    s.add_argument("--shape", required=True)
    s.add_argument("--matrix", choices=("T", "Tprime", "Tprime-inv", "D", "S"), default="S")
    s.add_argument("--normalize", choices=("u0", "gcd"), default="u0",
                   help="u0: S is the identity at u = 0; gcd: multiply by D(M)")
    s.set_defaults(func=cmd_specht)

    s = sub.add_parser("tworow", help="arc diagrams and two-row projections (n = 2)")
    s.add_argument("--r", type=int, default=None)
    s.add_argument("--op", choices=("diagram", "yamanouchi", "project"), required=True)
    s.add_argument("--word", default=None)
    s.set_defaults(func=cmd_tworow)

    s = sub.add_parser("verify", help="run verification suites")
    s.add_argument("--suite", action="append", required=True,
                   choices=sorted(SUITES) + ["all-theorems", "all-conjectures", "properties"])
    s.add_argument("--r", type=int, default=None, help="largest rank (suite default otherwise)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("emit", help="print a reference table")
    s.add_argument("--figure", choices=sorted(FIGURES), required=True)
    s.set_defaults(func=cmd_emit)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.kl_cache:
        hecke.set_cache_path(args.kl_cache)
    try:
        return args.func(args)
    except ResourceBoundError as e:
        print(f"klcanon: {e}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as e:
        print(f"klcanon: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
