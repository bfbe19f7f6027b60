"""Acceptance criteria 1-13, all at exact equality.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import pytest

import reference_tables as R
from klcanon import cli, projection, specht, tworow
from klcanon import symcomb as sc
from klcanon import tensorrep as tr
from klcanon.exactalg import ExactMatrix, LabeledMatrix, RationalFunction as RF, normalize_gcd, solve_linear

WORDS3 = tr.all_words(2, 3)


def word(text):
    return tuple(int(c) for c in text)


def text(k):
    return "".join(map(str, k))


def expansion(x):
    return {text(k): c for k, c in x.coords.items()}


def reference_expansion(ref):
    return {k: R.q(c) for k, c in ref.items()}


def f1_edges(vecs):
    """F_1 applied to each basis vector, expanded in the same basis: {(source, target): coefficient}."""
    M = ExactMatrix.from_columns([[vecs[l].monomial().coefficient(k) for k in WORDS3] for l in WORDS3])
    out = {}
    for l in WORDS3:
        y = tr.uq_act("F", 1, vecs[l]).monomial()
        for k, c in zip(WORDS3, solve_linear(M, [y.coefficient(k) for k in WORDS3])):
            if c:
                out[(text(l), text(k))] = c
    return out


def reference_edges(edges):
    return {(a, b): R.q(c) for a, b, c in edges}


def submatrix(M, labels):
    L = R.tableaux(labels)
    return [[M[a, b] for b in L] for a in L]


# -- 1, 2: canonical bases of V^(x)3 -----------------------------------------


@pytest.mark.criterion(1)
@pytest.mark.parametrize("k", sorted(R.LOWER_R3))
def test_lower_canonical_basis_r3(k):
    assert expansion(tr.canonical_basis(word(k), "lower", 2)) == reference_expansion(R.LOWER_R3[k])


@pytest.mark.criterion(1)
def test_lower_canonical_f1_edges_r3():
    vecs = {k: tr.canonical_basis(k, "lower", 2) for k in WORDS3}
    assert f1_edges(vecs) == reference_edges(R.LOWER_F1_EDGES)


@pytest.mark.criterion(2)
@pytest.mark.parametrize("k", sorted(R.UPPER_R3))
def test_upper_canonical_basis_r3(k):
    assert expansion(tr.canonical_basis(word(k), "upper", 2)) == reference_expansion(R.UPPER_R3[k])


@pytest.mark.criterion(2)
def test_upper_canonical_f1_edges_r3():
    vecs = {k: tr.canonical_basis(k, "upper", 2) for k in WORDS3}
    assert f1_edges(vecs) == reference_edges(R.UPPER_F1_EDGES)


# -- 3: projected bases --------------------------------------------------------


@pytest.mark.criterion(3)
@pytest.mark.parametrize(
    "kind, ref",
    [("upper", R.PROJ_UPPER_R3), ("lower", R.PROJ_LOWER_R3)],
)
def test_projected_basis_r3(kind, ref):
    for k, col in ref.items():
        assert expansion(projection.project_canonical(word(k), kind, 2)) == reference_expansion(col), k


@pytest.mark.criterion(3)
@pytest.mark.parametrize(
    "kind, edges",
    [("upper", R.PROJ_UPPER_F1_EDGES), ("lower", R.PROJ_LOWER_F1_EDGES)],
)
def test_projected_f1_edges_r3(kind, edges):
    vecs = {k: projection.project_canonical(k, kind, 2) for k in WORDS3}
    assert f1_edges(vecs) == reference_edges(edges)


# -- 4: S_4 table ----------------------------------------------------------------


@pytest.mark.criterion(4)
def test_s4_projection_table():
    F = cli.figure_s4_ttilde()
    ref = R.table(R.S4_TTILDE)
    assert len(ref) == 24 and all(len(row) == 14 for row in ref)
    bad = [
        (a, b)
        for i, a in enumerate(R.S4_TTILDE_ROWS)
        for j, b in enumerate(R.S4_TTILDE_COLUMNS)
        if F[sc.parse_perm(a), sc.parse_perm(b)] != ref[i][j]
    ]
    assert bad == []


@pytest.mark.criterion(4)
def test_s4_projection_table_both_routes():
    a = projection.transition_Ttilde(4, "upper", "filtration")
    b = projection.transition_Ttilde(4, "upper", "ideal")
    assert a.rows == b.rows and a.matrix == b.matrix


@pytest.mark.criterion(4)
def test_s4_signed_entries():
    F = cli.figure_s4_ttilde()
    entries = {c.pretty() for _, _, c in F.entries()}
    assert {"-[2]/[4]", "-1/([2][4])"} <= entries


# -- 5: M_(3,1) action matrices --------------------------------------------------


def _action(kind, i):
    m = specht.canonical_module((3, 1), kind)
    A = m.action[i]
    if m.generator == "C":
        # C'_s = C_s + [2]
        A = A + ExactMatrix.identity(m.dim).scale(RF.qint(2))
    return submatrix(LabeledMatrix(list(m.labels), list(m.labels), A), R.LABELS31)


@pytest.mark.criterion(5)
@pytest.mark.parametrize("i", [1, 2, 3])
def test_m31_lower_basis_action(i):
    assert _action("lower", i) == R.table(R.M31_LOWER_ACTION[i])


@pytest.mark.criterion(5)
@pytest.mark.parametrize("i", [1, 2, 3])
def test_m31_upper_basis_action(i):
    assert _action("upper", i) == R.table(R.M31_UPPER_ACTION[i])


@pytest.mark.criterion(5)
@pytest.mark.parametrize("i", [1, 2, 3])
def test_m31_transpose_relation(i):
    lower, upper = _action("lower", i), _action("upper", i)
    assert upper == [list(col) for col in zip(*lower)]


# -- 6: Specht tables --------------------------------------------------------------


@pytest.mark.criterion(6)
def test_T31():
    assert submatrix(specht.seminormal_transition((3, 1), "upper"), R.LABELS31) == R.table(R.T31)


@pytest.mark.criterion(6)
def test_D31_up_to_scale():
    D = submatrix(specht.S_matrix((3, 1)).D, R.LABELS31)
    ref = R.table(R.D31)
    assert all(D[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    assert len({D[i][i] / ref[i][i] for i in range(3)}) == 1


@pytest.mark.criterion(6)
def test_Tprime31_inverse():
    Tp = specht.seminormal_transition((3, 1), "lower").inverse()
    assert submatrix(Tp, R.LABELS31) == R.table(R.TPRIME_INV31)


@pytest.mark.criterion(6)
@pytest.mark.parametrize("lam, labels, ref", [((3, 1), R.LABELS31, R.S31), ((4, 2), R.S42_LABELS, R.S42)])
def test_S_after_gcd_normalization(lam, labels, ref):
    normalized = normalize_gcd(specht.S_matrix(lam).S).normalized
    assert submatrix(normalized, labels) == R.table(ref)


@pytest.mark.criterion(6)
def test_S31_up_to_scale():
    S = submatrix(specht.S_matrix((3, 1)).S, R.LABELS31)
    ref = R.table(R.S31)
    assert len({S[i][j] / ref[i][j] for i in range(3) for j in range(3)}) == 1


@pytest.mark.criterion(6)
def test_Tprime42_inverse():
    Tp = specht.seminormal_transition((4, 2), "lower").inverse()
    ref = R.table(R.TPRIME_INV42)
    assert sum(1 for i in range(9) for j in range(i, 9)) == 45
    assert submatrix(Tp, R.TPRIME_INV42_LABELS) == ref


@pytest.mark.criterion(6)
def test_S42_special_entries():
    normalized = normalize_gcd(specht.S_matrix((4, 2)).S).normalized
    values = {c for _, _, c in normalized.entries()}
    assert R.q("2[4]+3[2]") in values
    assert R.q("2[3]+1") in values


# -- 7-11: theorem suites ---------------------------------------------------------


def _assert_suite(name, params=None):
    rep = cli.run_suite(name, params or {})
    failed = [c["name"] for c in rep.checks if c["status"] == "fail"]
    assert not rep.aborted, rep.aborted
    assert failed == []
    assert rep.checks
    return rep


@pytest.mark.criterion(7)
def test_s_matrix_suite():
    _assert_suite("s-matrix", {"r": 5})


@pytest.mark.criterion(8)
def test_projected_transition_suite():
    _assert_suite("projected-transition", {"r": 5})


@pytest.mark.criterion(9)
def test_duality_suite():
    rep = _assert_suite("duality", {"r": 4})
    names = " ".join(c["name"] for c in rep.checks)
    assert "n=2" in names and "n=3" in names


@pytest.mark.criterion(10)
def test_idempotent_suite():
    _assert_suite("idempotent", {"r": 5})


@pytest.mark.criterion(11)
def test_tworow_suite():
    _assert_suite("tworow-crosscheck", {"r": 8})


@pytest.mark.criterion(11)
def test_tworow_displayed_example():
    k = word("2112111")
    ref = {word(m): R.q(c) for m, c in R.TWOROW_PROJECTED.items()}
    assert tworow.projected_lower_coefficients(k) == ref
    assert tworow.generic_projected_lower(k) == ref
    assert tworow.E1_lower_closed_form(word("211211")) == {word(m): R.q(c) for m, c in R.TWOROW_E1.items()}


@pytest.mark.criterion(11)
@pytest.mark.parametrize(
    "parabolic, ref", [("J†", R.TWOROW_PROJECTED_J_DAGGER), ("J", R.TWOROW_PROJECTED_J)]
)
def test_tworow_displayed_example_tableaux(parabolic, ref):
    got = tworow.relabel(tworow.projected_lower_coefficients(word("2112111")), parabolic)
    assert got == {sc.Tableau.parse(Q): R.q(c) for Q, c in ref.items()}


# -- 12: conjecture evidence ---------------------------------------------------


@pytest.mark.criterion(12)
@pytest.mark.parametrize(
    "name, r", [("positivity", 6), ("normalizer", 5), ("last-column", 6), ("anomaly", 6)]
)
def test_conjecture_reports(name, r):
    rep = cli.run_suite(name, {"r": r})
    assert not rep.aborted
    assert rep.checks
    assert not rep.theorem_violation
    for c in rep.checks:
        print(f"{name}: {c['name']} -> {c['status']}")


# -- 13: property battery ------------------------------------------------------


@pytest.mark.criterion(13)
@pytest.mark.parametrize("name", cli.PROPERTY_SUITES)
def test_property_suite(name):
    _assert_suite(name)


@pytest.mark.criterion(13)
@pytest.mark.parametrize("name", ["rsk", "dke"])
def test_combinatorial_properties_r7(name):
    _assert_suite(name, {"r": 7})


@pytest.mark.criterion(13)
def test_kl_positivity_r7():
    _assert_suite("kl-positivity", {"r": 7, "max_r": 7})
