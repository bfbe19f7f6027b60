import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klcanon import hecke
from klcanon import symcomb as sc
from klcanon import tensorrep as tr
from klcanon.exactalg import RationalFunction as RF

u = RF.u()


@st.composite
def tensor_elements(draw, n=3, r=3):
    ws = tr.all_words(n, r)
    picks = draw(st.lists(st.sampled_from(ws), max_size=4))
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(picks), max_size=len(picks)))
    return tr.TensorElement(n, r, {k: RF(c) + c * u * u for k, c in zip(picks, coeffs)})


def compositions_upto(n, r):
    return [z for k in range(1, r + 1) for z in sc.compositions(k, n)]


@pytest.mark.parametrize("zeta", compositions_upto(3, 4) + [(3, 3), (2, 2, 2)])
@pytest.mark.parametrize("kind", ["upper", "lower"])
def test_canonical_basis_routes_agree(zeta, kind):
    ws = tr.WeightSpace(zeta)
    assert ws.canonical_matrix(kind, "bar") == ws.canonical_matrix(kind, "hecke")


@pytest.mark.parametrize("n, r", [(2, 4), (3, 3), (3, 4)])
def test_canonical_basis_bar_invariant_and_lattice(n, r):
    for k in tr.all_words(n, r):
        for kind in ("upper", "lower"):
            c = tr.canonical_basis(k, kind, n)
            assert c.bar() == c
            assert c.coefficient(k) == 1
            for l, a in c.coords.items():
                if l != k:
                    lp = a.to_laurent()
                    # upper: u^-1 Z[u^-1], lower: u Z[u]
                    assert lp.max_exponent() < 0 if kind == "upper" else lp.min_exponent() > 0


@settings(max_examples=30, deadline=None)
@given(tensor_elements())
def test_bar_is_involution(x):
    assert x.bar().bar() == x


@pytest.mark.parametrize("n, r", [(2, 3), (3, 3)])
def test_hecke_relations_on_tensor_space(n, r):
    for k in tr.all_words(n, r):
        x = tr.monomial(k, n)
        for i in range(1, r):
            tt = x.act_T(i).act_T(i)
            assert tt == x.act_T(i).scale(u - 1 / u) + x
            assert x.act_T(i).act_T_inv(i) == x
        if r >= 3:
            assert x.act_T(1).act_T(2).act_T(1) == x.act_T(2).act_T(1).act_T(2)


@settings(max_examples=20, deadline=None)
@given(tensor_elements(), st.sampled_from(sc.permutations(3)))
def test_bar_compatible_with_hecke_action(x, w):
    h = hecke.T(w)
    assert x.act(h).bar() == x.bar().act(h.bar_via_T())


@settings(max_examples=20, deadline=None)
@given(tensor_elements(), st.sampled_from(["E", "F", "K"]), st.integers(1, 2), st.integers(1, 2))
def test_quantum_group_commutes_with_hecke(x, gen, i, j):
    assert tr.uq_act(gen, i, x.act_T(j)) == tr.uq_act(gen, i, x).act_T(j)


@pytest.mark.parametrize("n, r", [(2, 3), (3, 3)])
def test_quantum_group_relations(n, r):
    for k in tr.all_words(n, r):
        x = tr.monomial(k, n)
        for i in range(1, n):
            ef = tr.uq_act("E", i, tr.uq_act("F", i, x))
            fe = tr.uq_act("F", i, tr.uq_act("E", i, x))
            kk = tr.uq_act("K", i, x) - tr.uq_act("Kinv", i, x)
            assert (ef - fe).scale(u - 1 / u) == kk
            assert tr.uq_act("Kinv", i, tr.uq_act("K", i, x)) == x


def test_lower_basis_example():
    c = tr.canonical_basis((2, 1, 1), "lower")
    assert c.coords == {(2, 1, 1): RF(1), (1, 2, 1): u, (1, 1, 2): u * u}


@pytest.mark.parametrize("n, r", [(2, 3), (3, 3), (2, 4)])
def test_duality_pairing(n, r):
    for k in tr.all_words(n, r):
        ck = tr.canonical_basis(k, "upper", n)
        for l in tr.all_words(n, r):
            if sc.content(k, n) != sc.content(l, n):
                continue
            pair = tr.bilinear_form(ck, tr.canonical_basis(sc.reverse(l), "lower", n))
            assert pair == (1 if k == l else 0)


@pytest.mark.parametrize("n, r", [(2, 4), (3, 3)])
@pytest.mark.parametrize("kind", ["upper", "lower"])
def test_cells_tensor_partition_words(n, r, kind):
    cells = tr.cells_tensor(n, r, kind)
    for key in ("gamma", "lambda"):
        words = [k for ks in cells[key].values() for k in ks]
        assert sorted(words) == tr.all_words(n, r)


def test_basis_changes_roundtrip():
    x = tr.TensorElement(2, 3, {(2, 1, 2): u, (1, 1, 2): RF(3)})
    for basis in ("upper", "lower"):
        assert x.to_basis(basis).monomial() == x


def test_rejects_bad_words():
    with pytest.raises(ValueError):
        tr.TensorElement(2, 2, {(1, 3): RF(1)})
    with pytest.raises(ValueError):
        tr.canonical_basis((1, 2), "middle")
