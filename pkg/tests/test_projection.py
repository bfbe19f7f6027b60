import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klcanon import hecke, projection
from klcanon import symcomb as sc
from klcanon import tensorrep as tr
from klcanon.exactalg import RationalFunction as RF

u = RF.u()


def test_word_shapes():
    assert projection.word_shape((2, 1, 1)) == (2, 1)
    assert projection.word_shape((1, 1, 2)) == (3,)
    assert projection.dagger_shape((1, 1, 2)) == projection.word_shape((2, 1, 1))


@pytest.mark.parametrize("r", range(1, 5))
def test_idempotents_sum_orthogonal_central(r):
    ps = {lam: projection.central_idempotent(lam, r) for lam in sc.partitions(r)}
    total = hecke.HeckeElement(r, {}, "T")
    for lam, p in ps.items():
        total = total + p
        assert p * p == p
        assert p.bar_via_T() == p
        for i in range(1, r):
            s = hecke.T(sc.simple(i, r))
            assert s * p == p * s
        for mu, q in ps.items():
            if mu != lam:
                assert not (p * q)
    assert total == hecke.HeckeElement.one(r)


def test_idempotent_example():
    assert projection.central_idempotent((2,)).text(pretty=True) == "(u^-1/[2])*T[12] + (1/[2])*T[21]"
    with pytest.raises(ValueError):
        projection.central_idempotent((2, 1), 4)


@pytest.mark.parametrize("r", range(1, 5))
@pytest.mark.parametrize("kind", ["upper", "lower"])
def test_transition_routes_agree(r, kind):
    a = projection.transition_Ttilde(r, kind, "filtration")
    b = projection.transition_Ttilde(r, kind, "ideal")
    assert a.matrix == b.matrix


@pytest.mark.parametrize("r", range(1, 5))
def test_projected_hecke_basis_is_idempotent_image(r):
    for w in sc.permutations(r):
        lam = hecke.shape(w)
        p = projection.central_idempotent(lam, r)
        assert hecke.upper(w) * p == projection.hecke_projected_basis(w, "upper")
        # C'_w lies in a cell of the conjugate shape
        p_conj = projection.central_idempotent(sc.conjugate(lam), r)
        assert hecke.lower(w) * p_conj == projection.hecke_projected_basis(w, "lower")


@pytest.mark.parametrize("n, r", [(2, 3), (2, 4), (3, 3), (3, 4)])
def test_isotypic_decomposition(n, r):
    dec = projection.IsotypicDecomposition.build(n, r)
    assert dec.check()
    for lam in sc.partitions(r, max_parts=n):
        f = len(sc.standard_tableaux(lam))
        assert dec.dimension(lam) == f * len(sc.semistandard_tableaux(lam, n))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from(tr.all_words(3, 3)), min_size=1, max_size=3), st.integers(-2, 2))
def test_isotypic_projection_matches_hecke_idempotent(ks, c):
    x = tr.TensorElement(3, 3, {k: RF(c) + u for k in ks})
    total = tr.TensorElement(3, 3, {})
    for lam in sc.partitions(3):
        y = projection.isotypic_project(x, lam)
        assert y == x.act(projection.central_idempotent(lam, 3))
        assert projection.isotypic_project(y, lam) == y
        total = total + y
    assert total == x


@pytest.mark.parametrize("n, r", [(2, 4), (3, 3)])
def test_projected_tensor_basis_support(n, r):
    for k in tr.all_words(n, r):
        lam = projection.word_shape(k)
        x = projection.project_canonical(k, "upper", n)
        assert x.coefficient(k) == 1
        assert all(sc.dominance_leq(projection.word_shape(l), lam) for l in x.coords)
        assert projection.isotypic_project(x, lam) == x
        y = projection.project_canonical(k, "lower", n)
        assert y.coefficient(k) == 1
        assert projection.isotypic_project(y, projection.dagger_shape(k)) == y
