import numpy as np
import pytest

from arcalc.krull_schmidt import is_isomorphic
from arcalc.modules import Algebra, LMap, ModuleError, hom_stack, module_from_partition, uniserial_module
from arcalc.morphisms import (
    FObject,
    HMorphism,
    HObject,
    SObject,
    cok,
    epi,
    functor_apply,
    hom_dim,
    ker,
    mepi,
    mimo,
    mono,
    named_object,
    notation,
    proj_inj_kind,
    random_conjugate,
    uniserial_pair,
)
from arcalc.serialize import read_object

P = 32003


def brute_hom_dim(x, y):
    """dim Hom(x, y) from one big homogeneous system in (u, v), no shortcuts."""
    F = x.alg.field
    A, B, A2, B2 = x.source, x.target, y.source, y.target
    a, b, a2, b2 = A.dim, B.dim, A2.dim, B2.dim
    nu, nv = a2 * a, b2 * b
    if nu + nv == 0:
        return 0
    I = lambda k: np.eye(k, dtype=np.int64)
    rows = []
    # u T_A = T_A' u ; v T_B = T_B' v ; v f = f' u   (column-major vec)
    if nu:
        rows.append(np.hstack([np.kron(A.T.T, I(a2)) - np.kron(I(a), A2.T), np.zeros((nu, nv), dtype=np.int64)]))
    if nv:
        rows.append(np.hstack([np.zeros((nv, nu), dtype=np.int64), np.kron(B.T.T, I(b2)) - np.kron(I(b), B2.T)]))
    if a * b2:
        rows.append(np.hstack([-np.kron(I(a), y.f.M), np.kron(x.f.M.T, I(b2))]))
    return nu + nv - F.rank(np.vstack(rows) % P)


def test_cok_of_k_in_lambda():
    x = named_object("k_in_Lambda", Algebra(3))
    y, m = cok(x)
    assert isinstance(y, FObject) and y.target.partition == [2]
    assert m.commutes()


@pytest.mark.parametrize("name", ["k_in_Lambda", "m_in_Lambda", "0_in_m", "m_eq_m"])
def test_ker_cok_roundtrip(name):
    x = named_object(name, Algebra(4))
    assert is_isomorphic(ker(cok(x)[0])[0], x)[0]


def test_mono_epi_factor():
    a = Algebra(3)
    L = uniserial_module(a, 3)
    f = LMap(L, L, hom_stack(L, L)[1])  # multiplication by T
    x = HObject(f)
    m, w = mono(x)
    e, w2 = epi(x)
    assert m.source.dim == 2 and w.commutes()
    assert e.target.dim == 2 and w2.commutes()
    with pytest.raises(ValueError):
        functor_apply(x, "Nope")


def test_mimo_of_mu_m():
    x = read_object("objects/mu_m_n2.json")
    y, w = mimo(x)
    assert isinstance(y, SObject)
    assert y.source.partition == [2] and y.target.partition == [2, 2]
    assert w.commutes()
    # the added summand is the envelope of Ker = soc Λ, i.e. one copy of Λ
    assert notation(y) == "([2] ⊆ [2, 2])"


def test_mimo_of_epi_to_simple():
    a = Algebra(2)
    L, S = uniserial_module(a, 2), uniserial_module(a, 1)
    y, _ = mimo(HObject(LMap(L, S, hom_stack(L, S)[0])))
    assert y.source.partition == [2] and sorted(y.target.partition) == [1, 2]


def test_mimo_is_identity_on_monos():
    x = named_object("k_in_Lambda", Algebra(3))
    y, _ = mimo(x)
    assert y.dims() == x.dims()


def test_mepi_of_mono():
    x = named_object("k_in_Lambda", Algebra(3))
    y, w = mepi(x)
    assert isinstance(y, FObject) and y.source.partition == [3, 1] and w.commutes()


def test_mepi_is_identity_on_epis():
    x = cok(named_object("k_in_Lambda", Algebra(3)))[0]
    assert mepi(x)[0].dims() == x.dims()


def test_random_mimo_choices_isomorphic():
    x = read_object("objects/mu_m_n2.json")
    base = mimo(x)[0]
    for s in range(5):
        assert is_isomorphic(mimo(x, np.random.default_rng(s))[0], base)[0]


def test_sobject_rejects_non_mono():
    a = Algebra(2)
    L = uniserial_module(a, 2)
    with pytest.raises(ModuleError):
        SObject(LMap(L, L, np.zeros((2, 2), dtype=np.int64)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hom_dim_against_brute_system(n, rng):
    a = Algebra(n)
    objs = [uniserial_pair(a, i, j) for j in range(1, n + 1) for i in range(0, j + 1)]
    objs.append(HObject(LMap(uniserial_module(a, n), uniserial_module(a, n), hom_stack(uniserial_module(a, n), uniserial_module(a, n))[1])))
    for x in objs[::2]:
        for y in objs[1::2]:
            xr = random_conjugate(x, rng)
            assert hom_dim(xr, y) == brute_hom_dim(xr, y) == brute_hom_dim(x, y)


def test_hom_basis_commutes(rng):
    from arcalc.morphisms import hom_pairs

    a = Algebra(3)
    x = random_conjugate(named_object("k_in_Lambda", a), rng)
    y = named_object("m_in_Lambda", a)
    U, V = hom_pairs(x, y)
    for u, v in zip(U, V):
        assert HMorphism(x, y, LMap(x.source, y.source, u), LMap(x.target, y.target, v)).commutes()


def test_named_objects_and_projectives():
    a = Algebra(3)
    assert proj_inj_kind(named_object("0_in_Lambda", a)) == "0->P"
    assert proj_inj_kind(named_object("Lambda_eq_Lambda", a)) == "P=P"
    assert proj_inj_kind(named_object("k_in_Lambda", a)) is None
    with pytest.raises(ValueError):
        named_object("nonsense", a)


def test_notation_graded():
    g = Algebra(3, backend="graded-line")
    x = uniserial_pair(g, 1, 3, top=2)
    assert notation(x) == "([1@0] ⊆ [3@2])"
