import numpy as np
import pytest

from arcalc.ar import (
    ar_sequence,
    check_ar_sequence,
    ext_socle,
    mimo_iso_witness,
    orbit,
    split_row_classes,
    stable_identity_check,
    tau_S,
    tau_power,
)
from arcalc.krull_schmidt import decompose_object, is_isomorphic
from arcalc.modules import Algebra, LMap, hom_stack, injective_envelope, module_from_partition, uniserial_module
from arcalc.morphisms import HObject, UndefinedOperation, named_object, random_conjugate, shift_object, uniserial_pair

ORBIT = ["k_in_Lambda", "0_in_m", "m_eq_m", "m_in_Lambda", "0_in_k", "k_eq_k"]


@pytest.mark.parametrize("src,dst", [("k_in_Lambda", "0_in_m"), ("m_eq_m", "m_in_Lambda"), ("0_in_k", "k_eq_k")])
def test_tau_examples(src, dst):
    a = Algebra(3)
    assert is_isomorphic(tau_S(named_object(src, a)), named_object(dst, a))[0]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_six_step_orbit(n):
    a = Algebra(n)
    o = orbit(named_object("k_in_Lambda", a))
    assert o.period == 6
    for got, name in zip(o.objects, ORBIT):
        assert is_isomorphic(got, named_object(name, a))[0]


def test_tau_inverse_undoes_tau():
    a = Algebra(4)
    for name in ORBIT:
        x = named_object(name, a)
        assert is_isomorphic(tau_S(tau_S(x), inverse=True), x)[0]


def test_tau_of_projective_is_undefined():
    a = Algebra(3)
    for name in ("0_in_Lambda", "Lambda_eq_Lambda"):
        with pytest.raises(UndefinedOperation, match="projective"):
            tau_S(named_object(name, a))
        with pytest.raises(UndefinedOperation, match="injective"):
            tau_S(named_object(name, a), inverse=True)


def test_tau_respects_conjugation(rng):
    a = Algebra(4)
    x = uniserial_pair(a, 2, 3)
    assert is_isomorphic(tau_S(random_conjugate(x, rng)), tau_S(x))[0]


def test_graded_orbit_shift():
    g = Algebra(5, backend="graded-line")
    x = uniserial_pair(g, 1, 5)
    o = orbit(x)
    assert (o.period, o.shift) == (6, 5 - 6)
    assert is_isomorphic(tau_power(x, 6), shift_object(x, -1))[0]


@pytest.mark.parametrize("which,name", [("cor64", "k_in_Lambda"), ("cor63_tau6", "m_eq_m"), ("cor63_tau3", "0_in_m")])
def test_stable_identities(which, name):
    ok, lhs, rhs = stable_identity_check(named_object(name, Algebra(3)), which)
    assert ok


def test_stable_identity_rejects_projective_and_bad_name():
    a = Algebra(3)
    with pytest.raises(UndefinedOperation):
        stable_identity_check(named_object("0_in_Lambda", a), "cor64")
    with pytest.raises(ValueError):
        stable_identity_check(named_object("k_in_Lambda", a), "cor99")


def test_ar_sequence_simple_n2():
    a = Algebra(2)
    seq = ar_sequence(named_object("0_in_k", a))
    assert is_isomorphic(seq.middle, uniserial_pair(a, 1, 2))[0]
    assert is_isomorphic(seq.left, named_object("k_eq_k", a))[0]
    assert all(check_ar_sequence(seq).values())


def test_ar_sequence_rows_split_n3():
    seq = ar_sequence(named_object("k_in_Lambda", Algebra(3)))
    checks = check_ar_sequence(seq)
    assert checks["rows_split"] and checks["middle_shape"] and all(checks.values())


@pytest.mark.parametrize("name", ["0_in_m", "m_eq_m", "0_in_k", "k_eq_k"])
def test_closed_forms_agree_with_ext(name):
    a = Algebra(4)
    c = named_object(name, a)
    s1, s2 = ar_sequence(c, method="closed"), ar_sequence(c, method="ext")
    assert is_isomorphic(s1.middle, s2.middle)[0]
    assert all(check_ar_sequence(s2).values())


def test_closed_form_unavailable():
    with pytest.raises(ValueError):
        ar_sequence(named_object("k_in_Lambda", Algebra(3)), method="closed")


def test_ext_socle_is_one_dimensional():
    c = named_object("m_in_Lambda", Algebra(4))
    ext = ext_socle(c, tau_S(c))
    assert ext is not None


def test_split_row_classes_nonzero_for_generic():
    c = named_object("k_in_Lambda", Algebra(3))
    assert split_row_classes(c, tau_S(c)) > 0


def test_ar_middle_decomposition_n3():
    seq = ar_sequence(named_object("k_in_Lambda", Algebra(3)))
    assert len(decompose_object(seq.middle).summands) >= 2


def test_mimo_witness_identity():
    a = Algebra(3)
    L, S = uniserial_module(a, 3), uniserial_module(a, 2)
    f = HObject(LMap(L, S, hom_stack(L, S)[0]))
    w = mimo_iso_witness(f, f)
    assert w.iso and w.a.is_iso() and w.b.is_iso()


def test_mimo_witness_envelope_perturbation(rng):
    a = Algebra(4)
    A = module_from_partition(a, [3, 1])
    B = module_from_partition(a, [2, 2])
    F = a.field
    H = hom_stack(A, B)
    f = HObject(LMap(A, B, H[0]))
    env = injective_envelope(A)
    W = hom_stack(env.target, B)
    pert = F.mul(W[int(rng.integers(len(W)))], env.M)
    g = HObject(LMap(A, B, (f.f.M + pert) % F.p))
    assert mimo_iso_witness(f, g).iso


def test_mimo_witness_dimension_obstruction():
    a = Algebra(3)
    f = HObject(LMap.identity(uniserial_module(a, 2)))
    g = HObject(LMap.identity(uniserial_module(a, 1)))
    assert not mimo_iso_witness(f, g).iso


def test_counterexample_mu_m():
    """With an injective summand in B, Mimo(1_Λ) and Mimo(μ_m) differ."""
    a = Algebra(2)
    L = uniserial_module(a, 2)
    one = HObject(LMap.identity(L))
    mu = HObject(LMap(L, L, hom_stack(L, L)[1]))
    from arcalc.morphisms import mimo

    assert not is_isomorphic(mimo(one)[0], mimo(mu)[0])[0]
