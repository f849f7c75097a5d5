import math
from fractions import Fraction

import pytest

from barylab.builtins import (
    FAMILIES,
    get_family,
    m_z,
    mz_normalizer,
    mz_section_coeffs,
    named_builtin,
    named_generator,
    pre_mean,
    quasi_arithmetic,
    with_named_outer,
)
from barylab.builtins.generators import GeneratorSpec, affine, cube
from barylab.core.domains import DomainDesc
from barylab.core.errors import GeneratorNotInvertible, UnknownName


def test_registry_lists_every_family():
    assert {"arith_mean", "geom_mean", "harm_mean", "m_z", "sum", "product", "length_fn", "first_proj",
            "last_proj", "max_op", "F_a", "constant", "abs_mean", "clamped_sum", "barycenter",
            "quasi_arithmetic", "pre_mean", "first_then_clamped", "mixed_means"} <= set(FAMILIES)
    assert get_family("m_z").describe() == {"name": "m_z", "params": ["z"]}


def test_unknown_names_raise():
    with pytest.raises(UnknownName):
        named_builtin("median")
    with pytest.raises(UnknownName):
        named_generator("tanh")
    with pytest.raises(UnknownName):
        with_named_outer(named_generator("identity"), "square")


# ── means ────────────────────────────────────────────────────────────────────

def test_quasi_arithmetic_examples():
    assert quasi_arithmetic(named_generator("identity"))(1, 2, 3) == pytest.approx(2)
    assert quasi_arithmetic(named_generator("log"))(2, 8) == pytest.approx(4)
    assert quasi_arithmetic(named_generator("reciprocal"))(1, 1) == pytest.approx(1)


def test_named_means():
    assert named_builtin("geom_mean")(1, 4) == pytest.approx(2)
    assert named_builtin("harm_mean")(1, 3) == pytest.approx(1.5)


def test_pre_mean_examples():
    sum_like = pre_mean(with_named_outer(named_generator("identity"), "n_times"))
    assert sum_like(1, 2, 3) == pytest.approx(6)
    product_like = pre_mean(with_named_outer(named_generator("log"), "exp_n"))
    assert product_like(2, 3) == pytest.approx(6)
    mean_like = named_builtin("pre_mean")
    assert mean_like(5, 5) == pytest.approx(5)


def test_pre_mean_needs_an_outer_sequence():
    with pytest.raises(GeneratorNotInvertible):
        pre_mean(named_generator("identity"))


def test_generator_validation_catches_a_wrong_inverse():
    bad = GeneratorSpec("bad", lambda x: 2 * x, lambda y: y, DomainDesc.reals())
    with pytest.raises(GeneratorNotInvertible):
        bad.validate()


def test_non_monotone_generator_is_rejected():
    square = GeneratorSpec("square", lambda x: x * x, lambda y: math.sqrt(y), DomainDesc.reals())
    with pytest.raises(GeneratorNotInvertible):
        square.validate()


def test_affine_generator():
    g = affine(cube(), 2, 3)
    assert g.f(1) == 5
    assert g.f_inv(5) == pytest.approx(1)
    with pytest.raises(GeneratorNotInvertible):
        affine(cube(), 0, 1)


# ── the M^z family ───────────────────────────────────────────────────────────

def test_mz_examples():
    assert m_z(0.5)(1, 2, 3) == pytest.approx(2)
    assert m_z(1)(7, 9, 4) == pytest.approx(7)
    assert m_z(2)(3, 1) == pytest.approx(5)


def test_mz_normalizer_is_exact():
    assert mz_normalizer(2, 3) == 3
    assert mz_normalizer(Fraction(1, 2), 3) == Fraction(3, 4)
    assert mz_normalizer(Fraction(3, 10), 1) == 1


@pytest.mark.parametrize("z", [Fraction(1, 2), Fraction(2), Fraction(-1), Fraction(3, 10)])
def test_mz_section_coefficients_sum_to_one(z):
    a, b = mz_section_coeffs(z, 1)
    assert (a, b) == (z, 1 - z)
    for k in range(1, 6):
        a, b = mz_section_coeffs(z, k)
        assert a + b == 1


def test_mz_section_coefficient_examples():
    assert mz_section_coeffs(Fraction(1, 2), 2) == (Fraction(2, 3), Fraction(1, 3))
    assert mz_section_coeffs(2, 2)[0] == Fraction(2, 3)
    with pytest.raises(ValueError):
        mz_section_coeffs(2, 0)


@pytest.mark.parametrize("z", [Fraction(2), Fraction(1, 2), Fraction(3, 10), Fraction(-1)])
def test_mz_coefficients_solve_the_section_system(z):
    """a_{k+1} b_i = a_i b_{i-1} (1 - a_1 ... a_{k+1}) for 2 <= i <= k+1, with a_1 = b_1 = 1."""
    a = {1: Fraction(1)}
    b = {1: Fraction(1)}
    for k in range(1, 7):
        a[k + 1], b[k + 1] = mz_section_coeffs(z, k)
    for k in range(2, 6):
        prod = math.prod(a[j] for j in range(1, k + 2))
        for i in range(2, k + 2):
            assert a[k + 1] * b[i] == a[i] * b[i - 1] * (1 - prod)


# ── elementary operations ────────────────────────────────────────────────────

def test_counterexample_builtins():
    abs_mean = named_builtin("abs_mean")
    assert abs_mean(1) == 1 and abs_mean(-1) == 1
    assert abs_mean(1, 1) == 1 and abs_mean(1, -1) == 0
    clamped = named_builtin("clamped_sum")
    assert clamped(-1, -2) == 0 == clamped(-1, 1)
    assert clamped(-1, -2, 1) == 0
    assert clamped(-1, 1, 1) == 1


def test_barycenter_is_exact_on_integers():
    bc = named_builtin("barycenter", d=2)
    assert bc((0, 0), (2, 0)) == (1, 0)
    assert bc((0, 0), (1, 0), (0, 1)) == (Fraction(1, 3), Fraction(1, 3))


def test_first_then_clamped():
    F = named_builtin("first_then_clamped", k=2)
    assert F(-1, 5) == -1
    assert F(-1, 5, 5) == 0
    assert F.params["k"] == 2


def test_mixed_means_switches_with_parity():
    F = named_builtin("mixed_means")
    assert F(1, 4) == pytest.approx(2.5)
    assert F(1, 2, 4) == pytest.approx(2)


def test_constant_family_can_return_epsilon():
    from barylab.core.strings import EPSILON

    assert named_builtin("constant", c="epsilon")(3) is EPSILON
    assert named_builtin("constant", c=4)(1, 2) == 4
