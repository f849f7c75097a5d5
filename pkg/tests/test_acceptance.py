"""End-to-end checks against the published counterexamples and claims."""

import math
import random
from fractions import Fraction

import pytest

from barylab.builtins import m_z, mz_section_coeffs, named_builtin, named_generator, pre_mean, quasi_arithmetic
from barylab.builtins.generators import affine, with_named_outer
from barylab.construct import brute_force_b_associative, enumerate_b_associative, from_sections, mz_sections
from barylab.core.strings import strings_up_to
from barylab.factorization import affine_identifiability, factorize
from barylab.properties import check, check_equivalence_suite, reproduce_witness
from barylab.properties import parts

from conftest import all_tables, tabulated

pytestmark = pytest.mark.acceptance


# ── published counterexamples ────────────────────────────────────────────────

def test_clamped_sum_values():
    H = named_builtin("clamped_sum")
    assert H(-1, -2) == 0 == H(-1, 1)
    assert H(-1, -2, 1) == 0
    assert H(-1, 1, 1) == 1


@pytest.mark.parametrize("name", ["clamped_sum", "abs_mean"])
def test_counterexamples_fail_b_preassociativity(name):
    F = named_builtin(name)
    report = check(F, "b_preassociative")
    assert report.failed
    w = report.witness
    assert len((w.x or ()) + w.y + (w.z or ())) <= 3
    assert reproduce_witness(F, report)


# ── positive claims ──────────────────────────────────────────────────────────

@pytest.mark.parametrize("F", [
    named_builtin("arith_mean"),
    named_builtin("geom_mean"),
    named_builtin("harm_mean"),
    named_builtin("barycenter", d=2),
    *(m_z(z) for z in (-1, 0.3, 0.5, 1, 2)),
], ids=lambda F: f"{F.name}{F.params or ''}")
def test_means_are_b_associative(F):
    report = check(F, "b_associative")
    assert report.passed, report.witness
    assert report.space.max_len == 6
    assert report.space.instances >= 10_000


@pytest.mark.parametrize("name", ["sum", "product", "length_fn"])
def test_pre_means_are_b_preassociative(name):
    assert check(named_builtin(name), "b_preassociative").passed


# ── equivalence theorems on every small table ────────────────────────────────

def _assert_no_critical_disagreement(F, cfg):
    verdicts = check_equivalence_suite(F, cfg)
    bad = [v.theorem for v in verdicts if v.critical]
    assert not bad, (dict(F.table), bad)


def test_equivalences_on_all_binary_tables(exhaustive):
    for F in all_tables([0, 1], 2):
        _assert_no_critical_disagreement(F, exhaustive)


def test_equivalences_on_random_ternary_tables(exhaustive):
    rng = random.Random(500)
    for i in range(500):
        values = {x: rng.choice([0, 1]) for x in strings_up_to([0, 1], 3, min_len=1)}
        _assert_no_critical_disagreement(tabulated([0, 1], 3, values.__getitem__, name=f"r{i}"), exhaustive)


# ── factorization round trip ─────────────────────────────────────────────────

def _eligible(F, cfg):
    if not all(parts.is_quasi_range_idempotent_part(F, n) for n in (1, 2, 3)):
        return False
    return check(F, "b_preassociative", cfg).passed


def test_every_eligible_ternary_table_factorizes(exhaustive):
    eligible = 0
    for F in all_tables([0, 1], 3):
        if not _eligible(F, exhaustive):
            continue
        eligible += 1
        result = factorize(F, exhaustive)
        assert result.ok, F.table
        assert result.reports[-1].property == "b_associative"
        assert result.reports[-1].space.mode == "exhaustive"
        assert all(f.is_injective() for f in result.outer.values())
        for x in strings_up_to([0, 1], 3, min_len=1):
            assert result.recompose(x) == F(*x)
    # max, min and the projections are among them
    assert eligible >= 4


def test_sum_and_product_factorize_numerically():
    total = factorize(named_builtin("sum"))
    mean = named_builtin("arith_mean")
    for x in [(1.0, 2.0, 6.0), (-2.0, 0.5), (3.0, -1.0, 2.0, 0.5, 4.0)]:
        assert math.isclose(total.H(*x), mean(*x), rel_tol=1e-12)
        n = len(x)
        assert math.isclose(total.outer[n](mean(*x)), n * mean(*x), rel_tol=1e-12)

    product = factorize(named_builtin("product"))
    geom = named_builtin("geom_mean")
    for x in [(1.0, 4.0), (2.0, 3.0, 0.5)]:
        assert math.isclose(product.H(*x), geom(*x), rel_tol=1e-9)
        assert math.isclose(product.outer[len(x)](2.0), 2.0 ** len(x), rel_tol=1e-9)


# ── reconstruction of M^z from its sections ──────────────────────────────────

@pytest.mark.parametrize("z", [0.5, 2])
def test_mz_is_rebuilt_from_its_sections(z):
    G = from_sections(mz_sections(z), max_arity=5)
    M = m_z(z)
    rng = random.Random(7)
    for n in range(1, 6):
        for _ in range(20):
            x = tuple(rng.uniform(-3, 3) for _ in range(n))
            assert G(*x) == pytest.approx(M(*x), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("z", [Fraction(1, 2), Fraction(2), Fraction(3, 10)])
def test_mz_section_system(z):
    a, b = {1: Fraction(1)}, {1: Fraction(1)}
    for k in range(1, 6):
        a[k + 1], b[k + 1] = mz_section_coeffs(z, k)
        assert a[k + 1] + b[k + 1] == 1
    for k in range(1, 6):
        prod = math.prod(a[j] for j in range(1, k + 2))
        for i in range(2, k + 2):
            assert abs(a[k + 1] * b[i] - a[i] * b[i - 1] * (1 - prod)) <= 1e-9


# ── enumeration against brute force ──────────────────────────────────────────

def test_enumeration_oracle():
    fast = enumerate_b_associative([0, 1], 2)
    slow = brute_force_b_associative([0, 1], 2)
    assert {frozenset(F.table.items()) for F in fast.functions} == {frozenset(F.table.items()) for F in slow}
    assert fast.census.b_associative == len(slow)
    unary = enumerate_b_associative([0, 1], 1).census
    assert (unary.b_associative, unary.total) == (3, 4)


# ── quasi-arithmetic means ───────────────────────────────────────────────────

def test_log_mean_has_the_mean_axioms():
    F = quasi_arithmetic(named_generator("log"))
    for p in ("symmetric(2)", "symmetric(3)", "idempotent", "strictly_increasing(2)", "b_associative"):
        assert check(F, p).passed, p


def test_sum_as_a_pre_mean():
    F = pre_mean(with_named_outer(named_generator("identity"), "n_times"))
    assert check(F, "b_preassociative").passed
    assert factorize(F).ok


def test_mixed_generators_break_b_preassociativity():
    F = named_builtin("mixed_means")
    report = check(F, "b_preassociative")
    assert report.failed
    assert reproduce_witness(F, report)


# ── affine identifiability ───────────────────────────────────────────────────

def test_affine_pair_is_identified():
    log = named_generator("log")
    verdict = affine_identifiability(log, affine(log, 2, 3))
    assert verdict.equivalent
    assert verdict.r == pytest.approx(2, abs=1e-9)
    assert verdict.s == pytest.approx(3, abs=1e-9)
    assert verdict.fit_error <= 1e-9


def test_cube_breaks_the_jensen_equality():
    verdict = affine_identifiability(named_generator("identity"), named_generator("cube"))
    assert not verdict.equivalent
    assert verdict.witness["h_mid"] != pytest.approx(verdict.witness["mean_h"])
