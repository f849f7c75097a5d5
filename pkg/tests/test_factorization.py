import math

import pytest
from hypothesis import given, strategies as st

from barylab.builtins import named_builtin, named_generator
from barylab.builtins.generators import GeneratorSpec, affine, outer_n_times, with_named_outer
from barylab.core.domains import DomainDesc
from barylab.core.errors import (
    BudgetExceeded,
    DegenerateFit,
    DiagonalNotInjective,
    NoDiagonalInverse,
    NotBPreassociative,
    NotQuasiRangeIdempotent,
)
from barylab.core.strings import strings_up_to
from barylab.core.varfn import VarFn
from barylab.factorization import (
    UnaryTable,
    affine_identifiability,
    compose_with_quasi_inverses,
    delta_table,
    enumerate_quasi_inverses,
    factorize,
    idempotizable_decompose,
    is_quasi_inverse,
    quasi_inverse,
    range_idempotent_factor,
)
from barylab.properties import check
from barylab.properties import parts

from conftest import tabulated


@st.composite
def unary_tables(draw):
    m = draw(st.integers(min_value=1, max_value=4))
    k = draw(st.integers(min_value=1, max_value=4))
    values = draw(st.lists(st.integers(min_value=0, max_value=k - 1), min_size=m, max_size=m))
    return UnaryTable.from_function(range(m), values.__getitem__, codomain=range(k))


# ── quasi-inverses ───────────────────────────────────────────────────────────

def test_identity_is_its_own_quasi_inverse():
    f = UnaryTable.from_function([0, 1], lambda a: a)
    assert dict(quasi_inverse(f).g.mapping) == {0: 0, 1: 1}


def test_quasi_inverse_of_a_collapsing_map():
    f = UnaryTable.from_function([0, 1], lambda a: 0, codomain=[0, 1])
    q = quasi_inverse(f)
    assert dict(q.g.mapping) == {0: 0, 1: 0}
    assert q.certificate[:2] == ["f o g = id on ran(f)", "ran(g|ran(f)) = ran(g)"]


def test_quasi_inverse_of_a_constant():
    f = UnaryTable.from_function([0, 1, 2], lambda a: 1, codomain=[0, 1, 2])
    assert set(quasi_inverse(f).g.mapping.values()) == {0}


def test_off_range_values_go_to_the_least_range_representative():
    f = UnaryTable((0, 1, 2), ("a", "b", "c"), {0: "a", 1: "a", 2: "b"})
    g = quasi_inverse(f).g
    assert dict(g.mapping) == {"a": 0, "b": 2, "c": 0}
    other = UnaryTable(("a", "b", "c"), (0, 1, 2), {"a": 0, "b": 2, "c": 1})
    assert not is_quasi_inverse(f, other)


def test_enumeration_lists_every_quasi_inverse():
    f = UnaryTable((0, 1, 2), ("a", "b", "c"), {0: "a", 1: "a", 2: "b"})
    found = list(enumerate_quasi_inverses(f))
    assert len(found) == 4
    canonical = dict(quasi_inverse(f).g.mapping)
    assert canonical in [dict(g.mapping) for g in found]


def test_enumeration_is_limited_to_small_maps():
    f = UnaryTable.from_function(range(5), lambda a: a)
    with pytest.raises(BudgetExceeded):
        list(enumerate_quasi_inverses(f))


@given(unary_tables())
def test_quasi_inverse_relation_is_symmetric(f):
    for g in enumerate_quasi_inverses(f):
        assert is_quasi_inverse(f, g)
        assert is_quasi_inverse(g, f)
    q = quasi_inverse(f)
    assert is_quasi_inverse(q.g, f)


@given(unary_tables(), st.lists(st.integers(min_value=0, max_value=15), min_size=1, max_size=4))
def test_f_after_g_fixes_maps_into_the_range(f, picks):
    ran_f = f.range()
    h = [ran_f[i % len(ran_f)] for i in picks]
    for g in enumerate_quasi_inverses(f):
        assert [f(g(v)) for v in h] == h


# ── single-arity factors ─────────────────────────────────────────────────────

def test_xor_is_not_quasi_range_idempotent():
    T = tabulated([0, 1], 2, lambda x: x[0] if len(x) == 1 else x[0] ^ x[1])
    with pytest.raises(NotQuasiRangeIdempotent) as info:
        range_idempotent_factor(T, 2)
    assert info.value.witness == 1


def test_projection_is_its_own_factor():
    T = tabulated([0, 1], 2, lambda x: x[0])
    factor = range_idempotent_factor(T, 2)
    assert factor.ok
    assert factor.table == {x: x[0] for x in strings_up_to([0, 1], 2, min_len=2)}


def test_range_idempotent_factor_of_sum_is_the_mean():
    factor = range_idempotent_factor(named_builtin("sum"), 2)
    assert factor.ok
    assert factor.part((1.0, 3.0)) == pytest.approx(2.0)


def test_delta_table_lists_the_domain_first():
    T = tabulated([0, 1, 2], 2, lambda x: min(max(x), 1))
    delta = delta_table(T, 2)
    assert delta.codomain == (0, 1, 2)
    assert dict(delta.mapping) == {0: 0, 1: 1, 2: 1}


# ── factorization ────────────────────────────────────────────────────────────

def test_factorize_sum_gives_the_mean_and_n_times():
    result = factorize(named_builtin("sum"))
    assert result.path == "closed_form"
    assert result.ok
    mean = named_builtin("arith_mean")
    for x in [(1.0, 2.0, 6.0), (-0.5, 3.0), (2.5,)]:
        assert math.isclose(result.H(*x), mean(*x), rel_tol=1e-12)
    assert result.outer[3](2.0) == pytest.approx(6.0)
    assert result.outer[5](-1.0) == pytest.approx(-5.0)


def test_factorize_product_gives_the_geometric_mean():
    result = factorize(named_builtin("product"))
    assert result.ok
    geom = named_builtin("geom_mean")
    for x in [(1.0, 4.0), (2.0, 3.0, 0.5)]:
        assert result.H(*x) == pytest.approx(geom(*x), rel=1e-9)
    assert result.outer[3](2.0) == pytest.approx(8.0)


def test_abs_mean_cannot_be_factorized():
    with pytest.raises(NotBPreassociative) as info:
        factorize(named_builtin("abs_mean"))
    assert info.value.report.failed


def test_length_has_a_collapsing_diagonal():
    with pytest.raises(DiagonalNotInjective) as info:
        factorize(named_builtin("length_fn"))
    assert info.value.n == 1
    a, b = info.value.witness
    assert a != b


def test_closed_forms_need_a_diagonal_inverse():
    F = VarFn(name="double_sum", domain=DomainDesc.reals(), evaluator=lambda x: 2 * math.fsum(x), default=0)
    with pytest.raises(NoDiagonalInverse, match="no closed-form diagonal inverse"):
        factorize(F)


def test_factorize_recovers_max_behind_per_arity_relabelling(exhaustive):
    F = tabulated([0, 1, 2], 3, lambda x: (max(x) + len(x)) % 3, name="shifted_max")
    result = factorize(F, exhaustive)
    assert result.path == "tabulated"
    assert result.ok
    assert all(result.checks.values())
    for x in strings_up_to([0, 1, 2], 3, min_len=1):
        assert result.H(*x) == max(x)
        assert result.recompose(x) == F(*x)
    assert check(result.H, "b_associative", exhaustive).passed
    # one-to-one diagonals of F go with identity diagonals of H
    for n in (1, 2, 3):
        assert parts.diagonal_is_injective(F, n)
        assert parts.diagonal_is_identity(result.H, n)


def test_factorization_result_serializes(exhaustive):
    F = tabulated([0, 1], 2, lambda x: x[0])
    doc = factorize(F, exhaustive).to_jsonable()
    assert doc["path"] == "tabulated"
    assert doc["H"]["max_arity"] == 2
    assert doc["outer"]["1"] == [[0, 0], [1, 1]]
    assert doc["convention"].startswith("least preimage")


def test_factorize_non_quasi_range_idempotent_table(exhaustive):
    # B-preassociative, but F_2 takes a value its diagonal never does.
    F = tabulated([0, 1], 2, lambda x: x[0] if len(x) == 1 else int(x[0] != x[1]))
    assert check(F, "b_preassociative", exhaustive).passed
    with pytest.raises(NotQuasiRangeIdempotent):
        factorize(F, exhaustive)


# ── idempotizable decomposition ──────────────────────────────────────────────

def test_sum_has_the_mean_as_unique_idempotent_factor():
    factor = idempotizable_decompose(named_builtin("sum"), 3, candidate=named_builtin("arith_mean"))
    assert factor.checks["idempotent"]
    assert factor.matches_candidate
    assert factor.part((1.0, 2.0, 6.0)) == pytest.approx(3.0)


def test_idempotent_functions_are_their_own_factor():
    factor = idempotizable_decompose(named_builtin("arith_mean"), 2)
    assert factor.part((1.0, 3.0)) == pytest.approx(2.0)
    assert factor.ok


def test_wrong_candidate_is_reported():
    factor = idempotizable_decompose(named_builtin("sum"), 2, candidate=named_builtin("first_proj"))
    assert factor.matches_candidate is False


def test_constant_has_no_idempotizable_decomposition():
    with pytest.raises(DiagonalNotInjective):
        idempotizable_decompose(named_builtin("constant", c=0, domain=[0, 1]), 2)


# ── building from a B-associative H ──────────────────────────────────────────

def test_composing_with_quasi_inverses_keeps_b_associativity(exhaustive):
    H = tabulated([0, 1, 2], 3, lambda x: min(max(x), 1), name="capped_max")
    F = compose_with_quasi_inverses(H)
    assert F.max_arity == 3
    assert F(2, 0) == 1
    assert check(F, "b_associative", exhaustive).passed


def test_composing_a_closed_form_on_a_finite_domain(exhaustive):
    F = compose_with_quasi_inverses(named_builtin("max_op", domain=[0, 1, 2]), max_len=3)
    assert F.is_tabulated
    assert check(F, "b_associative", exhaustive).passed


# ── affine identifiability ───────────────────────────────────────────────────

def test_affine_pair_of_logs_is_equivalent():
    verdict = affine_identifiability(named_generator("log"), affine(named_generator("log"), 2, 3))
    assert verdict.equivalent
    assert verdict.r == pytest.approx(2)
    assert verdict.s == pytest.approx(3)


def test_identity_is_equivalent_to_itself():
    g = with_named_outer(named_generator("identity"), "n_times")
    verdict = affine_identifiability(g, g)
    assert verdict.equivalent
    assert (verdict.r, verdict.s) == (pytest.approx(1), pytest.approx(0))


def test_cube_is_not_affine_in_the_identity():
    verdict = affine_identifiability(named_generator("identity"), named_generator("cube"))
    assert not verdict.equivalent
    assert verdict.witness is not None
    assert verdict.witness["h_mid"] != pytest.approx(verdict.witness["mean_h"])


def test_outer_sequences_must_follow_the_affine_fit():
    g1 = with_named_outer(named_generator("identity"), "n_times")
    shifted = affine(named_generator("identity"), 2, 3)
    mismatched = shifted.with_outer(outer_n_times(), "n_times")
    verdict = affine_identifiability(g1, mismatched)
    assert not verdict.equivalent
    assert verdict.detail == "outer maps disagree with the affine fit at arity 1"

    def matched_outer(n):
        return (lambda u: n * (u - 3) / 2), (lambda y: 2 * y / n + 3)

    assert affine_identifiability(g1, shifted.with_outer(matched_outer, "matched")).equivalent


def test_flat_generator_cannot_be_fitted():
    flat = GeneratorSpec("flat", lambda x: 1.0, lambda y: 0.0, DomainDesc.reals())
    with pytest.raises(DegenerateFit):
        affine_identifiability(named_generator("identity"), flat)
