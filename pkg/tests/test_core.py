import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from barylab.builtins import named_builtin
from barylab.core import sections
from barylab.core.domains import DomainDesc
from barylab.core.errors import ArityExceeded, DomainMismatch, EmptyDomain, TableFormatError
from barylab.core.sections import side_for
from barylab.core.strings import (
    EMPTY,
    EPSILON,
    UNDEFINED,
    concat,
    expand,
    power,
    strings_up_to,
    to_jsonable,
    values_equal,
)
from barylab.core.tables import load_table, parse_table, save_table, table_to_dict
from barylab.core.varfn import VarFn, evaluate, tabulate

from conftest import table_doc, tabulated

strings = st.lists(st.integers(min_value=0, max_value=3), max_size=6).map(tuple)


# ── string algebra ───────────────────────────────────────────────────────────

@given(strings, strings, strings)
def test_concat_is_associative(x, y, z):
    assert concat(concat(x, y), z) == concat(x, concat(y, z))


@given(strings)
def test_empty_string_is_neutral(x):
    assert concat(EMPTY, x) == x == concat(x, EMPTY)


@given(strings, st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4))
def test_power_adds_exponents(x, m, n):
    assert power(x, m + n) == concat(power(x, m), power(x, n))
    assert len(power(x, n)) == n * len(x)


def test_power_examples():
    assert power(("a", "b"), 2) == ("a", "b", "a", "b")
    assert power(("a",), 0) == EMPTY
    assert power(EMPTY, 5) == EMPTY
    with pytest.raises(ValueError):
        power(("a",), -1)


def test_expand_of_epsilon_is_the_empty_string():
    assert expand(EPSILON, 3) == EMPTY
    assert expand(2, 3) == (2, 2, 2)


def test_strings_are_ordered_by_length_then_lexicographically():
    assert list(strings_up_to([0, 1], 2)) == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]


def test_undefined_equals_nothing():
    assert not values_equal(UNDEFINED, UNDEFINED)
    assert not values_equal(EPSILON, 0)
    assert values_equal(EPSILON, EPSILON)
    assert values_equal(0.1 + 0.2, 0.3)
    assert not values_equal(Fraction(1, 3), Fraction(1, 2))
    assert not values_equal(math.inf, math.inf)


def test_to_jsonable():
    assert to_jsonable(EPSILON) == "epsilon"
    assert to_jsonable(UNDEFINED) == "undefined"
    assert to_jsonable(Fraction(1, 2)) == "1/2"
    assert to_jsonable(Fraction(4, 2)) == 2
    assert to_jsonable(math.nan) == "undefined"
    assert to_jsonable((Fraction(1, 2), 0)) == ["1/2", 0]


# ── domains ──────────────────────────────────────────────────────────────────

def test_domain_membership():
    assert DomainDesc.finite([0, 1]).contains(1)
    assert not DomainDesc.finite([0, 1]).contains(2)
    assert not DomainDesc.positive_reals().contains(0.0)
    assert DomainDesc.interval(0, 1, lo_closed=True).contains(0)
    assert not DomainDesc.reals().contains(math.inf)
    assert DomainDesc.vectors(2).contains((1, 2.5))
    assert not DomainDesc.vectors(2).contains((1,))


def test_empty_finite_domain_is_rejected():
    with pytest.raises(EmptyDomain):
        DomainDesc.finite([])


# ── evaluation ───────────────────────────────────────────────────────────────

def test_eval_examples():
    assert evaluate(named_builtin("sum"), (1, 2, 3)) == 6
    assert evaluate(named_builtin("length_fn"), ()) == 0
    assert evaluate(named_builtin("F_a", a=1, domain=[0, 1]), (0, 0)) is EPSILON
    assert evaluate(named_builtin("F_a", a=1, domain=[0, 1]), (0, 1)) == 1


def test_eval_rejects_foreign_atoms_and_long_strings():
    T = tabulated([0, 1], 2, lambda x: max(x))
    with pytest.raises(DomainMismatch):
        evaluate(T, (0, 2))
    with pytest.raises(ArityExceeded):
        evaluate(T, (0, 0, 0))
    assert evaluate(T, ()) is EPSILON


def test_varfn_needs_exactly_one_body():
    with pytest.raises(ValueError):
        VarFn(name="bad", domain=DomainDesc.reals())


def test_tabulate_materializes_a_closed_form():
    T = tabulate(named_builtin("max_op", domain=[0, 1, 2]), 3)
    assert T.is_tabulated
    assert len(T.table) == 3 + 9 + 27
    assert T(2, 0, 1) == 2


# ── sections ─────────────────────────────────────────────────────────────────

def test_section_examples():
    assert sections(named_builtin("arith_mean"), 3).delta(5) == pytest.approx(5)
    assert sections(named_builtin("sum"), 3).delta(2) == 6
    mz = sections(named_builtin("m_z", z=2), 2)
    for x, y in [(3, 1), (0.5, -2.0), (1, 1)]:
        assert mz.delta_r(x, y) == pytest.approx(2 * x - y)


def test_sections_respect_max_arity():
    T = tabulated([0, 1], 2, lambda x: x[0])
    with pytest.raises(ArityExceeded):
        sections(T, 3)
    with pytest.raises(ValueError):
        sections(T, 0)


def test_side_markers():
    assert side_for("r", 5) == "r"
    assert side_for("ℓ", 2) == "l"
    assert side_for(["l", "r"], 2) == "l"
    assert side_for(["l", "r"], 7) == "r"
    assert side_for({3: "l"}, 3) == "l"
    assert side_for({3: "l"}, 4) == "r"
    with pytest.raises(ValueError):
        side_for("x", 2)


# ── table files ──────────────────────────────────────────────────────────────

def test_table_file_round_trip(tmp_path):
    T = tabulated([0, 1], 3, lambda x: min(x), name="min3")
    path = tmp_path / "min3.json"
    save_table(T, path)
    loaded = load_table(path)
    assert dict(loaded.table) == dict(T.table)
    assert loaded.default is EPSILON
    assert loaded.name == "min3"


def test_parse_table_accepts_a_default_in_the_codomain():
    doc = table_doc([0, 1], 2, lambda x: x[-1])
    doc.update(codomain=[0, 1, 5], default=5)
    assert parse_table(doc).default == 5


def test_parse_table_accepts_epsilon_outputs():
    doc = table_doc([0, 1], 1, lambda x: "epsilon" if x == (0,) else 1)
    F = parse_table(doc)
    assert F(0) is EPSILON
    assert table_to_dict(F)["table"][0] == {"in": [0], "out": "epsilon"}


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d["table"].pop(), "missing"),
    (lambda d: d["table"].append({"in": [0, 2], "out": 0}), "outside the domain"),
    (lambda d: d["table"].append(dict(d["table"][0])), "duplicate"),
    (lambda d: d["table"].append({"in": [], "out": 0}), "nonempty"),
    (lambda d: d["table"].__setitem__(0, {"in": [0], "out": 7}), "outside the codomain"),
    (lambda d: d.update(max_arity=1), "longer than max_arity"),
    (lambda d: d.update(default=7), "default 7 is outside the codomain"),
])
def test_malformed_tables_are_rejected(mutate, message):
    doc = table_doc([0, 1], 2, lambda x: x[-1])
    mutate(doc)
    with pytest.raises(TableFormatError, match=message):
        parse_table(doc)


def test_load_table_reports_bad_files(tmp_path):
    with pytest.raises(TableFormatError, match="not found"):
        load_table(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(TableFormatError, match="not valid JSON"):
        load_table(broken)
