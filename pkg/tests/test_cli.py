import orjson
import pytest
from typer.testing import CliRunner

from barylab.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, app
from barylab.construct.probes import NO_COUNTEREXAMPLE

from conftest import table_doc

runner = CliRunner()


def run(*args: str):
    return runner.invoke(app, list(args))


@pytest.fixture
def report(tmp_path):
    path = tmp_path / "report.json"

    def _run(*args: str):
        result = run(*args, "--out", str(path))
        doc = orjson.loads(path.read_bytes()) if path.exists() else None
        return result, doc

    return _run


def test_sum_fails_b_associativity(report):
    result, doc = report("check", "--fn", "sum", "--props", "b_preassociative,b_associative")
    assert result.exit_code == EXIT_FAIL
    statuses = {r["property"]: r["status"] for r in doc["reports"]}
    assert statuses == {"b_preassociative": "pass", "b_associative": "fail"}
    failed = doc["reports"][1]
    assert failed["witness"] is not None
    assert failed["space"]["mode"] == "sampled"


def test_m_z_passes_b_associativity(report):
    result, doc = report("check", "--fn", "m_z", "--z", "2", "--props", "b_associative", "--max-len", "6")
    assert result.exit_code == EXIT_PASS
    assert doc["params"] == {"z": 2}
    assert doc["reports"][0]["space"]["max_len"] == 6


def test_parallel_check_output_is_byte_identical(tmp_path):
    args = ("check", "--fn", "m_z", "--z", "2", "--props", "b_associative,b_preassociative",
            "--max-len", "5", "--seed", "11", "--jobs", "4")
    outputs = []
    for i in range(2):
        path = tmp_path / f"run{i}.json"
        assert run(*args, "--out", str(path)).exit_code == EXIT_PASS
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    assert orjson.loads(outputs[0])["seed"] == 11


def test_check_a_table_file(report, write_table):
    path = write_table(table_doc([0, 1], 2, lambda x: x[0] if len(x) == 1 else x[0] ^ x[1]))
    result, doc = report("check", "--table", str(path), "--props", "b_associative,symmetric(2)")
    assert result.exit_code == EXIT_FAIL
    assert [r["status"] for r in doc["reports"]] == ["fail", "pass"]
    assert doc["reports"][0]["space"]["mode"] == "exhaustive"


def test_eval_prints_the_value():
    result = run("eval", "--fn", "m_z", "--z", "0.5", "--input", "1,2,3")
    assert result.exit_code == EXIT_PASS
    assert orjson.loads(result.stdout) == pytest.approx(2.0)


def test_eval_of_the_empty_string():
    result = run("eval", "--fn", "length_fn", "--input", "")
    assert result.exit_code == EXIT_PASS
    assert orjson.loads(result.stdout) == 0


def test_eval_a_barycenter_of_vectors():
    result = run("eval", "--fn", "barycenter", "--param", "d=2", "--input", "(0,0),(2,4),(1,2)")
    assert result.exit_code == EXIT_PASS
    assert orjson.loads(result.stdout) == [1, 2]


@pytest.mark.parametrize("args", [
    ("check", "--fn", "median"),
    ("check", "--fn", "sum", "--table", "t.json"),
    ("check", "--fn", "sum", "--props", "commutative"),
    ("check", "--table", "does-not-exist.json"),
    ("eval", "--fn", "max_op", "--domain", "0,1", "--input", "0,2"),
    ("probe", "--problem", "c"),
    ("eval", "--fn", "barycenter", "--input", "(0,0),3"),
])
def test_usage_errors_exit_with_2(args):
    assert run(*args).exit_code == EXIT_USAGE


def test_budget_exhaustion_exits_with_3(report):
    result, doc = report("check", "--fn", "sum", "--props", "b_associative", "--budget", "10")
    assert result.exit_code == EXIT_BUDGET
    assert doc["reports"][0]["status"] == "unsupported"
    assert doc["reports"][0]["detail"].startswith("budget exceeded")


def test_equiv_on_max(report):
    result, doc = report("equiv", "--fn", "max_op", "--domain", "0,1", "--max-len", "3")
    assert result.exit_code == EXIT_PASS
    assert doc["verdicts"]
    assert all(v["agree"] for v in doc["verdicts"])


def test_factorize_sum(report):
    result, doc = report("factorize", "--fn", "sum")
    assert result.exit_code == EXIT_PASS
    assert doc["path"] == "closed_form"
    assert doc["outer"]["3"] == "v -> F(v^3)"


def test_factorize_refuses_abs_mean(report):
    result, doc = report("factorize", "--fn", "abs_mean")
    assert result.exit_code == EXIT_FAIL
    assert doc["error"] == "not_b_preassociative"


def test_factorize_refuses_a_collapsing_diagonal(report):
    result, doc = report("factorize", "--fn", "length_fn")
    assert result.exit_code == EXIT_FAIL
    assert doc["error"] == "diagonal_not_injective"
    assert doc["n"] == 1


def test_factorize_a_table(report, write_table):
    path = write_table(table_doc([0, 1, 2], 3, lambda x: (max(x) + len(x)) % 3))
    result, doc = report("factorize", "--table", str(path))
    assert result.exit_code == EXIT_PASS
    assert doc["path"] == "tabulated"
    assert all(doc["checks"].values())


def test_construct_from_mean_sections(report):
    result, doc = report("construct", "--sections", "mean", "--max-arity", "4")
    assert result.exit_code == EXIT_PASS
    assert doc["section_mismatch"] is None
    assert doc["reports"][0]["status"] == "pass"


def test_construct_from_the_sections_of_max(report):
    result, doc = report("construct", "--sections", "of", "--fn", "max_op", "--domain", "0,1,2")
    assert result.exit_code == EXIT_PASS
    assert [r["property"] for r in doc["reports"]] == ["b_associative", "determination"]


def test_construct_reports_the_broken_condition(report, write_table):
    path = write_table(table_doc([0, 1], 2, lambda x: x[0] if len(x) == 1 else x[0] ^ x[1]))
    result, doc = report("construct", "--sections", "of", "--table", str(path))
    assert result.exit_code == EXIT_FAIL
    assert doc["error"] == "ConditionBViolated"
    assert doc["condition"] == "range_idempotence"


def test_construct_a_constant_tail(report):
    result, doc = report("construct", "--kind", "tail", "--fn", "max_op", "--domain", "0,1",
                         "--cutoff", "1", "--constant", "1")
    assert result.exit_code == EXIT_PASS
    assert doc["precondition_met"]


def test_tail_needs_a_constant():
    assert run("construct", "--kind", "tail", "--fn", "max_op", "--domain", "0,1").exit_code == EXIT_USAGE


def test_enumerate_census(report):
    result, doc = report("enumerate", "--domain", "0,1", "--max-arity", "2", "--tables")
    assert result.exit_code == EXIT_PASS
    assert doc["census"]["total"] == 64
    assert doc["returned"] == doc["census"]["b_associative"] == len(doc["tables"])


def test_enumerate_guard_is_a_budget_error():
    assert run("enumerate", "--domain", "0,1", "--max-arity", "4").exit_code == EXIT_BUDGET


def test_probe(report):
    result, doc = report("probe", "--problem", "b", "--domain", "0,1", "--max-arity", "2")
    assert result.exit_code == EXIT_PASS
    assert doc["outcome"] == NO_COUNTEREXAMPLE
    assert doc["counterexample"] is None
