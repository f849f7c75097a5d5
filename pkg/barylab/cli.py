"""barylab command line.

Commands:
  barylab check      - check named properties of a function
  barylab equiv      - cross-check the equivalence theorems on one function
  barylab factorize  - decompose F_n = f_n o H_n with H B-associative
  barylab construct  - build from sections, or replace the tail by constants
  barylab enumerate  - list the B-associative tables on a tiny domain
  barylab probe      - bounded counterexample search for an open question
  barylab eval       - evaluate a function on one string

Exit codes: 0 pass, 1 a property failed, 2 usage or input error, 3 budget exceeded.
Reports go to stdout as JSON (or to --out); summaries go to stderr.
"""

import re
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import typer
from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from barylab.builtins import named_builtin
from barylab.config import SEARCH
from barylab.core import log
from barylab.core.errors import (
    BaryLabError,
    BudgetExceeded,
    ConstructionError,
    ConditionBViolated,
    DiagonalNotInjective,
    NotBPreassociative,
    NotQuasiRangeIdempotent,
)
from barylab.core.log import error
from barylab.core.strings import string_to_jsonable, to_jsonable
from barylab.core.tables import load_table, table_to_dict
from barylab.core.varfn import VarFn, evaluate
from barylab.construct import (
    ConstantTail,
    constant_tail,
    enumerate_b_associative,
    from_sections,
    mean_sections,
    mz_sections,
    probe_open_problems,
    section_mismatch,
)
from barylab.construct.sections import SectionSpec
from barylab.factorization import factorize
from barylab.properties import (
    PropertyReport,
    SearchConfig,
    budget_exhausted,
    check,
    check_determination,
    check_equivalence_suite,
    check_many,
    dumps,
)
from barylab.properties.report import reports_to_jsonable

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

console = Console(stderr=True)

app = typer.Typer(
    name="barylab",
    help="Barycentric associativity checks, factorizations and constructions for *-ary functions",
    no_args_is_help=True,
    add_completion=False,
)

DEFAULT_PROPS = "b_preassociative,b_associative"

# Shared options. Numeric builtin parameters arrive as decimal strings.
FN = typer.Option(None, "--fn", help="Builtin family name, e.g. m_z, sum, arith_mean")
TABLE = typer.Option(None, "--table", help="Tabulated function file (JSON)")
Z = typer.Option(None, "--z", help="Parameter z of m_z")
GENERATOR = typer.Option(None, "--generator", help="Generator of quasi_arithmetic / pre_mean")
OUTER = typer.Option(None, "--outer", help="Outer sequence of pre_mean: inverse, n_times, exp_n")
DOMAIN = typer.Option(None, "--domain", help="Finite domain as comma-separated atoms, e.g. 0,1")
PARAM = typer.Option(None, "--param", help="Other builtin parameter as KEY=VALUE (repeatable)")
MAX_LEN = typer.Option(None, "--max-len", help="Longest string in the search space")
SAMPLES = typer.Option(SEARCH["samples"], "--samples", help="Random strings per length in sampled mode")
SEED = typer.Option(SEARCH["seed"], "--seed", help="Seed of the sampled search space")
BUDGET = typer.Option(None, "--budget", help="Evaluation budget (overrides BARYLAB_BUDGET)")
JOBS = typer.Option(None, "--jobs", help="Worker cap for parallel checkers")
OUT = typer.Option(None, "--out", help="Write the JSON report here instead of stdout")
TIMINGS = typer.Option(False, "--timings", help="Include elapsed times in the report")


@app.callback()
def main() -> None:
    load_dotenv()
    log.reset()


# ── input parsing ────────────────────────────────────────────────────────────

def _atom(token: str) -> Any:
    token = token.strip()
    for parse in (int, float):
        try:
            return parse(token)
        except ValueError:
            pass
    return token


_VECTOR = re.compile(r"\(([^()]*)\)")


def _atoms(raw: str) -> List[Any]:
    """Comma-separated atoms; parenthesized groups such as (1,2),(3,4) are vectors."""
    if not raw.strip():
        return []
    if "(" in raw:
        if _VECTOR.sub("", raw).strip(", "):
            raise typer.BadParameter(f"cannot mix vectors and scalars: {raw!r}")
        return [tuple(_atom(t) for t in group.split(",")) for group in _VECTOR.findall(raw)]
    return [_atom(t) for t in raw.split(",")]


def _builtin_params(z: Optional[str], generator: Optional[str], outer: Optional[str],
                    domain: Optional[str], extra: Optional[List[str]]) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    if z is not None:
        params["z"] = Fraction(z)
    if generator is not None:
        params["generator"] = generator
    if outer is not None:
        params["outer"] = outer
    if domain is not None:
        params["domain"] = _atoms(domain)
    for item in extra or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise typer.BadParameter(f"expected KEY=VALUE, got {item!r}", param_hint="--param")
        params[key.strip()] = _atom(value)
    return params


def _load_function(fn: Optional[str], table: Optional[Path], params: Dict[str, Any]) -> VarFn:
    if (fn is None) == (table is None):
        raise typer.BadParameter("give exactly one of --fn and --table")
    if table is not None:
        return load_table(table)
    return named_builtin(fn, **params)


def _config(max_len: Optional[int], samples: int, seed: int, budget: Optional[int],
            jobs: Optional[int]) -> SearchConfig:
    return SearchConfig(max_len=max_len, samples=samples, seed=seed, budget=budget, jobs=jobs)


# ── output ───────────────────────────────────────────────────────────────────

def _emit(payload: Dict[str, Any], out: Optional[Path]) -> None:
    data = dumps(payload)
    if out is None:
        typer.echo(data.decode(), nl=False)
    else:
        out.write_bytes(data)
        console.print(f"[dim]report written to {out}[/]")


def _summary(title: str, reports: List[PropertyReport]) -> None:
    table = Table(title=title)
    table.add_column("property")
    table.add_column("verdict")
    table.add_column("instances", justify="right")
    table.add_column("witness / detail")
    colors = {"pass": "green", "fail": "red", "unsupported": "yellow"}
    for r in reports:
        note = ""
        if r.witness is not None:
            note = str(r.witness.to_jsonable())
        elif r.detail:
            note = r.detail
        instances = str(r.space.instances) if r.space else "-"
        table.add_row(r.property, f"[{colors[r.status]}]{r.verdict()}[/]", instances, note)
    console.print(table)


def _exit_code(reports: List[PropertyReport]) -> int:
    if any(budget_exhausted(r) for r in reports):
        return EXIT_BUDGET
    if any(r.failed for r in reports):
        return EXIT_FAIL
    return EXIT_PASS


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Turn library errors into exit codes."""
    try:
        yield
    except BudgetExceeded as e:
        error(str(e))
        raise typer.Exit(EXIT_BUDGET)
    except (BaryLabError, ValueError) as e:
        error(str(e))
        raise typer.Exit(EXIT_USAGE)


# ── commands ─────────────────────────────────────────────────────────────────

@app.command("check")
def check_cmd(
    fn: Optional[str] = FN,
    table: Optional[Path] = TABLE,
    props: str = typer.Option(DEFAULT_PROPS, "--props", help="Comma-separated properties, e.g. symmetric(3)"),
    z: Optional[str] = Z,
    generator: Optional[str] = GENERATOR,
    outer: Optional[str] = OUTER,
    domain: Optional[str] = DOMAIN,
    param: Optional[List[str]] = PARAM,
    max_len: Optional[int] = MAX_LEN,
    samples: int = SAMPLES,
    seed: int = SEED,
    budget: Optional[int] = BUDGET,
    jobs: Optional[int] = JOBS,
    out: Optional[Path] = OUT,
    timings: bool = TIMINGS,
):
    """
    Check properties of one function.

    Examples:
        barylab check --fn sum --props b_preassociative,b_associative
        barylab check --fn m_z --z 2 --props b_associative --max-len 6
    """
    with _exit_codes():
        F = _load_function(fn, table, _builtin_params(z, generator, outer, domain, param))
        cfg = _config(max_len, samples, seed, budget, jobs)
        names = [p.strip() for p in props.split(",") if p.strip()]
        if not names:
            raise typer.BadParameter("no properties given", param_hint="--props")
        reports = check_many(F, names, cfg)
    _summary(F.name, reports)
    _emit({"command": "check", "function": F.name, "params": _params(F), "seed": seed,
           "reports": reports_to_jsonable(reports, timings=timings)}, out)
    raise typer.Exit(_exit_code(reports))


@app.command("equiv")
def equiv_cmd(
    fn: Optional[str] = FN,
    table: Optional[Path] = TABLE,
    z: Optional[str] = Z,
    generator: Optional[str] = GENERATOR,
    outer: Optional[str] = OUTER,
    domain: Optional[str] = DOMAIN,
    param: Optional[List[str]] = PARAM,
    max_len: Optional[int] = MAX_LEN,
    samples: int = SAMPLES,
    seed: int = SEED,
    budget: Optional[int] = BUDGET,
    jobs: Optional[int] = JOBS,
    out: Optional[Path] = OUT,
):
    """Check both sides of every equivalence theorem independently and compare."""
    with _exit_codes():
        F = _load_function(fn, table, _builtin_params(z, generator, outer, domain, param))
        verdicts = check_equivalence_suite(F, _config(max_len, samples, seed, budget, jobs))

    summary = Table(title=f"equivalences for {F.name}")
    for column in ("theorem", "lhs", "rhs", "agree"):
        summary.add_column(column)
    for v in verdicts:
        mark = "[green]yes[/]" if v.agree else ("[red]CRITICAL[/]" if v.critical else "[yellow]no[/]")
        summary.add_row(v.theorem, f"{v.lhs}={v.lhs_status}", f"{v.rhs}={v.rhs_status}", mark)
    console.print(summary)

    _emit({"command": "equiv", "function": F.name, "params": _params(F), "seed": seed,
           "verdicts": [v.model_dump() for v in verdicts]}, out)
    raise typer.Exit(EXIT_FAIL if any(v.critical for v in verdicts) else EXIT_PASS)


@app.command("factorize")
def factorize_cmd(
    fn: Optional[str] = FN,
    table: Optional[Path] = TABLE,
    z: Optional[str] = Z,
    generator: Optional[str] = GENERATOR,
    outer: Optional[str] = OUTER,
    domain: Optional[str] = DOMAIN,
    param: Optional[List[str]] = PARAM,
    max_len: Optional[int] = MAX_LEN,
    samples: int = SAMPLES,
    seed: int = SEED,
    budget: Optional[int] = BUDGET,
    jobs: Optional[int] = JOBS,
    out: Optional[Path] = OUT,
    timings: bool = TIMINGS,
):
    """
    Factorize a B-preassociative, arity-wise quasi-range-idempotent function.

    Exits 1 when the function is not B-preassociative, or when some
    arity has a diagonal section that is not one-to-one or a value
    outside the range of its diagonal.
    """
    with _exit_codes():
        F = _load_function(fn, table, _builtin_params(z, generator, outer, domain, param))
        cfg = _config(max_len, samples, seed, budget, jobs)
        try:
            result = factorize(F, cfg)
        except NotBPreassociative as e:
            _summary(F.name, [e.report])
            _emit({"command": "factorize", "function": F.name, "seed": seed, "error": "not_b_preassociative",
                   "reports": reports_to_jsonable([e.report], timings=timings)}, out)
            raise typer.Exit(EXIT_FAIL)
        except NotQuasiRangeIdempotent as e:
            error(str(e))
            _emit({"command": "factorize", "function": F.name, "seed": seed,
                   "error": "not_quasi_range_idempotent", "n": e.n, "witness": to_jsonable(e.witness)}, out)
            raise typer.Exit(EXIT_FAIL)
        except DiagonalNotInjective as e:
            error(str(e))
            _emit({"command": "factorize", "function": F.name, "seed": seed,
                   "error": "diagonal_not_injective", "n": e.n, "witness": to_jsonable(e.witness)}, out)
            raise typer.Exit(EXIT_FAIL)

    _summary(f"factorization of {F.name} ({result.path})", result.reports)
    for name, ok in sorted(result.checks.items()):
        console.print(f"{'[green]+[/]' if ok else '[red]-[/]'} {name}")
    payload = {"command": "factorize", "seed": seed, **result.to_jsonable(timings=timings)}
    _emit(payload, out)
    code = _exit_code(result.reports)
    raise typer.Exit(code if code != EXIT_PASS or result.ok else EXIT_FAIL)


def _section_spec(sections: str, z: Optional[str], base: Optional[VarFn], side: str,
                  max_arity: Optional[int]) -> SectionSpec:
    if sections == "mean":
        return mean_sections()
    if sections == "m_z":
        return mz_sections(Fraction(z) if z is not None else Fraction(1, 2))
    if sections == "of":
        if base is None:
            raise typer.BadParameter("--sections of needs --fn or --table")
        return SectionSpec.of(base, sides=side, max_arity=max_arity)
    raise typer.BadParameter(f"unknown sections {sections!r}; expected mean, m_z or of", param_hint="--sections")


@app.command("construct")
def construct_cmd(
    kind: str = typer.Option("sections", "--kind", help="sections or tail"),
    sections: str = typer.Option("mean", "--sections", help="mean, m_z or of (the sections of --fn/--table)"),
    side: str = typer.Option("r", "--side", help="Side marker used by --sections of: r or l"),
    max_arity: Optional[int] = typer.Option(None, "--max-arity", help="Highest arity built"),
    cutoff: int = typer.Option(1, "--cutoff", help="Tail: parts above this arity become constant"),
    constant: Optional[str] = typer.Option(None, "--constant", help="Tail: the constant atom"),
    fn: Optional[str] = FN,
    table: Optional[Path] = TABLE,
    z: Optional[str] = Z,
    generator: Optional[str] = GENERATOR,
    outer: Optional[str] = OUTER,
    domain: Optional[str] = DOMAIN,
    param: Optional[List[str]] = PARAM,
    max_len: Optional[int] = MAX_LEN,
    samples: int = SAMPLES,
    seed: int = SEED,
    budget: Optional[int] = BUDGET,
    jobs: Optional[int] = JOBS,
    out: Optional[Path] = OUT,
    timings: bool = TIMINGS,
):
    """
    Build a B-associative function and cross-check it.

    Examples:
        barylab construct --sections m_z --z 2 --max-arity 5
        barylab construct --kind tail --fn max_op --domain 0,1 --cutoff 1 --constant 1
    """
    with _exit_codes():
        cfg = _config(max_len, samples, seed, budget, jobs)
        has_base = fn is not None or table is not None
        base = _load_function(fn, table, _builtin_params(z, generator, outer, domain, param)) if has_base else None

        if kind == "tail":
            if base is None or constant is None:
                raise typer.BadParameter("--kind tail needs a base function and --constant")
            result = constant_tail(ConstantTail(base=base, cutoff=cutoff, constants=_atom(constant)), cfg)
            reports = [result.base_report] + ([result.report] if result.report is not None else [])
            _summary(result.function.name, reports)
            _emit({"command": "construct", "kind": "tail", "function": result.function.name, "seed": seed,
                   "precondition_met": result.precondition_met,
                   "reports": reports_to_jsonable(reports, timings=timings)}, out)
            if not result.precondition_met:
                raise typer.Exit(EXIT_FAIL)
            raise typer.Exit(_exit_code(reports))

        if kind != "sections":
            raise typer.BadParameter(f"unknown kind {kind!r}; expected sections or tail", param_hint="--kind")
        if sections == "of" and max_arity is None and base is not None:
            # sections are only known up to the search length
            max_arity = base.arity_bound(max_len or SEARCH["max_len"])
        spec = _section_spec(sections, z, base, side, max_arity)
        try:
            G = from_sections(spec, max_arity, cfg)
        except ConstructionError as e:
            error(str(e))
            failure: Dict[str, Any] = {"command": "construct", "kind": "sections", "spec": spec.name,
                                       "seed": seed, "error": type(e).__name__, "k": e.k,
                                       "witness": to_jsonable(e.witness)}
            if isinstance(e, ConditionBViolated):
                failure["condition"] = e.kind
            _emit(failure, out)
            raise typer.Exit(EXIT_FAIL)
        reports = [check(G, "b_associative", cfg)]
        if base is not None and sections == "of":
            reports.append(check_determination(base, G, side, cfg))
        mismatch = section_mismatch(G, spec, cfg)

    _summary(G.name, reports)
    _emit({"command": "construct", "kind": "sections", "function": G.name, "seed": seed,
           "section_mismatch": None if mismatch is None else string_to_jsonable(mismatch),
           "reports": reports_to_jsonable(reports, timings=timings)}, out)
    code = _exit_code(reports)
    raise typer.Exit(EXIT_FAIL if mismatch is not None and code == EXIT_PASS else code)


@app.command("enumerate")
def enumerate_cmd(
    domain: str = typer.Option("0,1", "--domain", help="Finite domain as comma-separated atoms"),
    max_arity: int = typer.Option(2, "--max-arity", help="Highest arity tabulated"),
    associative_only: bool = typer.Option(False, "--associative-only", help="Keep associative tables only"),
    idempotent_only: bool = typer.Option(False, "--idempotent-only", help="Keep idempotent tables only"),
    tables: bool = typer.Option(False, "--tables", help="Include every table in the report"),
    budget: Optional[int] = BUDGET,
    jobs: Optional[int] = JOBS,
    out: Optional[Path] = OUT,
):
    """Enumerate the ε-standard B-associative tables on a tiny domain, with a census."""
    with _exit_codes():
        result = enumerate_b_associative(_atoms(domain), max_arity, associative_only=associative_only,
                                         idempotent_only=idempotent_only,
                                         cfg=SearchConfig(budget=budget, jobs=jobs))
    census = result.census
    console.print(f"[bold]{census.b_associative}[/] B-associative of {census.total} tables "
                  f"({census.associative} associative, {census.idempotent} idempotent)")
    payload: Dict[str, Any] = {"command": "enumerate", "census": census.model_dump(),
                               "returned": len(result.functions)}
    if tables:
        payload["tables"] = [table_to_dict(F) for F in result.functions]
    _emit(payload, out)
    raise typer.Exit(EXIT_PASS)


@app.command("probe")
def probe_cmd(
    problem: str = typer.Option(..., "--problem", help="a, b, d or divisibility"),
    domain: str = typer.Option("0,1", "--domain", help="Finite domain as comma-separated atoms"),
    max_arity: int = typer.Option(2, "--max-arity", help="Highest arity searched"),
    budget: Optional[int] = BUDGET,
    jobs: Optional[int] = JOBS,
    out: Optional[Path] = OUT,
):
    """Bounded counterexample search; exits 1 when a counterexample is found."""
    with _exit_codes():
        report = probe_open_problems(problem, _atoms(domain), max_arity, SearchConfig(budget=budget, jobs=jobs))
    console.print(f"[bold]{report.problem}[/]: {report.statement}")
    console.print(f"searched {report.searched}: {report.outcome}")
    _emit({"command": "probe", **report.model_dump()}, out)
    raise typer.Exit(EXIT_FAIL if report.counterexample else EXIT_PASS)


@app.command("eval")
def eval_cmd(
    input_: str = typer.Option(..., "--input", help="Comma-separated atoms; empty for ε"),
    fn: Optional[str] = FN,
    table: Optional[Path] = TABLE,
    z: Optional[str] = Z,
    generator: Optional[str] = GENERATOR,
    outer: Optional[str] = OUTER,
    domain: Optional[str] = DOMAIN,
    param: Optional[List[str]] = PARAM,
):
    """
    Evaluate a function on one string and print the value as JSON.

    Example:
        barylab eval --fn m_z --z 0.5 --input 1,2,3
    """
    with _exit_codes():
        F = _load_function(fn, table, _builtin_params(z, generator, outer, domain, param))
        value = evaluate(F, tuple(_atoms(input_)))
    typer.echo(dumps(to_jsonable(value)).decode(), nl=False)


def _params(F: VarFn) -> Dict[str, Any]:
    return {k: to_jsonable(v) for k, v in sorted(F.params.items())}


if __name__ == "__main__":
    app()
