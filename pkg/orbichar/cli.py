"""
Command-line interface for orbichar.

Classify the irreducible modules of a lattice orbifold V_Q^σ, print their
characters and modular data, and certify the transformation laws.

Usage:
    orbichar example a3 --smatrix             # 9×9 S-matrix of the A3 orbifold
    orbichar example d4 --qdims               # quantum dimensions (1, 3, 2)
    orbichar example perm --p 3 --t 1 --classify
    orbichar classify --spec job.json         # any lattice + isometry
    orbichar verify --example a3 --tau 0,1 --tau 0.3,0.8
    orbichar constants --example d4           # β0, c0, v_k

Exit status: 0 success, 1 verification or computation failure, 2 input error.

Last updated: 17 October 2026
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import click
import pandas as pd

from orbichar import __version__
from orbichar.catalog import example as build_example
from orbichar.catalog import example_names
from orbichar.characters import (
    TYPE1,
    TYPE2,
    TYPE3,
    Classification,
    char_orbifold,
    char_orbifold_qexpansion,
    classify,
    conformal_weight,
)
from orbichar.config import Config, configure_logging
from orbichar.exceptions import NonIntegerCardinality, NotPerfectSquare, OrbicharError, TransformError
from orbichar.transforms import (
    dimensions,
    s_coefficients,
    t_matrix,
    v_constants,
    verify_transforms,
    verlinde_fusion,
)
from orbichar.utils.specio import JobSpec, load_spec, save_spec, spec_from_objects
from orbichar.utils.tables import (
    classification_table,
    dimension_table,
    format_complex,
    format_fraction,
    jsonable,
    matrix_frame,
    render,
)

__all__ = [
    "cli",
]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2

# raised by the computation on valid input
COMPUTATION_ERRORS = (TransformError, NotPerfectSquare, NonIntegerCardinality)


# ----------------------------------------------------------------------------
# JOB RESOLUTION
# ----------------------------------------------------------------------------

@dataclass
class Job:
    """Everything a command needs: the resolved spec and its classification."""

    spec: JobSpec
    cls: Classification
    taus: tuple[complex, ...]
    tol: float | None
    n_terms: int
    fmt: str
    exact: bool
    jobs: int


def parse_tau(text: str) -> complex:
    """
    "RE,IM" → complex.

    Example:
        >>> parse_tau("0.3,0.8")
        (0.3+0.8j)
    """
    try:
        re_part, im_part = (float(x) for x in text.split(","))
    except ValueError:
        raise click.BadParameter(f"'{text}' is not of the form RE,IM", param_hint="--tau")
    return complex(re_part, im_part)


def _fail(message: str, code: int = EXIT_INPUT_ERROR) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _resolve(spec_path, example_name, p, t, taus, tol, terms, fmt, exact, jobs, save_to) -> Job:
    if spec_path and example_name:
        _fail("use either --spec or --example, not both")
    if spec_path:
        spec = load_spec(spec_path)
        L, sigma = spec.build()
    else:
        name = example_name or "a3"
        L, sigma = build_example(name, p=p, t=t)
        spec = spec_from_objects(name if name != "perm" else f"perm-p{p}-t{t}", L, sigma)
    options = spec.options
    resolved_taus = tuple(parse_tau(x) for x in taus) or tuple(options.get("taus", ())) or Config.sample_taus
    resolved_tol = tol if tol is not None else options.get("tol")
    n_terms = terms if terms is not None else int(options.get("n_terms", Config.default_n_terms))
    fmt = fmt or options.get("format", "table")
    if save_to:
        saved = JobSpec(spec.name, spec.gram, spec.isometry, {
            **options, "taus": resolved_taus, "n_terms": n_terms, "format": fmt,
            **({"tol": resolved_tol} if resolved_tol is not None else {}),
        })
        save_spec(saved, save_to)
        logger.debug("saved resolved spec to %s", save_to)
    cls = classify(L, sigma)
    return Job(spec, cls, resolved_taus, resolved_tol, n_terms, fmt, exact, jobs)


def job_options(func: Callable) -> Callable:
    """The shared --spec/--example/... options of every pipeline command."""
    options = [
        click.option("--spec", "spec_path", type=click.Path(exists=True, dir_okay=False),
                     help="JSON job spec (gram, isometry, options)"),
        click.option("--example", "example_name", type=click.Choice(example_names(), case_sensitive=False),
                     help="Built-in example instead of --spec"),
        click.option("--p", "p", type=int, default=3, show_default=True, help="Prime p for the perm example"),
        click.option("--t", "t", type=int, default=1, show_default=True, help="|α|² = 2t for the perm example"),
        click.option("--tau", "taus", multiple=True, metavar="RE,IM", help="Sample point (repeatable)"),
        click.option("--tol", type=float, default=None, help="Absolute series tolerance"),
        click.option("--terms", type=int, default=None, help="Number of q-expansion terms"),
        click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default=None,
                     help="Output format"),
        click.option("--exact", is_flag=True, help="Exact q-expansions instead of numeric values"),
        click.option("--jobs", type=int, default=1, show_default=True, help="Worker threads"),
        click.option("--save-spec", "save_to", type=click.Path(dir_okay=False),
                     help="Write the resolved job spec to this file"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _run(job_kwargs: dict, action: Callable[[Job], int]) -> None:
    """Resolve the job, run one action and map failures to exit codes."""
    try:
        job = _resolve(**job_kwargs)
        code = action(job)
    except COMPUTATION_ERRORS as e:
        _fail(str(e), EXIT_FAILURE)
    except OrbicharError as e:
        _fail(str(e))
    except ValueError as e:
        _fail(str(e))
    sys.exit(code)


def _emit(frame: pd.DataFrame | None, payload, fmt: str, header: str | None = None) -> None:
    if fmt == "json":
        click.echo(json.dumps(jsonable(payload), indent=2, ensure_ascii=False))
        return
    if header and fmt == "table":
        click.echo(header)
    if frame is not None:
        click.echo(render(frame, fmt))


# ----------------------------------------------------------------------------
# ACTIONS
# ----------------------------------------------------------------------------
# Each action prints one artifact and returns an exit code, so the
# `example` command can chain several of them.

def action_classify(job: Job) -> int:
    cls = job.cls
    counts = cls.counts
    header = (f"{cls.total} modules ({counts[TYPE1]} Type1, {counts[TYPE2]} Type2, "
              f"{counts[TYPE3]} Type3)")
    weights = {i: conformal_weight(label).value for i, label in enumerate(cls.labels)}
    frame = classification_table(cls, weights)
    payload = {
        "name": job.spec.name,
        "total": cls.total,
        "counts": {"type1": counts[TYPE1], "type2": counts[TYPE2], "type3": counts[TYPE3]},
        "modules": frame.to_dict(orient="records"),
    }
    _emit(frame, payload, job.fmt, header)
    return EXIT_OK


def action_chars(job: Job) -> int:
    cls = job.cls
    labels = cls.labels
    if job.exact:
        shift = Fraction(cls.data.rank, 24)
        rows = []
        for label in labels:
            series = char_orbifold_qexpansion(label, job.n_terms)
            for e, c in sorted(series.terms().items()):
                rows.append({"name": label.display_name, "weight": format_fraction(e + shift),
                             "coefficient": str(c) if isinstance(c, int) else format_complex(complex(c)),
                             "exact": repr(c)})
        frame = pd.DataFrame(rows, columns=["name", "weight", "coefficient", "exact"])
        _emit(frame, {"name": job.spec.name, "terms": frame.to_dict(orient="records")}, job.fmt)
        return EXIT_OK

    columns = {}
    for tau in job.taus:
        columns[format_complex(tau)] = [char_orbifold(label, tau, job.tol) for label in labels]
    frame = pd.DataFrame({k: [format_complex(z) for z in v] for k, v in columns.items()},
                         index=[label.display_name for label in labels])
    payload = {"name": job.spec.name, "labels": [label.display_name for label in labels],
               "taus": list(job.taus), "values": [list(v) for v in columns.values()]}
    _emit(frame, payload, job.fmt)
    return EXIT_OK


def _matrix_payload(job: Job, matrix) -> dict:
    return {"name": job.spec.name, "kind": matrix.kind, "labels": list(matrix.labels),
            "independent": matrix.independent, "entries": matrix.entries}


def action_smatrix(job: Job) -> int:
    S = s_coefficients(job.cls)
    header = None
    if S.independent is False:
        header = "note: characters are linearly dependent; this is one valid coefficient matrix"
        click.echo(header, err=True)
    _emit(matrix_frame(S), _matrix_payload(job, S), job.fmt)
    return EXIT_OK


def action_tmatrix(job: Job) -> int:
    T = t_matrix(job.cls)
    _emit(matrix_frame(T), _matrix_payload(job, T), job.fmt)
    return EXIT_OK


def action_qdims(job: Job) -> int:
    report = dimensions(job.cls)
    frame = dimension_table(report)
    payload = {"name": job.spec.name, "labels": list(report.labels), "asymptotic": report.asymptotic,
               "quantum": report.quantum, "sum_rule": report.sum_rule}
    _emit(frame, payload, job.fmt, f"sum of squared asymptotic dimensions: {format_complex(report.sum_rule)}")
    return EXIT_OK


def action_fusion(job: Job) -> int:
    S = s_coefficients(job.cls)
    fusion = verlinde_fusion(S)
    names = fusion.labels
    rows = []
    for i in range(len(names)):
        for j in range(i, len(names)):
            product = fusion.product(i, j)
            rendered = " + ".join(f"{n}·{names[k]}" if n > 1 else names[k] for k, n in product.items())
            rows.append({"left": names[i], "right": names[j], "product": rendered})
    frame = pd.DataFrame(rows, columns=["left", "right", "product"])
    _emit(frame, {"name": job.spec.name, "labels": list(names), "N": fusion.N}, job.fmt)
    return EXIT_OK


def action_verify(job: Job) -> int:
    report = verify_transforms(job.cls, job.taus, job.tol, jobs=job.jobs)
    frame = pd.DataFrame({"name": list(report.labels),
                          "S residual": [f"{x:.3e}" for x in report.s_residuals],
                          "T residual": [f"{x:.3e}" for x in report.t_residuals]})
    status = "PASS" if report.passed else "FAIL"
    header = f"{status}: sum-rule residual {report.sum_rule_residual:.3e}, tolerance {report.tol:.1e}"
    payload = {"name": job.spec.name, "passed": report.passed, "tol": report.tol,
               "sum_rule_residual": report.sum_rule_residual, "labels": list(report.labels),
               "s_residuals": report.s_residuals, "t_residuals": report.t_residuals}
    _emit(frame, payload, job.fmt, header)
    return EXIT_OK if report.passed else EXIT_FAILURE


def action_constants(job: Job) -> int:
    consts = v_constants(job.cls.data.lattice, job.cls.sigma)
    p = job.cls.p
    c_name = "c_beta0" if p == 2 else "c0"
    rows = [{"constant": "beta0", "value": "(" + ",".join(format_fraction(x) for x in consts.beta0) + ")"},
            {"constant": c_name, "value": format_complex(consts.c_beta0)}]
    rows += [{"constant": f"v{k}", "value": format_complex(v)} for k, v in sorted(consts.values.items())]
    rows.append({"constant": "|v| expected", "value": format_complex(consts.modulus)})
    frame = pd.DataFrame(rows, columns=["constant", "value"])
    payload = {"name": job.spec.name, "beta0": consts.beta0, c_name: consts.c_beta0,
               "v": {str(k): v for k, v in consts.values.items()}, "modulus": consts.modulus}
    _emit(frame, payload, job.fmt)
    return EXIT_OK


ACTIONS: dict[str, Callable[[Job], int]] = {
    "classify": action_classify,
    "chars": action_chars,
    "smatrix": action_smatrix,
    "tmatrix": action_tmatrix,
    "qdims": action_qdims,
    "fusion": action_fusion,
    "verify": action_verify,
    "constants": action_constants,
}


# ----------------------------------------------------------------------------
# COMMANDS
# ----------------------------------------------------------------------------

@click.group()
@click.version_option(version=__version__, prog_name="orbichar")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr")
def cli(verbose: bool):
    """
    Characters and modular data of lattice orbifolds V_Q^σ.

    Examples:

        orbichar example a3 --smatrix

        orbichar example perm --p 3 --t 1 --classify

        orbichar verify --spec job.json --tau 0,1
    """
    Config.from_env()
    configure_logging("DEBUG" if verbose else None)


def _make_command(name: str, help_text: str) -> None:
    @job_options
    def command(**kwargs):
        _run(kwargs, ACTIONS[name])

    command.__doc__ = help_text
    cli.command(name=name)(command)


_make_command("classify", "List the irreducible modules with their conformal weights.")
_make_command("chars", "Character values at --tau, or exact q-expansions with --exact.")
_make_command("smatrix", "S-transformation coefficient matrix.")
_make_command("tmatrix", "Diagonal T-matrix.")
_make_command("qdims", "Asymptotic and quantum dimensions.")
_make_command("fusion", "Fusion rules from the Verlinde formula.")
_make_command("verify", "Check the S- and T-laws numerically at the sample points (exit 1 on failure).")
_make_command("constants", "β0, c_β0 / c0 and the v_k constants.")


@cli.command(name="example")
@click.argument("name", type=click.Choice(example_names(), case_sensitive=False))
@click.option("--classify", "want_classify", is_flag=True, help="Module list (default)")
@click.option("--chars", "want_chars", is_flag=True, help="Character values")
@click.option("--smatrix", "want_smatrix", is_flag=True, help="S-matrix")
@click.option("--tmatrix", "want_tmatrix", is_flag=True, help="T-matrix")
@click.option("--qdims", "want_qdims", is_flag=True, help="Dimensions")
@click.option("--fusion", "want_fusion", is_flag=True, help="Verlinde fusion")
@click.option("--verify", "want_verify", is_flag=True, help="Numeric certification")
@click.option("--constants", "want_constants", is_flag=True, help="v_k constants")
@click.option("--p", "p", type=int, default=3, show_default=True, help="Prime p for perm")
@click.option("--t", "t", type=int, default=1, show_default=True, help="|α|² = 2t for perm")
@click.option("--tau", "taus", multiple=True, metavar="RE,IM", help="Sample point (repeatable)")
@click.option("--tol", type=float, default=None, help="Absolute series tolerance")
@click.option("--terms", type=int, default=None, help="Number of q-expansion terms")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default=None, help="Output format")
@click.option("--exact", is_flag=True, help="Exact q-expansions for --chars")
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker threads")
@click.option("--save-spec", "save_to", type=click.Path(dir_okay=False), help="Write the job spec here")
def example_command(name, p, t, taus, tol, terms, fmt, exact, jobs, save_to, **wanted):
    """
    Run one of the built-in examples: a2, a2bar, a3, d4, perm.

    Examples:

        orbichar example a3 --smatrix

        orbichar example d4 --qdims --tmatrix
    """
    selected = [key[len("want_"):] for key, on in wanted.items() if on] or ["classify"]
    job_kwargs = dict(spec_path=None, example_name=name, p=p, t=t, taus=taus, tol=tol, terms=terms,
                      fmt=fmt, exact=exact, jobs=jobs, save_to=save_to)

    def chain(job: Job) -> int:
        code = EXIT_OK
        for i, key in enumerate(selected):
            if i and (job.fmt or "table") == "table":
                click.echo()
            code = max(code, ACTIONS[key](job))
        return code

    _run(job_kwargs, chain)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
