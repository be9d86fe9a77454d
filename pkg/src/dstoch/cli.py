"""Command-line front end: one subcommand per library construction.

Exit codes: 0 success (or a check subcommand's predicate holds), 1 a check
subcommand's predicate is false, 2 argument/format errors, 3 numeric or
precondition failures.  All output is deterministic given the inputs and
--seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .balance import balance, balance_minimal, balance_nr, normalize_to_stochastic
from .core import (
    classify,
    column_stats,
    format_float_matrix,
    format_matrix,
    parse_float_matrix,
    parse_matrix,
    parse_scalar,
)
from .errors import DstochError, FormatError
from .nearness import cospectral_ds, ds_condition, nearest_ds, nearest_ds_distance_sq
from .orthogonal import (
    canonical_basis,
    embed,
    extract,
    random_basis,
    realize_cospectral,
    realize_nonneg,
)
from .rado import RadoUpdate, rado_update, shift
from .spectra import (
    charpoly,
    charpoly_float,
    cospectral,
    format_poly,
    parse_spectrum,
    poly_from_spectrum,
    similar_to_unit_sums,
)

#: subcommands that operate on floating matrices / spectra
_FLOAT_ONLY = {"embed", "extract", "realize", "realize-cospectral", "normalize"}

#: value-taking flags whose argument may begin with a minus sign
_NEGATIVE_VALUE_FLAGS = ("--eps", "--eigenvalues")


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_matrix(path: str):
    return parse_matrix(_read(path))


def _load_float_matrix(path: str):
    return parse_float_matrix(_read(path))


def _emit(ns, text: str) -> None:
    if ns.output:
        Path(ns.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _cmd_classify(ns) -> int:
    cls = classify(_load_matrix(ns.matrix))
    if ns.json:
        _emit(
            ns,
            json.dumps({"tag": cls.tag.value, "r": None if cls.r is None else str(cls.r)}),
        )
    else:
        _emit(ns, str(cls))
    return 0


def _cmd_colstats(ns) -> int:
    x, a = column_stats(_load_matrix(ns.matrix))
    if ns.json:
        _emit(ns, json.dumps({"x": [str(v) for v in x], "a": [str(v) for v in a]}))
    else:
        _emit(ns, f"x: {' '.join(str(v) for v in x)}\na: {' '.join(str(v) for v in a)}")
    return 0


def _cmd_charpoly(ns) -> int:
    p = charpoly(_load_matrix(ns.matrix))
    if ns.json:
        _emit(ns, json.dumps({"coefficients": [str(c) for c in p.coefficients]}))
    else:
        _emit(ns, format_poly(p))
    return 0


def _cmd_cospectral(ns) -> int:
    verdict = cospectral(_load_matrix(ns.matrix), _load_matrix(ns.other))
    if ns.json:
        _emit(ns, json.dumps({"cospectral": verdict}))
    else:
        _emit(ns, "cospectral" if verdict else "not cospectral")
    return 0 if verdict else 1


def _cmd_check41(ns) -> int:
    verdict = similar_to_unit_sums(_load_matrix(ns.matrix))
    if ns.json:
        _emit(ns, json.dumps({"similar_to_unit_sums": verdict}))
    else:
        _emit(ns, "true" if verdict else "false")
    return 0 if verdict else 1


def _cmd_shift(ns) -> int:
    _emit(ns, format_matrix(shift(_load_matrix(ns.matrix), parse_scalar(ns.eps))))
    return 0


def _cmd_rado(ns) -> int:
    a = _load_matrix(ns.matrix)
    update = RadoUpdate(
        a,
        _load_matrix(ns.x),
        _load_matrix(ns.c),
        [parse_scalar(tok) for tok in ns.eigenvalues.split(",")],
    )
    _emit(ns, format_matrix(rado_update(a, update)))
    return 0


def _cmd_threshold(ns) -> int:
    report = balance_minimal(_load_matrix(ns.matrix))
    if ns.json:
        _emit(
            ns,
            json.dumps(
                {
                    "epsilon_threshold": str(report.epsilon_threshold),
                    "y_threshold": str(report.y_threshold),
                }
            ),
        )
    else:
        _emit(
            ns,
            f"epsilon_threshold = {report.epsilon_threshold}\n"
            f"y_threshold = {report.y_threshold}",
        )
    return 0


def _cmd_balance(ns) -> int:
    _emit(ns, format_matrix(balance(_load_matrix(ns.matrix), parse_scalar(ns.eps))))
    return 0


def _cmd_balance_min(ns) -> int:
    report = balance_minimal(_load_matrix(ns.matrix))
    _emit(ns, report.to_json() if ns.json else report.to_text())
    return 0


def _cmd_t33(ns) -> int:
    _emit(ns, format_matrix(balance_nr(_load_matrix(ns.matrix))))
    return 0


def _cmd_check4(ns) -> int:
    report = ds_condition(_load_matrix(ns.matrix))
    _emit(ns, report.to_json() if ns.json else report.to_text())
    return 0 if report.holds else 1


def _cmd_cospectral_ds(ns) -> int:
    _emit(ns, format_matrix(cospectral_ds(_load_matrix(ns.matrix))))
    return 0


def _cmd_nearest(ns) -> int:
    a = _load_matrix(ns.matrix)
    if ns.distance:
        _emit(ns, str(nearest_ds_distance_sq(a)))
    else:
        _emit(ns, format_matrix(nearest_ds(a)))
    return 0


def _basis_for(ns, n: int):
    if ns.basis == "random":
        return random_basis(n, ns.seed)
    return canonical_basis(n)


def _cmd_embed(ns) -> int:
    x = _load_float_matrix(ns.matrix)
    x.require_square()
    _emit(ns, format_float_matrix(embed(_basis_for(ns, x.n_rows + 1), x)))
    return 0


def _cmd_extract(ns) -> int:
    a = _load_float_matrix(ns.matrix)
    a.require_square()
    _emit(ns, format_float_matrix(extract(_basis_for(ns, a.n_rows), a)))
    return 0


def _cmd_realize_cospectral(ns) -> int:
    s = parse_spectrum(_read(ns.spectrum))
    basis = _basis_for(ns, s.size) if ns.basis == "random" else None
    _emit(ns, format_float_matrix(realize_cospectral(s, basis)))
    return 0


def _cmd_realize(ns) -> int:
    s = parse_spectrum(_read(ns.spectrum))
    basis = _basis_for(ns, s.size) if ns.basis == "random" else None
    b0 = realize_cospectral(s, basis)
    k, b = realize_nonneg(s, basis)
    target = [
        (Fraction(1 + k), Fraction(0)) if i == s.perron_index else e
        for i, e in enumerate(s.entries)
    ]
    want = [float(c) for c in poly_from_spectrum(target).coefficients]
    got = charpoly_float(b)
    report = {
        "k": k,
        "abs_min_entry": abs(min(b0.min_entry(), 0.0)),
        "row_sum": sum(b.row_sums()) / b.n_rows,
        "charpoly_residual": max(abs(p - q) for p, q in zip(got, want)),
    }
    _emit(ns, format_float_matrix(b) + "\n# " + json.dumps(report))
    return 0


def _cmd_normalize(ns) -> int:
    scaled, r = normalize_to_stochastic(_load_float_matrix(ns.matrix))
    _emit(ns, format_float_matrix(scaled) + f"\n# r = {r:.17g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the result to a file")
    common.add_argument("--json", action="store_true", help="emit reports as JSON")
    common.add_argument(
        "--mode",
        choices=["exact", "float"],
        help="declare the arithmetic mode; must match the subcommand",
    )

    parser = argparse.ArgumentParser(
        prog="dstoch",
        description="Exact constructions relating stochastic and doubly "
        "stochastic matrix spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def matrix_cmd(name, handler, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("matrix", help="path to a matrix file")
        p.set_defaults(handler=handler)
        return p

    matrix_cmd("classify", _cmd_classify, "row/column-sum structure tag")
    matrix_cmd("colstats", _cmd_colstats, "column sums and minima")
    matrix_cmd("charpoly", _cmd_charpoly, "exact characteristic polynomial")

    p = sub.add_parser(
        "cospectral", help="compare two characteristic polynomials", parents=[common]
    )
    p.add_argument("matrix")
    p.add_argument("other")
    p.set_defaults(handler=_cmd_cospectral)

    matrix_cmd(
        "check41",
        _cmd_check41,
        "is the matrix similar to one with unit row and column sums",
    )
    p = matrix_cmd("shift", _cmd_shift, "add eps times the uniform matrix")
    p.add_argument("--eps", required=True, help="rational shift, e.g. -1/2")

    p = sub.add_parser(
        "rado", help="rank-r eigenvalue replacement A + XC", parents=[common]
    )
    p.add_argument("matrix")
    p.add_argument("x", help="matrix of eigenvector columns")
    p.add_argument("c", help="update matrix")
    p.add_argument(
        "--eigenvalues",
        required=True,
        help="comma-separated eigenvalues of the columns",
    )
    p.set_defaults(handler=_cmd_rado)

    matrix_cmd(
        "threshold", _cmd_threshold, "least feasible shift, both parameterizations"
    )
    p = matrix_cmd(
        "balance", _cmd_balance, "balanced matrix at a given dominant-eigenvalue shift"
    )
    p.add_argument("--eps", required=True, help="rational shift, e.g. -1/2")
    matrix_cmd("balance-min", _cmd_balance_min, "balanced family report")
    matrix_cmd("t33", _cmd_t33, "balanced form with row/column sums n*r")
    matrix_cmd("check4", _cmd_check4, "per-column slack condition")
    matrix_cmd(
        "cospectral-ds",
        _cmd_cospectral_ds,
        "doubly stochastic matrix cospectral to a stochastic one",
    )
    p = matrix_cmd(
        "nearest", _cmd_nearest, "Frobenius projection onto unit row/column sums"
    )
    p.add_argument("--distance", action="store_true", help="print the squared gap")

    for name, handler, help_text in [
        ("embed", _cmd_embed, "embed an (n-1)-block into unit row/column sums"),
        ("extract", _cmd_extract, "recover the embedded (n-1)-block"),
    ]:
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("matrix")
        p.add_argument("--basis", choices=["canonical", "random"], default="canonical")
        p.add_argument("--seed", type=int, default=0, help="seed for --basis random")
        p.set_defaults(handler=handler)

    for name, handler, help_text in [
        ("realize", _cmd_realize, "nonnegative realization with shifted dominant entry"),
        (
            "realize-cospectral",
            _cmd_realize_cospectral,
            "unit-sum realization of a spectrum",
        ),
    ]:
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("spectrum", help="path to a spectrum file")
        p.add_argument("--basis", choices=["canonical", "random"], default="canonical")
        p.add_argument("--seed", type=int, default=0, help="seed for --basis random")
        p.set_defaults(handler=handler)

    p = sub.add_parser(
        "normalize", help="diagonal similarity onto constant row sums", parents=[common]
    )
    p.add_argument("matrix")
    p.set_defaults(handler=_cmd_normalize)

    return parser


def _merge_negative_values(argv: list[str]) -> list[str]:
    # argparse mistakes a leading minus for an option; fold `--eps -1/2`
    # into `--eps=-1/2` before parsing
    merged = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in _NEGATIVE_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            merged.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            merged.append(tok)
    return merged


def run(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        ns = parser.parse_args(_merge_negative_values(list(argv)))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if ns.mode == "exact" and ns.command in _FLOAT_ONLY:
        print(f"error: {ns.command} runs in float mode", file=sys.stderr)
        return 2
    if ns.mode == "float" and ns.command not in _FLOAT_ONLY:
        print(f"error: {ns.command} runs in exact mode", file=sys.stderr)
        return 2
    try:
        return ns.handler(ns)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ZeroDivisionError as exc:
        print(f"error: division by zero: {exc}", file=sys.stderr)
        return 3
    except DstochError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
