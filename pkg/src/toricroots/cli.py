"""Command-line entry point.

Every command prints one JSON report. Exit status is 0 on success, 1 for a
domain error (the error class name is reported verbatim) and 2 for
malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import covers, kummer, qdiv, roots, toric
from .errors import MalformedFan, ToricRootsError
from .qdiv import QDivisor
from .toric import Fan

SCHEMA_VERSION = "1"
SCHEMA_PATH = Path(__file__).with_name("schemas") / "report.schema.json"
_SAFE_INT = 2**53


class MalformedInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message)


def load_schema() -> dict:
    """The JSON Schema for every report this CLI emits."""
    return json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))


# -- serialization ----------------------------------------------------------


def _int(x: int):
    return x if -_SAFE_INT < x < _SAFE_INT else str(x)


def _vec(v: Sequence[int]) -> list:
    return [_int(x) for x in v]


def _mat(A) -> list:
    return [_vec(r) for r in A]


def fan_report(fan: Fan) -> dict:
    return {"rank": fan.rank, "rays": _mat(fan.rays), "cones": _mat(fan.cones)}


def divisor_report(D: QDivisor) -> List[str]:
    return D.as_strings()


def root_report(rd: roots.RootData) -> dict:
    return {
        "n": _int(rd.n),
        "v": _vec(rd.v),
        "n_prime": _int(rd.n_prime),
        "d": _int(rd.d),
        "divisor": divisor_report(rd.divisor),
        "sublattice_basis": _mat(rd.sublattice_basis),
        "component_fan": fan_report(rd.component_fan),
        "ramification": _vec(rd.ramification),
        "pullback": divisor_report(rd.pullback),
        "eigensheaves": [divisor_report(s) for s in rd.eigensheaves],
        "flat": rd.flat,
        "toroidal": rd.toroidal,
        "psi_exponent": _vec(rd.psi_exponent),
    }


def kummer_report(kd: kummer.KummerDecomp) -> dict:
    return {
        "n": _int(kd.n),
        "d": _int(kd.d),
        "n_prime": _int(kd.n_prime),
        "f": qdiv.format_rational(kd.f),
        "g": kd.g.to_json(),
        "level": kd.level,
        "maximality": kd.maximality,
        "roots": [z.to_json() for z in kd.roots],
        "factors": [p.to_json() for p in kd.factors],
        "idempotents": [p.to_json() for p in kd.idempotents],
        "verified": True,
    }


def semistable_report(rep: covers.SemistableReport) -> dict:
    return {
        "n": _int(rep.n),
        "m": _vec(rep.m),
        "g": _int(rep.g),
        "n_prime": _int(rep.n_prime),
        "component_count": _int(rep.component_count),
        "lattice_basis": _mat(rep.lattice_basis),
        "lattice_index": _int(rep.lattice_index),
        "normal": rep.is_normal,
        "smooth": rep.is_smooth,
        "singular_strata": {
            "codim1": list(rep.codim1),
            "codim2": [list(p) for p in rep.codim2],
        },
    }


# -- input parsing ----------------------------------------------------------


def _parse_vector(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",")) if text.strip() else ()
    except ValueError:
        raise MalformedInput(f"expected comma-separated integers, got {text!r}") from None


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from None


def load_fan(path: str) -> Fan:
    fan = Fan.from_dict(_read_json(path))
    return toric.validate_fan(fan)


def load_divisor(path: str, fan: Fan) -> QDivisor:
    data = _read_json(path)
    coeffs = data.get("coefficients") if isinstance(data, dict) else None
    if not isinstance(coeffs, list):
        raise MalformedInput("divisor file needs a 'coefficients' array")
    try:
        values = [qdiv.parse_rational(str(c)) for c in coeffs]
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational in divisor file: {exc}") from None
    return QDivisor.from_values(fan, values)


def _parse_rational_arg(text: str):
    try:
        return qdiv.parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"expected a rational 'p/q', got {text!r}") from None


# -- commands ---------------------------------------------------------------


def cmd_validate(args) -> dict:
    fan = load_fan(args.fan)
    return {
        "fan": fan_report(fan),
        "quasi_smooth": toric.is_quasi_smooth(fan),
        "smooth": toric.is_smooth(fan),
    }


def cmd_div_char(args) -> dict:
    fan = load_fan(args.fan)
    v = _parse_vector(args.v)
    return {"v": _vec(v), "divisor": divisor_report(toric.div_char(fan, v))}


def cmd_class_group(args) -> dict:
    cl = toric.class_group(load_fan(args.fan))
    return {"free_rank": cl.free_rank, "torsion": _vec(cl.torsion), "exponent": _int(cl.exponent)}


def cmd_root(args) -> dict:
    fan = load_fan(args.fan)
    return root_report(roots.normalized_char_root(fan, _parse_vector(args.v), args.n))


def cmd_ramify(args) -> dict:
    fan = load_fan(args.fan)
    v = _parse_vector(args.v)
    rows = [
        {"ray": i, "e": _vec(e), "order": _int(o), "ramification": _int(roots.ramification_index(o, args.n))}
        for i, (e, o) in enumerate(zip(fan.rays, toric.pairings(fan, v)))
    ]
    return {"n": args.n, "v": _vec(v), "rows": rows}


def cmd_eigensheaves(args) -> dict:
    fan = load_fan(args.fan)
    rd = roots.normalized_char_root(fan, _parse_vector(args.v), args.n)
    return {
        "n": args.n,
        "divisor": divisor_report(rd.divisor),
        "eigensheaves": [
            {"i": i, "divisor": divisor_report(s), "cartier": qdiv.is_cartier(s)}
            for i, s in enumerate(rd.eigensheaves)
        ],
        "flat": rd.flat,
    }


def cmd_diff_decomp(args) -> dict:
    fan = load_fan(args.fan)
    D = load_divisor(args.divisor, fan)
    sigma = _parse_vector(args.sigma) if args.sigma is not None else sorted(qdiv.frac_support(D))
    rows = roots.differential_decomposition(D, sigma, args.n, roots.Mode(args.mode))
    return {
        "mode": args.mode,
        "n": args.n,
        "sigma": sorted(sigma),
        "rows": [
            {"i": r.i, "twist": divisor_report(r.twist), "log_support": sorted(r.log_support)}
            for r in rows
        ],
    }


def cmd_codim1(args) -> dict:
    model = roots.codim1_model(args.n, args.m)
    table = []
    for i in range(model.n):
        a, b, c = roots.codim1_decompose(model, i)
        table.append({"i": i, "alpha": a, "beta": b, "gamma": c})
    return {
        "n": model.n,
        "m": model.m,
        "g": model.g,
        "n_prime": model.n_prime,
        "j": model.j,
        "m_prime": model.m_prime,
        "table": table,
    }


def cmd_kummer(args) -> dict:
    f = _parse_rational_arg(args.f)
    level = args.level if args.level is not None else kummer.minimal_level(args.n)
    return kummer_report(kummer.kummer_decompose(f, args.n, level))


def cmd_capelli(args) -> dict:
    ok, reason = kummer.capelli_reason(_parse_rational_arg(args.f), args.n)
    return {"f": args.f, "n": args.n, "irreducible": ok, "reason": reason}


def cmd_index_cover(args) -> dict:
    fan = load_fan(args.fan)
    cover = covers.index_one_cover(fan, load_divisor(args.divisor, fan))
    return {"r": _int(cover.r), "v": _vec(cover.v), "root": root_report(cover.root)}


def cmd_semistable(args) -> dict:
    return semistable_report(covers.semistable_analyze(_parse_vector(args.m), args.n))


COMMANDS = {
    "validate": cmd_validate,
    "div-char": cmd_div_char,
    "class-group": cmd_class_group,
    "root": cmd_root,
    "ramify": cmd_ramify,
    "eigensheaves": cmd_eigensheaves,
    "diff-decomp": cmd_diff_decomp,
    "codim1": cmd_codim1,
    "kummer": cmd_kummer,
    "capelli": cmd_capelli,
    "index-cover": cmd_index_cover,
    "semistable": cmd_semistable,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricroots", description=__doc__.splitlines()[0])
    parser.add_argument("-o", "--output", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, *opts):
        p = sub.add_parser(name, help=help_)
        for opt in opts:
            opt(p)
        return p

    fan = lambda p: p.add_argument("--fan", required=True, help="fan JSON file")
    divisor = lambda p: p.add_argument("--divisor", required=True, help="divisor JSON file")
    vec = lambda p: p.add_argument("--v", required=True, help="character, e.g. 1,1 (use --v=-1,2 for negatives)")
    n = lambda p: p.add_argument("--n", required=True, type=int)

    add("validate", "check a fan file", fan)
    add("div-char", "divisor of a character", fan, vec)
    add("class-group", "class group of the toric variety", fan)
    add("root", "normalized n-th root of a character", fan, vec, n)
    add("ramify", "ramification index per ray", fan, vec, n)
    add("eigensheaves", "eigensheaf divisors and flatness", fan, vec, n)
    add(
        "diff-decomp",
        "eigenspace decomposition of forms or derivations",
        fan,
        divisor,
        n,
        lambda p: p.add_argument("--mode", required=True, choices=[m.value for m in roots.Mode]),
        lambda p: p.add_argument("--sigma", help="ray indices of the log divisor; default Supp{D}"),
    )
    add("codim1", "local model over a prime divisor", n, lambda p: p.add_argument("--m", required=True, type=int))
    add(
        "kummer",
        "decompose T^n - f over a cyclotomic field",
        lambda p: p.add_argument("--f", required=True),
        n,
        lambda p: p.add_argument("--level", type=int, help="cyclotomic level N; default the least containing mu_n"),
    )
    add("capelli", "irreducibility of T^n - f over Q", lambda p: p.add_argument("--f", required=True), n)
    add("index-cover", "index one cover of a torsion divisor", fan, divisor)
    add(
        "semistable",
        "local model t^n = prod z_i^m_i",
        lambda p: p.add_argument("--m", required=True, help="multiplicities, e.g. 1,1"),
        n,
    )
    return parser


def _emit(report: dict, output: Optional[str]) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    output = None
    try:
        args = build_parser().parse_args(argv)
        output = args.output
        result = COMMANDS[args.command](args)
    except (MalformedInput, MalformedFan) as exc:
        _emit({"schema_version": SCHEMA_VERSION, "error": {"name": "MalformedInput", "detail": str(exc)}}, output)
        return 2
    except ToricRootsError as exc:
        _emit({"schema_version": SCHEMA_VERSION, "error": exc.to_dict()}, output)
        return 1
    _emit({"schema_version": SCHEMA_VERSION, "command": args.command, "result": result}, output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
