"""Command-line front end: one subcommand per computation, JSON in and out."""

from __future__ import annotations

import argparse
import json
import sys

from . import oracle
from .arf import (
    GF2Form,
    PreconditionError,
    arf_gf2,
    boundary_q0_to_formation,
    boundary_q1_to_L0,
    boundary_q3_to_L2,
    classical_arf,
    generalized_arf_form,
    generalized_arf_Zx,
    linking_arf_Zx,
)
from .linking import LinkingResolution, ResolutionError, eval_lambda, eval_mu
from .matrix import EpsForm, LagrangianWitness, Mat, SplitForm
from .poly import ResPoly
from .qgroups import (
    NumeratorError,
    X_Z,
    X_ZX,
    lgroups_table,
    reduce_q0_Zx,
    reduce_q1_Zx,
    reduce_q3_Zx,
    reduce_qn_Z,
    unil_table,
    UNIL_SPLITTING,
)

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_COUNTEREXAMPLE = 0, 2, 3, 4


class ParseError(Exception):
    pass


class CliPrecondition(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg} at line {exc.lineno}") from exc


def _matrix(data, key: str = "M") -> Mat:
    """A bare matrix, a bare integer (1x1), or an object holding one under `key`."""
    if isinstance(data, dict):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
        data = data[key]
    if isinstance(data, int) and not isinstance(data, bool):
        data = [[data]]
    try:
        return Mat.from_json(data)
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc


def _field(data, key: str):
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"missing field {key!r}")
    return data[key]


# subcommands


def cmd_lgroups(args) -> int:
    if args.unil:
        for n, g in enumerate(unil_table()):
            print(f"UNil_{n}(Z) = {g}")
        print(UNIL_SPLITTING)
        return EXIT_OK
    name = "Z" if args.ring == "z" else "Z[x]"
    for n, g in enumerate(lgroups_table(args.ring)):
        print(f"L^{n}({name}) = {g}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    m = _matrix(_load(args.input))
    g = args.group
    size = 2 if g.endswith("zx") else 1
    if m.shape != (size, size):
        raise ParseError(f"group {g} expects a {size}x{size} matrix, got {m.nrows}x{m.ncols}")
    try:
        if g == "q0zx":
            out = reduce_q0_Zx(m).to_json()
        elif g == "q3zx":
            out = reduce_q3_Zx(m).to_json()
        elif g == "q1zx":
            out = {"group": "q1zx", "value": reduce_q1_Zx(m)}
        else:
            out = reduce_qn_Z(int(g[1]), m).to_json()
    except NumeratorError as exc:
        raise CliPrecondition(f"membership: {exc}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    print(_dump(out))
    return EXIT_OK


def _gf2_form(data) -> GF2Form:
    rows = _field(data, "psi") if isinstance(data, dict) else data
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("psi must be a list of rows")
    try:
        return GF2Form.from_rows([[int(v) for v in r] for r in rows])
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def _witness(data) -> LagrangianWitness:
    try:
        return LagrangianWitness.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad witness: {exc}") from exc


def cmd_arf(args) -> int:
    data = _load(args.input)
    if args.mode == "classical":
        f = _gf2_form(data)
        if isinstance(data, dict) and "lagrangian" in data:
            e = [tuple(v) for v in data["lagrangian"]]
            estar = [tuple(v) for v in _field(data, "dual")]
            value = classical_arf(f, e, estar)
        else:
            value = arf_gf2(f)
        print(_dump({"arf": value}))
        return EXIT_OK
    if args.mode == "generalized":
        if isinstance(data, dict) and "mu" in data:
            try:
                s = SplitForm(int(data.get("epsilon", -1)), _matrix(data, "mu"), _matrix(data, "nu"))
            except ValueError as exc:
                raise CliPrecondition(str(exc)) from exc
            cls = generalized_arf_Zx(s)
        else:
            try:
                f = EpsForm.from_json(_field(data, "form"))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad form: {exc}") from exc
            cls = generalized_arf_form(f, _witness(_field(data, "witness")))
        print(_dump(cls.to_json()))
        return EXIT_OK
    res = _resolution(data)
    mu = None
    if isinstance(data, dict) and "mu_values" in data:
        mu = [ResPoly(2, [int(c) for c in v]) for v in data["mu_values"]]
    print(_dump(linking_arf_Zx(res, mu).to_json()))
    return EXIT_OK


def _resolution(data) -> LinkingResolution:
    if isinstance(data, dict) and "resolution" in data:
        data = data["resolution"]
    try:
        return LinkingResolution.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad resolution: {exc}") from exc


def cmd_boundary(args) -> int:
    m = _matrix(_load(args.input), "a" if args.ring == "z" else "M")
    x = X_Z if args.ring == "z" else X_ZX
    if m.nrows != x.rank:
        raise ParseError(f"expected a {x.rank}x{x.rank} input for ring {args.ring}")
    if args.n == 3:
        out = boundary_q3_to_L2(m, x).to_json()
    elif args.n == 1:
        out = boundary_q1_to_L0(m, x).to_json()
    elif args.n == 0:
        f = boundary_q0_to_formation(m, x)
        f.check(require_s=False)
        out = f.to_json()
    else:
        out = {"epsilon": 1, "psi": []}  # Q_2 vanishes, boundary is the zero form
    print(_dump(out))
    return EXIT_OK


def cmd_oracle(args) -> int:
    names = oracle.SUITES if args.suite == "all" else (args.suite,)
    ok = True
    reports = []
    for name in names:
        rep = oracle.run_suite(name, trials=args.trials, seed=args.seed, max_dim=args.max_dim)
        ok &= rep.passed
        reports.append(rep)
        if not args.json:
            print(rep.text())
    if args.json:
        print(_dump([r.to_json() for r in reports]))
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def _vector(v, u: int) -> tuple[list, list]:
    """{"x1": [...], "x0": [...]} or a flat list of 2u polynomials."""
    try:
        if isinstance(v, dict):
            x1, x0 = v["x1"], v["x0"]
        else:
            x1, x0 = v[:u], v[u:]
        if len(x1) != u or len(x0) != u:
            raise ValueError
        return [Mat.from_json([[e]])[0, 0] for e in x1], [Mat.from_json([[e]])[0, 0] for e in x0]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"vector must have {u} + {u} polynomial entries") from exc


def cmd_eval_linking(args) -> int:
    data = _load(args.input)
    res = _resolution(data)
    res.check()
    u = res.rank
    x = _vector(_field(data, "x"), u)
    out = {"mu": eval_mu(res, x).to_json()}
    if "y" in data:
        out["lambda"] = eval_lambda(res, x, _vector(data["y"], u)).to_json()
    print(_dump(out))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="arfinv", description="Exact Arf invariants and Q-group normal forms over Z and Z[x].")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("lgroups", help="print the hyperquadratic L-groups of Z or Z[x]")
    s.add_argument("--ring", choices=("z", "zx"), default="z")
    s.add_argument("--unil", action="store_true", help="print the UNil groups of Z instead")
    s.set_defaults(func=cmd_lgroups)

    s = sub.add_parser("reduce", help="normal form of a Q-group element")
    s.add_argument("--group", required=True, choices=("q0zx", "q1zx", "q3zx", "q0z", "q1z", "q2z", "q3z"))
    s.add_argument("-i", "--input", required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("arf", help="classical, generalized or linking Arf invariant")
    s.add_argument("--mode", required=True, choices=("classical", "generalized", "linking"))
    s.add_argument("-i", "--input", required=True)
    s.set_defaults(func=cmd_arf)

    s = sub.add_parser("boundary", help="boundary of a Q-group element as a form or formation")
    s.add_argument("--n", type=int, required=True, choices=(0, 1, 2, 3))
    s.add_argument("--ring", choices=("z", "zx"), default="z")
    s.add_argument("-i", "--input", required=True)
    s.set_defaults(func=cmd_boundary)

    s = sub.add_parser("oracle", help="run a brute-force verification suite")
    s.add_argument("--suite", required=True, choices=oracle.SUITES + ("all",))
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--max-dim", type=int, default=4)
    s.add_argument("--json", action="store_true", help="machine-readable report")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("eval-linking", help="evaluate mu(x) and lambda(x, y) on a resolution")
    s.add_argument("-i", "--input", required=True)
    s.set_defaults(func=cmd_eval_linking)
    return p


def _oneline(exc: Exception) -> str:
    return " ".join(str(exc).split())


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"error: parse: {_oneline(exc)}", file=sys.stderr)
        return EXIT_PARSE
    except (CliPrecondition, PreconditionError, ResolutionError, NumeratorError, oracle.BudgetError) as exc:
        print(f"error: precondition: {_oneline(exc)}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: precondition: {_oneline(exc)}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
