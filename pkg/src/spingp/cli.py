"""Command-line interface: ``spingp {spectrum,gp,sweep,verify}``.

All tabular output is CSV with '.' decimals, '\\n' line endings and
floats at 17 significant digits. Exit status is 0 on success, 1 for
usage errors and 2 for numeric failures (GP_UNDEFINED, INCOMMENSURATE,
NO_DRIVE).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from typing import List, Optional

import numpy as np

from .errors import NumericError
from .model import InitialStateSpec, ModelParams, build_h0, build_h1, classify_regime
from .phase import DEFAULT_STEPS
from .pipeline import run_gp
from .spin_algebra import hermitian_eig

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2

TWOFOLD_ANGLES = ("theta", "phi")
FOURFOLD_ANGLES = ("theta1", "theta2", "theta3", "phi1", "phi2", "phi3")
SWEEP_PARAMS = {
    "j": "j", "delta": "delta", "b": "b",
    "theta": "theta", "phi": "phi",
    "theta1": "theta1", "theta2": "theta2", "theta3": "theta3",
}
SWEEP_HEADER = ["param", "value", "regime", "T", "gamma_total", "gamma_dynamical",
                "gamma_geometric", "closed_form", "abs_error", "error"]
GP_HEADER = ["regime", "T", "gamma_total", "gamma_dynamical", "gamma_geometric",
             "closed_form", "abs_error"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    if x is None:
        return ""
    return f"{float(x) + 0.0:.17g}"


def _writer(stream):
    return csv.writer(stream, lineterminator="\n")


def _add_model_flags(p, required=True):
    p.add_argument("--j", type=float, required=required, help="exchange coupling J")
    p.add_argument("--delta", type=float, required=required, help="anisotropy")
    p.add_argument("--b", type=float, default=0.0 if required else None, help="magnetic field")


def _add_state_flags(p):
    for name in TWOFOLD_ANGLES + FOURFOLD_ANGLES:
        p.add_argument(f"--{name}", type=float, default=None)
    p.add_argument("--weights", type=str, default=None,
                   help="comma-separated mixture weights over the ground basis")
    p.add_argument("--degrees", action="store_true", help="angles are given in degrees")
    p.add_argument("--n", type=int, default=1, help="winding index of the period")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="Simpson panels")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spingp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="eigenvalues of H0, H1 and H")
    _add_model_flags(sp)
    sp.add_argument("--output", default=None)

    gp = sub.add_parser("gp", help="geometric phase after one cyclic period")
    _add_model_flags(gp)
    _add_state_flags(gp)
    gp.add_argument("--output", default=None)

    sw = sub.add_parser("sweep", help="geometric phase over a parameter grid")
    _add_model_flags(sw, required=False)
    _add_state_flags(sw)
    sw.add_argument("--param", required=True, type=str.lower, choices=sorted(SWEEP_PARAMS))
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--points", type=int, required=True)
    sw.add_argument("--output", required=True)

    sub.add_parser("verify", help="run the regression and invariant checks")
    return parser


def _levels(w, tol=1e-9):
    """Group ascending eigenvalues into (energy, degeneracy) levels."""
    out = []
    for x in w:
        if out and abs(x - out[-1][0]) <= tol * max(1.0, abs(x)):
            e, k = out[-1]
            out[-1] = (e, k + 1)
        else:
            out.append((float(x), 1))
    return out


def spectrum_rows(params: ModelParams):
    regime = classify_regime(params.J, params.delta)
    h0, h1 = build_h0(params), build_h1(params)
    rows = []
    for name, h in (("H0", h0), ("H1", h1), ("H", h0 + h1)):
        w, _ = hermitian_eig(h)
        for level, (e, deg) in enumerate(_levels(w)):
            rows.append([name, str(level), fmt(e), str(deg), regime.label])
    return rows


def _state_kind(args, swept: Optional[str] = None) -> str:
    kinds = set()
    if args.weights is not None:
        kinds.add("mixed")
    if any(getattr(args, a) is not None for a in TWOFOLD_ANGLES) or swept in TWOFOLD_ANGLES:
        kinds.add("twofold")
    if any(getattr(args, a) is not None for a in FOURFOLD_ANGLES) or swept in FOURFOLD_ANGLES:
        kinds.add("fourfold")
    if not kinds:
        raise UsageError("give an initial state: --theta/--phi, --theta1..--phi3, or --weights")
    if len(kinds) > 1:
        raise UsageError("initial state flags conflict: choose one of --theta/--phi, "
                         "--theta1..--phi3, --weights")
    return kinds.pop()


def _angle(args, name, override=None):
    if override is not None and override[0] == name:
        return override[1]
    v = getattr(args, name)
    if v is None:
        return 0.0
    return math.radians(v) if args.degrees else v


def _make_spec(args, kind, override=None) -> InitialStateSpec:
    if kind == "mixed":
        try:
            weights = [float(x) for x in args.weights.split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"cannot parse --weights {args.weights!r}")
        return InitialStateSpec.mixed(weights)
    if kind == "twofold":
        return InitialStateSpec.twofold(*(_angle(args, a, override) for a in TWOFOLD_ANGLES))
    return InitialStateSpec.fourfold(*(_angle(args, a, override) for a in FOURFOLD_ANGLES))


def _check_common(args):
    if args.n < 1:
        raise UsageError("--n must be a positive integer")
    if args.steps < 1:
        raise UsageError("--steps must be a positive integer")


def _emit(rows, header, output):
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(header)
    w.writerows(rows)
    text = buf.getvalue()
    if output is None:
        sys.stdout.write(text)
        return
    with open(output, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def cmd_spectrum(args) -> int:
    params = ModelParams(args.j, args.delta, args.b)
    if params.J == 0:
        raise UsageError("J = 0: uncoupled spins, no regime to classify")
    _emit(spectrum_rows(params), ["operator", "level", "energy", "degeneracy", "regime"], args.output)
    return EXIT_OK


def gp_row(params, spec, n, steps):
    out = run_gp(params, spec, n, steps)
    return [out.regime.label, fmt(out.T), fmt(out.gamma_total), fmt(out.gamma_dynamical),
            fmt(out.gamma_geometric), fmt(out.closed_form), fmt(out.abs_error)]


def cmd_gp(args) -> int:
    _check_common(args)
    kind = _state_kind(args)
    spec = _make_spec(args, kind)
    params = ModelParams(args.j, args.delta, args.b)
    if params.J == 0:
        raise UsageError("J = 0: uncoupled spins, no regime to classify")
    try:
        row = gp_row(params, spec, args.n, args.steps)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit([row], GP_HEADER, args.output)
    return EXIT_OK


def sweep_rows(args) -> List[List[str]]:
    name = SWEEP_PARAMS[args.param]
    if not args.start < args.stop:
        raise UsageError("--start must be smaller than --stop")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    _check_common(args)
    kind = _state_kind(args, swept=name)
    for flag in ("j", "delta"):
        if flag != name and getattr(args, flag) is None:
            raise UsageError(f"--{flag} is required unless it is the swept parameter")
    values = np.linspace(args.start, args.stop, args.points)
    angular = name not in ("j", "delta", "b")
    rows = []
    for v in values:
        v = float(v)
        inner = math.radians(v) if (angular and args.degrees) else v
        model = {"j": args.j, "delta": args.delta, "b": args.b if args.b is not None else 0.0}
        if not angular:
            model[name] = inner
        row = [name, fmt(v), "", "", "", "", "", "", "", ""]
        try:
            row[2] = classify_regime(model["j"], model["delta"]).label
            spec = _make_spec(args, kind, override=(name, inner) if angular else None)
            row[3:9] = gp_row(ModelParams(model["j"], model["delta"], model["b"]), spec,
                              args.n, args.steps)[1:]
        except NumericError as exc:
            row[9] = f"{exc.code}: {exc}"
        except ValueError as exc:
            row[9] = f"INVALID: {exc}"
        rows.append(row)
    return rows


def cmd_sweep(args) -> int:
    rows = sweep_rows(args)
    try:
        _emit(rows, SWEEP_HEADER, args.output)
    except OSError as exc:
        print(f"spingp: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import format_report, run_all

    checks = run_all()
    sys.stdout.write(format_report(checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_NUMERIC


COMMANDS = {"spectrum": cmd_spectrum, "gp": cmd_gp, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"spingp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"spingp: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"spingp: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
