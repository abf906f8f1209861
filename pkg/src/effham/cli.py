"""Command-line front end.

    effham synthesize --trajectory greatcircle --g -0.8+0i --out h0.json
    effham propagate --hamiltonian sigma_y --initial up --t1 1.5707963
    effham bounds --hamiltonian berry:q=z --state-path run.json --out speeds.csv
    effham scenario --name figure1 --out fig1/
    effham check

Exit codes: 0 success, 1 invalid input, 2 numeric failure, 3 I/O error.
Errors go to stderr prefixed with ``ERROR <code>:``.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import scenarios, serialize
from .bounds import report_path
from .errors import EffhamError, ValidationError
from .geometry import PAULI
from .propagate import HamiltonianPath, PropagationOptions, propagate
from .synthesis import efficient_hamiltonian, gauge_fix, synthesize
from .trajectories import PRESETS, great_circle, latitude_circle, phased_great_circle


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


# --------------------------------------------------------------------------
# flag parsing; everything here runs before any computation


def parse_complex(text: str) -> complex:
    """``a+bi`` style complex literal (``j`` also accepted)."""
    s = text.strip().replace(" ", "").replace("I", "i")
    if s.endswith("i"):
        s = s[:-1] + "j"
        if s in ("j", "+j", "-j"):
            s = s.replace("j", "1j")
    try:
        z = complex(s)
    except ValueError:
        raise ValidationError(f"not a complex number: {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValidationError(f"complex value must be finite: {text!r}")
    return z


def parse_float(text: str, what: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise ValidationError(f"{what} must be a number, got {text!r}") from None
    if not math.isfinite(x):
        raise ValidationError(f"{what} must be finite, got {text!r}")
    return x


def _split_params(spec: str) -> dict[str, str]:
    out = {}
    for item in filter(None, spec.split(",")):
        if "=" not in item:
            raise ValidationError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


STATE_PRESETS = {
    "up": (1.0, 0.0),
    "down": (0.0, 1.0),
    "plus": (2**-0.5, 2**-0.5),
}


def parse_state(text: str) -> np.ndarray:
    if text in STATE_PRESETS:
        return np.array(STATE_PRESETS[text], dtype=np.complex128)
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) < 2:
        raise ValidationError(f"state must be up|down|plus or comma-separated complex entries, got {text!r}")
    v = np.array([parse_complex(p) for p in parts])
    if np.linalg.norm(v) == 0:
        raise ValidationError("initial state is zero")
    return v


def compile_expression(expr: str, variable: str = "z"):
    """Numeric function of one variable (``t`` or ``z``) from a text expression."""
    import sympy

    t = sympy.Symbol(variable)
    names = {"t": t, "z": t, "i": sympy.I, "I": sympy.I, "pi": sympy.pi, "e": sympy.E}
    try:
        parsed = sympy.sympify(expr, locals=names)
    except (sympy.SympifyError, TypeError, SyntaxError) as exc:
        raise ValidationError(f"cannot parse expression {expr!r}: {exc}") from None
    extra = parsed.free_symbols - {t}
    if extra:
        raise ValidationError(f"expression {expr!r} has unknown symbols {sorted(map(str, extra))}")
    fn = sympy.lambdify(t, parsed, modules="numpy")
    try:
        complex(fn(0.0))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"expression {expr!r} does not evaluate to a number: {exc}") from None
    return lambda x: complex(fn(x))


def parse_trajectory(spec: str):
    """Preset name (optionally ``name:key=v,...``) or a state-path JSON file."""
    name, _, rest = spec.partition(":")
    if name in PRESETS:
        params = _split_params(rest)
        if name == "greatcircle":
            return great_circle(parse_float(params.get("omega", "1"), "omega"))
        if name == "latitude":
            return latitude_circle(parse_float(params.get("theta", str(math.pi / 2)), "theta"),
                                   parse_float(params.get("omega", "1"), "omega"))
        return phased_great_circle(parse_float(params.get("rate", "1"), "rate"))
    return serialize.path_from_json(serialize.read_json(spec))


def parse_hamiltonian(spec: str) -> HamiltonianPath:
    name, _, rest = spec.partition(":")
    params = _split_params(rest)
    if name in ("sigma_x", "sigma_y", "sigma_z"):
        return HamiltonianPath.constant(PAULI["xyz".index(name[-1])])
    if name == "berry":
        q = compile_expression(params.get("q", "0"))
        return HamiltonianPath.analytic(lambda z: scenarios.optical_hamiltonian(q(z)), 2)
    if name == "bender":
        s = parse_float(params.get("s", "1"), "s")
        alpha = parse_float(params.get("alpha", "0"), "alpha")
        return HamiltonianPath.constant(scenarios.brachistochrone_hamiltonian(s, alpha))
    if name == "efficient":
        g = parse_complex(params.get("g", "1"))
        traj = parse_trajectory(params.get("trajectory", "greatcircle"))
        return efficient_hamiltonian(traj, g)
    if name.endswith(".json") or Path(spec).exists():
        return serialize.hamiltonian_from_json(serialize.read_json(spec))
    raise ValidationError(f"unknown Hamiltonian {spec!r}")


def _output(args, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        serialize.write_text(args.out, text)


def _check_interval(args) -> None:
    for name in ("t0", "t1", "step"):
        setattr(args, name, parse_float(getattr(args, name), name))
    if not args.t1 > args.t0:
        raise ValidationError("need t1 > t0")
    if not args.step > 0:
        raise ValidationError("step must be positive")


# --------------------------------------------------------------------------
# subcommands


def cmd_synthesize(args) -> int:
    _check_interval(args)
    g = parse_complex(args.g)
    traj = parse_trajectory(args.trajectory)
    g_series = None
    if args.g_series:
        doc = serialize.read_json(args.g_series)
        g_series = serialize.complex_vector_from_json(doc["g"] if isinstance(doc, dict) else doc)
    if hasattr(traj, "sample"):
        path = traj.sample(args.t0, args.t1, args.step, exact_derivative=not args.finite_difference)
    else:
        path = traj
    result = synthesize(gauge_fix(path), g if g_series is None else g_series)
    _output(args, serialize.dumps(serialize.synthesis_to_json(result)))
    return 0


def cmd_propagate(args) -> int:
    _check_interval(args)
    if args.record_every < 1:
        raise ValidationError("record-every must be positive")
    psi0 = parse_state(args.initial)
    H = parse_hamiltonian(args.hamiltonian)
    fmt = args.format or ("csv" if str(args.out).endswith(".csv") else "json")
    run = propagate(H, psi0, args.t0, args.t1,
                    PropagationOptions(step=args.step, renormalize=args.renormalize, record_every=args.record_every))
    text = serialize.path_csv(run) if fmt == "csv" else serialize.dumps(serialize.path_to_json(run))
    _output(args, text)
    return 0


def cmd_bounds(args) -> int:
    H = parse_hamiltonian(args.hamiltonian)
    path = serialize.path_from_json(serialize.read_json(args.state_path))
    _output(args, serialize.speed_report_csv(report_path(H, path)))
    return 0


def _floats(text: str) -> list[float]:
    return [parse_float(x, "parameter") for x in text.split(",") if x.strip()]


def _sweep(text: str) -> tuple[float, ...]:
    if ":" in text:
        a, b, n = text.split(":")
        return tuple(np.linspace(parse_float(a, "sweep start"), parse_float(b, "sweep stop"), int(n)))
    return tuple(_floats(text))


def scenario_config(name: str, params: dict[str, str]):
    def take(key, default):
        return params.pop(key, default)

    if name == "figure1":
        cfg = scenarios.Figure1Config(
            g_values=tuple(parse_complex(x) for x in take("g", "1,-0.8").split(",")),
            initial_states=tuple(parse_state(x) for x in take("initial", "up;down").split(";")),
            t_end=parse_float(take("t_end", "3"), "t_end"),
            step=parse_float(take("step", "1e-3"), "step"),
        )
    elif name == "optical":
        z0, z1 = _floats(take("z", "0,2"))
        cfg = scenarios.OpticalConfig(
            q_profile=compile_expression(take("q", "z")),
            z_range=(z0, z1),
            probe_states=tuple(parse_state(x) for x in take("probes", "up;down").split(";")),
            n_points=int(take("n", "201")),
            propagate_probes=take("propagate", "0") not in ("0", "false", "no"),
        )
    elif name == "pauli":
        cfg = scenarios.PauliConfig(tuple(_floats(take("alpha", "1,0,0"))), tuple(_floats(take("beta", "0,0,0"))))
    elif name == "brach":
        raw = {k: parse_float(params.pop(k), k) for k in ("r", "chi") if k in params}
        alpha = take("alpha", None if raw else "0")
        cfg = scenarios.BrachistochroneConfig(
            s=parse_float(take("s", "1"), "s"),
            alpha_angle=None if alpha is None else parse_float(alpha, "alpha"),
            sweep_alphas=_sweep(take("sweep", "")) if "sweep" in params else (),
            sweep_delta_e=parse_float(take("delta_e", "1"), "delta_e"),
            t_end=parse_float(take("t_end", "1"), "t_end"),
            step=parse_float(take("step", "1e-3"), "step"),
            **raw,
        )
        cfg.canonical()
    else:
        raise ValidationError(f"unknown scenario {name!r}")
    if params:
        raise ValidationError(f"unknown parameters for {name}: {sorted(params)}")
    return cfg


def cmd_scenario(args) -> int:
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise ValidationError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = v.strip()
    cfg = scenario_config(args.name, params)
    if args.out is None:
        raise ValidationError("scenario needs --out DIR")
    report = scenarios.SCENARIOS[args.name](cfg)
    out = Path(args.out)
    files = {"report.json": serialize.dumps(serialize.report_to_json(report))}
    for key, rows in report.series.items():
        files[re.sub(r"[^A-Za-z0-9_.+-]", "_", key) + ".csv"] = serialize.series_csv(rows)
    for fname, text in files.items():
        serialize.write_text(out / fname, text)
    for k, v in report.checks.items():
        print(f"{'pass' if v else 'FAIL'}  {report.name}:{k}")
    if not report.passed:
        print("ERROR 2: scenario checks failed", file=sys.stderr)
        return 2
    return 0


def cmd_check(args) -> int:
    from .checks import run_all, seed_from_env
    from ._backend import BACKEND

    seed = seed_from_env()
    print(f"effham check  seed={seed}  backend={BACKEND}")
    results = run_all(seed)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'pass' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.seconds:6.2f}s  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 2


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="effham", description="Evolution-speed bounds and efficient Hamiltonian synthesis")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("synthesize", help="build H0(t; g) for a trajectory")
    s.add_argument("--trajectory", default="greatcircle", help="greatcircle | latitude:theta=.. | phased:rate=.. | path.json")
    s.add_argument("--g", default="1", help="complex g, e.g. -0.8+0i")
    s.add_argument("--g-series", help="JSON list of [re, im] g values on the grid")
    s.add_argument("--t0", default="0")
    s.add_argument("--t1", default="3")
    s.add_argument("--step", default="1e-3")
    s.add_argument("--finite-difference", action="store_true", help="ignore exact preset derivatives")
    s.add_argument("--out")
    s.set_defaults(func=cmd_synthesize)

    s = sub.add_parser("propagate", help="integrate the Schroedinger equation")
    s.add_argument("--hamiltonian", required=True,
                   help="sigma_x|sigma_y|sigma_z|berry:q=EXPR|bender:s=V,alpha=V|efficient:g=G|file.json")
    s.add_argument("--initial", default="up", help="up | down | plus | comma-separated complex entries")
    s.add_argument("--t0", default="0")
    s.add_argument("--t1", required=True)
    s.add_argument("--step", default="1e-3")
    s.add_argument("--renormalize", action="store_true")
    s.add_argument("--record-every", type=int, default=1)
    s.add_argument("--format", choices=("json", "csv"))
    s.add_argument("--out")
    s.set_defaults(func=cmd_propagate)

    s = sub.add_parser("bounds", help="speed-bound report along a state path")
    s.add_argument("--hamiltonian", required=True)
    s.add_argument("--state-path", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("scenario", help="run a preset experiment")
    s.add_argument("--name", required=True, choices=sorted(scenarios.SCENARIOS))
    s.add_argument("--param", action="append", metavar="KEY=VALUE")
    s.add_argument("--out")
    s.set_defaults(func=cmd_scenario)

    s = sub.add_parser("check", help="run the seeded invariant suite")
    s.set_defaults(func=cmd_check)
    return p


# flags whose values may start with '-' (e.g. --g -0.8+0i)
_VALUE_FLAGS = {"--g", "--t0", "--t1", "--step", "--initial", "--param"}


def _attach_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_attach_values(argv))
        return args.func(args)
    except EffhamError as exc:
        print(f"ERROR {exc.exit_code}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"ERROR 3: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
