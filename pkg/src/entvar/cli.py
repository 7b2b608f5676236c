"""Command-line front end: analyze, generate, sweep, optimize, and reproduce.

File formats (JSON, complex numbers as [re, im] pairs):

  state file    {"dims": [3], "amplitudes": [[re, im], ...], "label": "..."}
  density file  {"dims": [2, 2], "matrix": [[re, im], ...]}   (row-major)

Qutrit amplitudes are ordered (|+1>, |0>, |-1>); multi-qubit amplitudes are
lexicographic with |00...0> first.  All diagnostics go to stderr; stdout
carries exactly one JSON document or one CSV table.  Exit codes: 0 success,
2 malformed input, 3 dimension mismatch, 4 optimizer non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from math import pi

import numpy as np

from . import entanglement, pentagram, repro, states
from .errors import DimensionMismatch, EntvarError, NoConvergence
from .linalg import DensityOperator, StateVector
from .observables import basis_by_name, expectation, variance
from .states import squeezing_report


# ---------------------------------------------------------------------------
# JSON with 17 significant digits (lossless double round-trip)
# ---------------------------------------------------------------------------

def dumps_json(obj, indent=0) -> str:
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return f"{float(obj):.17g}"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = [dumps_json(x, indent + 1) for x in obj]
        if not items:
            return "[]"
        inner = "  " * (indent + 1)
        return "[\n" + ",\n".join(inner + s for s in items) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = "  " * (indent + 1)
        rows = [f"{inner}{json.dumps(str(k))}: {dumps_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _print_json(obj):
    print(dumps_json(obj))


# ---------------------------------------------------------------------------
# State and density files
# ---------------------------------------------------------------------------

def _pairs_to_complex(pairs, what):
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"{what} must be a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def _complex_to_pairs(values):
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).reshape(-1)]


def state_to_obj(psi: StateVector, label=None) -> dict:
    out = {"dims": list(psi.dims), "amplitudes": _complex_to_pairs(psi.amplitudes)}
    if label is not None:
        out["label"] = label
    return out


def density_to_obj(rho: DensityOperator, label=None) -> dict:
    out = {"dims": list(rho.dims), "matrix": _complex_to_pairs(rho.matrix.reshape(-1))}
    if label is not None:
        out["label"] = label
    return out


def obj_to_state(obj) -> StateVector:
    if not isinstance(obj, dict) or "dims" not in obj or "amplitudes" not in obj:
        raise ValueError("state file needs 'dims' and 'amplitudes'")
    return StateVector(tuple(obj["dims"]), _pairs_to_complex(obj["amplitudes"], "amplitudes"))


def obj_to_density(obj) -> DensityOperator:
    if not isinstance(obj, dict) or "dims" not in obj or "matrix" not in obj:
        raise ValueError("density file needs 'dims' and 'matrix'")
    dims = tuple(int(d) for d in obj["dims"])
    d = int(np.prod(dims))
    flat = _pairs_to_complex(obj["matrix"], "matrix")
    if flat.size != d * d:
        raise ValueError(f"matrix has {flat.size} entries, expected {d * d}")
    return DensityOperator(dims, flat.reshape(d, d))


def load_json_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_state_or_density(path):
    obj = load_json_file(path)
    if isinstance(obj, dict) and "amplitudes" in obj:
        return obj_to_state(obj)
    if isinstance(obj, dict) and "matrix" in obj:
        return obj_to_density(obj)
    raise ValueError("file is neither a state file nor a density file")


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def analysis_report(psi, basis, tol: float) -> dict:
    """Serializable bundle: expectations, variances, totals, measure, flags."""
    result = entanglement.assess(psi, basis, tol=tol)
    observables = [
        {
            "label": basis.labels[i],
            "expectation": expectation(X, psi),
            "variance": variance(X, psi),
        }
        for i, X in enumerate(basis.operators)
    ]
    report = {
        "basis": {"name": basis.name, "dim": basis.dim, "operators": len(basis.operators)},
        "dims": list(psi.dims),
        "observables": observables,
        "total_variance": result.total_variance,
        "v_min": result.v_min,
        "v_max": result.v_max,
        "mu": result.mu,
        "completely_entangled": result.completely_entangled,
        "residual": result.residual,
    }
    if isinstance(psi, StateVector) and psi.dims == (3,):
        sq = squeezing_report(psi)
        report["squeezing"] = {
            "mean_spin": [float(x) for x in sq.mean_spin],
            "min_transverse_variance": sq.min_transverse_variance,
            "is_squeezed": sq.is_squeezed,
            "transverse_sum": sq.transverse_sum,
        }
    return report


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _require_json_format(args):
    if getattr(args, "format", "json") not in (None, "json"):
        raise ValueError(f"command '{args.command}' only emits JSON")


def cmd_analyze(args) -> int:
    _require_json_format(args)
    psi = obj_to_state(load_json_file(args.state_file))
    basis = basis_by_name(args.basis)
    _print_json(analysis_report(psi, basis, tol=args.tol))
    return 0


def cmd_maximize_variance(args) -> int:
    _require_json_format(args)
    basis = basis_by_name(args.basis)
    psi, value, residual = entanglement.maximize_total_variance(
        basis, restarts=args.restarts, seed=args.seed
    )
    if residual > 1e-3:
        print(
            f"warning: no completely entangled state exists for basis '{basis.name}' "
            f"(best residual {residual:.3g})",
            file=sys.stderr,
        )
    _print_json({"state": state_to_obj(psi), "value": value, "residual": residual})
    return 0


def cmd_generate(args) -> int:
    _require_json_format(args)
    family = args.family
    label = args.label
    if family == "coherent":
        obj = state_to_obj(states.coherent_state(args.alpha), label or f"coherent alpha={args.alpha}")
    elif family == "squeezed":
        obj = state_to_obj(states.squeezed_state(args.xi), label or f"squeezed xi={args.xi}")
    elif family == "ghz":
        obj = state_to_obj(states.ghz_state(), label or "ghz")
    elif family == "w":
        obj = state_to_obj(states.w_state(), label or "w")
    elif family == "bi":
        obj = state_to_obj(states.bi_state(), label or "bi")
    elif family == "werner-qutrit":
        obj = density_to_obj(states.werner_qutrit(args.x), label or f"werner-qutrit x={args.x}")
    elif family == "werner-2q":
        obj = density_to_obj(states.werner_two_qubit(args.x), label or f"werner-2q x={args.x}")
    elif family == "atom-field":
        obj = state_to_obj(
            states.atom_field_state(args.g1, args.g2), label or f"atom-field g1={args.g1} g2={args.g2}"
        )
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown family {family!r}")
    _print_json(obj)
    return 0


def cmd_concurrence(args) -> int:
    _require_json_format(args)
    loaded = load_state_or_density(args.file)
    rho = DensityOperator.from_state(loaded) if isinstance(loaded, StateVector) else loaded
    if rho.dims == (3,):
        value, kind = entanglement.concurrence_qutrit(rho), "qutrit"
    elif rho.dims == (2, 2):
        value, kind = entanglement.concurrence_two_qubit(rho), "two-qubit"
    else:
        raise DimensionMismatch(f"concurrence needs dims (3,) or (2, 2), got {rho.dims}")
    _print_json({"concurrence": value, "kind": kind})
    return 0


def cmd_tangle(args) -> int:
    _require_json_format(args)
    psi = obj_to_state(load_json_file(args.state_file))
    if psi.dims != (2, 2, 2):
        raise DimensionMismatch(f"tangle needs three qubits, got dims {psi.dims}")
    rho = DensityOperator.from_state(psi)
    from .linalg import partial_trace

    pairs = {}
    for keep in ((0, 1), (0, 2), (1, 2)):
        pairs["".join(map(str, keep))] = entanglement.concurrence_two_qubit(
            partial_trace(rho, keep)
        )
    _print_json({"tau": entanglement.three_tangle(psi), "pair_concurrences": pairs})
    return 0


def _parse_axis(text):
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3:
        raise ValueError("axis must be three comma-separated numbers")
    v = np.asarray(parts)
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        raise ValueError("axis must be nonzero")
    return v / norm


def cmd_pentagram(args) -> int:
    _require_json_format(args)
    psi = obj_to_state(load_json_file(args.state_file))
    if args.regular and args.vectors:
        raise ValueError("--regular and --vectors are mutually exclusive")
    if args.regular:
        pent = pentagram.regular_pentagram(_parse_axis(args.axis))
    elif args.vectors:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            pent = pentagram.clean_pentagram(json.loads(args.vectors))
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    else:
        pent, _ = pentagram.optimize_pentagram(psi, restarts=args.restarts, seed=args.seed)
    report = pentagram.pentagram_value(pent, psi)
    _print_json(
        {
            "pentagram": [[float(x) for x in row] for row in pent.vertices],
            "geometric_value": report.geometric_value,
            "bell_lhs": report.bell_lhs,
            "violated": report.violated,
        }
    )
    return 0


_SWEEP_DEFAULTS = {
    "werner-qutrit": (0.0, 1.0),
    "werner-2q": (0.0, 1.0),
    "squeezed": (0.0, pi / 2.0),
    "ghz-type": (0.0, 1.0),
}


def _sweep_rows(family, grid):
    if family == "werner-qutrit":
        header = ["x", "concurrence", "concurrence_ref"]
        rows = [
            [x, entanglement.concurrence_qutrit(states.werner_qutrit(x)), max(0.0, 1.0 - 4.0 * x / 3.0)]
            for x in grid
        ]
    elif family == "werner-2q":
        header = ["x", "concurrence", "concurrence_ref"]
        rows = [
            [x, entanglement.concurrence_two_qubit(states.werner_two_qubit(x)), max(0.0, 1.0 - 1.5 * x)]
            for x in grid
        ]
    elif family == "squeezed":
        header = ["xi", "mu", "mu_ref"]
        rows = [
            [x, entanglement.measure_qutrit(states.squeezed_state(x)), abs(np.sin(2.0 * x))]
            for x in grid
        ]
    elif family == "ghz-type":
        from .linalg import partial_trace

        header = ["x", "tau", "tau_ref", "pair_concurrence"]
        rows = []
        for x in grid:
            psi = states.ghz_type_state(x)
            pair = partial_trace(DensityOperator.from_state(psi), keep=(1, 2))
            rows.append(
                [
                    x,
                    entanglement.three_tangle(psi),
                    4.0 * x * x * (1.0 - x * x),
                    entanglement.concurrence_two_qubit(pair),
                ]
            )
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown sweep family {family!r}")
    return header, rows


def cmd_sweep(args) -> int:
    lo, hi = _SWEEP_DEFAULTS[args.family]
    xmin = lo if args.xmin is None else args.xmin
    xmax = hi if args.xmax is None else args.xmax
    if args.points < 2 or xmax < xmin:
        raise ValueError("need points >= 2 and xmax >= xmin")
    if (xmin < lo - 1e-12 or xmax > hi + 1e-12) and args.family != "squeezed":
        raise ValueError(f"grid [{xmin}, {xmax}] outside parameter domain [{lo}, {hi}]")
    header, rows = _sweep_rows(args.family, np.linspace(xmin, xmax, args.points))
    if args.format == "json":
        _print_json([dict(zip(header, row)) for row in rows])
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([f"{float(x):.17g}" for x in row])
    sys.stdout.write(buf.getvalue())
    return 0


def cmd_repro(args) -> int:
    if args.list:
        for name, _ in repro.ALL_CRITERIA:
            print(name)
        return 0
    ok = True
    for name, crit in repro.ALL_CRITERIA:
        result = crit()
        ok = ok and result.passed
        print(f"{'PASS' if result.passed else 'FAIL'}  {name}  [{result.detail}]")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number from {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for any stochastic step")
    common.add_argument("--tol", type=float, default=1e-8, help="zero-expectation tolerance")
    common.add_argument("--restarts", type=int, default=None, help="optimizer restarts")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="output format")

    parser = argparse.ArgumentParser(
        prog="entvar",
        description="Entanglement as extremal uncertainty of declared basic observables.",
        epilog="Qutrit amplitude order is (|+1>, |0>, |-1>), matching S_z = diag(1, 0, -1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="uncertainty analysis of a state file")
    p.add_argument("state_file")
    p.add_argument("--basis", default="su2-spin1", help="su3 | su2-spin1 | pauli-N")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("maximize-variance", parents=[common], help="search the total-variance maximum")
    p.add_argument("basis", help="su3 | su2-spin1 | pauli-N")
    p.set_defaults(func=cmd_maximize_variance, restarts_default=32)

    p = sub.add_parser("generate", parents=[common], help="emit a named state or density file")
    p.add_argument(
        "family",
        choices=("coherent", "squeezed", "ghz", "w", "bi", "werner-qutrit", "werner-2q", "atom-field"),
    )
    p.add_argument("--alpha", type=_complex_arg, default=0j, help="coherent displacement")
    p.add_argument("--xi", type=_complex_arg, default=0j, help="squeezing parameter")
    p.add_argument("--x", type=float, default=0.0, help="Werner mixing weight")
    p.add_argument("--g1", type=float, default=1.0)
    p.add_argument("--g2", type=float, default=1.0)
    p.add_argument("--label", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("concurrence", parents=[common], help="concurrence of a state or density file")
    p.add_argument("file")
    p.set_defaults(func=cmd_concurrence)

    p = sub.add_parser("tangle", parents=[common], help="3-tangle and pair concurrences")
    p.add_argument("state_file")
    p.set_defaults(func=cmd_tangle)

    p = sub.add_parser("pentagram", parents=[common], help="pentagram inequality test")
    p.add_argument("state_file")
    p.add_argument("--regular", action="store_true", help="use the regular pentagram")
    p.add_argument("--axis", default="0,0,1", help="symmetry axis for --regular, as x,y,z")
    p.add_argument("--vectors", default=None, help="explicit pentagram: JSON list of five 3-vectors")
    p.set_defaults(func=cmd_pentagram, restarts_default=64)

    p = sub.add_parser("sweep", parents=[common], help="parameter sweep with analytic reference")
    p.add_argument("family", choices=tuple(_SWEEP_DEFAULTS))
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--xmin", type=float, default=None)
    p.add_argument("--xmax", type=float, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("repro", parents=[common], help="run the acceptance table (PASS/FAIL per row)")
    p.add_argument("--list", action="store_true", help="list criteria without running them")
    p.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "restarts", None) is None:
        args.restarts = getattr(args, "restarts_default", 32)
    if getattr(args, "format", None) is None and args.command == "sweep":
        args.format = "csv"
    try:
        return args.func(args)
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (EntvarError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point():  # pragma: no cover - thin wrapper
    sys.exit(main())
