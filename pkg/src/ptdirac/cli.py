"""Command-line front end and deterministic CSV/JSON serialization.

Subcommands: scan, bound-states, critical-v1, resonances, verify,
space-component. All quantities are in natural units (energies in units of
the mass, lengths in 1/mass). Numeric output carries 12 significant digits
and is byte-reproducible for identical configurations; the optional
--timestamp flag adds wall-clock metadata to JSON only.

Exit codes: 0 success, 2 validation error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Sequence

import numpy as np

from .errors import PTDiracError
from .limits import (
    nonrelativistic_limit_check,
    real_well_limit_check,
    space_component_case,
)
from .matching import (
    matching_matrix_closed_form,
    matching_matrix_ode,
    matching_matrix_product,
)
from .potential import PotentialSpec
from .scattering import (
    ScanResult,
    energy_scan,
    find_transmission_resonances,
)
from .spectrum import complex_m22_zeros, critical_v1, real_bound_states

SCAN_CSV_HEADER = "E,reT,imT,T2,RLR2,RRL2,gainLR,gainRL,pole"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _num(x: float) -> float:
    # round to 12 significant digits so JSON round-trips reproduce the text
    return float(f"{x:.12g}")


def serialize_scan(
    scan: ScanResult,
    fmt: str,
    resonances=None,
    include_timestamp: bool = False,
) -> str:
    """Serialize a scan: CSV rows (pole rows keep the energy and the flag,
    amplitudes empty) or the documented JSON schema."""
    if len(scan) == 0:
        raise ValueError("cannot serialize an empty scan")
    if fmt == "csv":
        lines = [SCAN_CSV_HEADER]
        for i, e in enumerate(scan.energies):
            if scan.pole[i]:
                lines.append(f"{_fmt(e)},,,,,,,,1")
            else:
                lines.append(
                    ",".join(
                        (
                            _fmt(e),
                            _fmt(scan.t[i].real),
                            _fmt(scan.t[i].imag),
                            _fmt(scan.t2[i]),
                            _fmt(scan.r2_lr[i]),
                            _fmt(scan.r2_rl[i]),
                            _fmt(scan.gain_lr[i]),
                            _fmt(scan.gain_rl[i]),
                            "0",
                        )
                    )
                )
        return "\n".join(lines) + "\n"
    if fmt == "json":
        meta = {
            "v0": _num(scan.spec.v0),
            "v1": _num(scan.spec.v1),
            "b": _num(scan.spec.b),
            "q": scan.spec.q,
            "m": _num(scan.spec.m),
            "grid": {
                "emin": _num(scan.e_min),
                "emax": _num(scan.e_max),
                "n": scan.n_requested,
                "exclusion": _num(scan.exclusion_half_width),
            },
        }
        if include_timestamp:
            meta["generated_at"] = scan.created_at
        rows = []
        for i, e in enumerate(scan.energies):
            if scan.pole[i]:
                rows.append({"E": _num(e), "pole": 1})
            else:
                rows.append(
                    {
                        "E": _num(e),
                        "reT": _num(scan.t[i].real),
                        "imT": _num(scan.t[i].imag),
                        "T2": _num(scan.t2[i]),
                        "RLR2": _num(scan.r2_lr[i]),
                        "RRL2": _num(scan.r2_rl[i]),
                        "gainLR": _num(scan.gain_lr[i]),
                        "gainRL": _num(scan.gain_rl[i]),
                        "pole": 0,
                    }
                )
        res = [
            {
                "energy": _num(r.energy),
                "height": _num(r.height),
                "half_width": None if math.isnan(r.half_width) else _num(r.half_width),
            }
            for r in (resonances or [])
        ]
        return json.dumps({"meta": meta, "rows": rows, "resonances": res}, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _spec_meta(spec: PotentialSpec) -> dict:
    return {
        "v0": _num(spec.v0),
        "v1": _num(spec.v1),
        "b": _num(spec.b),
        "q": spec.q,
        "m": _num(spec.m),
    }


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--v0", type=float, required=True, help="real depth (units of m)")
    p.add_argument("--v1", type=float, default=0.0, help="imaginary depth (units of m)")
    p.add_argument("--b", type=float, required=True, help="half-width (units of 1/m)")
    p.add_argument("--q", type=int, default=-1, choices=(-1, 1), help="charge")
    p.add_argument("--mass", type=float, default=1.0, help="mass (natural units)")


def _add_out_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument(
        "--timestamp",
        action="store_true",
        help="include wall-clock metadata in JSON output (breaks byte determinism)",
    )


def _spec_from(args) -> PotentialSpec:
    return PotentialSpec(v0=args.v0, v1=args.v1, b=args.b, q=args.q, m=args.mass)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptdirac",
        description="Scattering and spectrum of a Dirac particle in a "
        "PT-symmetric square well (natural units).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="transmission/reflection over an energy grid")
    _add_spec_args(p)
    p.add_argument("--emin", type=float, required=True)
    p.add_argument("--emax", type=float, required=True)
    p.add_argument("--n", type=int, default=4001)
    p.add_argument("--exclusion", type=float, default=1e-6, help="half-width of the band-edge exclusion")
    p.add_argument("--window-min", type=float, default=None, help="resonance window (JSON output)")
    p.add_argument("--window-max", type=float, default=None)
    _add_out_args(p)

    p = sub.add_parser("bound-states", help="real bound-state energies in (-m, m)")
    _add_spec_args(p)
    p.add_argument("--grid-n", type=int, default=2001)
    p.add_argument(
        "--complex-box",
        type=float,
        nargs=4,
        metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"),
        default=None,
        help="also search this complex-energy box for zeros of the continued "
        "M22 (extension-grade output; JSON only)",
    )
    p.add_argument("--seeds", type=int, default=100, help="Newton seeds for --complex-box")
    _add_out_args(p)

    p = sub.add_parser("critical-v1", help="imaginary depth at which real bound states first disappear")
    _add_spec_args(p)
    p.add_argument("--v1max", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--grid-n", type=int, default=2001)
    _add_out_args(p)

    p = sub.add_parser("resonances", help="transmission resonances in a window")
    _add_spec_args(p)
    p.add_argument("--emin", type=float, default=None, help="scan range (default: the window)")
    p.add_argument("--emax", type=float, default=None)
    p.add_argument("--n", type=int, default=4001)
    p.add_argument("--exclusion", type=float, default=1e-6)
    p.add_argument("--window-min", type=float, default=None, help="default -2m")
    p.add_argument("--window-max", type=float, default=None, help="default -m")
    _add_out_args(p)

    p = sub.add_parser("verify", help="run the oracle suite; nonzero exit on any failure")
    p.add_argument("--draws", type=int, default=200, help="random draws for matrix identities")
    p.add_argument("--ode-draws", type=int, default=20)
    p.add_argument("--seed", type=int, default=20260809)

    p = sub.add_parser("space-component", help="reflectionless space-component coupling")
    _add_spec_args(p)
    p.add_argument("--emin", type=float, default=None, help="representative energy (default 2m)")
    _add_out_args(p)

    return parser


def _cmd_scan(args) -> int:
    spec = _spec_from(args)
    scan = energy_scan(spec, args.emin, args.emax, args.n, args.exclusion)
    resonances = None
    if args.format == "json":
        window = None
        if args.window_min is not None or args.window_max is not None:
            window = (
                args.window_min if args.window_min is not None else -2.0 * spec.m,
                args.window_max if args.window_max is not None else -1.0 * spec.m,
            )
        resonances = find_transmission_resonances(scan, window)
    _write(serialize_scan(scan, args.format, resonances, args.timestamp), args.out)
    return 0


def _cmd_bound_states(args) -> int:
    spec = _spec_from(args)
    spectrum = real_bound_states(spec, args.grid_n)
    if args.complex_box is not None and args.format != "json":
        raise ValueError("--complex-box output requires --format json")
    if args.format == "csv":
        lines = ["index,E"]
        lines += [f"{i},{_fmt(e)}" for i, e in enumerate(spectrum.real_energies)]
        _write("\n".join(lines) + "\n", args.out)
        return 0
    doc = {
        "meta": _spec_meta(spec),
        "real_energies": [_num(e) for e in spectrum.real_energies],
        "counts": {
            "total": spectrum.count,
            "negative": spectrum.negative_count,
            "positive": spectrum.positive_count,
        },
    }
    if args.complex_box is not None:
        search = complex_m22_zeros(spec, tuple(args.complex_box), args.seeds)
        doc["complex_zeros"] = {
            "extension_grade": True,
            "box": [_num(x) for x in args.complex_box],
            "zeros": [{"re": _num(z.real), "im": _num(z.imag)} for z in search.zeros],
            "seeds": search.n_seeds,
            "converged": search.n_converged,
            "failed": search.n_failed,
        }
    if args.timestamp:
        doc["meta"]["generated_at"] = time.time()
    _write(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def _cmd_critical_v1(args) -> int:
    spec = _spec_from(args)
    result = critical_v1(spec, args.v1max, args.tol, args.grid_n)
    if args.format == "csv":
        text = (
            "v1crit,mergeE,countBelow,countAbove\n"
            f"{_fmt(result.v1_critical)},{_fmt(result.merge_energy)},"
            f"{result.count_below},{result.count_above}\n"
        )
        _write(text, args.out)
        return 0
    doc = {
        "meta": _spec_meta(spec),
        "v1_critical": _num(result.v1_critical),
        "merge_energy": _num(result.merge_energy),
        "count_below": result.count_below,
        "count_above": result.count_above,
        "roots_below": [_num(e) for e in result.roots_below],
        "roots_above": [_num(e) for e in result.roots_above],
    }
    if args.timestamp:
        doc["meta"]["generated_at"] = time.time()
    _write(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def _cmd_resonances(args) -> int:
    spec = _spec_from(args)
    w_min = args.window_min if args.window_min is not None else -2.0 * spec.m
    w_max = args.window_max if args.window_max is not None else -1.0 * spec.m
    e_min = args.emin if args.emin is not None else w_min
    e_max = args.emax if args.emax is not None else w_max
    scan = energy_scan(spec, e_min, e_max, args.n, args.exclusion)
    resonances = find_transmission_resonances(scan, (w_min, w_max))
    if args.format == "csv":
        lines = ["E,T2,halfWidth"]
        lines += [
            f"{_fmt(r.energy)},{_fmt(r.height)},"
            + ("" if math.isnan(r.half_width) else _fmt(r.half_width))
            for r in resonances
        ]
        _write("\n".join(lines) + "\n", args.out)
        return 0
    doc = {
        "meta": _spec_meta(spec),
        "window": [_num(w_min), _num(w_max)],
        "resonances": [
            {
                "energy": _num(r.energy),
                "height": _num(r.height),
                "half_width": None if math.isnan(r.half_width) else _num(r.half_width),
            }
            for r in resonances
        ],
    }
    if args.timestamp:
        doc["meta"]["generated_at"] = time.time()
    _write(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def _cmd_space_component(args) -> int:
    spec = _spec_from(args)
    energy = args.emin if args.emin is not None else 2.0 * spec.m
    obs = space_component_case(spec, energy)
    if args.format == "csv":
        text = (
            "E,reTLR,imTLR,reTRL,imTRL,T2,R2\n"
            f"{_fmt(obs.energy)},{_fmt(obs.t_lr.real)},{_fmt(obs.t_lr.imag)},"
            f"{_fmt(obs.t_rl.real)},{_fmt(obs.t_rl.imag)},{_fmt(obs.t2)},0\n"
        )
        _write(text, args.out)
        return 0
    doc = {
        "meta": _spec_meta(spec),
        "E": _num(obs.energy),
        "T_LR": {"re": _num(obs.t_lr.real), "im": _num(obs.t_lr.imag)},
        "T_RL": {"re": _num(obs.t_rl.real), "im": _num(obs.t_rl.imag)},
        "T2": _num(obs.t2),
        "R2": 0.0,
        "note": "transmission is a pure phase, independent of energy; "
        "reflection vanishes identically",
    }
    if args.timestamp:
        doc["meta"]["generated_at"] = time.time()
    _write(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def _verify_draw(rng) -> tuple[PotentialSpec, float]:
    v0 = rng.uniform(1e-2, 5.0)
    v1 = 0.0 if rng.uniform() < 0.1 else rng.uniform(0.0, 1.0)
    b = rng.uniform(0.05, 10.0)
    spec = PotentialSpec(v0=v0, v1=v1, b=b, q=int(rng.choice((-1, 1))))
    while True:
        e = float(rng.choice((-1.0, 1.0)) * rng.uniform(1.0 + 1e-6, 10.0))
        if spec.v1 > 0.0:
            return spec, e
        if min(abs(e - spec.q * spec.v0 - 1.0), abs(e - spec.q * spec.v0 + 1.0)) > 1e-6:
            return spec, e


def _cmd_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    failures = 0

    def report(name: str, ok: bool, detail: str) -> None:
        nonlocal failures
        if not ok:
            failures += 1
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")

    worst_prod = worst_det = worst_conj = 0.0
    for _ in range(args.draws):
        spec, e = _verify_draw(rng)
        closed = matching_matrix_closed_form(spec, e)
        if closed.scaled:
            continue
        prod = matching_matrix_product(spec, e)
        scale = max(1.0, float(np.max(np.abs(prod.entries))))
        worst_prod = max(worst_prod, float(np.max(np.abs(closed.entries - prod.entries))) / scale)
        worst_det = max(worst_det, abs(closed.det() - 1.0) / max(1.0, scale * scale))
        worst_conj = max(
            worst_conj, abs(closed.m22 - closed.m11.conjugate()) / scale
        )
    report("closed-vs-product", worst_prod < 1e-10, f"worst rel dev {worst_prod:.3e} over {args.draws} draws")
    report("det-unimodular", worst_det < 1e-10, f"worst scaled |det-1| {worst_det:.3e}")
    report("diag-conjugacy", worst_conj < 1e-10, f"worst scaled dev {worst_conj:.3e}")

    worst_ode = 0.0
    for _ in range(args.ode_draws):
        spec, e = _verify_draw(rng)
        closed = matching_matrix_closed_form(spec, e)
        if closed.scaled:
            continue
        ode = matching_matrix_ode(spec, e, tol=1e-8)
        scale = max(1.0, float(np.max(np.abs(ode.entries))))
        worst_ode = max(worst_ode, float(np.max(np.abs(closed.entries - ode.entries))) / scale)
    report("closed-vs-ode", worst_ode < 1e-6, f"worst rel dev {worst_ode:.3e} over {args.ode_draws} draws")

    spec = PotentialSpec(v0=3.0, v1=0.0, b=5.0)
    scan = energy_scan(spec, -8.0, 8.0, 2001, 1e-6)
    unit = float(np.max(np.abs(scan.t2 + scan.r2_lr - 1.0)))
    refl = float(np.max(np.abs(scan.r2_lr - scan.r2_rl)))
    report("hermitian-unitarity", unit < 1e-10, f"worst |T2+R2-1| {unit:.3e}")
    report("hermitian-reflection-equality", refl < 1e-10, f"worst asymmetry {refl:.3e}")

    ok = True
    detail = []
    for e in (2.5, -5.5):
        rep = real_well_limit_check(spec, e)
        ok &= rep.passed
        detail.append(f"E={e}: {rep.max_deviation:.3e}")
    report("real-well-limit", ok, "; ".join(detail))

    ok = True
    detail = []
    prev = None
    for eta in (1.0, 0.1, 0.01):
        rep = nonrelativistic_limit_check(
            5e-4 * eta, 1e-4 * eta, 5.0 / math.sqrt(eta), 1e-3 * eta
        )
        ok &= rep.passed
        if prev is not None:
            ok &= rep.max_deviation < 0.3 * prev
        prev = rep.max_deviation
        detail.append(f"eps={1e-3 * eta:.0e}: {rep.max_deviation:.3e}")
    report("nonrelativistic-limit", ok, "; ".join(detail))

    obs = space_component_case(PotentialSpec(v0=3.0, v1=0.25, b=5.0), 2.0)
    ok = (
        abs(abs(obs.t_lr) - 1.0) < 1e-12
        and abs(obs.r_lr) == 0.0
        and abs(obs.t_lr - obs.t_rl.conjugate()) < 1e-12
    )
    report("space-component", ok, f"|T|={abs(obs.t_lr):.15f}")

    return 0 if failures == 0 else 3


_HANDLERS = {
    "scan": _cmd_scan,
    "bound-states": _cmd_bound_states,
    "critical-v1": _cmd_critical_v1,
    "resonances": _cmd_resonances,
    "verify": _cmd_verify,
    "space-component": _cmd_space_component,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PTDiracError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
