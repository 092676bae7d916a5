"""Command line front ends: sixj, tetra, asym."""

from __future__ import annotations

import argparse
import json

import os
import sys

from .geometry import AngleSet, classify_vertex, gram_det, volume
from .harness import (
    convergence_table,
    default_ladder,
    extract_c1,
    integrate_gbar,
    poisson_spectrum,
    c1_to_json,
    reports_to_csv,
)
from .qarith import Level, Spin
from .sixj import SpinSextuple, sixj_rw


def _env_default(name: str, fallback):
    return os.environ.get(f"QTET_{name}", fallback)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--precision",
        choices=("double", "dd"),
        default=_env_default("PRECISION", "double"),
        help="accumulation precision (dd = compensated double-double)",
    )
    parser.add_argument(
        "--threads", type=int, default=int(_env_default("THREADS", "1")),
        help="worker threads for independent r values",
    )
    parser.add_argument(
        "--seed", type=int, default=int(_env_default("SEED", "0")),
        help="seed for randomized sweeps (reserved; evaluations are deterministic)",
    )


def _parse_theta(text: str) -> AngleSet:
    parts = [float(x) for x in text.split(",")]
    if len(parts) == 1:
        parts = parts * 6
    return AngleSet.of(*parts)


def _parse_spins(text: str):
    vals = [Spin.of(x.strip()) for x in text.split(",")]
    if len(vals) != 6:
        raise SystemExit("--spins needs six half-integers a,b,e,d,c,f")
    a, b, e, d, c, f = vals
    return SpinSextuple(a, b, c, d, e, f)


def main_sixj(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="sixj", description="Evaluate quantum 6j symbols at q = xi_r^2.")
    sub = parser.add_subparsers(dest="cmd", required=True)
    ev = sub.add_parser("eval", help="evaluate one Racah-Wigner symbol")
    ev.add_argument("--r", type=int, required=True, help="odd level r >= 3")
    ev.add_argument("--spins", required=True, help="a,b,e,d,c,f as half-integers (e.g. 17,17,17,16.5,16.5,16.5)")
    _add_common(ev)
    args = parser.parse_args(argv)

    s = _parse_spins(args.spins)
    try:
        res = sixj_rw(Level(args.r), s, precision=args.precision)
    except Exception as ex:  # noqa: BLE001 - surface evaluation errors cleanly
        raise SystemExit(f"error: {ex}") from ex
    value = res.value
    print(f"r = {args.r}")
    print(f"spins (a b e / d c f) = {s.a.value} {s.b.value} {s.e.value} / {s.d.value} {s.c.value} {s.f.value}")
    print(f"value = {value if value is not None else 'overflows binary64'}")
    print(f"logmag = {res.logmag:.17g}")
    print(f"sign/phase = sum_sign {res.sum_sign:+d}, i^{res.phase_quarter}, arg = {res.phase_angle:.17g}")
    print(f"same_sign_terms = {res.same_sign} (z0 = {res.z0}, {res.n_terms} terms)")
    return 0


def main_tetra(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="tetra", description="Hyperbolic tetrahedron geometry from dihedral angles.")
    sub = parser.add_subparsers(dest="cmd", required=True)
    an = sub.add_parser("analyze", help="Gram matrix, vertex classes, stationary point, volume")
    an.add_argument("--theta", required=True, help="six angles t1,...,t6 in radians (one value = regular)")
    _add_common(an)
    args = parser.parse_args(argv)

    angles = _parse_theta(args.theta)
    det_g, _ = gram_det(angles)
    out = {
        "theta": list(angles.theta),
        "det_g": det_g,
        "vertex_classes": [classify_vertex(angles, v) for v in range(4)],
    }
    try:
        v = volume(angles)
        out.update(
            vol=v.vol,
            zeta0=v.zeta0,
            critical_re=v.critical_re,
            critical_im=v.critical_im,
            window=list(v.stationary.window),
        )
    except Exception as ex:  # noqa: BLE001 - report geometry failures to the user
        out["error"] = str(ex)
    print(json.dumps(out, indent=2))
    return 0


def main_asym(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="asym", description="Asymptotic verification harness.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    conv = sub.add_parser("converge", help="CSV table of the log-limit gap and predictor ratio")
    conv.add_argument("--theta", required=True)
    conv.add_argument("--r-min", type=int, required=True)
    conv.add_argument("--r-max", type=int, required=True)
    conv.add_argument("--steps", type=int, default=5, help="number of r values (geometric)")
    conv.add_argument("--svg", default=None, help="write a gap-vs-r SVG plot here")
    _add_common(conv)

    c1p = sub.add_parser("c1", help="second-order coefficient C1 with error bar (JSON)")
    c1p.add_argument("--theta", required=True)
    c1p.add_argument("--r-ladder", type=int, required=True, help="base r0 of the geometric ladder")
    c1p.add_argument("--ladder-size", type=int, default=5)
    _add_common(c1p)

    poi = sub.add_parser("poisson", help="CSV of |fhat(m)| Fourier magnitudes")
    poi.add_argument("--theta", required=True)
    poi.add_argument("--r", type=int, required=True)
    poi.add_argument("--m-max", type=int, required=True)
    _add_common(poi)

    gb = sub.add_parser("gbar", help="summand integral against the stationary-phase closed form")
    gb.add_argument("--theta", required=True)
    gb.add_argument("--r", type=int, required=True)
    _add_common(gb)

    args = parser.parse_args(argv)
    angles = _parse_theta(args.theta)

    try:
        if args.cmd == "converge":
            if args.r_min < 3 or args.r_max < args.r_min:
                raise SystemExit("need 3 <= r-min <= r-max")
            ratio = (args.r_max / args.r_min) ** (1.0 / max(args.steps - 1, 1))
            rs = []
            for k in range(args.steps):
                r = int(round(args.r_min * ratio ** k)) | 1
                if r not in rs:
                    rs.append(r)
            reports = convergence_table(angles, rs, precision=args.precision, threads=args.threads)
            sys.stdout.write(reports_to_csv(reports))
            if args.svg:
                from .plots import svg_gap_vs_r

                svg_gap_vs_r(reports, args.svg)
            return 0

        if args.cmd == "c1":
            ladder = default_ladder(args.r_ladder, args.ladder_size)
            est = extract_c1(angles, ladder, precision=args.precision, threads=args.threads)
            print(c1_to_json(angles, est))
            return 0

        if args.cmd == "poisson":
            spec = poisson_spectrum(angles, args.r, m_range=range(-args.m_max, args.m_max + 1))
            print("m,abs_fhat_scaled,ratio_to_f0")
            f0 = abs(spec.coeffs[0])
            for m in sorted(spec.coeffs):
                print(f"{m},{abs(spec.coeffs[m])!r},{abs(spec.coeffs[m]) / f0!r}")
            print(f"# anchor_log = {spec.anchor_log!r}; lattice_sum_scaled = {spec.lattice_sum!r}", file=sys.stderr)
            return 0

        if args.cmd == "gbar":
            chk = integrate_gbar(angles, args.r)
            print(json.dumps({
                "r": chk.r,
                "ratio_quad_to_closed": chk.ratio,
                "log_quad": chk.log_quad,
                "log_closed": chk.log_closed,
                "fhat0_rel_dev": chk.fhat0_rel_dev,
            }, indent=2))
            return 0
    except SystemExit:
        raise
    except Exception as ex:  # noqa: BLE001 - geometry/domain failures exit cleanly
        raise SystemExit(f"error: {ex}") from ex

    return 1


if __name__ == "__main__":
    sys.exit(main_asym())
