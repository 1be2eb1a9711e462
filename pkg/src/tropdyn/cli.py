"""Batch front end: JSON/flags in, JSON/CSV/SVG artifacts out.

One subcommand per library entry point; exit code 0 on success, 1 on domain
errors (single-line diagnostic on stderr), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize, svgplot
from .dynamics import (
    DynamicsError,
    GridSpec,
    amoeba_sample,
    clip_to_box,
    convergence_report,
    dequantization_error,
    mth_roots,
    star_discrepancy,
)
from .lattice import LatticeError
from .polyhedra import Polyhedron, PolyhedralError, add_cycles, check_balancing, common_refinement
from .serialize import SchemaError
from .toric import ToricError, orbits
from .tropical import (
    ComplexPolynomial,
    TropicalError,
    tropical_hypersurface,
    tropicalize_poly,
    uniform_bergman_fan,
)

DOMAIN_ERRORS = (
    LatticeError,
    PolyhedralError,
    TropicalError,
    ToricError,
    DynamicsError,
    SchemaError,
    ValueError,
    OSError,
)


def _parse_ints(text):
    return tuple(int(x) for x in text.split(",") if x != "")


def _parse_box(text, axes=None):
    vals = [float(x) for x in text.split(",") if x != ""]
    if len(vals) == 2 and (axes or 2) > 1:
        vals = vals * (axes or 2)
    if len(vals) % 2 != 0:
        raise SchemaError("--box needs lo,hi pairs")
    return tuple((vals[i], vals[i + 1]) for i in range(0, len(vals), 2))


def _parse_res(text, axes):
    vals = _parse_ints(text)
    if len(vals) == 1:
        vals = vals * axes
    if len(vals) != axes:
        raise SchemaError("--res count does not match the box")
    return vals


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def _write_text(path, text):
    Path(path).write_text(text)


def _emit(args, obj, default_stdout=True):
    text = serialize.dumps_canonical(obj)
    if args.output:
        _write_text(args.output, text)
    elif default_stdout:
        sys.stdout.write(text)


def _single_input(args):
    if not args.inputs or len(args.inputs) != 1:
        raise SchemaError("this command takes exactly one -i input")
    return _read_json(args.inputs[0])


def _pair_inputs(args):
    if not args.inputs or len(args.inputs) != 2:
        raise SchemaError("this command takes exactly two -i inputs")
    return _read_json(args.inputs[0]), _read_json(args.inputs[1])


def _as_tropical(poly):
    if isinstance(poly, ComplexPolynomial):
        return tropicalize_poly(poly)
    return poly


def _as_complex(poly):
    if not isinstance(poly, ComplexPolynomial):
        raise SchemaError("this command needs a complex polynomial input")
    return poly


def _suffixed(path, m, many):
    if not many:
        return path
    p = Path(path)
    return str(p.with_name(f"{p.stem}_m{m}{p.suffix}"))


def _spine_segments(cycle, box):
    segs = []
    from .dynamics import _box_constraints

    for cell, _ in cycle.cells:
        clipped = Polyhedron.from_constraints(
            cell.ambient_dim, eqs=cell.eqs, ineqs=tuple(cell.ineqs) + tuple(_box_constraints(box))
        )
        if clipped.is_empty or clipped.dim != 1 or len(clipped.vertices) != 2:
            continue
        a, b = clipped.vertices
        segs.append(((float(a[0]), float(a[1])), (float(b[0]), float(b[1]))))
    return segs


def cmd_tropicalize(args):
    f = _as_complex(serialize.poly_from_json(_single_input(args)))
    _emit(args, serialize.tropical_poly_to_json(tropicalize_poly(f)))
    return 0


def cmd_hypersurface(args):
    q = _as_tropical(serialize.poly_from_json(_single_input(args)))
    cycle = tropical_hypersurface(q)
    report = check_balancing(cycle)
    _emit(args, serialize.cycle_to_json(cycle, extra={"balanced": report.balanced}))
    return 0


def cmd_balance(args):
    cycle = serialize.cycle_from_json(_single_input(args))
    report = check_balancing(cycle)
    out = {
        "balanced": report.balanced,
        "violations": [
            {"cell": serialize.cell_geometry_to_json(tau), "residual": list(res)}
            for tau, res in report.violations
        ],
    }
    _emit(args, out)
    return 0


def cmd_bergman(args):
    cycle = uniform_bergman_fan(args.p, args.n)
    _emit(args, serialize.cycle_to_json(cycle, extra={"balanced": True}))
    return 0


def cmd_orbits(args):
    fan = serialize.fan_from_json(_single_input(args))
    cones = fan.all_cones()
    obs = orbits(fan)
    out = {
        "cones": [serialize.cone_to_json(c) for c in cones],
        "orbits": [
            {"cone_index": i, "dim": o.dim} for i, o in enumerate(obs)
        ],
    }
    _emit(args, out)
    return 0


def cmd_amoeba(args):
    f = _as_complex(serialize.poly_from_json(_single_input(args)))
    box = _parse_box(args.box)
    res = _parse_res(args.res, len(box))
    grid = GridSpec(box=box, resolution=res)
    if not args.output:
        raise SchemaError("amoeba needs -o for its CSV artifact")
    many = len(args.ms) > 1
    for m in args.ms:
        cloud = clip_to_box(amoeba_sample(f, grid, m), box)
        cloud.seed = args.seed
        _write_text(_suffixed(args.output, m, many), serialize.cloud_to_csv(cloud))
        if args.svg:
            cycle = tropical_hypersurface(tropicalize_poly(f))
            svg = svgplot.scatter_with_segments(
                cloud.points, _spine_segments(cycle, box), box, title=f"scaled amoeba, m={m}"
            )
            _write_text(_suffixed(args.svg, m, many), svg)
    return 0


def cmd_dequantize(args):
    f = _as_complex(serialize.poly_from_json(_single_input(args)))
    box = _parse_box(args.box)
    res = _parse_res(args.res, len(box))
    grid = GridSpec(box=box, resolution=res, delta=args.delta)
    linfs, l1s = [], []
    for m in args.ms:
        linf, l1 = dequantization_error(f, m, grid, seed=args.seed)
        linfs.append(linf)
        l1s.append(l1)
    _emit(
        args,
        {
            "ms": list(args.ms),
            "linf": linfs,
            "l1": l1s,
            "delta": args.delta,
            "seed": args.seed,
        },
    )
    return 0


def cmd_equidist(args):
    discrepancies = [star_discrepancy(mth_roots([1.0], m)) for m in args.ms]
    _emit(args, {"ms": list(args.ms), "discrepancies": discrepancies, "seed": args.seed})
    return 0


def cmd_converge(args):
    f = None
    if args.inputs:
        f = _as_complex(serialize.poly_from_json(_single_input(args)))
    box = _parse_box(args.box)
    res = _parse_res(args.res, len(box))
    grid = GridSpec(box=box, resolution=res, delta=args.delta)
    rep = convergence_report(
        args.experiment, args.ms, f=f, grid=grid, seed=args.seed, density=args.density
    )
    _emit(args, serialize.report_to_json(rep))
    if args.svg:
        _write_text(args.svg, svgplot.loglog(rep.ms, rep.errors, title=rep.experiment))
    return 0


def cmd_refine(args):
    a, b = _pair_inputs(args)
    refined = common_refinement(serialize.fan_from_json(a), serialize.fan_from_json(b))
    _emit(args, serialize.fan_to_json(refined))
    return 0


def cmd_add(args):
    a, b = _pair_inputs(args)
    total = add_cycles(serialize.cycle_from_json(a), serialize.cycle_from_json(b))
    report = check_balancing(total)
    _emit(args, serialize.cycle_to_json(total, extra={"balanced": report.balanced}))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tropdyn",
        description="tropical geometry engine and powering-map dynamics harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ms=False):
        p.add_argument("-i", dest="inputs", action="append", metavar="PATH", help="input JSON")
        p.add_argument("-o", dest="output", metavar="PATH", help="output artifact")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--box", default="-3,3")
        p.add_argument("--res", default="61")
        p.add_argument("--delta", type=float, default=0.2)
        p.add_argument("--density", type=float, default=40.0)
        p.add_argument("--svg", metavar="PATH")
        if ms:
            p.add_argument("--ms", type=_parse_ints, required=True)

    for name, fn, ms in (
        ("tropicalize", cmd_tropicalize, False),
        ("hypersurface", cmd_hypersurface, False),
        ("balance", cmd_balance, False),
        ("orbits", cmd_orbits, False),
        ("amoeba", cmd_amoeba, True),
        ("dequantize", cmd_dequantize, True),
        ("equidist", cmd_equidist, True),
        ("refine", cmd_refine, False),
        ("add", cmd_add, False),
    ):
        p = sub.add_parser(name)
        common(p, ms=ms)
        p.set_defaults(fn=fn)

    p = sub.add_parser("bergman")
    common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_bergman)

    p = sub.add_parser("converge")
    common(p, ms=True)
    p.add_argument(
        "--experiment",
        required=True,
        choices=["hausdorff-to-tropical", "dequantization", "equidistribution-discrepancy"],
    )
    p.set_defaults(fn=cmd_converge)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except json.JSONDecodeError as exc:
        print(f"tropdyn: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return 1
    except DOMAIN_ERRORS as exc:
        print(f"tropdyn: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
