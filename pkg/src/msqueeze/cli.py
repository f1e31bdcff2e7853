"""Command-line front end.

Exit codes: 0 ok, 2 usage, 3 not canonical, 4 numeric or algebraic failure.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
import time

from . import __version__
from .errors import MsqueezeError, NotCanonical
from .io import write_keyvalue, write_table
from .nonlinear import NonlinearSpec
from .observables import (ScanFamily, compare_closed_moments, g2_scan, pnd, scan_grid,
                          uncertainties)
from .opalg import commutator_check, expand_b, expand_hamiltonian, quadrature_form
from .params import derived_constants, from_polar, from_raw, from_text
from .presets import preset
from .reference import (HAMILTONIAN_X2_ERRATA, LINEAR_HAMILTONIAN_ERRATA,
                        compare_hamiltonian_x2, compare_linear_hamiltonian)
from .states import eigen_residual, solve_eigenstate, state_table
from .wigner import EmptyContour, negativity, section, wigner

EXIT_OK, EXIT_USAGE, EXIT_NOT_CANONICAL, EXIT_NUMERIC = 0, 2, 3, 4
CLI_TOL = 1e-8

_ANGLE = re.compile(r"^([+-]?)(\d*\.?\d*)\s*\*?\s*pi(?:\s*/\s*(\d+\.?\d*))?$")


def parse_angle(text: str) -> float:
    """Radians; also ``pi/2``, ``-3pi/4``, ``0.5*pi``."""
    s = text.strip().lower().replace("π", "pi")
    m = _ANGLE.match(s)
    if m:
        sign, num, den = m.groups()
        val = (float(num) if num not in ("", ".") else 1.0) * math.pi / (float(den) if den else 1.0)
        return -val if sign == "-" else val
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def _number(tok: str):
    tok = tok.strip()
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def parse_coeffs(text: str) -> list:
    try:
        return [_number(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a coefficient list: {text!r}") from None


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


# -- parser -------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("transformation")
    g.add_argument("--r", type=float, default=0.0, help="squeezing parameter (>= 0)")
    g.add_argument("--phi1", type=parse_angle, default=0.0)
    g.add_argument("--phi2", type=parse_angle, default=0.0)
    g.add_argument("--gamma-abs", type=float, default=0.0)
    g.add_argument("--delta", type=parse_angle, default=0.0)
    g.add_argument("--mu", type=_complex, help="raw coefficient, overrides the polar flags")
    g.add_argument("--nu", type=_complex)
    g.add_argument("--gamma", type=_complex)
    g.add_argument("--spec-file", help="key=value document with polar or raw keys")
    g.add_argument("--tol", type=float, default=CLI_TOL,
                   help="canonicity tolerance (looser than the library default so that "
                        "angles typed to ~8 decimals pass)")
    g.add_argument("--allow-noncanonical", action="store_true")
    s = p.add_argument_group("state")
    s.add_argument("--beta1", type=float, default=0.0)
    s.add_argument("--beta2", type=float, default=0.0)
    f = s.add_mutually_exclusive_group()
    f.add_argument("--f-poly", type=parse_coeffs, help="monomial coefficients c0,c1,c2,...")
    f.add_argument("--f-sin", type=parse_coeffs, help="amplitude,frequency")
    s.add_argument("--f-convention", choices=("standard", "operator"), default="standard",
                   help="argument of F: q = sqrt(2) X1 (standard) or X1 (operator)")
    o = p.add_argument_group("output")
    o.add_argument("--out", default=".", help="output directory")
    o.add_argument("--json", action="store_true", help="also write JSON mirrors")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msqueeze", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    sub.add_parser("canon-check", parents=[common], help="canonicity residuals and derived constants")
    p = sub.add_parser("expand-h", parents=[common], help="normal-ordered operator expansions")
    p.add_argument("--what", choices=("hamiltonian", "b", "commutator", "quadrature"), default="hamiltonian")
    p.add_argument("--compare", action="store_true", help="diff against the printed closed form")
    p = sub.add_parser("state", parents=[common], help="tabulate the eigenstate")
    p.add_argument("--points", type=int, default=256)
    sub.add_parser("uncert", parents=[common], help="quadrature uncertainties")
    p = sub.add_parser("pnd", parents=[common], help="photon-number distribution")
    p.add_argument("--n-max", type=int, default=128)
    p = sub.add_parser("moments", parents=[common], help="printed moments against numerics")
    p.add_argument("--method", choices=("auto", "pnd", "ladder"), default="auto")
    p = sub.add_parser("g2-scan", parents=[common], help="g2 along r or |gamma|")
    p.add_argument("--over", choices=("r", "gamma"), required=True)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--method", choices=("auto", "pnd", "ladder"), default="auto")
    p = sub.add_parser("wigner", parents=[common], help="Wigner grid, sections and negativity")
    p.add_argument("--nx", type=int, default=256)
    p.add_argument("--np", dest="n_p", type=int, default=256)
    p.add_argument("--x-range", type=parse_coeffs)
    p.add_argument("--p-range", type=parse_coeffs)
    p.add_argument("--levels", type=parse_coeffs, default=[0.5])
    p = sub.add_parser("figure", help="run a reference-figure preset")
    p.add_argument("number", type=int, choices=range(1, 16), metavar="N")
    p.add_argument("--out", default=".")
    p.add_argument("--json", action="store_true")
    return parser


# -- argument interpretation -----------------------------------------------------------

def transform_from_args(args):
    check = False
    if args.spec_file:
        with open(args.spec_file, encoding="utf-8") as fh:
            spec = from_text(fh.read(), tol=args.tol, check=check)
    elif args.mu is not None or args.nu is not None or args.gamma is not None:
        spec = from_raw(args.mu if args.mu is not None else 1, args.nu or 0, args.gamma or 0,
                        tol=args.tol, check=check)
    else:
        spec = from_polar(args.r, args.phi1, args.phi2, args.gamma_abs, args.delta,
                          tol=args.tol, check=check)
    return spec


def nonlinearity_from_args(args) -> NonlinearSpec:
    if args.f_sin is not None:
        if len(args.f_sin) != 2:
            raise ValueError("--f-sin takes amplitude,frequency")
        return NonlinearSpec.sine(*args.f_sin, convention=args.f_convention)
    coeffs = args.f_poly if args.f_poly is not None else [0, 0, 1]
    return NonlinearSpec.polynomial(coeffs, convention=args.f_convention)


def _beta(args) -> complex:
    return complex(args.beta1, args.beta2)


# -- commands -------------------------------------------------------------------------

class Context:
    def __init__(self, out: str, json_mirror: bool):
        self.out = out
        self.json = json_mirror
        self.files: list = []
        self.params: list = []
        os.makedirs(out, exist_ok=True)

    def path(self, name: str) -> str:
        return os.path.join(self.out, name)

    def table(self, name, header, rows):
        self.files += write_table(self.path(name), header, rows, self.json)

    def keyvalue(self, name, items):
        self.table(name, ("key", "value"), items)


def cmd_canon_check(args, ctx, spec, F):
    rep = spec.report
    items = [("cond1_residual", rep.cond1_residual), ("cond2_residual", rep.cond2_residual),
             ("ok", rep.ok), ("tol", rep.tol)] + list(spec.polar().items())
    if rep.ok and spec.gamma_abs > 0:
        try:
            d = derived_constants(spec, _beta(args))
            items += [("c_plus", d.c_plus), ("c_minus", d.c_minus), ("sigma", d.sigma), ("x0", d.x0)]
        except MsqueezeError as exc:
            items.append(("derived", type(exc).__name__))
    ctx.keyvalue("canon.csv", items)
    for k, v in items:
        print(f"{k}={v}")
    if not rep.ok and not args.allow_noncanonical:
        return EXIT_NOT_CANONICAL
    return EXIT_OK


def cmd_expand_h(args, ctx, spec, F):
    if args.what == "quadrature":
        q = quadrature_form(spec, F)
        print(q.pretty())
        ctx.table("expand_quadrature.csv", ("kind", "m", "re", "im"), q.rows())
        return EXIT_OK
    fn = {"hamiltonian": expand_hamiltonian, "b": expand_b, "commutator": commutator_check}[args.what]
    poly = fn(spec, F)
    print(poly.pretty())
    ctx.table(f"expand_{args.what}.csv", ("k", "l", "re", "im"), poly.rows())
    if args.compare and args.what == "hamiltonian":
        if spec.gamma_abs == 0:
            rep, errata = compare_linear_hamiltonian(spec), LINEAR_HAMILTONIAN_ERRATA
        else:
            rep, errata = compare_hamiltonian_x2(spec), HAMILTONIAN_X2_ERRATA
        for line in rep.lines(errata):
            print(line)
        rows = [(d.key[0], d.key[1], d.derived.real, d.derived.imag, d.printed.real, d.printed.imag,
                 "match" if d in rep.matched else "erratum")
                for d in sorted(rep.matched + rep.mismatched, key=lambda d: d.key)]
        ctx.table("compare_hamiltonian.csv",
                  ("k", "l", "derived_re", "derived_im", "printed_re", "printed_im", "status"), rows)
    return EXIT_OK


def _state(args, spec, F):
    return solve_eigenstate(spec, _beta(args), F)


def cmd_state(args, ctx, spec, F):
    st = _state(args, spec, F)
    grid = st.grid(points=args.points)
    cols = state_table(st, grid)
    ctx.table("state.csv", tuple(cols), zip(*cols.values()))
    res = eigen_residual(st)
    ctx.keyvalue("state_info.csv", [("center", st.center), ("variance", st.variance),
                                    ("phase_coeff", st.phase_coeff), ("eigen_residual", res)])
    print(f"center={st.center:.12g} variance={st.variance:.12g} residual={res:.3e}")
    return EXIT_OK


def cmd_uncert(args, ctx, spec, F):
    rep = uncertainties(_state(args, spec, F))
    ctx.keyvalue("uncert.csv", rep.rows())
    for k, v in rep.rows():
        print(f"{k}={v:.12g}")
    return EXIT_OK


def _reference_state(spec, beta, F):
    lin = from_polar(spec.r, spec.phi1, spec.phi2, 0.0, 0.0)
    return solve_eigenstate(lin, beta, F)


def _pnd_rows(spec, beta, F, n_max):
    res = pnd(solve_eigenstate(spec, beta, F), n_max)
    ref = pnd(_reference_state(spec, beta, F), n_max)
    rows = [(n, p, q) for n, (p, q) in enumerate(zip(res.probabilities, ref.probabilities))]
    return res, rows


def cmd_pnd(args, ctx, spec, F):
    res, rows = _pnd_rows(spec, _beta(args), F, args.n_max)
    ctx.table("pnd.csv", ("n", "P_nonlinear", "P_reference"), rows)
    print(f"n_mean={res.n_mean:.12g} n_var={res.n_var:.12g} g2={res.g2:.12g} tail={res.tail_mass:.3e}")
    return EXIT_OK


def cmd_moments(args, ctx, spec, F):
    if args.beta2 != 0:
        raise ValueError("closed-form moments need a real eigenvalue (--beta2 0)")
    cmp = compare_closed_moments(spec, args.beta1, F, args.method)
    ctx.keyvalue("moments.csv", cmp.rows() + [("method", cmp.method)])
    for k, v in cmp.rows():
        print(f"{k}={v:.12g}")
    return EXIT_OK


def _scan(ctx, family, values, method, stem):
    res = g2_scan(family, values, method)
    ctx.table(f"{stem}.csv", (res.parameter, "g2", "n_mean", "n_var"), res.rows())
    ctx.table(f"{stem}_crossings.csv", (res.parameter,), [(c,) for c in res.crossings])
    print(f"{len(values)} points; g2=1 crossings: " + (", ".join(f"{c:.4f}" for c in res.crossings) or "none"))
    return res


def cmd_g2_scan(args, ctx, spec, F):
    if abs(spec.phi1 - spec.phi2) > 1e-12:
        raise ValueError("scans use phi1 = phi2")
    stop = args.stop if args.stop is not None else (2.0 if args.over == "r" else 0.2)
    step = args.step if args.step is not None else (0.05 if args.over == "r" else 0.005)
    family = ScanFamily(args.over, r=spec.r, gamma_abs=spec.gamma_abs, beta=_beta(args), F=F, phi=spec.phi1)
    _scan(ctx, family, scan_grid(args.start, stop, step), args.method, "g2_scan")
    return EXIT_OK


def _wigner_outputs(ctx, grid, stem, levels=(), write_grid=True):
    if write_grid:
        rows = ((x, p, w) for i, x in enumerate(grid.x_axis) for p, w in zip(grid.p_axis, grid.values[i]))
        ctx.table(f"{stem}.csv", ("x", "p", "W"), rows)
        path = ctx.path(f"{stem}_matrix.txt")
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write("# rows: x_axis; columns: p_axis; first row holds p, first column holds x\n")
            fh.write(" ".join(["nan"] + [f"{p:.17g}" for p in grid.p_axis]) + "\n")
            for x, row in zip(grid.x_axis, grid.values):
                fh.write(" ".join([f"{x:.17g}"] + [f"{w:.17g}" for w in row]) + "\n")
        ctx.files.append(path)
    neg = negativity(grid)
    bbox = neg.bbox or (float("nan"),) * 4
    ctx.keyvalue(f"{stem}_negativity.csv", [
        ("min_value", neg.min_value), ("min_x", neg.min_location[0]), ("min_p", neg.min_location[1]),
        ("negative_mass", neg.negative_mass), ("bbox_x_lo", bbox[0]), ("bbox_x_hi", bbox[1]),
        ("bbox_p_lo", bbox[2]), ("bbox_p_hi", bbox[3]), ("norm", grid.norm),
        ("x_lo", grid.x_axis[0]), ("x_hi", grid.x_axis[-1]), ("p_lo", grid.p_axis[0]), ("p_hi", grid.p_axis[-1]),
    ])
    if levels:
        rows, cid = [], 0
        for lev in levels:
            for sign in (1, -1):
                try:
                    cs = section(grid, lev, sign)
                except EmptyContour:
                    continue
                for c in cs:
                    rows += [(cid, sign * lev, x, p) for x, p in c.points]
                    cid += 1
        ctx.table(f"{stem}_contours.csv", ("contour_id", "level_fraction", "x", "p"), rows)
    print(f"norm={grid.norm:.10f} min W={neg.min_value:.6g} at x={neg.min_location[0]:.6g} "
          f"p={neg.min_location[1]:.6g} negative_mass={neg.negative_mass:.3e}")


def cmd_wigner(args, ctx, spec, F):
    st = _state(args, spec, F)
    grid = wigner(st, args.x_range, args.p_range, (args.nx, args.n_p))
    _wigner_outputs(ctx, grid, "wigner", tuple(args.levels))
    return EXIT_OK


def cmd_figure(args, ctx):
    pr = preset(args.number)
    ctx.params += [("figure", pr.number), ("kind", pr.kind), ("F", pr.F.label()), ("r", pr.r),
                   ("gamma_abs", pr.gamma_abs), ("beta1", pr.beta1), ("delta", math.pi / 2)]
    print(f"figure {pr.number}: {pr.description}")
    if pr.kind == "pnd":
        spec = from_polar(pr.r, 0.0, 0.0, pr.gamma_abs, math.pi / 2)
        res, rows = _pnd_rows(spec, pr.beta1, pr.F, 128)
        ctx.table(f"{pr.stem}.csv", ("n", "P_nonlinear", "P_reference"), rows)
        print(f"n_mean={res.n_mean:.12g} g2={res.g2:.12g}")
    elif pr.kind == "scan":
        family = ScanFamily(pr.over, r=pr.r, gamma_abs=pr.gamma_abs, beta=pr.beta1, F=pr.F)
        ctx.params += [("over", pr.over), ("start", pr.start), ("stop", pr.stop), ("step", pr.step)]
        _scan(ctx, family, scan_grid(pr.start, pr.stop, pr.step), "auto", pr.stem)
    else:
        spec = from_polar(pr.r, 0.0, 0.0, pr.gamma_abs, math.pi / 2)
        grid = wigner(solve_eigenstate(spec, pr.beta1, pr.F))
        _wigner_outputs(ctx, grid, pr.stem, pr.levels, write_grid=pr.kind == "wigner")
    return EXIT_OK


COMMANDS = {
    "canon-check": cmd_canon_check, "expand-h": cmd_expand_h, "state": cmd_state,
    "uncert": cmd_uncert, "pnd": cmd_pnd, "moments": cmd_moments, "g2-scan": cmd_g2_scan,
    "wigner": cmd_wigner,
}
ALLOW_NONCANONICAL = ("canon-check", "expand-h")


def _manifest(ctx, args, argv, status, elapsed):
    items = [("subcommand", args.command), ("argv", " ".join(argv)), ("version", __version__),
             ("status", status)]
    items += ctx.params
    items += [(f"output.{i}", os.path.basename(f)) for i, f in enumerate(ctx.files)]
    items.append(("wall_time_s", round(elapsed, 3)))
    write_keyvalue(ctx.path("manifest.txt"), items)


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    ctx = Context(args.out, args.json)
    status = EXIT_OK
    try:
        if args.command == "figure":
            status = cmd_figure(args, ctx)
        else:
            spec = transform_from_args(args)
            F = nonlinearity_from_args(args)
            ctx.params += [(k, v) for k, v in spec.polar().items()]
            ctx.params += [("beta1", args.beta1), ("beta2", args.beta2), ("F", F.label()), ("tol", args.tol)]
            if args.command != "canon-check" and not spec.canonical:
                if not (args.allow_noncanonical and args.command in ALLOW_NONCANONICAL):
                    spec.require_canonical()
            status = COMMANDS[args.command](args, ctx, spec, F)
    except NotCanonical as exc:
        print(f"error: NotCanonical: {exc}", file=sys.stderr)
        status = EXIT_NOT_CANONICAL
    except MsqueezeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        status = EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = EXIT_USAGE
    _manifest(ctx, args, argv, status, time.perf_counter() - t0)
    return status


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
