"""Command-line interface.  Every subcommand prints one structured-text document.

Polynomials are given as comma-separated coefficients, ascending by default
(``--descending`` flips this).  Matrices are JSON row-major arrays or rows
separated by ``;``.  Clouds and complexes are read from structured-text files.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Callable, Sequence

import numpy as np

from . import bounds, homology, linalg, nerve, polynomials, symspace, textio, volumes
from .errors import MahlerDisagreement

PROG = "systole"


class CliError(Exception):
    """Bad input detected by the command-line layer."""


# ---------------------------------------------------------------- parsing

def parse_coeffs(text: str, descending: bool) -> polynomials.IntPolynomial:
    text = text.strip()
    if text.startswith("["):
        items = json.loads(text)
    else:
        items = [t.strip() for t in text.split(",") if t.strip()]
    try:
        cs = [int(str(c)) for c in items]
    except ValueError:
        raise CliError(f"coefficients must be integers, got {text!r}") from None
    if descending:
        cs = cs[::-1]
    return polynomials.IntPolynomial(cs)


def parse_matrix(text: str) -> list[list[str]]:
    text = text.strip()
    if text.startswith("["):
        rows = json.loads(text)
    else:
        rows = [[t.strip() for t in r.split(",")] for r in text.split(";") if r.strip()]
    if not rows or any(not isinstance(r, list) or len(r) != len(rows) for r in rows):
        raise CliError("matrix must be square")
    return [[str(v) for v in r] for r in rows]


def _monic_up_to_sign(f: polynomials.IntPolynomial) -> polynomials.IntPolynomial:
    # M(-f) = M(f), so a leading coefficient of -1 is accepted
    if f.leading == -1:
        return polynomials.IntPolynomial([-c for c in f.coeffs])
    return f


def load_cloud(args) -> nerve.MetricCloud:
    if args.cloud is not None:
        data = textio.load(args.cloud)
        if not isinstance(data, dict) or "points" not in data:
            raise CliError("cloud file needs a 'points' array and a 'metric' name")
        return nerve.MetricCloud(list(data["points"]), data.get("metric", "euclidean"))
    if args.random is not None:
        return nerve.random_cloud(args.random, args.count, args.seed, dim=args.point_dim)
    if args.hexagon:
        return nerve.hexagon_cloud()
    raise CliError("give --cloud FILE, --random METRIC or --hexagon")


BUILTIN_COMPLEXES: dict[str, Callable[[], nerve.SimplicialComplex]] = {
    "sphere1": lambda: homology.sphere_boundary(2),
    "sphere2": lambda: homology.sphere_boundary(3),
    "rp2": homology.projective_plane,
    "hexagon": lambda: nerve.build_nerve(nerve.hexagon_cloud(), list(range(6)), 1.0),
}


def load_complex(args) -> nerve.SimplicialComplex:
    if args.complex is not None:
        data = textio.load(args.complex)
        if not isinstance(data, dict) or not ({"facets", "simplices"} & set(data)):
            raise CliError("complex file needs a 'facets' or 'simplices' array")
        facets = data.get("facets", data.get("simplices"))
        return nerve.SimplicialComplex.from_maximal(facets, data.get("vertex_count"))
    if args.builtin is not None:
        return BUILTIN_COMPLEXES[args.builtin]()
    raise CliError("give --complex FILE or --builtin NAME")


def load_params(path: str | None, overrides: dict | None = None) -> bounds.BoundParams:
    data = {}
    if path is not None:
        data = textio.load(path)
        if not isinstance(data, dict):
            raise CliError("params file must hold an object")
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return bounds.BoundParams.from_mapping(data)


# ---------------------------------------------------------------- commands

def cmd_mahler(args) -> dict:
    f = _monic_up_to_sign(parse_coeffs(args.coeffs, args.descending))
    paths = polynomials.mahler_paths(f, tol=args.tol)
    out = {
        "coeffs": list(f.coeffs),
        "degree": f.degree,
        "mahler_roots": paths.roots,
        "mahler_graeffe": paths.graeffe,
        "rel_diff": paths.rel_diff,
        "cyclotomic_product": polynomials.is_cyclotomic_product(f),
    }
    try:
        out["mahler_measure"] = polynomials.mahler_measure(f)
        out["log_mahler_measure"] = math.log(out["mahler_measure"])
    except MahlerDisagreement as exc:
        raise CliError(str(exc)) from None
    out["roots"] = polynomials.complex_roots(f, tol=args.tol)
    return out


def cmd_cyclotomic(args) -> dict:
    f = _monic_up_to_sign(parse_coeffs(args.coeffs, args.descending))
    return {"coeffs": list(f.coeffs), "cyclotomic_product": polynomials.is_cyclotomic_product(f)}


def cmd_dobrowolski_scan(args) -> dict:
    rep = polynomials.dobrowolski_scan(args.max_degree, args.max_height, args.max_polys)
    out = rep.as_dict()
    out["turning_point"] = polynomials.dobrowolski_turning_point()
    return out


def cmd_charpoly(args) -> dict:
    m = linalg.as_exact(parse_matrix(args.matrix))
    if args.adjoint:
        m = linalg.adjoint_matrix(m)
    return {"adjoint": args.adjoint, "size": int(m.shape[0]),
            "coeffs": [str(c) for c in linalg.char_poly_coeffs(m)]}


def cmd_distance(args) -> dict:
    x = np.array(json.loads(args.x), dtype=float)
    y = np.eye(x.shape[0]) if args.y is None else np.array(json.loads(args.y), dtype=float)
    px, py = symspace.SpdPoint(x), symspace.SpdPoint(y)
    return {"x": px.tolist(), "y": py.tolist(), "distance": symspace.distance(px, py)}


def cmd_translation_bound(args) -> dict:
    g = symspace.GroupElement(parse_matrix(args.matrix))
    f = symspace.action_char_poly(g, args.adjoint)
    bound = symspace.translation_lower_bound(g, args.adjoint)
    pts = [symspace.sample_spd(g.n, args.seed + i) for i in range(args.samples)]
    disp = symspace.displacements(g, pts) if pts else np.array([])
    return {
        "matrix": g.tolist(),
        "adjoint": args.adjoint,
        "char_poly": list(f.coeffs),
        "log_mahler": polynomials.log_mahler_measure(f),
        "bound": bound,
        "samples": args.samples,
        "seed": args.seed,
        "min_displacement": float(disp.min()) if len(disp) else math.inf,
        "violations": int(np.sum(disp < bound - 1e-9)),
    }


def cmd_systole_lb(args) -> dict:
    elems = symspace.sample_hyperbolic_elements(args.n, args.count, args.seed,
                                                args.word_length, args.adjoint)
    per = [symspace.translation_lower_bound(g, args.adjoint) for g in elems]
    best = min(range(len(per)), key=per.__getitem__) if per else None
    return {
        "n": args.n,
        "count": args.count,
        "seed": args.seed,
        "word_length": args.word_length,
        "adjoint": args.adjoint,
        "systole_lower_bound": symspace.systole_lower_bound(elems, args.adjoint),
        "witness": None if best is None else elems[best].tolist(),
    }


def cmd_ball_volume(args) -> dict:
    out = {
        "dim": args.dim,
        "radius": args.radius,
        "euclidean": volumes.euclidean_ball_volume(args.dim, args.radius),
        "hyperbolic": volumes.hyperbolic_ball_volume(args.dim, args.radius, tol=args.tol),
    }
    if args.dim in (2, 3):
        out["hyperbolic_closed_form"] = volumes.hyperbolic_ball_volume_closed(args.dim, args.radius)
    return out


def cmd_lemma_constant(args) -> dict:
    return {"dim": args.dim, "lemma_constant": volumes.lemma_constant(args.dim)}


def cmd_net(args) -> dict:
    cloud = load_cloud(args)
    net = nerve.greedy_net(cloud, args.eps)
    return {"metric": cloud.metric, "points": len(cloud), "eps": args.eps,
            "size": len(net), "net": net}


def cmd_nerve(args) -> dict:
    cloud = load_cloud(args)
    net = list(range(len(cloud))) if args.net == "all" else nerve.greedy_net(cloud, args.eps)
    c = nerve.build_nerve(cloud, net, args.eps, args.max_dim)
    out = {
        "metric": cloud.metric,
        "eps": args.eps,
        "max_dim": args.max_dim,
        "net": net,
        "counts": c.counts(),
        "euler_characteristic": c.euler_characteristic(),
        "max_degree": nerve.max_degree(c),
    }
    if args.d_cap is not None and args.v_cap is not None:
        out["certificate"] = nerve.dv_certificate(c, args.d_cap, args.v_cap).as_dict()
    out["simplices"] = [list(s) for s in c.sorted_simplices()]
    return out


def cmd_homology(args) -> dict:
    c = load_complex(args)
    groups = homology.homology_groups(c)
    return {
        "vertex_count": c.vertex_count,
        "counts": c.counts(),
        "euler_characteristic": c.euler_characteristic(),
        "betti": [g.betti for g in groups],
        "groups": [g.as_dict() for g in groups],
    }


def cmd_certificate(args) -> dict:
    return bounds.complexity_certificate(args.vol, args.systole, args.dim).as_dict()


def cmd_bounds(args) -> dict:
    p = load_params(args.params, {"d": args.dim})
    if args.vol is not None and args.log_vol is not None:
        raise CliError("give at most one of --vol and --log-vol")
    inputs = {"vol": args.vol, "log_vol": args.log_vol, "s": args.s, "covol": args.covol}
    out: dict = {}
    log_vol = math.log(args.vol) if args.vol is not None and args.vol > 0 else args.log_vol
    if args.vol is not None or args.log_vol is not None:
        if log_vol is None:
            raise CliError("--vol must be positive")
        out["phi"] = bounds.phi_from_log(log_vol, p.d)
        out["systole_volume_lb"] = bounds.systole_volume_lb_from_log(log_vol, p)
        if args.vol is not None:
            out["torsion_bound_rhs"] = homology.torsion_bound_rhs(args.vol, p.d, p.C)
            out["certificate"] = bounds.complexity_certificate(
                args.vol, out["systole_volume_lb"], p.d).as_dict()
            out["alpha"] = out["certificate"]["max_vertices"] / (out["phi"] * args.vol)
    if args.s is not None:
        out["systole_degree_lb"] = bounds.systole_degree_lb(args.s, p)
    if args.covol is not None:
        out["degree_ub"] = bounds.degree_ub(args.covol, p)
        s = out["degree_ub"]
        if s >= 3:
            out["systole_degree_lb_at_degree_ub"] = bounds.systole_degree_lb(s, p)
    if not out:
        raise CliError("give at least one of --vol, --log-vol, --s, --covol")
    return {"inputs": inputs, "constants": p.as_dict(), "outputs": out}


# ---------------------------------------------------------------- parser

COMMANDS = {
    "mahler": (cmd_mahler, "Mahler measure M(f) = prod max(1, |a_i|) over the roots of a "
               "monic integer f, by root finding and by Graeffe root squaring."),
    "cyclotomic": (cmd_cyclotomic, "Exact test that every root of f is a root of unity "
                   "(Kronecker: M(f) = 1)."),
    "dobrowolski-scan": (cmd_dobrowolski_scan, "Minimum of log M(f) / (log log d / log d)^3 "
                         "over non-cyclotomic monic f of degree d >= 3 and bounded height."),
    "charpoly": (cmd_charpoly, "Exact characteristic polynomial det(xI - g) = sum c_k x^k by "
                 "Faddeev-LeVerrier, optionally of Ad(g) on sl(n)."),
    "distance": (cmd_distance, "Distance on P(n, R): d(x, y) = sqrt(sum log^2 a_i), a_i the "
                 "eigenvalues of x^(-1/2) y x^(-1/2)."),
    "translation-bound": (cmd_translation_bound, "Translation bound d(x, g x g^T) >= "
                          "2 log M(g) / m with sampled displacements."),
    "systole-lb": (cmd_systole_lb, "Systole >= min over sampled hyperbolic g of 2 log M(g) / m, "
                   "the smallest translation bound in the sample."),
    "ball-volume": (cmd_ball_volume, "vol_E(B(r)) = pi^(d/2) r^d / Gamma(d/2 + 1) and "
                    "vol_H(B(r)) = vol(S^(d-1)) int_0^r sinh^(d-1) t dt."),
    "lemma-constant": (cmd_lemma_constant, "Degree constant L(d) = vol_H(B(1.25)) / vol_E(B(0.25))."),
    "net": (cmd_net, "Greedy eps-net: points in input order kept iff >= eps from all kept."),
    "nerve": (cmd_nerve, "Witness nerve: centers c_i span a simplex iff some cloud point p "
              "has d(p, c_i) <= eps for all i; optional (d, v) certificate with "
              "k-simplex cap v C(d, k) / (k + 1)."),
    "homology": (cmd_homology, "Integral homology H_k = Z^betti + torsion from Smith normal "
                 "forms of the boundary maps."),
    "certificate": (cmd_certificate, "Complexity caps floor(vol / vol_E(s/4)) vertices and "
                    "floor(vol_H(1.25 s) / vol_E(0.25 s)) degree, s = min(systole, 1)."),
    "bounds": (cmd_bounds, "phi(v) = (log log v / log log log v)^(3d), systole >= "
               "C1 (log log log vol^C / log log vol^C)^3, systole >= c' (log log s / log s)^3, "
               "s <= c3 log covol, tors bound C phi(v) v."),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the output here (atomically) instead of stdout")
    common.add_argument("--precision", type=int, default=None,
                        help="round floats to this many significant digits (default: full)")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    p = {}
    for name, (_, text) in COMMANDS.items():
        p[name] = sub.add_parser(name, parents=[common], help=text, description=text)

    for name in ("mahler", "cyclotomic"):
        p[name].add_argument("--coeffs", required=True,
                             help="comma-separated integer coefficients, ascending powers")
        p[name].add_argument("--descending", action="store_true",
                             help="read --coeffs from the leading coefficient down")
    p["mahler"].add_argument("--tol", type=float, default=polynomials.ROOT_TOL,
                             help="root-finder tolerance (default %(default)g)")

    q = p["dobrowolski-scan"]
    q.add_argument("--max-degree", type=int, default=6)
    q.add_argument("--max-height", type=int, default=2)
    q.add_argument("--max-polys", type=int, default=None)

    q = p["charpoly"]
    q.add_argument("--matrix", required=True, help="JSON rows or 'a,b;c,d'")
    q.add_argument("--adjoint", action="store_true")

    q = p["distance"]
    q.add_argument("--x", required=True, help="SPD matrix as JSON rows")
    q.add_argument("--y", default=None, help="second SPD matrix (default identity)")

    q = p["translation-bound"]
    q.add_argument("--matrix", required=True, help="element of SL(n, Z), JSON rows or 'a,b;c,d'")
    q.add_argument("--adjoint", action="store_true")
    q.add_argument("--samples", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)

    q = p["systole-lb"]
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--count", type=int, default=20)
    q.add_argument("--word-length", type=int, default=6)
    q.add_argument("--adjoint", action="store_true")
    q.add_argument("--seed", type=int, default=0)

    q = p["ball-volume"]
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--radius", type=float, required=True)
    q.add_argument("--tol", type=float, default=volumes.QUAD_TOL)

    p["lemma-constant"].add_argument("--dim", type=int, default=2)

    for name in ("net", "nerve"):
        q = p[name]
        q.add_argument("--cloud", default=None, help="structured-text file with metric and points")
        q.add_argument("--random", choices=nerve.METRICS, default=None,
                       help="sample a random cloud with this metric instead")
        q.add_argument("--hexagon", action="store_true", help="six points on the unit circle")
        q.add_argument("--count", type=int, default=30)
        q.add_argument("--point-dim", type=int, default=2)
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--eps", type=float, required=True)
    q = p["nerve"]
    q.add_argument("--max-dim", type=int, default=nerve.DEFAULT_MAX_DIM)
    q.add_argument("--net", choices=("greedy", "all"), default="greedy")
    q.add_argument("--d-cap", type=int, default=None)
    q.add_argument("--v-cap", type=int, default=None)

    q = p["homology"]
    q.add_argument("--complex", default=None, help="structured-text file with facets")
    q.add_argument("--builtin", choices=sorted(BUILTIN_COMPLEXES), default=None)

    q = p["certificate"]
    q.add_argument("--vol", type=float, required=True)
    q.add_argument("--systole", type=float, required=True)
    q.add_argument("--dim", type=int, required=True)

    q = p["bounds"]
    q.add_argument("--params", default=None, help="structured-text file of constants")
    q.add_argument("--dim", type=int, default=None)
    q.add_argument("--vol", type=float, default=None)
    q.add_argument("--log-vol", type=float, default=None,
                   help="log of the volume, for volumes beyond float range")
    q.add_argument("--s", type=float, default=None, help="degree of definition")
    q.add_argument("--covol", type=float, default=None)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    func = COMMANDS[args.command][0]
    try:
        text = textio.dumps(func(args), precision=args.precision)
        if args.out:
            textio.write_atomic(args.out, text)
        else:
            stdout.write(text)
    except (CliError, ValueError, ArithmeticError, RuntimeError, OSError, TypeError,
            KeyError) as exc:
        msg = " ".join(str(exc).split()) or type(exc).__name__
        stderr.write(f"{PROG} {args.command}: error: {msg}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
