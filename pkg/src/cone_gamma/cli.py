"""Command-line front end: catalog listing, factor decompositions, verification suites.

Exit codes: 0 all checks passed, 1 a check failed or a pole/condition error
was hit, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import gamma_matrices as gm
from . import verification as vf
from . import zeta_numeric as zn
from .cone_model import catalog, catalog_names, check_condition_41, derived_vectors, measure_exponents
from .special_functions import PoleError, gamma_c_identity_residual
from .structured_factors import decomposition_rhs, script_A
from .verification import ConditionError, write_reports


class SystemExit2(SystemExit):
    """Usage error: print to stderr and exit 2."""

    def __init__(self, message):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


def _parse_complex_vector(text: str, expected: int = None):
    vals = [zn.parse_complex(v) for v in text.split(",") if v.strip()]
    if expected is not None and len(vals) != expected:
        raise ValueError(f"expected {expected} comma-separated values, got {len(vals)}")
    return np.array(vals, dtype=complex)


def _parse_theta(text: str) -> dict:
    """Rotation-angle spec: 'all:<v>' or 'k,j:<v>[;k,j:<v>...]'."""
    text = text.strip()
    if text.startswith("all:"):
        return {"all": float(text[4:])}
    out = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        place, _, val = part.partition(":")
        k, j = (int(v) for v in place.split(","))
        out[(k, j)] = float(val)
    return out


def _theta_for(r: int, spec) -> dict:
    if spec is None:
        return {}
    parsed = _parse_theta(spec) if isinstance(spec, str) else spec
    if "all" in parsed:
        v = parsed["all"]
        return {(k, j): v for k in range(2, r + 1) for j in range(1, k)}
    return parsed


def _print_reports(reports, as_json: bool, out_path):
    if out_path:
        write_reports(reports, out_path)
    if as_json:
        for rep in reports:
            print(rep.to_json_line())
    else:
        for rep in reports:
            mark = "PASS" if rep.passed else "FAIL"
            print(f"[{mark}] {rep.identity_name}  residual={rep.residual:.3e}  tol={rep.tolerance:.1e}")
        n_fail = sum(1 for rep in reports if not rep.passed)
        total = len(reports)
        print(f"{total} checks, {total - n_fail} passed, {n_fail} failed")
    return 0 if all(r.passed for r in reports) else 1


def _cmd_catalog(args) -> int:
    names = [args.cone] if args.cone else catalog_names()
    rows = []
    for name in names:
        ent = catalog(name)
        cone = ent.cone
        p, q, d = derived_vectors(cone)
        m, m_star = measure_exponents(cone)
        rows.append(
            {
                "name": name,
                "rank": cone.rank,
                "dim": cone.dim,
                "n": [[k, j, cone.n_value(k, j)] for (k, j) in sorted(cone.n)],
                "p": list(p),
                "q": list(q),
                "d": [str(v) for v in d],
                "measure_exponents": [str(v) for v in m],
                "dual_measure_exponents": [str(v) for v in m_star],
                "diagonalizable_m": check_condition_41(cone),
                "chart": ent.chart.kind if ent.chart else None,
            }
        )
    if args.json:
        for row in rows:
            print(json.dumps(row, sort_keys=True))
    else:
        for row in rows:
            cond = row["diagonalizable_m"]
            cond_text = f"m={cond}" if cond is not None else "not diagonalizable"
            print(
                f"{row['name']}: rank {row['rank']}, dim {row['dim']}, "
                f"d=({', '.join(row['d'])}), measure=({', '.join(row['measure_exponents'])}), "
                f"{cond_text}, chart={row['chart']}"
            )
    return 0


def _cmd_decompose(args) -> int:
    if args.cone:
        ent = catalog(args.cone)
        cone = ent.cone
        r = cone.rank
        if not args.s:
            raise SystemExit2("decompose --cone requires --s")
        s = _parse_complex_vector(args.s, r)
        alpha = gm.fe_alpha(cone, s)
        product = script_A(r, alpha, gm.theta_from_cone(cone))
        header = f"{cone.name}: scaled gamma-matrix factorization at s={args.s}"
    else:
        if args.r is None or not args.alpha:
            raise SystemExit2("decompose requires either --cone/--s or --r/--alpha")
        r = args.r
        alpha = _parse_complex_vector(args.alpha, r)
        product = decomposition_rhs(r, alpha, _theta_for(r, args.theta))
        header = f"rank {r}: cosine-block factorization at alpha={args.alpha}"
    payload = {"size": product.size, "factors": product.to_json()}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh)
    if args.json:
        print(json.dumps(payload))
    else:
        print(header)
        named = sum(1 for f in product.factors if f.label[0] in ("P", "D"))
        kind = "block-phase" if args.cone else "scalar"
        print(f"{named} labeled factors plus {kind} prefactor, size {product.size}x{product.size}")
        for f in product.factors:
            print(f"  {f.label}: {f.params}")
    return 0


def _suite_reports(args):
    suite = args.suite
    seed = args.seed
    tol = args.tol
    if suite == "prop31":
        if args.r is None:
            raise SystemExit2("suite prop31 requires --r")
        return vf.run_prop31_suite(args.r, count=args.count or 50, seed=seed, tolerance=tol or 1e-11)
    if suite == "thm32":
        names = [args.cone] if args.cone else catalog_names()
        reports = []
        for name in names:
            reports.extend(vf.run_thm32_suite(catalog(name).cone, count=args.count or 20, seed=seed, tolerance=tol or 1e-10))
        return reports
    if suite == "det":
        if args.r is None:
            raise SystemExit2("suite det requires --r")
        return vf.run_det_suite(args.r, count=args.count or 30, seed=seed, tolerance=tol or 1e-8)
    if suite == "completion":
        names = [args.cone] if args.cone else ["orthant2", "orthant3", "quat4"]
        reports = []
        for name in names:
            reports.extend(vf.run_completion_suite(catalog(name).cone, count=args.count or 20, seed=seed, tolerance=tol or 1e-12))
        return reports
    if suite == "fe":
        names = [args.cone] if args.cone else ["orthant2", "orthant3"]
        reports = []
        for name in names:
            reports.extend(zn.run_fe_suite(name, count=args.count or 5, seed=seed, tolerance=tol or 1e-9))
        return reports
    if suite == "quadrature":
        names = [args.cone] if args.cone else ["sym2", "vinberg3"]
        reports = []
        for name in names:
            reports.extend(zn.run_quadrature_suite(name, count=args.count or 2, seed=seed))
        return reports
    if suite == "invariance":
        names = [args.cone] if args.cone else ["orthant2", "sym2", "vinberg3"]
        return zn.run_invariance_suite(names, seed=seed)
    if suite == "gamma":
        return _gamma_identity_suite(count=args.count or 200, seed=seed, tolerance=tol or 1e-11)
    raise SystemExit2(f"unknown suite {suite!r}")


def _gamma_identity_suite(count: int, seed: int, tolerance: float):
    import time

    rng = np.random.default_rng(seed)
    reports = []
    produced = 0
    while produced < count:
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        start = time.perf_counter()
        try:
            residual = max(gamma_c_identity_residual(z, 0), gamma_c_identity_residual(z, 1))
        except PoleError:
            continue
        produced += 1
        reports.append(
            vf.ResidualReport(
                identity_name="gamma-cosine-duplication",
                params={"z": [z.real, z.imag]},
                residual=float(residual),
                tolerance=float(tolerance),
                passed=bool(residual <= tolerance),
                wall_time=time.perf_counter() - start,
            )
        )
    return reports


def _cmd_verify(args) -> int:
    try:
        if args.config:
            reports = zn.run_fe_config(args.config)
        else:
            if not args.suite:
                raise SystemExit2("verify requires --suite or --config")
            reports = _suite_reports(args)
    except (PoleError, ConditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return _print_reports(reports, args.json, args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cone-gamma", description="Gamma-matrix factorizations and local zeta checks on homogeneous cones")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cat = sub.add_parser("catalog", help="list the built-in cones and their derived data")
    p_cat.add_argument("--cone", help="show a single catalog entry")
    p_cat.add_argument("--json", action="store_true")

    p_dec = sub.add_parser("decompose", help="print a labeled factor decomposition")
    p_dec.add_argument("--cone", help="catalog cone; uses the gamma-matrix factorization at --s")
    p_dec.add_argument("--s", help="comma-separated complex literals, e.g. '0.4+0.2i,1.8'")
    p_dec.add_argument("--r", type=int, help="rank for the plain cosine-block factorization")
    p_dec.add_argument("--alpha", help="comma-separated complex literals of length r")
    p_dec.add_argument("--theta", help="rotation angles: 'all:<v>' or 'k,j:<v>[;k,j:<v>...]'")
    p_dec.add_argument("--json", action="store_true")
    p_dec.add_argument("--out", help="write the factor JSON to a file")

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument(
        "--suite",
        choices=["prop31", "thm32", "det", "completion", "fe", "quadrature", "invariance", "gamma"],
    )
    p_ver.add_argument("--config", help="JSON file for functional-equation sweeps")
    p_ver.add_argument("--cone")
    p_ver.add_argument("--r", type=int)
    p_ver.add_argument("--count", type=int)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--tol", type=float)
    p_ver.add_argument("--json", action="store_true", help="print reports as JSON lines")
    p_ver.add_argument("--out", help="write reports as JSON lines to a file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "catalog":
            return _cmd_catalog(args)
        if args.command == "decompose":
            return _cmd_decompose(args)
        if args.command == "verify":
            return _cmd_verify(args)
    except SystemExit:
        raise
    except (PoleError, ConditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
