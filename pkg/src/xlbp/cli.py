"""Command-line front door: generate polynomials, run suites, certify recurrences.

Exit codes: 0 when everything requested passed, 1 when a verification or
certification failed, 2 on usage errors, parameter poles or inadmissible
indices.  JSON output is byte-deterministic (sorted keys, canonical rational
strings); wall-clock timings are opt-in via --timings because they would break
determinism.

The environment variable XLBP_THREADS caps the worker count used to shard
suite checks; the default is sequential execution and the report order is
fixed either way.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .darboux import backward_apply, kernel_check, psi_hat, xi
from .exact_core import Poly, format_rational, parse_rational
from .hr_classical import (
    IdentityTag,
    ParameterPoleError,
    Params,
    hr_partner,
    hr_poly,
    hr_poly_robust,
    norm_ratio,
    verify_identity,
)
from .recurrence import (
    CertificationError,
    certify,
    example_oracles,
    xi_reading_report,
)
from .xhr import (
    InadmissibleIndexError,
    XIndex,
    compact_darboux_sign,
    darboux_route_poly,
    x_norm_ratio,
    x_partner,
    x_poly,
    x_weight_factor,
    xp4_derivative_factor,
)

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _parse_params(args) -> Params:
    return Params(parse_rational(args.alpha), parse_rational(args.beta))


def _poly_strings(p: Poly) -> list:
    return [format_rational(c) for c in p.coeffs]


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    params = _parse_params(args)
    if args.family == "hr":
        poly = hr_partner(args.n, params) if args.partner else hr_poly(args.n, params)
        label = f"{'Q' if args.partner else 'P'}_{args.n}"
        meta = {"family": "hr", "n": args.n}
    else:
        if args.j0 is None or args.l0 is None:
            raise argparse.ArgumentTypeError("--family xhr requires --j0 and --l0")
        idx = XIndex(args.j0, args.l0, args.n)
        xp = x_partner(idx, params) if args.partner else x_poly(idx, params)
        poly = xp.poly
        label = f"{'XQ' if args.partner else 'XP'}({args.j0},{args.l0},{args.n})"
        meta = {"family": "xhr", "j0": args.j0, "l0": args.l0, "n": args.n}
    meta.update(
        {
            "alpha": format_rational(params.alpha),
            "beta": format_rational(params.beta),
            "partner": bool(args.partner),
            "degree": poly.degree,
            "coefficients": _poly_strings(poly),
        }
    )
    if args.format == "json":
        text = json.dumps(meta, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        lines = ["degree,numerator,denominator"]
        for k, c in enumerate(poly.coeffs):
            lines.append(f"{k},{c.numerator},{c.denominator}")
        text = "\n".join(lines) + "\n"
    else:
        text = f"{label}(z; alpha={params.alpha}, beta={params.beta}) = {poly}\n"
    _emit(text, args.out)
    return 0


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _run_checks(checks, workers: int):
    """Execute (check_id, inputs, thunk) triples; order of results is fixed."""
    results = [None] * len(checks)

    def run_one(i):
        check_id, inputs, thunk = checks[i]
        started = time.perf_counter()
        try:
            outcome = thunk()
            status, witness, reason = "pass", None, None
            if outcome is not None and outcome is not True:
                status = "fail"
                witness = outcome
        except (ParameterPoleError, InadmissibleIndexError) as exc:
            status, witness, reason = "skipped", None, str(exc)
        except CertificationError as exc:
            status, reason = "fail", str(exc)
            witness = (
                _poly_strings(exc.residual)
                if isinstance(exc.residual, Poly)
                else None
            )
        return {
            "check_id": check_id,
            "inputs": inputs,
            "status": status,
            "witness": witness,
            "reason": reason,
            "time_s": time.perf_counter() - started,
        }

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for i, rec in enumerate(pool.map(run_one, range(len(checks)))):
                results[i] = rec
    else:
        for i in range(len(checks)):
            results[i] = run_one(i)
    return results


def _witness_or_none(result):
    """Map an IdentityResult to None (pass) or a coefficient-list witness."""
    if result.ok:
        return None
    w = result.witness
    try:
        return [str(c) for c in w.coeffs]
    except AttributeError:
        return [str(w)]


def _identity_checks(params, max_n):
    checks = []
    for tag in IdentityTag:
        for n in range(max_n + 1):
            checks.append(
                (
                    f"identities/{tag.value}/n={n}",
                    {"n": n},
                    lambda tag=tag, n=n: _witness_or_none(
                        verify_identity(tag, n, params)
                    ),
                )
            )
    return checks


def _darboux_checks(params, j0s, max_n, max_l0):
    checks = []
    shifted = params.shifted(1, -1)
    for j0 in j0s:
        for l0 in range(1, max_l0 + 1):
            checks.append(
                (
                    f"darboux/kernel/j0={j0}/l0={l0}",
                    {"j0": j0, "l0": l0},
                    lambda j0=j0, l0=l0: None if kernel_check(j0, l0, params) else "kernel relation nonzero",
                )
            )
            for n in range(max_n + 1):
                if j0 == 1 and n == l0:
                    checks.append(
                        (
                            f"darboux/vanishing/j0=1/l0={l0}/n={n}",
                            {"j0": j0, "l0": l0, "n": n},
                            lambda l0=l0, n=n: None
                            if psi_hat(1, l0, n, params).is_zero
                            else "expected the excluded member to vanish",
                        )
                    )
                    continue

                def image_law(j0=j0, l0=l0, n=n):
                    res = backward_apply(j0, l0, psi_hat(j0, l0, n, params), params)
                    if not res.divisible:
                        return [str(c) for _, c in res.remainder.items()]
                    want = xi(j0, l0, n, params) * hr_poly_robust(n, shifted)
                    diff = res.image - want.to_laurent()
                    return None if diff.is_zero else [str(c) for _, c in diff.items()]

                checks.append(
                    (
                        f"darboux/backward-image/j0={j0}/l0={l0}/n={n}",
                        {"j0": j0, "l0": l0, "n": n},
                        image_law,
                    )
                )
    return checks


def _xhr_checks(params, j0s, max_n, max_l0):
    checks = []
    for j0 in j0s:
        for l0 in range(1, max_l0 + 1):
            for n in range(max_n + 1):
                idx = XIndex(j0, l0, n)
                if not idx.is_admissible:
                    continue

                def construction(idx=idx, j0=j0):
                    xp = x_poly(idx, params)
                    other = compact_darboux_sign(j0) * darboux_route_poly(idx, params)
                    diff = xp.poly - other
                    if not diff.is_zero:
                        return _poly_strings(diff)
                    if xp.poly.degree != idx.degree:
                        return f"degree {xp.poly.degree} != {idx.degree}"
                    return None

                checks.append(
                    (
                        f"xhr/construction/j0={j0}/l0={l0}/n={n}",
                        {"j0": j0, "l0": l0, "n": n},
                        construction,
                    )
                )

                def norms(idx=idx, j0=j0, l0=l0, n=n):
                    from .darboux import seed_theta

                    lhs = x_norm_ratio(idx, params)
                    rhs = (seed_theta(j0, l0, params) - n) * (
                        n + params.beta
                    ) * norm_ratio(n, params)
                    return None if lhs == rhs else [str(lhs), str(rhs)]

                checks.append(
                    (
                        f"xhr/norm-theta/j0={j0}/l0={l0}/n={n}",
                        {"j0": j0, "l0": l0, "n": n},
                        norms,
                    )
                )
        if j0 == 4:
            for l0 in range(1, max_l0 + 1):
                for n in range(max_n + 1):
                    checks.append(
                        (
                            f"xhr/derivative-factor/l0={l0}/n={n}",
                            {"j0": 4, "l0": l0, "n": n},
                            lambda l0=l0, n=n: None
                            if xp4_derivative_factor(l0, n, params)
                            else "factorisation failed",
                        )
                    )
        checks.append(
            (
                f"xhr/weight-ratio/j0={j0}",
                {"j0": j0, "l0": 1, "z": "2"},
                lambda j0=j0: _weight_spot(j0, params),
            )
        )
    return checks


def _weight_spot(j0, params):
    factor = x_weight_factor(j0, 1, params)
    z = Fraction(2)
    den = factor.denominator_base(z)
    if den == 0:
        raise ParameterPoleError("weight denominator vanishes at the spot point")
    lin = (z - 1) if factor.linear_base == "z-1" else (1 - z)
    expected = (
        factor.constant_ratio * z**factor.monomial_power * lin / den**2
        if factor.linear_power == 1
        else factor.constant_ratio * z**factor.monomial_power / (lin * den**2)
    )
    got = factor.ratio_at(z)
    return None if got == expected else [str(got), str(expected)]


def _recurrence_checks(params, j0s, max_n, max_l0):
    checks = []
    for j0 in j0s:
        for l0 in range(1, max_l0 + 1):
            for n in range(2 * l0 + 1, max_n + 1):
                inputs = {"j0": j0, "l0": l0, "n": n, "mode": "thm12"}

                def cert_check(j0=j0, l0=l0, n=n, inputs=inputs):
                    cert = certify(XIndex(j0, l0, n), params)
                    inputs["certificate"] = cert.to_json_dict()
                    problems = []
                    if not cert.residual_zero:
                        problems.append("residual nonzero")
                    if not cert.b_unique:
                        problems.append("b not unique")
                    if cert.term_count != 3 * l0 + 4:
                        problems.append(f"term count {cert.term_count}")
                    return problems or None

                checks.append(
                    (f"recurrence/certify/j0={j0}/l0={l0}/n={n}", inputs, cert_check)
                )
        if j0 in (3, 4) and max_n >= 2 * 1 + 1:

            def reading(j0=j0):
                n_probe = min(max_n, 7)
                rep = xi_reading_report(XIndex(j0, 1, n_probe), params)
                matched = [k for k, v in rep.items() if v]
                if not matched:
                    return ["no eigenvalue reading matches the solver route"]
                return None

            checks.append(
                (
                    f"recurrence/eigenvalue-reading/j0={j0}",
                    {
                        "j0": j0,
                        "l0": 1,
                        "note": "records which eigenvalue-ratio reading matches the solver",
                        "matched": _reading_tags(j0, params, max_n),
                    },
                    reading,
                )
            )
        if max_n >= 5:

            def golden(j0=j0):
                cert = certify(XIndex(j0, 1, 5), params)
                want = example_oracles(j0, params)
                return None if cert.b == want else {
                    str(j): [str(cert.b.get(j)), str(v)] for j, v in want.items()
                    if cert.b.get(j) != v
                }

            checks.append(
                (
                    f"recurrence/golden-example/{j0}",
                    {"j0": j0, "l0": 1, "n": 5},
                    golden,
                )
            )
    return checks


def _reading_tags(j0, params, max_n):
    try:
        rep = xi_reading_report(XIndex(j0, 1, min(max_n, 7)), params)
        return sorted(k for k, v in rep.items() if v)
    except (ParameterPoleError, InadmissibleIndexError):
        return []


def _quadrature_checks(params, j0s, max_n):
    from . import quadrature as quad

    checks = []
    if not params.is_positive:
        checks.append(
            (
                "quadrature/positivity",
                {"alpha": str(params.alpha), "beta": str(params.beta)},
                lambda: (_ for _ in ()).throw(
                    ParameterPoleError("positivity condition fails; suite skipped")
                ),
            )
        )
        return checks
    # internal refinement tolerances sit one order under each check's bar
    cfg_classical = quad.QuadConfig(tolerance=1e-9, refinement_levels=7)
    cfg_exceptional = quad.QuadConfig(tolerance=1e-7, refinement_levels=7)
    n_cap = min(max_n, 3)

    def classical(n, m):
        def thunk():
            res = quad.classical_quad(n, m, params, cfg_classical)
            exact = norm_ratio(n, params) if n == m else Fraction(0)
            err = abs(res.value - Fraction(exact))
            scale = max(1.0, abs(float(exact)))
            return None if err <= 1e-8 * scale else [f"error {err}"]

        return thunk

    for n in range(n_cap + 1):
        for m in range(n_cap + 1):
            checks.append(
                (
                    f"quadrature/classical/n={n}/m={m}",
                    {"n": n, "m": m, "tolerance": "1e-8"},
                    classical(n, m),
                )
            )

    def exceptional(j0, n, m):
        def thunk():
            res = quad.exceptional_quad(
                XIndex(j0, 1, n), XIndex(j0, 1, m), params, cfg_exceptional
            )
            exact = x_norm_ratio(XIndex(j0, 1, n), params) if n == m else Fraction(0)
            err = abs(res.value - Fraction(exact))
            scale = max(1.0, abs(float(exact)))
            return None if err <= 1e-6 * scale else [f"error {err}"]

        return thunk

    for j0 in j0s:
        for n in range(min(max_n, 2) + 1):
            for m in range(min(max_n, 2) + 1):
                if not (XIndex(j0, 1, n).is_admissible and XIndex(j0, 1, m).is_admissible):
                    continue
                checks.append(
                    (
                        f"quadrature/exceptional/j0={j0}/n={n}/m={m}",
                        {"j0": j0, "l0": 1, "n": n, "m": m, "tolerance": "1e-6"},
                        exceptional(j0, n, m),
                    )
                )
    return checks


def cmd_verify(args) -> int:
    params = _parse_params(args)
    j0s = args.j0 or [1, 2, 3, 4]
    suites = (
        ["identities", "darboux", "xhr", "recurrence", "quadrature"]
        if args.suite == "all"
        else [args.suite]
    )
    checks = []
    for suite in suites:
        if suite == "identities":
            checks += _identity_checks(params, args.max_n)
        elif suite == "darboux":
            checks += _darboux_checks(params, j0s, args.max_n, args.max_l0)
        elif suite == "xhr":
            checks += _xhr_checks(params, j0s, args.max_n, args.max_l0)
        elif suite == "recurrence":
            checks += _recurrence_checks(params, j0s, args.max_n, args.max_l0)
        elif suite == "quadrature":
            checks += _quadrature_checks(params, j0s, args.max_n)

    workers = max(1, int(os.environ.get("XLBP_THREADS", "1")))
    records = []
    for rec in _run_checks_with_quad_errors(checks, workers):
        if not args.timings:
            rec["time_s"] = None
        records.append(rec)

    summary = {
        "pass": sum(1 for r in records if r["status"] == "pass"),
        "fail": sum(1 for r in records if r["status"] == "fail"),
        "skipped": sum(1 for r in records if r["status"] == "skipped"),
    }
    report = {
        "tool": "xlbp",
        "tool_version": __version__,
        "command": ["verify", "--suite", args.suite],
        "params": {
            "alpha": format_rational(params.alpha),
            "beta": format_rational(params.beta),
        },
        "max_n": args.max_n,
        "max_l0": args.max_l0,
        "checks": records,
        "summary": summary,
    }
    text = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        line = (
            f"{summary['pass']} passed, {summary['fail']} failed, "
            f"{summary['skipped']} skipped -> {args.out}\n"
        )
        sys.stdout.write(line)
    else:
        sys.stdout.write(text)
    return 0 if summary["fail"] == 0 else CHECK_FAILURE


def _run_checks_with_quad_errors(checks, workers):
    """Like _run_checks but mapping the quadrature guard to skipped status."""
    from .quadrature import DenominatorNearZeroError, QuadratureConvergenceError

    wrapped = []
    for check_id, inputs, thunk in checks:

        def safe(thunk=thunk):
            try:
                return thunk()
            except DenominatorNearZeroError as exc:
                raise ParameterPoleError(f"denominator guard: {exc}") from exc
            except QuadratureConvergenceError as exc:
                return [f"no convergence: {exc}"]

        wrapped.append((check_id, inputs, safe))
    return _run_checks(wrapped, workers)


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------


def cmd_certify(args) -> int:
    params = _parse_params(args)
    idx = XIndex(args.j0, args.l0, args.n)
    mode = "thm12" if args.mode == "thm12" else "thm11"
    cert = certify(idx, params, mode=mode, k=args.k)
    text = json.dumps(cert.to_json_dict(), sort_keys=True, indent=2) + "\n"
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xlbp",
        description=(
            "Exact constructors and verification suites for Hendriksen-van "
            "Rossum Laurent biorthogonal polynomials and their four "
            "exceptional extensions."
        ),
    )
    parser.add_argument("--version", action="version", version=f"xlbp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="print one polynomial's exact coefficients")
    gen.add_argument("--family", choices=["hr", "xhr"], required=True)
    gen.add_argument("--j0", type=int, choices=[1, 2, 3, 4])
    gen.add_argument("--l0", type=int)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--alpha", required=True, help='rational like "3/5" or "1"')
    gen.add_argument("--beta", required=True)
    gen.add_argument("--partner", action="store_true", help="emit the partner family")
    gen.add_argument("--format", choices=["json", "csv", "text"], default="json")
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_gen)

    verify = sub.add_parser("verify", help="run a verification suite, emit a report")
    verify.add_argument(
        "--suite",
        choices=["identities", "darboux", "xhr", "recurrence", "quadrature", "all"],
        required=True,
    )
    verify.add_argument("--alpha", required=True)
    verify.add_argument("--beta", required=True)
    verify.add_argument("--max-n", type=int, default=8, dest="max_n")
    verify.add_argument("--max-l0", type=int, default=2, dest="max_l0")
    verify.add_argument("--j0", type=int, action="append", choices=[1, 2, 3, 4])
    verify.add_argument("--out")
    verify.add_argument(
        "--timings",
        action="store_true",
        help="record wall times (breaks byte determinism of the report)",
    )
    verify.set_defaults(func=cmd_verify)

    cert = sub.add_parser("certify", help="certify one recurrence instance as JSON")
    cert.add_argument("--j0", type=int, choices=[1, 2, 3, 4], required=True)
    cert.add_argument("--l0", type=int, required=True)
    cert.add_argument("--n", type=int, required=True)
    cert.add_argument("--alpha", required=True)
    cert.add_argument("--beta", required=True)
    cert.add_argument("--mode", choices=["thm12", "thm11"], default="thm12")
    cert.add_argument("--k", type=int)
    cert.add_argument("--out")
    cert.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CertificationError as exc:
        residual = (
            [format_rational(c) for c in exc.residual.coeffs]
            if isinstance(exc.residual, Poly)
            else None
        )
        sys.stderr.write(f"certification failed: {exc}\n")
        if residual is not None:
            sys.stderr.write(f"residual coefficients: {residual}\n")
        return CHECK_FAILURE
    except (ParameterPoleError, InadmissibleIndexError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
