"""Command-line driver.

Subcommands: enumerate, scheme, crosscheck, feasibility, selftest.
Exit codes: 0 success, 1 mathematical verification failure, 2 invalid
input, 3 resource cap exceeded.  JSON output is canonical (sorted keys),
so identical runs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from .errors import PolarcoverError, QNotOneModFour, ResourceCapExceeded
from .finite_field import construct_field

EXIT_OK = 0
EXIT_MATH_FAIL = 1
EXIT_INVALID = 2
EXIT_CAP = 3


def _factor_prime_power(q):
    """(p, e) with q = p^e, p prime; None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            return (q, 1)
        if q % p:
            continue
        e, m = 0, q
        while m % p == 0:
            m //= p
            e += 1
        return (p, e) if m == 1 else None
    return None


def _build_space(q, n, cap):
    pe = _factor_prime_power(q)
    if pe is None or pe[0] == 2:
        raise ValueError(f"q = {q} is not an odd prime power")
    if q % 4 != 1:
        raise QNotOneModFour(q)
    from .symplectic import SymplecticSpace

    spec = construct_field(*pe)
    space = SymplecticSpace(spec, n)
    space.generators(cap=cap)
    return space


def _emit(args, payload, csv_rows=None):
    if getattr(args, "format", "json") == "csv" and csv_rows is not None:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(csv_rows[0].keys()))
        writer.writeheader()
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(args):
    from .symplectic import distance_profile, export_generators

    space = _build_space(args.q, args.n, args.cap_generators)
    profile = distance_profile(space, space.generators()[0])
    payload = {
        "q": args.q,
        "n": args.n,
        "count": len(space.generators()),
        "distance_profile": {str(k): v for k, v in profile.items()},
        "generators": export_generators(space),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_scheme(args):
    from .cover import CoverGraph
    from .maslov import CoherenceTable
    from .scheme_core import (
        SchemeInstance,
        export_scheme,
        krein,
        q_bipartite_check,
        q_poly_orderings,
        spectral_data,
        verify_scheme,
    )

    space = _build_space(args.q, args.n, args.cap_generators)
    table = CoherenceTable(space)
    cover = CoverGraph(table)
    instance = SchemeInstance.from_cover(cover)
    tensor = verify_scheme(instance)
    sd = spectral_data(tensor, instance.N)
    kt = krein(sd)
    orderings = q_poly_orderings(kt)
    if not orderings:
        raise PolarcoverError("no Q-polynomial ordering found")
    payload = export_scheme(sd, tensor, kt, orderings)
    payload["q"] = args.q
    payload["n"] = args.n
    payload["seed"] = args.seed
    payload["q_bipartite"] = [q_bipartite_check(kt, o) for o in orderings]
    _emit(args, payload)
    return EXIT_OK


def cmd_crosscheck(args):
    from .closed_form import (
        eigenmatrices_closed,
        l1_closed,
        q_sequence,
        s_family,
        verify_thm71,
    )

    if args.q % 4 != 1:
        raise QNotOneModFour(args.q)
    payload = {"q": args.q, "n": args.n, "formula_only": bool(args.formula_only)}

    cf = eigenmatrices_closed(args.n, args.q)  # residual check happens inside
    L1c = l1_closed(args.n, args.q)
    sigma = q_sequence(args.n, args.q)
    polys = s_family(args.n, args.q)
    rep = verify_thm71(L1c, sigma, polys, args.q)
    payload["closed_identities"] = {
        "quotient_residuals_zero": True,
        "moment_identities_ok": rep.ok,
        "identities_checked": rep.identities_checked,
    }
    if not rep.ok:
        _emit(args, payload)
        return EXIT_MATH_FAIL

    if not args.formula_only:
        from .closed_form import crosscheck_P
        from .cover import CoverGraph
        from .maslov import CoherenceTable
        from .scheme_core import (
            SchemeInstance,
            intersection_matrix,
            spectral_data,
            verify_scheme,
        )

        space = _build_space(args.q, args.n, args.cap_generators)
        table = CoherenceTable(space)
        cover = CoverGraph(table)
        tensor = verify_scheme(SchemeInstance.from_cover(cover))
        L1b = intersection_matrix(tensor, 1)
        payload["l1_matches"] = L1b == L1c
        rep_b = verify_thm71(L1b, sigma, polys, args.q)
        payload["moment_identities_brute_ok"] = rep_b.ok
        sd = spectral_data(tensor, tensor.N)
        ck = crosscheck_P(args.n, args.q, sd, cf)
        payload["p_matrix_matches"] = ck.ok
        if not ck.ok:
            payload["p_matrix_failure"] = ck.failure
        if not (payload["l1_matches"] and rep_b.ok and ck.ok):
            _emit(args, payload)
            return EXIT_MATH_FAIL
    _emit(args, payload)
    return EXIT_OK


def cmd_feasibility(args):
    from .feasibility import (
        candidate_parameters,
        check_feasibility,
        parse_r,
        sweep,
        verify_Lstar,
    )

    if args.sweep:
        r_values = [parse_r(tok) for tok in args.sweep.split(",")]
        rows = sweep(r_values)
        _emit(args, rows, csv_rows=rows)
        return EXIT_OK if all(row["verdict"] == "pass" for row in rows) \
            else EXIT_MATH_FAIL
    if args.r is None:
        raise ValueError("feasibility requires --r or --sweep")
    ps = candidate_parameters(parse_r(args.r))
    rep = check_feasibility(ps)
    lrep = verify_Lstar(ps)
    nval = ps.N
    payload = {
        "r": str(ps.r),
        "q": ps.r.q,
        "N": str(nval.a if nval.is_rational() else nval),
        "feasibility": rep.as_dict(),
        "lstar": lrep.as_dict(),
    }
    _emit(args, payload)
    return EXIT_OK if (rep.ok and lrep.ok) else EXIT_MATH_FAIL


def _suite_exact_algebra(seed):
    from fractions import Fraction

    from .exact_algebra import GaussianContext, QuadExt, gauss, rpow

    ctx = GaussianContext(5)
    assert gauss(4, 2, ctx) == 806
    assert gauss(-1, 2, ctx) == Fraction(1, 125)
    r = QuadExt.root(5)
    assert (1 + r) * (1 - r) == -4
    assert r**2 == 5
    assert rpow(5, 3) == r * 5


def _suite_maslov(seed):
    from .maslov import CoherenceTable, coherent_split_count, verify_two_graph
    from .symplectic import distance

    space = _build_space(5, 1, 10**6)
    table = CoherenceTable(space)
    rep = verify_two_graph(table, seed=seed)
    assert rep.ok and rep.coherent_triples == 10
    gens = space.generators()
    for X in gens:
        for Y in gens:
            if X.id < Y.id and distance(space, X, Y) == 1:
                assert coherent_split_count(table, X, Y) == (2, 2)


def _suite_cover(seed):
    from .cover import CoverGraph, SignedVertex
    from .maslov import CoherenceTable

    space = _build_space(5, 1, 10**6)
    cover = CoverGraph(CoherenceTable(space))
    assert cover.num_vertices == 12
    assert all(len(cover.neighbors(v)) == 5 for v in cover.vertices())
    assert cover.diameter() == 3
    u = SignedVertex(0, 1)
    assert cover.bfs_distance(u, u.antipode()) == 3
    assert cover.antipodal_by_paths(u, u.antipode())


def _suite_scheme(seed):
    from .cover import CoverGraph
    from .maslov import CoherenceTable
    from .scheme_core import (
        SchemeInstance,
        krein,
        q_bipartite_check,
        q_poly_orderings,
        spectral_data,
        verify_scheme,
    )

    space = _build_space(5, 1, 10**6)
    cover = CoverGraph(CoherenceTable(space))
    tensor = verify_scheme(SchemeInstance.from_cover(cover))
    assert tensor.p[1][1][0] == 5
    sd = spectral_data(tensor, tensor.N)
    kt = krein(sd)
    orderings = q_poly_orderings(kt)
    assert len(orderings) == 2
    assert all(q_bipartite_check(kt, o) for o in orderings)


def _suite_closed_form(seed):
    from .closed_form import (
        eigenmatrices_closed,
        l1_closed,
        q_sequence,
        s_family,
        verify_thm71,
    )

    for q, n in ((5, 1), (5, 2), (9, 2), (13, 1)):
        eigenmatrices_closed(n, q)
        rep = verify_thm71(l1_closed(n, q), q_sequence(n, q), s_family(n, q), q)
        assert rep.ok


def _suite_feasibility(seed):
    from .feasibility import (
        candidate_parameters,
        check_feasibility,
        parse_r,
        verify_Lstar,
    )

    ps = candidate_parameters(parse_r("3"))
    assert ps.N.a == 820
    assert check_feasibility(ps).ok
    assert verify_Lstar(ps).ok


_SUITES = {
    "exact_algebra": _suite_exact_algebra,
    "maslov": _suite_maslov,
    "cover": _suite_cover,
    "scheme": _suite_scheme,
    "closed_form": _suite_closed_form,
    "feasibility": _suite_feasibility,
}


def cmd_selftest(args):
    if args.suite:
        if args.suite not in _SUITES:
            raise ValueError(f"unknown suite {args.suite!r}; "
                             f"choose from {sorted(_SUITES)}")
        names = [args.suite]
    else:
        names = list(_SUITES)
    failed = []
    for name in names:
        start = time.perf_counter()
        try:
            _SUITES[name](args.seed)
            status = "pass"
        except AssertionError:
            status = "FAIL"
            failed.append(name)
        elapsed = time.perf_counter() - start
        print(f"{name:14s} {status}  ({elapsed:.2f}s)")
    if failed:
        print(f"failing suites: {', '.join(failed)}")
        return EXIT_MATH_FAIL
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polarcover",
        description="Exact double-cover association scheme toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_qn=True):
        if needs_qn:
            p.add_argument("--q", type=int, required=True,
                           help="odd prime power, 1 mod 4")
            p.add_argument("--n", type=int, required=True,
                           help="half the symplectic dimension")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--cap-generators", type=int, default=10**6)

    p = sub.add_parser("enumerate", help="list the maximal isotropic subspaces")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("scheme", help="build and verify the cover scheme")
    common(p)
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("crosscheck", help="closed forms vs brute force")
    common(p)
    p.add_argument("--formula-only", action="store_true",
                   help="skip graph construction; formula self-checks only")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("feasibility", help="candidate parameter checks")
    common(p, needs_qn=False)
    p.add_argument("--r", default=None, help='integer or "sqrt:<q>"')
    p.add_argument("--sweep", default=None,
                   help="comma-separated list of r values")
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("selftest", help="run the built-in property suites")
    common(p, needs_qn=False)
    p.add_argument("--suite", default=None, help="run a single named suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ResourceCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (QNotOneModFour, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PolarcoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH_FAIL


if __name__ == "__main__":
    sys.exit(main())
