"""Command-line front end: verification suites and correlator evaluation.

All subcommands write machine-readable reports (JSON lines or CSV) to
stdout and a short human summary to stderr.  Exit status: 0 when every
check passes / evaluation succeeds, 1 on a failed check, 2 on usage or
parse errors.  Randomized sweeps are seeded and echo their seed so that
failures replay exactly.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

import numpy as np

from . import correlators, exprdsl, fockspace, geometry, virasoro
from .fockspace import Bidegree, Generator, Species, State


def _emit(record: dict) -> None:
    print(json.dumps(record))


def _report(check: str, inp: str, residual: State, passed: bool) -> dict:
    terms = [
        f"{c}*{exprdsl._render_word(w)}" for w, c in sorted(residual.items())
    ]
    return {"check": check, "input": inp, "residual_terms": terms, "passed": passed}


def _random_words(rng: random.Random, max_degree: int, count: int) -> list:
    pool = []
    for d in range(max_degree + 1):
        for db in range(max_degree + 1 - d):
            pool.extend(fockspace.enumerate_basis(Bidegree(d, db)))
    return [pool[rng.randrange(len(pool))] for _ in range(count)]


def _random_generator(rng: random.Random, max_mode: int) -> Generator:
    return Generator(
        rng.choice([Species.ETA, Species.CHI]),
        rng.randint(-max_mode, max_mode),
        barred=rng.random() < 0.5,
    )


def cmd_verify_algebra(args) -> int:
    rng = random.Random(args.seed)
    ok = True
    _emit({"check": "seed", "input": str(args.seed), "passed": True})

    # anticommutator law on random generator pairs and words
    for _ in range(60):
        u = _random_generator(rng, args.max_mode)
        v = _random_generator(rng, args.max_mode)
        w = _random_words(rng, min(args.max_degree, 4), 1)[0]
        base = State.basis(w)
        lhs = fockspace.apply_generator(u, fockspace.apply_generator(v, base)) + \
            fockspace.apply_generator(v, fockspace.apply_generator(u, base))
        # the anticommutator scalar; barred zero modes count as unbarred
        uu = Generator(u.species, u.index, u.barred and u.index != 0)
        vv = Generator(v.species, v.index, v.barred and v.index != 0)
        scalar = 0
        if uu.species != vv.species and uu.barred == vv.barred and uu.index + vv.index == 0:
            scalar = uu.index if uu.species is Species.ETA else vv.index
        residual = lhs - Fraction(scalar) * base
        passed = residual.is_zero()
        ok &= passed
        rep = _report("anticommutator", f"{u}, {v} on {w}", residual, passed)
        _emit(rep)

    # basis counts against the squared strict-partition generating function
    for d in range(args.max_degree + 1):
        got = len(fockspace.enumerate_basis(Bidegree(d, 0), "chiral"))
        # coefficient of q^d in (1+1)^2 * prod_{k>=1} (1+q^k)^2
        coeffs = [0] * (d + 1)
        coeffs[0] = 1
        for k in range(1, d + 1):
            for _ in range(2):
                for j in range(d, k - 1, -1):
                    coeffs[j] += coeffs[j - k]
        expected = 4 * coeffs[d]
        passed = got == expected
        ok &= passed
        _emit({"check": "basis_count", "input": f"delta={d}", "residual_terms": [],
               "passed": passed, "got": got, "expected": expected})

    # automorphism additivity
    for _ in range(10):
        w = _random_words(rng, min(args.max_degree, 3), 1)[0]
        a, b = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        v = State.basis(w)
        r = fockspace.automorphism_alpha(a, fockspace.automorphism_alpha(b, v)) - \
            fockspace.automorphism_alpha(a + b, v)
        passed = r.is_zero()
        ok &= passed
        _emit(_report("automorphism_additive", f"a={a}, b={b} on {w}", r, passed))

    print(f"verify-algebra: {'all passed' if ok else 'FAILURES'}", file=sys.stderr)
    return 0 if ok else 1


def cmd_verify_virasoro(args) -> int:
    rng = random.Random(args.seed)
    ok = True
    _emit({"check": "seed", "input": str(args.seed), "passed": True})

    words = _random_words(rng, args.max_degree, 25)
    for w in words:
        v = State.basis(w)
        n = rng.randint(-args.max_mode, args.max_mode)
        m = rng.randint(-args.max_mode, args.max_mode)
        r = virasoro.commutator_defect(n, m, v, barred=rng.random() < 0.5)
        passed = r.is_zero()
        ok &= passed
        _emit(_report("commutator", f"n={n}, m={m} on {w}", r, passed))

        r = virasoro.mixed_commutator_defect(n, m, v)
        passed = r.is_zero()
        ok &= passed
        _emit(_report("mixed_commutator", f"n={n}, m={m} on {w}", r, passed))

        for barred in (False, True):
            _, second = virasoro.jordan_defect(w, barred=barred)
            passed = second.is_zero()
            ok &= passed
            _emit(_report("jordan_rank2", f"{'Lbar0' if barred else 'L0'} on {w}", second, passed))

        r = virasoro.gaberdiel_kausch_defect(v)
        passed = r.is_zero()
        ok &= passed
        _emit(_report("gaberdiel_kausch", str(w), r, passed))

    print(f"verify-virasoro: {'all passed' if ok else 'FAILURES'}", file=sys.stderr)
    return 0 if ok else 1


def cmd_verify_staggered(args) -> int:
    ok = True
    for rep in virasoro.staggered_verify():
        ok &= rep.passed
        _emit(_report(rep.check, rep.input, rep.residual, rep.passed))
    print(f"verify-staggered: {'all passed' if ok else 'FAILURES'}", file=sys.stderr)
    return 0 if ok else 1


def _evaluate(query_text: str, alpha_override, nodes: int):
    q = exprdsl.parse_query(query_text)
    if alpha_override is not None:
        q = correlators.CorrelatorQuery(q.domain, complex(alpha_override), q.insertions)
    val = correlators.general_correlator(q, nodes=nodes)
    coarse = correlators.general_correlator(q, nodes=max(8, nodes // 2))
    return q, val, abs(val - coarse)


def cmd_eval(args) -> int:
    q, val, err = _evaluate(args.query, args.alpha, args.nodes)
    _emit({"value_re": val.real, "value_im": val.imag, "abs_err_estimate": err})
    print(f"eval: {val} (err est {err:.2e})", file=sys.stderr)
    return 0


def cmd_grid(args) -> int:
    q = exprdsl.parse_query(args.query)
    if args.alpha is not None:
        q = correlators.CorrelatorQuery(q.domain, complex(args.alpha), q.insertions)
    idx = args.index
    if not 0 <= idx < len(q.insertions):
        print(f"grid: insertion index {idx} out of range", file=sys.stderr)
        return 2
    xs = np.linspace(args.xmin, args.xmax, args.nx)
    ys = np.linspace(args.ymin, args.ymax, args.ny)
    rows = []
    print("x,y,re,im")
    for y in ys:
        for x in xs:
            z = complex(x, y)
            ins = list(q.insertions)
            ins[idx] = (ins[idx][0], z)
            if not geometry.contains(q.domain, z):
                continue
            if any(p == z for j, (_, p) in enumerate(ins) if j != idx):
                continue
            val = correlators.general_correlator(
                correlators.CorrelatorQuery(q.domain, q.alpha, tuple(ins)), nodes=args.nodes
            )
            rows.append((x, y, val.real, val.imag))
            print(f"{x:.15g},{y:.15g},{val.real:.15g},{val.imag:.15g}")
    if args.figure:
        _render_figure(rows, args.figure)
    print(f"grid: {len(rows)} points", file=sys.stderr)
    return 0


def _render_figure(rows, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    vals = [r[2] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 5))
    sc = ax.scatter(xs, ys, c=vals, s=12, cmap="viridis")
    fig.colorbar(sc, ax=ax, label="Re")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def cmd_green(args) -> int:
    d = geometry.make_domain(args.domain)
    z = complex(args.z.replace("i", "j"))
    w = complex(args.w.replace("i", "j"))
    gv = geometry.green(d, z, w)
    _emit({"total": float(gv.total), "regular": float(gv.regular), "singular": float(gv.singular)})
    print(f"green: G({z}, {w}) = {float(gv.total):.12g}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=6)
    common.add_argument("--max-mode", type=int, default=4)
    common.add_argument("--nodes", type=int, default=correlators.DEFAULT_NODES)
    common.add_argument("--output", choices=["json", "csv"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--alpha", type=float, default=None)

    p = argparse.ArgumentParser(prog="symfermion", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("verify-algebra", parents=[common]).set_defaults(func=cmd_verify_algebra)
    sub.add_parser("verify-virasoro", parents=[common]).set_defaults(func=cmd_verify_virasoro)
    sub.add_parser("verify-staggered", parents=[common]).set_defaults(func=cmd_verify_staggered)

    pe = sub.add_parser("eval", parents=[common])
    pe.add_argument("query")
    pe.set_defaults(func=cmd_eval)

    pg = sub.add_parser("grid", parents=[common])
    pg.add_argument("query")
    pg.add_argument("--index", type=int, default=0, help="which insertion to sweep")
    pg.add_argument("--xmin", type=float, default=-0.8)
    pg.add_argument("--xmax", type=float, default=0.8)
    pg.add_argument("--ymin", type=float, default=-0.8)
    pg.add_argument("--ymax", type=float, default=0.8)
    pg.add_argument("--nx", type=int, default=20)
    pg.add_argument("--ny", type=int, default=20)
    pg.add_argument("--figure", default=None, help="optional path for a rendered heatmap")
    pg.set_defaults(func=cmd_grid)

    pgr = sub.add_parser("green", parents=[common])
    pgr.add_argument("domain")
    pgr.add_argument("z")
    pgr.add_argument("w")
    pgr.set_defaults(func=cmd_green)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except exprdsl.ExprError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
