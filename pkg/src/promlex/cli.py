"""Command-line front end.

Subcommands: extensions, matrix, stationary, spectrum, monoid, mix, subset,
graph, sweep.  Input posets are files in the two accepted formats (text
cover list or JSON); weights are exact rationals like "1/4,1/4,1/4,1/4" or
"uniform".  Exit codes: 0 ok, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .chains import (
    evaluate,
    matrix_to_json,
    matrix_to_text,
    partition_function,
    stationary_solve,
    stationary_vector,
    stationary_weight,
    transition_matrix,
    verify_master_equation,
)
from .errors import MalformedInput, PromlexError
from .families import all_posets, all_rooted_forests, all_non_forests, poset_key
from .forms import WeightVector, random_weight_vector, stable_rng
from .linalg import BACKEND
from .mixing import mixing_csv, simulate_walk, total_variation
from .monoid import eggbox, eggbox_ascii, eggbox_to_dot, green_classes, is_aperiodic, is_r_trivial, promotion_monoid
from .posets import Poset, classify, linear_extensions, parse_poset
from .promotion import build_promotion_graph, graph_to_dot, is_strongly_connected
from .spectral import (
    predicted_spectrum,
    probe_linear_spectrum,
    probe_to_json,
    spectrum_to_json,
    verify_spectrum,
)
from .subsets import (
    parse_subset,
    sorting_network_union,
    subset_promotion_graph,
    subset_stationary,
    subset_transition_matrix,
)


def _load_poset(path: str) -> Poset:
    with open(path) as fh:
        text = fh.read()
    try:
        return parse_poset(text)
    except PromlexError as exc:
        raise MalformedInput(f"{path}: {exc}") from None


def _weights(args, n: int) -> WeightVector:
    text = getattr(args, "weights", None) or "uniform"
    return WeightVector.parse(text, n)


def _emit(args, payload: dict, text: str):
    """JSON reports echo the inputs and carry the tool version and seed so a
    report is reproducible from its own header."""
    if args.json:
        meta = {"version": __version__, "command": args.command}
        for field in ("poset", "subset_file", "targets", "mode", "weights", "seed"):
            value = getattr(args, field, None)
            if value is not None:
                meta[field] = value
        print(json.dumps(meta | payload, indent=2, default=str))
    else:
        print(text)


def _word(w) -> str:
    return "".join(map(str, w)) if max(w) < 10 else ",".join(map(str, w))


# ----------------------------------------------------------------------
# Subcommands


def cmd_extensions(args) -> int:
    P = _load_poset(args.poset)
    exts = linear_extensions(P)
    payload = {"n": P.n, "count": len(exts), "extensions": [list(w) for w in exts]}
    _emit(args, payload, f"{len(exts)} extensions:\n" + "\n".join(_word(w) for w in exts))
    return 0


def cmd_matrix(args) -> int:
    P = _load_poset(args.poset)
    M = transition_matrix(P, args.mode)
    if args.weights:
        w = _weights(args, P.n)
        mnum = evaluate(M, w)
        rows = [[str(mnum[(i, j)]) for j in range(M.size)] for i in range(M.size)]
        payload = {"mode": args.mode, "basis": [list(b) for b in M.basis], "matrix": rows}
        text = "\n".join("  ".join(r) for r in rows)
        _emit(args, payload, text)
    elif args.json:
        print(matrix_to_json(M))
    else:
        print(matrix_to_text(M))
    return 0


def cmd_stationary(args) -> int:
    P = _load_poset(args.poset)
    w = _weights(args, P.n)
    exts = linear_extensions(P)
    vec = stationary_vector(P, w)
    agree = None
    if args.solve:
        solved = stationary_solve(evaluate(transition_matrix(P, "promotion"), w))
        agree = solved == vec
    payload = {
        "basis": [list(b) for b in exts],
        "stationary": [str(v) for v in vec],
        "symbolic": [str(stationary_weight(P, word)) for word in exts],
        "partition_function": str(partition_function(P, w, method="brute")),
    }
    if agree is not None:
        payload["solve_agrees"] = agree
    lines = [f"{_word(word)}  {v}" for word, v in zip(exts, vec)]
    if agree is not None:
        lines.append(f"exact solve agrees: {agree}")
    _emit(args, payload, "\n".join(lines))
    return 0 if agree in (None, True) else 1


def cmd_spectrum(args) -> int:
    P = _load_poset(args.poset)
    if args.probe:
        result = probe_linear_spectrum(P, seed=args.seed)
        if args.json:
            print(probe_to_json(result))
        elif result is None:
            print("nonlinear")
        else:
            for f, m in result.items:
                print(f"{f}  multiplicity {m}")
        return 0
    if not classify(P).is_rooted_forest:
        print("poset is not a rooted forest; use --probe for the sample-based search", file=sys.stderr)
        return 2
    pred = predicted_spectrum(P)
    rng = stable_rng("spectrum", args.seed, poset_key(P))
    ok = verify_spectrum(P, pred, random_weight_vector(P.n, rng))
    if args.json:
        print(spectrum_to_json(pred))
    else:
        for it in pred.items:
            flag = "" if it.multiplicity else "   (multiplicity 0)"
            print(f"{{{','.join(map(str, sorted(it.upper_set)))}}}  {it.form}  x{it.multiplicity}{flag}")
        print(f"verified against characteristic polynomial: {ok}")
    return 0 if ok else 1


def cmd_monoid(args) -> int:
    P = _load_poset(args.poset)
    M = promotion_monoid(P)
    g = green_classes(M)
    box = eggbox(M)
    payload = {
        "elements": len(M),
        "r_trivial": is_r_trivial(M),
        "aperiodic": is_aperiodic(M),
        "r_classes": len(set(g.r_of)),
        "l_classes": len(set(g.l_of)),
        "h_classes": len(set(g.h_of)),
        "d_classes": len(set(g.d_of)),
        "eggbox_shapes": [list(s) for s in box.shapes()],
    }
    text = (
        f"elements: {len(M)}\nR-trivial: {payload['r_trivial']}\naperiodic: {payload['aperiodic']}\n"
        + eggbox_ascii(box)
    )
    _emit(args, payload, text)
    if args.eggbox:
        with open(args.eggbox, "w") as fh:
            fh.write(eggbox_to_dot(box) + "\n")
    return 0


def cmd_mix(args) -> int:
    P = _load_poset(args.poset)
    w = _weights(args, P.n)
    if not sum(w.values) == 1:
        print("mix requires normalized weights", file=sys.stderr)
        return 2
    out = mixing_csv(P, w, args.kmax)
    if args.json:
        rows = [line.split(",") for line in out.strip().splitlines()[1:]]
        out = json.dumps(
            [{"k": int(k), "tv_exact": float(tv), "bound": float(b) if b else None} for k, tv, b in rows],
            indent=2,
        ) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if args.simulate:
        steps, seed = args.simulate
        walk = simulate_walk(P, w, steps, seed)
        tv = total_variation(walk.empirical, stationary_vector(P, w))
        print(f"simulated {steps} steps (seed {seed}): empirical TV {float(tv):.6f}")
    return 0


def cmd_subset(args) -> int:
    if args.subset_file:
        with open(args.subset_file) as fh:
            A = parse_subset(fh.read())
    elif args.targets:
        targets = [tuple(int(c) for c in t.strip()) for t in args.targets.split(";") if t.strip()]
        A = sorting_network_union(targets)
    else:
        print("need a subset file or --targets", file=sys.stderr)
        return 2
    G = subset_promotion_graph(A, args.mode)
    connected = is_strongly_connected(G)
    w = WeightVector.parse(args.weights, A.n) if args.weights else WeightVector.uniform(A.n)
    vec = subset_stationary(A, args.mode, w)
    ok = verify_master_equation(subset_transition_matrix(A, args.mode), vec, w)
    payload = {
        "size": len(A),
        "perms": [list(p) for p in A.perms],
        "strongly_connected": connected,
        "stationary": [str(v) for v in vec],
        "master_equation": ok,
    }
    text = (
        f"|A| = {len(A)}\nstrongly connected: {connected}\n"
        + "\n".join(f"{_word(p)}  {v}" for p, v in zip(A.perms, vec))
        + f"\nmaster equation holds: {ok}"
    )
    _emit(args, payload, text)
    return 0 if ok else 1


def cmd_graph(args) -> int:
    P = _load_poset(args.poset)
    G = build_promotion_graph(P, args.mode)
    dot = graph_to_dot(G, include_loops=not args.no_loops)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dot + "\n")
    else:
        print(dot)
    return 0


# ----------------------------------------------------------------------
# Verification sweep


def _sweep_poset(P: Poset, seed: int) -> list[str]:
    """All applicable theorem checks for one poset; returns failure tags."""
    failures = []
    rng = stable_rng("sweep", seed, poset_key(P))
    exts = linear_extensions(P)
    size = len(exts)

    G = build_promotion_graph(P, "promotion")
    # bijectivity of each seed operator
    targets_by_seed: dict[int, set[int]] = {j: set() for j in range(1, P.n + 1)}
    uniform_graph = build_promotion_graph(P, "uniform")
    for src, dst, j in uniform_graph.edges:
        targets_by_seed[j].add(dst)
    if any(len(t) != size for t in targets_by_seed.values()):
        failures.append("bijectivity")
    if not is_strongly_connected(G):
        failures.append("strong-connectivity")

    w = random_weight_vector(P.n, rng)
    Mu = transition_matrix(P, "uniform")
    Mp = transition_matrix(P, "promotion")
    uniform_vec = [Fraction(1, size)] * size
    if stationary_solve(evaluate(Mu, w)) != uniform_vec:
        failures.append("uniform-stationary")
    formula = stationary_vector(P, w)
    if stationary_solve(evaluate(Mp, w)) != formula:
        failures.append("product-formula")
    if not verify_master_equation(Mp, formula, w):
        failures.append("master-equation")

    if classify(P).is_rooted_forest:
        if partition_function(P, w, "formula") != partition_function(P, w, "brute"):
            failures.append("partition-function")
        pred = predicted_spectrum(P)
        if pred.total_multiplicity() != size or not verify_spectrum(P, pred, w):
            failures.append("spectrum")
        if not is_r_trivial(promotion_monoid(P)):
            failures.append("r-trivial")
    return failures


def cmd_sweep(args) -> int:
    family = {
        "all": all_posets,
        "rooted-forests": all_rooted_forests,
        "non-forests": all_non_forests,
    }[args.family]
    rows = []
    total = failures = 0
    for n in range(1, args.nmax + 1):
        for P in family(n):
            total += 1
            bad = _sweep_poset(P, args.seed)
            if bad:
                failures += 1
            rows.append({"poset": poset_key(P), "failures": bad})
    if args.json:
        print(json.dumps({"seed": args.seed, "version": __version__, "backend": BACKEND,
                          "posets": total, "failed": failures, "rows": rows}, indent=2))
    else:
        for row in rows:
            status = "ok" if not row["failures"] else "FAIL:" + ",".join(row["failures"])
            print(f"{row['poset']}  {status}")
        print(f"checked {total} posets (seed {args.seed}): {failures} failures")
    return 1 if failures else 0


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="promlex", description=__doc__)
    ap.add_argument("--version", action="version", version=f"promlex {__version__} ({BACKEND} kernels)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = add("extensions", cmd_extensions, help="list the linear extensions")
    p.add_argument("poset")

    p = add("matrix", cmd_matrix, help="transition matrix (symbolic, or exact at weights)")
    p.add_argument("poset")
    p.add_argument("--mode", choices=["uniform", "promotion"], default="promotion")
    p.add_argument("--weights")

    p = add("stationary", cmd_stationary, help="stationary distribution by product formula")
    p.add_argument("poset")
    p.add_argument("--weights")
    p.add_argument("--solve", action="store_true", help="cross-check with the exact linear solve")

    p = add("spectrum", cmd_spectrum, help="predicted spectrum (rooted forest) or --probe search")
    p.add_argument("poset")
    p.add_argument("--probe", action="store_true")
    p.add_argument("--seed", type=int, default=0)

    p = add("monoid", cmd_monoid, help="transition monoid, Green classes, egg-box")
    p.add_argument("poset")
    p.add_argument("--eggbox", metavar="OUT.dot", help="write the egg-box picture as DOT")

    p = add("mix", cmd_mix, help="exact TV distance vs the convergence bound (CSV)")
    p.add_argument("poset")
    p.add_argument("--weights")
    p.add_argument("--kmax", type=int, default=64)
    p.add_argument("--simulate", nargs=2, type=int, metavar=("STEPS", "SEED"))
    p.add_argument("--out")

    p = add("subset", cmd_subset, help="promotion chain on a set of permutations")
    p.add_argument("subset_file", nargs="?")
    p.add_argument("--targets", help="semicolon-separated targets, e.g. '24153;321'")
    p.add_argument("--mode", choices=["uniform", "promotion"], default="promotion")
    p.add_argument("--weights")

    p = add("graph", cmd_graph, help="promotion graph as DOT")
    p.add_argument("poset")
    p.add_argument("--mode", choices=["uniform", "promotion"], default="promotion")
    p.add_argument("--no-loops", action="store_true")
    p.add_argument("--out")

    p = add("sweep", cmd_sweep, help="run the verification battery over small posets")
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--family", choices=["all", "rooted-forests", "non-forests"], default="all")
    p.add_argument("--seed", type=int, default=0)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PromlexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
