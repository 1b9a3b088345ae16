"""Command-line interface.

Exit codes: 0 success, 1 computational failure, 2 usage or file errors.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from typing import Optional, Sequence, Tuple

from . import io
from .census import census
from .errors import (
    ArgumentError,
    DimensionError,
    NotGenericError,
    ParseError,
    ValidationError,
)
from .generic import Outcome, classify, contract, decompose_generic
from .rank_tables import hurwitz_radon, typical_ranks
from .tall import TallShape, tall_decompose
from .tensor import permute_decomposition, permute_modes, random_gaussian, relative_residual

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _is_generic(shape) -> bool:
    n, p, m = shape
    return 3 <= m <= n and p == (m - 1) * n


def _is_tall(shape) -> bool:
    n, u, m = shape
    try:
        TallShape(m, n, u)
    except DimensionError:
        return False
    return True


def find_orientation(shape: Sequence[int], mode: str, orientation: str = "auto") -> Tuple[Tuple[int, int, int], str]:
    """Mode permutation bringing ``shape`` to ``n x p x m`` and the resolved mode.

    ``orientation`` is ``"auto"`` or an explicit permutation such as ``"2,0,1"``.
    """
    if orientation != "auto":
        try:
            perm = tuple(int(x) for x in orientation.split(","))
        except ValueError as exc:
            raise UsageError(f"bad --orientation {orientation!r}") from exc
        if sorted(perm) != [0, 1, 2]:
            raise UsageError(f"bad --orientation {orientation!r}")
        candidates = [perm]
    else:
        candidates = list(itertools.permutations(range(3)))
    for perm in candidates:
        s = tuple(shape[a] for a in perm)
        if mode in ("generic", "auto") and _is_generic(s):
            return perm, "generic"
        if mode in ("tall", "auto") and _is_tall(s):
            return perm, "tall"
    raise UsageError(f"shape {tuple(shape)} has no orientation suitable for mode {mode!r}")


def _inverse_perm(perm):
    inv = [0, 0, 0]
    for a, b in enumerate(perm):
        inv[b] = a
    return tuple(inv)


def cmd_rho(args) -> int:
    print(hurwitz_radon(args.n))
    return EXIT_OK


def cmd_typical_ranks(args) -> int:
    ans = typical_ranks(args.m1, args.m2, args.m3)
    print(f"{ans}  [{ans.citation}]")
    return EXIT_OK


def cmd_gen(args) -> int:
    T = random_gaussian(tuple(args.dims), args.seed)
    io.save_tensor(args.output, T)
    print(f"wrote {args.output} with shape {T.shape}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    T = io.load_tensor(args.input)
    perm, mode = find_orientation(T.shape, args.mode, args.orientation)
    X = permute_modes(T, perm)
    if mode == "tall":
        try:
            dec = tall_decompose(X)
        except NotGenericError as exc:
            print(f"NotGeneric: {exc}")
            return EXIT_FAIL
    else:
        result = decompose_generic(X, budget=args.budget, seed=args.seed, tol=args.tol)
        if result.outcome is not Outcome.RANK_P:
            print(f"{result.outcome.value}: {result.message}")
            if result.classification is not None:
                print(result.classification.describe())
            return EXIT_FAIL
        dec = result.decomposition
    dec = permute_decomposition(dec, _inverse_perm(perm))
    res = relative_residual(T, dec)
    io.save_decomposition(args.output, dec)
    print(f"mode={mode} rank={dec.rank} residual={res:.3e}")
    if res > args.tol:
        print(f"FAIL: residual exceeds {args.tol:.1e}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_classify(args) -> int:
    T = io.load_tensor(args.input)
    perm, _ = find_orientation(T.shape, "generic", args.orientation)
    try:
        Y = contract(permute_modes(T, perm))
    except NotGenericError as exc:
        print(f"NotGeneric: {exc}")
        return EXIT_FAIL
    cls = classify(Y, args.directions, args.seed)
    print(f"{cls.verdict.value}: {cls.describe()}")
    return EXIT_OK


def cmd_census(args) -> int:
    report = census(args.m, args.n, args.trials, args.seed, budget=args.budget, tol=args.tol, workers=args.workers)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    print(report.summary())
    return EXIT_OK


def cmd_verify(args) -> int:
    T = io.load_tensor(args.tensor)
    D = io.load_decomposition(args.decomposition)
    res = relative_residual(T, D)
    ok = res <= args.tol
    print(f"residual={res:.3e} tol={args.tol:.1e} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="typical-rank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rho", help="Hurwitz-Radon number")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("typical-ranks", help="typical ranks of m1 x m2 x m3 real tensors")
    for name in ("m1", "m2", "m3"):
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_typical_ranks)

    p = sub.add_parser("gen", help="write a seeded Gaussian tensor")
    p.add_argument("--dims", type=int, nargs=3, required=True, metavar=("D1", "D2", "D3"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", help="explicit minimal-rank decomposition")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=("tall", "generic", "auto"), default="auto")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--orientation", default="auto")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classify", help="sign behaviour of det M(a, Y)")
    p.add_argument("--input", required=True)
    p.add_argument("--directions", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--orientation", default="auto")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="Monte Carlo rank census")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="check a decomposition against a tensor")
    p.add_argument("--tensor", required=True)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ArgumentError, DimensionError, ParseError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
