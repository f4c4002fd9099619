"""Command line interface: ``arcalc <command> ...``.

Exit codes: 0 success, 1 a verification suite reported a failure,
2 invalid input, 3 undefined operation, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ar import ar_sequence, check_ar_sequence, orbit, tau_S
from .krull_schmidt import decompose_object, is_isomorphic
from .linalg import DEFAULT_P, FieldError
from .modules import Algebra, ModuleError
from .morphisms import (
    HObject,
    SObject,
    UndefinedOperation,
    cok,
    ker,
    mepi,
    mimo,
    notation,
    proj_inj_kind,
)
from .quiver import DEFAULT_CUTOFF, export_quiver, knit
from .serialize import DocumentError, dumps, read_object
from .verify import run_suite

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_UNDEFINED, EXIT_BUDGET = 0, 1, 2, 3, 4


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=argparse.SUPPRESS, help=f"field characteristic (default {DEFAULT_P})")
    common.add_argument("--algebra", choices=["nakayama", "graded-line"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized steps (default 0)")
    common.add_argument("--n", type=int, default=argparse.SUPPRESS, help="Loewy length for named objects")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="arcalc", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def obj_cmd(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("object", help="object document (.json) or a name such as k_in_Lambda")
        return p

    p = obj_cmd("translate", "apply the AR translation τ_S")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--steps", type=int, default=1)
    p = obj_cmd("orbit", "iterate τ_S until the object repeats")
    p.add_argument("--max-steps", type=int, default=12)
    for name in ("mimo", "mepi", "cok", "ker"):
        p = obj_cmd(name, f"apply {name.capitalize()}")
        p.add_argument("--json", action="store_true", help="print the result as an object document")
    p = sub.add_parser("iso", parents=[common], help="test two objects for isomorphism")
    p.add_argument("a")
    p.add_argument("b")
    obj_cmd("decompose", "decompose into indecomposables")
    obj_cmd("arseq", "almost split sequence ending at an object")
    p = sub.add_parser("quiver", parents=[common], help="knit the AR quiver")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--emit", choices=["dot", "json"], default="json")
    p.add_argument("-o", "--output")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=["paper", "random"], default="paper")
    p.add_argument("--instances", type=int, default=100)
    return parser


def _algebra(args) -> Algebra:
    return Algebra(getattr(args, "n", 3), getattr(args, "p", DEFAULT_P), getattr(args, "algebra", "nakayama"))


def _load(args, ref: str) -> HObject:
    return read_object(ref, _algebra(args))


def _translate(args, out) -> int:
    x = _load(args, args.object)
    if not isinstance(x, SObject):
        raise DocumentError("translate needs a monomorphism (an S-object)")
    seed = getattr(args, "seed", 0)
    dec = decompose_object(x, seed=seed, group=False)
    dropped = [s for s in dec.summands if proj_inj_kind(s) is not None]
    if dec.summands and len(dropped) == len(dec.summands):
        kind = "injective" if args.inverse else "projective"
        raise UndefinedOperation(f"{kind}: translation undefined")
    for s in dropped:
        print(f"dropped {'injective' if args.inverse else 'projective'} summand {notation(s)}", file=out)
    if dropped:
        rest = [s for s in dec.summands if proj_inj_kind(s) is None]
        from .morphisms import sum_objects

        x = sum_objects(*rest)
    for _ in range(args.steps):
        x = tau_S(x, inverse=args.inverse)
        print(notation(x), file=out)
    return EXIT_OK


def _orbit(args, out) -> int:
    x = _load(args, args.object)
    o = orbit(x, max_steps=args.max_steps, seed=getattr(args, "seed", 0))
    for y in o.objects:
        print(notation(y), file=out)
    if o.period is None:
        print(f"no period within {args.max_steps} steps", file=out)
    elif x.alg.graded:
        print(f"period {o.period} shift {o.shift}", file=out)
    else:
        print(f"period {o.period}", file=out)
    return EXIT_OK


def _functor(args, out) -> int:
    x = _load(args, args.object)
    fn = {"mimo": mimo, "mepi": mepi, "cok": cok, "ker": ker}[args.command]
    y = fn(x)[0]
    print(dumps(y), end="", file=out) if args.json else print(notation(y), file=out)
    return EXIT_OK


def _iso(args, out) -> int:
    a, b = _load(args, args.a), _load(args, args.b)
    ok = is_isomorphic(a, b, seed=getattr(args, "seed", 0))[0]
    print("isomorphic" if ok else "not isomorphic", file=out)
    return EXIT_OK


def _decompose(args, out) -> int:
    x = _load(args, args.object)
    for y, m in decompose_object(x, seed=getattr(args, "seed", 0)).groups:
        tag = proj_inj_kind(y)
        print(f"{m} x {notation(y)}" + (f"  [projective-injective {tag}]" if tag else ""), file=out)
    return EXIT_OK


def _arseq(args, out) -> int:
    c = _load(args, args.object)
    seed = getattr(args, "seed", 0)
    seq = ar_sequence(c)
    print(f"left   {notation(seq.left)}", file=out)
    print(f"middle {notation(seq.middle)}", file=out)
    print(f"right  {notation(seq.right)}", file=out)
    print(f"method {seq.method}", file=out)
    parts = decompose_object(seq.middle, seed=seed).groups
    print("middle summands " + " + ".join(f"{m} x {notation(y)}" for y, m in parts), file=out)
    for k, v in check_ar_sequence(seq, seed=seed).items():
        print(f"check {k}: {'ok' if v else 'FAILED'}", file=out)
    return EXIT_OK


def _quiver(args, out) -> int:
    alg = _algebra(args)
    r = knit(alg, cutoff=args.cutoff, seed=getattr(args, "seed", 0))
    text = export_quiver(r.quiver, args.emit)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    if r.budget_exceeded:
        print(f"budget exceeded: {len(r.quiver.vertices)} vertices > cutoff {args.cutoff}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def _verify(args, out) -> int:
    results = run_suite(args.suite, seed=getattr(args, "seed", 0), instances=args.instances, stream=out, timing=False)
    for r in results:
        print(f"{r.name}: {r.seconds:.2f}s", file=sys.stderr)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


COMMANDS = {
    "translate": _translate,
    "orbit": _orbit,
    "mimo": _functor,
    "mepi": _functor,
    "cok": _functor,
    "ker": _functor,
    "iso": _iso,
    "decompose": _decompose,
    "arseq": _arseq,
    "quiver": _quiver,
    "verify": _verify,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except UndefinedOperation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except (DocumentError, ModuleError, FieldError, ValueError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
