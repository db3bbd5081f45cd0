"""Command-line front end: one subcommand per module area.

Exit codes: 0 success, 1 domain error, 2 usage error.  Output is
line-oriented UTF-8; --json switches to machine-readable records where it
applies.  `glue ... --emit-csv` writes delimited samples and a rendered
PNG next to them.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import acceptance, glue as glue_mod, logic, omlattice, subparticle, words
from .config import load_config
from .formula import parse_formula
from .glue import PiValue, StepSpec, build_glue
from .hyper import HyperReal, approximate_shadow, as_hyper, format_series, parse_series


class CliError(Exception):
    pass


def _frac(text: str) -> Fraction:
    return Fraction(text)


def _load_gamma(path: str):
    with open(path, encoding="utf-8") as fh:
        return [parse_formula(line) for line in fh if line.strip()]


def _load_glue(path: str):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    spec = StepSpec(
        partition=tuple(Fraction(p) for p in data["partition"]),
        values=tuple(Fraction(v) for v in data["values"]),
    )
    delta = data.get("delta", "e")
    if isinstance(delta, str) and delta.strip() in ("e", "eps"):
        return build_glue(spec, HyperReal.eps())
    return build_glue(spec, Fraction(delta))


def _load_entity(path: str):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    mode = data.get("mode", "toy")
    f = data.get("f", 2)
    dims = data.get("dims", 6)
    naming = data.get("naming", {})
    parts = []
    for k, ch in enumerate(data.get("characteristics", [])):
        if mode == "toy":
            nm = tuple(naming.get("primes", [])) if k == 0 else ()
            mag = ch["lambda"]
        else:
            nm = tuple(naming.get("block", (1, 1))) if k == 0 else (1, 0)
            mag = Fraction(str(ch["r"]))
        parts.append(
            subparticle.form_intermediate(
                ch["i"], mag, nm, sign=ch.get("sign", 1), f=f, dims=dims, mode=mode
            )
        )
    if not parts:
        raise CliError("entity file declares no characteristics")
    return subparticle.combine(parts), f


def _fmt_value(v) -> str:
    if isinstance(v, HyperReal):
        return format_series(v)
    if isinstance(v, PiValue):
        if v.is_zero():
            return "0"
        if v.pi_power == 0:
            return format_series(v.series)
        return f"({format_series(v.series)}) * pi^{v.pi_power}"
    return str(v)


# -- subcommand handlers -----------------------------------------------------


def cmd_encode(args) -> int:
    cfg = load_config(args.config)
    alphabet = (
        words.Alphabet.from_file(args.alphabet or cfg.alphabet_path)
        if (args.alphabet or cfg.alphabet_path)
        else words.default_alphabet()
    )
    seg = words.make_frozen_segment(args.word, args.index, alphabet, cfg.tail_template)
    print(words.segment_to_json(seg, alphabet))
    return 0


def cmd_deduce(args) -> int:
    gamma = _load_gamma(args.gamma)
    query = parse_formula(args.query)
    verdict = logic.member(query, gamma)
    if args.json:
        print(json.dumps({"query": str(query), "member": verdict}))
    else:
        print("member" if verdict else "not-member")
    return 0


def cmd_characterize(args) -> int:
    w = parse_formula(args.ultraword)
    ch = logic.characterize(w)
    d = sorted(str(a) for a in ch.d_prime)
    q = sorted(str(f) for f in ch.q_set)
    if args.json:
        print(json.dumps({"d_prime": d, "q_set": q}))
    else:
        print("d': " + ", ".join(d))
        for f in q:
            print("Q: " + f)
    return 0


def cmd_omcheck(args) -> int:
    if args.lattice in omlattice.BUILTINS:
        lat = omlattice.BUILTINS[args.lattice]()
    else:
        with open(args.lattice, encoding="utf-8") as fh:
            lat = omlattice.lattice_from_json(fh.read())
    ok, why = omlattice.validate_orthomodular(lat)
    if not ok:
        print(f"lattice invalid: {why}", file=sys.stderr)
        return 1
    schemas = [1, 2, 3, 4] if args.schema == "all" else [int(args.schema)]
    failed = False
    for s in schemas:
        valid, env = omlattice.axiom_validity(lat, s)
        if args.json:
            print(json.dumps({"schema": s, "valid": valid, "witness": env}))
        else:
            print(f"schema {s}: {'valid' if valid else f'fails at {env}'}")
        failed = failed or not valid
    return 1 if failed else 0


def cmd_hyper(args) -> int:
    if args.hyper_op == "approx":
        if args.r is None or args.m is None:
            raise CliError("hyper approx needs --r and --m")
        return cmd_approx(args)
    if args.series is None:
        raise CliError(f"hyper {args.hyper_op} needs --series")
    x = parse_series(args.series)
    if args.hyper_op == "eval":
        print(format_series(x))
    elif args.hyper_op == "st":
        print(x.st())
    elif args.hyper_op == "classify":
        print(x.classify())
    return 0


def cmd_approx(args) -> int:
    res = approximate_shadow(_frac(args.r), args.m)
    if getattr(args, "json", False):
        print(
            json.dumps(
                {"n": res.n, "c": res.c, "f": res.f, "gap": str(res.gap), "ok": res.ok}
            )
        )
    else:
        print(f"{res.f}/{args.m}, gap {res.gap}")
    return 0


def _emit_csv(g, path: str, samples: int = 400) -> None:
    import csv

    lo, hi = g.spec.partition[0], g.spec.partition[-1]
    std = g if not g.infinitesimal_mode else build_glue(g.spec, _small_delta(g.spec))
    xs, ys = [], []
    for k in range(samples + 1):
        x = lo + Fraction(k, samples) * (hi - lo)
        xs.append(float(x))
        ys.append(float(std.eval(x)))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        wr = csv.writer(fh)
        wr.writerow(["x", "G"])
        for x, y in zip(xs, ys):
            wr.writerow([x, y])
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(xs, ys, lw=1.5)
    for a in std.spec.interior:
        ax.axvline(float(a), color="gray", ls=":", lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("G(x)")
    ax.set_title("glued step function")
    png = path.rsplit(".", 1)[0] + ".png"
    fig.savefig(png, dpi=120, bbox_inches="tight")
    plt.close(fig)


def _small_delta(spec: StepSpec) -> Fraction:
    gap = min(b - a for a, b in zip(spec.partition, spec.partition[1:]))
    return gap / 20


def cmd_glue(args) -> int:
    g = _load_glue(args.spec)
    if args.emit_csv:
        _emit_csv(g, args.emit_csv)
    if args.glue_op == "eval":
        x = parse_series(args.x)
        print(_fmt_value(g.eval(x)))
    elif args.glue_op == "deriv":
        x = parse_series(args.x)
        print(_fmt_value(g.derivative(args.m, x)))
    elif args.glue_op in ("telescope", "resolve"):
        p = glue_mod.special_partition(
            g.spec.partition[0], g.spec.partition[-1], _frac(args.dt)
        )
        sel = glue_mod.avoiding_refinement(p, avoid=set(g.spec.interior))
        if args.glue_op == "telescope":
            incs, total, max_inc = glue_mod.telescope(lambda x: g.eval(x), sel)
            print(f"total {total}, max increment {max_inc}")
        else:
            for (a, b), inc in glue_mod.resolving_process(g.spec, sel):
                print(f"[{a}, {b}] -> {inc}")
    return 0


def _entity_record(entity) -> dict:
    rec = {
        "a2": _fmt_value(entity.a2.value) if hasattr(entity.a2, "value") else entity.a2,
        "coords": {k: _fmt_value(v) for k, v in entity.coords},
    }
    if entity.a1.mode == "toy":
        rec["identifier"] = entity.a1.toy_value()
    else:
        rec["identifier"] = {
            "char_factors": [
                [i, _fmt_value(c.value if hasattr(c, "value") else c)]
                for i, c in entity.a1.char_factors
            ],
            "naming_blocks": [
                [s, _fmt_value(c.value if hasattr(c, "value") else c)]
                for s, c in entity.a1.naming_blocks
            ],
        }
    return rec


def cmd_subp(args) -> int:
    if args.subp_op == "build":
        entity, f = _load_entity(args.entity[0])
        print(json.dumps(_entity_record(entity)))
    elif args.subp_op == "combine":
        parts = [_load_entity(path)[0] for path in args.entity]
        print(json.dumps(_entity_record(subparticle.combine(parts))))
    elif args.subp_op == "project":
        entity, f = _load_entity(args.entity[0])
        proj = subparticle.project_standard(entity)
        print(
            json.dumps(
                {
                    "coords": {k: str(v) for k, v in proj.coords},
                    "zeroed": list(proj.zeroed),
                }
            )
        )
    elif args.subp_op == "decode":
        out = subparticle.decode(int(args.id), f=args.f)
        print(json.dumps(out))
    elif args.subp_op == "ke":
        ke = subparticle.ultrafast_ke(parse_series(args.m_series), parse_series(args.v))
        print(f"{format_series(ke)} ({ke.classify()})")
    elif args.subp_op == "coin":
        return cmd_coin(args)
    return 0


def cmd_coin(args) -> int:
    seq = subparticle.coin_sequence(_frac(args.x), args.count)
    print("".join(seq))
    return 0


def cmd_suite(args) -> int:
    results = acceptance.run_all(seed=args.seed)
    width = max(len(r.title) for r in results)
    failed = False
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.number:>2}  {r.title:<{width}}  {status}  {r.detail}")
        failed = failed or not r.passed
    return 1 if failed else 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ultralogic-lab")
    p.add_argument("--config", help="config file path (or set ULTRALOGIC_CONFIG)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("encode", help="build a frozen segment from a body sentence")
    s.add_argument("--word", required=True)
    s.add_argument("--index", type=int, required=True)
    s.add_argument("--alphabet")
    s.set_defaults(fn=cmd_encode)

    s = sub.add_parser("deduce", help="decide membership in the consequence set")
    s.add_argument("--gamma", required=True, help="file with one formula per line")
    s.add_argument("--query", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_deduce)

    s = sub.add_parser("characterize", help="split an ultraword's closure into Q and d'")
    s.add_argument("--ultraword", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_characterize)

    s = sub.add_parser("omcheck", help="verify axiom schemata on an orthomodular lattice")
    s.add_argument("--lattice", required=True, help="builtin name or JSON file")
    s.add_argument("--schema", default="all", choices=["all", "1", "2", "3", "4"])
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_omcheck)

    s = sub.add_parser("hyper", help="series arithmetic and classification")
    s.add_argument("hyper_op", choices=["eval", "st", "classify", "approx"])
    s.add_argument("--series")
    s.add_argument("--r")
    s.add_argument("--m", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_hyper)

    s = sub.add_parser("approx", help="cell approximation f = m*n + c")
    s.add_argument("--r", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_approx)

    s = sub.add_parser("glue", help="evaluate glued step functions")
    s.add_argument("glue_op", choices=["eval", "deriv", "telescope", "resolve"])
    s.add_argument("--spec", required=True, help="JSON {partition, values, delta}")
    s.add_argument("--x", help="series text, e.g. '1 + e'")
    s.add_argument("--m", type=int, default=1, help="derivative order")
    s.add_argument("--dt", default="1/10", help="special-partition mesh")
    s.add_argument("--emit-csv", dest="emit_csv", help="write samples (and a PNG) here")
    s.set_defaults(fn=cmd_glue)

    s = sub.add_parser("subp", help="subparticle algebra")
    s.add_argument("subp_op", choices=["build", "combine", "project", "decode", "ke", "coin"])
    s.add_argument("--entity", action="append", help="entity JSON file (repeatable)")
    s.add_argument("--id", help="toy identifier to decode")
    s.add_argument("--f", type=int, default=2)
    s.add_argument("--m-series", dest="m_series", help="mass series")
    s.add_argument("--v", help="speed series")
    s.add_argument("--x", help="coin seed in (0,1)")
    s.add_argument("--count", type=int, default=16)
    s.set_defaults(fn=cmd_subp)

    s = sub.add_parser("coin", help="doubling-map coin flips")
    s.add_argument("--x", required=True)
    s.add_argument("--count", type=int, default=16)
    s.set_defaults(fn=cmd_coin)

    s = sub.add_parser("suite", help="run the acceptance checks")
    s.add_argument("--all", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_suite)

    return p


DOMAIN_ERRORS = (
    CliError,
    ValueError,
    KeyError,
    OSError,
    json.JSONDecodeError,
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        # package domain exceptions all derive from module-level Exception types
        if type(exc).__module__.startswith("ultralogic"):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        raise


if __name__ == "__main__":
    sys.exit(main())
