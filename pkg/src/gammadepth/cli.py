"""Command-line front end.

    gammadepth run FILE [--json PATH] [--seed S] [--trials T] [--cap C]
    gammadepth corpus-verify [--count N] [--n NV] [--modules M] ...
    gammadepth family KIND [--n N] [--r R] [--count C] [--seed S]

Exit codes: 0 success or AGREE, 1 mathematical DISAGREE, 2 usage error.
The environment variable GAMMA_DEPTH_PRIME overrides the field prime.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .ring import (
    DEFAULT_PRIME,
    LinearForm,
    PolynomialSyntaxError,
    Ring,
    format_polynomial,
    parse_polynomial,
)
from .modules import PresentedModule, minimal_generators, submodule_from_polys
from .resolution import betti_table, graded_poly_str, poly_str, resolve
from .gamma import (
    alpha,
    beta1,
    cd_invariant,
    delta_invariant,
    gamma_depth,
    gamma_m_dims,
    is_componentwise_linear,
    is_gamma_regular,
    is_gamma_sequence,
    is_hat_gamma_regular,
    socle_dims,
    splitting_audit,
    verify_main_theorem,
)
from .twovar import (
    beta_formula_check,
    build_cwl_ideal,
    corollary_dims_check,
    decompose_cwl_ideal,
)
from . import families
from .instance import InstanceSyntaxError, parse_instance, serialize_instance

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2


def _env_prime():
    raw = os.environ.get("GAMMA_DEPTH_PRIME")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise SystemExit("GAMMA_DEPTH_PRIME must be an integer")


def _as_module(inst, name):
    """Named object as a module: ideals become cyclic quotients R/I."""
    if name in inst.modules:
        return inst.modules[name]
    return PresentedModule.quotient_by_ideal(inst.ideals[name])


def _parse_form(ring, text):
    f = parse_polynomial(ring, text)
    return LinearForm.from_polynomial(f)


def _keyvals(args):
    out = {}
    for a in args:
        if "=" in a:
            k, _, v = a.partition("=")
            out[k] = v
    return out


def _dims_json(dims):
    return {str(j): d for j, d in sorted(dims.items())}


def _ideal_source(inst, name):
    if name not in inst.ideals:
        raise CommandUsage(f"{name} is not an ideal")
    return inst.ideals[name]


class CommandUsage(Exception):
    pass


def run_command(inst, command, args, options):
    """Execute one instance-file command.  Returns (exit code, lines, data)."""
    seed = options.get("seed", 0)
    trials = options.get("trials", 20)
    cap = options.get("cap")
    kv = _keyvals(args)
    name = args[0] if args else None
    lines = []
    data = {"command": command, "args": args}

    if command == "betti":
        bt = betti_table(_as_module(inst, name))
        lines.append(bt.format())
        lines.append("poincare: " + poly_str(bt.poincare()))
        lines.append("graded: " + graded_poly_str(bt.graded_poincare()))
        data["betti"] = {f"{i},{j}": b for (i, j), b in sorted(bt.entries.items())}
        data["poincare"] = bt.poincare()
        return EXIT_OK, lines, data

    if command == "resolve":
        res = resolve(_as_module(inst, name))
        for i, F in enumerate(res.frees):
            lines.append(f"F{i}: twists {list(F.twists)}")
        data["twists"] = [list(F.twists) for F in res.frees]
        return EXIT_OK, lines, data

    if command == "socle":
        dims = socle_dims(_as_module(inst, name))
        lines.append(f"socle dims: {dims or 0}")
        data["socle"] = _dims_json(dims)
        return EXIT_OK, lines, data

    if command == "hilbert":
        if len(args) != 3:
            raise CommandUsage("usage: hilbert <name> <lo> <hi>")
        lo, hi = int(args[1]), int(args[2])
        dims = _as_module(inst, name).hilbert_function(lo, hi)
        lines.append("hilbert: " + " ".join(f"{j}:{d}" for j, d in sorted(dims.items())))
        data["hilbert"] = _dims_json(dims)
        return EXIT_OK, lines, data

    if command == "gamma-test":
        if "z" not in kv:
            raise CommandUsage("gamma-test requires z=<linear form>")
        mod = _as_module(inst, name)
        z = _parse_form(inst.ring, kv["z"])
        cert = is_gamma_regular(mod, z)
        lines.append(f"gamma-regular: {cert.regular} "
                     f"(beta1={cert.beta1} alpha={cert.alpha} "
                     f"beta1_bar={cert.beta1_bar})")
        data.update(regular=cert.regular, beta1=cert.beta1,
                    alpha=str(cert.alpha), beta1_bar=cert.beta1_bar,
                    m_full=cert.m_full)
        return EXIT_OK, lines, data

    if command == "gamma-seq":
        if "z" not in kv:
            raise CommandUsage("gamma-seq requires z=<form>,<form>,...")
        mod = _as_module(inst, name)
        forms = [_parse_form(inst.ring, part) for part in kv["z"].split(",")]
        ok, alphas, _ = is_gamma_sequence(mod, forms)
        lines.append(f"gamma-sequence: {ok} alphas={alphas}")
        data.update(sequence_ok=ok, alphas=[str(a) for a in alphas])
        return EXIT_OK, lines, data

    if command == "gamma-depth":
        w = gamma_depth(_as_module(inst, name), seed=seed, trials=trials)
        seq = [format_polynomial(z.polynomial()) for z in w.sequence]
        lines.append(f"gamma-depth: {w.depth} (of n={inst.ring.n})")
        lines.append("witness: " + ("; ".join(seq) or "(empty)"))
        data.update(depth=w.depth, n=inst.ring.n, witness=seq,
                    alphas=[str(a) for a in w.alphas],
                    trials_used=w.trials_used)
        return EXIT_OK, lines, data

    if command == "hat-gamma-test":
        if "z" not in kv:
            raise CommandUsage("hat-gamma-test requires z=<linear form>")
        mod = _as_module(inst, name)
        z = _parse_form(inst.ring, kv["z"])
        verdict = is_hat_gamma_regular(mod, z)
        lines.append(f"hat-gamma-regular: {verdict}")
        data["hat_regular"] = verdict
        return EXIT_OK, lines, data

    if command == "cwl":
        obj = inst.ideals.get(name) or inst.modules[name]
        verdict = is_componentwise_linear(obj)
        lines.append(f"componentwise linear: {verdict}")
        data["cwl"] = verdict
        return EXIT_OK, lines, data

    if command == "verify-main":
        rep = verify_main_theorem(_as_module(inst, name), seed=seed,
                                  trials=trials)
        verdict = "AGREE" if rep.agree else "DISAGREE"
        lines.append(f"{verdict}: cwl(Syz1)={rep.cwl_syz} "
                     f"gamma-depth={rep.depth} n={rep.nvars}")
        data.update(verdict=verdict, cwl=rep.cwl_syz, depth=rep.depth,
                    n=rep.nvars, retried=rep.retried)
        if not rep.agree:
            data["instance"] = serialize_instance(inst)
        return EXIT_OK if rep.agree else EXIT_DISAGREE, lines, data

    if command == "splitting-audit":
        if "z" not in kv:
            raise CommandUsage("splitting-audit requires z=<linear form>")
        mod = _as_module(inst, name)
        z = _parse_form(inst.ring, kv["z"])
        rep = splitting_audit(mod, z)
        verdict = "AGREE" if rep.ok else "DISAGREE"
        lines.append(f"{verdict}: splitting identities "
                     f"({len(rep.failures)} failures)")
        for f in rep.failures:
            lines.append(f"  failed: {f}")
        data.update(verdict=verdict, failures=[str(f) for f in rep.failures])
        if not rep.ok:
            data["instance"] = serialize_instance(inst)
        return EXIT_OK if rep.ok else EXIT_DISAGREE, lines, data

    if command == "delta":
        value = delta_invariant(_as_module(inst, name), seed=seed,
                                trials=trials, cap=cap)
        lines.append(f"delta: {value}")
        data["delta"] = value
        return EXIT_OK, lines, data

    if command == "cd":
        value = cd_invariant(_as_module(inst, name))
        lines.append(f"cd: {value}")
        data["cd"] = value
        return EXIT_OK, lines, data

    if command == "twovar-check":
        rep = beta_formula_check(_ideal_source(inst, name))
        verdict = "AGREE" if rep.agree else "DISAGREE"
        lines.append(f"{verdict}: pd={rep.pd} beta1={rep.beta1} "
                     f"formula={rep.formula_holds} cwl={rep.cwl_syz}")
        data.update(verdict=verdict, pd=rep.pd, beta1=rep.beta1,
                    formula=rep.formula_holds, cwl=rep.cwl_syz)
        if not rep.agree:
            data["instance"] = serialize_instance(inst)
        return EXIT_OK if rep.agree else EXIT_DISAGREE, lines, data

    if command == "twovar-decompose":
        try:
            dec = decompose_cwl_ideal(_ideal_source(inst, name))
        except ValueError as exc:
            lines.append(f"no decomposition: {exc}")
            data["decomposition"] = None
            return EXIT_OK, lines, data
        factors = [format_polynomial(f) for f in dec.factors]
        lines.append(f"degrees: {dec.degrees}")
        lines.append(f"factors: {factors}")
        data.update(degrees=dec.degrees, factors=factors,
                    factor_degrees=dec.factor_degrees)
        return EXIT_OK, lines, data

    if command == "twovar-build":
        if "d" not in kv or "f" not in kv:
            raise CommandUsage("twovar-build requires d=<ints> f=<polys ; separated>")
        degrees = [int(t) for t in kv["d"].split(",")]
        factors = [parse_polynomial(inst.ring, t) for t in kv["f"].split(";")]
        ideal = build_cwl_ideal(inst.ring, degrees, factors)
        gens = [format_polynomial(g.component(0))
                for g in minimal_generators(ideal)]
        lines.append("ideal: " + ", ".join(gens))
        dec = decompose_cwl_ideal(ideal)
        ok, got, expected = corollary_dims_check(ideal, dec)
        verdict = "AGREE" if ok else "DISAGREE"
        lines.append(f"{verdict}: roundtrip degrees={dec.degrees} "
                     f"dims got={got} expected={expected}")
        data.update(verdict=verdict, generators=gens, degrees=dec.degrees)
        return EXIT_OK if ok else EXIT_DISAGREE, lines, data

    if command == "corpus-verify":
        count = int(kv.get("count", 20))
        nvars = int(kv.get("n", 2))
        cseed = int(kv.get("seed", seed))
        return _corpus_verify(count, nvars, 0, cseed, trials,
                              inst.ring.p)

    raise CommandUsage(f"unknown command: {command}")


def _corpus_verify(count, nvars, module_count, seed, trials, p):
    lines = []
    data = {"command": "corpus-verify", "count": count, "n": nvars,
            "modules": module_count, "seed": seed}
    agree = 0
    disagreements = []
    instances = [("ideal", ideal) for ideal in
                 families.corpus("random-ideal", count, nvars, seed, p=p)]
    instances += [("module", mod) for mod in
                  families.corpus("random-module", module_count, nvars,
                                  seed ^ 0x5F5E1, p=p)]
    for index, (kind, obj) in enumerate(instances):
        mod = (PresentedModule.quotient_by_ideal(obj) if kind == "ideal"
               else obj)
        rep = verify_main_theorem(mod, seed=seed ^ index, trials=trials)
        if rep.agree:
            agree += 1
        else:
            disagreements.append((index, kind))
            lines.append(f"DISAGREE at instance {index} ({kind}): "
                         f"cwl={rep.cwl_syz} depth={rep.depth}")
    total = len(instances)
    verdict = "AGREE" if not disagreements else "DISAGREE"
    lines.append(f"{verdict}: {agree}/{total} instances agree")
    data.update(verdict=verdict, agree=agree, total=total,
                disagreements=[list(d) for d in disagreements])
    return (EXIT_OK if not disagreements else EXIT_DISAGREE), lines, data


def _cmd_run(ns):
    prime = _env_prime()
    try:
        with open(ns.file) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        inst = parse_instance(text, prime_override=prime)
    except InstanceSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    options = {"seed": ns.seed, "trials": ns.trials, "cap": ns.cap}
    reports = []
    status = EXIT_OK
    for command, args in inst.commands:
        try:
            code, lines, data = run_command(inst, command, args, options)
        except (CommandUsage, PolynomialSyntaxError, KeyError, ValueError) as exc:
            print(f"error in '{command}': {exc}", file=sys.stderr)
            return EXIT_USAGE
        for line in lines:
            print(line)
        reports.append({"exit": code, **data})
        status = max(status, code)
    if ns.json:
        with open(ns.json, "w") as fh:
            json.dump({"reports": reports, "exit": status}, fh,
                      sort_keys=True, indent=2)
            fh.write("\n")
    return status


def _cmd_corpus(ns):
    prime = _env_prime() or DEFAULT_PRIME
    code, lines, data = _corpus_verify(ns.count, ns.n, ns.modules, ns.seed,
                                       ns.trials, prime)
    for line in lines:
        print(line)
    if ns.json:
        with open(ns.json, "w") as fh:
            json.dump({"reports": [data], "exit": code}, fh,
                      sort_keys=True, indent=2)
            fh.write("\n")
    return code


def _cmd_family(ns):
    prime = _env_prime() or DEFAULT_PRIME
    from .instance import InstanceFile
    if ns.kind == "power-of-m":
        mod = families.power_of_m(ns.n, ns.r, p=prime)
        inst = InstanceFile(mod.ring)
        inst.ideals["I"] = mod.relations
    elif ns.kind == "rm-ord-example":
        mod, ideal = families.rm_ord_example(p=prime)
        inst = InstanceFile(mod.ring)
        inst.ideals["I"] = ideal
    elif ns.kind == "random-ideal":
        rng = random.Random(ns.seed)
        ideal = families.random_ideal(ns.n, rng, p=prime)
        inst = InstanceFile(ideal.ring)
        inst.ideals["I"] = ideal
    elif ns.kind == "random-module":
        rng = random.Random(ns.seed)
        mod = families.random_module(ns.n, rng, p=prime)
        inst = InstanceFile(mod.ring)
        inst.modules["M"] = mod
    else:
        print(f"error: unknown family kind: {ns.kind}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(serialize_instance(inst))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gammadepth",
        description="Graded module calculus over GF(p)[x1..xn]")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    run = sub.add_parser("run", help="execute an instance file")
    run.add_argument("file")
    run.add_argument("--json", metavar="PATH")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--trials", type=int, default=20)
    run.add_argument("--cap", type=int, default=None)
    run.set_defaults(func=_cmd_run)

    corpus = sub.add_parser("corpus-verify",
                            help="random corpus check of the main equivalence")
    corpus.add_argument("--count", type=int, default=20)
    corpus.add_argument("--n", type=int, default=2)
    corpus.add_argument("--modules", type=int, default=0,
                        help="additional non-cyclic module instances")
    corpus.add_argument("--seed", type=int, default=0)
    corpus.add_argument("--trials", type=int, default=20)
    corpus.add_argument("--json", metavar="PATH")
    corpus.set_defaults(func=_cmd_corpus)

    family = sub.add_parser("family", help="emit a family instance file")
    family.add_argument("kind", choices=["power-of-m", "rm-ord-example",
                                         "random-ideal", "random-module"])
    family.add_argument("--n", type=int, default=2)
    family.add_argument("--r", type=int, default=1)
    family.add_argument("--seed", type=int, default=0)
    family.set_defaults(func=_cmd_family)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    return ns.func(ns)


if __name__ == "__main__":
    sys.exit(main())
