"""Line-oriented instance files.

Grammar:
    ring <n> <p>
    ideal <name> = <poly>, <poly>, ...
    module <name> free <j1> <j2> ... rels [<poly>|<poly>|...], ...
    cmd <command> <args...>

Variables are written x1..xn.  Blank lines and lines starting with # are
ignored.  The ring line must come first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ring import (
    PolynomialSyntaxError,
    Ring,
    format_polynomial,
    parse_polynomial,
)
from .modules import (
    FreeElement,
    FreeModule,
    PresentedModule,
    Submodule,
    submodule_from_polys,
)


class InstanceSyntaxError(ValueError):
    def __init__(self, message, line, column=None):
        loc = f"line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.column = column


# commands whose first argument must name a defined object
_OBJECT_COMMANDS = {
    "betti", "resolve", "socle", "hilbert", "gamma-test", "gamma-seq",
    "gamma-depth", "hat-gamma-test", "cwl", "verify-main", "splitting-audit",
    "delta", "cd", "twovar-check", "twovar-decompose",
}
_FREE_COMMANDS = {"twovar-build", "corpus-verify"}

_NAME = re.compile(r"[A-Za-z_]\w*\Z")


@dataclass
class InstanceFile:
    ring: Ring
    ideals: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)

    def lookup(self, name):
        if name in self.ideals:
            return self.ideals[name]
        if name in self.modules:
            return self.modules[name]
        raise KeyError(name)


def _parse_poly(ring, text, lineno):
    try:
        return parse_polynomial(ring, text)
    except PolynomialSyntaxError as exc:
        raise InstanceSyntaxError(str(exc), lineno, exc.position + 1) from exc


def parse_instance(text, prime_override=None):
    ring = None
    inst = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "ring":
            if ring is not None:
                raise InstanceSyntaxError("duplicate ring line", lineno)
            parts = rest.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise InstanceSyntaxError("expected: ring <n> <p>", lineno)
            n, p = int(parts[0]), int(parts[1])
            if prime_override is not None:
                p = prime_override
            try:
                ring = Ring(n, p)
            except ValueError as exc:
                raise InstanceSyntaxError(str(exc), lineno) from exc
            inst = InstanceFile(ring)
            continue
        if ring is None:
            raise InstanceSyntaxError("the ring line must come first", lineno)
        if head == "ideal":
            m = re.match(r"(\w+)\s*=\s*(.*)\Z", rest)
            if not m or not _NAME.match(m.group(1)):
                raise InstanceSyntaxError("expected: ideal <name> = <polys>", lineno)
            name, body = m.group(1), m.group(2)
            polys = [_parse_poly(ring, part, lineno)
                     for part in body.split(",") if part.strip()]
            if not polys:
                raise InstanceSyntaxError("ideal needs at least one generator", lineno)
            inst.ideals[name] = submodule_from_polys(ring, polys)
        elif head == "module":
            m = re.match(r"(\w+)\s+free\s+((?:-?\d+\s*)+)rels\s+(.*)\Z", rest)
            if not m:
                raise InstanceSyntaxError(
                    "expected: module <name> free <twists> rels [<p>|...], ...",
                    lineno)
            name = m.group(1)
            twists = tuple(int(t) for t in m.group(2).split())
            F = FreeModule(ring, twists)
            rels = []
            for chunk in re.findall(r"\[([^\]]*)\]", m.group(3)):
                comps = chunk.split("|")
                if len(comps) != len(twists):
                    raise InstanceSyntaxError(
                        f"relation has {len(comps)} components, expected "
                        f"{len(twists)}", lineno)
                terms = {}
                for pos, comp in enumerate(comps):
                    f = _parse_poly(ring, comp.strip() or "0", lineno)
                    for e, c in f.terms.items():
                        terms[(pos, e)] = c
                elem = FreeElement(F, terms)
                if not elem.is_zero():
                    rels.append(elem)
            inst.modules[name] = PresentedModule(F, Submodule(F, rels))
        elif head == "cmd":
            parts = rest.split()
            if not parts:
                raise InstanceSyntaxError("empty command", lineno)
            command, args = parts[0], parts[1:]
            if command not in _OBJECT_COMMANDS and command not in _FREE_COMMANDS:
                raise InstanceSyntaxError(f"unknown command: {command}", lineno)
            if command in _OBJECT_COMMANDS:
                if not args:
                    raise InstanceSyntaxError(
                        f"{command} requires an object name", lineno)
                target = args[0]
                if target not in inst.ideals and target not in inst.modules:
                    raise InstanceSyntaxError(
                        f"undefined object: {target}", lineno)
            inst.commands.append((command, args))
        else:
            raise InstanceSyntaxError(f"unknown directive: {head}", lineno)
    if inst is None:
        raise InstanceSyntaxError("missing ring line", 1)
    return inst


def _format_element(elem):
    return "[" + " | ".join(
        format_polynomial(elem.component(k)) or "0"
        for k in range(elem.module.rank)) + "]"


def serialize_instance(inst):
    """Inverse of parse_instance up to whitespace normalization."""
    lines = [f"ring {inst.ring.n} {inst.ring.p}"]
    for name, ideal in inst.ideals.items():
        polys = ", ".join(format_polynomial(g.component(0)) for g in ideal.gens)
        lines.append(f"ideal {name} = {polys}")
    for name, mod in inst.modules.items():
        twists = " ".join(str(t) for t in mod.free.twists)
        rels = ", ".join(_format_element(g) for g in mod.relations.gens)
        lines.append(f"module {name} free {twists} rels {rels}")
    for command, args in inst.commands:
        lines.append("cmd " + " ".join([command] + list(args)))
    return "\n".join(lines) + "\n"
