"""Finite orthomodular lattices given as explicit operation tables.

Used to verify that the four conjunction axiom schemata are valid under
the Mittelstaedt conditional i1(a, b) = ortho(a) v (a ^ b), evaluating to
the upper unit I for every assignment of lattice elements.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple


class MalformedTable(Exception):
    pass


@dataclass(frozen=True)
class OrthoLattice:
    elements: Tuple[str, ...]
    meet_table: Dict[Tuple[str, str], str]
    join_table: Dict[Tuple[str, str], str]
    ortho_table: Dict[str, str]
    bottom: str
    top: str

    def meet(self, a: str, b: str) -> str:
        return self.meet_table[(a, b)]

    def join(self, a: str, b: str) -> str:
        return self.join_table[(a, b)]

    def ortho(self, a: str) -> str:
        return self.ortho_table[a]

    def leq(self, a: str, b: str) -> bool:
        return self.meet(a, b) == a


def validate_orthomodular(lat: OrthoLattice):
    """(ok, first violation description or None), checked exhaustively."""
    es = lat.elements
    for a in es:
        for b in es:
            if (a, b) not in lat.meet_table or (a, b) not in lat.join_table:
                raise MalformedTable(f"missing table entry for ({a},{b})")
        if a not in lat.ortho_table:
            raise MalformedTable(f"missing ortho entry for {a}")

    def fail(msg):
        return False, msg

    for a in es:
        if lat.ortho(lat.ortho(a)) != a:
            return fail(f"ortho not involutive at {a}")
        if lat.meet(a, lat.ortho(a)) != lat.bottom:
            return fail(f"a ^ a' != 0 at {a}")
        if lat.join(a, lat.ortho(a)) != lat.top:
            return fail(f"a v a' != I at {a}")
        if lat.meet(a, a) != a or lat.join(a, a) != a:
            return fail(f"idempotence fails at {a}")
        if lat.meet(a, lat.top) != a or lat.join(a, lat.bottom) != a:
            return fail(f"unit laws fail at {a}")
    for a in es:
        for b in es:
            if lat.meet(a, b) != lat.meet(b, a) or lat.join(a, b) != lat.join(b, a):
                return fail(f"commutativity fails at ({a},{b})")
            # De Morgan
            if lat.ortho(lat.meet(a, b)) != lat.join(lat.ortho(a), lat.ortho(b)):
                return fail(f"De Morgan fails at ({a},{b})")
            # absorption ties meet and join into one order
            if lat.meet(a, lat.join(a, b)) != a or lat.join(a, lat.meet(a, b)) != a:
                return fail(f"absorption fails at ({a},{b})")
            for c in es:
                if lat.meet(lat.meet(a, b), c) != lat.meet(a, lat.meet(b, c)):
                    return fail(f"meet associativity fails at ({a},{b},{c})")
                if lat.join(lat.join(a, b), c) != lat.join(a, lat.join(b, c)):
                    return fail(f"join associativity fails at ({a},{b},{c})")
    for a in es:
        for b in es:
            if lat.leq(a, b):
                # orthomodular law
                if lat.join(a, lat.meet(lat.ortho(a), b)) != b:
                    return fail(f"orthomodular law fails at ({a},{b})")
    return True, None


def mittelstaedt(lat: OrthoLattice, a: str, b: str) -> str:
    return lat.join(lat.ortho(a), lat.meet(a, b))


# schema shapes over variables; ("var", name) | ("conj", l, r)
_SCHEMAS = {
    1: ((("conj", ("var", "A"), ("var", "B"))), ("var", "A")),
    2: ((("conj", ("var", "A"), ("var", "B"))), ("var", "B")),
    3: (
        ("conj", ("var", "A"), ("conj", ("var", "B"), ("var", "C"))),
        ("conj", ("conj", ("var", "A"), ("var", "B")), ("var", "C")),
    ),
    4: (
        ("conj", ("conj", ("var", "A"), ("var", "B")), ("var", "C")),
        ("conj", ("var", "A"), ("conj", ("var", "B"), ("var", "C"))),
    ),
}


def _eval_shape(shape, lat: OrthoLattice, env: Dict[str, str]) -> str:
    if shape[0] == "var":
        return env[shape[1]]
    return lat.meet(_eval_shape(shape[1], lat, env), _eval_shape(shape[2], lat, env))


def axiom_validity(lat: OrthoLattice, schema: int):
    """True iff the schema's i1-translation is I for every assignment.

    Returns (ok, failing assignment or None).
    """
    lhs, rhs = _SCHEMAS[schema]
    names = ["A", "B"] if schema in (1, 2) else ["A", "B", "C"]
    for combo in itertools.product(lat.elements, repeat=len(names)):
        env = dict(zip(names, combo))
        val = mittelstaedt(lat, _eval_shape(lhs, lat, env), _eval_shape(rhs, lat, env))
        if val != lat.top:
            return False, env
    return True, None


# -- built-ins ---------------------------------------------------------------


def boolean_lattice(n: int) -> OrthoLattice:
    """Boolean algebra 2^n for n <= 3, elements named by subset bitmask."""
    if not 1 <= n <= 3:
        raise ValueError("n must be 1..3")
    masks = list(range(2**n))
    name = {m: format(m, f"0{n}b") for m in masks}
    full = 2**n - 1
    meet = {(name[a], name[b]): name[a & b] for a in masks for b in masks}
    join = {(name[a], name[b]): name[a | b] for a in masks for b in masks}
    ortho = {name[a]: name[a ^ full] for a in masks}
    return OrthoLattice(
        elements=tuple(name[m] for m in masks),
        meet_table=meet,
        join_table=join,
        ortho_table=ortho,
        bottom=name[0],
        top=name[full],
    )


def mo2() -> OrthoLattice:
    """The lattice MO2: 0 < a, a', b, b' < 1 with the four atoms incomparable."""
    es = ("0", "a", "a'", "b", "b'", "1")
    meet = {}
    join = {}
    for x in es:
        for y in es:
            if x == y:
                meet[(x, y)] = x
                join[(x, y)] = x
            elif x == "0" or y == "0":
                meet[(x, y)] = "0"
                join[(x, y)] = y if x == "0" else x
            elif x == "1" or y == "1":
                meet[(x, y)] = y if x == "1" else x
                join[(x, y)] = "1"
            else:
                meet[(x, y)] = "0"
                join[(x, y)] = "1"
    ortho = {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b'", "b'": "b"}
    return OrthoLattice(es, meet, join, ortho, bottom="0", top="1")


BUILTINS = {
    "mo2": mo2,
    "boolean2": lambda: boolean_lattice(1),
    "boolean4": lambda: boolean_lattice(2),
    "boolean8": lambda: boolean_lattice(3),
}


# -- JSON file format ---------------------------------------------------------


def lattice_from_json(text: str) -> OrthoLattice:
    """Parse {elements, meet, join, ortho, bottom, top}; meet/join are
    nested dicts element -> element -> element."""
    data = json.loads(text)
    es = tuple(data["elements"])
    meet = {(a, b): data["meet"][a][b] for a in es for b in es}
    join = {(a, b): data["join"][a][b] for a in es for b in es}
    ortho = {a: data["ortho"][a] for a in es}
    return OrthoLattice(es, meet, join, ortho, bottom=data["bottom"], top=data["top"])


def lattice_to_json(lat: OrthoLattice) -> str:
    es = lat.elements
    return json.dumps(
        {
            "elements": list(es),
            "meet": {a: {b: lat.meet(a, b) for b in es} for a in es},
            "join": {a: {b: lat.join(a, b) for b in es} for a in es},
            "ortho": {a: lat.ortho(a) for a in es},
            "bottom": lat.bottom,
            "top": lat.top,
        },
        indent=2,
    )
