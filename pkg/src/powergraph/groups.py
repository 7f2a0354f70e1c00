"""Group descriptors and element-level power relations.

Groups are written additively, so "``y`` is a power of ``x``" reads
``y == n*x`` for some non-zero integer ``n``.  Elements are plain values:

==============  ==========================================
descriptor      element
==============  ==========================================
``Z``           ``int``
``Zn(d)``       ``tuple[int, ...]`` of length ``d``
``Q``           ``Fraction``
``Qn(d)``       ``tuple[Fraction, ...]`` of length ``d``
``Unitary(h)``  ``Fraction`` lying in the subgroup
``Cyclic(k)``   residue ``int`` in ``range(k)``
==============  ==========================================

``Cyclic`` exists only for small finite examples; operations that assume a
torsion-free group reject it.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .arith import format_rational, gcd_vector, parse_rational
from .heights import HeightFunction, parse_height_function

__all__ = [
    "Z", "Zn", "Q", "Qn", "Unitary", "Cyclic", "Group",
    "parse_group", "identity", "coerce", "check_element",
    "format_element", "parse_element", "sort_key",
    "arc", "arc_predicate", "adjacent", "related", "contains", "negate",
    "maximal_cyclic_generator", "same_component", "is_torsion_free",
]


@dataclass(frozen=True)
class Z:
    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class Zn:
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")

    def __str__(self):
        return f"Z^{self.dim}"


@dataclass(frozen=True)
class Q:
    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class Qn:
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")

    def __str__(self):
        return f"Q^{self.dim}"


@dataclass(frozen=True)
class Unitary:
    """Unitary subgroup of Q given by its height function."""

    height: HeightFunction

    def __str__(self):
        return f"U[{self.height.compact()}]"


@dataclass(frozen=True)
class Cyclic:
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")

    def __str__(self):
        return f"C{self.order}"


Group = Union[Z, Zn, Q, Qn, Unitary, Cyclic]

_VECTOR = (Zn, Qn)
_RATIONAL = (Q, Unitary)


def parse_group(text: str, read_file: Callable[[str], str] | None = None) -> Group:
    """Parse ``Z``, ``Z^2``, ``Q``, ``Q^3``, ``C6``, ``U[2:inf,3:1]`` or ``U:<path>``."""
    text = text.strip()
    if text == "Z":
        return Z()
    if text == "Q":
        return Q()
    if m := re.fullmatch(r"([ZQ])\^(\d+)", text):
        return (Zn if m[1] == "Z" else Qn)(int(m[2]))
    if m := re.fullmatch(r"C(\d+)", text):
        return Cyclic(int(m[1]))
    if m := re.fullmatch(r"U\[(.*)\]", text):
        return Unitary(parse_height_function(m[1]))
    if text.startswith("U:"):
        if read_file is None:
            with open(text[2:], encoding="utf-8") as fh:
                body = fh.read()
        else:
            body = read_file(text[2:])
        return Unitary(parse_height_function(body))
    raise ValueError(f"unknown group descriptor {text!r}")


def is_torsion_free(G: Group) -> bool:
    return not isinstance(G, Cyclic)


def _require_torsion_free(G: Group, what: str):
    if not is_torsion_free(G):
        raise ValueError(f"{what} is only defined for torsion-free groups, not {G}")


def identity(G: Group):
    if isinstance(G, Zn):
        return (0,) * G.dim
    if isinstance(G, Qn):
        return (Fraction(0),) * G.dim
    if isinstance(G, _RATIONAL):
        return Fraction(0)
    return 0


def coerce(G: Group, value):
    """Convert a loose value (ints, strings, lists) to the element type of ``G``."""
    if isinstance(value, str):
        return parse_element(G, value)
    if isinstance(G, Zn):
        x = tuple(int(v) for v in value)
    elif isinstance(G, Qn):
        x = tuple(Fraction(v) for v in value)
    elif isinstance(G, _RATIONAL):
        x = Fraction(value)
    elif isinstance(G, Cyclic):
        x = int(value) % G.order
    else:
        x = int(value)
    check_element(G, x)
    return x


def check_element(G: Group, x) -> None:
    ok = True
    if isinstance(G, Z):
        ok = type(x) is int
    elif isinstance(G, Cyclic):
        ok = type(x) is int and 0 <= x < G.order
    elif isinstance(G, _RATIONAL):
        ok = isinstance(x, Fraction)
        if ok and isinstance(G, Unitary) and not G.height.contains(x):
            raise ValueError(f"{format_rational(x)} is not in {G}")
    elif isinstance(G, Zn):
        ok = isinstance(x, tuple) and len(x) == G.dim and all(type(c) is int for c in x)
    elif isinstance(G, Qn):
        ok = isinstance(x, tuple) and len(x) == G.dim and all(isinstance(c, Fraction) for c in x)
    else:
        raise TypeError(f"not a group descriptor: {G!r}")
    if not ok:
        raise TypeError(f"{x!r} is not an element of {G}")


def format_element(G: Group, x) -> str:
    if isinstance(G, _VECTOR):
        return "(" + ",".join(format_rational(c) for c in x) + ")"
    if isinstance(G, _RATIONAL):
        return format_rational(x)
    return str(x)


def parse_element(G: Group, text: str):
    text = text.strip()
    if isinstance(G, _VECTOR):
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"expected a vector like (1,2), got {text!r}")
        parts = text[1:-1].split(",")
        if isinstance(G, Zn):
            x = tuple(int(p) for p in parts)
        else:
            x = tuple(parse_rational(p) for p in parts)
    elif isinstance(G, _RATIONAL):
        x = parse_rational(text)
    else:
        x = int(text)
    check_element(G, x)
    return x


def sort_key(G: Group, x):
    """Canonical vertex order: numeric value for scalars, lexicographic for vectors."""
    return x


def arc_predicate(G: Group) -> Callable[[object, object], bool]:
    """Unchecked arc test ``x -> y`` specialised to ``G``; used in hot loops."""
    if isinstance(G, Z):
        def arc_z(x, y):
            if x == 0:
                return y == 0
            return y != 0 and y % x == 0
        return arc_z

    if isinstance(G, _RATIONAL):
        def arc_q(x, y):
            if x == 0:
                return y == 0
            if y == 0:
                return False
            # y/x = (c*b)/(d*a) for x = a/b, y = c/d
            return (y.numerator * x.denominator) % (y.denominator * x.numerator) == 0
        return arc_q

    if isinstance(G, Zn):
        def arc_zn(x, y):
            for xi, yi in zip(x, y):
                if xi != 0:
                    if yi % xi:
                        return False
                    n = yi // xi
                    return n != 0 and all(yj == n * xj for xj, yj in zip(x, y))
            return not any(y)
        return arc_zn

    if isinstance(G, Qn):
        def arc_qn(x, y):
            for xi, yi in zip(x, y):
                if xi != 0:
                    n = yi / xi
                    if n.denominator != 1 or n == 0:
                        return False
                    return all(yj == n * xj for xj, yj in zip(x, y))
            return not any(y)
        return arc_qn

    if isinstance(G, Cyclic):
        k = G.order

        def arc_c(x, y):
            return y % math.gcd(x, k) == 0
        return arc_c

    raise TypeError(f"not a group descriptor: {G!r}")


def arc(G: Group, x, y) -> bool:
    """True iff ``y == n*x`` for a non-zero integer ``n``."""
    check_element(G, x)
    check_element(G, y)
    return arc_predicate(G)(x, y)


def adjacent(G: Group, x, y) -> bool:
    if x == y:
        raise ValueError("adjacency defined on distinct vertices")
    return arc(G, x, y) or arc(G, y, x)


def related(G: Group, x, y) -> bool:
    """Reflexive closure of adjacency; this is the relation used inside S-sets."""
    check_element(G, x)
    check_element(G, y)
    return x == y or adjacent(G, x, y)


def contains(h: HeightFunction, x) -> bool:
    return h.contains(x)


def negate(G: Group, x):
    check_element(G, x)
    if isinstance(G, Cyclic):
        return -x % G.order
    if isinstance(G, _VECTOR):
        return tuple(-c for c in x)
    return -x


def maximal_cyclic_generator(G: Group, x) -> tuple[int, ...]:
    """Primitive generator ``x/gcd(x)`` of the maximal cyclic subgroup of ``Z^n`` containing ``x``."""
    if not isinstance(G, Zn):
        raise TypeError("maximal_cyclic_generator needs a Z^n descriptor")
    check_element(G, x)
    d = gcd_vector(x)
    if d == 0:
        raise ValueError("identity lies in no maximal cyclic subgroup")
    return tuple(c // d for c in x)


def same_component(G: Group, x, y) -> bool:
    """Whether two non-identity elements lie in the same component of the power graph."""
    _require_torsion_free(G, "same_component")
    check_element(G, x)
    check_element(G, y)
    zero = identity(G)
    if x == zero or y == zero:
        raise ValueError("the identity is an isolated vertex")
    if isinstance(G, Zn):
        gx = maximal_cyclic_generator(G, x)
        gy = maximal_cyclic_generator(G, y)
        return gx == gy or gx == tuple(-c for c in gy)
    if isinstance(G, Qn):
        return all(x[i] * y[j] == x[j] * y[i] for i in range(G.dim) for j in range(i + 1, G.dim))
    return True
