"""Height functions of unitary subgroups of the rationals.

A unitary subgroup ``A`` (one containing 1) is described by the function
``p -> max{a : 1/p**a in A}``.  Only finitely supported functions with values
in the naturals or infinity are representable; that covers the integers, the
groups ``G_p`` of rationals with ``p``-power denominators and their scalings.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .arith import factorize, factorize_rational, is_prime

__all__ = [
    "INF",
    "HeightFunction",
    "Cardinality",
    "g_p",
    "scale",
    "equivalent",
    "equivalence_witness",
    "subgroups_isomorphic",
    "classify_in_neighbour_cardinality",
    "prime_swap_iso",
    "parse_height_function",
]


class _Infinity:
    """The height value infinity. Absorbs finite additions."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __add__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("powergraph.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

HeightValue = Union[int, _Infinity]


@dataclass(frozen=True)
class HeightFunction:
    """Finitely supported map from primes to heights; absent primes have height 0.

    ``entries`` is kept in normal form: primes increasing, no zero values.
    """

    entries: tuple[tuple[int, HeightValue], ...] = ()

    def __post_init__(self):
        last = 0
        for p, v in self.entries:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p <= last:
                raise ValueError("primes must be strictly increasing")
            if v is not INF and (not isinstance(v, int) or v <= 0):
                raise ValueError(f"height at {p} must be a positive integer or inf, got {v!r}")
            last = p

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, HeightValue]) -> "HeightFunction":
        """Build from any mapping; zero values are dropped."""
        return cls(tuple(sorted((p, v) for p, v in mapping.items() if v != 0)))

    def __call__(self, p: int) -> HeightValue:
        for q, v in self.entries:
            if q == p:
                return v
        return 0

    def as_dict(self) -> dict[int, HeightValue]:
        return dict(self.entries)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def infinite_primes(self) -> frozenset[int]:
        return frozenset(p for p, v in self.entries if v is INF)

    def contains(self, x: Fraction | int) -> bool:
        """Membership of ``x`` in the unitary subgroup with this height function."""
        den = Fraction(x).denominator
        if den == 1:
            return True
        return all(e <= self(p) for p, e in factorize(den))

    def dumps(self) -> str:
        return "".join(f"{p}: {v}\n" for p, v in self.entries)

    def compact(self) -> str:
        """Single-line form used inside group descriptors, e.g. ``2:inf,3:1``."""
        return ",".join(f"{p}:{v}" for p, v in self.entries)

    def __str__(self):
        return "{" + ", ".join(f"{p}: {v}" for p, v in self.entries) + "}"


def _parse_value(token: str) -> HeightValue:
    token = token.strip()
    if token == "inf":
        return INF
    value = int(token)
    if value < 0:
        raise ValueError(f"negative height {value}")
    return value


def parse_height_function(text: str) -> HeightFunction:
    """Parse the ``<prime>: <value>`` line format (``#`` comments allowed).

    Commas are accepted as entry separators too, which gives the compact form.
    """
    entries: dict[int, HeightValue] = {}
    for raw in text.replace(",", "\n").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            key, value = line.split(":", 1)
            p, v = int(key), _parse_value(value)
        except ValueError as exc:
            raise ValueError(f"bad height-function line {raw!r}") from exc
        if p in entries:
            raise ValueError(f"duplicate prime {p}")
        if v == 0:
            raise ValueError(f"explicit zero entry for prime {p}")
        entries[p] = v
    return HeightFunction.from_mapping(entries)


def g_p(p: int) -> HeightFunction:
    """Height function of ``G_p``: infinite at ``p``, zero elsewhere."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return HeightFunction(((p, INF),))


def scale(h: HeightFunction, m: int) -> HeightFunction:
    """The height function ``m*h``: add the exponent of each prime of ``m``."""
    if m <= 0:
        raise ValueError("scale factor must be a positive integer")
    out = h.as_dict()
    for p, e in factorize(m):
        out[p] = out.get(p, 0) + e
    return HeightFunction.from_mapping(out)


def equivalence_witness(h: HeightFunction, f: HeightFunction) -> tuple[int, int] | None:
    """Smallest ``(m, n)`` with ``m*h == n*f``, or ``None`` if none exist.

    With finite support the finite positions always differ by a finite amount,
    so the only obstruction is a mismatch in the infinite positions.
    """
    if h.infinite_primes != f.infinite_primes:
        return None
    m = n = 1
    for p in sorted(set(h.support) | set(f.support)):
        hv, fv = h(p), f(p)
        if hv is INF:
            continue
        if hv < fv:
            m *= p ** (fv - hv)
        elif fv < hv:
            n *= p ** (hv - fv)
    return m, n


def equivalent(h: HeightFunction, f: HeightFunction) -> bool:
    return equivalence_witness(h, f) is not None


def subgroups_isomorphic(h_a: HeightFunction, h_b: HeightFunction) -> bool:
    """Whether the unitary subgroups with these height functions are isomorphic."""
    return equivalent(h_a, h_b)


class Cardinality(enum.Enum):
    ALL_FINITE = "AllFinite"
    ALL_INFINITE = "AllInfinite"

    def __str__(self):
        return self.value


def classify_in_neighbour_cardinality(h: HeightFunction) -> Cardinality:
    """Whether every non-zero element has finitely or infinitely many in-neighbours.

    The other infinite case, infinitely many primes of positive height, cannot
    be written down as a finitely supported function, so ``ALL_FINITE`` is
    only correct relative to that representation.
    """
    if h.infinite_primes:
        return Cardinality.ALL_INFINITE
    return Cardinality.ALL_FINITE


def prime_swap_iso(p: int, q: int, x: Fraction | int) -> Fraction:
    """Map ``G_p -> G_q`` exchanging the primes ``p`` and ``q`` in the factorization of ``x``."""
    if p == q or not is_prime(p) or not is_prime(q):
        raise ValueError("need two distinct primes")
    x = Fraction(x)
    if not g_p(p).contains(x):
        raise ValueError("element outside domain group")
    if x == 0:
        return x
    swap = {p: q, q: p}
    out = Fraction(-1 if x < 0 else 1)
    for r, e in factorize_rational(x):
        out *= Fraction(swap.get(r, r)) ** e
    return out

