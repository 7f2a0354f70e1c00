"""Independent reference computations shared by the tests.

Nothing here calls into the code paths it is used to check.
"""

import itertools

import numpy as np

from powergraph.heights import INF, HeightFunction

FIRST_PRIMES = (2, 3, 5, 7, 11)
_INF_CODE = 99  # finite values in the search never exceed 4 + 8


def random_height(rng, primes=FIRST_PRIMES, top=4, like=None):
    """Random height function on ``primes``; finite values ``<= top`` or inf.

    With ``like`` the infinite positions are copied, which makes equivalent
    pairs common enough to matter.
    """
    values = {}
    for p in primes:
        if like is not None:
            values[p] = INF if like(p) is INF else rng.randrange(top + 1)
        else:
            r = rng.randrange(top + 3)
            values[p] = INF if r == top + 2 else min(r, top)
    return HeightFunction.from_mapping(values)


def _exponent_grid(k, max_exp):
    return np.array(list(itertools.product(range(max_exp + 1), repeat=k)), dtype=np.int64)


_GRID_CACHE = {}


def _scaled_keys(h, primes, max_exp):
    grid = _GRID_CACHE.setdefault((len(primes), max_exp), _exponent_grid(len(primes), max_exp))
    base = np.array([_INF_CODE if h(p) is INF else h(p) for p in primes], dtype=np.int64)
    inf = base == _INF_CODE
    vals = np.where(inf, _INF_CODE, base + grid)
    weights = 100 ** np.arange(len(primes), dtype=np.int64)
    return vals @ weights


def brute_force_equivalent(h, f, primes=FIRST_PRIMES, max_exp=8):
    """Search every m, n built from ``primes`` with exponents ``<= max_exp`` for ``m*h == n*f``.

    Scaling by m adds its exponents prime by prime, so each candidate m gives
    one vector of heights; the pair is equivalent iff the two candidate sets
    share a vector.
    """
    for g in (h, f):
        if set(g.support) - set(primes):
            raise ValueError("height function outside the search primes")
    mh = _scaled_keys(h, primes, max_exp)
    nf = _scaled_keys(f, primes, max_exp)
    return bool(np.intersect1d(mh, nf).size)


def count_divisors(n):
    return sum(1 for d in range(1, abs(n) + 1) if n % d == 0)
