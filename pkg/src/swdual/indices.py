"""Multi-indices I(n,r), value types, weights, and the two group actions.

Multi-indices are plain tuples of 1-based values, always listed and stored
in lexicographic order -- the single global row/column order used by every
matrix in this package.  Permutations of {1..n} are tuples of images
``(w(1), ..., w(n))``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def all_indices(n, r):
    """I(n,r) in lexicographic order."""
    return list(itertools.product(range(1, n + 1), repeat=r))


def index_rank(n, idx):
    """Position of a multi-index in the lexicographic order of I(n,r)."""
    rank = 0
    for v in idx:
        rank = rank * n + (v - 1)
    return rank


def index_from_rank(n, r, rank):
    out = []
    for _ in range(r):
        out.append(rank % n + 1)
        rank //= n
    return tuple(reversed(out))


def format_index(idx):
    """Compact form "432" when all values are single digits, else "4,13,2"."""
    if all(v <= 9 for v in idx):
        return "".join(str(v) for v in idx)
    return ",".join(str(v) for v in idx)


def parse_index(text):
    t = text.strip()
    if "," in t:
        return tuple(int(p) for p in t.split(","))
    return tuple(int(ch) for ch in t)


# -- statistics -------------------------------------------------------------


def value_type(idx):
    """Set partition of places by equal values, canonically ordered."""
    positions = {}
    for place, v in enumerate(idx, start=1):
        positions.setdefault(v, []).append(place)
    blocks = sorted(tuple(b) for b in positions.values())
    return tuple(blocks)


def weight(idx, n):
    """Composition (mu_1, ..., mu_n) counting occurrences of each value."""
    mu = [0] * n
    for v in idx:
        mu[v - 1] += 1
    return tuple(mu)


def sharp(idx):
    """Number of distinct values in the multi-index."""
    return len(set(idx))


def places_of(idx, v):
    """The set of places where value v appears (Lambda_v)."""
    return frozenset(p for p, x in enumerate(idx, start=1) if x == v)


# -- group actions ----------------------------------------------------------


def act_left(w, idx):
    """w(i_1) ... w(i_r), the left W_n action on values."""
    return tuple(w[v - 1] for v in idx)


def act_right(idx, sigma):
    """Place permutation: the value at place a moves to place sigma(a)."""
    r = len(idx)
    out = [0] * r
    for a in range(r):
        out[sigma[a] - 1] = idx[a]
    return tuple(out)


def perm_identity(n):
    return tuple(range(1, n + 1))


def perm_inverse(w):
    inv = [0] * len(w)
    for x, wx in enumerate(w, start=1):
        inv[wx - 1] = x
    return tuple(inv)


def perm_compose(p, q):
    """Composite x -> p(q(x))."""
    return tuple(p[q[x - 1] - 1] for x in range(1, len(p) + 1))


def all_permutations(n):
    """W_n in lexicographic one-line order."""
    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]


def w0(n):
    """The order-reversing permutation j -> n + 1 - j."""
    return tuple(range(n, 0, -1))


# -- injective indices and their slices --------------------------------------


def injective_indices(n, r):
    """I'(n,r): multi-indices with r distinct values, lexicographic."""
    return [idx for idx in all_indices(n, r) if len(set(idx)) == r]


def slice_members(n, idx, alpha):
    """The alpha-slice of I'(n,r) through ``idx`` (1-based place alpha)."""
    used = set(idx) - {idx[alpha - 1]}
    out = []
    for t in range(1, n + 1):
        if t not in used:
            out.append(idx[: alpha - 1] + (t,) + idx[alpha:])
    return out


def alpha_slices(n, r):
    """All alpha-slices of I'(n,r), keyed by (alpha, context).

    The context is the multi-index with place alpha removed; every element
    of I'(n,r) lies in exactly r slices.
    """
    slices = {}
    for idx in injective_indices(n, r):
        for alpha in range(1, r + 1):
            ctx = idx[: alpha - 1] + idx[alpha:]
            slices.setdefault((alpha, ctx), []).append(idx)
    return slices


def drop_place(idx, alpha):
    return idx[: alpha - 1] + idx[alpha:]


def replace_place(idx, alpha, v):
    return idx[: alpha - 1] + (v,) + idx[alpha:]


# -- orbits of the simultaneous place-permutation action ---------------------


@lru_cache(maxsize=None)
def omega_orbits(n, r):
    """Orbits of the right S_r action on I(n,r) x I(n,r).

    Returns ``(orbit_of, reps)`` where ``orbit_of`` maps a pair of
    lexicographic ranks to its orbit id and ``reps`` lists one
    lexicographically least representative pair per orbit.
    """
    indices = all_indices(n, r)
    sigmas = [tuple(p) for p in itertools.permutations(range(1, r + 1))]
    size = len(indices)
    orbit_of = [-1] * (size * size)
    reps = []
    for ri, i in enumerate(indices):
        for rj, j in enumerate(indices):
            key = ri * size + rj
            if orbit_of[key] >= 0:
                continue
            oid = len(reps)
            reps.append((i, j))
            for sigma in sigmas:
                a = index_rank(n, act_right(i, sigma))
                b = index_rank(n, act_right(j, sigma))
                orbit_of[a * size + b] = oid
    return orbit_of, reps


def l_set(n, r, j):
    """L_j: injective indices fixing the first j places to 1..j."""
    if j > r:
        return []
    return [idx for idx in injective_indices(n, r) if idx[:j] == tuple(range(1, j + 1))]


def l_closure(n, r, j):
    """Place-permutation closure of L_j: injective indices containing 1..j."""
    need = set(range(1, j + 1))
    return [idx for idx in injective_indices(n, r) if need <= set(idx)]


# -- order-preserving renumberings used by excision/inflation ----------------


def embed_avoiding(v, skip):
    """Order-preserving image of v in {1..n} \\ {skip}, given v in {1..n-1}."""
    return v if v < skip else v + 1


def collapse_avoiding(v, skip):
    """Inverse of :func:`embed_avoiding`; v must differ from ``skip``."""
    if v == skip:
        raise ValueError("value %d is excised" % v)
    return v if v < skip else v - 1


def embed_index(idx, skip):
    return tuple(embed_avoiding(v, skip) for v in idx)


def collapse_index(idx, skip):
    return tuple(collapse_avoiding(v, skip) for v in idx)
