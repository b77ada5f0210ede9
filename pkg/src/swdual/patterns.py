"""The slice colouring algorithm and free extension/decomposition patterns.

The colouring walks the injective index set I'(n,r), repeatedly taking the
largest (or smallest) uncoloured element: an element that is the sole
uncoloured member of one of its slices is forced (colour 0), anything else
is free (colour 1), and each colouring step cascades through newly
single-uncoloured slices.  Pre-zeroed elements model entries already known
from specialness or from prescribed columns.

Free patterns are built by the mutual recursion

    F(n,r) = F'(n,r) | F''(n,r),   F'(n,r) <-> D(n,r-1),
    F''(n,r) = union over j of the per-block patterns theta-image of F(n-1,r),
    D(n,r)  = D'(n,r) | D''(n,r)  (full per-block patterns for j >= r+2,
              colouring-filtered ones for j = r+1..2),

bottoming out at F(n,1) = {(i,j): 2 <= i,j <= n} and at empty patterns when
extensions are unique.  All patterns here are based on the last block row;
other bases arise by relabelling or transposition.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache

from . import indices as ix


@dataclass(frozen=True)
class ColourEvent:
    index: tuple
    colour: int
    # None for free / pre-zeroed elements; otherwise the (alpha, context)
    # slice whose last uncoloured member this element was.
    forcing_slice: tuple | None
    initial: bool = False


@dataclass
class Colouring:
    n: int
    r: int
    policy: str
    initial_zeros: frozenset
    colour: dict
    events: list = field(repr=False)

    @property
    def ones(self):
        return tuple(sorted(i for i, c in self.colour.items() if c == 1))


def colour(n, r, policy="largest", initial_zeros=()):
    """Run the colouring on I'(n,r).

    ``initial_zeros`` are pre-coloured 0 before the main loop (their values
    are considered known, not free).  The returned events list records the
    colouring order and, for each cascade-forced element, the slice that
    forced it; replaying the events turns known slice sums into entry
    values by subtraction only.
    """
    if policy not in ("largest", "smallest"):
        raise ValueError("unknown policy %r" % (policy,))
    members = ix.injective_indices(n, r)
    slot = {}
    for idx in members:
        slot[idx] = [(alpha, ix.drop_place(idx, alpha)) for alpha in range(1, r + 1)]
    slices = {}
    for idx in members:
        for key in slot[idx]:
            slices.setdefault(key, []).append(idx)
    uncoloured_count = {key: len(v) for key, v in slices.items()}

    colours = {}
    events = []

    def mark(idx, value, forcing=None, initial=False):
        colours[idx] = value
        events.append(ColourEvent(idx, value, forcing, initial))
        for key in slot[idx]:
            uncoloured_count[key] -= 1

    def cascade(start):
        queue = [start]
        while queue:
            current = queue.pop(0)
            for key in slot[current]:
                if uncoloured_count[key] == 1:
                    forced = next(m for m in slices[key] if m not in colours)
                    mark(forced, 0, forcing=key)
                    queue.append(forced)

    initial_zeros = frozenset(initial_zeros)
    for idx in sorted(initial_zeros):
        if idx not in slot:
            raise ValueError("initial zero %s is not injective" % (idx,))
        mark(idx, 0, initial=True)
    for idx in sorted(initial_zeros):
        cascade(idx)

    remaining = sorted(set(members) - set(colours), reverse=(policy == "largest"))
    for idx in remaining:
        if idx in colours:
            continue
        forced_key = None
        for key in slot[idx]:
            if uncoloured_count[key] == 1:
                forced_key = key
                break
        mark(idx, 0 if forced_key else 1, forcing=forced_key)
        cascade(idx)

    return Colouring(n, r, policy, initial_zeros, colours, events)


def containing_zeros(n, r, j):
    """Injective indices containing the value j (zero by specialness)."""
    return frozenset(idx for idx in ix.injective_indices(n, r) if j in idx)


def modified_colouring(n, r, j, policy="largest", zero_l_closure=True):
    """The colouring used to cut per-block decomposition patterns.

    Entries containing j are pre-zeroed; with ``zero_l_closure`` (the
    reading used by the pattern construction) the place-permutation closure
    of the prescribed-column labels L_{j-1} is pre-zeroed as well.
    """
    zeros = set(containing_zeros(n, r, j))
    if zero_l_closure:
        zeros.update(ix.l_closure(n, r, j - 1))
    return colour(n, r, policy, frozenset(zeros))


# ---------------------------------------------------------------------------
# Free patterns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreePattern:
    n: int
    r: int
    basis: str  # "row:<i>" or "col:<j>"
    flavour: str  # "extension", "decomposition", "per-block"
    entries: tuple  # pairs (row, col) or triples (j, row, col)

    def __len__(self):
        return len(self.entries)

    def to_json(self):
        def fmt(e):
            if self.flavour == "decomposition":
                return [str(e[0]), ix.format_index(e[1]), ix.format_index(e[2])]
            return [ix.format_index(e[0]), ix.format_index(e[1])]

        return {
            "n": self.n,
            "r": self.r,
            "basis": self.basis,
            "flavour": self.flavour,
            "entries": [fmt(e) for e in self.entries],
        }


def base_pattern_f_n1(n, variant="terminal"):
    """The rank-one extension pattern and its three relabelled variants.

    "terminal" is {(i, j): 2 <= i, j <= n}; applying the order-reversing
    permutation to rows and/or columns yields the initial and mixed ones.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    entries = [((i,), (j,)) for i in range(2, n + 1) for j in range(2, n + 1)]
    flips = {
        "terminal": (False, False),
        "initial": (True, True),
        "row-initial-col-terminal": (True, False),
        "row-terminal-col-initial": (False, True),
    }
    if variant not in flips:
        raise ValueError("unknown variant %r" % (variant,))
    flip_rows, flip_cols = flips[variant]
    rev = ix.w0(n)
    out = []
    for row, col in entries:
        if flip_rows:
            row = ix.act_left(rev, row)
        if flip_cols:
            col = ix.act_left(rev, col)
        out.append((row, col))
    return FreePattern(n, 1, "row:%d" % n, "extension", tuple(sorted(out)))


def theta_label(pair, n, p, q):
    """Relabel an (n-1)-level index pair through the inflation with tag
    (p, q): rows embed avoiding p, columns avoiding q."""
    row, col = pair
    return ix.embed_index(row, p), ix.embed_index(col, q)


def per_block_entries(n, r, i, j):
    """Entry pairs of the per-block pattern theta^i_j F(n-1, r)."""
    return tuple(
        sorted(theta_label(pair, n, i, j) for pair in build_f(n - 1, r).entries)
    )


def per_block_pattern(n, r, i, j):
    return FreePattern(n, r, "row:%d" % i, "per-block", per_block_entries(n, r, i, j))


@lru_cache(maxsize=None)
def build_d(n, r):
    """The free decomposition pattern D(n,r) for the last block row.

    Empty when n <= r+1 (the decomposition is unique there).  Otherwise the
    blocks j = r+2..n contribute their full per-block patterns and the
    blocks j = r+1..2 contribute the entries surviving the modified
    colouring; block 1 is the forced remainder and contributes nothing.
    """
    cached = _disk_cache_get("D", n, r)
    if cached is not None:
        return cached
    if n <= r + 1:
        return FreePattern(n, r, "row:%d" % n, "decomposition", ())
    entries = []
    for j in range(2, n + 1):
        per_block = per_block_entries(n, r, n, j)
        if j >= r + 2:
            chosen = per_block
        else:
            free_cols = set(modified_colouring(n, r, j).ones)
            chosen = [pair for pair in per_block if pair[1] in free_cols]
        entries.extend((j,) + pair for pair in chosen)
    pattern = FreePattern(
        n, r, "row:%d" % n, "decomposition", tuple(sorted(entries))
    )
    _disk_cache_put("D", n, r, pattern)
    return pattern


@lru_cache(maxsize=None)
def build_f(n, r):
    """The free extension pattern F(n,r) for the last block row."""
    cached = _disk_cache_get("F", n, r)
    if cached is not None:
        return cached
    if n <= r:
        return FreePattern(n, r, "row:%d" % n, "extension", ())
    if r == 1:
        return base_pattern_f_n1(n)
    entries = set(f_prime_entries(n, r))
    for j in range(1, n + 1):
        entries.update(per_block_entries(n, r, n, j))
    pattern = FreePattern(n, r, "row:%d" % n, "extension", tuple(sorted(entries)))
    _disk_cache_put("F", n, r, pattern)
    return pattern


def f_prime_entries(n, r):
    """F'(n,r): images of the decomposition pattern D(n,r-1) under the
    block-row labelling (j, p, q) -> (n.p, j.q)."""
    return tuple(
        sorted(((n,) + p, (j,) + q) for (j, p, q) in build_d(n, r - 1).entries)
    )


def f_second_entries(n, r):
    return tuple(
        sorted(set().union(*(set(per_block_entries(n, r, n, j)) for j in range(1, n + 1))))
    )


def transform_pattern(pattern, row_perm=None, col_perm=None, transpose=False):
    """Relabel rows/columns by permutations of the value set and/or swap the
    two sides; the result is again a free pattern."""
    def conv(pair):
        row, col = pair
        if row_perm is not None:
            row = ix.act_left(row_perm, row)
        if col_perm is not None:
            col = ix.act_left(col_perm, col)
        return (col, row) if transpose else (row, col)

    if pattern.flavour == "decomposition":
        entries = tuple(sorted((j,) + conv((p, q)) for (j, p, q) in pattern.entries))
    else:
        entries = tuple(sorted(conv(pair) for pair in pattern.entries))
    basis = pattern.basis
    if transpose and basis.startswith("row:"):
        basis = "col:" + basis[4:]
    elif transpose and basis.startswith("col:"):
        basis = "row:" + basis[4:]
    return FreePattern(pattern.n, pattern.r, basis, pattern.flavour, entries)


# ---------------------------------------------------------------------------
# Optional on-disk cache (SWD_CACHE_DIR)
# ---------------------------------------------------------------------------


def _cache_path(kind, n, r):
    root = os.environ.get("SWD_CACHE_DIR")
    if not root:
        return None
    return os.path.join(root, "%s_%d_%d.json" % (kind, n, r))


def _disk_cache_get(kind, n, r):
    path = _cache_path(kind, n, r)
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("schema") != "swd/1":
        return None
    if kind == "D":
        entries = tuple(
            (int(j), ix.parse_index(p), ix.parse_index(q))
            for j, p, q in doc["entries"]
        )
        flavour = "decomposition"
    else:
        entries = tuple(
            (ix.parse_index(p), ix.parse_index(q)) for p, q in doc["entries"]
        )
        flavour = "extension"
    return FreePattern(n, r, doc["basis"], flavour, entries)


def _disk_cache_put(kind, n, r, pattern):
    path = _cache_path(kind, n, r)
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    doc = {"schema": "swd/1", "basis": pattern.basis}
    doc["entries"] = pattern.to_json()["entries"]
    with open(path, "w") as fh:
        json.dump(doc, fh)


# ---------------------------------------------------------------------------
# Plain-text table rendering (golden-file comparisons)
# ---------------------------------------------------------------------------


def _grid(rows, cols, marks, cell):
    width = max([len(ix.format_index(c)) for c in cols] + [1]) + 1
    head = " " * (max(len(ix.format_index(r)) for r in rows) + 2)
    head += "".join(ix.format_index(c).rjust(width) for c in cols)
    lines = [head.rstrip()]
    label_w = max(len(ix.format_index(r)) for r in rows)
    for row in rows:
        line = ix.format_index(row).ljust(label_w) + " |"
        for col in cols:
            line += cell(marks, row, col).rjust(width)
        lines.append(line.rstrip())
    return "\n".join(lines)


def render_pattern(pattern, columns="used"):
    """Checkmark grid of an extension/per-block pattern.

    ``columns`` is "used" (only columns carrying at least one mark, as in
    the larger reference grids) or "all" (every injective index).
    """
    entries = set(pattern.entries)
    rows = sorted({e[0] for e in entries})
    if columns == "all":
        cols = ix.injective_indices(pattern.n, pattern.r)
    else:
        cols = sorted({e[1] for e in entries})
    return _grid(
        rows, cols, entries, lambda m, r_, c: "x" if (r_, c) in m else "."
    )


def render_decomposition_pattern(pattern, columns="used"):
    """Checkmark grids of a decomposition pattern, one block per j."""
    by_j = {}
    for (j, p, q) in pattern.entries:
        by_j.setdefault(j, set()).add((p, q))
    rows = sorted({e[1] for e in pattern.entries})
    sections = []
    for j in sorted(by_j):
        marks = by_j[j]
        if columns == "all":
            cols = ix.injective_indices(pattern.n, pattern.r)
        else:
            cols = sorted({c for (_, c) in marks})
        sections.append("j=%d" % j)
        sections.append(
            _grid(rows, cols, marks, lambda m, r_, c: "x" if (r_, c) in m else ".")
        )
    return "\n".join(sections)


def render_star_table(n, r, starred):
    """Star/blank grid over all of I(n,r), for the reference general-form
    displays of invariants (starred entries may be nonzero)."""
    idxs = ix.all_indices(n, r)
    return _grid(idxs, idxs, set(starred), lambda m, r_, c: "*" if (r_, c) in m else ".")


def render_colouring(colouring):
    """One 0/1 row under the lexicographic column labels."""
    cols = ix.injective_indices(colouring.n, colouring.r)
    width = max(len(ix.format_index(c)) for c in cols) + 1
    head = "".join(ix.format_index(c).rjust(width) for c in cols)
    row = "".join(str(colouring.colour[c]).rjust(width) for c in cols)
    return head.rstrip() + "\n" + row.rstrip()
