"""Division-free extension and decomposition of invariants.

Everything here runs over an arbitrary commutative coefficient ring: a
forced entry is always a known slice sum minus already-known entries, so
only ring addition and subtraction are used.  This is what makes composite
moduli such as Z/4 and Z/6 valid test rings.

``extend`` produces the unique invariant one degree up that restricts to a
given invariant and agrees with an assignment on the free extension
pattern; ``decompose`` splits an invariant into special summands along its
last block row, one per block column, steered by an assignment on the free
decomposition pattern.  Free values left unspecified default to zero.
Every construction is verified before it is returned; a verification
failure raises :class:`ConstructionFailure` and indicates a bug, not user
error.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import indices as ix
from . import patterns as pt
from .invariants import (
    NotInvariantError,
    block,
    check_membership,
    eta,
    is_special,
    restrict,
    theta,
    zero_rowcol_implies_special,
)
from .tensor import TensorMatrix, matmul, phi


class ConstructionFailure(RuntimeError):
    """A forced slice closed with a mismatched sum, or a verification of a
    constructed invariant failed."""


@dataclass(frozen=True)
class Assignment:
    """Values for the free entries of a pattern."""

    pattern: pt.FreePattern
    values: dict

    def as_dict(self):
        return dict(self.values)


def _as_value_map(ring, f):
    if f is None:
        return {}
    if isinstance(f, Assignment):
        f = f.values
    out = {}
    for key, value in f.items():
        out[key] = value.value if hasattr(value, "value") else value
    return out


_POISON = object()


# ---------------------------------------------------------------------------
# Initialisation: entries forced by the degree below
# ---------------------------------------------------------------------------


def _duplicate_place(idx):
    """A place whose value also occurs earlier, or None if injective."""
    seen = {}
    for place, v in enumerate(idx, start=1):
        if v in seen:
            return place
        seen[v] = place
    return None


def initialise(b, validate=True):
    """Fill every entry of the degree r+1 matrix that the restriction pins.

    Value-type mismatches are zero; an entry whose row has a repeated value
    copies the restriction entry at the pair with one duplicate place
    dropped.  Entries with both indices injective stay ``None``.  The input
    must itself be an invariant (checked unless the caller has already
    verified it).
    """
    if validate and not check_membership(b).in_E:
        raise NotInvariantError("input to initialise is not an invariant")
    n, r1, ring = b.n, b.r, b.ring
    r = r1 + 1
    size = n**r
    data = [None] * (size * size)
    zero = ring.zero
    idxs = ix.all_indices(n, r)
    vts = [ix.value_type(i) for i in idxs]
    dup = [_duplicate_place(i) for i in idxs]
    for ri, i in enumerate(idxs):
        base = ri * size
        vti = vts[ri]
        for rj, j in enumerate(idxs):
            if vti != vts[rj]:
                data[base + rj] = zero
            elif dup[ri] is not None:
                beta = dup[ri]
                data[base + rj] = b.get(ix.drop_place(i, beta), ix.drop_place(j, beta))
    return data


# ---------------------------------------------------------------------------
# extend
# ---------------------------------------------------------------------------


def extend(b, f=None, verify=True):
    """The unique extension of an invariant with the given free values.

    ``b`` lives in degree r-1; ``f`` maps entries of the free pattern for
    degree r (pairs of injective multi-indices) to ring values, defaulting
    to zero.  The result restricts to ``b`` and returns the pattern values
    verbatim.
    """
    ring = b.ring
    n, r = b.n, b.r + 1
    f = _as_value_map(ring, f)
    pattern = pt.build_f(n, r)
    allowed = set(pattern.entries)
    for key in f:
        if key not in allowed:
            raise ValueError("assignment key %r is not a free-pattern entry" % (key,))

    if n <= r:
        a = _extend_direct(b)
    elif r == 1:
        a = _extend_rank_one(b, f)
    else:
        a = _extend_recursive(b, f)

    if verify:
        _verify_extension(a, b, f)
    return a


def _verify_extension(a, b, f):
    report = check_membership(a)
    if not report.in_E:
        raise ConstructionFailure("extension fails membership: %r" % (report.first_violation,))
    if restrict(a, validate=False) != b:
        raise ConstructionFailure("extension does not restrict to the input")
    for key, value in f.items():
        if a.get(*key) != value:
            raise ConstructionFailure("free entry %r not returned verbatim" % (key,))


def _extend_direct(b):
    """Unique extension for n <= r: initialisation plus one forced pass."""
    n, ring = b.n, b.ring
    r = b.r + 1
    data = initialise(b, validate=False)
    size = n**r
    if n == r:
        # each remaining entry is the sole injective member of its last-place
        # column slice; everything else in the slice is already filled
        sub = ring.sub
        for i in ix.injective_indices(n, r):
            ri = ix.index_rank(n, i)
            p = ix.drop_place(i, r)
            for j in ix.injective_indices(n, r):
                q = ix.drop_place(j, r)
                total = b.get(p, q)
                for t in range(1, n + 1):
                    if t == j[-1]:
                        continue
                    known = data[ri * size + ix.index_rank(n, q + (t,))]
                    total = sub(total, known)
                data[ri * size + ix.index_rank(n, j)] = total
    if any(v is None for v in data):
        raise ConstructionFailure("direct extension left undetermined entries")
    return TensorMatrix(n, r, ring, data)


def _extend_rank_one(b, f):
    """Extension from degree zero: the base free pattern {(i,j): i,j >= 2}."""
    n, ring = b.n, b.ring
    s = b.data[0]
    sub = ring.sub
    rows = [[None] * n for _ in range(n)]
    for i in range(2, n + 1):
        for j in range(2, n + 1):
            rows[i - 1][j - 1] = f.get(((i,), (j,)), ring.zero)
    for i in range(2, n + 1):
        rows[i - 1][0] = ring.sub(s, ring.sum(rows[i - 1][1:]))
    for j in range(1, n + 1):
        rows[0][j - 1] = ring.sub(s, ring.sum(rows[i][j - 1] for i in range(1, n)))
    # the corner is forced twice; both forcings must agree
    if ring.sum(rows[0]) != s:
        raise ConstructionFailure("rank-one corner entry is inconsistent")
    data = [v for row in rows for v in row]
    return TensorMatrix(n, 1, ring, data)


def _extend_recursive(b, f):
    """Extension for n > r >= 2 via the block-row construction.

    The free values on the block-row part of the pattern translate into a
    decomposition of ``b``; the remaining free values are hit by choosing
    the per-block inflation assignments block by block, assigning each
    shared pattern position to the largest block containing it and
    subtracting the contributions of earlier blocks.
    """
    ring = b.ring
    n, r = b.n, b.r + 1
    f_d = {}
    for (j, p, q) in pt.build_d(n, r - 1).entries:
        key = ((n,) + p, (j,) + q)
        f_d[(j, p, q)] = f.get(key, ring.zero)
    blocks = decompose(b, f_d, verify=False)

    lower = pt.build_f(n - 1, r).entries
    labels = {}
    owner = {}
    for j in range(1, n + 1):
        lab = {pt.theta_label(y, n, n, j): y for y in lower}
        labels[j] = lab
        for x in lab:
            owner[x] = j  # increasing j: the largest block owns the position
    running = TensorMatrix.zeros(n, r, ring)
    for j in range(1, n + 1):
        g = {}
        for x, y in labels[j].items():
            if owner[x] == j:
                target = f.get(x, ring.zero)
                g[y] = ring.sub(target, running.get(*x))
            else:
                g[y] = ring.zero
        c = eta(blocks[j - 1], n, j)
        a_j = theta(extend(c, g, verify=False), n, j)
        running = running.add(a_j)
    return running


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------


def _swap_perm(n, i):
    tau = list(range(1, n + 1))
    tau[i - 1], tau[n - 1] = n, i
    return tuple(tau)


def decompose(a, f=None, basis="last-row", verify=True):
    """Split an invariant into special summands along a block row or column.

    For the default last block row the summands ``[A(1), ..., A(n)]`` have
    the j-th one special with tag (n, j); with ``basis="row:i"`` the tags
    are (i, j), and with ``basis="col:j"`` the k-th summand is special with
    tag (k, j).  The summands sum to ``a``, restrict blockwise to the
    blocks of ``a``, and agree with ``f`` on the free decomposition
    pattern (relabelled accordingly for non-default bases).
    """
    n = a.n
    if basis in ("last-row", "row:%d" % n):
        return _decompose_last_row(a, f, verify)
    if basis.startswith("row:"):
        i = int(basis[4:])
        tau = _swap_perm(n, i)
        conj = matmul(phi(tau, n, a.r, a.ring), matmul(a, phi(tau, n, a.r, a.ring)))
        f2 = None
        if f:
            f2 = {
                (tau[k - 1], ix.act_left(tau, p), ix.act_left(tau, q)): v
                for (k, p, q), v in _as_value_map(a.ring, f).items()
            }
        parts = _decompose_last_row(conj, f2, verify)
        ptau = phi(tau, n, a.r, a.ring)
        out = [None] * n
        for j, part in enumerate(parts, start=1):
            out[tau[j - 1] - 1] = matmul(ptau, matmul(part, ptau))
        return out
    if basis.startswith("col:"):
        j = int(basis[4:])
        f2 = None
        if f:
            f2 = {(k, q, p): v for (k, p, q), v in _as_value_map(a.ring, f).items()}
        parts = decompose(a.transpose(), f2, basis="row:%d" % j, verify=verify)
        return [part.transpose() for part in parts]
    raise ValueError("unknown basis %r" % (basis,))


def _decompose_last_row(a, f, verify):
    n, r, ring = a.n, a.r, a.ring
    if r < 1:
        raise ValueError("decomposition needs degree >= 1")
    f = _as_value_map(ring, f)
    d_pattern = pt.build_d(n, r)
    allowed = set(d_pattern.entries)
    for key in f:
        if key not in allowed:
            raise ValueError("assignment key %r is not a decomposition-pattern entry" % (key,))
    blocks_of_a = [block(a, n, j) for j in range(1, n + 1)]

    if n <= r + 1:
        summands = [
            theta(extend(eta(blocks_of_a[j - 1], n, j), None, verify=False), n, j)
            for j in range(1, n + 1)
        ]
    else:
        summands = [None] * n
        residual = a
        for j in range(n, r + 1, -1):
            g = {
                y: f.get((j,) + x, ring.zero)
                for x, y in (
                    (pt.theta_label(y0, n, n, j), y0)
                    for y0 in pt.build_f(n - 1, r).entries
                )
            }
            a_j = theta(extend(eta(blocks_of_a[j - 1], n, j), g, verify=False), n, j)
            summands[j - 1] = a_j
            residual = residual.sub(a_j)
        for j in range(r + 1, 1, -1):
            g = _replay_forced_assignment(a, blocks_of_a[j - 1], residual, j, f)
            a_j = theta(extend(eta(blocks_of_a[j - 1], n, j), g, verify=False), n, j)
            _check_column_agreement(a_j, residual, n, r, j)
            summands[j - 1] = a_j
            residual = residual.sub(a_j)
        summands[0] = residual
        if not zero_rowcol_implies_special(residual, n, 1):
            raise ConstructionFailure(
                "final decomposition residual has a nonzero off block"
            )

    if verify:
        _verify_decomposition(a, summands, f)
    return summands


def _verify_decomposition(a, summands, f):
    n, r = a.n, a.r
    total = summands[0]
    for s in summands[1:]:
        total = total.add(s)
    if total != a:
        raise ConstructionFailure("decomposition summands do not add up")
    for j, s in enumerate(summands, start=1):
        if not is_special(s, n, j):
            raise ConstructionFailure("summand %d is not special" % j)
        if not check_membership(s).in_E:
            raise ConstructionFailure("summand %d fails membership" % j)
        if restrict(s, validate=False) != block(a, n, j):
            raise ConstructionFailure("summand %d does not restrict to its block" % j)
    for (j, p, q), value in f.items():
        if summands[j - 1].get(p, q) != value:
            raise ConstructionFailure(
                "decomposition free entry %r not returned verbatim" % ((j, p, q),)
            )


def _insert_place(ctx, alpha, t):
    return ctx[: alpha - 1] + (t,) + ctx[alpha - 1 :]


def _replay_forced_assignment(a, b_j, residual, j, f):
    """Recover the full per-block assignment for a constrained block.

    Replays the modified colouring along each pattern row of the block:
    entries containing j vanish by specialness, prescribed-column entries
    are read from the running difference, free columns take their
    assignment values, and every cascade-forced column is a slice sum of
    the block restriction minus known entries.
    """
    n, r, ring = a.n, a.r, a.ring
    colouring = pt.modified_colouring(n, r, j)
    lab = {pt.theta_label(y, n, n, j): y for y in pt.build_f(n - 1, r).entries}
    row_cols = {}
    for (u, v), y in lab.items():
        row_cols.setdefault(u, {})[v] = y
    sub = ring.sub
    g = {}
    for u in sorted(row_cols):
        cols = row_cols[u]
        vals = {}
        for ev in colouring.events:
            v = ev.index
            if ev.initial:
                vals[v] = ring.zero if j in v else residual.get(u, v)
            elif ev.colour == 1:
                if v in cols:
                    vals[v] = f.get((j, u, v), ring.zero)
                else:
                    vals[v] = _POISON
            else:
                alpha, ctx = ev.forcing_slice
                total = b_j.get(ix.drop_place(u, alpha), ctx)
                used = set(ctx)
                for t in range(1, n + 1):
                    if t == v[alpha - 1] or t in used:
                        continue  # t in ctx would duplicate: zero by value type
                    other = vals[_insert_place(ctx, alpha, t)]
                    if other is _POISON:
                        total = _POISON
                        break
                    total = sub(total, other)
                vals[v] = total
        for v, y in cols.items():
            value = vals.get(v, _POISON)
            if value is _POISON:
                raise ConstructionFailure(
                    "forced chain for block %d row %s column %s passed through "
                    "an undetermined entry" % (j, ix.format_index(u), ix.format_index(v))
                )
            g[y] = value
    return g


def _check_column_agreement(a_j, residual, n, r, j):
    """The chosen summand must agree with the running difference on every
    prescribed column, over all rows avoiding the value n."""
    rows = [u for u in ix.all_indices(n, r) if n not in u]
    for v in ix.l_set(n, r, j - 1):
        if j in v:
            continue
        for u in rows:
            if a_j.get(u, v) != residual.get(u, v):
                raise ConstructionFailure(
                    "block %d disagrees with the residual at (%s, %s)"
                    % (j, ix.format_index(u), ix.format_index(v))
                )


# ---------------------------------------------------------------------------
# Prescribed rows / columns
# ---------------------------------------------------------------------------


class IncompatiblePrescription(ValueError):
    pass


def extend_with_prescription(b, prescribed, orientation="row", basis=None, verify=True):
    """Some extension agreeing with fully prescribed lines.

    ``prescribed`` maps full row indices inside the basis block row
    (default the last one) to complete row vectors over I(n,r); with
    ``orientation="col"`` it maps column indices to column vectors.  The
    free pattern entries lying inside the prescribed lines are read off
    verbatim, the remaining free entries default to zero, and the
    construction is checked against the prescription afterwards; any
    mismatch means the prescription was not compatible.
    """
    ring = b.ring
    n, r = b.n, b.r + 1
    if orientation == "col":
        bt = b.transpose()
        at = extend_with_prescription(bt, prescribed, "row", basis=basis, verify=verify)
        return at.transpose()
    if orientation != "row":
        raise ValueError("orientation must be 'row' or 'col'")
    if basis is not None and basis != n:
        tau = _swap_perm(n, basis)
        conj_b = matmul(phi(tau, n, b.r, ring), matmul(b, phi(tau, n, b.r, ring)))
        moved = {}
        for u, vector in prescribed.items():
            vector = [x.value if hasattr(x, "value") else x for x in vector]
            moved[ix.act_left(tau, tuple(u))] = [
                vector[ix.index_rank(n, ix.act_left(tau, v))]
                for v in ix.all_indices(n, r)
            ]
        out = extend_with_prescription(conj_b, moved, "row", verify=verify)
        return matmul(phi(tau, n, r, ring), matmul(out, phi(tau, n, r, ring)))
    pattern = pt.build_f(n, r)
    cols_by_row = {}
    for (u, v) in pattern.entries:
        cols_by_row.setdefault(u, set()).add(v)
    f = {}
    norm = {}
    for u, vector in prescribed.items():
        u = tuple(u)
        if u[0] != n:
            raise ValueError("prescribed rows must lie in the basis block row")
        vector = [x.value if hasattr(x, "value") else x for x in vector]
        if len(vector) != n**r:
            raise ValueError("prescribed row has wrong length")
        norm[u] = vector
        for v in cols_by_row.get(u, ()):
            f[(u, v)] = vector[ix.index_rank(n, v)]
    a = extend(b, f, verify=verify)
    for u, vector in norm.items():
        got = a.row(u)
        if got != vector:
            bad = next(
                k for k, (x, y) in enumerate(zip(got, vector)) if x != y
            )
            raise IncompatiblePrescription(
                "prescribed row %s disagrees at column %s"
                % (
                    ix.format_index(u),
                    ix.format_index(ix.index_from_rank(n, r, bad)),
                )
            )
    return a


# ---------------------------------------------------------------------------
# Expressing invariants in the permutation span
# ---------------------------------------------------------------------------


class NotInSpanError(ValueError):
    pass


def read_off_coefficients(a):
    """Coefficients x_w with A = sum of x_w phi(w), read at degree r = n.

    The column 1,2,...,n meets each permutation matrix in a distinct row,
    so the row w(1)...w(n) of that column carries exactly x_w.  The result
    is validated by exact reconstruction.
    """
    if a.r != a.n:
        raise ValueError("read-off needs degree equal to the rank")
    return _read_off(a)


def _read_off(a):
    n, r, ring = a.n, a.r, a.ring
    base_col = tuple(range(1, n + 1)) + (1,) * (r - n)
    coeffs = {}
    for w in ix.all_permutations(n):
        value = a.get(ix.act_left(w, base_col), base_col)
        if value != ring.zero:
            coeffs[w] = value
    _check_reconstruction(a, coeffs)
    return coeffs


def _check_reconstruction(a, coeffs):
    total = TensorMatrix.zeros(a.n, a.r, a.ring)
    for w, x in coeffs.items():
        total = total.add(phi(w, a.n, a.r, a.ring).scale(x))
    if total != a:
        raise NotInSpanError("matrix is not the claimed permutation combination")


def lift_permutation(wbar, j):
    """The permutation of {1..n} sending j to n and acting as ``wbar`` on
    the rest through the order-preserving renumberings."""
    n = len(wbar) + 1
    w = [0] * n
    w[j - 1] = n
    for t in range(1, n):
        w[ix.embed_avoiding(t, j) - 1] = wbar[t - 1]
    return tuple(w)


def express_in_permutation_span(a, verify=True):
    """Exact coefficients expressing an invariant in the span of the
    Kronecker powers of permutation matrices, over any ring.

    For degree at least the rank the coefficients are read off directly.
    Below that the invariant is decomposed into special summands whose
    excisions live one rank lower; their recursive expressions lift back
    through the inflation, which sends the power of a permutation fixing
    nothing relevant to the power of its lift.  No ring division occurs.
    """
    n, r, ring = a.n, a.r, a.ring
    if n == 1 or r == 0:
        coeffs = {ix.perm_identity(n): a.data[0]} if a.data[0] != ring.zero else {}
        _check_reconstruction(a, coeffs)
        return coeffs
    if r >= n:
        return _read_off(a)
    coeffs = {}
    summands = decompose(a, None, verify=False)
    for j in range(1, n + 1):
        inner = express_in_permutation_span(eta(summands[j - 1], n, j), verify=False)
        for wbar, x in inner.items():
            w = lift_permutation(wbar, j)
            acc = ring.add(coeffs.get(w, ring.zero), x)
            coeffs[w] = acc
    coeffs = {w: x for w, x in coeffs.items() if x != ring.zero}
    if verify:
        _check_reconstruction(a, coeffs)
    return coeffs


# ---------------------------------------------------------------------------
# Kernel of the restriction map
# ---------------------------------------------------------------------------


def kernel_of_rho_dimension(n, r, ring):
    """dim ker(rho) over a field, computed two independent ways.

    The rank oracle gives dim E(n,r) - dim E(n,r-1); the free-pattern size
    must match exactly, else an error flags a bug.
    """
    from .verify import centraliser_dimension

    if not ring.is_field():
        raise ValueError("kernel dimension requires a field")
    by_rank = centraliser_dimension(n, r, ring) - centraliser_dimension(n, r - 1, ring)
    by_pattern = len(pt.build_f(n, r))
    if by_rank != by_pattern:
        raise ConstructionFailure(
            "kernel dimension mismatch: rank oracle %d, pattern %d"
            % (by_rank, by_pattern)
        )
    return by_rank
