"""Membership predicates and structure maps for the centraliser algebra.

Working over an arbitrary coefficient ring, an n^r x n^r matrix lies in the
centraliser of the diagram action exactly when it satisfies three
predicates: equal slice sums (G), value-type preservation (H), and
constancy on simultaneous place-permutation orbits (S).  This module
implements those predicates, the restriction map to degree r-1, the block
view, special invariants, and the mutually inverse excision/inflation maps
between special invariants and one rank lower.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import indices as ix
from .tensor import TensorMatrix, matmul


class NotInvariantError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Generalised doubly-stochastic matrices (square, raw-value rows)
# ---------------------------------------------------------------------------


def is_gds(ring, rows):
    """Common value of all row and column sums, or None if they differ."""
    m = len(rows)
    if any(len(row) != m for row in rows):
        raise ValueError("matrix must be square")
    if m == 0:
        return ring.zero
    s = ring.sum(rows[0])
    for row in rows[1:]:
        if ring.sum(row) != s:
            return None
    for j in range(m):
        if ring.sum(row[j] for row in rows) != s:
            return None
    return s


def gds_iff_commutes_with_j(ring, rows):
    """Evaluate both sides of the all-ones-matrix characterisation (n > 1)."""
    m = len(rows)
    if m <= 1:
        raise ValueError("lemma requires n > 1")
    gds = is_gds(ring, rows) is not None
    # J*M has the column sums of M constant down each column; M*J the row sums
    col_sums = [ring.sum(rows[i][j] for i in range(m)) for j in range(m)]
    row_sums = [ring.sum(rows[i]) for i in range(m)]
    jm = [[col_sums[j] for j in range(m)] for _ in range(m)]
    mj = [[row_sums[i] for _ in range(m)] for i in range(m)]
    return gds, jm == mj


# ---------------------------------------------------------------------------
# Membership in the centraliser
# ---------------------------------------------------------------------------


@dataclass
class MembershipReport:
    in_G: bool
    in_H: bool
    in_S: bool
    first_violation: dict | None = field(default=None)

    @property
    def in_E(self):
        return self.in_G and self.in_H and self.in_S

    def to_json(self):
        return {
            "in_G": self.in_G,
            "in_H": self.in_H,
            "in_S": self.in_S,
            "in_E": self.in_E,
            "first_violation": self.first_violation,
        }


def _vt_ids(n, r):
    ids = {}
    out = []
    for idx in ix.all_indices(n, r):
        vt = ix.value_type(idx)
        out.append(ids.setdefault(vt, len(ids)))
    return out


def check_membership(a, stop_early=False):
    """Evaluate the three centraliser predicates on a matrix.

    The first failing witness (if any) is recorded: for G the offending
    (alpha, p, q) with both disagreeing sums, for H the nonzero entry at a
    value-type mismatch, for S the orbit with two different values.
    """
    n, r, ring = a.n, a.r, a.ring
    report = MembershipReport(True, True, True)
    idxs = ix.all_indices(n, r)
    size = a.size
    vt = _vt_ids(n, r)

    # H: value-type preservation
    zero = ring.zero
    for ri in range(size):
        row = a.data[ri * size : (ri + 1) * size]
        vti = vt[ri]
        for rj in range(size):
            if vt[rj] != vti and row[rj] != zero:
                report.in_H = False
                if report.first_violation is None:
                    report.first_violation = {
                        "kind": "H",
                        "row": ix.format_index(idxs[ri]),
                        "col": ix.format_index(idxs[rj]),
                    }
                if stop_early:
                    return report
                break
        if not report.in_H:
            break

    # S: constancy on simultaneous place-permutation orbits
    orbit_of, reps = ix.omega_orbits(n, r)
    values = [None] * len(reps)
    for ri in range(size):
        base = ri * size
        for rj in range(size):
            oid = orbit_of[base + rj]
            v = a.data[base + rj]
            if values[oid] is None:
                values[oid] = v
            elif values[oid] != v:
                report.in_S = False
                if report.first_violation is None:
                    report.first_violation = {
                        "kind": "S",
                        "row": ix.format_index(idxs[ri]),
                        "col": ix.format_index(idxs[rj]),
                    }
                if stop_early:
                    return report
                break
        if not report.in_S:
            break

    # G: all slice sums for a context pair agree
    lower = ix.all_indices(n, r - 1) if r >= 1 else []
    for alpha in range(1, r + 1):
        for p in lower:
            for q in lower:
                sums = []
                for i in range(1, n + 1):
                    row_idx = ix.replace_place(p, alpha, i)
                    sums.append(
                        ring.sum(
                            a.get(row_idx, ix.replace_place(q, alpha, j))
                            for j in range(1, n + 1)
                        )
                    )
                for j in range(1, n + 1):
                    col_idx = ix.replace_place(q, alpha, j)
                    sums.append(
                        ring.sum(
                            a.get(ix.replace_place(p, alpha, i), col_idx)
                            for i in range(1, n + 1)
                        )
                    )
                if any(s != sums[0] for s in sums[1:]):
                    report.in_G = False
                    if report.first_violation is None:
                        report.first_violation = {
                            "kind": "G",
                            "alpha": alpha,
                            "p": ix.format_index(p),
                            "q": ix.format_index(q),
                        }
                    if stop_early:
                        return report
        if not report.in_G:
            break
    return report


def is_invariant(a):
    return check_membership(a, stop_early=True).in_E


# ---------------------------------------------------------------------------
# Slices, restriction, blocks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Slice:
    """One n-vector of entries: place alpha runs over 1..n on the starred
    side while the other side keeps a fixed index."""

    alpha: int
    row_context: tuple
    col_context: tuple
    orientation: str  # "row-star" or "col-star"
    fixed: int  # the non-starred value at place alpha


def slice_entries(a, sl):
    if sl.orientation == "row-star":
        col = ix.replace_place(sl.col_context, sl.alpha, sl.fixed)
        return [
            a.get(ix.replace_place(sl.row_context, sl.alpha, i), col)
            for i in range(1, a.n + 1)
        ]
    row = ix.replace_place(sl.row_context, sl.alpha, sl.fixed)
    return [
        a.get(row, ix.replace_place(sl.col_context, sl.alpha, j))
        for j in range(1, a.n + 1)
    ]


def slice_sum(a, sl):
    return a.ring.sum(slice_entries(a, sl))


def common_b(a, p, q):
    """The shared slice-sum value b^p_q of an invariant.

    All 2n slice sums attached to the contexts (p, q) at the last place are
    computed and compared; disagreement raises ``NotInvariantError``.
    """
    r = a.r
    alpha = r
    sums = []
    for i in range(1, a.n + 1):
        sums.append(slice_sum(a, Slice(alpha, p, q, "col-star", i)))
    for j in range(1, a.n + 1):
        sums.append(slice_sum(a, Slice(alpha, p, q, "row-star", j)))
    if any(s != sums[0] for s in sums[1:]):
        raise NotInvariantError(
            "slice sums disagree at alpha=%d p=%s q=%s"
            % (alpha, ix.format_index(p), ix.format_index(q))
        )
    return sums[0]


def block(a, i, j):
    """The (i, j) block A^i_j as a TensorMatrix of degree r-1.

    Rows and columns are re-indexed by the forgetful map dropping the
    leading term of each multi-index.
    """
    if a.r < 1:
        raise ValueError("degree-zero matrices have no blocks")
    n, r, ring = a.n, a.r, a.ring
    out = TensorMatrix(n, r - 1, ring)
    size = out.size
    # lexicographic layout: block (i, j) is a contiguous size x size window
    row0 = (i - 1) * size
    col0 = (j - 1) * size
    for bi in range(size):
        src = (row0 + bi) * a.size + col0
        out.data[bi * size : (bi + 1) * size] = a.data[src : src + size]
    return out


def restrict(a, validate=True):
    """The restriction: the matrix of common slice sums, one degree lower.

    Computed as a block row sum; when ``validate`` is set, a second block
    row and a block column are summed independently and compared, so a
    non-invariant input is rejected instead of silently restricted.
    """
    n, r, ring = a.n, a.r, a.ring
    if r < 1:
        raise ValueError("cannot restrict a degree-zero matrix")
    out = block(a, 1, 1)
    for j in range(2, n + 1):
        out = out.add(block(a, 1, j))
    if validate:
        second = block(a, n, 1)
        for j in range(2, n + 1):
            second = second.add(block(a, n, j))
        colsum = block(a, 1, 1)
        for i in range(2, n + 1):
            colsum = colsum.add(block(a, i, 1))
        if second != out or colsum != out:
            raise NotInvariantError("input not invariant: block sums disagree")
    return out


def restrict_tower(a, k, validate=False):
    """Iterated restriction rho^k."""
    for _ in range(k):
        a = restrict(a, validate=validate)
    return a


# ---------------------------------------------------------------------------
# Special invariants and the excision/inflation isomorphisms
# ---------------------------------------------------------------------------


def is_special(a, i, j):
    """True when every nonzero entry matches the places of value i in its
    row with the places of value j in its column."""
    zero = a.ring.zero
    size = a.size
    idxs = ix.all_indices(a.n, a.r)
    for ri, row_idx in enumerate(idxs):
        lam_i = ix.places_of(row_idx, i)
        base = ri * size
        for rj, col_idx in enumerate(idxs):
            if a.data[base + rj] != zero and lam_i != ix.places_of(col_idx, j):
                return False
    return True


def zero_rowcol_implies_special(a, i, j):
    """Check the zero block row/column hypothesis and, when it holds,
    assert that the matrix is special with tag (i, j).

    Returns True when the hypothesis held (all blocks except A^i_j in block
    row i and block column j vanish).
    """
    n = a.n
    hypothesis = True
    for q in range(1, n + 1):
        if q != j and not block(a, i, q).is_zero():
            hypothesis = False
    for p in range(1, n + 1):
        if p != i and not block(a, p, j).is_zero():
            hypothesis = False
    if hypothesis and not is_special(a, i, j):
        raise NotInvariantError("zero row/column hypothesis held but matrix is not special")
    return hypothesis


def eta(a, p, q):
    """Excise rows containing p and columns containing q, renumbering the
    surviving values order-preservingly onto {1..n-1}."""
    n, r, ring = a.n, a.r, a.ring
    out = TensorMatrix(n - 1, r, ring)
    size = out.size
    for bi, row_idx in enumerate(ix.all_indices(n - 1, r)):
        src_row = ix.embed_index(row_idx, p)
        for bj, col_idx in enumerate(ix.all_indices(n - 1, r)):
            out.data[bi * size + bj] = a.get(src_row, ix.embed_index(col_idx, q))
    return out


def theta(c, p, q):
    """Inflate an invariant of rank n-1 to a special invariant with tag
    (p, q) at rank n.

    The entry at (u, v) vanishes unless the places of p in u equal the
    places of q in v; stripping those common places leaves a pair of
    indices over the remaining values, looked up in the restriction tower
    rho^k(c) after renumbering.
    """
    n1, r, ring = c.n, c.r, c.ring
    n = n1 + 1
    towers = [c]
    for _ in range(r):
        towers.append(restrict(towers[-1], validate=False))
    out = TensorMatrix(n, r, ring)
    size = out.size
    idxs = ix.all_indices(n, r)
    for ri, u in enumerate(idxs):
        lam_p = ix.places_of(u, p)
        base = ri * size
        stripped_u = tuple(v for v in u if v != p)
        k = len(lam_p)
        if k:
            u_bar = ix.collapse_index(stripped_u, p)
        else:
            u_bar = ix.collapse_index(u, p)
        tower = towers[k]
        for rj, v in enumerate(idxs):
            if ix.places_of(v, q) != lam_p:
                continue
            stripped_v = tuple(x for x in v if x != q)
            v_bar = ix.collapse_index(stripped_v, q)
            out.data[base + rj] = tower.get(u_bar, v_bar)
    return out


def theta_rho_commute_check(c, p, q):
    """Verify restrict(theta(C)) == theta(restrict(C))."""
    return restrict(theta(c, p, q), validate=False) == theta(restrict(c), p, q)


# ---------------------------------------------------------------------------
# Half-algebra identification
# ---------------------------------------------------------------------------


def commutes_with_half_algebra(a, half_psi_matrices):
    """Whether a matrix on I(n,r), viewed on the v_n-fixed subspace,
    commutes with every supplied restricted diagram matrix."""
    return all(matmul(a, m) == matmul(m, a) for m in half_psi_matrices)


def half_algebra_invariants_iso(a, half_psi_matrices):
    """Both sides of the half-algebra identification for one matrix.

    Returns ``(commutes, special)`` where ``commutes`` says the matrix
    centralises the restricted half-algebra action and ``special`` says the
    re-indexed matrix is an invariant that fixes the value n on both sides.
    The two must agree for every matrix.
    """
    comm = commutes_with_half_algebra(a, half_psi_matrices)
    special = is_invariant(a) and is_special(a, a.n, a.n)
    return comm, special
