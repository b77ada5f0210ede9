"""Dense matrices on tensor space and the two representations.

A :class:`TensorMatrix` is an n^r x n^r matrix over a coefficient ring with
rows and columns indexed by I(n,r) in lexicographic order.  The entry
accessor follows the row-superscript convention: ``A.get(i, j)`` is the
coefficient of row ``i`` in the image of basis column ``j``.

Operator order convention: with ``psi(d)`` the matrix whose (i, j) entry is
the diagram scalar of d (row = top row assignment, column = bottom row
assignment), diagram multiplication ``multiply(d1, d2) = (k, d3)`` matches

    matmul(psi(d1), psi(d2)) == n^k * psi(d3).

This is the fixed matrix-order reading of the opposite-algebra
representation, and it is pinned by the representation-law tests.
"""

from __future__ import annotations

from . import indices as ix
from .rings import Ring, RingElement


class ShapeMismatchError(ValueError):
    pass


def _raw(value):
    return value.value if isinstance(value, RingElement) else value


class TensorMatrix:
    """Dense exact matrix indexed by I(n,r) x I(n,r).

    ``data`` is a flat row-major list of raw ring values.  Instances are
    treated as immutable after construction; all operations return new
    matrices.
    """

    __slots__ = ("n", "r", "ring", "size", "data")

    def __init__(self, n, r, ring, data=None):
        self.n = n
        self.r = r
        self.ring = ring
        self.size = n**r
        if data is None:
            self.data = [ring.zero] * (self.size * self.size)
        else:
            if len(data) != self.size * self.size:
                raise ShapeMismatchError("data length does not match n^r")
            self.data = data

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zeros(n, r, ring):
        return TensorMatrix(n, r, ring)

    @staticmethod
    def identity(n, r, ring):
        m = TensorMatrix(n, r, ring)
        one = ring.one
        for k in range(m.size):
            m.data[k * m.size + k] = one
        return m

    @staticmethod
    def scalar(n, ring, value):
        """The unique element of the degree-zero algebra, a 1x1 matrix."""
        return TensorMatrix(n, 0, ring, [_raw(value)])

    # -- entry access ---------------------------------------------------------

    def rank_of(self, idx):
        return ix.index_rank(self.n, idx)

    def get(self, i, j):
        return self.data[self.rank_of(i) * self.size + self.rank_of(j)]

    def get_rc(self, ri, rj):
        return self.data[ri * self.size + rj]

    def entry(self, i, j):
        return self.ring.wrap(self.get(i, j))

    def row(self, i):
        ri = self.rank_of(i)
        return self.data[ri * self.size : (ri + 1) * self.size]

    def column(self, j):
        rj = self.rank_of(j)
        return self.data[rj :: self.size]

    # -- structure ------------------------------------------------------------

    def _check_same_shape(self, other):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        if (self.n, self.r) != (other.n, other.r):
            raise ShapeMismatchError("shape mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, TensorMatrix)
            and (self.n, self.r) == (other.n, other.r)
            and self.ring == other.ring
            and self.data == other.data
        )

    __hash__ = None  # mutable payload: matrices are compared, never hashed

    def is_zero(self):
        zero = self.ring.zero
        return all(v == zero for v in self.data)

    def add(self, other):
        self._check_same_shape(other)
        add = self.ring.add
        return TensorMatrix(
            self.n, self.r, self.ring,
            [add(a, b) for a, b in zip(self.data, other.data)],
        )

    def sub(self, other):
        self._check_same_shape(other)
        sub = self.ring.sub
        return TensorMatrix(
            self.n, self.r, self.ring,
            [sub(a, b) for a, b in zip(self.data, other.data)],
        )

    def scale(self, value):
        mul = self.ring.mul
        c = _raw(value)
        return TensorMatrix(self.n, self.r, self.ring, [mul(c, a) for a in self.data])

    def transpose(self):
        size = self.size
        data = [self.ring.zero] * (size * size)
        for i in range(size):
            base = i * size
            for j in range(size):
                data[j * size + i] = self.data[base + j]
        return TensorMatrix(self.n, self.r, self.ring, data)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)


def matmul(a, b):
    a._check_same_shape(b)
    ring = a.ring
    size = a.size
    zero = ring.zero
    add, mul = ring.add, ring.mul
    out = [zero] * (size * size)
    bd = b.data
    for i in range(size):
        arow = a.data[i * size : (i + 1) * size]
        orow = out
        base = i * size
        for k in range(size):
            aik = arow[k]
            if aik == zero:
                continue
            brow = bd[k * size : (k + 1) * size]
            if aik == ring.one:
                for j in range(size):
                    v = brow[j]
                    if v != zero:
                        orow[base + j] = add(orow[base + j], v)
            else:
                for j in range(size):
                    v = brow[j]
                    if v != zero:
                        orow[base + j] = add(orow[base + j], mul(aik, v))
    return TensorMatrix(a.n, a.r, ring, out)


def kronecker(a, b):
    """Kronecker product; the tensor degrees add."""
    if a.ring != b.ring or a.n != b.n:
        raise ValueError("ring or rank mismatch")
    ring = a.ring
    n, r = a.n, a.r + b.r
    out = TensorMatrix(n, r, ring)
    sa, sb = a.size, b.size
    size = out.size
    mul = ring.mul
    zero = ring.zero
    for i1 in range(sa):
        for j1 in range(sa):
            v1 = a.data[i1 * sa + j1]
            if v1 == zero:
                continue
            for i2 in range(sb):
                row = (i1 * sb + i2) * size + j1 * sb
                for j2 in range(sb):
                    v2 = b.data[i2 * sb + j2]
                    if v2 != zero:
                        out.data[row + j2] = mul(v1, v2)
    return out


def commutes(a, b):
    return matmul(a, b) == matmul(b, a)


# ---------------------------------------------------------------------------
# The two representations
# ---------------------------------------------------------------------------


def psi(d, n, ring):
    """Matrix of a diagram: entry (i, j) is 1 when the assignment sending
    the top row to i and the bottom row to j is constant on every block."""
    r = d.r
    m = TensorMatrix(n, r, ring)
    one = ring.one
    blocks = d.blocks
    size = m.size
    # walk over one value choice per block; each choice contributes one entry
    def assign(b, top, bot):
        if b == len(blocks):
            ri = ix.index_rank(n, tuple(top))
            rj = ix.index_rank(n, tuple(bot))
            m.data[ri * size + rj] = one
            return
        for v in range(1, n + 1):
            for vertex in blocks[b]:
                if vertex < r:
                    top[vertex] = v
                else:
                    bot[vertex - r] = v
            assign(b + 1, top, bot)

    assign(0, [0] * r, [0] * r)
    return m


def psi_scaled(sd, n, ring):
    """Specialise a ScaledDiagram: delta^k becomes from_int(n)^k."""
    coeff = ring.one
    nval = ring.from_int(n)
    for _ in range(sd.exponent):
        coeff = ring.mul(coeff, nval)
    return psi(sd.diagram, n, ring).scale(coeff)


def permutation_matrix(w, ring):
    """P(w) with entry 1 at (w(j), j) for each column j."""
    n = len(w)
    m = TensorMatrix(n, 1, ring)
    one = ring.one
    for j in range(1, n + 1):
        m.data[(w[j - 1] - 1) * n + (j - 1)] = one
    return m


def phi(w, n, r, ring):
    """The r-th Kronecker power of P(w), computed as a basis permutation."""
    if len(w) != n:
        raise ValueError("permutation size mismatch")
    m = TensorMatrix(n, r, ring)
    one = ring.one
    size = m.size
    for rj, j in enumerate(ix.all_indices(n, r)):
        ri = ix.index_rank(n, ix.act_left(w, j))
        m.data[ri * size + rj] = one
    return m


def left_act(w, a):
    return matmul(phi(w, a.n, a.r, a.ring), a)


def right_act(a, w):
    return matmul(a, phi(w, a.n, a.r, a.ring))


def psi_on_fixed_last(d, n, ring):
    """Restriction of psi(d) to the subspace with last tensor factor v_n.

    ``d`` has rank r+1; rows and columns of the result are indexed by
    I(n,r) via i |-> i . n.  Half-algebra diagrams fix the subspace setwise,
    so this is their matrix as endomorphisms of it.
    """
    r = d.r - 1
    full = psi(d, n, ring)
    m = TensorMatrix(n, r, ring)
    size = m.size
    for ri, i in enumerate(ix.all_indices(n, r)):
        for rj, j in enumerate(ix.all_indices(n, r)):
            m.data[ri * size + rj] = full.get(i + (n,), j + (n,))
    return m


# ---------------------------------------------------------------------------
# JSON serialisation
# ---------------------------------------------------------------------------


def matrix_to_json(m):
    fmt = m.ring.format_value
    rows = []
    for i in range(m.size):
        rows.append([fmt(v) for v in m.data[i * m.size : (i + 1) * m.size]])
    return {"n": m.n, "r": m.r, "ring": m.ring.name, "rows": rows}


def matrix_from_json(doc):
    ring = Ring.parse(doc["ring"])
    n, r = doc["n"], doc["r"]
    size = n**r
    rows = doc["rows"]
    if len(rows) != size or any(len(row) != size for row in rows):
        raise ShapeMismatchError("row data does not match n^r")
    data = [ring.parse_value(v) for row in rows for v in row]
    return TensorMatrix(n, r, ring, data)
