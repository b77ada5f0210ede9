import random

import pytest

from swdual import diagrams as dg
from swdual import indices as ix
from swdual import tensor as tn
from swdual.rings import Ring

Q = Ring.rationals()
Z6 = Ring.modular(6)


def test_psi_of_p_alpha_is_identity_kron_j_kron_identity():
    n, r = 2, 3
    for alpha in (1, 2, 3):
        m = tn.psi(dg.generator_p(r, alpha), n, Q)
        factors = [tn.TensorMatrix.identity(n, 1, Q)] * r
        factors[alpha - 1] = tn.TensorMatrix(n, 1, Q, [Q.one] * (n * n))
        expected = factors[0]
        for f in factors[1:]:
            expected = tn.kronecker(expected, f)
        assert m == expected


def test_psi_of_pp_is_diagonal_value_match():
    n, r = 3, 2
    m = tn.psi(dg.generator_pp(r, 1, 2), n, Q)
    for i in ix.all_indices(n, r):
        for j in ix.all_indices(n, r):
            want = Q.one if i == j and i[0] == i[1] else Q.zero
            assert m.get(i, j) == want


def test_psi_identity_diagram():
    assert tn.psi(dg.identity_diagram(2), 3, Q) == tn.TensorMatrix.identity(3, 2, Q)


def test_phi_entries():
    w = (2, 1)
    m = tn.phi(w, 2, 1, Q)
    assert m.get((2,), (1,)) == Q.one and m.get((1,), (2,)) == Q.one
    assert m.get((1,), (1,)) == Q.zero
    m2 = tn.phi(w, 2, 2, Q)
    assert m2.get((2, 2), (1, 1)) == Q.one
    assert tn.phi(ix.perm_identity(3), 3, 2, Q) == tn.TensorMatrix.identity(3, 2, Q)
    with pytest.raises(ValueError):
        tn.phi((1, 2), 3, 1, Q)


def test_phi_inverse_and_kronecker_power():
    w = (3, 1, 2)
    assert tn.matmul(tn.phi(w, 3, 2, Q), tn.phi(ix.perm_inverse(w), 3, 2, Q)) == (
        tn.TensorMatrix.identity(3, 2, Q)
    )
    p = tn.permutation_matrix(w, Q)
    assert tn.kronecker(p, p) == tn.phi(w, 3, 2, Q)


def test_matmul_over_z6():
    ones = tn.TensorMatrix(2, 1, Z6, [Z6.one] * 4)
    twos = tn.matmul(ones, ones)
    assert all(v == 2 for v in twos.data)


def test_left_right_actions():
    rng = random.Random(1)
    n, r = 3, 2
    a = tn.TensorMatrix(n, r, Q, [Q.from_int(rng.randrange(-3, 4)) for _ in range(81)])
    assert tn.left_act(ix.perm_identity(n), a) == a
    w = (2, 3, 1)
    left = tn.left_act(w, a)
    winv = ix.perm_inverse(w)
    for i in ix.all_indices(n, r):
        for j in ix.all_indices(n, r):
            assert left.get(i, j) == a.get(ix.act_left(winv, i), j)
    v = (3, 1, 2)
    assert tn.right_act(tn.left_act(w, a), v) == tn.left_act(w, tn.right_act(a, v))


def test_representation_law_exhaustive_r2():
    """psi(d1) psi(d2) = n^k psi(d3) over all 225 diagram pairs, two rings."""
    diagrams = dg.enumerate_diagrams(2)
    for n in (2, 3):
        for ring in (Q, Z6):
            mats = {d: tn.psi(d, n, ring) for d in diagrams}
            for d1 in diagrams:
                for d2 in diagrams:
                    out = dg.multiply(d1, d2)
                    got = tn.matmul(mats[d1], mats[d2])
                    want = tn.psi_scaled(out, n, ring)
                    assert got == want, (n, ring.name, d1.format(), d2.format())


def test_bimodule_commutation():
    exhaustive = [(2, 1), (2, 2), (3, 1), (3, 2)]
    for n, r in exhaustive:
        for w in ix.all_permutations(n):
            pw = tn.phi(w, n, r, Q)
            for d in dg.enumerate_diagrams(r):
                assert tn.commutes(pw, tn.psi(d, n, Q)), (n, r, w, d.format())
    rng = random.Random(3)
    for n, r, trials in [(3, 3, 30), (4, 2, 40)]:
        diagrams = dg.enumerate_diagrams(r)
        perms = ix.all_permutations(n)
        for _ in range(trials):
            w = rng.choice(perms)
            d = rng.choice(diagrams)
            assert tn.commutes(tn.phi(w, n, r, Q), tn.psi(d, n, Q))


def test_phi_is_a_homomorphism():
    for n in (2, 3, 4):
        for r in (1, 2):
            perms = ix.all_permutations(n)
            for w1 in perms:
                for w2 in perms:
                    assert tn.matmul(tn.phi(w1, n, r, Q), tn.phi(w2, n, r, Q)) == (
                        tn.phi(ix.perm_compose(w1, w2), n, r, Q)
                    )


def test_half_diagrams_fix_the_subspace():
    """psi of a half diagram maps the v_n-capped subspace into itself."""
    n, r = 3, 2
    sub = {i + (n,) for i in ix.all_indices(n, r)}
    for d in dg.enumerate_diagrams(r + 1):
        if not dg.is_half_algebra_member(d):
            continue
        m = tn.psi(d, n, Q)
        for i in sub:
            for j in ix.all_indices(n, r + 1):
                if j not in sub and m.get(i, j) != Q.zero:
                    raise AssertionError(
                        "half diagram %s leaks off the subspace" % d.format()
                    )


def test_scalar_degree_zero():
    m = tn.TensorMatrix.scalar(4, Q, Q.from_int(7))
    assert m.size == 1 and m.get((), ()) == Q.from_int(7)
    assert tn.phi((2, 1), 2, 0, Q) == tn.TensorMatrix.scalar(2, Q, Q.one)


def test_shape_and_ring_mismatch_errors():
    a = tn.TensorMatrix.identity(2, 1, Q)
    b = tn.TensorMatrix.identity(2, 2, Q)
    with pytest.raises(tn.ShapeMismatchError):
        a.add(b)
    c = tn.TensorMatrix.identity(2, 1, Z6)
    with pytest.raises(ValueError):
        a.add(c)


def test_json_round_trip():
    rng = random.Random(8)
    for ring in (Q, Z6, Ring.integers()):
        m = tn.TensorMatrix(
            2, 2, ring, [ring.from_int(rng.randrange(-5, 6)) for _ in range(16)]
        )
        doc = tn.matrix_to_json(m)
        assert doc["ring"] == ring.name
        assert tn.matrix_from_json(doc) == m


def test_json_golden_file():
    import json
    import os

    path = os.path.join(
        os.path.dirname(__file__), "fixtures", "matrix_psi_p1_n2.json"
    )
    with open(path) as fh:
        doc = json.load(fh)
    m = tn.psi(dg.generator_p(2, 1), 2, Q)
    assert tn.matrix_to_json(m) == doc["matrix"]
    assert tn.matrix_from_json(doc["matrix"]) == m
