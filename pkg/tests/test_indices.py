import itertools
import random

from swdual import indices as ix


def test_lexicographic_order_and_ranks():
    idxs = ix.all_indices(3, 2)
    assert idxs == sorted(idxs)
    assert idxs[0] == (1, 1) and idxs[-1] == (3, 3)
    for k, idx in enumerate(idxs):
        assert ix.index_rank(3, idx) == k
        assert ix.index_from_rank(3, 2, k) == idx


def test_formatting():
    assert ix.format_index((4, 3, 2)) == "432"
    assert ix.format_index((4, 13, 2)) == "4,13,2"
    assert ix.parse_index("432") == (4, 3, 2)
    assert ix.parse_index("4,13,2") == (4, 13, 2)


def test_value_type_examples():
    # a b b c a b c with a,b,c distinct
    assert ix.value_type((1, 2, 2, 3, 1, 2, 3)) == ((1, 5), (2, 3, 6), (4, 7))
    assert ix.value_type((1, 1, 1)) == ((1, 2, 3),)
    assert ix.value_type((1, 2, 3)) == ((1,), (2,), (3,))


def test_weight_examples():
    assert ix.weight((1, 2, 1, 3), 3) == (2, 1, 1)
    assert ix.weight((2, 2, 2), 2) == (0, 3)


def test_actions_and_commutation():
    assert ix.act_left((2, 1), (1, 1, 2, 2)) == (2, 2, 1, 1)
    # transposing places 1,2 moves the value from place 1 to place 2
    assert ix.act_right((1, 2, 3), (2, 1, 3)) == (2, 1, 3)
    rng = random.Random(2)
    perms3 = ix.all_permutations(3)
    for _ in range(50):
        i = tuple(rng.randrange(1, 4) for _ in range(3))
        w = rng.choice(perms3)
        s = rng.choice(perms3)
        assert ix.act_left(w, ix.act_right(i, s)) == ix.act_right(ix.act_left(w, i), s)
        # orbit invariants
        assert ix.value_type(ix.act_left(w, i)) == ix.value_type(i)
        assert ix.weight(ix.act_right(i, s), 3) == ix.weight(i, 3)


def test_right_action_is_a_right_action():
    rng = random.Random(9)
    perms = ix.all_permutations(4)
    for _ in range(50):
        i = tuple(rng.randrange(1, 4) for _ in range(4))
        s, t = rng.choice(perms), rng.choice(perms)
        st = ix.perm_compose(t, s)  # apply s first, then t
        assert ix.act_right(ix.act_right(i, s), t) == ix.act_right(i, st)


def test_sharp_and_injective_indices():
    assert ix.sharp((1, 2, 1, 3)) == 3
    assert len(ix.injective_indices(5, 2)) == 20
    assert ix.injective_indices(2, 3) == []
    assert ix.injective_indices(3, 2) == [
        (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)
    ]


def test_alpha_slices():
    assert ix.slice_members(2, (1,), 1) == [(1,), (2,)]
    # element 12 of I'(3,2) lies in exactly the slices {12,32} and {12,13}
    assert ix.slice_members(3, (1, 2), 1) == [(1, 2), (3, 2)]
    assert ix.slice_members(3, (1, 2), 2) == [(1, 2), (1, 3)]
    for n, r in [(3, 2), (4, 2), (4, 3), (5, 2)]:
        slices = ix.alpha_slices(n, r)
        counts = {idx: 0 for idx in ix.injective_indices(n, r)}
        for (alpha, ctx), members in slices.items():
            assert len(members) == n - r + 1
            for m in members:
                counts[m] += 1
        assert set(counts.values()) == {r}


def test_omega_orbit_counts():
    _, reps = ix.omega_orbits(2, 1)
    assert len(reps) == 4
    _, reps = ix.omega_orbits(2, 2)
    assert len(reps) == 10
    # orbit of (12, 21) contains (21, 12)
    orbit_of, reps = ix.omega_orbits(2, 2)
    size = 4
    a = orbit_of[ix.index_rank(2, (1, 2)) * size + ix.index_rank(2, (2, 1))]
    b = orbit_of[ix.index_rank(2, (2, 1)) * size + ix.index_rank(2, (1, 2))]
    assert a == b


def test_value_type_count_matches_bounded_set_partitions():
    def partitions_into_at_most(r, n):
        count = 0
        for p in _set_partitions(list(range(r))):
            if len(p) <= n:
                count += 1
        return count

    def _set_partitions(elems):
        if not elems:
            yield []
            return
        first, rest = elems[0], elems[1:]
        for p in _set_partitions(rest):
            for k in range(len(p)):
                yield p[:k] + [[first] + p[k]] + p[k + 1 :]
            yield [[first]] + p

    for n in range(1, 5):
        for r in range(1, 5):
            seen = {ix.value_type(i) for i in ix.all_indices(n, r)}
            assert len(seen) == partitions_into_at_most(r, n)


def test_l_sets():
    assert ix.l_set(5, 2, 1) == [(1, 2), (1, 3), (1, 4), (1, 5)]
    assert ix.l_set(5, 2, 2) == [(1, 2)]
    assert set(ix.l_closure(5, 2, 1)) == {
        i for i in ix.injective_indices(5, 2) if 1 in i
    }
    assert set(ix.l_closure(5, 2, 2)) == {(1, 2), (2, 1)}


def test_renumberings():
    assert ix.embed_index((1, 2, 3), 2) == (1, 3, 4)
    assert ix.collapse_index((1, 3, 4), 2) == (1, 2, 3)
    for skip in range(1, 5):
        for idx in itertools.permutations(range(1, 4), 3):
            assert ix.collapse_index(ix.embed_index(idx, skip), skip) == idx


def test_w0_and_inverse():
    assert ix.w0(4) == (4, 3, 2, 1)
    for w in ix.all_permutations(4):
        assert ix.perm_compose(w, ix.perm_inverse(w)) == ix.perm_identity(4)
