import itertools

import pytest

from periodic_rpoly.rootsys import (
    CartanDatum,
    GroupTooLargeError,
    RootSystemError,
    act,
    all_elements,
    all_reflection_orders,
    bruhat_leq,
    build_root_system,
    is_reflection_order,
    reduced_words,
    reflection,
    reflection_order_from_reduced_word,
    rho_pairing,
    root_system,
    standard_cartan_matrix,
    validate_cartan_matrix,
    weyl_group_order,
)

DESK_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2"]


def labels(rs, seq):
    return [rs.roots[b] for b in seq]


def test_positive_roots_small_types():
    assert set(root_system("A2").positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert root_system("A1").positive_roots == [(1,)]
    assert len(root_system("B2").positive_roots) == 4


@pytest.mark.parametrize(
    "name, theta",
    [("A3", (1, 1, 1)), ("B3", (1, 2, 2)), ("C3", (2, 2, 1)), ("D4", (1, 2, 1, 1)),
     ("G2", (3, 2)), ("F4", (2, 3, 4, 2)), ("E6", (1, 2, 2, 3, 2, 1))],
)
def test_highest_root(name, theta):
    rs = root_system(name)
    assert rs.roots[rs.theta] == theta


@pytest.mark.parametrize("name", DESK_TYPES + ["F4"])
def test_root_count_and_group_order(name):
    rs = root_system(name)
    W = all_elements(rs)
    assert len(W) == weyl_group_order(rs.datum.family, rs.rank)
    # |Phi_+| = length of w0
    assert rs.longest_element.length == rs.n_pos
    assert max(w.length for w in W) == rs.n_pos


def test_g2_short_root_is_first():
    a = standard_cartan_matrix("G", 2)
    assert a[0][1] == -3 and a[1][0] == -1


def test_invalid_cartan_matrices_rejected():
    with pytest.raises(RootSystemError):
        validate_cartan_matrix(((2, -1), (0, 2)))
    with pytest.raises(RootSystemError):
        validate_cartan_matrix(((2, -2), (-2, 2)))  # affine A1
    with pytest.raises(RootSystemError):
        CartanDatum.parse("Q7")
    with pytest.raises(RootSystemError):
        root_system("D3")


def test_group_guard():
    with pytest.raises(GroupTooLargeError):
        all_elements(root_system("E8"))


def test_rho_pairing(a2):
    assert rho_pairing(a2, a2.coroots[a2.theta]) == 2
    assert rho_pairing(a2, (0, 0)) == 0
    for name in DESK_TYPES:
        rs = root_system(name)
        for i in range(1, rs.rank + 1):
            assert rho_pairing(rs, rs.coroots[rs.simple_root(i)]) == 1


def test_lengths(a2):
    assert a2.identity.length == 0
    assert a2.longest_element.length == 3
    s_theta = reflection(a2, a2.theta)
    assert s_theta.length == 3 == 2 * rho_pairing(a2, a2.coroots[a2.theta]) - 1


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_group_axioms(name):
    rs = root_system(name)
    W = all_elements(rs)
    for u in W[:8]:
        assert u * u.inv == rs.identity
        for v in W:
            assert (u * v).inv == v.inv * u.inv
            assert (u * v).length <= u.length + v.length
    for b in range(rs.n_pos):
        s = reflection(rs, b)
        assert s * s == rs.identity
        assert act(s, b) == rs.neg(b)


def test_reduced_word_round_trip():
    rs = root_system("B3")
    for w in all_elements(rs):
        assert rs.from_word(w.reduced_word) == w
        assert len(w.reduced_word) == w.length


def test_bruhat_examples(a2):
    s1, s2 = a2.s(1), a2.s(2)
    w0 = a2.longest_element
    assert all(bruhat_leq(a2.identity, w) for w in all_elements(a2))
    assert not bruhat_leq(w0, s1)
    assert bruhat_leq(s1, s2 * s1)
    assert not bruhat_leq(s1, s2)


def _subword_leq(u, v):
    word = v.reduced_word
    rs = v.rs
    for k in range(len(word) + 1):
        for sub in itertools.combinations(word, k):
            if rs.from_word(sub) == u:
                return True
    return False


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_bruhat_matches_subword_property(name):
    rs = root_system(name)
    W = all_elements(rs)
    for u in W:
        for v in W:
            assert bruhat_leq(u, v) == _subword_leq(u, v)


def test_orders_from_words(a2):
    assert labels(a2, reflection_order_from_reduced_word(a2, [1, 2, 1]).sequence) == [(1, 0), (1, 1), (0, 1)]
    assert labels(a2, reflection_order_from_reduced_word(a2, [2, 1, 2]).sequence) == [(0, 1), (1, 1), (1, 0)]
    a1 = root_system("A1")
    assert labels(a1, reflection_order_from_reduced_word(a1, [1]).sequence) == [(1,)]


def test_bad_words_rejected(a2):
    with pytest.raises(RootSystemError):
        reflection_order_from_reduced_word(a2, [1, 2])
    with pytest.raises(RootSystemError):
        reflection_order_from_reduced_word(a2, [1, 1, 2])


def _convex(rs, seq):
    pos = {b: i for i, b in enumerate(seq)}
    roots = [rs.roots[b] for b in range(rs.n_pos)]
    for a, b in itertools.permutations(range(rs.n_pos), 2):
        for x in range(1, 4):
            for y in range(1, 4):
                v = tuple(x * p + y * q for p, q in zip(roots[a], roots[b]))
                c = rs.index.get(v)
                if c is not None and not min(pos[a], pos[b]) < pos[c] < max(pos[a], pos[b]):
                    return False
    return True


@pytest.mark.parametrize("name, count", [("A1", 1), ("A2", 2), ("B2", 2), ("G2", 2), ("A3", 16)])
def test_reflection_orders_match_brute_force(name, count):
    rs = root_system(name)
    orders = all_reflection_orders(rs)
    assert len(orders) == count == len(reduced_words(rs.longest_element))
    brute = {p for p in itertools.permutations(range(rs.n_pos)) if _convex(rs, p)}
    assert brute == {o.sequence for o in orders}
    assert all(is_reflection_order(rs, p) for p in brute)


def test_b3_order_count():
    assert len(all_reflection_orders(root_system("B3"))) == 42


def test_systems_are_distinct_cache_keys():
    # G2 and A3 both have twelve roots; their elements must never compare equal
    g2, a3 = root_system("G2"), root_system("A3")
    assert g2.identity != a3.identity
    assert build_root_system(CartanDatum("G", 2)) is g2
