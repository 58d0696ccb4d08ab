import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nplectic.scalars import (
    CapExceeded,
    Permutation,
    Poly,
    bell,
    bell_identity_check,
    enumerate_shuffles,
    format_poly,
    koszul_sign,
    parse_poly,
    shuffles,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


# ---------------------------------------------------------------------------
# permutations and shuffles
# ---------------------------------------------------------------------------

def brute_shuffles(block_sizes):
    """Oracle: filter all permutations for ascending images inside each block."""
    n = sum(block_sizes)
    edges = list(itertools.accumulate((0,) + tuple(block_sizes)))
    out = []
    for images in itertools.permutations(range(1, n + 1)):
        ok = all(
            images[a] < images[a + 1]
            for lo, hi in zip(edges, edges[1:])
            for a in range(lo, hi - 1)
        )
        if ok:
            out.append(images)
    return sorted(out)


@pytest.mark.parametrize("blocks", [(2, 1), (1, 2), (2, 2), (3, 1), (1, 1, 1), (2, 1, 2)])
def test_shuffles_match_bruteforce(blocks):
    got = [p.images for p in enumerate_shuffles(blocks)]
    assert got == brute_shuffles(blocks)


def test_shuffle_counts():
    assert len(enumerate_shuffles((2, 1))) == 3
    assert len(enumerate_shuffles((1,))) == 1
    assert enumerate_shuffles((1,)).perms[0] == Permutation.identity(1)
    assert len(enumerate_shuffles((2, 2))) == 6
    for p, q in [(1, 3), (2, 3), (3, 3)]:
        import math
        assert len(shuffles(p, q)) == math.comb(p + q, p)


def test_shuffle_order_is_lexicographic():
    images = [p.images for p in enumerate_shuffles((2, 2))]
    assert images == sorted(images)


def test_shuffle_cap():
    with pytest.raises(CapExceeded):
        enumerate_shuffles((7, 6))
    # a custom cap is honored
    assert len(enumerate_shuffles((7, 6), cap=13)) > 0


def test_permutation_compose_and_inverse():
    rng = random.Random(5)
    for _ in range(40):
        k = rng.randint(1, 6)
        s = Permutation(tuple(rng.sample(range(1, k + 1), k)))
        t = Permutation(tuple(rng.sample(range(1, k + 1), k)))
        st_ = s.compose(t)
        for a in range(1, k + 1):
            assert st_(a) == s(t(a))
        assert s.compose(s.inverse()) == Permutation.identity(k)
        assert s.sign() * t.sign() == st_.sign()


# ---------------------------------------------------------------------------
# Koszul signs
# ---------------------------------------------------------------------------

def koszul_by_adjacent_swaps(perm, degrees):
    """Oracle: bubble-sort the images, one (-1)^(pq) per adjacent swap."""
    seq = list(perm.images)
    sign = 1
    changed = True
    while changed:
        changed = False
        for a in range(len(seq) - 1):
            if seq[a] > seq[a + 1]:
                p, q = degrees[seq[a] - 1], degrees[seq[a + 1] - 1]
                if (p * q) % 2:
                    sign = -sign
                seq[a], seq[a + 1] = seq[a + 1], seq[a]
                changed = True
    return sign


def test_koszul_examples():
    swap = Permutation((2, 1))
    assert koszul_sign(swap, (1, 1)) == -1
    assert koszul_sign(swap, (1, 2)) == 1
    assert koszul_sign(Permutation.identity(4), (1, 2, 3, 4)) == 1
    cycle = Permutation((2, 3, 1))  # 1 -> 2 -> 3 -> 1
    assert koszul_sign(cycle, (1, 1, 1)) == 1


def test_koszul_matches_adjacent_swap_oracle():
    rng = random.Random(11)
    for _ in range(200):
        k = rng.randint(1, 6)
        perm = Permutation(tuple(rng.sample(range(1, k + 1), k)))
        degrees = tuple(rng.randint(0, 3) for _ in range(k))
        assert koszul_sign(perm, degrees) == koszul_by_adjacent_swaps(perm, degrees)


def test_koszul_reduces_to_sign_in_odd_degrees():
    rng = random.Random(3)
    for _ in range(50):
        k = rng.randint(1, 6)
        perm = Permutation(tuple(rng.sample(range(1, k + 1), k)))
        assert koszul_sign(perm, (1,) * k) == perm.sign()


def test_koszul_composition_rule():
    # sign(s o t; v) = sign(s; v) * sign(t; s.v) where (s.v)_a = v_{s(a)}
    rng = random.Random(7)
    for _ in range(200):
        k = rng.randint(2, 6)
        s = Permutation(tuple(rng.sample(range(1, k + 1), k)))
        t = Permutation(tuple(rng.sample(range(1, k + 1), k)))
        degrees = tuple(rng.randint(0, 3) for _ in range(k))
        lhs = koszul_sign(s.compose(t), degrees)
        rhs = koszul_sign(s, degrees) * koszul_sign(t, s.permute(degrees))
        assert lhs == rhs


# ---------------------------------------------------------------------------
# Bell numbers
# ---------------------------------------------------------------------------

def count_set_partitions(k):
    """Oracle: enumerate set partitions of {0..k-1} by restricted growth."""
    if k == 0:
        return 1
    count = 0
    for labels in itertools.product(range(k), repeat=k - 1):
        word = (0,) + labels
        if all(word[i] <= max(word[:i]) + 1 for i in range(1, k)):
            count += 1
    return count


def test_bell_values():
    assert bell(0) == 1
    assert bell(3) == 5
    assert bell(5) == 52


def test_bell_against_partition_count():
    for k in range(7):
        assert bell(k) == count_set_partitions(k)


def test_bell_identity():
    for k in range(3, 11):
        assert bell_identity_check(k)


def test_bell_cap():
    with pytest.raises(CapExceeded):
        bell(10, cap=9)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def rand_poly(rng, nvars, deg=3):
    terms = {}
    for _ in range(rng.randint(0, 5)):
        expo = [0] * nvars
        for _ in range(rng.randint(0, deg)):
            expo[rng.randrange(nvars)] += 1
        terms[tuple(expo)] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return Poly(nvars, terms)


def test_poly_ring_axioms_randomized():
    rng = random.Random(23)
    for _ in range(150):
        nvars = rng.randint(1, 3)
        a, b, c = (rand_poly(rng, nvars) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Poly.zero(nvars)


@given(rationals, rationals, rationals)
def test_zero_variable_polys_are_rationals(p, q, r):
    a, b, c = (Poly.const(0, v) for v in (p, q, r))
    assert (a * b + c).constant_value() == p * q + r


def test_poly_diff_product_rule():
    rng = random.Random(9)
    for _ in range(100):
        nvars = rng.randint(1, 3)
        a, b = rand_poly(rng, nvars), rand_poly(rng, nvars)
        i = rng.randrange(nvars)
        assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


def test_poly_diff_example():
    x = Poly.variable(2, 0)
    assert (x * x).diff(0) == 2 * x


def test_poly_format_and_parse_roundtrip():
    rng = random.Random(31)
    for _ in range(100):
        nvars = rng.randint(1, 4)
        p = rand_poly(rng, nvars)
        assert parse_poly(format_poly(p), nvars) == p


def test_poly_parse_examples():
    p = parse_poly("2*x^2*y - 1/3*y + 4", 2)
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    assert p == 2 * x * x * y - Fraction(1, 3) * y + 4
    assert parse_poly("-x", 1) == -Poly.variable(1, 0)
    assert parse_poly("0", 3) == Poly.zero(3)
    with pytest.raises(ValueError):
        parse_poly("q + 1", 2)


def test_poly_homogeneous_components():
    p = parse_poly("x^2 + x*y + x + 3", 2)
    comps = p.homogeneous_components()
    assert sorted(comps) == [0, 1, 2]
    assert comps[2] == parse_poly("x^2 + x*y", 2)
    total = Poly.zero(2)
    for q in comps.values():
        total = total + q
    assert total == p
