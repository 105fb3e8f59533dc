"""Permutation and Koszul sign machinery for graded-commutative computations.

Everything here works with plain integers: a degree is an int, a permutation
is a tuple ``sigma`` with the convention that the permuted sequence is
``(v[sigma[0]], v[sigma[1]], ...)`` (0-based).  Signs are returned as
``Fraction(1)`` or ``Fraction(-1)`` so they slot directly into coefficient
arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

ONE = Fraction(1)
MINUS_ONE = Fraction(-1)


class GradedError(ValueError):
    """Domain error in the graded kernel (bad permutation, length mismatch...)."""


def unshuffles(k: int, n: int) -> list[tuple[int, ...]]:
    """All (k, n-k) unshuffles of {0..n-1} in lexicographic order.

    A (k, n-k) unshuffle is a permutation that is increasing on its first k
    positions and on its last n-k positions.  Exactly binomial(n, k) of them
    exist; they are indexed by the subset occupying the first block.
    """
    if k < 1 or k > n:
        raise GradedError(f"unshuffles: need 1 <= k <= n, got k={k}, n={n}")
    result = []
    universe = range(n)
    for left in combinations(universe, k):
        left_set = set(left)
        right = tuple(i for i in universe if i not in left_set)
        result.append(left + right)
    return result


def is_unshuffle(sigma: tuple[int, ...], k: int) -> bool:
    """Predicate form of the unshuffle property, used as a brute-force oracle."""
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        return False
    for i in range(n - 1):
        if i + 1 == k:
            continue
        if sigma[i] >= sigma[i + 1]:
            return False
    return True


def graded_sign(degrees, sigma) -> Fraction:
    """Combined permutation/Koszul sign for reordering graded wedge factors.

    Returns the sign s defined by
        v_1 ^ ... ^ v_n  =  s * v_{sigma(1)} ^ ... ^ v_{sigma(n)},
    where swapping adjacent homogeneous factors v, w costs -(-1)^{|v||w|}.
    Computed over inversions of sigma.
    """
    if len(degrees) != len(sigma):
        raise GradedError(
            f"graded_sign: {len(degrees)} degrees for a permutation of {len(sigma)}"
        )
    sign = 1
    n = len(sigma)
    for t in range(n):
        for u in range(t + 1, n):
            if sigma[t] > sigma[u]:
                # one inversion: factors sigma[u], sigma[t] crossed each other
                sign *= -1 if (degrees[sigma[t]] * degrees[sigma[u]]) % 2 == 0 else 1
    return Fraction(sign)


def koszul_sign(degrees, sigma) -> Fraction:
    """Pure Koszul sign epsilon(sigma): (-1)^{|v_i||v_j|} per inversion.

    This is graded_sign with the plain permutation sign divided out; it is the
    sign with which homogeneous factors of a graded-commutative product are
    reordered:  a_1 ... a_n = epsilon(sigma) * a_{sigma(1)} ... a_{sigma(n)}.
    """
    if len(degrees) != len(sigma):
        raise GradedError(
            f"koszul_sign: {len(degrees)} degrees for a permutation of {len(sigma)}"
        )
    sign = 1
    n = len(sigma)
    for t in range(n):
        for u in range(t + 1, n):
            if sigma[t] > sigma[u] and degrees[sigma[t]] % 2 and degrees[sigma[u]] % 2:
                sign = -sign
    return Fraction(sign)


def graded_sign_bubble(degrees, sigma) -> Fraction:
    """Independent graded_sign oracle: accumulate over adjacent transpositions."""
    if len(degrees) != len(sigma):
        raise GradedError("graded_sign_bubble: length mismatch")
    seq = list(sigma)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                da, db = degrees[seq[i]], degrees[seq[i + 1]]
                sign *= -1 if (da * db) % 2 == 0 else 1
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                changed = True
    return Fraction(sign)


def perm_sign(sigma) -> int:
    """Ordinary sign of a permutation."""
    sign = 1
    n = len(sigma)
    for t in range(n):
        for u in range(t + 1, n):
            if sigma[t] > sigma[u]:
                sign = -sign
    return sign
