"""Partitions, z_lambda, and symmetric-group character tables.

Partitions are plain tuples of weakly decreasing positive integers.  The
character table is computed by the Murnaghan-Nakayama rule with memoization.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

Partition = tuple

CHAR_TABLE_BOUND = 8


def is_partition(parts) -> bool:
    t = tuple(parts)
    return all(isinstance(p, int) and p > 0 for p in t) and all(
        t[i] >= t[i + 1] for i in range(len(t) - 1))


def partition(parts) -> Partition:
    t = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p <= 0 for p in t):
        raise ValueError(f"parts must be positive: {parts}")
    return t


def parse_partition(text: str) -> Partition:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"partition syntax is [a,b,c]: got {text!r}")
    inner = s[1:-1].strip()
    if not inner:
        return ()
    return partition(int(p) for p in inner.split(","))


def format_partition(lam: Partition) -> str:
    return "[" + ",".join(str(p) for p in lam) + "]"


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """All partitions of n, in reverse-lexicographic order ((n) first)."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)

    def gen(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(n, n))


def z_of(lam: Partition) -> int:
    """prod_k k^{m_k} m_k! -- the centralizer order of cycle type lambda."""
    mult = {}
    for p in lam:
        mult[p] = mult.get(p, 0) + 1
    z = 1
    for k, m in mult.items():
        z *= k ** m * math.factorial(m)
    return z


def num_permutations_of_type(lam: Partition) -> int:
    n = sum(lam)
    return math.factorial(n) // z_of(lam)


def union(lam: Partition, mu: Partition) -> Partition:
    return tuple(sorted(lam + mu, reverse=True))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    out = [0] * lam[0]
    for p in lam:
        for j in range(p):
            out[j] += 1
    return tuple(out)


def _border_strips(lam: Partition, size: int):
    """Yield (remaining partition, height) for each removable border strip.

    Uses beta-numbers: removing a size-k strip moves one bead b down to b-k on
    the abacus; the height is the number of beads strictly between them.
    """
    lam = tuple(lam)
    ell = len(lam)
    beta = [lam[i] + (ell - 1 - i) for i in range(ell)]
    bset = set(beta)
    for b in beta:
        nb = b - size
        if nb < 0 or nb in bset:
            continue
        newbeta = sorted((x for x in beta if x != b), reverse=True)
        newbeta.append(nb)
        newbeta.sort(reverse=True)
        height = sum(1 for x in beta if nb < x < b)
        m = len(newbeta)
        newlam = tuple(newbeta[j] - (m - 1 - j) for j in range(m))
        yield tuple(x for x in newlam if x > 0), height


@lru_cache(maxsize=None)
def mn_character(lam: Partition, mu: Partition) -> int:
    """chi_lambda on the class of cycle type mu, by Murnaghan-Nakayama."""
    if sum(lam) != sum(mu):
        raise ValueError("partition sizes differ")
    if not lam:
        return 1
    k = mu[0]
    rest = mu[1:]
    return sum((-1) ** height * mn_character(smaller, rest)
               for smaller, height in _border_strips(lam, k))


def char_table(n: int, bound: int = CHAR_TABLE_BOUND) -> dict:
    """Map (lambda, mu) -> chi_lambda(g_mu) for lambda, mu |- n."""
    if n > bound:
        raise ValueError(f"char_table bound exceeded: {n} > {bound}")
    parts = partitions_of(n)
    return {(lam, mu): mn_character(lam, mu) for lam in parts for mu in parts}


def dimension(lam: Partition) -> int:
    """Dimension of the irreducible S_n module (hook length formula)."""
    n = sum(lam)
    if n == 0:
        return 1
    conj = conjugate(lam)
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= row - j + conj[j] - i - 1
    return math.factorial(n) // prod


def character_orthogonality_defect(n: int) -> Fraction:
    """Max |sum_mu chi_a(mu) chi_b(mu)/z_mu - delta_ab| over pairs a, b."""
    parts = partitions_of(n)
    worst = Fraction(0)
    for a in parts:
        for b in parts:
            s = sum(Fraction(mn_character(a, mu) * mn_character(b, mu), z_of(mu))
                    for mu in parts)
            worst = max(worst, abs(s - (1 if a == b else 0)))
    return worst
