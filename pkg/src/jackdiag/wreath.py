"""Wreath products B^{tensor n} x| S_n with Koszul signs.

Permutations are tuples p with p[i] = image of position i (0-indexed);
composition (p*q)(i) = p(q(i)).  A wreath element is a linear combination of
(labels, perm) pairs where labels[i] is the basis index of the dot sitting on
tensor slot i.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .frobenius import FrobAlgebra
from .partitions import Partition


def perm_id(n: int) -> tuple:
    return tuple(range(n))


def perm_mul(p: tuple, q: tuple) -> tuple:
    """(p*q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_sign(p: tuple) -> int:
    n = len(p)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
    return -1 if inv % 2 else 1


def cycle_type(p: tuple) -> Partition:
    n = len(p)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parts.append(length)
    return tuple(sorted(parts, reverse=True))


def cycles_of(p: tuple) -> list:
    """Cycles as lists of positions, each starting at its minimum."""
    n = len(p)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(cyc)
    return out


def w_lambda(lam: Partition) -> tuple:
    """A fixed permutation of cycle type lambda: descending cycles on
    consecutive blocks, each block cycled as (m, m-1, ..., 1)."""
    n = sum(lam)
    perm = list(range(n))
    offset = 0
    for m in lam:
        for i in range(m):
            perm[offset + i] = offset + ((i - 1) % m)
        offset += m
    return tuple(perm)


class WreathElement:
    """Linear combination of (labels, perm) with rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict):
        self.n = n
        clean = {}
        for (labels, perm), c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            key = (tuple(labels), tuple(perm))
            clean[key] = clean.get(key, Fraction(0)) + c
            if clean[key] == 0:
                del clean[key]
        self.terms = clean

    @staticmethod
    def unit(B: FrobAlgebra, n: int) -> "WreathElement":
        u = B.unit_index
        return WreathElement(n, {((u,) * n, perm_id(n)): Fraction(1)})

    @staticmethod
    def of_perm(B: FrobAlgebra, perm: tuple) -> "WreathElement":
        u = B.unit_index
        return WreathElement(len(perm), {((u,) * len(perm), tuple(perm)): Fraction(1)})

    def __add__(self, other):
        if other.n != self.n:
            raise ValueError("strand count mismatch")
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, Fraction(0)) + c
        return WreathElement(self.n, t)

    def scale(self, c) -> "WreathElement":
        return WreathElement(self.n, {k: v * Fraction(c)
                                      for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, WreathElement) and self.n == other.n \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"WreathElement(n={self.n}, {len(self.terms)} terms)"


def perm_act(B: FrobAlgebra, perm: tuple, labels: tuple):
    """sigma(c_1 (x) ... (x) c_n): slot sigma(i) receives c_i, with the Koszul
    sign of the reordering of odd factors."""
    n = len(labels)
    out = [None] * n
    for i, lab in enumerate(labels):
        out[perm[i]] = lab
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j] and B.parities[labels[i]] and B.parities[labels[j]]:
                sign = -sign
    return sign, tuple(out)


def wreath_mul(B: FrobAlgebra, a: WreathElement, b: WreathElement) -> WreathElement:
    """(b (x) sigma)(c (x) tau) = (b . sigma(c)) (x) sigma tau."""
    if a.n != b.n:
        raise ValueError("strand count mismatch")
    n = a.n
    out = {}
    for (lab1, sig), c1 in a.terms.items():
        for (lab2, tau), c2 in b.terms.items():
            sgn, moved = perm_act(B, sig, lab2)
            coeff0 = c1 * c2 * sgn
            # componentwise product with the interchange Koszul sign:
            # moving moved[j] left past lab1[i] for i > j
            inter = 1
            for j in range(n):
                if not B.parities[moved[j]]:
                    continue
                for i in range(j + 1, n):
                    if B.parities[lab1[i]]:
                        inter = -inter
            # expand slotwise products
            partials = [(coeff0 * inter, ())]
            for i in range(n):
                nxt = []
                prods = B.multiply(lab1[i], moved[i])
                for coef, pref in partials:
                    for k, c in prods.items():
                        nxt.append((coef * c, pref + (k,)))
                partials = nxt
            sigma_tau = perm_mul(sig, tau)
            for coef, labs in partials:
                key = (labs, sigma_tau)
                out[key] = out.get(key, Fraction(0)) + coef
    return WreathElement(n, out)


def conjugate(B: FrobAlgebra, a: WreathElement, u: tuple) -> WreathElement:
    """u a u^{-1} for a permutation u (as a dot-free wreath element)."""
    uel = WreathElement.of_perm(B, u)
    uinv = WreathElement.of_perm(B, perm_inv(u))
    return wreath_mul(B, wreath_mul(B, uel, a), uinv)


def symmetrizer(B: FrobAlgebra, n: int, antisymmetric: bool = False) -> WreathElement:
    """Young idempotent e_(n) (or e_(1^n)): 1/n! sum_sigma (sgn) sigma."""
    u = B.unit_index
    terms = {}
    for perm in itertools.permutations(range(n)):
        c = Fraction(1, math.factorial(n))
        if antisymmetric:
            c *= perm_sign(perm)
        terms[((u,) * n, perm)] = c
    return WreathElement(n, terms)


def rotate_element(B: FrobAlgebra, a: WreathElement) -> tuple:
    """Rotate a box diagram through pi: inverts and mirrors the permutation,
    reverses the dot tuple, and charges the Koszul sign of reversing the
    height order of the odd dots.

    Returns a new WreathElement; the caller flips the +/- sign of the class.
    """
    n = a.n
    rev = tuple(n - 1 - i for i in range(n))
    out = {}
    for (labels, perm), c in a.terms.items():
        new_perm = perm_mul(rev, perm_mul(perm_inv(perm), rev))
        new_labels = [None] * n
        for i, lab in enumerate(labels):
            # the dot on the strand entering bottom-i sits, after rotation, on
            # the strand whose bottom end is at mirrored image of perm[i]
            new_labels[n - 1 - perm[i]] = lab
        odd = sum(1 for lab in labels if B.parities[lab])
        sign = (-1) ** (odd * (odd - 1) // 2)
        key = (tuple(new_labels), new_perm)
        out[key] = out.get(key, Fraction(0)) + sign * c
    return WreathElement(n, out)
