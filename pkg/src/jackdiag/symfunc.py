"""The ring of symmetric functions with p, h, e, s bases and exact conversions.

Internally the canonical basis is p: products there are concatenations of
parts, so multiplication is trivial and exact.  Conversions into h and e use
the Newton recursions obtained from the generating-function identities
P(z) = H'(z)/H(z) and P(-z) = E'(z)/E(z); conversions into s use the
character table (p_mu = sum_lambda chi_lambda(mu) s_lambda).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coeffring import Coeff
from .partitions import (CHAR_TABLE_BOUND, Partition, mn_character,
                         partitions_of, union, z_of)

BASES = ("p", "h", "e", "s")


class SymElement:
    """A symmetric function tagged with the basis its coefficients refer to."""

    __slots__ = ("basis", "coeffs", "nvars")

    def __init__(self, basis: str, coeffs: dict, nvars: int = 1):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.nvars = nvars
        clean = {}
        for lam, c in coeffs.items():
            if not isinstance(c, Coeff):
                c = Coeff.const(c, nvars)
            if c.is_zero():
                continue
            clean[tuple(lam)] = clean.get(tuple(lam), Coeff.zero(nvars)) + c
        self.coeffs = {k: v for k, v in clean.items() if not v.is_zero()}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def unit(basis: str = "p", nvars: int = 1) -> "SymElement":
        return SymElement(basis, {(): Coeff.one(nvars)}, nvars)

    @staticmethod
    def zero(basis: str = "p", nvars: int = 1) -> "SymElement":
        return SymElement(basis, {}, nvars)

    @staticmethod
    def gen(basis: str, lam, nvars: int = 1) -> "SymElement":
        return SymElement(basis, {tuple(lam): Coeff.one(nvars)}, nvars)

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "SymElement") -> "SymElement":
        if other.basis != self.basis:
            other = convert(other, self.basis)
        t = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            t[lam] = t.get(lam, Coeff.zero(self.nvars)) + c
        return SymElement(self.basis, t, self.nvars)

    def __sub__(self, other: "SymElement") -> "SymElement":
        return self + other.scale(-1)

    def scale(self, c) -> "SymElement":
        return SymElement(self.basis,
                          {lam: v * c for lam, v in self.coeffs.items()},
                          self.nvars)

    def __eq__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        a, b = self, other
        if a.basis != b.basis:
            b = convert(b, a.basis)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.basis, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((sum(lam) for lam in self.coeffs), default=0)

    def coefficient(self, lam) -> Coeff:
        return self.coeffs.get(tuple(lam), Coeff.zero(self.nvars))

    def __repr__(self):
        return f"SymElement({self.render()!r})"

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for lam in sorted(self.coeffs, key=lambda l: (sum(l), l)):
            c = self.coeffs[lam]
            label = self.basis + "[" + ",".join(map(str, lam)) + "]"
            parts.append(f"({c.render()})*{label}")
        return " + ".join(parts)


# -- per-part expansions in the p basis --------------------------------------


@lru_cache(maxsize=None)
def _h_in_p(n: int) -> tuple:
    """h_n = sum_{lam |- n} p_lam / z_lam, as ((lam, Fraction), ...)."""
    return tuple((lam, Fraction(1, z_of(lam))) for lam in partitions_of(n))


@lru_cache(maxsize=None)
def _e_in_p(n: int) -> tuple:
    """e_n = sum_{lam |- n} (-1)^{n - l(lam)} p_lam / z_lam."""
    return tuple((lam, Fraction((-1) ** (n - len(lam)), z_of(lam)))
                 for lam in partitions_of(n))


@lru_cache(maxsize=None)
def _p_in_h(n: int) -> tuple:
    """p_n in the h basis via Newton: p_n = n h_n - sum_{i<n} h_i p_{n-i}."""
    if n == 0:
        return (((), Fraction(1)),)
    acc = {(n,): Fraction(n)}
    for i in range(1, n):
        for lam, c in _p_in_h(n - i):
            key = union(lam, (i,))
            acc[key] = acc.get(key, Fraction(0)) - c
            if acc[key] == 0:
                del acc[key]
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _p_in_e(n: int) -> tuple:
    """p_n in the e basis via n e_n = sum_i (-1)^{i-1} p_i e_{n-i}."""
    if n == 0:
        return (((), Fraction(1)),)
    acc = {(n,): Fraction((-1) ** (n - 1) * n)}
    for i in range(1, n):
        # reindexed Newton sum: the e_i-factor carries sign (-1)^{i-1}
        for lam, c in _p_in_e(n - i):
            key = union(lam, (i,))
            acc[key] = acc.get(key, Fraction(0)) + ((-1) ** (i - 1)) * c
            if acc[key] == 0:
                del acc[key]
    return tuple(acc.items())


def _mult_expand(per_part, lam: Partition) -> dict:
    """Expand a product over parts of lam, multiplying in a concatenative basis."""
    acc = {(): Fraction(1)}
    for part in lam:
        nxt = {}
        for mu1, c1 in acc.items():
            for mu2, c2 in per_part(part):
                key = union(mu1, mu2)
                nxt[key] = nxt.get(key, Fraction(0)) + c1 * c2
        acc = nxt
    return acc


@lru_cache(maxsize=None)
def _s_in_p(lam: Partition) -> tuple:
    """s_lam = sum_mu chi_lam(mu)/z_mu p_mu."""
    n = sum(lam)
    return tuple((mu, Fraction(mn_character(lam, mu), z_of(mu)))
                 for mu in partitions_of(n))


def _to_p(x: SymElement) -> SymElement:
    if x.basis == "p":
        return x
    nv = x.nvars
    acc = {}
    for lam, c in x.coeffs.items():
        if x.basis == "s":
            expansion = _s_in_p(lam)
        elif x.basis == "h":
            expansion = tuple(_mult_expand(_h_in_p, lam).items())
        else:
            expansion = tuple(_mult_expand(_e_in_p, lam).items())
        for mu, r in expansion:
            acc[mu] = acc.get(mu, Coeff.zero(nv)) + c * r
    return SymElement("p", acc, nv)


def _from_p(x: SymElement, target: str, bound: int = CHAR_TABLE_BOUND) -> SymElement:
    if target == "p":
        return x
    nv = x.nvars
    acc = {}
    for mu, c in x.coeffs.items():
        if target == "s":
            n = sum(mu)
            if n > bound:
                raise ValueError(f"s-conversion degree bound exceeded: {n} > {bound}")
            expansion = tuple((lam, Fraction(mn_character(lam, mu)))
                              for lam in partitions_of(n))
        elif target == "h":
            expansion = tuple(_mult_expand(_p_in_h, mu).items())
        else:
            expansion = tuple(_mult_expand(_p_in_e, mu).items())
        for lam, r in expansion:
            if r == 0:
                continue
            acc[lam] = acc.get(lam, Coeff.zero(nv)) + c * r
    return SymElement(target, acc, nv)


def convert(x: SymElement, target: str, bound: int = CHAR_TABLE_BOUND) -> SymElement:
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if x.basis == target:
        return x
    return _from_p(_to_p(x), target, bound)


def sym_mul(x: SymElement, y: SymElement) -> SymElement:
    """Product in Sym, returned in the basis of x."""
    xp, yp = _to_p(x), _to_p(y)
    nv = x.nvars
    acc = {}
    for lam, c1 in xp.coeffs.items():
        for mu, c2 in yp.coeffs.items():
            key = union(lam, mu)
            acc[key] = acc.get(key, Coeff.zero(nv)) + c1 * c2
    return convert(SymElement("p", acc, nv), x.basis)


def jacobi_trudi(lam: Partition) -> SymElement:
    """det(h_{lam_i - i + j}) expanded in the h basis (h_0 = 1, h_{<0} = 0)."""
    from itertools import permutations

    ell = len(lam)
    if ell == 0:
        return SymElement.unit("h")
    acc = {}
    for sigma in permutations(range(ell)):
        sign = 1
        seen = [False] * ell
        perm = list(sigma)
        # compute permutation sign by counting inversions
        inv = sum(1 for i in range(ell) for j in range(i + 1, ell)
                  if perm[i] > perm[j])
        sign = (-1) ** inv
        indices = []
        ok = True
        for i in range(ell):
            m = lam[i] - (i + 1) + (sigma[i] + 1)
            if m < 0:
                ok = False
                break
            if m > 0:
                indices.append(m)
        if not ok:
            continue
        key = tuple(sorted(indices, reverse=True))
        acc[key] = acc.get(key, Fraction(0)) + sign
    return SymElement("h", {k: Coeff.const(v) for k, v in acc.items() if v != 0})
