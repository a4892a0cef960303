"""The algebraic oracle: rank-one lattice Heisenberg algebra, normal ordering,
Fock space, the Macdonald/Jack pairings, presentation identities, closed-form
graded dimensions, and the dg check for the Jack limit.

The lattice has a single generator v with <v,v> = d, the graded dimension of
the Frobenius algebra in play.  Elements are kept in normal form with all
lowering generators to the left of all raising generators.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffring import Coeff, RationalFunction, rf_equal
from .partitions import Partition, partitions_of, union, z_of
from .symfunc import SymElement, convert


class Lattice:
    """Rank-one lattice with self-pairing a graded dimension."""

    __slots__ = ("self_pairing",)

    def __init__(self, self_pairing: Coeff):
        if not self_pairing.has_nonneg_integer_coeffs():
            raise ValueError("self-pairing must be a graded dimension "
                             "(nonnegative integer coefficients)")
        self.self_pairing = self_pairing

    @staticmethod
    def of_algebra(B) -> "Lattice":
        return Lattice(B.graded_dim())

    @property
    def nvars(self) -> int:
        return self.self_pairing.nvars


class HeisElement:
    """Normal form sum of c * p^-_{lam_minus} p^+_{lam_plus}."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict, nvars: int = 1):
        clean = {}
        for (lm, lp), c in terms.items():
            if not isinstance(c, Coeff):
                c = Coeff.const(c, nvars)
            if c.is_zero():
                continue
            key = (tuple(lm), tuple(lp))
            clean[key] = clean.get(key, Coeff.zero(nvars)) + c
        self.terms = {k: v for k, v in clean.items() if not v.is_zero()}
        self.nvars = nvars

    @staticmethod
    def one(nvars: int = 1) -> "HeisElement":
        return HeisElement({((), ()): Coeff.one(nvars)}, nvars)

    def __add__(self, other: "HeisElement") -> "HeisElement":
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, Coeff.zero(self.nvars)) + c
        return HeisElement(t, self.nvars)

    def scale(self, c) -> "HeisElement":
        return HeisElement({k: v * c for k, v in self.terms.items()}, self.nvars)

    def __eq__(self, other):
        return isinstance(other, HeisElement) and self.terms == other.terms

    def __repr__(self):
        bits = []
        for (lm, lp), c in sorted(self.terms.items()):
            bits.append(f"({c.render()}) p-{list(lm)} p+{list(lp)}")
        return "HeisElement(" + (" + ".join(bits) or "0") + ")"


def _mul_lowering(h: HeisElement, n: int, L: Lattice) -> HeisElement:
    """Right-multiply a normal-form element by p_n^-.

    p^+_m p^-_n = p^-_n p^+_m + [p^+_n, p^-_n]-terms; moving p^-_n left past
    each equal raising part produces delta * n * theta_n(d).
    """
    nv = h.nvars
    comm = L.self_pairing.theta(n) * Coeff.const(n, L.nvars)
    out = {}

    def add(key, c):
        out[key] = out.get(key, Coeff.zero(nv)) + c

    for (lm, lp), c in h.terms.items():
        # p^-_n commutes through p^+ parts, once per matching part producing
        # the commutator term with the remaining raising parts intact.
        m_n = sum(1 for p in lp if p == n)
        add((union(lm, (n,)), lp), c)
        if m_n:
            shorter = list(lp)
            shorter.remove(n)
            add((lm, tuple(shorter)), c * comm * Coeff.const(m_n, nv))
    return HeisElement(out, nv)


def _mul_raising(h: HeisElement, n: int) -> HeisElement:
    out = {}
    for (lm, lp), c in h.terms.items():
        key = (lm, union(lp, (n,)))
        out[key] = out.get(key, Coeff.zero(h.nvars)) + c
    return HeisElement(out, h.nvars)


def normal_order(word, L: Lattice) -> HeisElement:
    """Normal-order a word of signed power sums.

    The word is a list of (sign, n) pairs with sign '+' or '-', read left to
    right as a product of generators p_n^{sign}.
    """
    h = HeisElement.one(L.nvars)
    for sign, n in word:
        if n < 1:
            raise ValueError("power sum index must be positive")
        if sign == "+":
            h = _mul_raising(h, n)
        elif sign == "-":
            h = _mul_lowering(h, n, L)
        else:
            raise ValueError(f"bad sign {sign!r}")
    return h


def heis_mul(a: HeisElement, b: HeisElement, L: Lattice) -> HeisElement:
    """Product in the Heisenberg double, re-normal-ordered."""
    nv = a.nvars
    out = HeisElement({}, nv)
    for (lm2, lp2), c2 in b.terms.items():
        for (lm1, lp1), c1 in a.terms.items():
            # multiply out p^-_{lm1} p^+_{lp1} . p^-_{lm2} p^+_{lp2}
            h = HeisElement({(tuple(lm1), tuple(lp1)): Coeff.one(nv)}, nv)
            for n in lm2:
                h = _mul_lowering(h, n, L)
            for n in lp2:
                h = _mul_raising(h, n)
            out = out + h.scale(c1 * c2)
    return out


# -- Fock space ---------------------------------------------------------------


def fock_apply(h: HeisElement, f: SymElement, L: Lattice) -> SymElement:
    """Act on the Fock space: p_n^+ multiplies by p_n, p_n^- is the adjoint
    n theta_n(d) d/dp_n.  The raising parts act first."""
    if f.basis != "p":
        f = convert(f, "p")
    nv = f.nvars
    out = {}
    for (lm, lp), c in h.terms.items():
        for mu, cf in f.coeffs.items():
            states = {union(mu, lp): cf * c}
            for n in lm:
                nxt = {}
                factor = L.self_pairing.theta(n) * Coeff.const(n, L.nvars)
                for nu, cc in states.items():
                    m_n = sum(1 for p in nu if p == n)
                    if m_n == 0:
                        continue
                    shorter = list(nu)
                    shorter.remove(n)
                    key = tuple(shorter)
                    add = cc * factor * Coeff.const(m_n, nv)
                    nxt[key] = nxt.get(key, Coeff.zero(nv)) + add
                states = {k: v for k, v in nxt.items() if not v.is_zero()}
            for nu, cc in states.items():
                out[nu] = out.get(nu, Coeff.zero(nv)) + cc
    return SymElement("p", out, nv)


def kappa0(f: SymElement) -> Coeff:
    """Projection onto the degree-zero piece of the Fock space."""
    if f.basis != "p":
        f = convert(f, "p")
    return f.coefficient(())


# -- pairings -----------------------------------------------------------------


def pair_pp(lam: Partition, mu: Partition, L: Lattice) -> Coeff:
    """<p_lam^-, p_mu^+> = delta z_lam prod_k theta_{lam_k}(d)."""
    lam, mu = tuple(lam), tuple(mu)
    if lam != mu:
        return Coeff.zero(L.nvars)
    out = Coeff.const(z_of(lam), L.nvars)
    for part in lam:
        out = out * L.self_pairing.theta(part)
    return out


def jack_pair(lam: Partition, mu: Partition, k: int) -> Fraction:
    """Jack pairing at integer parameter k: delta z_lam k^{l(lam)}.

    This is the factor-wise q -> 1 limit of the specialized Macdonald pairing;
    see the package notes for the discrepancy with a displayed formula.
    """
    lam, mu = tuple(lam), tuple(mu)
    if lam != mu:
        return Fraction(0)
    return Fraction(z_of(lam) * k ** len(lam))


# -- symmetric/exterior powers of a graded super vector space ----------------


def _power_series(V: Coeff, k: int, exterior: bool):
    """Coefficients of z^0..z^k of prod (1 + pi q^s z)^{odd} / (1 - q^s z)^{even}
    (symmetric) or prod (1 + q^s z)^{even} / (1 - pi q^s z)^{odd} (exterior)."""
    if not V.has_nonneg_integer_coeffs():
        raise ValueError("graded dimension needs nonnegative integer coefficients")
    nv = V.nvars
    series = [Coeff.zero(nv) for _ in range(k + 1)]
    series[0] = Coeff.one(nv)

    def mul_factor(series, factor_coeffs):
        out = [Coeff.zero(nv) for _ in range(k + 1)]
        for i in range(k + 1):
            if series[i].is_zero():
                continue
            for j, fc in enumerate(factor_coeffs):
                if i + j > k:
                    break
                out[i + j] = out[i + j] + series[i] * fc
        return out

    for (exps, eps), mult in V.terms.items():
        m = int(mult)
        mono = Coeff.monomial(exps, 0, 1, nv)
        pi = Coeff.pi(nv)
        for _ in range(m):
            if (eps == 1) != exterior:
                # binomial factor (1 + x z) with x = pi^?(eps) q^s
                x = mono * (pi if eps else Coeff.one(nv))
                factor = [Coeff.one(nv), x]
            else:
                # geometric factor 1/(1 - x z) = sum x^j z^j
                x = mono * (pi if eps else Coeff.one(nv))
                factor = [x ** j for j in range(k + 1)]
            series = mul_factor(series, factor)
    return series


def sym_power_dim(V: Coeff, k: int) -> Coeff:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return _power_series(V, k, exterior=False)[k]


def ext_power_dim(V: Coeff, k: int) -> Coeff:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return _power_series(V, k, exterior=True)[k]


# -- presentation identities ---------------------------------------------------


def _h_plus(n: int, nv: int) -> HeisElement:
    """h_n^+ expanded in normal form via the p basis."""
    from .symfunc import _h_in_p
    return HeisElement({((), lam): Coeff.const(c, nv) for lam, c in _h_in_p(n)}, nv)


def _h_minus(n: int, nv: int) -> HeisElement:
    from .symfunc import _h_in_p
    return HeisElement({(lam, ()): Coeff.const(c, nv) for lam, c in _h_in_p(n)}, nv)


def _e_minus(n: int, nv: int) -> HeisElement:
    from .symfunc import _e_in_p
    return HeisElement({(lam, ()): Coeff.const(c, nv) for lam, c in _e_in_p(n)}, nv)


def verify_presentation(kind: str, L: Lattice, bound: int = 6) -> bool:
    """Check h^+ h^- (or h^+ e^-) straightening against graded dimensions of
    symmetric (exterior) powers, for all n, m <= bound."""
    if kind not in ("hh", "he"):
        raise ValueError("kind must be 'hh' or 'he'")
    nv = L.nvars
    V = L.self_pairing
    for n in range(1, bound + 1):
        for m in range(1, bound + 1):
            plus = _h_plus(n, nv)
            minus = _h_minus(m, nv) if kind == "hh" else _e_minus(m, nv)
            lhs = heis_mul(plus, minus, L)
            rhs = HeisElement({}, nv)
            for ell in range(0, min(n, m) + 1):
                dim = sym_power_dim(V, ell) if kind == "hh" else ext_power_dim(V, ell)
                if dim.is_zero():
                    continue
                lower = _h_minus(m - ell, nv) if kind == "hh" else _e_minus(m - ell, nv)
                upper = _h_plus(n - ell, nv)
                rhs = rhs + heis_mul(lower, upper, L).scale(dim)
            if lhs != rhs:
                return False
    return True


# -- Macdonald appendix --------------------------------------------------------


def macdonald_V() -> Coeff:
    """grdim S(x,y) = (1 + pi q2)/(1 - q1) -- returned as the pair (num, den)
    is not needed; this is the numerator convention used below."""
    return Coeff.one(2) + Coeff.pi(2) * Coeff.var(1, 1)


def macdonald_sym_closed_form(k: int) -> RationalFunction:
    """prod_{j=0}^{k-1} (1 + pi q2 q1^j) / prod_{j=1}^{k} (1 - q1^j)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = Coeff.one(2)
    den = Coeff.one(2)
    for j in range(k):
        num = num * (Coeff.one(2) + Coeff.pi(2) * Coeff.var(1, 1) * Coeff.var(0, j))
    for j in range(1, k + 1):
        den = den * (Coeff.one(2) - Coeff.var(0, j))
    return RationalFunction(num, den)


def macdonald_ext_closed_form(k: int) -> RationalFunction:
    """prod_{j=0}^{k-1} (pi q2 + q1^j) / prod_{j=1}^{k} (1 - q1^j)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = Coeff.one(2)
    den = Coeff.one(2)
    for j in range(k):
        num = num * (Coeff.pi(2) * Coeff.var(1, 1) + Coeff.var(0, j))
    for j in range(1, k + 1):
        den = den * (Coeff.one(2) - Coeff.var(0, j))
    return RationalFunction(num, den)


def macdonald_coeff_extraction(k: int, exterior: bool = False) -> RationalFunction:
    """The z^k coefficient of the two-variable generating product, extracted
    through the functional equation (1 -+ z-factors) F(z) = (...) F(q1 z).

    The infinite products prod_n (1 + pi q2 q1^n z)/(1 - q1^n z) (symmetric)
    and prod_n (1 + q1^n z)/(1 - pi q2 q1^n z) (exterior) satisfy first-order
    q-difference equations whose coefficient recursions are solved exactly.
    """
    one = Coeff.one(2)
    piq2 = Coeff.pi(2) * Coeff.var(1, 1)
    coeffs = [RationalFunction(one)]
    for j in range(1, k + 1):
        q1j = Coeff.var(0, j)
        q1jm1 = Coeff.var(0, j - 1)
        if not exterior:
            # (1 - z) F(z) = (1 + pi q2 z) F(q1 z)
            num = one + piq2 * q1jm1
        else:
            # (1 - pi q2 z) F(z) = (1 + z) F(q1 z)
            num = piq2 + q1jm1
        coeffs.append(coeffs[-1] * RationalFunction(num, one - q1j))
    return coeffs[k]


def macdonald_product_functional_check(bound_z: int = 4, bound_n: int = 8,
                                       exterior: bool = False) -> bool:
    """Truncated-product check of the q-difference equation driving the
    closed forms: compare z^k coefficients (k <= bound_z) of (1 -+ ...) P_N(z)
    and (1 + ...) P_N(q1 z), modulo q1-degrees >= N where the truncation at
    n < N stops being faithful."""
    one = Coeff.one(2)
    piq2 = Coeff.pi(2) * Coeff.var(1, 1)
    kmax, N = bound_z, bound_n

    series = [Coeff.zero(2) for _ in range(kmax + 1)]
    series[0] = one
    for n in range(N):
        q1n = Coeff.var(0, n)
        binom = piq2 * q1n if not exterior else q1n
        geom = q1n if not exterior else piq2 * q1n
        # multiply by (1 + binom z)
        new = [Coeff.zero(2) for _ in range(kmax + 1)]
        for i in range(kmax + 1):
            new[i] = new[i] + series[i]
            if i + 1 <= kmax:
                new[i + 1] = new[i + 1] + series[i] * binom
        series = new
        # multiply by 1/(1 - geom z) = sum_j geom^j z^j
        new = [Coeff.zero(2) for _ in range(kmax + 1)]
        for i in range(kmax + 1):
            for j in range(kmax - i + 1):
                new[i + j] = new[i + j] + series[i] * geom ** j
        series = new

    def drop_high(c: Coeff, maxdeg: int) -> Coeff:
        return Coeff({k: v for k, v in c.terms.items() if k[0][0] <= maxdeg}, 2)

    # F(q1 z) has z^k coefficient q1^k [z^k]F
    shifted = [series[i] * Coeff.var(0, i) for i in range(kmax + 1)]
    zcoef = piq2 if exterior else one  # (1 - z) vs (1 - pi q2 z) on the left
    lcoef = one if exterior else piq2  # (1 + pi q2 z) vs (1 + z) on the right
    lhs = [series[i] - (zcoef * series[i - 1] if i else Coeff.zero(2))
           for i in range(kmax + 1)]
    rhs = [shifted[i] + (lcoef * shifted[i - 1] if i else Coeff.zero(2))
           for i in range(kmax + 1)]
    return all(drop_high(l, N - 1) == drop_high(r, N - 1)
               for l, r in zip(lhs, rhs))


def macdonald_pair(lam: Partition, mu: Partition) -> RationalFunction:
    """delta z_lam prod_i (1 + pi q2^{lam_i})/(1 - q1^{lam_i})."""
    lam, mu = tuple(lam), tuple(mu)
    if lam != mu:
        return RationalFunction(Coeff.zero(2))
    num = Coeff.const(z_of(lam), 2)
    den = Coeff.one(2)
    for part in lam:
        num = num * (Coeff.one(2) + Coeff.pi(2) * Coeff.var(1, part))
        den = den * (Coeff.one(2) - Coeff.var(0, part))
    return RationalFunction(num, den)


def jack_limit_polynomial(k: int, n: int) -> Coeff:
    """(1 - q^{kn})/(1 - q^n) as the polynomial 1 + q^n + ... + q^{n(k-1)}."""
    out = Coeff.zero(1)
    for j in range(k):
        out = out + Coeff.q(n * j)
    return out


# -- Appendix A.4: dg algebra S(x,y) with d(y) = x^k ---------------------------


def dg_cohomology_check(k: int, degree_bound: int) -> dict:
    """Graded dimensions of H*(S(x,y), d_k) per (degree, parity).

    S(x,y) has basis x^a (even) and x^a y (odd) with |x| = 1 and |y| = k; the
    differential sends x^a to 0 and x^a y to x^{a+k}.  Kernels and images are
    computed per degree as ranks of explicit boundary matrices.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if degree_bound < k:
        raise ValueError("degree bound must be at least k")
    out = {}
    for deg in range(degree_bound + 1):
        # even part in degree deg: span{x^deg}; odd: span{x^{deg-k} y}
        even_dim = 1
        odd_dim = 1 if deg >= k else 0
        # boundary from odd (deg) to even (deg): x^{deg-k} y -> x^deg
        rank_from_odd = 1 if odd_dim else 0
        # boundary out of even is zero
        even_coh = even_dim - rank_from_odd
        odd_coh = odd_dim - rank_from_odd
        out[(deg, 0)] = even_coh
        out[(deg, 1)] = odd_coh
    return out
