"""Exact arithmetic in the ground rings Z[q,q^-1,pi]/(pi^2-1) and its
two-variable cousin in q1, q2.

A Coeff is a Laurent polynomial with rational coefficients in either one
variable q (nvars=1) or two variables q1, q2 (nvars=2), together with a
pi-component of order two.  Everything is immutable and exact; there are no
floats anywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction]

MAX_EXP = 10**9  # Laurent exponents are desk-scale; anything bigger is a bug.


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}")


class Coeff:
    """Element of F[q^{±1}][pi]/(pi^2-1), or of the q1,q2 version.

    terms maps (exponent-tuple, pi-exponent in {0,1}) to a nonzero Fraction.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: dict, nvars: int = 1):
        clean = {}
        for (exps, eps), c in terms.items():
            c = _frac(c)
            if c == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError("exponent arity does not match variable count")
            if any(abs(e) > MAX_EXP for e in exps):
                raise OverflowError("Laurent exponent out of range")
            key = (exps, int(eps) % 2)
            clean[key] = clean.get(key, Fraction(0)) + c
            if clean[key] == 0:
                del clean[key]
        self.nvars = nvars
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(c: Scalar, nvars: int = 1) -> "Coeff":
        return Coeff({((0,) * nvars, 0): _frac(c)}, nvars)

    @staticmethod
    def zero(nvars: int = 1) -> "Coeff":
        return Coeff({}, nvars)

    @staticmethod
    def one(nvars: int = 1) -> "Coeff":
        return Coeff.const(1, nvars)

    @staticmethod
    def q(power: int = 1) -> "Coeff":
        return Coeff({((power,), 0): Fraction(1)}, 1)

    @staticmethod
    def pi(nvars: int = 1) -> "Coeff":
        return Coeff({((0,) * nvars, 1): Fraction(1)}, nvars)

    @staticmethod
    def var(i: int, power: int = 1, nvars: int = 2) -> "Coeff":
        exps = [0] * nvars
        exps[i] = power
        return Coeff({(tuple(exps), 0): Fraction(1)}, nvars)

    @staticmethod
    def monomial(exps: Iterable[int], eps: int, c: Scalar, nvars: int = None) -> "Coeff":
        exps = tuple(exps)
        return Coeff({(exps, eps): _frac(c)}, len(exps) if nvars is None else nvars)

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "Coeff":
        if isinstance(other, (int, Fraction)):
            return Coeff.const(other, self.nvars)
        if not isinstance(other, Coeff):
            return NotImplemented
        if other.nvars == self.nvars:
            return other
        # A pure constant travels freely between the one- and two-variable
        # modes; genuinely mixed-variable arithmetic is an error.
        if other.is_constant():
            return Coeff.const(other.constant_value(), self.nvars)
        if self.is_constant():
            raise _ModeClash(self, other)
        raise ValueError("cannot mix one- and two-variable coefficients")

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if isinstance(o, _ModeClash):  # pragma: no cover - defensive
            raise o
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t.get(k, Fraction(0)) + c
        return Coeff(t, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Coeff({k: -c for k, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Coeff) else -_frac(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = {}
        for (e1, p1), c1 in self.terms.items():
            for (e2, p2), c2 in o.terms.items():
                key = (tuple(a + b for a, b in zip(e1, e2)), (p1 + p2) % 2)
                t[key] = t.get(key, Fraction(0)) + c1 * c2
        return Coeff(t, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers only via RationalFunction")
        out = Coeff.one(self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coeff.const(other, self.nvars)
        if not isinstance(other, Coeff):
            return NotImplemented
        if other.nvars != self.nvars:
            if self.is_constant() and other.is_constant():
                return self.constant_value() == other.constant_value()
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        z = (0,) * self.nvars
        return all(e == z and p == 0 for (e, p) in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return next(iter(self.terms.values()))

    def has_nonneg_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.terms.values())

    # -- the ring maps of the calculus --------------------------------------

    def theta(self, n: int) -> "Coeff":
        """theta_n: q |-> q^n (each variable), pi |-> -(-pi)^n."""
        if n < 1:
            raise ValueError("theta_n is used for n >= 1 only")
        # -(-pi)^n = -(-1)^n pi^n; with pi^2 = 1 this is pi for n odd and -1
        # for n even.
        t = {}
        for (exps, eps), c in self.terms.items():
            nexps = tuple(n * e for e in exps)
            if eps == 0:
                key, mult = (nexps, 0), Fraction(1)
            elif n % 2 == 1:
                key, mult = (nexps, 1), Fraction(1)
            else:
                key, mult = (nexps, 0), Fraction(-1)
            t[key] = t.get(key, Fraction(0)) + mult * c
        return Coeff(t, self.nvars)

    def eval_1_neg1(self) -> Fraction:
        """Evaluation at q = 1 (all variables) and pi = -1."""
        total = Fraction(0)
        for (_, eps), c in self.terms.items():
            total += -c if eps else c
        return total

    def substitute(self, images: list) -> "Coeff":
        """Substitute Coeff values for the variables (pi maps to pi)."""
        if len(images) != self.nvars:
            raise ValueError("one image per variable required")
        nv = images[0].nvars if images else 1
        out = Coeff.zero(nv)
        for (exps, eps), c in self.terms.items():
            term = Coeff.const(c, nv)
            for img, e in zip(images, exps):
                if e >= 0:
                    term = term * img ** e
                else:
                    raise ValueError("negative exponent substitution unsupported")
            if eps:
                term = term * Coeff.pi(nv)
            out = out + term
        return out

    def to_one_variable(self, q1_image: "Coeff", q2_image: "Coeff") -> "Coeff":
        """Map a two-variable coefficient into the one-variable ring."""
        if self.nvars != 2:
            raise ValueError("expected a two-variable coefficient")
        return self.substitute([q1_image, q2_image])

    def set_pi(self, value: int) -> "Coeff":
        """Substitute pi = +1 or -1."""
        if value not in (1, -1):
            raise ValueError("pi can only be specialized to +1 or -1")
        t = {}
        for (exps, eps), c in self.terms.items():
            key = (exps, 0)
            t[key] = t.get(key, Fraction(0)) + (c if (eps == 0 or value == 1) else -c)
        return Coeff(t, self.nvars)

    # -- rendering and parsing ----------------------------------------------

    def __repr__(self):
        return f"Coeff({self.render()!r})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        if not self.terms:
            return "0"
        names = ["q"] if self.nvars == 1 else ["q1", "q2"]
        parts = []
        for (exps, eps) in sorted(self.terms):
            c = self.terms[(exps, eps)]
            factors = []
            if eps:
                factors.append("pi")
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


class _ModeClash(ValueError):
    def __init__(self, a, b):
        super().__init__("cannot mix one- and two-variable coefficients")


def parse_coeff(text: str, nvars: int = 1) -> Coeff:
    """Parse the textual rendering produced by Coeff.render (losslessly)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty coefficient")
    if s == "0":
        return Coeff.zero(nvars)
    # split into signed terms
    terms = []
    i = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    cur = ""
    while i <= len(s):
        if i == len(s) or (s[i] in "+-" and cur and cur[-1] not in "^/"):
            terms.append((sign, cur))
            if i < len(s):
                sign = -1 if s[i] == "-" else 1
                cur = ""
        else:
            cur += s[i]
        i += 1
    out = Coeff.zero(nvars)
    names = ["q"] if nvars == 1 else ["q1", "q2"]
    for sign, body in terms:
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(1)
        exps = [0] * nvars
        eps = 0
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor == "pi":
                eps ^= 1
            elif factor[0].isdigit():
                coeff *= Fraction(factor)
            else:
                name, _, power = factor.partition("^")
                if name not in names:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                exps[names.index(name)] += int(power) if power else 1
        out = out + Coeff.monomial(exps, eps, sign * coeff)
    return out


def theta(n: int, f: Coeff) -> Coeff:
    return f.theta(n)


def eval_1_neg1(f: Coeff) -> Fraction:
    return f.eval_1_neg1()


class RationalFunction:
    """Formal quotient of two Coeffs; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Coeff, den: Coeff = None):
        if den is None:
            den = Coeff.one(num.nvars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.nvars != den.nvars:
            den = num._coerce(den)
        self.num = num
        self.den = den

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        return RationalFunction(self.num * other, self.den)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(self.num._coerce(other))
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Coeff)):
            other = RationalFunction(self.num._coerce(other) if isinstance(other, Coeff)
                                     else Coeff.const(other, self.num.nvars))
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):  # pragma: no cover - not used as dict key in anger
        return 0

    def __repr__(self):
        return f"({self.num.render()}) / ({self.den.render()})"


def rf_equal(a: RationalFunction, b: RationalFunction) -> bool:
    return a == b
