"""Graded Frobenius superalgebras given by structure constants.

An algebra is a finite basis with Z-degrees and parities, structure constants
b_i b_j = sum_k mult[i][j][k] b_k, and a trace vector.  The standing
assumptions of the calculus (even supersymmetric trace supported in the top
degree, nondegenerate Gram matrix, one-dimensional degree-0 part spanned by
the unit) are checked by validate().
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .coeffring import Coeff


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class FrobAlgebra:
    name: str
    labels: tuple
    degrees: tuple
    parities: tuple
    mult: tuple          # mult[i][j][k] -> Fraction
    trace: tuple         # trace[i] -> Fraction

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def top_degree(self) -> int:
        return max(self.degrees)

    @property
    def unit_index(self) -> int:
        return 0

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def multiply(self, i: int, j: int) -> dict:
        """Product b_i b_j as a map basis index -> Fraction."""
        return {k: c for k, c in enumerate(self.mult[i][j]) if c != 0}

    def multiply_vec(self, v: dict, w: dict) -> dict:
        out = {}
        for i, a in v.items():
            for j, b in w.items():
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] = out.get(k, Fraction(0)) + a * b * c
        return {k: c for k, c in out.items() if c != 0}

    def trace_of(self, v: dict) -> Fraction:
        return sum((c * self.trace[i] for i, c in v.items()), Fraction(0))

    def gram(self) -> list:
        """G[i][j] = tr(b_i b_j)."""
        n = self.dim
        return [[self.trace_of(self.multiply(i, j)) for j in range(n)]
                for i in range(n)]

    def graded_dim(self) -> Coeff:
        out = Coeff.zero(1)
        for d, p in zip(self.degrees, self.parities):
            out = out + Coeff.monomial((d,), p, 1)
        return out

    def super_dim(self) -> int:
        """dim B_even - dim B_odd, the Jack parameter this algebra realizes."""
        return sum(1 if p == 0 else -1 for p in self.parities)

    def dual_basis(self) -> list:
        """Vectors v_j with tr(b_i v_j) = delta_ij, via Gram inversion."""
        inv = invert_matrix(self.gram())
        if inv is None:
            raise ValueError("singular Gram matrix; trace form is degenerate")
        n = self.dim
        return [{m: inv[m][j] for m in range(n) if inv[m][j] != 0}
                for j in range(n)]

    def copairing(self) -> list:
        """C[i][j] = coefficient of b_i (x) b_j in sum_b b (x) b^dual."""
        inv = invert_matrix(self.gram())
        if inv is None:
            raise ValueError("singular Gram matrix; trace form is degenerate")
        n = self.dim
        # sum_j b_j (x) b_j^dual = sum_{j,m} inv[m][j] b_j (x) b_m
        return [[inv[j][i] for j in range(n)] for i in range(n)]

    def __repr__(self):
        return f"FrobAlgebra({self.name!r}, dim={self.dim})"


def invert_matrix(g: list):
    """Exact inverse of a rational matrix, or None if singular."""
    n = len(g)
    a = [[Fraction(g[i][j]) for j in range(n)] + [Fraction(int(i == j))
         for j in range(n)] for i in range(n)]
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(n):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        row += 1
    return [r[n:] for r in a]


@dataclass
class ValidationReport:
    algebra: str
    failures: list  # (check name, detail string)

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        lines = [f"algebra {self.algebra}: " +
                 ("all checks pass" if self.ok else f"{len(self.failures)} check(s) failed")]
        for name, detail in self.failures:
            lines.append(f"  FAIL {name}: {detail}")
        return "\n".join(lines)


def validate(B: FrobAlgebra) -> ValidationReport:
    fails = []
    n = B.dim

    # unit: basis[0] acts as a two-sided identity, has degree 0, even parity
    u = B.unit_index
    if B.degrees[u] != 0 or B.parities[u] != 0:
        fails.append(("unit", f"basis[{u}] must be even of degree 0"))
    for j in range(n):
        if B.multiply(u, j) != {j: Fraction(1)} or B.multiply(j, u) != {j: Fraction(1)}:
            fails.append(("unit", f"basis[{u}] is not a two-sided unit at {B.labels[j]}"))
            break

    # B_0 = F: exactly one basis element in degree zero
    if sum(1 for d in B.degrees if d == 0) != 1:
        fails.append(("degree-zero part",
                      "B_0 must be one-dimensional (spanned by the unit); "
                      "multi-idempotent degree-zero parts are out of scope"))

    # degree and parity additivity
    for i in range(n):
        for j in range(n):
            for k, c in B.multiply(i, j).items():
                if B.degrees[k] != B.degrees[i] + B.degrees[j]:
                    fails.append(("degree additivity",
                                  f"({B.labels[i]},{B.labels[j]},{B.labels[k]})"))
                if B.parities[k] != (B.parities[i] + B.parities[j]) % 2:
                    fails.append(("parity additivity",
                                  f"({B.labels[i]},{B.labels[j]},{B.labels[k]})"))

    # associativity
    for i in range(n):
        for j in range(n):
            ij = B.multiply(i, j)
            for k in range(n):
                left = {}
                for m, c in ij.items():
                    for l, d in B.multiply(m, k).items():
                        left[l] = left.get(l, Fraction(0)) + c * d
                right = {}
                for m, c in B.multiply(j, k).items():
                    for l, d in B.multiply(i, m).items():
                        right[l] = right.get(l, Fraction(0)) + c * d
                if {a: b for a, b in left.items() if b} != {a: b for a, b in right.items() if b}:
                    fails.append(("associativity",
                                  f"witness ({B.labels[i]},{B.labels[j]},{B.labels[k]})"))

    # trace supported in top degree, on even elements
    delta = B.top_degree
    for i in range(n):
        if B.trace[i] != 0 and (B.degrees[i] != delta or B.parities[i] != 0):
            fails.append(("trace support",
                          f"tr({B.labels[i]}) != 0 outside even top degree"))

    # supersymmetry of the trace
    for i in range(n):
        for j in range(n):
            lhs = B.trace_of(B.multiply(i, j))
            rhs = B.trace_of(B.multiply(j, i))
            sign = -1 if (B.parities[i] and B.parities[j]) else 1
            if lhs != sign * rhs:
                fails.append(("supersymmetry",
                              f"tr({B.labels[i]}{B.labels[j]}) != "
                              f"(-1)^par tr({B.labels[j]}{B.labels[i]})"))

    # nondegeneracy
    if invert_matrix(B.gram()) is None:
        fails.append(("nondegeneracy", "Gram matrix tr(b_i b_j) is singular"))

    # deduplicate while keeping order
    seen, uniq = set(), []
    for f in fails:
        if f not in seen:
            seen.add(f)
            uniq.append(f)
    return ValidationReport(B.name, uniq)


# -- builtins -----------------------------------------------------------------


def field() -> FrobAlgebra:
    return FrobAlgebra("field", ("1",), (0,), (0,),
                       (((Fraction(1),),),), (Fraction(1),))


def truncated_poly(k: int) -> FrobAlgebra:
    """F[x]/(x^k) with x even of degree 1 and tr(sum a_j x^j) = a_{k-1}."""
    if k < 1:
        raise ValueError("truncated_poly needs k >= 1")
    labels = tuple("1" if j == 0 else ("x" if j == 1 else f"x^{j}")
                   for j in range(k))
    mult = tuple(tuple(tuple(Fraction(int(k2 == i + j)) for k2 in range(k))
                       for j in range(k)) for i in range(k))
    trace = tuple(Fraction(int(j == k - 1)) for j in range(k))
    return FrobAlgebra(f"truncpoly:{k}", labels, tuple(range(k)),
                       (0,) * k, mult, trace)


def surface(g: int) -> FrobAlgebra:
    """Cohomology of a genus-g surface: unit, 2g odd degree-1 classes, top t.

    a_i a_{i+g} = t = -a_{i+g} a_i for 1 <= i <= g; all other products of
    degree-1 generators vanish; tr(t) = 1.
    """
    if g < 0:
        raise ValueError("surface needs genus g >= 0")
    labels = ("1",) + tuple(f"a{i+1}" for i in range(2 * g)) + ("t",)
    n = 2 * g + 2
    degrees = (0,) + (1,) * (2 * g) + (2,)
    parities = (0,) + (1,) * (2 * g) + (0,)
    top = n - 1
    mult = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        mult[0][i][i] = Fraction(1)
        mult[i][0][i] = Fraction(1)
    mult[0][0][0] = Fraction(1)
    for i in range(1, g + 1):
        mult[i][i + g][top] = Fraction(1)
        mult[i + g][i][top] = Fraction(-1)
    trace = tuple(Fraction(int(i == top)) for i in range(n))
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in mult)
    return FrobAlgebra(f"surface:{g}", labels, degrees, parities, frozen, trace)


def builtin(name: str, param: int = None) -> FrobAlgebra:
    if name == "field":
        return field()
    if name == "truncpoly":
        return truncated_poly(param)
    if name == "surface":
        return surface(param)
    raise ValueError(f"unknown builtin algebra {name!r}")


def algebra_from_spec(spec: str) -> FrobAlgebra:
    """Parse "field", "truncpoly:3", "surface:2", or a JSON file path."""
    if spec == "field":
        return field()
    if ":" in spec and not spec.endswith(".json"):
        name, _, param = spec.partition(":")
        return builtin(name, int(param))
    return load_algebra(spec)


# -- JSON interchange ---------------------------------------------------------


def to_json(B: FrobAlgebra) -> dict:
    mult_entries = []
    for i in range(B.dim):
        for j in range(B.dim):
            entries = [[k, str(c)] for k, c in B.multiply(i, j).items()]
            if entries:
                mult_entries.append([i, j, entries])
    return {
        "name": B.name,
        "basis": [{"label": l, "degree": d, "parity": p}
                  for l, d, p in zip(B.labels, B.degrees, B.parities)],
        "mult": mult_entries,
        "trace": [str(c) for c in B.trace],
    }


def from_json(data: dict) -> FrobAlgebra:
    basis = data["basis"]
    n = len(basis)
    labels = tuple(b["label"] for b in basis)
    degrees = tuple(int(b["degree"]) for b in basis)
    parities = tuple(int(b["parity"]) % 2 for b in basis)
    mult = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i, j, entries in data["mult"]:
        for k, c in entries:
            mult[i][j][k] = _frac(c)
    trace = tuple(_frac(c) for c in data["trace"])
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in mult)
    return FrobAlgebra(str(data.get("name", "custom")), labels, degrees,
                       parities, frozen, trace)


def load_algebra(path: str) -> FrobAlgebra:
    with open(path) as fh:
        return from_json(json.load(fh))


def save_algebra(B: FrobAlgebra, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(to_json(B), fh, indent=2)


def change_of_basis(B: FrobAlgebra, matrix: list, name: str = None,
                    labels: tuple = None) -> FrobAlgebra:
    """Rebuild B in the basis b'_j = sum_i matrix[i][j] b_i.

    The change must be degree- and parity-homogeneous for the result to be a
    valid graded algebra presentation.
    """
    n = B.dim
    m = [[_frac(matrix[i][j]) for j in range(n)] for i in range(n)]
    minv = invert_matrix(m)
    if minv is None:
        raise ValueError("change of basis matrix is singular")
    new_mult = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            prod = {}
            for a in range(n):
                if m[a][i] == 0:
                    continue
                for b in range(n):
                    if m[b][j] == 0:
                        continue
                    for k, c in B.multiply(a, b).items():
                        prod[k] = prod.get(k, Fraction(0)) + m[a][i] * m[b][j] * c
            for k, c in prod.items():
                for l in range(n):
                    new_mult[i][j][l] += minv[l][k] * c
    new_trace = tuple(sum((m[a][i] * B.trace[a] for a in range(n)), Fraction(0))
                      for i in range(n))
    new_deg = []
    new_par = []
    for j in range(n):
        support = [i for i in range(n) if m[i][j] != 0]
        degs = {B.degrees[i] for i in support}
        pars = {B.parities[i] for i in support}
        if len(degs) != 1 or len(pars) != 1:
            raise ValueError("change of basis must be homogeneous")
        new_deg.append(degs.pop())
        new_par.append(pars.pop())
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in new_mult)
    return FrobAlgebra(name or (B.name + "'"),
                       labels or tuple(f"b{j}" for j in range(n)),
                       tuple(new_deg), tuple(new_par), frozen, new_trace)
