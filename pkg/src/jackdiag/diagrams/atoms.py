"""Slice-word diagrams: vertical lists of horizontal slices of generators.

A DiagramWord is a tuple of slices, read bottom to top; each slice is a tuple
of atoms read left to right.  Wire orientations are 'u' (flowing up through
the slice boundary) and 'd'.  Composability means the output signature of each
slice equals the input signature of the next.
"""

from __future__ import annotations

from dataclasses import dataclass

U, D = "u", "d"


def _flip(o: str) -> str:
    return D if o == U else U


@dataclass(frozen=True)
class Id:
    orient: str

    def ins(self):
        return (self.orient,)

    def outs(self):
        return (self.orient,)

    def text(self):
        return "idU" if self.orient == U else "idD"


@dataclass(frozen=True)
class Dot:
    orient: str
    label: str

    def ins(self):
        return (self.orient,)

    def outs(self):
        return (self.orient,)

    def text(self):
        tag = "dotU" if self.orient == U else "dotD"
        return f"{tag}({self.label})"


@dataclass(frozen=True)
class Cross:
    o1: str
    o2: str

    def ins(self):
        return (self.o1, self.o2)

    def outs(self):
        return (self.o2, self.o1)

    def text(self):
        return "cross" + self.o1.upper() + self.o2.upper()


@dataclass(frozen=True)
class Cup:
    side: str  # 'r': creates (d, u) at degree 0; 'l': creates (u, d) at degree delta

    def ins(self):
        return ()

    def outs(self):
        return (D, U) if self.side == "r" else (U, D)

    def text(self):
        return "cupR" if self.side == "r" else "cupL"


@dataclass(frozen=True)
class Cap:
    side: str  # 'r': eats (u, d) at degree 0; 'l': eats (d, u) at degree -delta

    def ins(self):
        return (U, D) if self.side == "r" else (D, U)

    def outs(self):
        return ()

    def text(self):
        return "capR" if self.side == "r" else "capL"


Atom = object  # Id | Dot | Cross | Cup | Cap


def slice_ins(sl) -> tuple:
    return tuple(o for a in sl for o in a.ins())


def slice_outs(sl) -> tuple:
    return tuple(o for a in sl for o in a.outs())


class DiagramWord:
    """Composable stack of slices.  Closed diagrams have empty boundaries."""

    __slots__ = ("slices",)

    def __init__(self, slices):
        slices = tuple(tuple(sl) for sl in slices)
        sig = slice_ins(slices[0]) if slices else ()
        for sl in slices:
            if slice_ins(sl) != sig:
                raise ValueError(
                    f"slice boundary mismatch: expected {sig}, got {slice_ins(sl)}")
            sig = slice_outs(sl)
        self.slices = slices

    @property
    def bottom(self) -> tuple:
        return slice_ins(self.slices[0]) if self.slices else ()

    @property
    def top(self) -> tuple:
        return slice_outs(self.slices[-1]) if self.slices else ()

    def is_closed(self) -> bool:
        return self.bottom == () and self.top == ()

    def __eq__(self, other):
        return isinstance(other, DiagramWord) and self.slices == other.slices

    def __hash__(self):
        return hash(self.slices)

    def __repr__(self):
        return f"DiagramWord({len(self.slices)} slices)"

    def render(self) -> str:
        lines = []
        for sl in self.slices:
            pos = 0
            bits = []
            for a in sl:
                bits.append(f"{a.text()}:{pos}")
                pos += max(len(a.ins()), len(a.outs())) if a.ins() or a.outs() else 2
            lines.append(" ".join(bits))
        return "; ".join(lines)


def degree_of(word: DiagramWord, B) -> tuple:
    """(Z-degree, parity) of a diagram over the algebra B.

    Crossings and right cups/caps are degree zero; a left cup carries the top
    degree delta and a left cap carries -delta; a dot carries the degree and
    parity of its label.
    """
    delta = B.top_degree
    deg, par = 0, 0
    for sl in word.slices:
        for a in sl:
            if isinstance(a, Dot):
                i = B.index(a.label)
                deg += B.degrees[i]
                par = (par + B.parities[i]) % 2
            elif isinstance(a, Cup) and a.side == "l":
                deg += delta
            elif isinstance(a, Cap) and a.side == "l":
                deg -= delta
    return deg, par


# -- textual format -----------------------------------------------------------

_ATOMS = {
    "idU": Id(U), "idD": Id(D),
    "crossUU": Cross(U, U), "crossDD": Cross(D, D),
    "crossUD": Cross(U, D), "crossDU": Cross(D, U),
    "cupR": Cup("r"), "cupL": Cup("l"),
    "capR": Cap("r"), "capL": Cap("l"),
}


def parse_word(text: str) -> DiagramWord:
    """Parse the semicolon/space format, e.g. "cupL; dotU(x):0 idU:1; capR".

    Column anchors ":p" are accepted and checked for left-to-right order but
    placement is positional: atoms appear in slice order.
    """
    slices = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        atoms = []
        last = -1
        for tok in chunk.split():
            name, _, anchor = tok.partition(":")
            if name.startswith("dotU(") or name.startswith("dotD("):
                if not name.endswith(")"):
                    raise ValueError(f"bad dot token {tok!r}")
                label = name[5:-1]
                atom = Dot(U if name[3] == "U" else D, label)
            elif name in _ATOMS:
                atom = _ATOMS[name]
            else:
                raise ValueError(f"unknown atom {name!r}")
            if anchor:
                if int(anchor) <= last:
                    raise ValueError(f"column anchors must increase: {tok!r}")
                last = int(anchor)
            atoms.append(atom)
        slices.append(tuple(atoms))
    return DiagramWord(slices)


def pad_id_rows(word: DiagramWord) -> DiagramWord:
    """Insert a pure-identity row between consecutive slices (layout helper)."""
    out = []
    for sl in word.slices:
        out.append(sl)
        out.append(tuple(Id(o) for o in slice_outs(sl)))
    return DiagramWord(out[:-1] if out else [])
