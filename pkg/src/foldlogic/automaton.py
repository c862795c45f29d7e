"""Reference Rule 110 automaton and the Boolean formulas the cell is built from."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

# new state for (left, self, right) read as a 3-bit number
RULE110 = {(a, b, c): (110 >> (4 * a + 2 * b + c)) & 1 for a, b, c in product((0, 1), repeat=3)}


class Boundary(enum.Enum):
    ZERO_PADDED = "zero"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class Row:
    """Finite row of bits; ``offset`` is the absolute position of ``cells[0]``."""

    cells: tuple[int, ...]
    boundary: Boundary = Boundary.ZERO_PADDED
    offset: int = 0

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("a row needs at least one cell")
        object.__setattr__(self, "cells", tuple(int(bool(c)) for c in self.cells))

    @classmethod
    def parse(cls, bits: str, boundary: Boundary = Boundary.ZERO_PADDED) -> Row:
        bits = bits.strip()
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(tuple(int(b) for b in bits), boundary)

    @classmethod
    def single(cls, width: int = 1, position: int | None = None, **kw) -> Row:
        """A single 1, by default in the rightmost cell."""
        pos = width - 1 if position is None else position
        return cls(tuple(int(i == pos) for i in range(width)), **kw)

    def ones(self) -> frozenset[int]:
        return frozenset(self.offset + i for i, c in enumerate(self.cells) if c)

    def __len__(self) -> int:
        return len(self.cells)

    def __str__(self) -> str:
        return "".join(map(str, self.cells))


def rule110(a: int, b: int, c: int) -> int:
    return RULE110[(int(a), int(b), int(c))]


def rule110_step(r: Row, grow: bool | None = None) -> Row:
    """One synchronous update.

    Zero-padded rows grow one cell to the left by default, since a lone 1
    spreads leftward and never rightward.  Pass ``grow=False`` to keep a
    fixed window with zeros outside it.
    """
    n = len(r.cells)
    if r.boundary is Boundary.CYCLIC:
        return Row(tuple(rule110(r.cells[i - 1], r.cells[i], r.cells[(i + 1) % n]) for i in range(n)), r.boundary, r.offset)
    if grow is None:
        grow = True
    cells = (0,) + r.cells + (0,) if grow else r.cells
    padded = (0,) + cells + (0,)
    new = tuple(rule110(*padded[i:i + 3]) for i in range(len(cells)))
    if grow:
        new = new[:-1]  # the cell right of the window stays 0 (100 -> 0)
        return Row(new, r.boundary, r.offset - 1)
    return Row(new, r.boundary, r.offset)


def evolve(r: Row, n: int, grow: bool | None = None) -> list[Row]:
    if n < 0:
        raise ValueError("number of steps must be non-negative")
    rows = [r]
    for _ in range(n):
        rows.append(rule110_step(rows[-1], grow))
    return rows


def xor_step(r: Row) -> Row:
    """Pascal's triangle mod 2: cell j of the next row sits between cells j-1 and j.

    Rows grow by one cell each step; zeros lie outside the window.
    """
    padded = (0,) + r.cells + (0,)
    return Row(tuple(padded[j] ^ padded[j + 1] for j in range(len(r.cells) + 1)), r.boundary, r.offset)


def evolve_xor(r: Row, n: int) -> list[Row]:
    if n < 0:
        raise ValueError("number of steps must be non-negative")
    rows = [r]
    for _ in range(n):
        rows.append(xor_step(rows[-1]))
    return rows


# ---------------------------------------------------------------------------
# formulas


def formula_simple(a: bool, b: bool, c: bool) -> bool:
    """(not A and B) or ((not B and C) or (B and not C))."""
    return (not a and b) or ((not b and c) or (b and not c))


def formula_cell(a: bool, b: bool, c: bool) -> bool:
    """The output as the cell computes it: not(P and Q), P = A or not B, Q = not(Y or Z)."""
    x = a or not b
    y = not b and c
    z = b and not c
    p = True and x
    q = not (y or z)
    return not (p and q)


def formula_equiv_check() -> bool:
    return all(
        formula_cell(a, b, c) == formula_simple(a, b, c) == bool(rule110(a, b, c))
        for a, b, c in product((False, True), repeat=3)
    )


def to_text(rows: Iterable[Row], on: str = "#", off: str = ".") -> str:
    """Rows aligned on absolute position."""
    rows = list(rows)
    lo = min(r.offset for r in rows)
    hi = max(r.offset + len(r) for r in rows)
    out = []
    for r in rows:
        line = [off] * (hi - lo)
        for i, c in enumerate(r.cells):
            if c:
                line[r.offset - lo + i] = on
        out.append("".join(line))
    return "\n".join(out) + "\n"


def to_pbm(grid: Sequence[Sequence[int]]) -> str:
    h = len(grid)
    w = len(grid[0]) if h else 0
    lines = ["P1", f"{w} {h}"] + [" ".join(str(int(b)) for b in row) for row in grid]
    return "\n".join(lines) + "\n"
