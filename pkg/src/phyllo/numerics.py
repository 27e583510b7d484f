"""Integer and symbolic helpers shared by the generators and the analysis.

Everything in here is exact: Fibonacci numbers as Python ints, convergents as
Fractions, substitution words as tuples of 'L'/'S' symbols, and the square
lattice strip model of a defect ring.  Floating point enters only through the
golden-ratio constants, which are derived once from a 50-digit Decimal value.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "GOLDEN_RATIO",
    "DIVERGENCE",
    "MAX_FIB_RANK",
    "fibonacci",
    "golden_approximant",
    "LSWord",
    "inflate",
    "words_equal",
    "StripCell",
    "strip_sequence",
    "strip_dipole_word",
]

with decimal.localcontext() as _ctx:
    _ctx.prec = 50
    _GOLDEN_DECIMAL = (1 + decimal.Decimal(5).sqrt()) / 2

#: (1 + sqrt 5) / 2, rounded once from 50-digit precision.
GOLDEN_RATIO: float = float(_GOLDEN_DECIMAL)

#: Default divergence: fraction of a turn between consecutive sites.
DIVERGENCE: float = float(1 / _GOLDEN_DECIMAL)

#: Largest rank that stays well inside signed 64-bit range.
MAX_FIB_RANK = 90

_FIB: list[int] = [0, 1]
while len(_FIB) <= MAX_FIB_RANK:
    _FIB.append(_FIB[-1] + _FIB[-2])


def fibonacci(u: int) -> int:
    """Exact Fibonacci number f_u with f_0 = 0, f_1 = 1.

    Raises OverflowError above rank 90 (the last rank representable in a
    signed 64-bit integer is 92; we stop earlier so squares of ratios and
    the f_{2u+1} identities used elsewhere never overflow downstream
    consumers that store into int64 arrays).
    """
    if not isinstance(u, int):
        raise TypeError(f"rank must be an int, got {type(u).__name__}")
    if u < 0:
        raise ValueError(f"rank must be >= 0, got {u}")
    if u > MAX_FIB_RANK:
        raise OverflowError(f"rank {u} exceeds supported maximum {MAX_FIB_RANK}")
    return _FIB[u]


def golden_approximant(u: int) -> Fraction:
    """Convergent f_u / f_{u-1} of the golden ratio, as an exact Fraction."""
    if u < 2:
        raise ValueError(f"approximant needs rank >= 2, got {u}")
    return Fraction(fibonacci(u), fibonacci(u - 1))


# ---------------------------------------------------------------------------
# substitution words
# ---------------------------------------------------------------------------

def _least_rotation(seq: tuple[str, ...]) -> int:
    """Index of the lexicographically least rotation (Booth's algorithm)."""
    s = seq + seq
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


@dataclass(frozen=True)
class LSWord:
    """A word over the alphabet {L, S}, optionally read on a ring.

    Cyclic words compare equal modulo rotation and reversal: the rings the
    words are read from have no distinguished starting cell and no
    distinguished orientation.
    """

    symbols: tuple[str, ...]
    cyclic: bool = False

    def __post_init__(self) -> None:
        bad = set(self.symbols) - {"L", "S"}
        if bad:
            raise ValueError(f"word symbols must be 'L' or 'S', got {sorted(bad)}")

    @staticmethod
    def from_string(text: str, cyclic: bool = False) -> "LSWord":
        return LSWord(tuple(text), cyclic)

    def __str__(self) -> str:
        return "".join(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def counts(self) -> tuple[int, int]:
        """(#L, #S)."""
        n_l = sum(1 for c in self.symbols if c == "L")
        return n_l, len(self.symbols) - n_l

    def canonical(self) -> tuple[str, ...]:
        """Lexicographically least representative (rotations x reversal)."""
        if not self.cyclic or not self.symbols:
            return self.symbols
        n = len(self.symbols)
        best = None
        for seq in (self.symbols, self.symbols[::-1]):
            k = _least_rotation(seq)
            cand = (seq + seq)[k:k + n]
            if best is None or cand < best:
                best = cand
        return best


def inflate(word: LSWord, times: int = 1) -> LSWord:
    """Apply the substitution L -> LS, S -> L `times` times."""
    if times < 0:
        raise ValueError("inflation count must be >= 0")
    symbols = word.symbols
    for _ in range(times):
        out: list[str] = []
        for c in symbols:
            if c == "L":
                out.append("L")
                out.append("S")
            else:
                out.append("L")
        symbols = tuple(out)
    return LSWord(symbols, word.cyclic)


def words_equal(a: LSWord, b: LSWord) -> bool:
    """Equality; cyclic words match modulo rotation and reversal."""
    if len(a) != len(b):
        return False
    if a.cyclic != b.cyclic:
        return False
    if not a.cyclic:
        return a.symbols == b.symbols
    return a.canonical() == b.canonical()


# ---------------------------------------------------------------------------
# strip model of a defect ring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StripCell:
    """Square-lattice point (i, j) with the cell type of its sub-row."""

    i: int
    j: int
    cell_type: str  # 'heptagon' | 'hexagon' | 'pentagon'


def strip_sequence(u: int) -> list[StripCell]:
    """Lattice model of the defect ring carrying f_u seven/five dipoles.

    Selects the points of the square lattice falling in a strip around the
    line of slope f_u/f_{u-1} through the origin.  One period runs over rows
    j = 0..f_u-1; each row holds one heptagon and one pentagon (a dipole) and
    f_{u-1} of the rows also hold a hexagon between them.  Totals per period
    are therefore (f_u, f_{u-1}, f_u) = f_{u+2} cells.

    Cells are emitted row by row (heptagon, optional hexagon, pentagon),
    which walks the strip along its axis.
    """
    if not 3 <= u <= 40:
        raise ValueError(f"strip rank must be in [3, 40], got {u}")
    f_u = fibonacci(u)
    f_um1 = fibonacci(u - 1)
    f_um2 = f_u - f_um1
    cells: list[StripCell] = []
    for j in range(f_u):
        m = (j * f_um1) % f_u
        base = (j * f_um1) // f_u
        hept_x = base if m == 0 else base + 1
        cells.append(StripCell(hept_x, j, "heptagon"))
        if m == 0 or m > f_um2:
            cells.append(StripCell(hept_x + 1, j, "hexagon"))
            cells.append(StripCell(base + 3 if m > f_um2 else base + 2, j, "pentagon"))
        else:
            cells.append(StripCell(base + 2, j, "pentagon"))
    return cells


def _strip_hexagon_rows(u: int) -> list[bool]:
    f_u = fibonacci(u)
    f_um1 = fibonacci(u - 1)
    f_um2 = f_u - f_um1
    return [((j * f_um1) % f_u == 0) or ((j * f_um1) % f_u > f_um2) for j in range(f_u)]


def strip_dipole_word(u: int) -> LSWord:
    """Singleton/pair pattern of the strip's dipoles, as a cyclic word.

    The hexagon of row j sits between dipole j and dipole j+1 along the ring,
    so consecutive dipoles not separated by a hexagon form a pair.  Pairs map
    to 'L', singletons to 'S'; under ring inflation a singleton becomes a
    pair and a pair becomes a pair plus a singleton, matching L -> LS, S -> L.
    """
    if not 3 <= u <= 40:
        raise ValueError(f"strip rank must be in [3, 40], got {u}")
    hexrow = _strip_hexagon_rows(u)
    f_u = len(hexrow)
    if all(not h for h in hexrow):  # cannot happen for u >= 3, kept for safety
        raise ValueError("strip has no hexagons; dipole grouping undefined")
    # start right after a hexagon so groups do not wrap
    start = next(j for j in range(f_u) if hexrow[(j - 1) % f_u])
    symbols: list[str] = []
    size = 0
    for k in range(f_u):
        j = (start + k) % f_u
        size += 1
        if hexrow[j]:
            symbols.append("L" if size == 2 else "S")
            size = 0
    if size:  # closes on the starting group; cannot happen with start choice
        symbols.append("L" if size == 2 else "S")
    return LSWord(tuple(symbols), cyclic=True)
