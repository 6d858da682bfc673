"""Optimal-assignment machinery for square tropical matrices.

Provides the tropical determinant (best assignment value), enumeration of
all optimal permutations, the second-best assignment value, the tropical
volume (gap between best and second best), and parity analysis of the set
of optimal permutations.

The solver is a shortest-augmenting-path Hungarian method run on exact
integers: rational entries are scaled by the common denominator, so every
comparison is exact and knife-edge ties are preserved.  Bottom entries are
excluded arcs (forbidden assignment cells).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .core import Entry, Semiring, TropMatrix, require_finite, require_square
from .errors import DimensionError, DomainError

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., d-1} given by its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise DomainError(f"not a permutation: {self.images}")

    def __len__(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(tuple(range(d)))

    @property
    def parity(self) -> int:
        """+1 for even, -1 for odd (sign of the permutation)."""
        seen = [False] * len(self.images)
        cycles = 0
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycles += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
        return 1 if (len(self.images) - cycles) % 2 == 0 else -1

    def weight_of(self, A: TropMatrix) -> Entry:
        """Assignment weight sum a[i, images[i]]; Bottom if any cell is Bottom."""
        if len(self.images) != A.rows or not A.is_square:
            raise DimensionError("permutation length does not match matrix")
        total = Fraction(0)
        for i, j in enumerate(self.images):
            cell = A.entries[i][j]
            if cell is None:
                return None
            total += cell
        return total


def _int_grid(A: TropMatrix) -> tuple[list[list[Optional[int]]], int]:
    """Clear denominators: return (integer grid with None preserved, scale)."""
    dens = {cell.denominator for row in A.entries for cell in row if cell is not None}
    scale = math.lcm(*dens) if dens else 1
    grid = [
        [None if cell is None else cell.numerator * (scale // cell.denominator)
         for cell in row]
        for row in A.entries
    ]
    return grid, scale


def _hungarian_min(grid: list[list[Optional[int]]]):
    """Min-cost perfect matching on an integer grid; None cells are forbidden.

    Returns (total cost, images) or None when no perfect matching exists.
    Shortest augmenting paths with dual potentials; exact throughout.
    """
    n = len(grid)
    u = [0] * n
    v = [0] * (n + 1)  # column n is the virtual start column
    match = [-1] * (n + 1)
    for i in range(n):
        match[n] = i
        j0 = n
        minv: list[Optional[int]] = [None] * (n + 1)
        way = [n] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta: Optional[int] = None
            j1 = -1
            for j in range(n):
                if used[j]:
                    continue
                cell = grid[i0][j]
                if cell is not None:
                    cur = cell - u[i0] - v[j]
                    if minv[j] is None or cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] is not None and (delta is None or minv[j] < delta):
                    delta = minv[j]
                    j1 = j
            if delta is None:
                return None  # some row set cannot be matched
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                elif minv[j] is not None:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == -1:
                break
        while j0 != n:
            j2 = way[j0]
            match[j0] = match[j2]
            j0 = j2
    images = [-1] * n
    for j in range(n):
        if match[j] >= 0:
            images[match[j]] = j
    total = sum(grid[r][images[r]] for r in range(n))
    return total, tuple(images)


def solve_optimal(A: TropMatrix) -> tuple[Entry, Optional[Permutation]]:
    """Best assignment value and one witness permutation.

    Minimizes in min-plus, maximizes in max-plus.  Returns (Bottom, None)
    when every permutation hits a Bottom cell.
    """
    require_square(A)
    grid, scale = _int_grid(A)
    if A.semiring is Semiring.MAX:
        grid = [[None if c is None else -c for c in row] for row in grid]
    res = _hungarian_min(grid)
    if res is None:
        return None, None
    total, images = res
    if A.semiring is Semiring.MAX:
        total = -total
    return Fraction(total, scale), Permutation(images)


def tdet(A: TropMatrix) -> tuple[Entry, Optional[Permutation]]:
    """Tropical determinant: optimal assignment value plus a witness."""
    return solve_optimal(A)


def lex_optimal_permutation(A: TropMatrix) -> Optional[Permutation]:
    """Lexicographically smallest permutation attaining the tropical determinant."""
    value, perm = solve_optimal(A)
    if perm is None:
        return None
    d = A.rows
    ident = Permutation.identity(d)
    if ident.weight_of(A) == value:
        return ident  # the identity is lex-minimal among all permutations
    chosen: list[int] = []
    used: set[int] = set()
    prefix = Fraction(0)
    for i in range(d):
        for c in range(d):
            if c in used:
                continue
            cell = A.entries[i][c]
            if cell is None:
                continue
            rest_cols = [j for j in range(d) if j not in used and j != c]
            if rest_cols:
                sub = TropMatrix(
                    A.semiring,
                    tuple(tuple(A.entries[r][j] for j in rest_cols)
                          for r in range(i + 1, d)),
                )
                sub_val, _ = solve_optimal(sub)
                if sub_val is None:
                    continue
            else:
                sub_val = Fraction(0)
            if prefix + cell + sub_val == value:
                chosen.append(c)
                used.add(c)
                prefix += cell
                break
        else:  # pragma: no cover - contradicts solver optimality
            raise AssertionError("optimal prefix could not be extended")
    return Permutation(tuple(chosen))


def _visit_optima(A: TropMatrix, visit: Callable[[tuple[int, ...]], bool]) -> bool:
    """Depth-first walk over all optimal permutations in lexicographic order.

    ``visit`` gets each image tuple and returns False to stop early.
    Returns True iff the enumeration ran to completion.
    """
    value, perm = solve_optimal(A)
    if perm is None:
        return True
    grid, scale = _int_grid(A)
    if A.semiring is Semiring.MIN:
        grid = [[None if c is None else -c for c in row] for row in grid]
        target = -(value * scale)
    else:
        target = value * scale
    target = int(target)
    d = len(grid)
    row_best = [max(c for c in row if c is not None) for row in grid]
    suffix_best = [0] * (d + 1)
    for i in range(d - 1, -1, -1):
        suffix_best[i] = suffix_best[i + 1] + row_best[i]

    stopped = False

    def rec(i: int, mask: int, partial: int, images: list[int]) -> None:
        nonlocal stopped
        if stopped:
            return
        if i == d:
            if not visit(tuple(images)):
                stopped = True
            return
        for c in range(d):
            if mask >> c & 1:
                continue
            cell = grid[i][c]
            if cell is None:
                continue
            if partial + cell + suffix_best[i + 1] < target:
                continue
            images.append(c)
            rec(i + 1, mask | (1 << c), partial + cell, images)
            images.pop()
            if stopped:
                return

    rec(0, 0, 0, [])
    return not stopped


def enumerate_optima(A: TropMatrix, cap: int = DEFAULT_CAP) -> tuple[list[Permutation], bool]:
    """All permutations attaining the tropical determinant, in lex order.

    Returns (permutations, truncated); at most ``cap`` permutations are
    collected and ``truncated`` is True when the cap cut the enumeration off.
    """
    if cap < 1:
        raise DomainError("cap must be positive")
    found: list[Permutation] = []

    def visit(images: tuple[int, ...]) -> bool:
        found.append(Permutation(images))
        return len(found) < cap

    completed = _visit_optima(A, visit)
    return found, not completed


def second_best(A: TropMatrix) -> Fraction:
    """Best assignment value over all permutations other than the optimum.

    Re-solves with each optimal edge individually forbidden and keeps the
    best outcome; with multiple optima this equals the optimal value itself.
    """
    require_square(A)
    require_finite(A)
    if A.rows < 2:
        raise DomainError("second-best value needs dimension >= 2")
    value, perm = solve_optimal(A)
    best2: Entry = None
    rows = [list(r) for r in A.entries]
    for i, j in enumerate(perm.images):
        saved = rows[i][j]
        rows[i][j] = None
        forbidden = TropMatrix(A.semiring, tuple(tuple(r) for r in rows))
        cand, _ = solve_optimal(forbidden)
        best2 = A.semiring.combine(best2, cand)
        rows[i][j] = saved
    if best2 is None:  # pragma: no cover - impossible for finite d >= 2
        raise AssertionError("no second permutation found")
    return best2


def tvol(A: TropMatrix) -> Fraction:
    """Tropical volume: |tdet - second best|.

    Zero exactly when at least two distinct optimal permutations exist
    (tropical singularity); invariant under transposition, row/column
    permutations and translations.
    """
    require_square(A)
    require_finite(A)
    if A.rows < 2:
        raise DomainError("tropical volume needs dimension >= 2")
    value, _ = solve_optimal(A)
    return abs(value - second_best(A))


@dataclass(frozen=True)
class AssignmentCertificate:
    """Summary of the assignment landscape of a finite square matrix."""

    best_value: Fraction
    best_perm: Permutation
    second_value: Fraction
    tvol: Fraction
    optimum_unique: bool


def certificate(A: TropMatrix) -> AssignmentCertificate:
    require_square(A)
    require_finite(A)
    if A.rows < 2:
        raise DomainError("certificate needs dimension >= 2")
    value, _ = solve_optimal(A)
    perm = lex_optimal_permutation(A)
    second = second_best(A)
    gap = abs(value - second)
    return AssignmentCertificate(value, perm, second, gap, gap > 0)


class ParityVerdict(Enum):
    SAME = "same-parity"
    MIXED = "mixed-parity"
    UNKNOWN = "unknown"


class ParityMethod(Enum):
    UNIQUENESS_SHORTCUT = "uniqueness-shortcut"
    FULL_ENUMERATION = "full-enumeration"
    CAPPED = "capped"


@dataclass(frozen=True)
class ParityReport:
    """Do all optimal permutations share one parity?

    ``verdict`` is UNKNOWN only when enumeration was cut off by the cap.
    ``witness`` carries an opposite-parity pair on a MIXED verdict;
    ``selection`` names the submatrix (column or row subset) a verdict came
    from when the report was produced by a sign-genericity scan.
    """

    verdict: ParityVerdict
    enumerated_count: int
    method: ParityMethod
    witness: Optional[tuple[Permutation, Permutation]] = None
    selection: Optional[tuple[int, ...]] = None


def parity_report(A: TropMatrix, cap: int = DEFAULT_CAP) -> ParityReport:
    """Parity analysis of the optimal permutations of a square matrix.

    A finite matrix with positive tropical volume has a unique optimum and
    short-circuits to SAME; otherwise the optima are enumerated (up to
    ``cap``), stopping as soon as both parities have been seen.
    """
    require_square(A)
    if cap < 1:
        raise DomainError("cap must be positive")
    if A.is_finite and A.rows >= 2 and tvol(A) > 0:
        return ParityReport(ParityVerdict.SAME, 1, ParityMethod.UNIQUENESS_SHORTCUT)

    parities: set[int] = set()
    first: dict[int, Permutation] = {}
    count = 0

    def visit(images: tuple[int, ...]) -> bool:
        nonlocal count
        count += 1
        p = Permutation(images)
        first.setdefault(p.parity, p)
        parities.add(p.parity)
        if len(parities) == 2:
            return False
        return count < cap

    completed = _visit_optima(A, visit)
    if len(parities) == 2:
        return ParityReport(
            ParityVerdict.MIXED, count, ParityMethod.FULL_ENUMERATION,
            witness=(first[1], first[-1]),
        )
    if completed:
        return ParityReport(ParityVerdict.SAME, count, ParityMethod.FULL_ENUMERATION)
    return ParityReport(ParityVerdict.UNKNOWN, count, ParityMethod.CAPPED)
