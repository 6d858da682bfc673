"""Shared brute-force oracles and random generators.

Everything here is deliberately independent of the library's solver paths:
assignment values come from full permutation enumeration, qvol from full
column-subset enumeration.  Rational entries are scaled to integers first,
which keeps the enumeration exact and fast.
"""

import math
import random
from fractions import Fraction
from itertools import combinations, permutations

from tropiso import Semiring, TropMatrix


def scaled_grid(A: TropMatrix):
    dens = {c.denominator for row in A.entries for c in row if c is not None}
    scale = math.lcm(*dens) if dens else 1
    grid = [
        [None if c is None else c.numerator * (scale // c.denominator) for c in row]
        for row in A.entries
    ]
    return grid, scale


def brute_assignment_values(A: TropMatrix):
    """(best, second best) over all permutations; None encodes Bottom.

    ``second`` is the best value over permutations other than one fixed
    optimum, so ties make it equal to ``best``.
    """
    grid, scale = scaled_grid(A)
    d = len(grid)
    sign = -1 if A.semiring is Semiring.MAX else 1
    best = second = None
    for p in permutations(range(d)):
        tot = 0
        ok = True
        for i, j in enumerate(p):
            cell = grid[i][j]
            if cell is None:
                ok = False
                break
            tot += sign * cell
        if not ok:
            continue
        if best is None or tot < best:
            best, second = tot, best
        elif second is None or tot < second:
            second = tot
    unscale = lambda v: None if v is None else Fraction(sign * v, scale)
    return unscale(best), unscale(second)


def brute_tvol(A: TropMatrix) -> Fraction:
    best, second = brute_assignment_values(A)
    return abs(best - second)


def brute_optima(A: TropMatrix):
    """Image tuples of all optimal permutations, in lexicographic order."""
    grid, scale = scaled_grid(A)
    d = len(grid)
    sign = -1 if A.semiring is Semiring.MAX else 1
    scored = []
    for p in permutations(range(d)):
        tot = 0
        ok = True
        for i, j in enumerate(p):
            cell = grid[i][j]
            if cell is None:
                ok = False
                break
            tot += sign * cell
        if ok:
            scored.append((tot, p))
    if not scored:
        return []
    best = min(t for t, _ in scored)
    return [p for t, p in scored if t == best]


def brute_tper(A: TropMatrix):
    grid, scale = scaled_grid(A)
    d = len(grid)
    best = None
    for p in permutations(range(d)):
        tot = 0
        ok = True
        for i, j in enumerate(p):
            cell = grid[i][j]
            if cell is None:
                ok = False
                break
            tot += cell
        if ok and (best is None or tot > best):
            best = tot
    return None if best is None else Fraction(best, scale)


def brute_qvol_plus(A: TropMatrix):
    best = None
    for cols in combinations(range(A.cols), A.rows):
        sub = TropMatrix(
            A.semiring, tuple(tuple(row[c] for c in cols) for row in A.entries)
        )
        v = brute_tper(sub)
        if v is not None and (best is None or v > best):
            best = v
    return best


def random_finite(rng: random.Random, rows: int, cols: int, semiring: Semiring,
                  lo: int = -4, hi: int = 4, den: int = 4) -> TropMatrix:
    ent = tuple(
        tuple(Fraction(rng.randint(lo * den, hi * den), den) for _ in range(cols))
        for _ in range(rows)
    )
    return TropMatrix(semiring, ent)


def random_with_bottom(rng: random.Random, rows: int, cols: int,
                       semiring: Semiring, p_bottom: float = 0.25,
                       lo: int = -4, hi: int = 4) -> TropMatrix:
    ent = tuple(
        tuple(
            None if rng.random() < p_bottom else Fraction(rng.randint(lo, hi))
            for _ in range(cols)
        )
        for _ in range(rows)
    )
    return TropMatrix(semiring, ent)


def unit_matrix(d: int, semiring: Semiring) -> TropMatrix:
    """Ordinary unit matrix: ones on the diagonal, zeros elsewhere."""
    return TropMatrix.from_rows(
        [[1 if i == j else 0 for j in range(d)] for i in range(d)], semiring
    )


def family3(lam) -> TropMatrix:
    """One-parameter family of 3x3 isodiametric min-standard matrices."""
    lam = Fraction(lam)
    return TropMatrix.from_rows(
        [[0, 1, 1], [1, 0, lam], [1, 2 - lam, 0]], Semiring.MIN
    )


D4_MATRIX = TropMatrix.from_rows(
    [[0, 1, 1, 1],
     [1, 0, Fraction(5, 4), Fraction(3, 4)],
     [1, Fraction(3, 4), 0, Fraction(5, 4)],
     [1, Fraction(5, 4), Fraction(3, 4), 0]],
    Semiring.MIN,
)
