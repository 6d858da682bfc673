"""Dequantized tropical volume and its numerical semantics.

For a max-plus d x m matrix A (m >= d) the upper dequantized volume is

    qvol+ A = max over d-element column subsets I of tper A[I],

where tper is the max-plus assignment value of the square submatrix.  Two
independent routes compute it: exhaustive subset enumeration, and an exact
integral transportation linear program solved by successive shortest paths.

When the matrix obtained by stacking a zero row on top of A is *sign
generic* -- every maximal square submatrix has all its optimal permutations
of one parity -- the upper and lower dequantized volumes coincide and the
common value is the log-limit of the ordinary volumes of monomial lifts
``c * t**a_ij``; :func:`dequant_slope` measures that limit numerically and
:func:`volume_bound_check` tests the resulting upper bound on ordinary
polytope volumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .assignment import (
    DEFAULT_CAP,
    ParityMethod,
    ParityReport,
    ParityVerdict,
    Permutation,
    lex_optimal_permutation,
    parity_report,
    solve_optimal,
)
from .core import Entry, Semiring, TropMatrix, as_rational, require_square
from .errors import (
    DegenerateHullError,
    DimensionError,
    DomainError,
    NotSignGenericError,
    ParityUnknownError,
)
from .geometry import hull_volume

DEFAULT_T_GRID = (100, 1_000, 10_000, 100_000, 1_000_000)

BRUTE_FORCE = "brute-force"
TRANSPORT_LP = "transport-lp"


def _require_max(A: TropMatrix) -> None:
    if A.semiring is not Semiring.MAX:
        raise DomainError("dequantization operates on max-plus matrices")


def tper(C: TropMatrix) -> Entry:
    """Tropical permanent: max-plus assignment value; Bottom cells forbidden."""
    require_square(C)
    _require_max(C)
    value, _ = solve_optimal(C)
    return value


def bar_matrix(A: TropMatrix) -> TropMatrix:
    """A with an identically zero row stacked on top."""
    _require_max(A)
    zero_row = tuple(Fraction(0) for _ in range(A.cols))
    return TropMatrix(Semiring.MAX, (zero_row,) + A.entries)


def _column_submatrix(A: TropMatrix, cols: Sequence[int]) -> TropMatrix:
    return TropMatrix(A.semiring, tuple(tuple(row[c] for c in cols) for row in A.entries))


def _row_submatrix(A: TropMatrix, rows: Sequence[int]) -> TropMatrix:
    return TropMatrix(A.semiring, tuple(A.entries[r] for r in rows))


@dataclass(frozen=True)
class QvolResult:
    value: Entry
    witness_columns: Optional[tuple[int, ...]]
    witness_perm: Optional[Permutation]
    method: str
    sign_generic_bar: Optional[ParityVerdict]


def _qvol_brute(A: TropMatrix) -> tuple[Entry, Optional[tuple[int, ...]], Optional[Permutation]]:
    best: Entry = None
    witness: Optional[tuple[int, ...]] = None
    for cols in combinations(range(A.cols), A.rows):
        v, _ = solve_optimal(_column_submatrix(A, cols))
        if v is not None and (best is None or v > best):
            best, witness = v, cols
    if witness is None:
        return None, None, None
    perm = lex_optimal_permutation(_column_submatrix(A, witness))
    return best, witness, perm


def _qvol_transport(A: TropMatrix) -> tuple[Entry, Optional[tuple[int, ...]], Optional[Permutation]]:
    """Exact min-cost flow: d unit augmentations by shortest path.

    Bipartite network source -> rows -> columns -> sink, unit capacities,
    arc cost -a_ij on finite cells; the transportation polytope has integral
    vertices, so the flow value equals qvol+ exactly.
    """
    d, m = A.rows, A.cols
    dens = {c.denominator for row in A.entries for c in row if c is not None}
    scale = math.lcm(*dens) if dens else 1
    S, T = 0, 1 + d + m
    n_nodes = d + m + 2
    # arcs: (head, capacity, cost); residual partner is index ^ 1
    arcs: list[list[int]] = []
    out: list[list[int]] = [[] for _ in range(n_nodes)]

    def add_arc(u: int, v: int, cap: int, cost: int) -> None:
        out[u].append(len(arcs))
        arcs.append([v, cap, cost])
        out[v].append(len(arcs))
        arcs.append([u, 0, -cost])

    for i in range(d):
        add_arc(S, 1 + i, 1, 0)
    for i in range(d):
        for j in range(m):
            cell = A.entries[i][j]
            if cell is not None:
                w = cell.numerator * (scale // cell.denominator)
                add_arc(1 + i, 1 + d + j, 1, -w)
    for j in range(m):
        add_arc(1 + d + j, T, 1, 0)

    total_cost = 0
    for _ in range(d):
        dist: list[Optional[int]] = [None] * n_nodes
        via: list[int] = [-1] * n_nodes
        dist[S] = 0
        changed = True
        while changed:  # Bellman-Ford; the residual network stays cycle-safe
            changed = False
            for u in range(n_nodes):
                du = dist[u]
                if du is None:
                    continue
                for a in out[u]:
                    head, cap, cost = arcs[a]
                    if cap > 0 and (dist[head] is None or du + cost < dist[head]):
                        dist[head] = du + cost
                        via[head] = a
                        changed = True
        if dist[T] is None:
            return None, None, None  # some row cannot be matched at all
        node = T
        while node != S:
            a = via[node]
            arcs[a][1] -= 1
            arcs[a ^ 1][1] += 1
            node = arcs[a ^ 1][0]
        total_cost += dist[T]

    assign: dict[int, int] = {}
    for u in range(1, 1 + d):
        for a in out[u]:
            head, cap, _ = arcs[a]
            if 1 + d <= head < 1 + d + m and cap == 0 and a % 2 == 0:
                assign[u - 1] = head - 1 - d
    cols = tuple(sorted(assign.values()))
    pos = {c: k for k, c in enumerate(cols)}
    perm = Permutation(tuple(pos[assign[i]] for i in range(d)))
    return Fraction(-total_cost, scale), cols, perm


def qvol_plus(A: TropMatrix, method: str = BRUTE_FORCE,
              cap: int = DEFAULT_CAP, compute_parity: bool = True) -> QvolResult:
    """Upper dequantized tropical volume with a witness.

    ``method`` selects brute-force subset enumeration or the transportation
    LP; both agree exactly on every input.  The witness permutation attains
    the assignment optimum on the witness column submatrix.
    """
    _require_max(A)
    if A.cols < A.rows:
        raise DimensionError(
            f"need at least as many columns as rows, got {A.rows}x{A.cols}"
        )
    if method == BRUTE_FORCE:
        value, cols, perm = _qvol_brute(A)
    elif method == TRANSPORT_LP:
        value, cols, perm = _qvol_transport(A)
    else:
        raise DomainError(f"unknown method {method!r}")
    verdict = sign_generic(A, bar=True, cap=cap).verdict if compute_parity else None
    return QvolResult(value, cols, perm, method, verdict)


def sign_generic(A: TropMatrix, bar: bool = False, cap: int = DEFAULT_CAP) -> ParityReport:
    """Parity scan over every maximal square submatrix.

    SAME only if all submatrices pass; MIXED carries the offending selection
    (column subset, or row subset for tall matrices) and an opposite-parity
    pair of permutations; UNKNOWN when some enumeration hit the cap.
    """
    _require_max(A)
    M = bar_matrix(A) if bar else A
    r, c = M.rows, M.cols
    if r <= c:
        selections = [(cols, _column_submatrix(M, cols))
                      for cols in combinations(range(c), r)]
    else:
        selections = [(rows, _row_submatrix(M, rows))
                      for rows in combinations(range(r), c)]
    total = 0
    capped = None
    for sel, sub in selections:
        rep = parity_report(sub, cap=cap)
        total += rep.enumerated_count
        if rep.verdict is ParityVerdict.MIXED:
            return ParityReport(ParityVerdict.MIXED, total, rep.method,
                                witness=rep.witness, selection=sel)
        if rep.verdict is ParityVerdict.UNKNOWN and capped is None:
            capped = sel
    if capped is not None:
        return ParityReport(ParityVerdict.UNKNOWN, total, ParityMethod.CAPPED,
                            selection=capped)
    return ParityReport(ParityVerdict.SAME, total, ParityMethod.FULL_ENUMERATION)


def qvol(A: TropMatrix, method: str = BRUTE_FORCE, cap: int = DEFAULT_CAP) -> Entry:
    """Dequantized tropical volume; defined only for sign-generic inputs.

    Raises :class:`NotSignGenericError` (with the witness submatrix) or
    :class:`ParityUnknownError` rather than silently returning the upper
    value for inputs where upper and lower volumes may differ.
    """
    rep = sign_generic(A, bar=True, cap=cap)
    if rep.verdict is ParityVerdict.MIXED:
        raise NotSignGenericError(
            f"optimal permutations of mixed parity in submatrix {rep.selection}",
            report=rep,
        )
    if rep.verdict is ParityVerdict.UNKNOWN:
        raise ParityUnknownError(
            f"parity enumeration capped at {cap} in submatrix {rep.selection}",
            report=rep,
        )
    return qvol_plus(A, method=method, cap=cap, compute_parity=False).value


@dataclass(frozen=True)
class LiftSpec:
    """Monomial lift of a max-plus exponent matrix.

    Entry (i, j) evaluates to ``coefficients[i][j] * t ** base[i][j]``, with
    the multiplicative boost applied on the distinguished cells (by default
    the optimal diagonal of the qvol+ witness submatrix).  Bottom exponents
    evaluate to 0.
    """

    base: TropMatrix
    coefficients: tuple[tuple[Fraction, ...], ...]
    boost: Fraction
    boost_cells: frozenset[tuple[int, int]] = field(default_factory=frozenset)


def default_lift(A: TropMatrix) -> LiftSpec:
    """Unit coefficients with boost (d+1)! on the witness diagonal."""
    _require_max(A)
    res = qvol_plus(A, compute_parity=False)
    cells = set()
    if res.witness_columns is not None:
        for i, k in enumerate(res.witness_perm.images):
            cells.add((i, res.witness_columns[k]))
    ones = tuple(tuple(Fraction(1) for _ in range(A.cols)) for _ in range(A.rows))
    return LiftSpec(A, ones, Fraction(math.factorial(A.rows + 1)), frozenset(cells))


def lift_eval(spec: LiftSpec, t) -> list[list[Fraction]]:
    """Evaluate the lift at parameter t > 1 (exact for integer exponents)."""
    tq = as_rational(t)
    if tq <= 1:
        raise DomainError("lift evaluation needs t > 1")
    out = []
    for i, row in enumerate(spec.base.entries):
        line = []
        for j, e in enumerate(row):
            if e is None:
                line.append(Fraction(0))
                continue
            if e.denominator == 1:
                val = tq ** e.numerator
            else:
                val = Fraction(float(tq) ** float(e))
            val *= spec.coefficients[i][j]
            if (i, j) in spec.boost_cells:
                val *= spec.boost
            line.append(val)
        out.append(line)
    return out


@dataclass(frozen=True)
class SlopeResult:
    slope: float
    log_ratio_at_max_t: float
    qvol_value: Entry
    rows: tuple[tuple[Fraction, Fraction, float], ...]  # (t, volume, log vol / log t)


def dequant_slope(A: TropMatrix, t_grid: Sequence = DEFAULT_T_GRID,
                  cap: int = DEFAULT_CAP) -> SlopeResult:
    """Numerical log-limit of lifted hull volumes against qvol.

    Evaluates the default monomial lift on the grid, takes the exact hull
    volume of the columns at each t, and returns the least-squares slope of
    log volume against log t (plus the raw ratio at the largest t).  The
    slope estimate converges to the dequantized volume.
    """
    _require_max(A)
    if A.rows > 3:
        raise DomainError("slope experiment implemented for at most 3 rows")
    if all(A.col(j) == A.col(0) for j in range(A.cols)):
        raise DegenerateHullError("all columns coincide; every lift has zero volume")
    value = qvol(A, cap=cap)  # also enforces sign-genericity of the bar matrix
    ts = sorted(as_rational(t) for t in t_grid)
    if not ts or ts[0] <= 1:
        raise DomainError("t grid must contain values > 1")
    spec = default_lift(A)
    rows = []
    for t in ts:
        mat = lift_eval(spec, t)
        points = [tuple(mat[i][j] for i in range(A.rows)) for j in range(A.cols)]
        vol, _ = hull_volume(points)
        if vol == 0:
            raise DegenerateHullError(
                f"lifted column configuration has zero volume at t={t}"
            )
        rows.append((t, vol, math.log(vol) / math.log(t)))
    logt = np.array([math.log(t) for t, _, _ in rows])
    logv = np.array([math.log(v) for _, v, _ in rows])
    slope = float(np.polyfit(logt, logv, 1)[0])
    return SlopeResult(slope, rows[-1][2], value, tuple(rows))


@dataclass(frozen=True)
class BoundReport:
    volume: Fraction
    alpha: int
    qvol_log: Optional[float]  # qvol+ of the entrywise-log matrix
    bound: float
    holds: bool


BOUND_SLACK = 1e-9  # relative slack for the double-precision comparison


def volume_bound_check(rows: Sequence[Sequence]) -> BoundReport:
    """Test vol(conv A) <= alpha * (d+1) * exp(qvol+ (log A)) for A >= 0.

    Zero entries map to Bottom under the entrywise logarithm.  The hull
    volume and alpha are exact; the bound itself is a double-precision
    number compared with relative slack ``BOUND_SLACK``.  A False verdict
    would be a disproof candidate and is reported with full data.
    """
    grid = [[as_rational(c) for c in row] for row in rows]
    d = len(grid)
    if d > 3:
        raise DomainError("bound check implemented for at most 3 rows")
    if any(c < 0 for row in grid for c in row):
        raise DomainError("bound check needs a nonnegative matrix")
    m = len(grid[0])
    if any(len(row) != m for row in grid):
        raise DimensionError("ragged rows")
    points = [tuple(grid[i][j] for i in range(d)) for j in range(m)]
    vol, alpha = hull_volume(points)
    log_entries = [
        [None if c == 0 else Fraction(math.log(c)) for c in row] for row in grid
    ]
    L = TropMatrix(Semiring.MAX, tuple(tuple(r) for r in log_entries))
    if m >= d:
        q = qvol_plus(L, compute_parity=False).value
    else:
        q = None
    if q is None:
        bound = 0.0
        holds = vol == 0
    else:
        bound = alpha * (d + 1) * math.exp(float(q))
        holds = float(vol) <= bound * (1.0 + BOUND_SLACK)
    return BoundReport(vol, alpha, None if q is None else float(q), bound, holds)


def cauchy_binet_check(B: TropMatrix, C: TropMatrix, I: Sequence[int]) -> bool:
    """Product formula for tropical permanents of column selections.

    Verifies tper((B (x) C)[I]) == max over d-subsets K of
    tper B[K] + tper C[K, I]; expected to hold for every input.
    """
    _require_max(B)
    _require_max(C)
    if B.cols != C.rows:
        raise DimensionError("inner dimensions disagree")
    d = B.rows
    I = tuple(I)
    if len(I) != d or not all(0 <= j < C.cols for j in I):
        raise DimensionError("I must select d distinct columns of the product")
    from .core import trop_mat_mul

    A = trop_mat_mul(B, C)
    lhs = tper(_column_submatrix(A, I))
    rhs: Entry = None
    for K in combinations(range(B.cols), d):
        left = tper(_column_submatrix(B, K))
        if left is None:
            continue
        mid = TropMatrix(
            Semiring.MAX, tuple(tuple(C.entries[k][j] for j in I) for k in K)
        )
        right = tper(mid)
        if right is None:
            continue
        cand = left + right
        if rhs is None or cand > rhs:
            rhs = cand
    return lhs == rhs


def _qvol_value_or_bottom(A: TropMatrix) -> Entry:
    """qvol+ value, treating matrices with fewer columns than rows as Bottom."""
    if A.cols < A.rows:
        return None
    return qvol_plus(A, compute_parity=False).value


def idempotent_measure_check(A: TropMatrix, B: TropMatrix,
                             cap: int = DEFAULT_CAP) -> Optional[bool]:
    """qvol of a union equals the max of the parts, under sign-genericity.

    Returns True/False for the exact comparison, or None (skip) when the
    concatenation's bar matrix is not sign generic so the left side is not
    defined.
    """
    _require_max(A)
    _require_max(B)
    if A.rows != B.rows:
        raise DimensionError("matrices must have the same number of rows")
    C = TropMatrix(
        Semiring.MAX,
        tuple(ra + rb for ra, rb in zip(A.entries, B.entries)),
    )
    if sign_generic(C, bar=True, cap=cap).verdict is not ParityVerdict.SAME:
        return None
    lhs = qvol_plus(C, compute_parity=False).value
    rhs = Semiring.MAX.combine(_qvol_value_or_bottom(A), _qvol_value_or_bottom(B))
    return lhs == rhs
