"""Tropical distance, diameter and volume: the basic metric toolkit.

The tropical distance between two vectors is the spread (max minus min) of
their coordinatewise difference; it vanishes exactly when the vectors agree
up to adding a constant.  For a square matrix the diameter is the largest
pairwise row distance, and the volume is the gap between the best and the
second-best assignment value, a measure of tropical non-singularity.
"""

from fractions import Fraction

from tropiso import (
    Semiring,
    TropMatrix,
    certificate,
    tdet,
    tdist,
    tdiam,
    translate,
    tvol,
)


def unit(d):
    return TropMatrix.from_rows(
        [[1 if i == j else 0 for j in range(d)] for i in range(d)], Semiring.MAX
    )


print("== tropical distance ==")
print("tdist((3,1), (1,2))      =", tdist([3, 1], [1, 2]))
print("tdist((5,5,5), (2,2,2))  =", tdist([5, 5, 5], [2, 2, 2]), " (constant shift)")
print("tdist(2v, 2w) / tdist(v, w) =",
      tdist([0, 0], [0, 2]) / tdist([0, 0], [0, 1]), " (homogeneity)")

print("\n== the unit matrix attains diameter = volume = 2 in every dimension ==")
for d in range(2, 7):
    U = unit(d)
    print(f"d={d}: tdiam={tdiam(U)}  tvol={tvol(U)}")

print("\n== assignment certificate of a 4x4 matrix ==")
A = TropMatrix.from_rows(
    [[3, 1, 0, 2], [0, 2, 1, 1], [1, 0, 3, 0], [2, 2, 0, Fraction(5, 2)]],
    Semiring.MAX,
)
cert = certificate(A)
print("best value      :", cert.best_value, "via", cert.best_perm.images)
print("second best     :", cert.second_value)
print("tropical volume :", cert.tvol,
      "(unique optimum)" if cert.optimum_unique else "(tied optima)")

print("\n== volume and diameter are translation invariants ==")
shifted = translate(A, [5, -2, 0, 1], [Fraction(1, 2), 0, -3, 4])
print("tvol before:", tvol(A), " after row/col offsets:", tvol(shifted))
print("tdet moves by the offset total:", tdet(A)[0], "->", tdet(shifted)[0])
