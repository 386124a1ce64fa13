"""Enumerate the binary Hamming variety and print its tangent codes."""

from tangentcodes.codes import hamming_code
from tangentcodes.construct import hamming_variety
from tangentcodes.gf import Field

F = Field(2, 1)
X = hamming_variety(F, 2, 3)
C = hamming_code(F, 2, 3)
points = X.rational_points(1)
print(f"{len(points)} points over GF(2)")
for a in points[:4]:
    T = X.tangent_code(a).code
    print(a, (T.n, T.k, T.min_distance()), "Hamming" if T == C else "other")
