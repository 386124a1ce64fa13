"""Interpolate a variety whose tangent codes at chosen points are prescribed."""

from tangentcodes.construct import CodeFamily, interpolated_variety
from tangentcodes.gf import Field

F = Field(2, 1)
pts = [(0, 0, 0, 0, 0), (1, 0, 1, 0, 0), (0, 1, 1, 1, 0), (1, 1, 0, 0, 1)]
mats = [[[1, 0, 1, 1, 0], [0, 1, 1, 0, 1]],
        [[1, 1, 0, 0, 0], [0, 0, 1, 1, 1]],
        [[1, 0, 0, 1, 1], [0, 1, 0, 1, 0]],
        [[1, 1, 1, 1, 1], [0, 1, 0, 0, 1]]]
X = interpolated_variety(CodeFamily(F, 2, pts, mats))
for i, f in enumerate(X.F, 1):
    print(f"f{i}: degree {f.degree()}, {len(f.terms)} terms")
for a, H in zip(pts, mats):
    print(a, X.jacobian_at(a) == H)
