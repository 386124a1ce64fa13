"""Correct one error in a tangent code word using precomputed eliminants."""

import numpy as np

from tangentcodes.construct import hamming_variety
from tangentcodes.decode import decode, precompute
from tangentcodes.gf import Field
from tangentcodes.suites import random_rational_codeword

F = Field(2, 2)
X = hamming_variety(F, 2, 3)
tables = precompute(X, 1)
rng = np.random.default_rng(0)
a = X.rational_points(1)[5]
v = random_rational_codeword(X.tangent_code(a).code, rng)
w = list(v)
w[3] ^= 1
v2, e, support = decode(tables, a, w)
print("point   ", a)
print("sent    ", v)
print("received", w)
print("decoded ", v2, "error", e, "support", support)
assert v2 == v
