"""Self-contained verification suites, shared by the CLI and the test-suite.

Every suite is deterministic given its seed and returns a JSON-ready dict
with a boolean ``pass`` and raw counters.
"""

from __future__ import annotations

import itertools
from typing import Callable

import numpy as np

from . import linalg as la
from .codes import (LinearCode, direct_sum_code, hamming_code, is_near_mds, near_mds_rank_criterion, random_code,
                    u_u_plus_v, weight)
from .construct import (CodeFamily, constant_tangent_variety, hamming_variety, interpolate_code_family,
                        interpolate_isometries, is_hamming_matrix, isometry_morphism, random_monomial_matrix,
                        variety_from_code)
from .decode import DecodeError, decode, precompute
from .gf import Field
from .poly import MultiPoly, jacobian_at, parse_poly
from .variety import (AffineVariety, GraphSection, deformation_sample, extend_variety, fibered_product_variety,
                      product_variety)


def _random_poly(F: Field, n: int, e: int, rng: np.random.Generator, max_deg: int = 3, terms: int = 4) -> MultiPoly:
    elems = F.subfield_elements(e)
    f = MultiPoly.zero(F, n)
    for _ in range(int(rng.integers(1, terms + 1))):
        mono = [0] * n
        for _ in range(int(rng.integers(0, max_deg + 1))):
            mono[int(rng.integers(n))] += 1
        f = f + MultiPoly.monomial(F, n, mono, elems[int(rng.integers(1, len(elems)))])
    return f


def random_rational_codeword(C: LinearCode, rng: np.random.Generator) -> list[int]:
    F = C.field
    elems = F.subfield_elements(C.m)
    v = [0] * C.n
    for row in C.generator_matrix():
        c = elems[int(rng.integers(len(elems)))]
        v = [F.add(x, F.mul(c, y)) for x, y in zip(v, row)]
    return v


# --- duality ------------------------------------------------------------------------------

_DUALITY_FIELDS = [(2, 2), (3, 1), (5, 1), (3, 2), (2, 3)]


def duality(seed: int = 0, count: int = 50, combos: int = 20) -> dict:
    """dim T_a + dim grad_a = n, grad_a is the dual of T_a, ideal gradients lie in the row space."""
    rng = np.random.default_rng(seed)
    fields = {pm: Field(*pm) for pm in _DUALITY_FIELDS}
    st = {"varieties": 0, "dimension_ok": 0, "dual_ok": 0, "combinations": 0, "row_space_ok": 0}
    for t in range(count):
        F = fields[_DUALITY_FIELDS[t % len(_DUALITY_FIELDS)]]
        n = int(rng.integers(2, 5))
        m = int(rng.integers(1, 4))
        elems = F.subfield_elements(F.M)
        a = [elems[int(rng.integers(len(elems)))] for _ in range(n)]
        gens = []
        for _ in range(m):
            g = _random_poly(F, n, F.M, rng)
            gens.append(g - MultiPoly.constant(F, n, g.evaluate(a)))
        gens = [g for g in gens if not g.is_zero()] or [MultiPoly.variable(F, n, 0) - MultiPoly.constant(F, n, a[0])]
        X = AffineVariety(F, F.M, gens)
        T = X.tangent_code(a).code
        Gc = X.gradient_code(a).code
        J = X.jacobian_at(a)
        st["varieties"] += 1
        st["dimension_ok"] += T.k + la.rank(F, J) == n
        st["dual_ok"] += Gc == T.dual()
        for _ in range(combos):
            h = MultiPoly.zero(F, n)
            for f in gens:
                h = h + _random_poly(F, n, F.M, rng, max_deg=2, terms=3) * f
            grad = [h.partial(i).evaluate(a) for i in range(n)]
            st["combinations"] += 1
            st["row_space_ok"] += la.in_row_space(F, J, grad) if J else not any(grad)
    ok = (st["dimension_ok"] == st["dual_ok"] == st["varieties"]) and st["row_space_ok"] == st["combinations"]
    return {"suite": "duality", "seed": seed, "pass": ok, **st}


# --- weights ----------------------------------------------------------------------------------

def weights(seed: int = 0, count: int = 100, n: int = 8, k: int = 4) -> dict:
    """Minimum-weight words of a puncturing are the punctures of minimum-weight
    words whose support contains the punctured set; both sides by enumeration."""
    F = Field(2, 1)
    rng = np.random.default_rng(seed)
    st = {"codes": 0, "gammas": 0, "equal": 0}
    for _ in range(count):
        C = random_code(F, n, k, rng)
        words = C.codewords()
        wts = (words != 0).sum(axis=1)
        d = int(wts[wts > 0].min())
        min_words = words[wts == d]
        st["codes"] += 1
        for s in range(d):
            for gamma in itertools.combinations(range(n), s):
                keep = [i for i in range(n) if i not in gamma]
                P = C.puncture(gamma).codewords()
                lhs = {tuple(int(x) for x in r) for r in P if int((r != 0).sum()) == d - s}
                rhs = {tuple(int(r[i]) for i in keep) for r in min_words
                       if all(r[g] != 0 for g in gamma)}
                st["gammas"] += 1
                st["equal"] += lhs == rhs
    return {"suite": "weights", "seed": seed, "pass": st["equal"] == st["gammas"], **st}


# --- operations --------------------------------------------------------------------------

def ops_varieties() -> list[tuple[str, AffineVariety, list[MultiPoly], int]]:
    """(name, X, g, s): circle, twisted cubic and Hamming variety with a fibering map g
    and the extension degree s of the points sampled."""
    out = []
    F = Field(3, 3)
    X = AffineVariety(F, 1, [parse_poly(F, "x1^2 + x2^2 - 1", 2)], 1, meta={"name": "circle"})
    out.append(("circle", X, [parse_poly(F, "x1 + x2^2", 2)], 3))
    F = Field(2, 5)
    section = GraphSection((0,), {1: parse_poly(F, "x1^2", 3), 2: parse_poly(F, "x1^3", 3)})
    X = AffineVariety(F, 1, [parse_poly(F, "x2 - x1^2", 3), parse_poly(F, "x3 - x1^3", 3)], 1,
                      section, meta={"name": "twisted cubic"})
    out.append(("twisted cubic", X, [parse_poly(F, "x1*x2 + x3", 3)], 5))
    F = Field(2, 2)
    X = hamming_variety(F, 2, 3)
    out.append(("hamming", X, [parse_poly(F, "x1*x7 + x2", 7), parse_poly(F, "x3^2 + x4*x5", 7)], 2))
    return out


def ops(seed: int = 0, points: int = 20) -> dict:
    """Extension, direct-sum and (u|u+v) tangent-code identities at sampled smooth points."""
    rng = np.random.default_rng(seed)
    report = {"suite": "ops", "seed": seed, "varieties": {}}
    ok = True
    for name, X, g, s in ops_varieties():
        F = X.field
        k = X.dim_hint
        pts = [a for a in X.rational_points(s) if X.is_smooth(a, k)]
        order = rng.permutation(len(pts))
        chosen = [pts[int(i)] for i in order[:points]]
        E, P, Z = extend_variety(X), product_variety(X, X), fibered_product_variety(X, g)
        st = {"points": len(chosen), "extension": 0, "direct_sum": 0, "fibered": 0}
        for idx, a in enumerate(chosen):
            b = chosen[(idx + 1) % len(chosen)]
            T = X.tangent_code(a).code
            tot = 0
            for x in a:
                tot = F.add(tot, x)
            st["extension"] += E.tangent_code(list(a) + [F.neg(tot)]).code == T.extend()
            st["direct_sum"] += P.tangent_code(a + b).code == direct_sum_code(T, X.tangent_code(b).code)
            gx = [[gi.partial(j).evaluate(a) for j in range(X.n)] for gi in g]
            Ya = LinearCode(F, X.n, gx, T.m)
            st["fibered"] += Z.tangent_code(a + a).code == u_u_plus_v(T, Ya)
        good = len(chosen) == points and st["extension"] == st["direct_sum"] == st["fibered"] == len(chosen)
        ok = ok and good
        report["varieties"][name] = st
    report["pass"] = ok
    return report


# --- loci ----------------------------------------------------------------------------------

def loci_varieties() -> list[AffineVariety]:
    F = Field(2, 2)
    specs = [(3, ["x1*x2 + x3^2 + x3", "x1 + x2*x3"]),
             (3, ["x1*x2 + x3"]),
             (4, ["x1*x2 + x3", "x2*x3 + x4"]),
             (4, ["x1^2*x2 + x3*x4 + x1"])]
    return [AffineVariety(F, 1, [parse_poly(F, s, n) for s in gens]) for n, gens in specs]


def loci(seed: int = 0, ds=(1, 2)) -> dict:
    """Determinantal membership in X^(<= d) against brute-force d(T_a) <= d over GF(4)."""
    st = {"points": 0, "checks": 0, "agree": 0, "members": 0, "non_members": 0}
    for X in loci_varieties():
        for a in X.rational_points(2):
            st["points"] += 1
            for d in ds:
                m1 = X.locus_membership("min_dist_leq", a, d=d)
                m2 = X.locus_by_definition("min_dist_leq", a, d=d)
                st["checks"] += 1
                st["agree"] += m1 == m2
                st["members" if m2 else "non_members"] += 1
    ok = st["agree"] == st["checks"] and st["members"] > 0 and st["non_members"] > 0
    return {"suite": "loci", "seed": seed, "pass": ok, **st}


# --- decoding ------------------------------------------------------------------------------

def decode_varieties(seed: int = 0) -> list[tuple[str, AffineVariety]]:
    F = Field(2, 2)
    C = hamming_code(F, 2, 3)
    X = constant_tangent_variety(C, seed=seed)
    return [("constant-tangent", X), ("hamming", hamming_variety(F, 2, 3))]


def decode_points(X: AffineVariety, count: int) -> list[tuple[int, ...]]:
    """All of X(GF(q)) first, then points over GF(q^2) until ``count`` is reached."""
    pts = X.rational_points(1)
    if len(pts) < count:
        base = set(pts)
        pts += [a for a in X.rational_points(2) if a not in base][: count - len(pts)]
    return pts[:count]


def decode_roundtrip(seed: int = 0, points: int = 20, words: int = 5) -> dict:
    """Corrupt-then-decode for every single-position error pattern."""
    rng = np.random.default_rng(seed)
    report = {"suite": "decode-roundtrip", "seed": seed, "varieties": {}}
    ok = True
    for name, X in decode_varieties(seed):
        tables = precompute(X, 1)
        st = {"points": 0, "trials": 0, "success": 0, "support_ok": 0}
        for a in decode_points(X, points):
            st["points"] += 1
            T = X.tangent_code(a).code
            d = T.min_distance()
            for _ in range(words):
                v = random_rational_codeword(T, rng)
                for pos in range(X.n):
                    e = [0] * X.n
                    e[pos] = 1
                    w = [X.field.add(x, y) for x, y in zip(v, e)]
                    st["trials"] += 1
                    try:
                        v2, e2, i = decode(tables, a, w, d_bound=d)
                    except DecodeError:
                        continue
                    st["success"] += v2 == v and e2 == e
                    st["support_ok"] += pos in i
        ok = ok and st["success"] == st["trials"] == st["support_ok"] and st["points"] == points
        report["varieties"][name] = st
    report["pass"] = ok
    return report


# --- deformations ------------------------------------------------------------------------------

def conic_point(X: AffineVariety) -> tuple[int, ...]:
    """First point of X(GF(q^2)) outside X(GF(q)) with nonzero coordinates and d(T_a) = 2."""
    F = X.field
    for a in X.rational_points(2):
        if all(a) and X.delta(a) == 2 and X.tangent_code(a).code.min_distance() == 2:
            return a
    raise ValueError("no suitable conic point")


def deform(seed: int = 0, count: int = 100, threshold: int = 90) -> dict:
    F = Field(5, 4)
    X = AffineVariety(F, 1, [parse_poly(F, "x1^2 + x2^2 - 1", 2)], 1, meta={"name": "conic"})
    a = conic_point(X)
    st = deformation_sample(X, a, seed, count, 4, d=2, k=1)
    ok = st.on_variety == count and st.all_ok >= threshold
    return {"suite": "deform", "seed": seed, "pass": ok, "point": [F.format(x) for x in a],
            "threshold": threshold, **st.as_dict()}


# --- constructions ------------------------------------------------------------------------------

def hamming(seed: int = 0) -> dict:
    """Point counts and tangent codes of the Hamming varieties for q=2, r=3 and q=3, r=2."""
    F2 = Field(2, 1)
    X = hamming_variety(F2, 2, 3)
    C = hamming_code(F2, 2, 3)
    pts = X.rational_points(1)
    binary = {"points": len(pts), "hamming_code": sum(X.tangent_code(a).code == C for a in pts)}
    F3 = Field(3, 1)
    Y = hamming_variety(F3, 3, 2)
    pts3 = Y.rational_points(1)
    w = Y.meta["universal_word"]
    ternary = {"points": len(pts3),
               "hamming_points": sum(is_hamming_matrix(F3, Y.jacobian_at(a), 2) for a in pts3),
               "word_everywhere": sum(Y.tangent_code(a).code.contains(w) for a in pts3)}
    ok = (binary["points"] == binary["hamming_code"] == 16 and ternary["hamming_points"] == 3 * 2
          and ternary["word_everywhere"] == ternary["points"])
    return {"suite": "hamming", "seed": seed, "pass": ok, "binary": binary, "ternary": ternary}


def _cubic_terms(F: Field, X0: AffineVariety) -> dict:
    """Cubes on the unrestricted non-pivot columns, so that the tangent codes vary in characteristic 2."""
    alpha, sigma, nu = X0.meta["alpha"], X0.meta["sigma"], X0.meta["sigma_nu"]
    restricted = set(sigma) - set(alpha) - {nu}
    Hp = X0.meta["normalized_parity"]
    terms = {}
    for i, row in enumerate(Hp):
        for s in range(len(row)):
            if s in alpha or s == nu:
                continue
            terms[(i, s)] = {} if s in restricted else {3: 1}
    return terms


def from_code(seed: int = 0, count: int = 200) -> dict:
    """Variety through 0 with T_0 = Hamming [7,4,3] and a sigma-supported tangent word everywhere."""
    F = Field(2, 6)
    C = hamming_code(F, 2, 3)
    sigma = [1, 2, 3]
    X = variety_from_code(C, sigma, _cubic_terms(F, variety_from_code(C, sigma)))
    rng = np.random.default_rng(seed)
    st = {"origin_is_code": X.tangent_code([0] * 7).code == C, "sampled": 0, "sigma_word": 0, "hamming_params": 0}
    for t in range(count):
        s = 1 + t % 3
        a = X.sample_points(s, 1, rng)[0]
        J = X.jacobian_at(a)
        T = X.tangent_code(a).code
        st["sampled"] += 1
        st["sigma_word"] += la.rank(F, la.submatrix_columns(J, sigma)) < len(sigma)
        st["hamming_params"] += T.k == 4 and T.min_distance() == 3
    ok = st["origin_is_code"] and st["sigma_word"] == st["sampled"] == count and st["hamming_params"] > 0
    return {"suite": "from-code", "seed": seed, "pass": ok, **st}


def interpolate(seed: int = 0, size: int = 4) -> dict:
    """A 2 x 5 parity family over GF(2) at points of GF(2)^5, realised as Jacobians."""
    F = Field(2, 1)
    rng = np.random.default_rng(seed)
    cube = list(itertools.product(range(2), repeat=5))
    pts = [cube[int(i)] for i in rng.choice(len(cube), size=size, replace=False)]
    mats: list[LinearCode] = []
    while len(mats) < size:
        C = random_code(F, 5, 3, rng)
        if all(C != D for D in mats):
            mats.append(C)
    fam = CodeFamily(F, 2, pts, [C.H for C in mats])
    gens = interpolate_code_family(fam, verify=False)
    st = {"family": size,
          "jacobian_ok": sum(jacobian_at(gens, a) == H for a, H in zip(fam.points, fam.matrices)),
          "vanishing_points": sum(all(g.evaluate(a) == 0 for g in gens) for a in cube)}
    ok = st["jacobian_ok"] == size and st["vanishing_points"] == len(cube)
    return {"suite": "interpolate", "seed": seed, "pass": ok, **st}


def isometry(seed: int = 0, points: int = 20, vectors: int = 100) -> dict:
    """Interpolated monomial differentials, and weight preservation of Frobenius-twisted isometries."""
    rng = np.random.default_rng(seed)
    F = Field(3, 1)
    cube = list(itertools.product(range(3), repeat=3))
    pts = [cube[int(i)] for i in rng.choice(len(cube), size=5, replace=False)]
    mats = [random_monomial_matrix(F, 3, 1, rng) for _ in pts]
    mor = interpolate_isometries(F, 3, pts, mats, verify=False)
    st = {"interpolated": sum(mor.differential(a) == A for a, A in zip(pts, mats))}
    F9 = Field(3, 2)
    psis = [_random_poly(F9, 3, 1, rng, max_deg=2, terms=3) + MultiPoly.constant(F9, 3, 1) for _ in range(3)]
    sigma = [int(i) for i in rng.permutation(3)]
    iso = isometry_morphism(psis, sigma)
    elems = F9.subfield_elements(2)
    good = [a for a in itertools.product(elems, repeat=3) if iso.defined_at(a)]
    chosen = [good[int(i)] for i in rng.choice(len(good), size=points, replace=False)]
    st.update({"points": len(chosen), "vectors": 0, "weight_ok": 0})
    for a in chosen:
        D = iso.differential(a)
        for _ in range(vectors):
            v = [elems[int(rng.integers(len(elems)))] for _ in range(3)]
            st["vectors"] += 1
            st["weight_ok"] += weight(la.matvec(F9, D, v)) == weight(v)
    ok = st["interpolated"] == 5 and st["weight_ok"] == st["vectors"] == points * vectors
    return {"suite": "isometry", "seed": seed, "pass": ok, **st}


def nmds(seed: int = 0, count: int = 100) -> dict:
    """Rank criterion against d(C) = n-k and d(C^perp) = k on random codes over GF(4)."""
    F = Field(2, 2)
    rng = np.random.default_rng(seed)
    st = {"codes": 0, "agree": 0, "near_mds": 0}
    for t in range(count):
        C = random_code(F, 5 + t % 2, 2 + (t // 2) % 2, rng, 2)
        a, b = is_near_mds(C), near_mds_rank_criterion(C)
        st["codes"] += 1
        st["agree"] += a == b
        st["near_mds"] += a
    ok = st["agree"] == count and 0 < st["near_mds"] < count
    return {"suite": "nmds", "seed": seed, "pass": ok, **st}


SUITES: dict[str, Callable[..., dict]] = {
    "duality": duality,
    "ops": ops,
    "weights": weights,
    "loci": loci,
    "decode-roundtrip": decode_roundtrip,
    "deform": deform,
    "hamming": hamming,
    "from-code": from_code,
    "interpolate": interpolate,
    "isometry": isometry,
    "nmds": nmds,
}
