"""Brute-force reference implementations, written without the package's tables
or linear algebra so that tests compare two independent computations."""

import itertools


def poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, m, p):
    a = [x % p for x in a]
    inv_lead = pow(m[-1], p - 2, p)
    while len(poly_trim(a)) >= len(m):
        a = poly_trim(a)
        shift = len(a) - len(m)
        c = a[-1] * inv_lead % p
        for i, y in enumerate(m):
            a[i + shift] = (a[i + shift] - c * y) % p
    return poly_trim(a)


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def naive_mul(p, modulus, a, b):
    """Product of coefficient vectors (low -> high) modulo the field modulus."""
    r = poly_mod(poly_mul(poly_trim(a), poly_trim(b), p), list(modulus), p)
    return r + [0] * (len(modulus) - 1 - len(r))


def monic_polys(p, deg):
    for tail in itertools.product(range(p), repeat=deg):
        yield list(tail) + [1]


def is_irreducible_naive(f, p):
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for g in monic_polys(p, d):
            if not poly_mod(f, g, p):
                return False
    return True


def irreducibles_in_code_order(p, deg):
    """Monic irreducibles sorted by the integer code sum c_i p^i of their lower coefficients."""
    out = [f for f in monic_polys(p, deg) if is_irreducible_naive(f, p)]
    return sorted(out, key=lambda f: sum(c * p ** i for i, c in enumerate(f[:-1])))


def kernel_vectors(F, H, n, m):
    """Every v in GF(p^m)^n with H v = 0, by exhaustive search."""
    elems = F.subfield_elements(m)
    out = []
    for v in itertools.product(elems, repeat=n):
        ok = True
        for row in H:
            s = 0
            for h, x in zip(row, v):
                s = F.add(s, F.mul(h, x))
            if s:
                ok = False
                break
        if ok:
            out.append(v)
    return out


def span_vectors(F, G, m):
    """Every GF(p^m)-combination of the rows of G."""
    elems = F.subfield_elements(m)
    n = len(G[0])
    out = set()
    for coeffs in itertools.product(elems, repeat=len(G)):
        v = [0] * n
        for c, row in zip(coeffs, G):
            v = [F.add(x, F.mul(c, y)) for x, y in zip(v, row)]
        out.add(tuple(v))
    return out


def min_weight(words):
    ws = [sum(1 for x in v if x) for v in words if any(v)]
    return min(ws) if ws else None
