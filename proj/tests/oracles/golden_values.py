"""Independent reference values for the test suite.

Everything here is recomputed from scratch with mpmath / sympy / numpy and
does not touch the C++ code. Run it to regenerate the numbers frozen in
tests/unit and tests/acceptance:

    python3 tests/oracles/golden_values.py
"""

import json
import math
import sys

import numpy as np
from mpmath import mp, mpf, polyroots, log, arg, pi, floor
from sympy import Poly, symbols, isprime, primerange, GF
from sympy.polys.galoistools import gf_irreducible_p
from sympy.polys.domains import ZZ

mp.dps = 40
X = symbols("X")


def cubic_constants():
    roots = polyroots([1, 0, -1, -1])
    theta = [r for r in roots if abs(r.imag) < mpf(10) ** -30][0].real
    cp = [r for r in roots if r.imag > 0][0]
    phi = arg(cp) / (2 * pi)
    L = log(theta)
    w1 = [2 / (3 * L), -2 / (3 * L), mpf(0)]
    w2 = [-2 * phi / (3 * L), 2 * phi / (3 * L), 1 / (2 * pi)]
    v1 = [L, -L / 2, 2 * pi * phi]
    return theta, cp, phi, v1, w1, w2


def xvec(coeffs, theta, cp):
    ar = sum(c * theta**i for i, c in enumerate(coeffs))
    ac = sum(c * cp**i for i, c in enumerate(coeffs))
    if ar < 0:  # make the generator positive at the real place
        ar, ac = -ar, -ac
    t = arg(ac)
    if t < 0:
        t += 2 * pi
    return [log(ar), log(abs(ac)), t]


def rho(coeffs, theta, cp, w1, w2):
    x = xvec(coeffs, theta, cp)
    out = []
    for w in (w1, w2):
        s = sum(a * b for a, b in zip(w, x))
        out.append(s - floor(s))
    return out


def cubic_norms(a, b, c):
    # det of multiplication by a + bθ + cθ² in Z[θ], θ³ = θ + 1
    m = np.stack([np.stack([a, c, b], -1), np.stack([b, a + c, b + c], -1), np.stack([c, b, a + c], -1)], -2)
    return np.rint(np.linalg.det(m.astype(np.float64))).astype(np.int64)


def poly_gcd_mod(f, g, p):
    def trim(h):
        while h and h[-1] % p == 0:
            h.pop()
        return h

    f = trim([x % p for x in f])
    g = trim([x % p for x in g])
    while g:
        inv = pow(g[-1], -1, p)
        while len(f) >= len(g):
            c = f[-1] * inv % p
            s = len(f) - len(g)
            for i, gi in enumerate(g):
                f[s + i] = (f[s + i] - c * gi) % p
            f = trim(f)
        f, g = g, f
    return f


def cubic_angles(max_norm, radius=45):
    """ρ of every prime ideal of norm <= max_norm, by brute-force generator search."""
    theta, cp, phi, v1, w1, w2 = cubic_constants()
    th, z = float(theta), complex(cp)
    W = np.array([[float(v) for v in w1], [float(v) for v in w2]])
    r = np.arange(-radius, radius + 1)
    A, B, C = np.meshgrid(r, r, r, indexing="ij")
    A, B, C = A.ravel(), B.ravel(), C.ravel()
    N = np.abs(cubic_norms(A, B, C))
    keep = (N >= 2) & (N <= max_norm)
    A, B, C, N = A[keep], B[keep], C[keep], N[keep]
    primes = set(primerange(2, max_norm + 1))
    found = {}
    for a, b, c, n in zip(A.tolist(), B.tolist(), C.tolist(), N.tolist()):
        if n not in primes:
            continue
        g = poly_gcd_mod([-1, -1, 0, 1], [a, b, c], n)
        if len(g) != 2:
            continue
        root = (-g[0] * pow(g[1], -1, n)) % n
        key = (n, n, root)
        if key in found:
            continue
        ar = a + b * th + c * th * th
        ac = a + b * z + c * z * z
        if ar < 0:
            ar, ac = -ar, -ac
        t = math.atan2(ac.imag, ac.real) % (2 * math.pi)
        x = np.array([math.log(ar), math.log(abs(ac)), t])
        found[key] = np.mod(W @ x, 1.0)
    records = []
    missing = []
    for p in primerange(2, max_norm + 1):
        facs = Poly(X**3 - X - 1, X, modulus=p).factor_list()[1]
        lin = []
        for fac, mult in facs:
            cs = [int(c) % p for c in reversed(fac.all_coeffs())]
            if len(cs) == 2:
                lin.append((cs[0] * -1) % p)
        degs = sorted(f.degree() for f, _ in facs)
        if degs == [3] and p**3 <= max_norm:
            records.append((p**3, np.zeros(2)))
        for root in lin:
            key = (p, p, root)
            if key not in found:
                missing.append(key)
                continue
            records.append((p, found[key]))
        if degs == [1, 2] and p * p <= max_norm:
            (root,) = lin
            if (p, p, root) in found:
                records.append((p * p, np.mod(-found[(p, p, root)], 1.0)))
    return records, missing


def weyl(records, ks, checkpoints):
    norms = np.array([n for n, _ in records])
    pts = np.array([t for _, t in records])
    out = {}
    for k in ks:
        vals = np.exp(-2j * np.pi * (pts @ np.array(k, dtype=float)))
        row = []
        for x in checkpoints:
            sel = norms <= x
            row.append(abs(vals[sel].sum()) / sel.sum())
        out[str(k)] = row
    return out


def gaussian_rho(a, b):
    # angle torus of Q(i): arg α modulo the units, rescaled to [0, 1)
    return (math.atan2(b, a) * 2 / math.pi) % 1.0


def sqrt2_rho(a, b):
    s = math.sqrt(2)
    eps = 1 + s
    return ((math.log(abs(a + b * s)) - math.log(abs(a - b * s))) / (4 * math.log(eps))) % 1.0


def function_field():
    out = {}
    for q, n in [(2, 3), (2, 4), (3, 1), (3, 2)]:
        dom = GF(q)
        count = 0
        listing = []
        for code in range(q**n):
            cs = [(code // q**i) % q for i in range(n)] + [1]
            f = [ZZ(c) for c in reversed(cs)]
            if gf_irreducible_p(f, q, ZZ):
                count += 1
                listing.append(cs)
        out[f"q{q}n{n}"] = {"count": count, "polys": listing}
    return out


def main():
    theta, cp, phi, v1, w1, w2 = cubic_constants()
    res = {
        "theta": str(theta),
        "phi": str(phi),
        "abs_cp": str(abs(cp)),
        "v1": [str(v) for v in v1],
        "w1": [str(v) for v in w1],
        "w2": [str(v) for v in w2],
        "x_2_minus_theta": [str(v) for v in xvec([2, -1, 0], theta, cp)],
        "rho_p5": [str(v) for v in rho([2, -1, 0], theta, cp, w1, w2)],
        "rho_p7": [str(v) for v in rho([-1, 0, 2], theta, cp, w1, w2)],
        "gaussian_rho_1p2i": gaussian_rho(1, 2),
        "gaussian_rho_1p1i": gaussian_rho(1, 1),
        "sqrt2_rho_3p1": sqrt2_rho(3, 1),
        "sqrt2_rho_5p3": sqrt2_rho(5, 3),
    }
    max_norm = int(sys.argv[1]) if len(sys.argv) > 1 else 100000
    records, missing = cubic_angles(max_norm)
    res["cubic_prime_count"] = len(records)
    res["cubic_missing_generators"] = missing[:10]
    res["weyl"] = weyl(records, [(1, 0), (0, 1), (1, 1)], [10**4, max_norm])
    res["function_field"] = function_field()
    print(json.dumps(res, indent=1))


if __name__ == "__main__":
    main()
