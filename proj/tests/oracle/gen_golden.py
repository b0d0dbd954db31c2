#!/usr/bin/env python3
"""Independent oracle for frozen test values.

Operator products use sympy's holonomic DifferentialOperators (normal-ordered
Weyl algebra over Q[t]); factorizations use sympy's factor_list over GF(p).
Run from the repository root: python3 tests/oracle/gen_golden.py
"""
import json
from fractions import Fraction

import sympy as sp
from sympy.holonomic import DifferentialOperators
from sympy.holonomic.holonomic import DifferentialOperator

P = 5
t, D = sp.symbols("t D")
R, Dt = DifferentialOperators(sp.QQ.old_poly_ring(t), "Dt")


def fn(expr):
    return DifferentialOperator([R.base.from_sympy(sp.sympify(expr))], R)


def to_op(text):
    """Normal-ordered text (t-powers left of D-powers) to a sympy operator."""
    expr = sp.expand(sp.sympify(text.replace("^", "**"), locals={"t": t, "D": D, "p": P}))
    poly = sp.Poly(expr, D)
    op = fn(0)
    for (n,), c in poly.terms():
        op = op + fn(c) * Dt**n
    return op


def coeffs_level(op, k):
    """Coefficient lists (low t-degree first) in the (p^k D)-basis."""
    out = []
    for n, c in enumerate(op.listofpoly):
        poly = sp.Poly(R.base.to_sympy(c), t)
        scale = sp.Rational(P) ** (-k * n)
        cs = [sp.Rational(0)] * (poly.degree() + 1 if not poly.is_zero else 0)
        for (i,), v in ([] if poly.is_zero else poly.terms()):
            cs[i] = sp.Rational(v) * scale
        out.append(cs)
    while out and not any(out[-1]):
        out.pop()
    return out


def val(q):
    q = Fraction(int(q.p), int(q.q))
    if q == 0:
        return None
    v, num, den = 0, q.numerator, q.denominator
    while num % P == 0:
        num //= P
        v += 1
    while den % P == 0:
        den //= P
        v -= 1
    return v


def invariants(cs):
    vals = [[val(c) for c in row] for row in cs]
    mins = [min([v for v in row if v is not None], default=None) for row in vals]
    m = min(v for v in mins if v is not None)
    nbar = max(n for n, v in enumerate(mins) if v == m)
    nk = min(i for i, v in enumerate(vals[nbar]) if v == m)
    return -m, nbar, nk


PRODUCTS = [
    (["D", "t + 5"], 1),
    (["1 - 5*D", "1 - 25*D"], 1),
    (["t^2*D^2 + 3", "t*D + 1/2"], 0),
    (["t^2*D^2 + 3", "t*D + 1/2"], 2),
    (["2 + t*D", "t^3 + 5*t*D^2", "1 - t*D"], 1),
    (["t^2 + 7*D^3", "1/3*t*D + t^4"], 3),
    (["D^2", "t^5"], 1),
    (["1 + t + t^2*D", "1 - t + 25*t^3*D^2"], 2),
]


def products():
    out = []
    for factors, k in PRODUCTS:
        op = fn(1)
        for f in factors:
            op = op * to_op(f)
        cs = coeffs_level(op, k)
        lognorm, nbar, nk = invariants(cs)
        out.append({
            "factors": factors,
            "level": k,
            "coeffs": [[str(c) for c in row] for row in cs],
            "log_p_norm": lognorm,
            "nbar": nbar,
            "nk": nk,
        })
    return out


def example_suite():
    depth = 9
    full = fn(1)
    partial = [fn(1)]
    for n in range(1, depth + 1):
        full = full * (fn(1) - fn(P**n) * Dt)
        partial.append(partial[-1] * (fn(1) - fn(P**n) * Dt))
    rows = []
    for k in range(0, 7):
        nb = invariants(coeffs_level(full, k))[1]
        pk = invariants(coeffs_level(partial[k], k))[0]
        diffs = {}
        for m in (1, 2, 3):
            if k >= m + 1:
                diffs[str(m)] = invariants(coeffs_level(full - partial[k], m))[0]
        rows.append({"k": k, "nbar": nb, "log_p_norm_pk": pk, "log_p_norm_diff": diffs})
    return rows


FACTOR_CASES = [
    (5, [0, 0, 1]),
    (5, [0, -1, 1]),
    (5, [1, 0, 1]),
    (5, [2, 0, 0, 1, 0, 1]),
    (5, [0, 0, 3, 1, 4, 1, 2]),
    (2, [1, 1, 1, 0, 1, 1]),
    (3, [1, 0, 1, 0, 1, 0, 1]),
    (7, [3, 1, 0, 0, 5, 0, 0, 0, 1]),
]


def factorizations():
    out = []
    for p, coeffs in FACTOR_CASES:
        poly = sp.Poly(list(reversed(coeffs)), t, modulus=p)
        _, facs = sp.factor_list(poly.as_expr(), modulus=p)
        items = []
        for f, e in facs:
            fp = sp.Poly(f, t, modulus=p).monic()
            low = [int(c) % p for c in reversed(fp.all_coeffs())]
            items.append({"poly": low, "mult": int(e)})
        items.sort(key=lambda it: (len(it["poly"]), it["poly"]))
        out.append({"p": p, "coeffs": [c % p for c in coeffs], "factors": items})
    return out


def series_inverses():
    mod = P**40
    out = []
    for coeffs in ([1, -5], [1, 2, 3], [3, 5, 0, 7]):
        f = sum(sp.Rational(c) * t**i for i, c in enumerate(coeffs))
        s = sp.series(1 / f, t, 0, 12).removeO()
        res = []
        for i in range(12):
            c = sp.Rational(s.coeff(t, i))
            res.append(str(int(c.p) * pow(int(c.q), -1, mod) % mod))
        out.append({"coeffs": coeffs, "inverse_mod_p40": res})
    return out


def main():
    data = {
        "prime": P,
        "products": products(),
        "example_suite": example_suite(),
        "factorizations": factorizations(),
        "series_inverses": series_inverses(),
    }
    with open("tests/golden/golden.json", "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
