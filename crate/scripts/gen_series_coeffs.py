#!/usr/bin/env python3
"""Regenerate crates/core/src/closed_forms/coeffs.rs.

Each closed-form dispersivity is N(nu) / D(nu) with N and D built from
polynomials in nu times cos, cosh, sin, sinh of nu (or nu/2). Both are
expanded as exact rational power series in nu, the leading powers are
cancelled and the quotient is formed by power-series division. The quotient
only contains powers of nu^4 = omega^2; the coefficients of omega^(2k) are
written out rounded to the nearest f64.

Usage: python3 scripts/gen_series_coeffs.py > crates/core/src/closed_forms/coeffs.rs
"""
from fractions import Fraction as Fr
from math import factorial

ORDER = 200
TERMS = 40
HALF = Fr(1, 2)


def trig(kind, scale=Fr(1)):
    c = [Fr(0)] * (ORDER + 1)
    for k in range(ORDER + 1):
        s = scale**k / factorial(k)
        if kind == "cos" and k % 2 == 0:
            c[k] = s * (-1) ** (k // 2)
        elif kind == "cosh" and k % 2 == 0:
            c[k] = s
        elif kind == "sin" and k % 2 == 1:
            c[k] = s * (-1) ** (k // 2)
        elif kind == "sinh" and k % 2 == 1:
            c[k] = s
    return c


def mul(a, b):
    c = [Fr(0)] * (ORDER + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(ORDER + 1 - i):
                if b[j]:
                    c[i + j] += x * b[j]
    return c


def poly(p):
    c = [Fr(0)] * (ORDER + 1)
    for i, x in enumerate(p):
        c[i] = Fr(x)
    return c


def add(xs):
    c = [Fr(0)] * (ORDER + 1)
    for x in xs:
        for i in range(ORDER + 1):
            c[i] += x[i]
    return c


TRIG = {
    "Cos": trig("cos"), "Cosh": trig("cosh"), "Sin": trig("sin"), "Sinh": trig("sinh"),
    "CosHalf": trig("cos", HALF), "CoshHalf": trig("cosh", HALF),
    "SinHalf": trig("sin", HALF), "SinhHalf": trig("sinh", HALF),
}
TRIG["CoshHalfSinHalf"] = mul(TRIG["CoshHalf"], TRIG["SinHalf"])
TRIG["CosHalfSinhHalf"] = mul(TRIG["CosHalf"], TRIG["SinhHalf"])

# (name, prefactor, [(poly low->high, trig)], denominator const, nu power, [(sign, trig)])
FORMS = [
    ("SHEAR", 1, [([0, 1], "Cos"), ([0, 1], "Cosh"), ([-1], "Sin"), ([-1], "Sinh")],
     2, 5, [(1, "Cos"), (1, "Cosh")]),
    ("POISEUILLE", 1, [([0, 1], "Cos"), ([0, -1], "Cosh"), ([-3], "Sin"), ([3], "Sinh")],
     6, 5, [(1, "Cos"), (-1, "Cosh")]),
    ("POWER_1", 1, [([0, 1], "CosHalf"), ([0, 1], "CoshHalf"), ([-2], "SinHalf"), ([-2], "SinhHalf")],
     2, 5, [(1, "CosHalf"), (1, "CoshHalf")]),
    ("POWER_3", 9, [([0, -80, 0, 0, 0, 1], "Cos"), ([0, 80, 0, 0, 0, -1], "Cosh"),
                    ([-320, 0, 80], "CoshHalfSinHalf"), ([160, 0, -40, 0, -5], "Sin"),
                    ([320, 0, 80], "CosHalfSinhHalf"), ([-160, 0, -40, 0, 5], "Sinh")],
     160, 9, [(1, "Cos"), (-1, "Cosh")]),
    ("POWER_4", 1, [([0, -672, 0, 0, 0, 1], "Cos"), ([0, 672, 0, 0, 0, -1], "Cosh"),
                    ([1008, 0, -168, 0, -7], "Sin"), ([-1008, 0, -168, 0, 7], "Sinh")],
     56, 9, [(1, "Cos"), (-1, "Cosh")]),
    ("POWER_5", 5, [([0, 414720, 0, 0, 0, -13824, 0, 0, 0, 5], "Cos"),
                    ([0, -414720, 0, 0, 0, 13824, 0, 0, 0, -5], "Cosh"),
                    ([1658880, 0, -414720, 0, -17280], "CoshHalfSinHalf"),
                    ([-829440, 0, 207360, 0, 34560, 0, -2160, 0, -45], "Sin"),
                    ([-1658880, 0, -414720, 0, 17280], "CosHalfSinhHalf"),
                    ([829440, 0, 207360, 0, -34560, 0, -2160, 0, 45], "Sinh")],
     4608, 13, [(1, "Cos"), (-1, "Cosh")]),
    ("POWER_6", 9, [([0, 11827200, 0, 0, 0, -54560, 0, 0, 0, 7], "Cos"),
                    ([0, -11827200, 0, 0, 0, 54560, 0, 0, 0, -7], "Cosh"),
                    ([-17740800, 0, 2956800, 0, 197120, 0, -6160, 0, -77], "Sin"),
                    ([17740800, 0, 2956800, 0, -197120, 0, -6160, 0, 77], "Sinh")],
     39424, 13, [(1, "Cos"), (-1, "Cosh")]),
]


def series(form):
    _, pre, terms, dc, dp, den_terms = form
    num = add([mul(poly(p), TRIG[t]) for p, t in terms])
    num = [x * pre for x in num]
    den = add([[x * s for x in TRIG[t]] for s, t in den_terms])
    den = [Fr(0)] * dp + den[: ORDER + 1 - dp]
    den = [x * dc for x in den]
    i0 = next(i for i, x in enumerate(num) if x)
    j0 = next(i for i, x in enumerate(den) if x)
    assert i0 == j0
    n, d = num[i0:], den[j0:]
    length = min(len(n), len(d))
    q = [Fr(0)] * length
    for k in range(length):
        q[k] = (n[k] - sum(q[i] * d[k - i] for i in range(k))) / d[0]
    assert all(q[k] == 0 for k in range(length) if k % 4)
    return [q[4 * m] for m in range(TERMS)]


def main():
    print("// Generated by scripts/gen_series_coeffs.py. Do not edit by hand.")
    print("//")
    print("// Coefficients c_k of the expansion D(omega) = sum_k c_k omega^(2k) of each")
    print("// closed form about omega = 0, obtained by exact rational power-series")
    print("// division and rounded to the nearest f64.")
    print()
    for form in FORMS:
        coeffs = series(form)
        print(f"// leading terms: {coeffs[0]}, {coeffs[1]}, {coeffs[2]}")
        print(f"pub(crate) const {form[0]}: [f64; {TERMS}] = [")
        for c in coeffs:
            print(f"    {float(c)!r:},")
        print("];")
        print()


if __name__ == "__main__":
    main()
