#!/usr/bin/env python3
"""Writes data/golden/*.json for the three scalar lifting examples.

Expected values come from exact sympy arithmetic: closed forms for the
operators and Taylor expansions of the rational symbols. Nothing here calls
the C++ library.
"""

import json
import pathlib

import sympy as sp

z = sp.symbols("z")
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "golden"


def num(x):
    v = complex(sp.N(sp.sympify(x), 30))
    return [v.real, v.imag]


def matrix(m):
    m = sp.Matrix(m)
    return {"rows": m.rows, "cols": m.cols, "data": [num(m[r, c]) for r in range(m.rows) for c in range(m.cols)]}


def taylor(expr, degree):
    poly = sp.series(expr, z, 0, degree + 1).removeO()
    return [num(poly.coeff(z, n)) for n in range(degree + 1)]


def psd_sqrt(m):
    # 2x2 Hermitian positive semidefinite square root via sqrt(M) = (M + s I)/t.
    s = sp.sqrt(m.det())
    t = sp.sqrt(m.trace() + 2 * s)
    return sp.simplify((m + s * sp.eye(2)) / t)


def lifting_doc(c, a, b):
    e = sp.Matrix([[c, 0], [b, a]])
    return {"E": {"dim": 2, "arity": 1, "blocks": [matrix(e)]}, "split": 1}, e


def defect(e):
    return psd_sqrt(sp.eye(2) - e.H * e)


def blaschke(alpha, label):
    c = sp.Rational(1, 2)
    r = sp.sqrt(1 - alpha * sp.conjugate(alpha))
    b = sp.sqrt(3) / 2 * r
    doc, e = lifting_doc(c, alpha, b)
    symbol = (z - alpha) / (1 - sp.conjugate(alpha) * z)
    return {
        "lifting": doc,
        "alpha": num(alpha),
        "B": num(b),
        "gamma": num(b / (sp.sqrt(3) / 2 * r)),
        "link_defect": num(0),
        "D_E": matrix(defect(e)),
        "blaschke_degree": 20,
        "blaschke": taylor(symbol, 20),
    }, label


def nilpotent():
    c, a, b = sp.Rational(1, 2), 0, sp.Rational(1, 2)
    doc, e = lifting_doc(c, a, b)
    gamma = b / (sp.sqrt(3) / 2)
    first = sp.sqrt(1 - gamma**2)
    second = gamma * z
    return {
        "lifting": doc,
        "gamma": num(gamma),
        "D_E": matrix(defect(e)),
        "theta_degree": 4,
        "theta": [taylor(first, 4), taylor(second, 4)],
    }


def half():
    c, a, b = sp.Rational(1, 2), sp.Rational(1, 2), sp.Rational(1, 2)
    doc, e = lifting_doc(c, a, b)
    d_c = sp.sqrt(3) / 2
    d_star_a = sp.sqrt(1 - a**2)
    gamma = b / (d_c * d_star_a)
    theta_a = (z - a) / (1 - a * z)
    first = (4 - 3 * z) / (4 * sp.sqrt(3) * (1 - z / 2))
    displayed = 2 * (z - sp.Rational(1, 2)) / (3 * (1 - z / 2))
    s5 = sp.sqrt(5)
    return {
        "lifting": doc,
        "gamma": num(gamma),
        "link_defect": num(sp.sqrt(1 - gamma**2)),
        "D_E": matrix(defect(e)),
        "D_E_displayed": matrix(
            sp.Matrix([[s5 + 2, -1], [-1, s5 + 3]]) / (2 * sp.sqrt(s5 * (s5 + 2)))
        ),
        "sigma_D_E": matrix(
            sp.Matrix([[s5 / (2 * sp.sqrt(3)), 0], [-1 / (2 * sp.sqrt(3)), sp.sqrt(3) / 2]])
        ),
        "theta_degree": 12,
        "theta_D_E_first": taylor(first, 12),
        "theta_D_E_second_displayed": taylor(displayed, 12),
        # gamma * theta_A * D_A, the second entry the derivation produces
        "theta_D_E_second_with_defect": taylor(gamma * theta_a * sp.sqrt(1 - a**2), 12),
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    docs = {
        "blaschke_alpha_0.3.json": blaschke(sp.Rational(3, 10), "0.3")[0],
        "blaschke_alpha_0.5i.json": blaschke(sp.I / 2, "0.5i")[0],
        "nilpotent_extension.json": nilpotent(),
        "half_extension.json": half(),
    }
    for name, doc in docs.items():
        (OUT / name).write_text(json.dumps(doc, indent=1) + "\n")
        print("wrote", OUT / name)


if __name__ == "__main__":
    main()
