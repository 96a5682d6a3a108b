"""Independent reference computations used to freeze expected values.

Nothing here imports oqroot; polynomial work goes through sympy.
"""

from __future__ import annotations

import itertools

import sympy as sp

v = sp.Symbol("v")


def cyclotomic(ell: int) -> list:
    """Coefficients of Phi_ell, constant term first."""
    return [int(c) for c in reversed(sp.Poly(sp.cyclotomic_poly(ell, v), v).all_coeffs())]


def gauss_binom_expr(n: int, m: int):
    out = sp.Integer(1)
    for j in range(1, m + 1):
        out *= (v ** (n - j + 1) - v ** (-n + j - 1)) / (v ** j - v ** (-j))
    return sp.cancel(out)


def reduce_mod_phi(expr, ell: int) -> list:
    """Coefficient vector (length phi(ell)) of a Laurent expression modulo Phi_ell."""
    expr = sp.cancel(sp.together(expr))
    num, den = sp.fraction(expr)
    phi = sp.Poly(sp.cyclotomic_poly(ell, v), v)
    dinv = sp.invert(sp.Poly(den, v), phi)
    r = sp.rem(sp.Poly(num, v) * dinv, phi)
    coeffs = list(reversed(r.all_coeffs())) if not r.is_zero else []
    deg = phi.degree()
    return [sp.Rational(c) for c in coeffs] + [sp.Integer(0)] * (deg - len(coeffs))


def dot_rank2(w, alpha_index: int, ell: int, m: int = 0):
    """s_{alpha_i, m} . w for sl_3 by explicit matrices in the fundamental-weight basis."""
    cartan = sp.Matrix([[2, -1], [-1, 2]])
    alpha = cartan[:, alpha_index]  # alpha_i in omega coordinates
    lam = sp.Matrix(w) + sp.Matrix([1, 1])
    pairing = lam[alpha_index]  # <lam, alpha_i^vee> is the i-th omega coordinate
    img = lam - pairing * alpha - sp.Matrix([1, 1]) + m * ell * alpha
    return tuple(int(x) for x in img)


def rank1_orbit(w: int, ell: int, bound: int) -> list:
    """Dominant members <= bound of the dot orbit of w, by closure under all reflections."""
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for x in frontier:
            for m in range(-bound - 2, bound + 3):
                y = -x - 2 + 2 * m * ell
                if -2 * bound - 10 <= y <= 2 * bound + 10 and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(x for x in seen if 0 <= x <= bound)


def xi_count(n: int, d: int) -> int:
    count = 0
    cells = n * n
    for deg in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(cells), deg):
            diag = [combo.count(i * n + i) for i in range(n)]
            if min(diag) == 0:
                count += 1
    return count


def qint(n: int):
    return (v ** n - v ** (-n)) / (v - 1 / v)


def qfact(m: int):
    out = sp.Integer(1)
    for k in range(1, m + 1):
        out *= qint(k)
    return out


def v1_tensor_power_E(N: int) -> sp.Matrix:
    """Generic-v matrix of E on V_1^(x N) from Delta(E) = E (x) 1 + K (x) E.

    V_1 basis: index 0 has weight -1, index 1 has weight +1; Kronecker indexing.
    """
    e = sp.Matrix([[0, 0], [1, 0]])
    k = sp.diag(1 / v, v)
    E, Kt = e, k
    for _ in range(N - 1):
        E = sp.kronecker_product(E, sp.eye(2)) + sp.kronecker_product(Kt, e)
        Kt = sp.kronecker_product(Kt, k)
    return E


def divided_E_on_v1_power(N: int, j: int, ell: int) -> dict:
    """Nonzero entries {(row, col): coefficient vector mod Phi_ell} of E^j/[j]! on V_1^(x N)."""
    M = v1_tensor_power_E(N) ** j
    d = qfact(j)
    out = {}
    for r in range(M.rows):
        for c in range(M.cols):
            x = M[r, c]
            if x != 0:
                entry = sp.cancel(x / d)
                num, den = sp.fraction(entry)
                assert sp.Poly(den, v).is_monomial, "not a Laurent polynomial"
                vec = reduce_mod_phi(entry, ell)
                if any(vec):
                    out[(r, c)] = vec
    return out
