"""Independent brute-force linear algebra used to cross-check ratpull.

Everything here works on plain lists of Fractions and deliberately shares
no code with the package: determinants by recursive cofactor expansion,
solves by Cramer's rule. Slow, obviously correct, and only suitable for
the small dimensions the tests use.
"""

from fractions import Fraction


def cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def adjugate_inverse(rows):
    """Inverse via adjugate / determinant; None when singular."""
    n = len(rows)
    d = cofactor_det(rows)
    if d == 0:
        return None
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            cof = cofactor_det(minor)
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof / d
    return out


def cramer_solve_left(v, rows):
    """x with x . M = v, by Cramer's rule on the transposed system."""
    n = len(rows)
    mt = [[rows[i][j] for i in range(n)] for j in range(n)]
    d = cofactor_det(mt)
    if d == 0:
        raise ZeroDivisionError("singular matrix in oracle solve")
    out = []
    for i in range(n):
        replaced = [
            [v[r] if c == i else mt[r][c] for c in range(n)] for r in range(n)
        ]
        out.append(cofactor_det(replaced) / d)
    return out


def leading_minors(rows):
    n = len(rows)
    return [
        cofactor_det([r[:k] for r in rows[:k]]) for k in range(1, n + 1)
    ]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m)]
        for i in range(n)
    ]
