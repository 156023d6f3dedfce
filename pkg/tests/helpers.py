"""Deterministic random generators shared by the property and acceptance tests."""

from fractions import Fraction

from ratpull import DivisorInput, IntersectionConfig, RatMatrix


def random_fraction(rng, max_num=20, max_den=5):
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_nonneg_fraction(rng, max_num=20, max_den=5):
    return Fraction(rng.randint(0, max_num), rng.randint(1, max_den))


def random_z_rows(rng, dim, max_num=20, max_den=5):
    """A random Z-matrix as rows: arbitrary diagonal, off-diagonal <= 0."""
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            value = random_fraction(rng, max_num, max_den)
            if i != j:
                value = -abs(value)
            row.append(value)
        rows.append(row)
    return rows


def random_dominant_m_rows(rng, dim, margin=1, max_num=10, max_den=3):
    """An invertible M-matrix by strict diagonal dominance: A = s*I - B with
    B >= 0 and s exceeding every row sum of B by at least `margin`."""
    b = [
        [abs(random_fraction(rng, max_num, max_den)) for _ in range(dim)]
        for _ in range(dim)
    ]
    row_sums = [sum(row, Fraction(0)) for row in b]
    s = max(row_sums) + margin + rng.randint(0, 3)
    return [
        [(s if i == j else Fraction(0)) - b[i][j] for j in range(dim)]
        for i in range(dim)
    ]


def config_from_a_rows(a_rows):
    """IntersectionConfig with phi = -A^T for a given invertible M-matrix A."""
    dim = len(a_rows)
    phi = RatMatrix.from_rows(
        [[-a_rows[j][i] for j in range(dim)] for i in range(dim)]
    )
    labels = tuple(f"E{i + 1}" for i in range(dim))
    curves = tuple(f"C{i + 1}" for i in range(dim))
    return IntersectionConfig(divisors=labels, chosen_curves=curves, phi=phi)


def random_certified_config(rng, dim, **kwargs):
    return config_from_a_rows(random_dominant_m_rows(rng, dim, **kwargs))


def random_nonneg_lambda(rng, dim, max_num=10, max_den=4):
    return tuple(random_nonneg_fraction(rng, max_num, max_den) for _ in range(dim))


def divisor(lam, n_prime=1, extra=None):
    return DivisorInput(lam=tuple(lam), cartier_denominator=n_prime,
                        extra_lambda=extra)
