"""Twenty symbol forms with known ellipticity verdicts.

Each entry: (label, form text, number of covector variables, expected status,
expected witness kind or None).  Ground truth comes from hand factorization
or from the sign pattern of the coefficients.
"""

GOLDEN = [
    # quadratic forms
    ("definite 2D", "2*xi1^2 + 2*xi2^2", 2, "Elliptic", None),
    ("definite with cross term", "xi1^2 + xi1*xi2 + xi2^2", 2, "Elliptic", None),
    ("negative definite 3D", "-xi1^2 - xi2^2 - xi3^2 + xi1*xi2", 3, "Elliptic", None),
    ("definite 3D", "xi1^2 + xi2^2 + xi3^2 - xi1*xi3", 3, "Elliptic", None),
    ("indefinite, rational factors", "xi1^2 - xi1*xi2 - 2*xi2^2", 2, "NotElliptic", "rational"),
    ("singular", "xi1^2 - 2*xi1*xi2 + xi2^2", 2, "NotElliptic", "rational"),
    ("indefinite 3D", "xi1^2 + xi2^2 - xi3^2", 3, "NotElliptic", "rational"),
    ("hyperbolic", "xi1*xi2", 2, "NotElliptic", "rational"),
    ("irrational roots, discriminant 5", "xi1^2 - 3*xi1*xi2 + xi2^2", 2, "NotElliptic", "algebraic"),
    ("irrational roots, sqrt 2", "xi1^2 - 2*xi2^2", 2, "NotElliptic", "algebraic"),
    # diagonal forms
    ("same-sign quartic", "24*xi1^4 + 24*xi2^4", 2, "Elliptic", None),
    ("mixed-sign quartic", "24*xi1^4 - 24*xi2^4", 2, "NotElliptic", "rational"),
    ("same-sign quartic 3D", "xi1^4 + 2*xi2^4 + 3*xi3^4", 3, "Elliptic", None),
    ("mixed-sign quartic, irrational ratio", "xi1^4 - 2*xi2^4", 2, "NotElliptic", "algebraic"),
    ("mixed-sign sextic 3D", "xi1^6 + xi2^6 - xi3^6", 3, "NotElliptic", "rational"),
    # binary forms
    ("binary quartic without real roots", "xi1^4 + xi1^2*xi2^2 + xi2^4", 2, "Elliptic", None),
    ("binary quartic, odd term, no real roots", "xi1^4 + xi1^3*xi2 + xi2^4", 2, "Elliptic", None),
    ("binary cubic", "xi1^3 - xi2^3", 2, "NotElliptic", "rational"),
    ("binary quartic, rational roots", "xi1^4 - 5*xi1^2*xi2^2 + 4*xi2^4", 2, "NotElliptic", "rational"),
    ("binary quartic, irrational roots", "xi1^4 - 2*xi1^2*xi2^2 - xi2^4", 2, "NotElliptic", "algebraic"),
]


def dual_names(n: int) -> tuple[str, ...]:
    return tuple(f"xi{i + 1}" for i in range(n))
