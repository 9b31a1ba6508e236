"""Group presentations used across the tests, in .grp text."""
from triquiver.presentations import parse_presentation

TEXTS = {
    "Z+Z2": "generators: a b\nrelators: a*b*a^-1*b^-1; a^2\n",
    "S3": "generators: a b\nrelators: a^2; b^3; a*b*a*b\n",
    "Z4": "generators: a\nrelators: a^4\n",
    "Z2": "generators: a\nrelators: a^2\n",
    "Z^2": "generators: a b\nrelators: a*b*a^-1*b^-1\n",
    "Z2*Z3": "generators: a b\nrelators: a^2; b^3\n",
    "surface1": "generators: x y\nrelators: x^-1*y^-1*x*y\n",
    "Z*Z2": "generators: a b\nrelators: b^2\n",
    "Z3": "generators: a\nrelators: a^3\n",
    "klein": "generators: a b\nrelators: a*b*a*b^-1\n",
    "Z2xZ2": "generators: a b\nrelators: a^2; b^2; a*b*a^-1*b^-1\n",
}

# abelian invariants (free rank, torsion) and order when finite
EXPECTED = {
    "Z+Z2": ((1, (2,)), None),
    "S3": ((0, (2,)), 6),
    "Z4": ((0, (4,)), 4),
    "Z2": ((0, (2,)), 2),
    "Z^2": ((2, ()), None),
    "Z2*Z3": ((0, (6,)), None),
    "surface1": ((2, ()), None),
    "Z*Z2": ((1, (2,)), None),
    "Z3": ((0, (3,)), 3),
    "klein": ((1, (2,)), None),
    "Z2xZ2": ((0, (2, 2)), 4),
}


def group(name):
    return parse_presentation(TEXTS[name])


def corpus():
    return {k: group(k) for k in TEXTS}
