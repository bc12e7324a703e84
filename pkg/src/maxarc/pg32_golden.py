"""Reference PG(2,32) values used as regression fixtures.

Elements are written in exponent form relative to a primitive w with
w^18 + w = 1.  Every such w is a Frobenius conjugate of every other, so the
exponent form does not depend on the chosen irreducible polynomial.

Cases are keyed by the lambda of the base conic that is sent onto C_1.
"""

from __future__ import annotations

RELATION = "w^18+w=1"
BASE = ("1", "w", "w^18")  # D_1 = {C_1, C_w, C_{w+1}}; w + 1 = w^18

T_TABLES: dict[str, dict[int, tuple[str, ...]]] = {
    "w^18": {
        1: ("0", "w^8", "w^22", "w^21", "w^11", "w^30", "w^6", "w^15"),
        2: ("0", "w^13", "w^6", "w^28", "w^29", "w^22", "w^18", "w^15"),
        4: ("0", "w^2", "w", "w^19", "w^10", "w^22", "w^17", "w^26"),
        8: ("0", "w^21", "w^2", "w^13", "w^18", "w^16", "w^11", "w^15"),
        16: ("0", "w^7", "w^9", "w^12", "w^29", "w^14", "w^17", "w^11"),
    },
    "w": {
        1: ("0", "w^21", "w^19", "w^24", "1", "w^25", "w^11", "w^15"),
        2: ("0", "w^20", "w^30", "w^24", "w^10", "w^14", "w^18", "w^23"),
        4: ("0", "w^3", "w^2", "w^20", "1", "w^29", "w^5", "w^8"),
        8: ("0", "w^4", "w^12", "w^24", "w^5", "w^22", "w^27", "w^16"),
        16: ("0", "w^4", "w^6", "w^9", "w^5", "w^22", "w^23", "w^15"),
    },
    "1": {
        2: ("0", "w^7", "w^6", "w^24", "1", "w^22", "w^27", "w^15"),
        4: ("0", "w^4", "w^12", "w^24", "1", "w^10", "w^23", "w^15"),
        8: ("0", "w^2", "w", "w^19", "1", "w^5", "w^18", "w^11"),
        16: ("0", "w^4", "w^12", "w^24", "1", "w^10", "w^23", "w^15"),
    },
}

PAIRS_SIGMA1 = (("0", "w^22"), ("w^8", "w^21"), ("w^11", "w^30"), ("w^6", "w^15"))
PAIRS_CASE = "w^18"

# (D-conics, M-conics) per case
CONIC_COUNTS = {"w^18": (10, 30), "w": (10, 30), "1": (8, 24)}
D_CONICS = 28
M_CONICS = 84
ARCS_THROUGH_BASE = 21
CLASS_COUNT = 3
EXPONENT_TRIPLES = ((12, 15, 4), (5, 25, 14), (6, 19, 8))
SPAN = ("1", "w", "w^9")

# the worked example: sigma = 4, t = w^2, case w + 1
EXAMPLE = {"case": "w^18", "sigma": 4, "t": "w^2"}
EXAMPLE_IMAGE = ("w^12", "1", "w^21")  # alpha, beta, lambda of the image of C_1
# rescaled by w^19 with y -> w^12 y, z -> w^8 z
EXAMPLE_SUBSTITUTION = ("1", "w^12", "w^8")
EXAMPLE_SUBSTITUTED = ("1", "w^12", "w^25")
EXAMPLE_COMPOSITES = {
    "1": ("1", "w^6", "w^21"),
    "w": ("1", "w^18", "w^16"),
    "w^18": ("1", "w^20", "w^9"),
}
EXAMPLE_CLASS = (6, 19, 8)
EXAMPLE_CENTER = (0, 1, 0)
