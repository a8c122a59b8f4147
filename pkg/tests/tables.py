"""Frozen composition-factor tables for the exterior-square and third-Lie-power targets.

Each entry maps (type, rank, module weight, power) to a list of
(regime, p, [(highest weight, dim, mult), ...]) with p None for the
generic regime.
"""

from liepowers.factors import fundamental as fw

Z = lambda n: (0,) * n  # noqa: E731

EXPECTED = {
    ("G", 2, fw(2, 1), "a2"): [
        ("p = 3", 3, [(fw(2, 2), 7, 1), (fw(2, 1), 7, 2)]),
        ("p > 3", None, [(fw(2, 2), 14, 1), (fw(2, 1), 7, 1)]),
    ],
    ("G", 2, fw(2, 2), "a2"): [
        ("p > 3", None, [(fw(2, 1, 1, 1), 77, 1), (fw(2, 2), 14, 1)]),
    ],
    ("F", 4, fw(4, 1), "a2"): [
        ("p = 3", 3, [(fw(4, 2), 1222, 1), (fw(4, 1), 52, 2)]),
        ("p > 3", None, [(fw(4, 2), 1274, 1), (fw(4, 1), 52, 1)]),
    ],
    ("F", 4, fw(4, 4), "a2"): [
        ("p = 3", 3, [(fw(4, 3), 196, 1), (fw(4, 1), 52, 2)]),
        ("p > 3", None, [(fw(4, 3), 273, 1), (fw(4, 1), 52, 1)]),
    ],
    ("E", 6, fw(6, 1), "a2"): [("p > 2", None, [(fw(6, 3), 351, 1)])],
    ("E", 6, fw(6, 6), "a2"): [("p > 2", None, [(fw(6, 5), 351, 1)])],
    ("E", 7, fw(7, 7), "a2"): [
        ("p = 7", 7, [(fw(7, 6), 1538, 1), (Z(7), 1, 2)]),
        ("p not in {2,7}", None, [(fw(7, 6), 1539, 1), (Z(7), 1, 1)]),
    ],
    ("E", 8, fw(8, 8), "a2"): [
        ("p = 3", 3, [(fw(8, 7), 30132, 1), (fw(8, 8), 248, 2)]),
        ("p = 5", 5, [(fw(8, 7), 30132, 1), (fw(8, 8), 248, 2)]),
        ("p > 5", None, [(fw(8, 7), 30380, 1), (fw(8, 8), 248, 1)]),
    ],
    ("E", 6, fw(6, 1), "l3"): [
        ("p = 3", 3, [(fw(6, 1, 3), 2404, 1), (fw(6, 4), 2771, 1), (fw(6, 1, 6), 572, 2),
                      (fw(6, 2), 77, 3), (Z(6), 1, 2)]),
        ("p = 5", 5, [(fw(6, 1, 3), 5746, 1), (fw(6, 1, 6), 650, 1), (fw(6, 2), 78, 2)]),
        ("p > 5", None, [(fw(6, 1, 3), 5824, 1), (fw(6, 1, 6), 650, 1), (fw(6, 2), 78, 1)]),
    ],
    ("E", 6, fw(6, 6), "l3"): [
        ("p = 3", 3, [(fw(6, 5, 6), 2404, 1), (fw(6, 4), 2771, 1), (fw(6, 1, 6), 572, 2),
                      (fw(6, 2), 77, 3), (Z(6), 1, 2)]),
        ("p = 5", 5, [(fw(6, 5, 6), 5746, 1), (fw(6, 1, 6), 650, 1), (fw(6, 2), 78, 2)]),
        ("p > 5", None, [(fw(6, 5, 6), 5824, 1), (fw(6, 1, 6), 650, 1), (fw(6, 2), 78, 1)]),
    ],
    ("E", 7, fw(7, 7), "l3"): [
        ("p = 3", 3, [(fw(7, 6, 7), 24264, 1), (fw(7, 5), 25896, 1), (fw(7, 1, 7), 6480, 1),
                      (fw(7, 2), 856, 2), (fw(7, 7), 56, 3)]),
        ("p = 7", 7, [(fw(7, 6, 7), 51072, 1), (fw(7, 1, 7), 5568, 1), (fw(7, 2), 912, 2), (fw(7, 7), 56, 1)]),
        ("p = 11", 11, [(fw(7, 6, 7), 44592, 1), (fw(7, 1, 7), 6480, 2), (fw(7, 2), 912, 1), (fw(7, 7), 56, 1)]),
        ("p = 19", 19, [(fw(7, 6, 7), 51072, 1), (fw(7, 1, 7), 6424, 1), (fw(7, 2), 912, 1), (fw(7, 7), 56, 2)]),
        ("p not in {2,3,7,11,19}", None,
         [(fw(7, 6, 7), 51072, 1), (fw(7, 1, 7), 6480, 1), (fw(7, 2), 912, 1), (fw(7, 7), 56, 1)]),
    ],
    ("C", 28, fw(28, 1), "a2"): [("generic p", None, [(fw(28, 2), 1539, 1), (Z(28), 1, 1)])],
    ("C", 28, fw(28, 1), "l3"): [
        ("p = 19", 19, [(fw(28, 1, 2), 58408, 1), (fw(28, 1), 56, 2)]),
        ("generic p", None, [(fw(28, 1, 2), 58464, 1), (fw(28, 1), 56, 1)]),
    ],
}

# Regimes that are multiplicity free (the final regime of each target).
MULTIPLICITY_FREE = {key: [rows[-1][0]] for key, rows in EXPECTED.items()}
