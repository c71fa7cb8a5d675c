"""Published coset bounds used as reference data.

``DISTANCE_18_SETS``: every representative known to give a set of distance
exactly 18.  ``EXTRA_SETS``: four further sets with upper bounds that, added to
the distance-18 sets, cover the graph at 27.
"""

DISTANCE_18_SETS = (
    "",
    "R' B2 U B2 U' R",
    "R' D L2 D' R",
    "R' U' R2 F2 R' F2 U R'",
    "B' U' R2 U R2 B'",
    "F' R2 U R2 U' F' R2 U'",
    "F' D F R2 U' F U2 F'",
    "F' D' B R2 B D F",
    "B' L2 R2 F' D2 U2 F' U",
    "B' U' F2 U B' U'",
    "F' D' B R2 B D F'",
    "B' D' L2 D L2 B' R2",
    "R' F2 U2 R F2 R2 U2 R'",
    "R' D L2 D' R U'",
    "B' U F2 U2 F2 U B'",
    "L' D' U' L' D U L' U'",
    "F' U F U F' U2 F'",
    "F' D U F' D' U' F' U'",
    "B' D U B' D' U' B'",
    "F' D' F' R2 B' D' B'",
    "B' D2 R2 U2 L2 F",
)

EXTRA_SETS = (
    ("R' B2 U' L' F' D2 R2 D' L B' U'", 20),
    ("R' D2 B' L' U L F' R' F2 D' B", 20),
    ("F' L' D F' U' R' B2 R'", 19),
    ("L' B F' D U' B' R F2 L' F' U'", 19),
)

# two distance-18 sets that together bound every set at 28
PAIR_28 = ("B' U F2 U2 F2 U B'", "B' U' R2 U R2 B'")
