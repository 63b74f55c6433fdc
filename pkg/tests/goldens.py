"""Worked objects shared by several test modules."""
from overlab.paths import LatticePath

V = LatticePath.from_vertices

# start height 2, peaks at abscissae 2, 4, 6, 7
PATH_MAJOR_19 = LatticePath(2, tuple("SE,NE,S,SE,NE,SE,NE,S,NE,SE".split(",")))

# five peaks, pairs with the symbol (14 11 6 4 2 / 7 6' 5' 4 3') when k - i = 2
PATH_FIVE_PEAKS = V([(0, 2), (2, 0), (6, 4), (8, 2), (9, 3), (9, 2), (10, 1), (12, 3), (15, 0),
                     (16, 0), (18, 2), (19, 1), (22, 4), (22, 3), (25, 0)])
SYMBOL_FIVE_PEAKS = "14 11 6 4 2 / 7 6' 5' 4 3'"

PATH_SIX_PEAKS = V([(0, 3), (2, 1), (3, 2), (3, 1), (4, 0), (7, 3), (8, 2), (9, 3), (9, 2), (10, 1),
                    (13, 4), (17, 0), (20, 3), (20, 2), (21, 1), (23, 3), (26, 0)])

# uplift stages for (k, i) = (5, 2)
BASE = V([(0, 3), (2, 1), (3, 2), (5, 0), (8, 3), (9, 2), (10, 3), (13, 0)])
UPLIFTED = V([(0, 3), (2, 1), (4, 3), (4, 2), (6, 0), (10, 4), (10, 3), (11, 2), (13, 4), (13, 3), (16, 0)])
WITH_NEW_PEAKS = V([(0, 3), (1, 4), (1, 3), (2, 4), (2, 3), (3, 4), (3, 3), (4, 4), (4, 3), (6, 1), (8, 3),
                    (8, 2), (10, 0), (14, 4), (14, 3), (15, 2), (17, 4), (17, 3), (20, 0)])
WITH_LAMBDA = V([(0, 3), (1, 4), (1, 3), (2, 4), (3, 3), (4, 4), (5, 3), (6, 4), (9, 1), (11, 3), (11, 2),
                 (13, 0), (17, 4), (19, 2), (21, 4), (21, 3), (24, 0)])
