"""Expected 8-bit codes for the 2x2 apply test, in exact rational arithmetic.

Curves on a 2-interval grid: cyan (0, 0.7, 1), magenta (0, 0.3, 1),
yellow (0, 0.5, 1).
"""
from fractions import Fraction as F
import math

CURVES = {0: [F(0), F(7, 10), F(1)], 1: [F(0), F(3, 10), F(1)], 2: [F(0), F(1, 2), F(1)]}
PIXELS = [(255, 255, 255), (0, 0, 0), (153, 51, 204), (102, 191, 64)]


def curve(ys, x):
    t = x * 2
    k = min(int(t), 1)
    return ys[k] + (t - k) * (ys[k + 1] - ys[k])


for px in PIXELS:
    out = []
    for ch, code in enumerate(px):
        dye = 1 - F(code, 255)
        rgb = 1 - curve(CURVES[ch], dye)
        out.append(math.floor(rgb * 255 + F(1, 2)))
    print(px, "->", tuple(out))
