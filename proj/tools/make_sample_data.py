#!/usr/bin/env python3
"""Regenerate data/sample_x.csv and data/sample_y.csv.

Synthetic 40-year daily price pair on a full calendar (1980-01-01 through
2020-01-01). Log-return magnitudes follow deterministic binomial cascades
(left multiplier 0.35 and 0.45, depth 14, leading 14610 cells), signs
alternate with a fixed bit pattern, so the volatility pair is an exactly
reproducible multifractal fixture.
"""

import datetime
import math
import pathlib

L = 14
N_RETURNS = 14610  # daily returns 1980-01-02 .. 2020-01-01
START = datetime.date(1980, 1, 1)
SCALE = 40.0  # cascade mass -> return magnitude


def cascade(p, levels):
    vals = [1.0]
    for _ in range(levels):
        vals = [v * m for v in vals for m in (p, 1.0 - p)]
    return vals


def prices(p):
    mags = cascade(p, L)[:N_RETURNS]
    out = [100.0]
    for t, m in enumerate(mags):
        sign = 1.0 if bin(t).count("1") % 2 == 0 else -1.0
        out.append(out[-1] * math.exp(sign * SCALE * m))
    return out


def write(path, closes):
    with open(path, "w") as f:
        f.write("date,close\n")
        for i, c in enumerate(closes):
            f.write(f"{START + datetime.timedelta(days=i):%Y-%m-%d},{c:.12g}\n")


root = pathlib.Path(__file__).resolve().parent.parent / "data"
root.mkdir(exist_ok=True)
write(root / "sample_x.csv", prices(0.35))
write(root / "sample_y.csv", prices(0.45))
print("wrote", root / "sample_x.csv", "and", root / "sample_y.csv")
