"""Regenerate tests/data/bessel_oracle.csv from the series oracle.

1000 log-spaced points on [0.01, 500]; values printed to 20 significant digits.
"""

import sys
from pathlib import Path

import mpmath as mp
import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from oracles.bessel_series import j0_y0  # noqa: E402

OUT = ROOT / "tests" / "data" / "bessel_oracle.csv"


def main():
    xs = np.logspace(np.log10(0.01), np.log10(500.0), 1000)
    lines = ["x,j0,y0"]
    for x in xs:
        j, y = j0_y0(float(x))
        lines.append(f"{float(x)!r},{mp.nstr(j, 20)},{mp.nstr(y, 20)}")
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(xs)} rows to {OUT}")


if __name__ == "__main__":
    main()
