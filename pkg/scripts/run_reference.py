"""Point-target run on the default scene; writes images and a results table.

    python scripts/run_reference.py [out_dir]
"""

import sys

from sfdort.config import RunConfig
from sfdort.experiment import run_single


def main(out="out/reference"):
    for r in run_single(RunConfig(), out):
        x, y = r.estimated_position
        print(f"{r.method:5s} peak ({x:g}, {y:g}) mm  error {r.error_mm:.2f} mm  h4 {r.sharpness_h4:.3e}  {r.runtime_s:.2f}s")


if __name__ == "__main__":
    main(*sys.argv[1:])
