"""Localisation error and sharpness against target radius (ring surrogate).

    python scripts/radius_sweep.py [out_dir] [jobs]

Writes per-radius run directories, sweep_results.csv, and the two per-figure
tables error_vs_radius.csv / h4_vs_radius.csv.
"""

import sys
from dataclasses import replace

from sfdort import io as sfio
from sfdort.config import RunConfig
from sfdort.experiment import emit_plots, run_sweep

RADII = (1.0, 5.0, 10.0, 20.0, 30.0, 50.0, 70.0, 100.0)


def main(out="out/radius_sweep", jobs="1"):
    cfg = replace(RunConfig(), radii=RADII)
    run_sweep(cfg, out, jobs=int(jobs))
    rows = sfio.read_results(f"{out}/sweep_results.csv")
    for path in emit_plots(rows, out):
        print(path.read_text(), end="")


if __name__ == "__main__":
    main(*sys.argv[1:])
