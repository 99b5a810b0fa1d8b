"""Compare the synthesis/steering pairings and the wall-strip exclusion width.

Prints DORT error and h4 for each combination at a few radii. Useful for
seeing why the defaults are what they are; nothing here is used by the tests.
"""

from dataclasses import replace

from sfdort.config import RunConfig
from sfdort.experiment import image_spectrum, simulate


def main():
    base = RunConfig()
    print("synthesis steering sep   r   dort_e_mm  dort_h4")
    for syn in ("matched", "raw"):
        for steer in ("raw", "matched"):
            for sep in (0.0, 1.0, 2.0):
                for r in (0.0, 20.0, 50.0):
                    im = replace(base.imaging, synthesis=syn, steering=steer, path_separation=sep, methods="dort")
                    cfg = replace(base, imaging=im).with_radius(r)
                    _, (rep,) = image_spectrum(simulate(cfg), cfg)
                    print(f"{syn:9s} {steer:8s} {sep:3.1f} {r:4.0f} {rep.error_mm:10.2f} {rep.sharpness_h4:.3e}")


if __name__ == "__main__":
    main()
