"""How the certified midpoint relative error shrinks with the window radius.

Prints the certificate width for several theta and the log-log slope fitted over
the smallest radii.  For theta = 2 the slope is 4; for other theta it is 2.
"""

from dataclasses import dataclass

import numpy as np

from asinhbounds.analysis import certify_enclosure

from _common import parse_config, write_csv


@dataclass
class Config:
    thetas: str = "-0.5,0,1,1.9,2"
    r_min: float = 0.01
    r_max: float = 0.5
    points: int = 12
    output: str = "-"


def run(cfg: Config):
    radii = np.geomspace(cfg.r_min, cfg.r_max, cfg.points)
    for theta in (float(t) for t in cfg.thetas.split(",")):
        errs = np.array([certify_enclosure(theta, float(r)).max_rel_err for r in radii])
        slope = float(np.polyfit(np.log(radii[:4]), np.log(errs[:4]), 1)[0])
        for r, e in zip(radii, errs):
            yield (theta, float(r), float(e), float(e / r**2), slope)


if __name__ == "__main__":
    cfg = parse_config(Config, __doc__)
    write_csv(cfg.output, ("theta", "r", "max_rel_err", "err_over_r2", "small_r_slope"), run(cfg))
