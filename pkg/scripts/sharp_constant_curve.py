"""Sharp upper constant b(r) on a log grid of windows, with its excess over the limit 2."""

from dataclasses import dataclass

import numpy as np

from asinhbounds.analysis import zhu_sharp_constant

from _common import parse_config, write_csv


@dataclass
class Config:
    r_min: float = 1e-6
    r_max: float = 1e6
    points: int = 121
    output: str = "-"


def run(cfg: Config):
    for r in np.geomspace(cfg.r_min, cfg.r_max, cfg.points):
        b = zhu_sharp_constant(float(r))
        # b - 2 ~ r^2/10 for small r
        yield (float(r), b, b - 2.0, (b - 2.0) / r**2)


if __name__ == "__main__":
    cfg = parse_config(Config, __doc__)
    write_csv(cfg.output, ("r", "b", "b_minus_2", "excess_over_r2"), run(cfg))
