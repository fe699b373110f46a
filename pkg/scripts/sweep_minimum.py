"""Interior minimum of f_theta against its floor 4(1 - 1/theta^2), for a theta sweep."""

from dataclasses import dataclass

import numpy as np

from asinhbounds.analysis import find_minimum

from _common import parse_config, write_csv


@dataclass
class Config:
    theta_min: float = 2.01
    theta_max: float = 1000.0
    points: int = 60
    output: str = "-"


def run(cfg: Config):
    for theta in np.geomspace(cfg.theta_min, cfg.theta_max, cfg.points):
        rep = find_minimum(float(theta))
        yield (rep.theta, rep.x0, rep.f_min, rep.floor, rep.f_min - rep.floor, 1 + rep.theta - rep.f_min)


if __name__ == "__main__":
    cfg = parse_config(Config, __doc__)
    write_csv(cfg.output, ("theta", "x0", "f_min", "floor", "excess_over_floor", "dip_below_1_plus_theta"), run(cfg))
