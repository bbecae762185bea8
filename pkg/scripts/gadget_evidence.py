"""Max-min depth evidence on tight gadgets, and the projection norm check."""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from cxtv.gadgets import best_min_depth_evidence, make_tight_depth_instance, projection_norm_check, tight_bound


@dataclass
class Config:
    d: int = 2
    k: int = 1
    epsilon: str = "1/16"
    battery: int = 8
    grid: int = 2
    samples: int = 100


def run(cfg: Config):
    eps = Fraction(cfg.epsilon)
    inst = make_tight_depth_instance(cfg.d, cfg.k, eps, cfg.battery)
    best, charts = best_min_depth_evidence(inst.measures, cfg.k, grid=cfg.grid)
    print(f"tight bound {tight_bound(cfg.d, cfg.k)}, best min depth {best} over {charts} charts")
    rep = projection_norm_check(cfg.d, cfg.k, Fraction(1, 100), cfg.samples, seed=0)
    print(f"projection norm check passed={rep.passed} max |pi v|^2 = {float(rep.max_norm_sq):.6f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, v in vars(Config()).items():
        ap.add_argument(f"--{f}", type=type(v), default=v)
    run(Config(**vars(ap.parse_args())))
