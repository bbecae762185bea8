"""Timings and attained depths of the complex and odd transversal searches."""
import argparse
import random
import time
from dataclasses import dataclass

from cxtv import io
from cxtv.generate import generate_instance
from cxtv.search import SearchConfig
from cxtv.transversal import TransversalCert, search_odd_transversal, search_transversal


@dataclass
class Config:
    seeds: int = 50
    lo: int = 12
    hi: int = 20
    odd: bool = False


def run(cfg: Config):
    search = search_odd_transversal if cfg.odd else search_transversal
    times, mins = [], []
    for seed in range(cfg.seeds):
        rng = random.Random(seed)
        sizes = [rng.randint(cfg.lo, cfg.hi) for _ in range(2)]
        _, (d, k, ms) = io.load_instance(generate_instance("measures", 2, 1, sizes, seed))
        t = time.perf_counter()
        cert = search(ms, 1, SearchConfig(seed=seed))
        times.append(time.perf_counter() - t)
        if isinstance(cert, TransversalCert):
            mins.append(min(dv.value for dv in cert.depths))
            print(f"seed {seed:3d}  sizes {sizes}  min depth {mins[-1]}  bound {cert.bound}  {times[-1]:.3f}s")
        else:
            print(f"seed {seed:3d}  sizes {sizes}  no certificate  {times[-1]:.3f}s")
    print(f"{len(mins)}/{cfg.seeds} certified, mean {sum(times) / len(times):.3f}s, max {max(times):.3f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--lo", type=int, default=12)
    ap.add_argument("--hi", type=int, default=20)
    ap.add_argument("--odd", action="store_true")
    run(Config(**vars(ap.parse_args())))
