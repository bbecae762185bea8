"""Certificate rates of the Tverberg search on generated instances."""
import argparse
import time
from dataclasses import dataclass

from cxtv import io
from cxtv.generate import generate_instance
from cxtv.search import SearchConfig
from cxtv.tverberg import TverbergCert, search_tv, verify_tv


@dataclass
class Config:
    d: int = 2
    k: int = 1
    r: int = 2
    seeds: int = 25
    colorful: bool = False
    budget: int = 400


def run(cfg: Config):
    hits, times = 0, []
    for seed in range(cfg.seeds):
        _, inst = io.load_instance(generate_instance("tverberg", cfg.d, cfg.k, r=(cfg.r,) * cfg.d, seed=seed,
                                                     colorful=cfg.colorful))
        t = time.perf_counter()
        res = search_tv(inst, SearchConfig(budget=cfg.budget, seed=seed))
        times.append(time.perf_counter() - t)
        ok = isinstance(res, TverbergCert) and bool(verify_tv(res, inst))
        hits += ok
        print(f"seed {seed:3d}  {'cert' if ok else 'none'}  {times[-1]:.3f}s")
    print(f"{hits}/{cfg.seeds} certified, mean {sum(times) / len(times):.3f}s, max {max(times):.3f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, v in vars(Config()).items():
        if isinstance(v, bool):
            ap.add_argument(f"--{f}", action="store_true")
        else:
            ap.add_argument(f"--{f}", type=int, default=v)
    run(Config(**vars(ap.parse_args())))
