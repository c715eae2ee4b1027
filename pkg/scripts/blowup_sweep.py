"""Sweep the arrangement identities over good families and time each stage."""
import random
import time
from dataclasses import dataclass
from itertools import combinations

from _config import parse_config

from chernkit.blowup import good_families, main_construction, principal, verify_lem_dva, verify_per_ob


@dataclass(frozen=True)
class Config:
    """Exhaustive pair sweep up to a ground size, random pairs above it."""
    exhaustive_up_to: int = 3
    random_n: int = 4
    random_pairs: int = 200
    seed: int = 0
    modulus: int | None = None


def main(cfg: Config) -> int:
    failures = 0
    t0 = time.perf_counter()
    for N in range(1, cfg.exhaustive_up_to + 1):
        fams = good_families(N)
        bad = sum(not verify_per_ob(U, W, modulus=cfg.modulus).passed for U in fams for W in fams)
        print(f"N={N}: {len(fams)} families, {len(fams) ** 2} pairs, {bad} failures")
        failures += bad
    rng = random.Random(cfg.seed)
    fams = good_families(cfg.random_n)
    bad = sum(
        not verify_per_ob(rng.choice(fams), rng.choice(fams), modulus=cfg.modulus).passed
        for _ in range(cfg.random_pairs)
    )
    print(f"N={cfg.random_n}: {cfg.random_pairs} random pairs, {bad} failures")
    failures += bad
    for N in range(1, cfg.random_n + 1):
        singles = [principal(N, [i]) for i in range(1, N + 1)]
        colls = [c for k in range(1, N + 1) for c in combinations(singles, k)]
        bad = sum(not verify_lem_dva(list(c), modulus=cfg.modulus).passed for c in colls)
        caps = [None] + list(range(1, N))
        mc_bad = sum(not main_construction(N, cap, cfg.modulus).ok for cap in caps)
        print(f"N={N}: {len(colls)} principal collections ({bad} failures), "
              f"main construction over caps {caps}: {mc_bad} failures")
        failures += bad + mc_bad
    print(f"total {time.perf_counter() - t0:.2f}s, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main(parse_config(Config)))
