"""Print kappa for every partition up to a weight, with the Steenrod coefficient table mod p."""
from dataclasses import dataclass

from _config import parse_config

from chernkit.modp import stch_coefficient, stch_decomposable
from chernkit.symfunc import all_partitions, kappa_bruteforce, kappa_formula


@dataclass(frozen=True)
class Config:
    """Tabulate top-class coefficients."""
    max_weight: int = 6
    primes: tuple[int, ...] = (2, 3, 5)
    max_degree: int = 20
    brute_force: bool = True


def main(cfg: Config) -> int:
    bad = 0
    print(f"{'partition':>14} {'kappa':>8}")
    for r in all_partitions(cfg.max_weight):
        if r.inner_degree == 0:
            continue
        k = kappa_formula(r)
        mark = ""
        if cfg.brute_force and kappa_bruteforce(r) != k:
            mark, bad = "  MISMATCH", bad + 1
        print(f"{str(r):>14} {k:>8}{mark}")
    for p in cfg.primes:
        print(f"\np = {p}: binom(d-kp+k-1, k) mod p for k = 1..d/p; '*' marks indecomposable d")
        for d in range(1, cfg.max_degree + 1):
            row = [stch_coefficient(d, k, p) for k in range(1, d // p + 1)]
            flag = " " if stch_decomposable(d, p).decomposable else "*"
            print(f"  d={d:>3}{flag} {row}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main(parse_config(Config)))
