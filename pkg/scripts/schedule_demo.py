"""Build an annihilation schedule and run it on a formal Chern vector."""
import json
from dataclasses import dataclass

from _config import parse_config

from chernkit.chern_ops import ChernVector, FormalChernModel, annihilate_schedule, apply_schedule
from chernkit.serialize import schedule_to_json


@dataclass(frozen=True)
class Config:
    """Schedule for c_r = u up to degree dim."""
    r: int = 2
    p: int = 3
    m: int = 1
    dim: int = 5
    adams_only: bool = False
    lower_zero: bool = True
    dump: bool = False


def main(cfg: Config) -> int:
    mode = "adamsOnly" if cfg.adams_only else "full"
    s = annihilate_schedule(cfg.r, cfg.p, cfg.m, cfg.dim, mode)
    if cfg.dump:
        print(json.dumps(schedule_to_json(s), indent=2, sort_keys=True))
    for mv in s.moves:
        print(f"d={mv.degree}: {mv.kind}")
    M = FormalChernModel(cfg.r, cfg.dim, cfg.p, m=cfg.m, steenrod_closed=cfg.m == 1)
    v = M.universal_vector()
    if cfg.lower_zero:
        # c_1..c_{r-1} literally zero, so c_r = u can be compared exactly
        v = ChernVector(M.ring, tuple(M.ring.zero() if i < cfg.r - 1 else g for i, g in enumerate(M.ring.gens())))
    w, report = apply_schedule(v, s, M, strict=False)
    print("\n".join(report.lines()))
    if cfg.lower_zero:
        print(f"c_r == u exactly: {w.c(cfg.r) == M.u}")
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main(parse_config(Config)))
