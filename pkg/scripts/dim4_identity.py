"""Check the dimension-four identity for a three-root bundle and its determinant line."""
from dataclasses import dataclass

from _config import parse_config

from chernkit.chern_ops import dim4_identity


@dataclass(frozen=True)
class Config:
    """Coefficient modulus (0 for the integers)."""
    modulus: int = 2


def main(cfg: Config) -> int:
    chk = dim4_identity(cfg.modulus or None)
    c = chk.c
    print(f"d   = {chk.d}")
    for i in range(1, 5):
        print(f"c{i}  = {c.c(i)}")
    print(f"c4 == c3*d + c2*d^2 + d^4: {chk.identity_holds}")
    print(f"adding four d-lines shifts c4 by d^4: {chk.shift_is_d4}")
    print(f"c1..c3 unchanged by the shift: {chk.lower_unchanged}")
    return 0 if chk.ok else 1


if __name__ == "__main__":
    raise SystemExit(main(parse_config(Config)))
