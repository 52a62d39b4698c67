"""Where the Gamma_p / Pochhammer product identity holds for each (m, d, p)."""
import argparse
from dataclasses import dataclass, field

from dworkhyp.padic import pochhammer_identity_check


@dataclass
class RangeConfig:
    primes: list = field(default_factory=lambda: [5, 13, 17, 29])
    max_d: int = 6


def main():
    cfg = RangeConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default=",".join(map(str, cfg.primes)))
    args = ap.parse_args()
    print("p,d,m,t,failing_j")
    for p in (int(x) for x in args.primes.split(",")):
        for d in range(2, cfg.max_d + 1):
            if (p - 1) % d:
                continue
            t = (p - 1) // d
            for m in range(1, d):
                bad = [j for j in range(m * t + 1) if pochhammer_identity_check(m, d, p, j).status == "fail"]
                print(f"{p},{d},{m},{t},{' '.join(map(str, bad)) or '-'}")


if __name__ == "__main__":
    main()
