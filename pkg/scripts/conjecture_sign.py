"""Which sign makes the d = 5 point-count congruence hold, prime by prime."""
import argparse
from dataclasses import dataclass, field

from dworkhyp.dwork import conjecture_point_count


@dataclass
class SignConfig:
    primes: list = field(default_factory=lambda: [3, 7, 13, 17, 23])
    k: int = 2


def main():
    cfg = SignConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default=",".join(map(str, cfg.primes)))
    ap.add_argument("--k", type=int, default=cfg.k)
    args = ap.parse_args()
    print("p,k,minus_sign_holds,plus_sign_holds,lambdas")
    for p in (int(x) for x in args.primes.split(",")):
        reports = conjecture_point_count(5, p, args.k, None)
        minus = sum(r.outcome == "pass" for r in reports)
        plus = sum(bool(r.extra["opposite_sign_holds"]) for r in reports)
        print(f"{p},{args.k},{minus},{plus},{len(reports)}")


if __name__ == "__main__":
    main()
