"""Brute force vs hypergeometric K3 counts over growing q; writes CSV to stdout."""
import argparse
from dataclasses import dataclass, field

from dworkhyp import cli


@dataclass
class ScanConfig:
    d: int = 4
    qs: list = field(default_factory=lambda: [5, 13, 17, 29, 37, 41])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, default=ScanConfig.d)
    ap.add_argument("--q", default=",".join(map(str, ScanConfig().qs)))
    args = ap.parse_args()
    return cli.main(["scan", "--d", str(args.d), "--q", args.q, "--format", "csv"])


if __name__ == "__main__":
    raise SystemExit(main())
