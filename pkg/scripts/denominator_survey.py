"""Reduced denominators of Greene 3F2 values at x = g over all parameter choices."""
import argparse
import itertools
from collections import Counter

from dworkhyp.char_sums import HgfSpec, greene_hgf
from dworkhyp.finite_field import build_field


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=5)
    args = ap.parse_args()
    F = build_field(args.q)
    q, n = F.q, F.q - 1
    dens = Counter()
    for up in itertools.product(range(n), repeat=3):
        for lo in itertools.product(range(n), repeat=2):
            dens[greene_hgf(F, HgfSpec(up, lo, F.generator_index)).den] += 1
    print("denominator,count,divides_q(q-1),divides_q^2(q-1)")
    for den, c in sorted(dens.items()):
        print(f"{den},{c},{q * n % den == 0},{q * q * n % den == 0}")


if __name__ == "__main__":
    main()
