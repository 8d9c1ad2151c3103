"""How many real quadratic fields are generated by integers of house below each bound."""

import argparse

from sosfields.classify import quadratic_D, quadratic_generator_fields
from sosfields.cli import _parse_bound


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("bounds", nargs="*", default=["4", "2+sqrt6", "5", "6"])
    args = ap.parse_args()
    for text in args.bounds:
        gens, quads = quadratic_generator_fields(_parse_bound(text))
        ds = [quadratic_D(k) for k in quads]
        print(f"{text:>10}: {len(quads):>3} fields from {gens} generators  D = {ds}")


if __name__ == "__main__":
    main()
