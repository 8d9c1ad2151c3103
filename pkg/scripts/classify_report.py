"""Run the sum-of-squares sieve for one degree and write the report as JSON.

    python3 scripts/classify_report.py --degree 3 --out classify3.json
"""

import argparse
import json
import logging
import time

from sosfields.classify import SieveConfig, classify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, required=True)
    ap.add_argument("--trace-budget", type=int)
    ap.add_argument("--escalate", action="store_true")
    ap.add_argument("--out")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(message)s")
    t = time.perf_counter()
    rep = classify(args.degree, args.trace_budget, SieveConfig(escalate=args.escalate),
                   long_running=args.degree == 5)
    data = rep.to_json()
    data["seconds"] = round(time.perf_counter() - t, 1)
    print(json.dumps(data["counts"]), f"in {data['seconds']}s")
    for s in data["survivors"]:
        print("survivor", s["name"], "disc", s["disc"])
    if rep.biquadratic:
        print("biquadratic survivors", rep.biquadratic["survivors"])
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(data, fh, indent=1)


if __name__ == "__main__":
    main()
