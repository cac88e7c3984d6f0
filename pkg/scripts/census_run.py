"""Resumable census.  n = 9 takes days; rerun with the same checkpoint file
to pick up where it stopped.

    python scripts/census_run.py 7 --workers 4 --checkpoint runs/census7.ckpt
"""

import argparse
import time

from coxthick.census import census


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("n", type=int)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--checkpoint")
    args = ap.parse_args()
    t0 = time.time()

    def progress(s, e, t, c):
        print(f"  [{s}, {e}) t={t} c={c}  {time.time() - t0:.0f}s", flush=True)

    res = census(args.n, workers=args.workers, checkpoint=args.checkpoint, progress=progress)
    print(res.sentence())
    print(f"RESULT {res.n} {res.t} {res.c}  ({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
