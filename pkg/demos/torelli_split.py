"""Split tau_1 of a random Torelli product into its four pieces and rebuild it."""

import sys

import numpy as np

from bigrade import catalog as cat
from bigrade.johnson import torelli_reconstruct
from bigrade.words import aut_product


def main(seed=0, length=4):
    g = 3
    pool = [h for comp in cat.torelli_realizers(g).values() for _, h in comp]
    rng = np.random.default_rng(seed)
    picks = [pool[i] for i in rng.integers(0, len(pool), length)]
    hs = [h.inverse() if rng.integers(2) else h for h in picks]
    print("product of", ", ".join(h.name for h in hs))
    rep = torelli_reconstruct(aut_product(*hs))
    print("tau_1:", rep["tau1"])
    for level, text in rep["components"].items():
        print(f"  piece at {level}: {text}   factors {rep['factors'][level]}")
    print("residual tau_1:", rep["residual_tau1"], "ok" if rep["ok"] else "FAILED")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 0)
