"""Probe each Magnus generator family of IA(F_6) split as 3 + 3 and show its maximal levels."""

from bigrade import catalog as cat
from bigrade.johnson import probe


def main(p=3, q=3):
    seen = set()
    for e in cat.magnus_generators(p, q):
        fam = e.claims["family"]
        if fam in seen:
            continue
        seen.add(fam)
        pr = probe(e.aut(), 3, 6)
        print(f"family {fam:>2}  {e.name:<12} claimed {tuple(e.claims['level'])}  maximal {pr.maximal}")


if __name__ == "__main__":
    main()
