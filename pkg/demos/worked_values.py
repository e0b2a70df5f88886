"""Print a handful of worked values: expansions, natural sums, tau_1."""

import itertools

from bigrade import catalog as cat
from bigrade.freelie import wedge_text
from bigrade.grading import format_ordinal, hessenberg_sum, parse_ordinal
from bigrade.johnson import tau_classical
from bigrade.magnus import delta_component, magnus_expand
from bigrade.words import Alphabet, commutator


def main():
    A = Alphabet(1, 1)
    c = commutator(A.x(1), A.y(1))
    print("theta([x1,y1]) =", magnus_expand(c, 3, alpha=A).text())
    print("delta_{1,1}    =", delta_component(c, (1, 1), 3, A).text())
    print("(w*2+3) # (w+4) =", format_ordinal(hessenberg_sum(parse_ordinal("w*2+3"), parse_ordinal("w+4"))))
    g = 3
    for i, j in itertools.permutations(range(1, g + 1), 2):
        h = cat.h_pair(g, i, j)
        print(f"tau_1({h.name}) = {wedge_text(tau_classical(h, 1).wedge, g)}")
    h = cat.twist_commutator_x(g, 1, 2, 3)
    print(f"tau_1({h.name}) = {wedge_text(tau_classical(h, 1).wedge, g)}")


if __name__ == "__main__":
    main()
