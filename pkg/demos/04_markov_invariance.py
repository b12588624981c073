"""
Markov moves and link-group invariants
======================================
"""

# %%
from vbraid.braids import RepKind, parse_braid
from vbraid.invariants import class2_quotient
from vbraid.presentation import all_moves, apply_markov, link_group, tietze_simplify


def invariants(kind, braid):
    r = class2_quotient(tietze_simplify(link_group(kind, braid)))
    return f"{r.abelianization} ; {r.gamma2_over_gamma3}"


braid = parse_braid("s1 r1", 2)
print("start:", invariants(RepKind.MTILDE, braid))
for mv in all_moves(braid.n):
    moved = apply_markov(braid, mv)
    print(f"{str(mv):<16} [{moved}]  {invariants(RepKind.MTILDE, moved)}")

# %%
# the same braids under M
for text, n in (("s1 s1 s1", 2), ("r1 r2", 3), ("s1 s2^-1 r1", 3)):
    print(text, "->", invariants(RepKind.M, parse_braid(text, n)))
