"""
Layered presentation against the direct braid presentation
==========================================================
"""

# %%
from vbraid.braids import RepKind, parse_braid
from vbraid.invariants import class2_quotient
from vbraid.presentation import layered_presentation, link_group, tietze_simplify

for text, n in (("s1", 2), ("s1^-1 r1", 2), ("s1 s2 r1", 3)):
    braid = parse_braid(text, n)
    layered = layered_presentation(braid)
    direct = link_group(RepKind.M, braid)
    a = class2_quotient(tietze_simplify(layered))
    b = class2_quotient(tietze_simplify(direct))
    print(f"[{text}] layered {layered.ngens} gens, direct {direct.ngens} gens")
    print(f"    {a.abelianization} ; {a.gamma2_over_gamma3}   vs   {b.abelianization} ; {b.gamma2_over_gamma3}")

# %%
# the layered generators before simplification
print(layered_presentation(parse_braid("s1", 2)).to_text())
