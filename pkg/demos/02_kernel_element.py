"""
A braid killed by two representations
=====================================
"""

# %%
from vbraid.braids import RepKind, parse_braid, rep_image
from vbraid.endo import is_identity
from vbraid.words import conjugate_form

n = 4
alpha = parse_braid("s2^-1 r1 s2 r3", n)
beta = alpha ** 3

for kind in (RepKind.SW, RepKind.BD, RepKind.MTILDE):
    print(kind.value, "identity" if is_identity(rep_image(kind, n, beta)) else "not identity")

# %%
# the images under MTILDE, first of alpha, then of beta = alpha^3
for w in (alpha, beta):
    e = rep_image(RepKind.MTILDE, n, w)
    for g in ("y1", "y2", "y3", "y4"):
        print(f"{g} -> {conjugate_form(e[g])}")
    print()
