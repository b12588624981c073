"""
Representations of the virtual braid group
==========================================

Generator images for every representation kind, and the relation check.
"""

# %%
from vbraid.braids import RepKind, parse_braid, rep_image, verify_relations

n = 3
for kind in RepKind:
    print(f"--- {kind.value}: sigma_1 on {n} strands")
    print(rep_image(kind, n, parse_braid("s1", n)))

# %%
# every defining relation holds; the forbidden ones F1 and F2 are reported
for kind in RepKind:
    report = verify_relations(kind, 4)
    d = report.to_dict()
    print(f"{kind.value:<7} defining ok: {report.defining_ok}   F1 {d['F1']:<6} F2 {d['F2']}")

# %%
# images of words compose left to right
w = parse_braid("s1 r2 s1^-1", n)
print(rep_image(RepKind.M, n, w))
