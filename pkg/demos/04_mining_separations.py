"""Smallest finite structures separating pairs of principles.

The search walks carriers of size 1, 2, ... and stops at the first hit, so
the reported size is minimal.
"""
from explosion.miner import SeparationQuery, find_separation

QUERIES = [
    "secq=proven,gecq=refuted",
    "parecq=proven,gecq=refuted",
    "pfecq=proven,specq=refuted",
    "ecq:neg=proven,pfecq=refuted",
]

for text in QUERIES:
    r = find_separation(SeparationQuery.parse(text))
    s = r.structure
    print(f"{text}: n={r.n} ({r.scope})")
    print("  trivial sets:", " ".join(s.show(m) for m in range(1 << s.size) if s.trivial[m]))
    for name, f in s.unary_ops.items():
        print(f"  {name}:", " ".join(f"{s.names[i]}->{s.names[j]}" for i, j in enumerate(f)))

# with the Tarskian conditions imposed the answer moves to n = 3
q = SeparationQuery.parse("secq=proven,pfecq=refuted",
                          structural_filters=frozenset({"reflexive", "monotone", "transitive"}),
                          max_carrier=3)
r = find_separation(q)
s = r.structure
print(f"Tarskian sECQ without pfECQ: n={r.n}; trivial sets:",
      " ".join(s.show(m) for m in range(1 << s.size) if s.trivial[m]))
