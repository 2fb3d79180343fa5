"""Principles of explosion on small finite structures.

Builds a few consequence tables by hand, checks every principle on them and
prints the witnesses.
"""
from explosion.core import FiniteStructure
from explosion.gallery import pure_reflexive
from explosion.principles import check_many, quasi_negations

PRINCIPLES = ["gecq", "secq", "specq", "pfecq", "parecq", "nf_para", "fin_triv:3"]


def show(title, s):
    print(f"== {title}")
    print("trivial sets:", " ".join(s.show(m) for m in range(1 << s.size) if s.trivial[m]) or "none")
    for v in check_many(s, PRINCIPLES):
        print("  ", v)
    print()


show("identity consequence on {a,b,c}", pure_reflexive(3))

# {a,b} and {a,c} explode, nothing else does
s = FiniteStructure.from_trivial_family(3, [0b011, 0b101, 0b111])
show("two exploding pairs", s)
print("QN(a) =", s.show(quasi_negations(s, "a").to_mask()))
print("QN(b) =", s.show(quasi_negations(s, "b").to_mask()))
print()

# a point trivializer: {a} alone explodes
show("point trivializer", FiniteStructure.from_trivial_family(3, [m for m in range(8) if m & 1]))
