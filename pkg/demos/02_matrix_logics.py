"""Named many-valued logics: which forms of explosion survive.

Bounded verdicts record the pool they were computed over.
"""
from explosion.formula import parse
from explosion.gallery import load_builtin
from explosion.matrix import entails
from explosion.principles import check_many, finitely_trivializable

for name in ("cpc", "pwk", "p1", "lp", "pac"):
    m = load_builtin(name)
    print(f"== {name}: values {m.values}, designated {sorted(m.designated)}")
    for v in check_many(m, ["ecq:neg", "gecq", "pfecq"]):
        print("  ", v)
    print("  ", finitely_trivializable(m, 3))
    print()

pwk = load_builtin("pwk")
gamma = [parse("p"), parse("¬p")]
print("PWK: p, ¬p ⊨ q ?", entails(pwk, gamma, parse("q")))
print("PWK: p, ¬p ⊨ p ∧ ¬p ?", entails(pwk, gamma, parse("p ∧ ¬p")))
print("PWK: ⊥ ⊨ q ?", entails(pwk, [parse("⊥")], parse("q")))
