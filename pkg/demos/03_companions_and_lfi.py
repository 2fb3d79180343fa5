"""Variable-inclusion companions of classical logic, and a consistency operator for P1."""
from explosion.companions import CompanionLogic, entails_companion
from explosion.formula import App, Var, parse, parse_list, to_text
from explosion.gallery import cpc, load_builtin
from explosion.principles import check, conjunctive_collapse, find_consistency_set, verify_lfi

c = cpc()
for mode in ("left", "pure_left", "right", "pure_right"):
    ok = entails_companion(c, mode, parse_list("p, ¬p"), parse("q"))
    print(f"cpc^{mode}: p, ¬p ⊢ q is {ok};", check(CompanionLogic(c, mode), "nf_para"))
print()

p1 = load_builtin("p1")
circle = find_consistency_set(p1)
print("consistency formula for P1:", to_text(circle[0]))
for clause, v in verify_lfi(p1, "¬", circle).items():
    print(f"  clause ({clause}):", v)
p = Var("p")
phi = conjunctive_collapse(p1, circle + [p, App("¬", (p,))])
print("one formula that trivializes P1:", to_text(phi))
