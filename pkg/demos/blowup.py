"""Watch intermediate automata grow, then hit a state ceiling on purpose."""
from ordinal_automata.compiler import Compiler
from ordinal_automata.errors import ResourceBudgetExceeded

c = Compiler(k=1)
c.compile("forall x. forall y. exists z. (x < z & y < z & exists u. u + x = z)")
for step in c.stats:
    print(f"{step.kind:8} {step.states:5} states {step.transitions:6} transitions  {step.formula}")
print("peak:", c.peak_states)

try:
    Compiler(k=2, max_states=40).compile("forall x. forall y. x + y = y + x")
except ResourceBudgetExceeded as e:
    print("stopped:", e)
