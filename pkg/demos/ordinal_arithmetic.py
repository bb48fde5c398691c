"""Absorption and non-commutativity, first by arithmetic, then by the decision procedure."""
from ordinal_automata import OMEGA, decide, find_witness, ord_parse

print("1 + w =", 1 + OMEGA)
print("w + 1 =", OMEGA + 1)
print("w*2 + w^2 =", ord_parse("w*2") + ord_parse("w^2"))

sentences = {
    "associativity": "forall x. forall y. forall z. (x + y) + z = x + (y + z)",
    "commutativity": "forall x. forall y. x + y = y + x",
    "left cancellation": "forall x. forall y. forall z. (x + y = x + z -> y = z)",
    "right cancellation": "forall x. forall y. forall z. (y + x = z + x -> y = z)",
    "0 is the only idempotent": "forall x. (x + x = x <-> x = 0)",
}
for name, s in sentences.items():
    print(f"{name:26} {decide(s, 1)}")

limit = "x > 0 & (forall y. y < x -> y + 1 < x)"
least = limit + " & (forall z. z < x -> !(z > 0 & (forall y. y < z -> y + 1 < z)))"
print("least limit ordinal:", find_witness(least, 1)["x"])
w = find_witness("x + w = w*2 & x > 0", 1)
print("an x > 0 with x + w = w*2:", w["x"])
