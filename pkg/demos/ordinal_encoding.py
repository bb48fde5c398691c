"""Ordinals as trees: print a few encodings and decode them back."""
from ordinal_automata import decode, encode, ord_parse
from ordinal_automata.codec import validity_automaton
from ordinal_automata.tree import to_sexpr

for k, text in [(0, "13"), (1, "w^3*5 + w*3 + 8"), (1, "w"), (2, "w^(w*2 + 1)*3 + w^w + 4")]:
    a = ord_parse(text)
    t = encode(a, k)
    print(f"k={k}  {text}")
    print(f"  tree ({t.size()} nodes, height {t.height()}): {to_sexpr(t)}")
    print(f"  valid: {validity_automaton(k).accepts(t)}, decodes to {decode(t, k)}")
