"""Finite sets of ordinals, decided through the coding X -> sum of 2^x."""
from ordinal_automata.syntax import size
from ordinal_automata.wmso import decide_wmso, find_witness_wmso, translate

least = "forall X. ((exists x. x in X) -> exists m. (m in X & forall y. (y in X -> m <= y)))"
print("every nonempty finite set has a least element:", decide_wmso(least, 1))
print("some finite set holds every ordinal:", decide_wmso("exists X. forall x. x in X", 1))
print("below w^2 some finite set contains a limit ordinal:",
      decide_wmso("exists X. exists x. x in X & x > 0 & !(exists y. s(y) = x)", 2))

f = "x in X & !(s(x) in X) & 0 < x"
w = find_witness_wmso(f, 1)
print(f"witness for {f!r}: x = {w['x']}, X = {{{', '.join(map(str, sorted(w['X'])))}}}")
g = translate(f, 1)
print(f"translated ({size(g)} nodes):", g)
