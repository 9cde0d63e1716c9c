"""A short walk through the arithmetic side.

Start from an Artin-Schreier-Witt covector, reduce it to its minimal
lifting, read off the Swan conductor and the refined Swan conductor, and
watch a Frobenius disguise disappear.

    python3 demos/conductor_tour.py
"""

from swancond.covectors import covector_from_exprs, minimal_lifting, swan_conductor
from swancond.forms import bgr_membership, refined_swan
from swancond.kfield import KField

K = KField(p=2, r=2)

# (u1^2 t^-2) is the square of u1 t^-1, so it defines the same class.
for exprs in (["u1*t^-1"], ["u1^2*t^-2"], ["0", "u1*t^-2"], ["0", "u1^2*t^-2"], ["u1*t^-1 + u2*t^-3"]):
    c = minimal_lifting(covector_from_exprs(K, exprs))
    print(f"{str(exprs):28} sw = {swan_conductor(c):2}  minimal = {c.to_json()['minimal']}")

print()
c = minimal_lifting(covector_from_exprs(K, ["0", "u1*t^-2"]))
y = refined_swan(c)
print("refined Swan conductor of (0, u1) t^-2:", y.to_json(), "in BGr:", bgr_membership(y))

# adding F(g) - g never changes the class
g = covector_from_exprs(K, ["u2*t^-3", "u1*t^-1"])
f = covector_from_exprs(K, ["u1*t^-5"]) + g.frobenius_bar() - g
print("disguised covector coordinates:", [str(x) for x in f.coords])
print("its minimal lifting:", minimal_lifting(f).to_json())
