"""The differential side: valuation profiles, the radius of convergence and
the differential Swan conductor, compared with the arithmetic conductor.

    python3 demos/radius_profile.py [path.csv]
"""

import csv
import sys

from swancond.covectors import covector_from_exprs, minimal_lifting
from swancond.kfield import KField
from swancond.radius import compare_conductors, radius_at_zero, radius_function, rank_one_profile

K = KField(p=3, r=2)
c = minimal_lifting(covector_from_exprs(K, ["u1*t^-2 + u2*t^-1", "u1*u2*t^-2"]))
for cm in c.comonomials():
    prof = rank_one_profile(cm)
    print(f"co-monomial n={cm.n} m={cm.m} witt={[str(x) for x in cm.witt]}")
    for i, g in sorted(prof.directions.items()):
        cells = {j: (str(v), "exact" if ex else "bound") for j, (v, ex) in sorted(g.entries.items())}
        print(f"   direction {i}: {cells}")
    res = radius_at_zero(prof)
    print(f"   log T = {res.T.to_json()['pieces']}, sw_nabla = {res.sw_nabla}")

print("comparison:", compare_conductors(c).to_json())
T = radius_function(c)
if len(sys.argv) > 1:
    with open(sys.argv[1], "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "logT"])
        for x in T.sample_points(32):
            w.writerow([float(x), float(T(x))])
    print("samples written to", sys.argv[1])
