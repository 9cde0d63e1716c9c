"""π-exponentials in exact cyclotomic arithmetic.

Prints the tower π_0, π_1 for p = 2, expands the series of a small
co-monomial and checks that its logarithmic derivative is the connection.

    python3 demos/pi_exponential_series.py
"""

from swancond.covectors import CoMonomial
from swancond.kfield import KField
from swancond.parse import parse_k
from swancond.piexp import (connection_coeffs_exact, gauss_valuation, lift_comonomial, log_derivative_matches,
                            pi_exponential, pi_tower)
from swancond.witt import WittVector

tower = pi_tower(2, 1)
for j in range(2):
    print(f"pi_{j} = {tower[j].to_str()}   v_p = {tower[j].valuation()}   norm = {tower[j].norm()}")

K = KField(2, 1, 1)
cm = CoMonomial(1, 1, WittVector([parse_k(K, "u1"), parse_k(K, "1")], 2, K.zero()))
lift = lift_comonomial(cm)
series = pi_exponential(lift, 6)
for k, v in series.to_json().items():
    print(f"  {k:5} {v}")

for i in (0, 1):
    g = connection_coeffs_exact(lift, i, 8)
    vals = {d: str(gauss_valuation(c)) for d, c in sorted(g.items())}
    print(f"direction {i}: valuations {vals}; log-derivative check: {log_derivative_matches(lift, i, 8)}")
