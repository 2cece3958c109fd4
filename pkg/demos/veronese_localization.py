"""Walk through the localization sum for the Veronese map P^1 -> P^2.

Each fixed point of P^1 contributes its image class divided by the Euler
class of its conormal space; the sum is a Laurent polynomial even though
the pieces are not.
"""

from k0genus2.ktproj import fixed_point_class, proj_presentation
from k0genus2.pushforward import FixedPoint, conormal_euler, pushforward_power_map

print("P^2 relation:", proj_presentation(2).relation)
for i in (0, 1):
    p = FixedPoint(i, 0)
    print(f"P_{i} -> Q_{p.image(2)}: class {fixed_point_class(2, p.image(2))}"
          f" over {conormal_euler(1, 0, p).numerator}")

for k in (0, 1):
    res = pushforward_power_map(2, 1, 2, k)
    print(f"pi_*(x^{k}) = {res.value}")
    print("  certificate:", res.certificate)
