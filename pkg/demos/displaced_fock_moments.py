"""Displaced-number-state sums: transition probabilities and the third moment.

The third-order correction to the detection bounds needs the distribution of
the log-likelihood ratio, which lives on the joint photon statistics of a
thermal state before and after displacement.  This demo pokes at the pieces:
single transition probabilities, truncation control, and the certified
double sum.
"""

import math

from steinradar import (
    ThermalScenario,
    TruncationPolicy,
    spectral_oracle,
    thermal_closed_forms,
    third_moment,
    transition_prob,
    truncation_radius,
)

# |<k|D|l>|^2 at displacement energy x: for l = 0 this is a Poisson law.
x = 1.0
print("transition probabilities at x =", x)
for k in range(5):
    poisson = math.exp(-x) * x**k / math.factorial(k)
    print(f"  k={k}: P(k,0) = {transition_prob(k, 0, x):.10f}   Poisson {poisson:.10f}")

# Symmetry: the displacement matrix elements only depend on (min, |k-l|).
print("\nP(7, 3, 2.5) =", transition_prob(7, 3, 2.5))
print("P(3, 7, 2.5) =", transition_prob(3, 7, 2.5))

# Truncation indices grow with background and displacement; the policy's
# tail tolerance caps the neglected probability mass.
policy = TruncationPolicy(tail_tol=1e-10)
for nb, xx in [(1.0, 0.0), (1.0, 1.0), (600.0, 60.0), (600.0, 600.0)]:
    print(f"truncation_radius(nb={nb:6.0f}, x={xx:6.0f}) = "
          f"{truncation_radius(nb, xx, policy)}")

# The certified third moment: the captured-mass diagnostic makes truncation
# bugs loud instead of silent.
scenario = ThermalScenario(nb=600.0, eta=1.0, ns=600.0)
result = third_moment(scenario, policy)
print(f"\nT(nb=600, gamma=1) = {result.t:.9f}")
print(f"captured probability mass = {result.captured_mass:.15f}")

# The same joint distribution must reproduce D and V: a strong cross-check
# of the entire Laguerre-recurrence machinery against the closed forms.
closed = thermal_closed_forms(scenario)
oracle = spectral_oracle(scenario, policy)
print(f"\nD: spectral sum {oracle.d:.12f}  closed form {closed.d:.12f}")
print(f"V: spectral sum {oracle.v:.12f}  closed form {closed.v:.12f}")
print(f"T: spectral sum {oracle.t:.12f}  direct sum  {result.t:.12f}")
