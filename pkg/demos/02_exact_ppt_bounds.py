"""Exact PPT-restricted values against the certificate decay envelope.

Solves the trace-norm program for one to three grouped copies, checks the
monotone decrease, and compares with the closed-form decay bound that
takes over where exact solves become expensive.

Run:  python demos/02_exact_ppt_bounds.py
"""
import math

from qhide import (
    SolverConfig,
    decay_bound,
    f0,
    f1,
    helstrom_value,
    monotonicity_scan,
    two_copy_certificate,
    two_qubit_separable_ensemble,
)

theta = math.pi / 4
ensemble = two_qubit_separable_ensemble(theta)
certificate = two_copy_certificate(theta)
product = 4.0 * f0(theta) * f1(theta)

print(f"mixing angle      theta = pi/4 = {theta:.6f}")
print(f"decay ratio     4 f0 f1 = {product:.9f}")
print(f"unrestricted optimum    = {helstrom_value(ensemble):.6f} (orthogonal states)")
print()

config = SolverConfig(max_iterations=100000)
results = monotonicity_scan(ensemble, 3, config)

print(f"{'L':>3}  {'exact p_ppt':>14}  {'decay bound':>14}  {'iterations':>10}")
for copies, result in enumerate(results, start=1):
    envelope = decay_bound(ensemble, certificate, k=2, copies=copies)
    print(
        f"{copies:>3}  {result.p_ppt:14.9f}  {envelope:14.9f}  "
        f"{result.iterations:>10}"
    )

print()
print("Beyond three copies the exact solves grow as 4^L; the decay bound")
print("replaces them and converges geometrically to 1/2:")
print()
print(f"{'L':>3}  {'decay bound':>14}  {'excess over 1/2':>16}")
for copies in (5, 10, 50, 200, 1000, 5000):
    envelope = decay_bound(ensemble, certificate, k=2, copies=copies)
    print(f"{copies:>4}  {envelope:14.9f}  {envelope - 0.5:16.3e}")

print()
print("A PPT-restricted receiver pinned at 1/2 means any receiver limited to")
print("local operations and classical communication is pinned there too.")
