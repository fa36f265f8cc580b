"""Walkthrough: turning real-valued feature vectors into WiSARD retinas.

The classifier consumes flat binary patterns.  Real-valued features are
binarized against their own arithmetic mean (strictly greater -> 1) and
then zero-padded so the tuple size divides the retina length.
"""

import numpy as np

from wisardkit import binarize_mean_threshold, pad_to_multiple

rng = np.random.default_rng(0)

print("== mean-threshold binarization ==")
for values in ([1.0, 2.0, 3.0], [5.0, 5.0, 5.0, 5.0], [1.0, 1.0, 1.0, 5.0]):
    bits = binarize_mean_threshold(values)
    print(f"  {values}  (mean {np.mean(values):.2f})  ->  {bits.tolist()}")

print()
print("== the rule ignores affine rescaling ==")
v = rng.standard_normal(8)
for a, b in ((1.0, 0.0), (3.5, -2.0), (0.01, 4.0)):
    bits = binarize_mean_threshold(a * v + b)
    print(f"  a={a:<5} b={b:<5} ->  {bits.tolist()}")
print("  identical rows: the encoding only sees each value's relation to the mean")

print()
print("== padding to a multiple of the tuple size ==")
features = rng.standard_normal(2048)
bits = binarize_mean_threshold(features)
for n in range(9, 15):
    padded = pad_to_multiple(bits, n)
    print(f"  n={n:>2}: {bits.size} -> {padded.size} bits  ({padded.size // n} RAMs of {n} inputs)")
print("  trailing bits are constant zeros, shared by every sample")
