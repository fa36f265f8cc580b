"""Walkthrough: RAM neurons, discriminators and the fired-RAM response.

Training writes the tuple-addressed locations of a pattern into its class's
RAMs; a query fires every RAM whose addressed location was ever written.
A trained pattern therefore always fires all K RAMs, and each flipped bit
silences exactly one RAM.
"""

import tempfile
from pathlib import Path

import numpy as np

from wisardkit import WisardConfig, WisardModel

rng = np.random.default_rng(1)

L, N = 36, 4
config = WisardConfig(n=N, seed=7, decision_mode="threshold", threshold_fraction=0.5)
model = WisardModel.create(L, config)
K = model.mapping.k
print(f"retina of {L} bits, {K} RAMs with {N} inputs each")
print(f"first three tuples: {model.mapping.tuples[:3].tolist()}")

print()
print("== saturation: a trained pattern fires every RAM ==")
positive = rng.integers(0, 2, L).astype(np.uint8)
negative = 1 - positive
model.train(positive, 1)
model.train(negative, 0)
print(f"  response to the trained positive: {model.response(positive).fired}")
print(f"  response to the trained negative: {model.response(negative).fired}")

print()
print("== one flipped bit silences exactly one RAM ==")
for flips in (1, 2, 5):
    probe = positive.copy()
    for row in model.mapping.tuples[:flips]:
        probe[row[0]] ^= 1
    fired = model.response(probe).count(1)
    print(f"  {flips} flips in {flips} distinct tuples -> fired {fired} of {K}")

print()
print("== the threshold decision ==")
print(f"  cutoff: fired must exceed {model.decision_cutoff()} of {K}")
for name, probe in (("trained positive", positive), ("trained negative", negative)):
    decision = model.classify(probe)
    print(f"  {name}: fired {decision.fired} -> label {decision.label}")

print()
print("== models survive a save/load roundtrip bit-for-bit ==")
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "demo.wsd"
    model.save(path)
    clone = WisardModel.load(path)
    print(f"  file is {path.stat().st_size} bytes")
    print(f"  reloaded model repeats every decision: "
          f"{all(clone.classify(p).label == model.classify(p).label for p in (positive, negative))}")
    print(f"  re-saving is byte-identical: {clone.to_text() == model.to_text()}")
