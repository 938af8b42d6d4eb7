"""Regenerate the committed synthetic CSV datasets under data/.

Each generator is fully seeded, so rerunning this script reproduces the
files byte for byte.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from quadboost import synth

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")

GENERATORS = [
    (synth.step_rule, "steps.csv"),
    (synth.pulse_rule, "pulse.csv"),
    (synth.band_rule, "band.csv"),
]


def main():
    os.makedirs(DATA, exist_ok=True)
    for gen, name in GENERATORS:
        ds = gen()
        path = os.path.join(DATA, name)
        synth.dataset_to_csv(ds, path)
        print(f"{path}: {ds.m} rows x {ds.attribute_count} attributes")


if __name__ == "__main__":
    main()
