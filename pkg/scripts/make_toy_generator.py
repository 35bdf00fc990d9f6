"""Regenerate tests/fixtures/toy_generator.json.

Small deterministic MLP (2 -> 16 -> 16 -> 3, softplus/softplus/identity)
with weights drawn from a fixed seed.  The file is committed; rerun this
only if the schema changes.
"""

import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from geopaths.metrics import MLPGenerator, save_generator_json

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "toy_generator.json"


def main():
    rng = np.random.default_rng(42)
    dims = [(16, 2, "softplus"), (16, 16, "softplus"), (3, 16, "identity")]
    layers = []
    for rows, cols, act in dims:
        w = rng.normal(0.0, 1.0 / np.sqrt(cols), size=(rows, cols))
        b = rng.normal(0.0, 0.1, size=rows)
        layers.append((w, b, act))
    gen = MLPGenerator(layers)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    save_generator_json(OUT, gen)
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
