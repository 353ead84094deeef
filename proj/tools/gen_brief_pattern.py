#!/usr/bin/env python3
"""Regenerates src/brief_pattern.cpp.

The pattern is drawn once from a seeded isotropic Gaussian (sigma = 31/5)
and truncated to the radius-15 disc so that any rotation stays inside the
31x31 patch. The committed table is the source of truth; rerunning this
script must reproduce it byte for byte.
"""
import sys

import numpy as np

SEED = 20230905
PAIRS = 256
SIGMA = 31.0 / 5.0
RADIUS = 15


def draw_point(rng):
    while True:
        x, y = np.rint(rng.normal(0.0, SIGMA, size=2)).astype(int)
        if x * x + y * y <= RADIUS * RADIUS:
            return int(x), int(y)


def main(out):
    rng = np.random.default_rng(SEED)
    pairs = []
    while len(pairs) < PAIRS:
        a = draw_point(rng)
        b = draw_point(rng)
        if a != b:
            pairs.append(a + b)
    lines = [
        "// Generated by tools/gen_brief_pattern.py; do not edit.",
        '#include "facade/features.hpp"',
        "",
        "namespace facade {",
        "",
        "const std::array<BriefPair, kDescriptorBits> kBriefPattern = {{",
    ]
    for x1, y1, x2, y2 in pairs:
        lines.append(f"    {{{x1}, {y1}, {x2}, {y2}}},")
    lines += ["}};", "", "}  // namespace facade", ""]
    out.write("\n".join(lines))


if __name__ == "__main__":
    main(sys.stdout)
