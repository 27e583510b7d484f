#!/usr/bin/env python3
"""Render the reference tessellations as SVG figures.

Writes one figure per surface into the output directory: the plane pattern in
its natural chart, the sphere in orthographic and stereographic projection,
and the hyperbolic pattern in the unit-disc chart.
"""

import argparse
from pathlib import Path

from phyllo.generator import generate
from phyllo.render import render_svg
from phyllo.tessellation import tessellate

FIGURES = [
    ("plane_3000.svg", "plane", 3000, {}, None),
    ("sphere_9301_orthographic.svg", "sphere", 9301, {}, "orthographic"),
    ("sphere_9301_stereographic.svg", "sphere", 9301, {}, "stereographic"),
    ("hyperbolic_3000.svg", "hyperbolic", 3000, {"a": 0.025}, None),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="figures", help="output directory")
    parser.add_argument("--size", type=int, default=1200, help="image size in px")
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, geometry, n, kwargs, projection in FIGURES:
        tess = tessellate(generate(geometry, n, **kwargs))
        svg = render_svg(tess, projection=projection, size=args.size)
        path = out_dir / name
        path.write_text(svg)
        print(f"wrote {path} ({svg.count('<polygon')} cells)")


if __name__ == "__main__":
    main()
