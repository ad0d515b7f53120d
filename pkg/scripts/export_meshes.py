"""Write OBJ meshes of the built-in helicoids (and slice polylines as CSV)."""

import argparse
import math
from pathlib import Path

import numpy as np

from helifront import helicoid, io
from helifront.fixtures import EXAMPLES


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, default=Path("meshes"))
    p.add_argument("--grid", default="120x120", help="NuxNv")
    p.add_argument("--turns", type=float, default=1.0, help="v range in full turns")
    args = p.parse_args()

    nu, nv = (int(t) for t in args.grid.lower().split("x"))
    args.out.mkdir(parents=True, exist_ok=True)
    for name, ex in EXAMPLES.items():
        h = ex.helicoid()
        u = np.linspace(*h.domain, nu)
        v = np.linspace(0.0, 2 * math.pi * args.turns, nv)
        mesh = args.out / f"{name}.obj"
        with open(mesh, "w", newline="") as fh:
            io.write_obj(fh, io.grid_vertices(h, u, v), io.grid_faces(nu, nv), f"{name} lambda={h.lam}")
        s1, s2 = helicoid.slice_curve(h, u, "s")
        c1, c2 = helicoid.slice_curve(h, u, "c")
        with open(args.out / f"{name}_slice.csv", "w", newline="") as fh:
            io.write_csv(fh, ["u", "s1", "s2", "c1", "c2"], zip(u, s1, s2, c1, c2))
        print(f"wrote {mesh} ({nu * nv} vertices, {2 * (nu - 1) * (nv - 1)} triangles)")


if __name__ == "__main__":
    main()
