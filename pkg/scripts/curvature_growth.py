#!/usr/bin/env python3
"""Print the curvature spectrum of a potential and watch it grow.

For a real-valued potential g the curvature of the coordinate direction
pair multiplies the basis section phi_j by -(j+1) * laplacian(g) / 2, so
wherever the laplacian is nonzero the operator norms grow linearly in j
and no uniform bound exists.  This script tabulates |eigenvalue_j(s0)| for
a few built-in potentials.

    python scripts/curvature_growth.py [--potential NAME] [--j-max N] [--point RE IM]
"""

import argparse

from hilbertfield import Connection, laplacian, S, SBAR

POTENTIALS = {
    "modulus-squared": S * SBAR,
    "modulus-fourth": (S * SBAR) ** 2,
    "harmonic": S**2 + SBAR**2,
}


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--potential", choices=sorted(POTENTIALS), default="modulus-squared")
    parser.add_argument("--j-max", type=int, default=12)
    parser.add_argument("--point", type=float, nargs=2, default=(1.0, 0.0), metavar=("RE", "IM"))
    args = parser.parse_args(argv)

    g = POTENTIALS[args.potential]
    point = complex(*args.point)
    conn = Connection.from_potential(g)
    lap = laplacian(g)
    print(f"potential g = {g}")
    print(f"laplacian(g) = {lap}, value at {point}: {lap.evaluate(point):.6g}")
    print(f"{'j':>4}  {'eigenvalue':<24}  |eigenvalue({point})|")
    for j in range(args.j_max + 1):
        eigen = conn.curvature_eigenvalue(j)
        print(f"{j:>4}  {str(eigen):<24}  {abs(eigen.evaluate(point)):.6g}")


if __name__ == "__main__":
    run()
