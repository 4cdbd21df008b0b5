#!/usr/bin/env python3
"""Write the negativity surfaces over (p_n, p') for all three families.

Each CSV holds the rectangular samples; a companion .locus.csv holds the
per-column death points.  Feed either into any plotting tool.
"""

import argparse
import pathlib

from esdlab import io
from esdlab.channels import default_model
from esdlab.dynamics import sweep_surface
from esdlab.states import FamilyId, StateFamily

FAMILIES = {
    "state1": StateFamily(FamilyId.STATE1, 0.25),
    "state2": StateFamily(FamilyId.STATE2, 0.5),
    "twoqutrit": StateFamily(FamilyId.TWO_QUTRIT, 0.25),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=41, help="samples per axis")
    parser.add_argument("--outdir", default="surfaces", help="output directory")
    args = parser.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    for name, family in FAMILIES.items():
        rows, locus = sweep_surface(family, default_model(family.dims), grid=args.grid)
        surface_path = outdir / f"{name}_surface.csv"
        surface_path.write_text(
            io.csv_lines(
                ["p_n", "p_prime", "negativity"],
                [[io.round9(a), io.round9(b), io.round9(c)] for a, b, c in rows],
            )
        )
        locus_path = outdir / f"{name}_surface.locus.csv"
        locus_path.write_text(
            io.csv_lines(
                ["p_n", "p_prime_death"],
                [[io.round9(pn), io.round9(d)] for pn, d in locus.samples],
            )
        )
        print(f"wrote {surface_path} and {locus_path}")


if __name__ == "__main__":
    main()
