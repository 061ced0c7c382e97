"""Write the S3 spectrum table for several curvature radii.

    python3 scripts/export_spectrum.py --jmax 4 --nmax 3 --rho 1 2 --outdir spectra
"""

import argparse
import pathlib
import sys
from dataclasses import dataclass, field

from curved_maxwell.cli import SPECTRUM_COLUMNS, render
from curved_maxwell.modes import spectrum


@dataclass
class ExportConfig:
    jmax: int = 4
    nmax: int = 3
    rhos: list[float] = field(default_factory=lambda: [1.0])
    outdir: str = "spectra"
    fmt: str = "csv"


def export(cfg: ExportConfig) -> list[pathlib.Path]:
    out = pathlib.Path(cfg.outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for rho in cfg.rhos:
        table = spectrum(cfg.jmax, cfg.nmax, rho)
        path = out / f"spectrum_rho{rho:g}.{cfg.fmt}"
        path.write_text(render(table.records(), SPECTRUM_COLUMNS, cfg.fmt))
        paths.append(path)
    return paths


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jmax", type=int, default=4)
    ap.add_argument("--nmax", type=int, default=3)
    ap.add_argument("--rho", type=float, nargs="+", default=[1.0])
    ap.add_argument("--outdir", default="spectra")
    ap.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    args = ap.parse_args(argv)
    for p in export(ExportConfig(args.jmax, args.nmax, args.rho, args.outdir, args.fmt)):
        print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
