#!/usr/bin/env python3
"""Regenerates the bundled n,k tables in data/.

Au follows the Drude-Lorentz parameterization of Rakic et al.,
Appl. Opt. 37, 5271 (1998). SiO2 uses a two-band (IR + UV) oscillator
model with the Hough-White (J. Colloid Interface Sci. 1980) strengths and
small phenomenological damping. Both are sampled on a log grid so the
solver's log-linear (n, k) interpolation reproduces them closely.

Usage: python3 tools/make_nk_tables.py [outdir]
"""
import cmath
import math
import sys
from pathlib import Path


def log_grid(lo, hi, per_decade=60):
    n = int(math.log10(hi / lo) * per_decade) + 1
    return [lo * (hi / lo) ** (i / (n - 1)) for i in range(n)]


def eps_au(w):
    wp = 9.03
    f0, g0 = 0.760, 0.053
    osc = [
        (0.024, 0.241, 0.415),
        (0.010, 0.345, 0.830),
        (0.071, 0.870, 2.969),
        (0.601, 2.494, 4.304),
        (4.384, 2.214, 13.32),
    ]
    eps = 1 - f0 * wp**2 / (w * (w + 1j * g0))
    for f, g, wj in osc:
        eps += f * wp**2 / ((wj**2 - w**2) - 1j * w * g)
    return eps


def eps_sio2(w):
    bands = [
        (0.829, 0.0571, 0.005),  # IR phonon band
        (1.098, 13.39, 0.4),     # UV electronic band
    ]
    eps = 1 + 0j
    for c, w0, g in bands:
        eps += c * w0**2 / (w0**2 - w**2 - 1j * g * w)
    return eps


def write_table(path, eps_fn, header):
    grid = log_grid(0.01, 100.0)
    with open(path, "w") as out:
        out.write(header)
        out.write("# columns: energy_eV n k\n")
        for w in grid:
            nk = cmath.sqrt(eps_fn(w))
            out.write(f"{w:.8e} {nk.real:.8e} {nk.imag:.8e}\n")
    print(f"wrote {path} ({len(grid)} rows)")


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    outdir.mkdir(parents=True, exist_ok=True)
    write_table(
        outdir / "au_nk.txt",
        eps_au,
        "# Au optical constants from the Drude-Lorentz fit of\n"
        "# Rakic, Djurisic, Elazar, Majewski, Appl. Opt. 37, 5271 (1998).\n",
    )
    write_table(
        outdir / "sio2_nk.txt",
        eps_sio2,
        "# SiO2 optical constants from a two-band oscillator model with the\n"
        "# Hough-White (1980) IR/UV strengths and small phenomenological damping.\n",
    )


if __name__ == "__main__":
    main()
