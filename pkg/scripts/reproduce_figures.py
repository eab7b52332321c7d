"""Run every preset and write CSV + metadata, plus a table of asymptotic values.

    python3 scripts/reproduce_figures.py --out runs/figures --engine exact
"""
import argparse
import time

from qparliament.presets import list_presets
from qparliament.runner import ENGINES, RunManifest, run


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="runs/figures")
    p.add_argument("--engine", choices=ENGINES[:2], default="rk4")
    p.add_argument("--only", default="", help="comma-separated name prefixes, e.g. fig3,fig4")
    args = p.parse_args()
    prefixes = tuple(filter(None, args.only.split(",")))

    print(f"{'preset':18s} {'mean_yes (last 10%)':34s} {'entropy':>8s} {'purity':>8s} {'secs':>6s}")
    for preset in list_presets():
        if prefixes and not preset.name.startswith(prefixes):
            continue
        start = time.perf_counter()
        series, _, _ = run(RunManifest(preset.name, args.engine, preset.config, args.out))
        yes, s, pur = series.asymptotic()
        cells = " ".join(f"{v:.4f}" for v in yes)
        print(f"{preset.name:18s} {cells:34s} {s:8.4f} {pur:8.4f} {time.perf_counter() - start:6.2f}")


if __name__ == "__main__":
    main()
