#!/usr/bin/env python3
"""Fetch the UCI benchmark datasets into data/ as plain CSV.

Needs network access to archive.ics.uci.edu. The Concrete workbook is
converted from .xls, which requires pandas with xlrd; the Airfoil table is
plain text. On failure, see datasets.md for the expected layouts and do the
conversion by hand.
"""

import io
import sys
import urllib.request
import zipfile
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

CONCRETE_URL = "https://archive.ics.uci.edu/static/public/165/concrete+compressive+strength.zip"
AIRFOIL_URL = "https://archive.ics.uci.edu/static/public/291/airfoil+self+noise.zip"

CONCRETE_COLUMNS = [
    "cement", "blast_furnace_slag", "fly_ash", "water", "superplasticizer",
    "coarse_aggregate", "fine_aggregate", "age", "strength",
]
AIRFOIL_COLUMNS = [
    "frequency", "angle_of_attack", "chord_length", "free_stream_velocity",
    "suction_side_thickness", "sound_pressure_db",
]


def download(url: str) -> bytes:
    print(f"downloading {url}")
    with urllib.request.urlopen(url, timeout=60) as resp:
        return resp.read()


def fetch_concrete() -> None:
    import pandas as pd

    payload = download(CONCRETE_URL)
    with zipfile.ZipFile(io.BytesIO(payload)) as zf:
        name = next(n for n in zf.namelist() if n.lower().endswith(".xls"))
        frame = pd.read_excel(io.BytesIO(zf.read(name)))
    if frame.shape != (1030, 9):
        raise RuntimeError(f"unexpected Concrete shape {frame.shape}, wanted (1030, 9)")
    frame.columns = CONCRETE_COLUMNS
    out = DATA_DIR / "concrete.csv"
    frame.to_csv(out, index=False)
    print(f"wrote {out} ({len(frame)} rows)")


def fetch_airfoil() -> None:
    payload = download(AIRFOIL_URL)
    with zipfile.ZipFile(io.BytesIO(payload)) as zf:
        name = next(n for n in zf.namelist() if n.lower().endswith(".dat"))
        raw = zf.read(name).decode("utf-8")
    rows = [line.split() for line in raw.splitlines() if line.strip()]
    if len(rows) != 1503 or any(len(r) != 6 for r in rows):
        raise RuntimeError(f"unexpected Airfoil table: {len(rows)} rows")
    out = DATA_DIR / "airfoil.csv"
    with open(out, "w") as fh:
        fh.write(",".join(AIRFOIL_COLUMNS) + "\n")
        for r in rows:
            fh.write(",".join(r) + "\n")
    print(f"wrote {out} ({len(rows)} rows)")


def main() -> int:
    DATA_DIR.mkdir(exist_ok=True)
    failures = 0
    for fetch in (fetch_concrete, fetch_airfoil):
        try:
            fetch()
        except Exception as exc:  # noqa: BLE001 - report and continue
            failures += 1
            print(f"error: {fetch.__name__}: {exc}", file=sys.stderr)
    if failures:
        print("some downloads failed; see datasets.md for manual preparation",
              file=sys.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
