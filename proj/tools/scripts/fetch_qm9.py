#!/usr/bin/env python3
# Copyright 2026 The MolGX Authors
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds data/datasets/qm9_600.csv from the public QM9 table.

Stereo marks are dropped, then a seeded sample of rows is written as
"smiles,E_HOMO [Hartree]".
"""

import argparse
import csv
import io
import pathlib
import random
import re
import sys
import urllib.request

DEFAULT_URL = "https://deepchemdata.s3-us-west-1.amazonaws.com/datasets/qm9.csv"
STEREO = re.compile(r"[@/\\]")


def read_rows(args):
    if args.input:
        text = pathlib.Path(args.input).read_text()
    else:
        with urllib.request.urlopen(args.url, timeout=120) as r:
            text = r.read().decode()
    reader = csv.DictReader(io.StringIO(text))
    smiles_col = next(c for c in reader.fieldnames if c.lower() == "smiles")
    homo_col = next(c for c in reader.fieldnames if c.lower() == "homo")
    rows = []
    for row in reader:
        if not row.get(smiles_col) or not row.get(homo_col):
            continue
        smi = STEREO.sub("", row[smiles_col]).replace("[C]", "C").replace("[CH]", "C")
        if "." in smi or "+" in smi or "-]" in smi:
            continue
        rows.append((smi, float(row[homo_col])))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--input", help="local copy of qm9.csv instead of downloading")
    ap.add_argument("--url", default=DEFAULT_URL)
    ap.add_argument("--rows", type=int, default=600)
    ap.add_argument("--seed", type=int, default=0)
    default_out = pathlib.Path(__file__).resolve().parents[2] / "data/datasets/qm9_600.csv"
    ap.add_argument("--out", default=str(default_out))
    args = ap.parse_args()

    try:
        rows = read_rows(args)
    except OSError as e:
        print(f"fetch_qm9: cannot read QM9 table: {e}", file=sys.stderr)
        return 1
    if len(rows) < args.rows:
        print(f"fetch_qm9: only {len(rows)} usable rows", file=sys.stderr)
        return 1
    sample = random.Random(args.seed).sample(rows, args.rows)
    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["smiles", "E_HOMO [Hartree]"])
        for smi, homo in sample:
            w.writerow([smi, f"{homo:.6f}"])
    print(f"wrote {len(sample)} rows to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
