#!/usr/bin/env python3
"""Download the reference datasets used by acceptance criterion 7.

Writes diabetes.libsvm, german.libsvm, and splice.libsvm (train and test
parts concatenated) into the data/ directory next to the repository root,
or into --out. Requires network access to the LIBSVM dataset mirror.
"""

import argparse
import sys
import urllib.request
from pathlib import Path

BASE = "https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets/binary"

DATASETS = {
    "diabetes.libsvm": ["diabetes"],
    "german.libsvm": ["german.numer"],
    "splice.libsvm": ["splice", "splice.t"],
}


def fetch(url: str) -> bytes:
    print(f"  fetching {url}")
    with urllib.request.urlopen(url, timeout=60) as response:
        return response.read()


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    default_out = Path(__file__).resolve().parent.parent / "data"
    parser.add_argument("--out", type=Path, default=default_out,
                        help=f"output directory (default: {default_out})")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    failures = 0
    for name, parts in DATASETS.items():
        target = args.out / name
        if target.exists():
            print(f"{name}: already present, skipping")
            continue
        print(f"{name}:")
        try:
            blobs = [fetch(f"{BASE}/{part}") for part in parts]
        except OSError as err:
            print(f"  failed: {err}", file=sys.stderr)
            failures += 1
            continue
        joined = b"".join(blob if blob.endswith(b"\n") else blob + b"\n" for blob in blobs)
        target.write_bytes(joined)
        print(f"  wrote {target} ({len(joined)} bytes)")

    if failures:
        print(f"{failures} dataset(s) could not be downloaded", file=sys.stderr)
        return 1
    print("done")
    return 0


if __name__ == "__main__":
    sys.exit(main())
