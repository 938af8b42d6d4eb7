"""Best-effort fetcher for public benchmark datasets in the format the CLI
reads (numeric features, +-1 label in the last column).

Network access is environment-dependent; the committed synthetic datasets
under data/ are the reproducible path. Each fetched dataset is converted to
label-last CSV with labels mapped to +-1.
"""

import csv
import os
import sys
import urllib.request

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "data")

SOURCES = {
    # name: (url, label column in the source, {raw label: +-1}, delimiter)
    "australian": (
        "https://archive.ics.uci.edu/ml/machine-learning-databases/statlog/australian/australian.dat",
        14, {"0": -1, "1": 1}, " "),
    "heart": (
        "https://archive.ics.uci.edu/ml/machine-learning-databases/statlog/heart/heart.dat",
        13, {"1": -1, "2": 1}, " "),
    "ionosphere": (
        "https://archive.ics.uci.edu/ml/machine-learning-databases/ionosphere/ionosphere.data",
        34, {"b": -1, "g": 1}, ","),
}


def fetch(name):
    url, label_col, label_map, delim = SOURCES[name]
    print(f"fetching {name} from {url}")
    with urllib.request.urlopen(url, timeout=30) as resp:
        text = resp.read().decode("utf-8")
    rows = []
    for line in text.splitlines():
        parts = [p for p in line.strip().split(delim) if p]
        if not parts:
            continue
        label = label_map[parts[label_col]]
        features = [parts[i] for i in range(len(parts)) if i != label_col]
        rows.append(features + [str(label)])
    path = os.path.join(OUT, f"{name}.csv")
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def main():
    names = sys.argv[1:] or list(SOURCES)
    os.makedirs(OUT, exist_ok=True)
    failures = []
    for name in names:
        try:
            fetch(name)
        except Exception as exc:
            failures.append(name)
            print(f"FAILED {name}: {exc}")
    if failures:
        print(f"could not fetch: {', '.join(failures)} (offline environment?)")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
