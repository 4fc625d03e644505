"""File formats: S-box table files, spectrum exports, run manifests.

Table file: first line ``n=<int>``, then 2^n lines of hex values of the
canonical encoding, index-implicit.  Spectrum CSV: sparse ``a,b,count``
triples for nonzero entries.  Manifests carry every parameter needed to
reproduce the output bit-for-bit (no timestamps, by design).
"""

from __future__ import annotations

import json
import platform
from pathlib import Path

import numpy as np

from .analysis import SBoxTable, SpectrumTable


def parse_hex(s: str) -> int:
    return int(s, 16)


def write_table(path, t: SBoxTable):
    width = (t.n + 3) // 4
    lines = [f"n={t.n}"]
    lines.extend(f"{int(v):0{width}x}" for v in t.table)
    Path(path).write_text("\n".join(lines) + "\n")


def read_table(path) -> SBoxTable:
    lines = Path(path).read_text().split()
    if not lines or not lines[0].startswith("n="):
        raise ValueError(f"{path}: missing 'n=<int>' header")
    n = int(lines[0][2:])
    vals = [parse_hex(s) for s in lines[1:]]
    return SBoxTable(n, np.array(vals, dtype=np.int32))


def write_spectrum_csv(path, spec: SpectrumTable):
    """Sparse triples of the nonzero entries (or the sampled triples)."""
    rows = ["a,b,count"]
    if spec.table is not None:
        a_idx, b_idx = np.nonzero(spec.table)
        vals = spec.table[a_idx, b_idx]
        rows.extend(f"{a},{b},{v}" for a, b, v in zip(a_idx, b_idx, vals))
    elif spec.samples is not None:
        rows.extend(f"{a},{b},{c}" for a, b, c in spec.samples)
    Path(path).write_text("\n".join(rows) + "\n")


def write_summary_json(path, spec: SpectrumTable, extra: dict | None = None):
    d = spec.summary_dict()
    if extra:
        d.update(extra)
    Path(path).write_text(json.dumps(d, indent=2, sort_keys=True) + "\n")
    return d


def versions() -> dict:
    from . import __version__
    return {
        "sboxkit": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
    }


def write_manifest(out_path, command: str, params: dict):
    """Machine-readable record of a run, written beside its output."""
    manifest = {"command": command, "params": params, "versions": versions()}
    p = Path(str(out_path) + ".manifest.json")
    p.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return p
