"""Relative-frequency feature profiles shared by the n-gram modules.

A profile maps feature keys (character n-grams or "TAG1|TAG2|TAG3"
triples) to relative frequencies. Frequencies are computed before top-k
truncation and are not renormalized afterwards, so each kept frequency
still means "fraction of all units of that family in the corpus".
For char-ngram profiles the di-gram and tri-gram families are normalized
separately (each family sums to 1 before truncation); total_units is the
unit count across families.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

CHAR_KIND = "char-ngram"
POS_KIND = "pos-trigram"


@dataclass(frozen=True)
class FeatureProfile:
    language_code: str
    kind: str
    freqs: dict[str, float]
    total_units: int

    def __post_init__(self):
        if self.kind not in (CHAR_KIND, POS_KIND):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        for key, freq in self.freqs.items():
            if freq <= 0.0:
                raise ValueError(f"feature {key!r} has non-positive frequency {freq}")

    def __len__(self) -> int:
        return len(self.freqs)


def top_k_frequencies(counts: dict[str, int], total: int, k: int) -> dict[str, float]:
    """Keep the k most frequent features as relative frequencies.

    Ties break lexicographically ascending on the key, so the selection is
    deterministic; the returned dict iterates in (frequency desc, key asc)
    order, which is also the serialization order.
    """
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return {key: count / total for key, count in ranked[:k]}


def sidecar_path(tsv_path) -> Path:
    return Path(tsv_path).with_suffix(".json")


def save_profile(profile: FeatureProfile, tsv_path) -> None:
    """Write the TSV rows plus the JSON metadata sidecar.

    Rows are sorted frequency descending then key ascending; floats use
    repr so a rerun on identical input is byte-identical.
    """
    tsv_path = Path(tsv_path)
    rows = sorted(profile.freqs.items(), key=lambda item: (-item[1], item[0]))
    lines = ["key\tfrequency"]
    lines.extend(f"{key}\t{freq!r}" for key, freq in rows)
    tsv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    meta = {
        "language_code": profile.language_code,
        "kind": profile.kind,
        "total_units": profile.total_units,
    }
    sidecar_path(tsv_path).write_text(
        json.dumps(meta, sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )


def load_profile(tsv_path) -> FeatureProfile:
    tsv_path = Path(tsv_path)
    meta = json.loads(sidecar_path(tsv_path).read_text(encoding="utf-8"))
    freqs: dict[str, float] = {}
    with open(tsv_path, encoding="utf-8") as fh:
        header = fh.readline()
        if header.rstrip("\n") != "key\tfrequency":
            raise ValueError(f"{tsv_path}: unexpected header {header!r}")
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            key, _, value = line.partition("\t")
            freqs[key] = float(value)
    return FeatureProfile(
        language_code=meta["language_code"],
        kind=meta["kind"],
        freqs=freqs,
        total_units=meta["total_units"],
    )
