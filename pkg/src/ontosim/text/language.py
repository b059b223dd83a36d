"""Character n-gram language identification.

Each language gets a profile of 1..3-gram counts (capped at the most frequent
entries); an input text is scored by cosine similarity between its own n-gram
vector and every profile. Deterministic: ties break on the language code, so
profile registration order never matters.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ModelError, UndetectableTextError, UnknownLanguageError
from ..snapshots import read_snapshot, write_snapshot

SNAPSHOT_KIND = "language-profiles"

DEFAULT_MAX_ENTRIES = 10_000
DEFAULT_FLOOR = 0.3


def _ngram_counts(text: str, n_min: int, n_max: int) -> Counter:
    normalized = " ".join(text.casefold().split())
    counts: Counter = Counter()
    for n in range(n_min, n_max + 1):
        for i in range(len(normalized) - n + 1):
            counts[normalized[i : i + n]] += 1
    return counts


def _cosine(a: Counter, b: dict[str, float]) -> float:
    if not a or not b:
        return 0.0
    dot = sum(count * b[gram] for gram, count in a.items() if gram in b)
    norm_a = math.sqrt(sum(c * c for c in a.values()))
    norm_b = math.sqrt(sum(w * w for w in b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return dot / (norm_a * norm_b)


@dataclass
class LanguageProfiles:
    profiles: dict[str, dict[str, float]] = field(default_factory=dict)
    n_min: int = 1
    n_max: int = 3
    max_entries: int = DEFAULT_MAX_ENTRIES

    def languages(self) -> list[str]:
        return sorted(self.profiles)

    def save(self, path: str | Path) -> None:
        payload = {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "max_entries": self.max_entries,
            "profiles": self.profiles,
        }
        write_snapshot(path, SNAPSHOT_KIND, payload)

    @classmethod
    def load(cls, path: str | Path) -> "LanguageProfiles":
        payload = read_snapshot(path, SNAPSHOT_KIND)
        return cls(
            profiles=payload["profiles"],
            n_min=payload["n_min"],
            n_max=payload["n_max"],
            max_entries=payload["max_entries"],
        )

    def export_text(self, path: str | Path) -> None:
        """Plain-text TSV export: language, n-gram, weight."""
        with open(path, "w", encoding="utf-8") as fh:
            for lang in sorted(self.profiles):
                profile = self.profiles[lang]
                for gram in sorted(profile):
                    fh.write(f"{lang}\t{gram}\t{profile[gram]:.10g}\n")


def train_profiles(
    samples: dict[str, str],
    n_min: int = 1,
    n_max: int = 3,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> LanguageProfiles:
    """Build profiles from one monolingual sample text per language."""
    if not samples:
        raise ModelError("no training samples for language profiles")
    profiles: dict[str, dict[str, float]] = {}
    for lang, text in samples.items():
        counts = _ngram_counts(text, n_min, n_max)
        if not counts:
            raise ModelError(f"empty training sample for language {lang!r}")
        top = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:max_entries]
        profiles[lang] = {gram: float(count) for gram, count in top}
    return LanguageProfiles(
        profiles=profiles, n_min=n_min, n_max=n_max, max_entries=max_entries
    )


def detect_language(
    text: str, profiles: LanguageProfiles, floor: float = DEFAULT_FLOOR
) -> str:
    """Most similar profile language; errors rather than guessing blindly."""
    if profiles is None or not profiles.profiles:
        raise ModelError("language profiles are not trained")
    if not text.strip():
        raise UndetectableTextError("cannot detect language of empty text")
    counts = _ngram_counts(text, profiles.n_min, profiles.n_max)
    scored = sorted(
        ((_cosine(counts, profile), lang) for lang, profile in profiles.profiles.items()),
        key=lambda item: (-item[0], item[1]),
    )
    best_score, best_lang = scored[0]
    if best_score < floor:
        raise UnknownLanguageError(
            f"no profile similarity above {floor} (best {best_lang!r} at {best_score:.4f})"
        )
    return best_lang
