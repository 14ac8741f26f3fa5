"""Deterministic Bloom-level suggestion from a cue-verb lexicon.

The lexicon is a data file (``level<TAB>cue`` lines) so a learned backend
could replace this heuristic behind the same operation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..vocab import BLOOM_IRIS, BLOOM_ORDER

_TOKEN_RE = re.compile(r"[a-z0-9]+")


@dataclass(frozen=True)
class BloomSuggestion:
    level: str  # vocabulary IRI
    score: float  # in [0, 1]
    matched_cues: tuple[str, ...]


def load_lexicon(path: Path | None = None) -> dict[str, list[str]]:
    """level-name -> cue list. Unknown levels in the file are rejected."""
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
    else:
        text = resources.files("easlit.data").joinpath("bloom_cues.tsv").read_text()
    lexicon: dict[str, list[str]] = {level: [] for level in BLOOM_ORDER}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        try:
            level, cue = line.split("\t")
        except ValueError:
            raise ValueError(f"lexicon line {lineno}: expected 'level<TAB>cue'")
        if level not in lexicon:
            raise ValueError(f"lexicon line {lineno}: unknown level {level!r}")
        lexicon[level].append(cue.strip().lower())
    return lexicon


def suggest_bloom(stem: str, lexicon: dict[str, list[str]]) -> list[BloomSuggestion]:
    """Ranked suggestions; score = matched cues / total tokens, deterministic."""
    tokens = _TOKEN_RE.findall(stem.lower())
    if not tokens:
        return []
    suggestions = []
    for rank, level in enumerate(BLOOM_ORDER):
        matched = sorted({
            cue for cue in lexicon.get(level, ())
            if any(tok == cue or tok.startswith(cue) for tok in tokens)
        })
        if not matched:
            continue
        score = min(1.0, len(matched) / len(tokens))
        suggestions.append((score, rank, BloomSuggestion(
            BLOOM_IRIS[level], score, tuple(matched))))
    suggestions.sort(key=lambda entry: (-entry[0], entry[1]))
    return [s for _, _, s in suggestions]
