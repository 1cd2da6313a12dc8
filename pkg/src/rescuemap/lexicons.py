"""Lexicon configuration for the rule-based rescue-request classifier.

All phrase lists ship as editable data files under ``rescuemap/data/`` so the
classifier stays auditable: one entry per line, UTF-8, lines starting with
``#`` are comments. The region/disaster pair file is tab-separated.
"""
from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping

NEGATIVE_FEATURES = ("status_update", "offer_help", "news_report", "political", "ads")

_DATA_FILES = {
    "help_keywords": "help_keywords.txt",
    "disaster_names": "disaster_names.txt",
    "region_disaster_pairs": "region_disaster_pairs.tsv",
    "situation_words": "situation_words.txt",
    "status_update": "negative_status_update.txt",
    "offer_help": "negative_offer_help.txt",
    "news_report": "negative_news_report.txt",
    "political": "negative_political.txt",
    "ads": "negative_ads.txt",
    "spanish_help": "spanish_help_keywords.txt",
    "spanish_situation": "spanish_situation_words.txt",
}


class LexiconError(ValueError):
    """Raised when a lexicon file cannot be parsed."""


def _read_lines(text: str) -> list[str]:
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entries.append(line)
    return entries


def load_phrase_file(path: str | Path) -> tuple[str, ...]:
    """Read a one-entry-per-line phrase file."""
    return tuple(_read_lines(Path(path).read_text(encoding="utf-8")))


def load_pairs_file(path: str | Path) -> tuple[tuple[str, str], ...]:
    """Read a tab-separated (region phrase, disaster word) file."""
    return _parse_pairs(Path(path).read_text(encoding="utf-8"), str(path))


def _parse_pairs(text: str, source: str) -> tuple[tuple[str, str], ...]:
    pairs = []
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        cols = [c.strip() for c in stripped.split("\t")]
        if len(cols) != 2 or not all(cols):
            raise LexiconError(f"{source}:{i}: expected 'region<TAB>disaster word'")
        pairs.append((cols[0], cols[1]))
    return tuple(pairs)


def _packaged(name: str) -> str:
    return (
        importlib.resources.files("rescuemap.data")
        .joinpath(_DATA_FILES[name])
        .read_text(encoding="utf-8")
    )


def load_street_suffixes() -> frozenset[str]:
    """The shipped street-suffix lexicon (uppercased entries)."""
    text = importlib.resources.files("rescuemap.data").joinpath("street_suffixes.txt")
    return frozenset(s.upper() for s in _read_lines(text.read_text(encoding="utf-8")))


@dataclass(frozen=True)
class LexiconConfig:
    """The phrase lists driving every text feature detector.

    ``spanish_enabled`` folds the Spanish overlay into ``help_keywords`` and
    ``situation_words``; detectors never consult the flag directly.
    """

    help_keywords: tuple[str, ...]
    disaster_names: tuple[str, ...]
    region_disaster_pairs: tuple[tuple[str, str], ...]
    situation_words: tuple[str, ...]
    negative_lexicons: Mapping[str, tuple[str, ...]]
    spanish_enabled: bool = False

    def __post_init__(self) -> None:
        missing = [k for k in NEGATIVE_FEATURES if k not in self.negative_lexicons]
        if missing:
            raise LexiconError(f"negative_lexicons missing entries for: {missing}")

    def cache_key(self) -> tuple:
        """Hashable identity used to cache compiled pattern sets."""
        return (
            self.help_keywords,
            self.disaster_names,
            self.region_disaster_pairs,
            self.situation_words,
            tuple((k, tuple(self.negative_lexicons[k])) for k in NEGATIVE_FEATURES),
        )


def default_lexicon(spanish: bool = False) -> LexiconConfig:
    """The lexicon shipped with the package."""
    help_keywords = _read_lines(_packaged("help_keywords"))
    situation = _read_lines(_packaged("situation_words"))
    if spanish:
        help_keywords += _read_lines(_packaged("spanish_help"))
        situation += _read_lines(_packaged("spanish_situation"))
    return LexiconConfig(
        help_keywords=tuple(help_keywords),
        disaster_names=tuple(_read_lines(_packaged("disaster_names"))),
        region_disaster_pairs=_parse_pairs(
            _packaged("region_disaster_pairs"), _DATA_FILES["region_disaster_pairs"]
        ),
        situation_words=tuple(situation),
        negative_lexicons={k: tuple(_read_lines(_packaged(k))) for k in NEGATIVE_FEATURES},
        spanish_enabled=spanish,
    )


def lexicon_from_dir(directory: str | Path, spanish: bool = False) -> LexiconConfig:
    """Build a lexicon from a directory of override files.

    Any file named like the packaged ones (``help_keywords.txt`` etc.)
    replaces the shipped list; everything else keeps its default.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise LexiconError(f"lexicon directory not found: {directory}")
    base = default_lexicon(spanish=spanish)

    def maybe(name: str) -> tuple[str, ...] | None:
        p = directory / _DATA_FILES[name]
        return load_phrase_file(p) if p.is_file() else None

    negatives = dict(base.negative_lexicons)
    for feature in NEGATIVE_FEATURES:
        override = maybe(feature)
        if override is not None:
            negatives[feature] = override

    pairs_path = directory / _DATA_FILES["region_disaster_pairs"]
    help_override = maybe("help_keywords")
    situation_override = maybe("situation_words")
    if spanish:
        spanish_help = maybe("spanish_help")
        spanish_situation = maybe("spanish_situation")
        if help_override is not None and spanish_help is not None:
            help_override += spanish_help
        if situation_override is not None and spanish_situation is not None:
            situation_override += spanish_situation
    names_override = maybe("disaster_names")
    return replace(
        base,
        help_keywords=help_override if help_override is not None else base.help_keywords,
        disaster_names=names_override if names_override is not None else base.disaster_names,
        region_disaster_pairs=(
            load_pairs_file(pairs_path) if pairs_path.is_file() else base.region_disaster_pairs
        ),
        situation_words=(
            situation_override if situation_override is not None else base.situation_words
        ),
        negative_lexicons=negatives,
    )
