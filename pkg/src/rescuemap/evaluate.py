"""Evaluation harness: confusion matrix and derived metrics over a labelled corpus."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from .features import classify, extract_features, Verdict
from .ingest import Tweet, extract_hashtags
from .lexicons import LexiconConfig


class CorpusFormatError(ValueError):
    """Raised when a labelled-corpus file is malformed."""


@dataclass(frozen=True)
class LabelledTweet:
    tweet: Tweet
    label: bool  # True = rescue request


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "tn"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class Metrics:
    sensitivity: float
    specificity: float
    precision: float
    mcc: float
    f1: float
    degenerate: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "sensitivity": self.sensitivity,
            "specificity": self.specificity,
            "precision": self.precision,
            "mcc": self.mcc,
            "f1": self.f1,
            "degenerate": list(self.degenerate),
        }


def load_labelled(path: str | Path) -> list[LabelledTweet]:
    """Load a labelled CSV corpus with header columns id, text, label.

    ``label`` must be exactly 0 or 1. An optional ``hashtags`` column holds
    space-separated extra tags; tags are always also extracted from the text.
    Quoted fields may contain embedded newlines.
    """
    path = Path(path)
    rows: list[LabelledTweet] = []
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        required = {"id", "text", "label"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise CorpusFormatError(f"{path}: header must contain columns {sorted(required)}")
        for i, row in enumerate(reader, start=2):
            raw_label = (row["label"] or "").strip()
            if raw_label not in ("0", "1"):
                raise CorpusFormatError(
                    f"{path}: row {i}: label must be 0 or 1, got {raw_label!r}"
                )
            text = row["text"] or ""
            tags = list(extract_hashtags(text))
            for tag in (row.get("hashtags") or "").split():
                cleaned = tag.lstrip("#").lower()
                if cleaned and cleaned not in tags:
                    tags.append(cleaned)
            rows.append(
                LabelledTweet(
                    tweet=Tweet(id=str(row["id"]), text=text, hashtags=tuple(tags)),
                    label=raw_label == "1",
                )
            )
    return rows


def evaluate(corpus: list[LabelledTweet], lex: LexiconConfig) -> ConfusionMatrix:
    """Run the classifier over every record and tally the confusion matrix."""
    if not corpus:
        raise ValueError("empty corpus")
    tp = fp = fn = tn = 0
    for item in corpus:
        predicted = classify(extract_features(item.tweet.text, lex)) is Verdict.RESCUE_REQUEST
        if predicted and item.label:
            tp += 1
        elif predicted and not item.label:
            fp += 1
        elif not predicted and item.label:
            fn += 1
        else:
            tn += 1
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


def compute_metrics(cm: ConfusionMatrix) -> Metrics:
    """Sensitivity, specificity, precision, MCC, and F1 from the matrix.

    A zero denominator yields 0.0 for that metric plus a degenerate flag.
    F1 is additionally flagged when precision or sensitivity is degenerate,
    since the harmonic mean is undefined there even though the count form
    2tp/(2tp+fp+fn) still evaluates.
    """
    if cm.total == 0:
        raise ValueError("all-zero confusion matrix")
    degenerate: list[str] = []

    def ratio(name: str, numerator: int, denominator: int) -> float:
        if denominator == 0:
            degenerate.append(name)
            return 0.0
        return numerator / denominator

    sensitivity = ratio("sensitivity", cm.tp, cm.tp + cm.fn)
    specificity = ratio("specificity", cm.tn, cm.tn + cm.fp)
    precision = ratio("precision", cm.tp, cm.tp + cm.fp)

    mcc_denominator_sq = (
        (cm.tp + cm.fp) * (cm.tp + cm.fn) * (cm.tn + cm.fp) * (cm.tn + cm.fn)
    )
    if mcc_denominator_sq == 0:
        degenerate.append("mcc")
        mcc = 0.0
    else:
        mcc = (cm.tp * cm.tn - cm.fp * cm.fn) / math.sqrt(mcc_denominator_sq)

    f1 = ratio("f1", 2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn)
    if "f1" not in degenerate and ("precision" in degenerate or "sensitivity" in degenerate):
        degenerate.append("f1")

    return Metrics(
        sensitivity=sensitivity,
        specificity=specificity,
        precision=precision,
        mcc=mcc,
        f1=f1,
        degenerate=tuple(degenerate),
    )
