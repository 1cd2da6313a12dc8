"""Corpus ingestion: replay archived tweet records from newline-delimited JSON.

Each input line is one JSON object. The reader is tolerant: malformed lines
are counted and skipped, duplicate ids are dropped, and the stream order of
accepted records is preserved.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, Iterator, Mapping, Optional
from zoneinfo import ZoneInfo

US_CENTRAL = ZoneInfo("America/Chicago")

# Collection defaults used during the Harvey event.
HARVEY_KEYWORDS = ("#HurricaneHarvey", "#Harvey", "Hurricane", "flooding")
HARVEY_BBOX_TUPLE = (-99.0, 27.6, -90.8, 33.5)

_HASHTAG_RE = re.compile(r"#(\w+)")  # \w is unicode-aware; '#ayúdanos' stays whole
_TWITTER_TIME_FORMAT = "%a %b %d %H:%M:%S %z %Y"


class TweetParseError(ValueError):
    """A single record could not be parsed; ingestion continues."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


@dataclass(frozen=True)
class Tweet:
    """One ingested social-media record.

    ``hashtags`` always includes every ``#`` token found in ``text``
    (lowercased, ``#`` stripped). ``coordinates`` is (longitude, latitude).
    ``created_at_utc`` is required for records coming from :func:`parse_tweet`;
    it may be None for labelled evaluation rows that carry no timestamp.
    """

    id: str
    text: str
    created_at_utc: Optional[datetime] = None
    hashtags: tuple[str, ...] = ()
    coordinates: Optional[tuple[float, float]] = None
    user_location: Optional[str] = None


@dataclass(frozen=True)
class BoundingBox:
    west: float
    south: float
    east: float
    north: float

    def __post_init__(self) -> None:
        if not self.west < self.east:
            raise ValueError(f"bounding box requires west < east, got {self}")
        if not self.south < self.north:
            raise ValueError(f"bounding box requires south < north, got {self}")

    def contains(self, longitude: float, latitude: float) -> bool:
        """Boundary-inclusive containment."""
        return self.west <= longitude <= self.east and self.south <= latitude <= self.north


HARVEY_BBOX = BoundingBox(*HARVEY_BBOX_TUPLE)


@dataclass(frozen=True)
class StreamConfig:
    """Pre-filter applied while replaying the stream.

    ``combine`` is fixed OR semantics: a record passes if it matches any
    keyword or falls inside the bounding box.
    """

    track_keywords: tuple[str, ...] = HARVEY_KEYWORDS
    bbox: Optional[BoundingBox] = HARVEY_BBOX
    combine: str = "OR"

    def __post_init__(self) -> None:
        if self.combine != "OR":
            raise ValueError("keyword/bounding-box combination is fixed to OR")
        if not self.track_keywords and self.bbox is None:
            raise ValueError("stream config needs keywords or a bounding box")


@dataclass
class IngestStats:
    """Counters updated in place while :func:`read_stream` runs."""

    parsed: int = 0
    malformed: int = 0
    duplicates: int = 0


def extract_hashtags(text: str) -> tuple[str, ...]:
    """Every '#'-prefixed token in the text, lowercased, '#' stripped."""
    return tuple(m.group(1).lower() for m in _HASHTAG_RE.finditer(text))


def _parse_created_at(value: object, line_no: int | None) -> datetime:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return datetime.fromtimestamp(value, tz=timezone.utc)
    if not isinstance(value, str):
        raise TweetParseError(f"unsupported created_at value: {value!r}", line_no)
    text = value.strip()
    try:
        return datetime.strptime(text, _TWITTER_TIME_FORMAT).astimezone(timezone.utc)
    except ValueError:
        pass
    try:
        parsed = datetime.fromisoformat(text.replace("Z", "+00:00"))
    except ValueError:
        raise TweetParseError(f"unparseable created_at: {value!r}", line_no) from None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def _parse_coordinates(value: object, line_no: int | None) -> tuple[float, float]:
    # Accept [lon, lat] or the GeoJSON-style {"coordinates": [lon, lat]}.
    if isinstance(value, Mapping):
        value = value.get("coordinates")
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise TweetParseError(f"coordinates must be a [lon, lat] pair: {value!r}", line_no)
    try:
        lon, lat = float(value[0]), float(value[1])
    except (TypeError, ValueError):
        raise TweetParseError(f"non-numeric coordinates: {value!r}", line_no) from None
    if not (-180.0 <= lon <= 180.0 and -90.0 <= lat <= 90.0):
        raise TweetParseError(f"coordinates out of range: ({lon}, {lat})", line_no)
    return (lon, lat)


def parse_tweet(record: str | bytes | Mapping, line_no: int | None = None) -> Tweet:
    """Parse one newline-delimited JSON record into a :class:`Tweet`.

    Accepts either the raw line or an already-decoded mapping. Twitter-v1
    style field names (``id_str``, ``full_text``, ``entities.hashtags``,
    ``user.location``) are understood alongside the plain schema.
    """
    if isinstance(record, (str, bytes)):
        try:
            obj = json.loads(record)
        except json.JSONDecodeError as exc:
            raise TweetParseError(f"invalid JSON ({exc.msg})", line_no) from None
    else:
        obj = record
    if not isinstance(obj, Mapping):
        raise TweetParseError("record is not a JSON object", line_no)

    raw_id = obj.get("id_str") or obj.get("id")
    if raw_id is None or str(raw_id).strip() == "":
        raise TweetParseError("missing id", line_no)
    text = obj.get("text")
    if text is None:
        text = obj.get("full_text")
    if not isinstance(text, str):
        raise TweetParseError("missing text", line_no)
    if "created_at" not in obj:
        raise TweetParseError("missing created_at", line_no)
    created = _parse_created_at(obj["created_at"], line_no)

    tags = list(extract_hashtags(text))
    provided = obj.get("hashtags")
    if provided is None and isinstance(obj.get("entities"), Mapping):
        entities = obj["entities"].get("hashtags")
        if isinstance(entities, list):
            provided = [e.get("text") for e in entities if isinstance(e, Mapping)]
    if isinstance(provided, list):
        for tag in provided:
            if isinstance(tag, str):
                cleaned = tag.lstrip("#").lower()
                if cleaned and cleaned not in tags:
                    tags.append(cleaned)

    coords = None
    if obj.get("coordinates") is not None:
        coords = _parse_coordinates(obj["coordinates"], line_no)

    location = obj.get("user_location")
    if location is None and isinstance(obj.get("user"), Mapping):
        location = obj["user"].get("location")
    if location is not None and not isinstance(location, str):
        location = None

    return Tweet(
        id=str(raw_id),
        text=text,
        created_at_utc=created,
        hashtags=tuple(tags),
        coordinates=coords,
        user_location=location,
    )


def read_stream(
    source: Iterable[str], stats: IngestStats | None = None
) -> Iterator[Tweet]:
    """Yield tweets from an iterable of NDJSON lines, in input order.

    Malformed lines and duplicate ids are counted in ``stats`` and skipped;
    blank lines are ignored. An unreadable source raises the underlying
    OSError (fatal).
    """
    if stats is None:
        stats = IngestStats()
    seen: set[str] = set()
    for line_no, line in enumerate(source, start=1):
        if not line.strip():
            continue
        try:
            tweet = parse_tweet(line, line_no)
        except TweetParseError:
            stats.malformed += 1
            continue
        if tweet.id in seen:
            stats.duplicates += 1
            continue
        seen.add(tweet.id)
        stats.parsed += 1
        yield tweet


def passes_stream_filter(tweet: Tweet, cfg: StreamConfig) -> bool:
    """OR-combined keyword/bounding-box pre-filter.

    Keywords match as case-insensitive substrings of the text or of any
    hashtag (the keyword's own leading '#' is ignored for hashtag matching).
    Bounding-box containment is boundary-inclusive and requires coordinates.
    """
    text = tweet.text.casefold()
    for keyword in cfg.track_keywords:
        folded = keyword.casefold()
        if folded and folded in text:
            return True
        bare = folded.lstrip("#")
        if bare and any(bare in tag for tag in tweet.hashtags):
            return True
    if cfg.bbox is not None and tweet.coordinates is not None:
        return cfg.bbox.contains(*tweet.coordinates)
    return False


def to_local_time(utc: datetime) -> datetime:
    """Express an instant in US/Central time (CDT/CST per the date)."""
    if utc.tzinfo is None:
        utc = utc.replace(tzinfo=timezone.utc)
    return utc.astimezone(US_CENTRAL)
