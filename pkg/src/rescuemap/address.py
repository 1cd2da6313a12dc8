"""Full street-address extraction and Houston/Texas completion heuristics.

Starting from the first detected street-address match, the parser greedily
takes the optional components of a US address: unit, city (possibly
hashtagged), state, and zip code. Components are separated by "connector"
runs of spaces, tabs, newlines, carriage returns, form feeds, commas, and
periods. Under-specified addresses are completed so the final search string
always names Texas.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .features import AddressMatch, detect_address


class CompletionRule(Enum):
    NONE = "none"
    HOUSTON_HASHTAG = "houston_hashtag"
    TEXAS_DEFAULT = "texas_default"
    TEXAS_APPENDED = "texas_appended"


@dataclass(frozen=True)
class FullAddress:
    """Decomposed address components plus completion provenance.

    ``completed`` holds the assembled components after extraction and the
    final geocoder search string once :func:`complete_address` has run;
    ``completion_rule`` is None until then.
    """

    house_number: str
    street: str
    unit: Optional[str] = None
    city: Optional[str] = None
    state: Optional[str] = None
    zip: Optional[str] = None
    completed: str = ""
    completion_rule: Optional[CompletionRule] = None


_STATE_NAMES_BY_ABBREV = {
    "AL": "Alabama", "AK": "Alaska", "AZ": "Arizona", "AR": "Arkansas",
    "CA": "California", "CO": "Colorado", "CT": "Connecticut", "DE": "Delaware",
    "DC": "District of Columbia", "FL": "Florida", "GA": "Georgia", "HI": "Hawaii",
    "ID": "Idaho", "IL": "Illinois", "IN": "Indiana", "IA": "Iowa",
    "KS": "Kansas", "KY": "Kentucky", "LA": "Louisiana", "ME": "Maine",
    "MD": "Maryland", "MA": "Massachusetts", "MI": "Michigan", "MN": "Minnesota",
    "MS": "Mississippi", "MO": "Missouri", "MT": "Montana", "NE": "Nebraska",
    "NV": "Nevada", "NH": "New Hampshire", "NJ": "New Jersey", "NM": "New Mexico",
    "NY": "New York", "NC": "North Carolina", "ND": "North Dakota", "OH": "Ohio",
    "OK": "Oklahoma", "OR": "Oregon", "PA": "Pennsylvania", "RI": "Rhode Island",
    "SC": "South Carolina", "SD": "South Dakota", "TN": "Tennessee", "TX": "Texas",
    "UT": "Utah", "VT": "Vermont", "VA": "Virginia", "WA": "Washington",
    "WV": "West Virginia", "WI": "Wisconsin", "WY": "Wyoming",
}
_STATE_ABBREVS = frozenset(_STATE_NAMES_BY_ABBREV)
_STATE_NAMES = frozenset(n.lower() for n in _STATE_NAMES_BY_ABBREV.values())

_STATE_NAME_RE = re.compile(
    "(?:"
    + "|".join(
        re.escape(name).replace(r"\ ", r"\s+")
        for name in sorted(_STATE_NAMES_BY_ABBREV.values(), key=len, reverse=True)
    )
    + r")(?![A-Za-z])",
    re.IGNORECASE,
)
_STATE_ABBREV_RE = re.compile(r"[A-Za-z]{2}(?![A-Za-z0-9])")

_CONNECTOR_RE = re.compile(r"[ \t\n\r\f,.]+")
_ZIP_RE = re.compile(r"\d{5}(?:-\d{4})?(?![0-9A-Za-z])")

_UNIT_KEY_RE = re.compile(r"(?:apartment|suite|unit|apt|ste)\b\.?", re.IGNORECASE)
_UNIT_DESIGNATOR_RE = re.compile(r"#?\s?([A-Za-z0-9][A-Za-z0-9-]{0,5})(?![A-Za-z0-9])")

_CITY_WORD = r"(?:#[A-Za-z]+|[A-Z][A-Za-z]*)"
_CITY_RE = re.compile(rf"{_CITY_WORD}(?: {_CITY_WORD})?(?![A-Za-z0-9])")

_TEXAS_RE = re.compile(r"texas|\btx\b", re.IGNORECASE)


def contains_texas(text: str) -> bool:
    """'texas' anywhere or 'TX' as a standalone token, case-insensitive."""
    return _TEXAS_RE.search(text) is not None


def _normalize_ws(text: str) -> str:
    return " ".join(text.split())


def _connector(text: str, pos: int) -> Optional[re.Match]:
    m = _CONNECTOR_RE.match(text, pos)
    return m if m and m.end() > pos else None


def _match_unit(text: str, pos: int) -> Optional[tuple[str, int]]:
    key = _UNIT_KEY_RE.match(text, pos)
    if key is not None:
        rest = re.match(r"[ \t]*" + _UNIT_DESIGNATOR_RE.pattern, text[key.end():])
        if rest is not None:
            return _normalize_ws(text[pos : key.end() + rest.end()]), key.end() + rest.end()
        return None
    # Bare '#' unit: keep it distinguishable from a hashtagged city by
    # requiring a digit or a single letter ("#4B", "#B", not "#Houston").
    bare = _UNIT_DESIGNATOR_RE.match(text, pos)
    if bare is not None and text[pos] == "#":
        designator = bare.group(1)
        if any(ch.isdigit() for ch in designator) or len(designator) == 1:
            return _normalize_ws(bare.group(0)), bare.end()
    return None


def _is_state_word(word: str) -> bool:
    cleaned = word.lstrip("#")
    return cleaned.lower() in _STATE_NAMES or (
        len(cleaned) == 2 and cleaned.upper() in _STATE_ABBREVS and cleaned.isupper()
    )


def _zip_follows(text: str, pos: int) -> bool:
    conn = _connector(text, pos)
    return conn is not None and _ZIP_RE.match(text, conn.end()) is not None


def _match_state(text: str, pos: int, prev_connector: str) -> Optional[tuple[str, int]]:
    m = _STATE_NAME_RE.match(text, pos)
    if m is not None:
        return _normalize_ws(m.group(0)), m.end()
    m = _STATE_ABBREV_RE.match(text, pos)
    if m is None:
        return None
    token = m.group(0)
    if token.upper() not in _STATE_ABBREVS or not token.isupper():
        return None
    # Bare two-letter codes collide with English words ("IN", "OR", "OK"):
    # require a comma lead-in, a trailing zip, or the home-state code.
    if token.upper() == "TX" or "," in prev_connector or _zip_follows(text, m.end()):
        return token, m.end()
    return None


def _state_or_zip_follows(text: str, pos: int) -> bool:
    conn = _connector(text, pos)
    if conn is None:
        return False
    after = conn.end()
    if _ZIP_RE.match(text, after) is not None:
        return True
    return _match_state(text, after, conn.group(0)) is not None


def _match_city(text: str, pos: int, prev_connector: str) -> Optional[tuple[str, int]]:
    m = _CITY_RE.match(text, pos)
    if m is None:
        return None
    words = m.group(0).split(" ")
    # Never swallow the state into the city; retry with one word.
    if len(words) == 2 and _is_state_word(words[1]):
        words = words[:1]
    end = pos + len(" ".join(words))
    if _is_state_word(words[0]) and len(words) == 1:
        return None
    # Guard against trailing narrative words: a city needs a comma lead-in
    # or a recognized state/zip right after it.
    if "," not in prev_connector and not _state_or_zip_follows(text, end):
        return None
    city = " ".join(w.lstrip("#") for w in words)
    return city, end


def extract_full_address(
    text: str, *, matches: Optional[list[AddressMatch]] = None
) -> Optional[FullAddress]:
    """Parse the longest component chain starting at the first address match.

    Returns None when the text contains no street-address match. The result
    is uncompleted: run :func:`complete_address` to obtain the final search
    string.
    """
    if matches is None:
        matches = detect_address(text)
    if not matches:
        return None
    first = matches[0]
    cursor = first.span[1]

    head = _normalize_ws(first.matched_text)
    pieces: list[tuple[str, str]] = []  # (component text, source connector)
    unit = city = state = zip_code = None

    def advance(kind: str) -> Optional[str]:
        nonlocal cursor
        conn = _connector(text, cursor)
        if conn is None:
            return None
        start = conn.end()
        connector_text = conn.group(0)
        if kind == "unit":
            found = _match_unit(text, start)
        elif kind == "city":
            found = _match_city(text, start, connector_text)
        elif kind == "state":
            found = _match_state(text, start, connector_text)
        else:
            m = _ZIP_RE.match(text, start)
            found = (m.group(0), m.end()) if m else None
        if found is None:
            return None
        value, end = found
        pieces.append((value, connector_text))
        cursor = end
        return value

    unit = advance("unit")
    city = advance("city")
    state = advance("state")
    zip_code = advance("zip")

    completed = head
    for value, connector_text in pieces:
        joiner = ", " if "," in connector_text else " "
        completed += joiner + value

    return FullAddress(
        house_number=first.house_number,
        street=first.street,
        unit=unit,
        city=city,
        state=state,
        zip=zip_code,
        completed=completed,
        completion_rule=None,
    )


def complete_address(addr: FullAddress, hashtags: list[str] | tuple[str, ...]) -> FullAddress:
    """Fill in missing locality so the search string always names Texas.

    With no extracted city/state/zip: a hashtag containing "houston" appends
    ", Houston, TX"; otherwise ", Texas" is appended. With some locality
    extracted the string is kept as-is when it already names Texas, else
    ", Texas" is appended. Idempotent: completed addresses pass through.
    """
    if addr.completion_rule is not None:
        return addr
    base = addr.completed
    if addr.city is None and addr.state is None and addr.zip is None:
        if any("houston" in tag.lower() for tag in hashtags):
            return replace(
                addr,
                completed=base + ", Houston, TX",
                completion_rule=CompletionRule.HOUSTON_HASHTAG,
            )
        return replace(
            addr, completed=base + ", Texas", completion_rule=CompletionRule.TEXAS_DEFAULT
        )
    if contains_texas(base):
        return replace(addr, completion_rule=CompletionRule.NONE)
    return replace(
        addr, completed=base + ", Texas", completion_rule=CompletionRule.TEXAS_APPENDED
    )
