"""Decision-support outputs: GeoJSON and a self-contained interactive map.

Both artifacts embed every classified record: successfully geocoded requests
become map markers / GeoJSON Point features, the rest are kept in an
``ungeocoded`` list so nothing is silently dropped. All user-originated
strings are escaped before they reach the document.
"""
from __future__ import annotations

import html
import json
from dataclasses import dataclass
from datetime import datetime
from typing import Sequence

from .address import FullAddress
from .features import AddressMatch, FeatureVector
from .geocode import GeocodeResult, GeocodeStatus
from .ingest import HARVEY_BBOX_TUPLE, Tweet


@dataclass(frozen=True)
class RescueRequest:
    """A classified-positive tweet joined with its completed address and geocode."""

    tweet: Tweet
    features: FeatureVector
    address: FullAddress
    geocode: GeocodeResult
    local_time: datetime
    extra_matches: tuple[AddressMatch, ...] = ()


def _ungeocoded_entry(request: RescueRequest) -> dict:
    return {
        "id": request.tweet.id,
        "text": request.tweet.text,
        "completed_address": request.address.completed,
        "completion_rule": request.address.completion_rule.value
        if request.address.completion_rule
        else None,
        "status": request.geocode.status.value,
    }


def to_geojson(requests: Sequence[RescueRequest], *, indent: int | None = 2) -> str:
    """Serialize requests as a GeoJSON FeatureCollection (longitude first).

    Requests whose geocode failed appear in the top-level ``ungeocoded``
    array rather than as features. Output is deterministic for identical
    inputs (sorted keys, fixed float repr).
    """
    features = []
    ungeocoded = []
    for request in requests:
        if request.geocode.status is GeocodeStatus.OK and request.geocode.point is not None:
            point = request.geocode.point
            features.append(
                {
                    "type": "Feature",
                    "geometry": {
                        "type": "Point",
                        "coordinates": [point.longitude, point.latitude],
                    },
                    "properties": {
                        "id": request.tweet.id,
                        "text": request.tweet.text,
                        "completed_address": request.address.completed,
                        "local_time": request.local_time.isoformat(),
                        "completion_rule": request.address.completion_rule.value
                        if request.address.completion_rule
                        else None,
                    },
                }
            )
        else:
            ungeocoded.append(_ungeocoded_entry(request))
    collection = {
        "type": "FeatureCollection",
        "features": features,
        "ungeocoded": ungeocoded,
    }
    return json.dumps(collection, indent=indent, sort_keys=True, ensure_ascii=False)


def _marker_bounds(requests: Sequence[RescueRequest]) -> tuple[float, float, float, float]:
    lons = []
    lats = []
    for request in requests:
        if request.geocode.status is GeocodeStatus.OK and request.geocode.point is not None:
            lons.append(request.geocode.point.longitude)
            lats.append(request.geocode.point.latitude)
    if not lons:
        return HARVEY_BBOX_TUPLE
    return (min(lons), min(lats), max(lons), max(lats))


def _safe_json(payload: object) -> str:
    # Escape the characters that could terminate the surrounding <script>
    # block or open a tag; tweet text is adversarial input.
    text = json.dumps(payload, sort_keys=True, ensure_ascii=False)
    return (
        text.replace("&", "\\u0026").replace("<", "\\u003c").replace(">", "\\u003e")
    )


_MAP_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>Rescue requests</title>
<link rel="stylesheet" href="https://unpkg.com/leaflet@1.9.4/dist/leaflet.css">
<script src="https://unpkg.com/leaflet@1.9.4/dist/leaflet.js"></script>
<style>
  html, body {{ height: 100%; margin: 0; }}
  #map {{ height: 92%; }}
  #ungeocoded {{ font: 13px/1.4 sans-serif; padding: 4px 10px; overflow: auto; height: 8%; }}
</style>
</head>
<body>
<div id="map"></div>
<div id="ungeocoded"></div>
<script>
var PAYLOAD = {payload};
var map = L.map("map");
L.tileLayer("https://{{s}}.tile.openstreetmap.org/{{z}}/{{x}}/{{y}}.png", {{
  maxZoom: 19,
  attribution: "&copy; OpenStreetMap contributors"
}}).addTo(map);
map.fitBounds([[PAYLOAD.viewport[1], PAYLOAD.viewport[0]],
               [PAYLOAD.viewport[3], PAYLOAD.viewport[2]]]);
PAYLOAD.markers.forEach(function (m) {{
  L.marker([m.lat, m.lon]).addTo(map).bindPopup(m.popup);
}});
var box = document.getElementById("ungeocoded");
if (PAYLOAD.ungeocoded.length === 0) {{
  box.textContent = PAYLOAD.markers.length + " rescue request(s) mapped; none ungeocoded.";
}} else {{
  box.innerHTML = "<b>" + PAYLOAD.ungeocoded.length +
    " request(s) could not be geocoded:</b> " +
    PAYLOAD.ungeocoded.map(function (u) {{ return u.summary; }}).join(" | ");
}}
</script>
</body>
</html>
"""


def to_map_document(
    requests: Sequence[RescueRequest],
    *,
    default_viewport: tuple[float, float, float, float] = HARVEY_BBOX_TUPLE,
) -> str:
    """Render a single-file interactive map with one marker per geocoded request.

    Marker pop-ups show the tweet text, the completed address, and the
    US/Central local time. Marker data is embedded in the document; only map
    tiles and the map library load from the network.
    """
    markers = []
    ungeocoded = []
    for request in requests:
        popup = (
            f"<b>{html.escape(request.tweet.text)}</b><br>"
            f"{html.escape(request.address.completed)}<br>"
            f"{html.escape(request.local_time.isoformat())}"
        )
        if request.geocode.status is GeocodeStatus.OK and request.geocode.point is not None:
            markers.append(
                {
                    "id": request.tweet.id,
                    "lon": request.geocode.point.longitude,
                    "lat": request.geocode.point.latitude,
                    "popup": popup,
                }
            )
        else:
            entry = _ungeocoded_entry(request)
            entry["summary"] = html.escape(
                f"{request.address.completed} ({request.geocode.status.value})"
            )
            # Keep the raw text out of markup; it is already present in the
            # escaped summary-free fields for machine consumers.
            entry["text"] = html.escape(entry["text"])
            ungeocoded.append(entry)
    viewport = _marker_bounds(requests) if markers else default_viewport
    payload = {
        "viewport": list(viewport),
        "markers": markers,
        "ungeocoded": ungeocoded,
    }
    return _MAP_TEMPLATE.format(payload=_safe_json(payload))
