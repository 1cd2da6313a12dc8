from __future__ import annotations

import json
from datetime import datetime, timezone

import pytest
from hypothesis import given, strategies as st

from rescuemap import (
    BoundingBox,
    IngestStats,
    StreamConfig,
    Tweet,
    TweetParseError,
    extract_hashtags,
    parse_tweet,
    passes_stream_filter,
    read_stream,
    to_local_time,
)

UTC = timezone.utc


def line(**fields) -> str:
    return json.dumps(fields)


class TestParseTweet:
    def test_twitter_time_format_maps_to_utc(self):
        tweet = parse_tweet(
            line(id="1", text="stranded on rooftop", created_at="Sun Aug 27 12:00:00 +0000 2017")
        )
        assert tweet.created_at_utc == datetime(2017, 8, 27, 12, 0, 0, tzinfo=UTC)
        assert tweet.text == "stranded on rooftop"

    def test_iso_time_format(self):
        tweet = parse_tweet(line(id="1", text="x", created_at="2017-08-27T12:00:00Z"))
        assert tweet.created_at_utc == datetime(2017, 8, 27, 12, 0, 0, tzinfo=UTC)

    def test_missing_coordinates_stay_absent(self):
        tweet = parse_tweet(line(id="1", text="x", created_at="2017-08-27T12:00:00Z"))
        assert tweet.coordinates is None
        assert tweet.user_location is None

    def test_hashtags_extracted_from_text(self):
        # Hand-tokenized: '#'-prefixed tokens are HoustonFlood and Harvey.
        tweet = parse_tweet(
            line(id="1", text="Help #HoustonFlood #Harvey", created_at="2017-08-27T12:00:00Z")
        )
        assert tweet.hashtags == ("houstonflood", "harvey")

    def test_unicode_hashtags_stay_whole(self):
        tweet = parse_tweet(
            line(id="1", text="#Ayúdanos por favor", created_at="2017-08-27T12:00:00Z")
        )
        assert tweet.hashtags == ("ayúdanos",)

    def test_provided_hashtags_are_merged(self):
        tweet = parse_tweet(
            line(
                id="1",
                text="Help #HoustonFlood",
                created_at="2017-08-27T12:00:00Z",
                hashtags=["#Harvey", "HoustonFlood"],
            )
        )
        assert tweet.hashtags == ("houstonflood", "harvey")

    def test_twitter_v1_style_fields(self):
        record = {
            "id_str": "905",
            "full_text": "water rising #harvey",
            "created_at": "Sun Aug 27 12:00:00 +0000 2017",
            "coordinates": {"type": "Point", "coordinates": [-95.4, 29.7]},
            "user": {"location": "Houston, TX"},
        }
        tweet = parse_tweet(record)
        assert tweet.id == "905"
        assert tweet.coordinates == (-95.4, 29.7)
        assert tweet.user_location == "Houston, TX"

    @pytest.mark.parametrize(
        "bad",
        [
            "not json at all",
            line(text="no id", created_at="2017-08-27T12:00:00Z"),
            line(id="1", created_at="2017-08-27T12:00:00Z"),
            line(id="1", text="x"),
            line(id="1", text="x", created_at="yesterday-ish"),
            line(id="1", text="x", created_at="2017-08-27T12:00:00Z", coordinates=[200.0, 10.0]),
        ],
    )
    def test_malformed_records_raise(self, bad):
        with pytest.raises(TweetParseError):
            parse_tweet(bad, line_no=7)

    def test_parse_error_carries_line_number(self):
        with pytest.raises(TweetParseError) as exc_info:
            parse_tweet("{", line_no=42)
        assert exc_info.value.line_no == 42
        assert "42" in str(exc_info.value)


class TestReadStream:
    def good(self, i: str) -> str:
        return line(id=i, text=f"tweet {i}", created_at="2017-08-27T12:00:00Z")

    def test_well_formed_lines_in_order(self):
        tweets = list(read_stream([self.good("a"), self.good("b"), self.good("c")]))
        assert [t.id for t in tweets] == ["a", "b", "c"]

    def test_malformed_middle_line_is_skipped_and_counted(self):
        stats = IngestStats()
        tweets = list(read_stream([self.good("a"), "{oops", self.good("b")], stats))
        assert [t.id for t in tweets] == ["a", "b"]
        assert stats.malformed == 1
        assert stats.parsed == 2

    def test_duplicate_ids_are_dropped(self):
        stats = IngestStats()
        tweets = list(read_stream([self.good("a"), self.good("a")], stats))
        assert len(tweets) == 1
        assert stats.duplicates == 1

    def test_blank_lines_ignored(self):
        tweets = list(read_stream(["", "  ", self.good("a"), "\n"]))
        assert len(tweets) == 1


def tweet_with(text="", coords=None, hashtags=None) -> Tweet:
    return Tweet(
        id="t",
        text=text,
        created_at_utc=datetime(2017, 8, 27, tzinfo=UTC),
        hashtags=tuple(hashtags or extract_hashtags(text)),
        coordinates=coords,
    )


class TestStreamFilter:
    def test_keyword_hit(self):
        assert passes_stream_filter(tweet_with("Hurricane coming"), StreamConfig())

    def test_bbox_hit_without_keyword(self):
        cfg = StreamConfig(track_keywords=("#HurricaneHarvey",))
        assert passes_stream_filter(tweet_with("nice day", coords=(-95.37, 29.76)), cfg)

    def test_outside_bbox_no_keyword(self):
        assert not passes_stream_filter(tweet_with("nice day", coords=(0.0, 0.0)), StreamConfig())

    def test_no_coordinates_fails_bbox_leg(self):
        cfg = StreamConfig(track_keywords=("zzz",))
        assert not passes_stream_filter(tweet_with("nice day"), cfg)

    def test_keyword_matches_hashtag_with_hash_stripped(self):
        cfg = StreamConfig(track_keywords=("#HurricaneHarvey",), bbox=None)
        assert passes_stream_filter(tweet_with("storm", hashtags=["hurricaneharvey"]), cfg)

    def test_boundary_is_inclusive(self):
        cfg = StreamConfig(track_keywords=("zzz",))
        assert passes_stream_filter(tweet_with("x", coords=(-99.0, 27.6)), cfg)

    @given(
        text=st.text(max_size=60),
        keywords=st.lists(st.text(min_size=1, max_size=8), min_size=1, max_size=4),
        extra=st.text(min_size=1, max_size=8),
    )
    def test_adding_a_keyword_never_unfilters(self, text, keywords, extra):
        base = StreamConfig(track_keywords=tuple(keywords), bbox=None)
        widened = StreamConfig(track_keywords=tuple(keywords) + (extra,), bbox=None)
        tweet = tweet_with(text)
        if passes_stream_filter(tweet, base):
            assert passes_stream_filter(tweet, widened)


class TestBoundingBox:
    def test_invalid_boxes_rejected(self):
        with pytest.raises(ValueError):
            BoundingBox(-90.8, 27.6, -99.0, 33.5)
        with pytest.raises(ValueError):
            BoundingBox(-99.0, 33.5, -90.8, 27.6)

    def test_stream_config_requires_some_criterion(self):
        with pytest.raises(ValueError):
            StreamConfig(track_keywords=(), bbox=None)


class TestToLocalTime:
    def test_summer_offset_is_minus_five(self):
        local = to_local_time(datetime(2017, 8, 27, 12, 0, 0, tzinfo=UTC))
        assert local.isoformat() == "2017-08-27T07:00:00-05:00"

    def test_day_boundary_crossing(self):
        local = to_local_time(datetime(2017, 8, 27, 3, 0, 0, tzinfo=UTC))
        assert local.isoformat() == "2017-08-26T22:00:00-05:00"

    def test_winter_offset_is_minus_six(self):
        # January is CST per the US/Central DST table.
        local = to_local_time(datetime(2017, 1, 15, 12, 0, 0, tzinfo=UTC))
        assert local.isoformat() == "2017-01-15T06:00:00-06:00"

    @given(
        st.datetimes(
            min_value=datetime(2000, 1, 1),
            max_value=datetime(2030, 1, 1),
            timezones=st.just(UTC),
        )
    )
    def test_conversion_preserves_the_instant(self, utc_dt):
        assert to_local_time(utc_dt).astimezone(UTC) == utc_dt


@given(st.text(max_size=120))
def test_every_extracted_hashtag_is_in_the_text(text):
    for tag in extract_hashtags(text):
        assert ("#" + tag) in text.lower()


@given(st.lists(st.integers(min_value=0, max_value=30), min_size=0, max_size=40))
def test_read_stream_preserves_input_order(ids):
    lines = [
        json.dumps({"id": f"t{i}", "text": "x", "created_at": "2017-08-27T12:00:00Z"})
        for i in ids
    ]
    got = [t.id for t in read_stream(lines)]
    expected = []
    seen = set()
    for i in ids:
        if f"t{i}" not in seen:
            seen.add(f"t{i}")
            expected.append(f"t{i}")
    assert got == expected
