"""Clock-skew fingerprinting from TCP timestamp traces.

Embedded devices expose their hardware clock through the TCP timestamp
option. The tsval counter drifts against true time at a rate (ppm) that
is stable per hardware platform, so a least-squares fit of the drift
recovers a fingerprint that web content cannot fake.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from devrisk.errors import DegenerateTrace, InsufficientSamples, ValidationError
from devrisk.identify.opinion import Opinion
from devrisk.model import ModelIdentity

TSVAL_MODULUS = 2 ** 32
MIN_SAMPLES = 10
DEFAULT_Z_MAX = 3.0
DEFAULT_BELIEF_TOTAL = 0.8


@dataclass(frozen=True)
class TimestampTrace:
    device_id: str
    samples: tuple[tuple[float, int], ...]  # (capture_time_s, tsval)
    tsval_frequency_hz: float

    def __post_init__(self) -> None:
        if self.tsval_frequency_hz <= 0:
            raise ValidationError("tsval_frequency_hz must be positive")

    def to_dict(self) -> dict:
        return {
            "device_id": self.device_id,
            "tsval_frequency_hz": self.tsval_frequency_hz,
            "samples": [[t, v] for t, v in self.samples],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TimestampTrace":
        return cls(
            device_id=d.get("device_id", ""),
            samples=tuple((float(t), int(v)) for t, v in d["samples"]),
            tsval_frequency_hz=float(d["tsval_frequency_hz"]),
        )


@dataclass(frozen=True)
class SkewProfile:
    """Expected drift rate for one device model, with a match tolerance."""

    identity: ModelIdentity
    expected_skew_ppm: float
    tolerance_ppm: float

    def __post_init__(self) -> None:
        if self.tolerance_ppm <= 0:
            raise ValidationError("tolerance_ppm must be positive")

    def to_dict(self) -> dict:
        return {
            "identity": self.identity.to_dict(),
            "expected_skew_ppm": self.expected_skew_ppm,
            "tolerance_ppm": self.tolerance_ppm,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SkewProfile":
        return cls(
            identity=ModelIdentity.from_dict(d["identity"]),
            expected_skew_ppm=float(d["expected_skew_ppm"]),
            tolerance_ppm=float(d["tolerance_ppm"]),
        )


def unwrap_tsvals(tsvals: Sequence[int]) -> list[int]:
    """Undo 32-bit counter wraparound, assuming at most one wrap between
    consecutive samples (fine for desk-scale traces of minutes to hours)."""
    out = [tsvals[0]]
    for prev, cur in zip(tsvals, tsvals[1:]):
        delta = cur - prev
        if delta < 0:
            delta += TSVAL_MODULUS
        out.append(out[-1] + delta)
    return out


def estimate_clock_skew(trace: TimestampTrace) -> float:
    """OLS slope of (tsval seconds - capture seconds) against capture
    time, in parts per million."""
    if len(trace.samples) < MIN_SAMPLES:
        raise InsufficientSamples(
            f"{len(trace.samples)} samples, need at least {MIN_SAMPLES}"
        )
    times = [t for t, _ in trace.samples]
    for prev, cur in zip(times, times[1:]):
        if cur <= prev:
            raise DegenerateTrace("capture_time must be strictly increasing")
    if times[-1] - times[0] <= 0:
        raise DegenerateTrace("capture_time span is zero")

    unwrapped = unwrap_tsvals([v for _, v in trace.samples])
    t = np.asarray(times, dtype=np.float64)
    base = unwrapped[0]
    ticks = np.asarray([v - base for v in unwrapped], dtype=np.float64)
    # center both axes; the counter magnitude would otherwise eat the
    # millisecond-scale drift signal in float64
    offset = ticks / trace.tsval_frequency_hz - (t - t[0])
    slope = np.polyfit(t - t[0], offset, 1)[0]
    return float(slope * 1e6)


def skew_to_opinion(
    skew_ppm: float,
    profiles: Sequence[SkewProfile],
    belief_total: float = DEFAULT_BELIEF_TOTAL,
    z_max: float = DEFAULT_Z_MAX,
) -> Opinion:
    """Bridge a measured skew into the fusion domain.

    Profiles within z_max tolerances become hypotheses weighted by the
    Gaussian kernel exp(-z^2 / 2); weights are normalized to a fixed total
    belief below the web-matching cap, since skew alone is the weaker
    evidence. Nothing in range yields the vacuous opinion.
    """
    if not profiles:
        raise ValidationError("profile list is empty")
    weights: dict[ModelIdentity, float] = {}
    for prof in profiles:
        z = abs(skew_ppm - prof.expected_skew_ppm) / prof.tolerance_ppm
        if z <= z_max:
            w = math.exp(-(z * z) / 2.0)
            weights[prof.identity] = max(w, weights.get(prof.identity, 0.0))
    if not weights:
        return Opinion.vacuous()
    total_w = sum(weights.values())
    masses = {x: belief_total * w / total_w for x, w in weights.items()}
    return Opinion.from_masses(masses, uncertainty=1.0 - sum(masses.values()))


def load_profiles(path: Union[str, Path]) -> list[SkewProfile]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return [SkewProfile.from_dict(d) for d in raw]


def load_trace(path: Union[str, Path]) -> TimestampTrace:
    """Load a trace from inline JSON, or from CSV with the header
    `capture_time_s,tsval` plus a `<name>.meta.json` frequency sidecar."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        sidecar = path.with_suffix(path.suffix + ".meta.json")
        if not sidecar.exists():
            raise ValidationError(f"CSV trace needs frequency sidecar {sidecar.name}")
        meta = json.loads(sidecar.read_text(encoding="utf-8"))
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            samples = tuple(
                (float(row["capture_time_s"]), int(row["tsval"])) for row in reader
            )
        return TimestampTrace(
            device_id=meta.get("device_id", path.stem),
            samples=samples,
            tsval_frequency_hz=float(meta["tsval_frequency_hz"]),
        )
    return TimestampTrace.from_dict(json.loads(path.read_text(encoding="utf-8")))


def synthesize_trace(
    skew_ppm: float,
    frequency_hz: float = 1000.0,
    duration_s: float = 60.0,
    n_samples: int = 101,
    tsval_start: int = 1_000_000,
    device_id: str = "synthetic",
    jitter_s: float = 0.0,
    rng: Optional[np.random.Generator] = None,
) -> TimestampTrace:
    """Generate a trace whose true drift line is exactly `skew_ppm`.

    tsvals are laid on an integer grid and capture times derived from the
    inverse of the drift line, so the noiseless trace carries no
    quantization error. Optional Gaussian jitter perturbs capture times.
    """
    rate = 1.0 + skew_ppm * 1e-6
    step = max(1, round(frequency_hz * duration_s * rate / (n_samples - 1)))
    tsvals = [tsval_start + k * step for k in range(n_samples)]
    times = [(v - tsval_start) / (frequency_hz * rate) for v in tsvals]
    if jitter_s > 0.0:
        rng = rng or np.random.default_rng()
        noise = rng.normal(0.0, jitter_s, size=n_samples)
        jittered = [float(t + e) for t, e in zip(times, noise)]
        # keep sample order intact; nudge the rare non-increasing pair
        for i in range(1, n_samples):
            if jittered[i] <= jittered[i - 1]:
                jittered[i] = jittered[i - 1] + 1e-9
        times = jittered
    return TimestampTrace(
        device_id=device_id,
        samples=tuple((t, v % TSVAL_MODULUS) for t, v in zip(times, tsvals)),
        tsval_frequency_hz=frequency_hz,
    )
