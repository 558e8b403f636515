"""Multinomial opinions and their fusion, after Jøsang's subjective logic.

An opinion assigns belief mass to candidate device identities plus an
explicit uncertainty mass u, with prior base rates a over the candidates:

    sum_x b(x) + u = 1        sum_x a(x) = 1

Evidence sources that observe independent aspects of a device (web
banners vs. hardware clock behaviour) are combined with the cumulative
fusion operator:

    kappa    = u_A + u_B - u_A * u_B
    b(x)     = (b_A(x) * u_B + b_B(x) * u_A) / kappa
    u        = (u_A * u_B) / kappa

with the equal-weight average as the dogmatic limit when kappa = 0.
The vacuous opinion (u = 1) is the neutral element.

Reference: Josang, A. (2016). Subjective Logic: A Formalism for
Reasoning Under Uncertainty. Springer. Ch. 12 (cumulative fusion).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from devrisk.errors import DomainMismatch, ValidationError
from devrisk.model import ModelIdentity

MASS_TOLERANCE = 1e-9
BASE_RATE_CONFLICT_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Opinion:
    """Belief over candidate identities with explicit uncertainty.

    hypotheses fixes the candidate order; the implicit "unknown" rest of
    the domain carries no belief mass of its own, only uncertainty. The
    empty-domain opinion with u = 1 is the canonical vacuous opinion.
    """

    hypotheses: tuple[ModelIdentity, ...]
    belief: Mapping[ModelIdentity, float]
    uncertainty: float
    base_rate: Mapping[ModelIdentity, float]

    def __post_init__(self) -> None:
        hyps = set(self.hypotheses)
        if len(hyps) != len(self.hypotheses):
            raise DomainMismatch("duplicate hypotheses in opinion domain")
        if set(self.belief) - hyps or set(self.base_rate) - hyps:
            raise ValidationError("belief/base_rate keys must be hypotheses")
        # materialize one entry per hypothesis so equal opinions compare equal
        object.__setattr__(
            self, "belief", {x: self.belief.get(x, 0.0) for x in self.hypotheses}
        )
        object.__setattr__(
            self, "base_rate", {x: self.base_rate.get(x, 0.0) for x in self.hypotheses}
        )
        for x in self.hypotheses:
            if not -MASS_TOLERANCE <= self.belief[x] <= 1.0 + MASS_TOLERANCE:
                raise ValidationError(f"belief mass for {x} outside [0, 1]")
        total = sum(self.belief.values()) + self.uncertainty
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ValidationError(f"belief masses + uncertainty = {total}, expected 1")
        if self.hypotheses:
            rate_total = sum(self.base_rate.values())
            if abs(rate_total - 1.0) > MASS_TOLERANCE:
                raise ValidationError(f"base rates sum to {rate_total}, expected 1")

    @classmethod
    def vacuous(cls, hypotheses: Sequence[ModelIdentity] = ()) -> "Opinion":
        """Total uncertainty. With hypotheses given, base rates are uniform."""
        hyps = tuple(hypotheses)
        n = len(hyps)
        return cls(
            hypotheses=hyps,
            belief={x: 0.0 for x in hyps},
            uncertainty=1.0,
            base_rate={x: 1.0 / n for x in hyps} if n else {},
        )

    @classmethod
    def from_masses(
        cls,
        masses: Mapping[ModelIdentity, float],
        uncertainty: float,
        base_rate: Optional[Mapping[ModelIdentity, float]] = None,
    ) -> "Opinion":
        """Build with hypotheses ordered by descending mass; uniform base
        rates unless given."""
        hyps = tuple(sorted(masses, key=lambda x: (-masses[x], x)))
        if base_rate is None:
            n = len(hyps)
            base_rate = {x: 1.0 / n for x in hyps} if n else {}
        return cls(
            hypotheses=hyps,
            belief=dict(masses),
            uncertainty=uncertainty,
            base_rate=dict(base_rate),
        )

    @property
    def is_vacuous(self) -> bool:
        return self.uncertainty >= 1.0 - MASS_TOLERANCE

    @property
    def is_dogmatic(self) -> bool:
        return self.uncertainty <= MASS_TOLERANCE

    def belief_of(self, x: ModelIdentity) -> float:
        return self.belief.get(x, 0.0)

    def base_rate_of(self, x: ModelIdentity) -> float:
        return self.base_rate.get(x, 0.0)

    def projected(self) -> dict[ModelIdentity, float]:
        """Projected probability P(x) = b(x) + a(x) * u."""
        return {
            x: self.belief_of(x) + self.base_rate_of(x) * self.uncertainty
            for x in self.hypotheses
        }

    def to_dict(self) -> dict:
        return {
            "hypotheses": [x.to_dict() for x in self.hypotheses],
            "belief": [self.belief_of(x) for x in self.hypotheses],
            "uncertainty": self.uncertainty,
            "base_rate": [self.base_rate_of(x) for x in self.hypotheses],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Opinion":
        hyps = tuple(ModelIdentity.from_dict(h) for h in d["hypotheses"])
        return cls(
            hypotheses=hyps,
            belief=dict(zip(hyps, d["belief"])),
            uncertainty=d["uncertainty"],
            base_rate=dict(zip(hyps, d["base_rate"])),
        )


def _union_domain(a: Opinion, b: Opinion) -> tuple[ModelIdentity, ...]:
    seen = list(a.hypotheses)
    for x in b.hypotheses:
        if x not in a.hypotheses:
            seen.append(x)
    return tuple(seen)


def _reconcile_base_rates(
    a: Opinion, b: Opinion, domain: Sequence[ModelIdentity]
) -> dict[ModelIdentity, float]:
    """Average the two prior vectors over the union domain.

    A source's missing hypotheses contribute zero prior; the averaged
    vector is renormalized so a one-sided (or vacuous) domain passes
    through unchanged. Identical domains must already agree on priors:
    both sources then drew them from the same catalog, and disagreement
    means the catalogs are inconsistent.
    """
    if not a.hypotheses:
        return {x: b.base_rate_of(x) for x in domain}
    if not b.hypotheses:
        return {x: a.base_rate_of(x) for x in domain}
    if set(a.hypotheses) == set(b.hypotheses):
        for x in a.hypotheses:
            if abs(a.base_rate_of(x) - b.base_rate_of(x)) > BASE_RATE_CONFLICT_TOLERANCE:
                raise DomainMismatch(
                    f"conflicting base rates for {x}: "
                    f"{a.base_rate_of(x)} vs {b.base_rate_of(x)}"
                )
        return {x: (a.base_rate_of(x) + b.base_rate_of(x)) / 2.0 for x in domain}
    averaged = {x: (a.base_rate_of(x) + b.base_rate_of(x)) / 2.0 for x in domain}
    total = sum(averaged.values())
    if total <= 0.0:
        return {x: 1.0 / len(domain) for x in domain} if domain else {}
    return {x: r / total for x, r in averaged.items()}


def fuse_opinions(a: Opinion, b: Opinion) -> Opinion:
    """Cumulative fusion over the union of the two hypothesis sets."""
    domain = _union_domain(a, b)
    base_rate = _reconcile_base_rates(a, b, domain)

    ua, ub = a.uncertainty, b.uncertainty
    # kappa algebraically equals 1 when either side is vacuous; computing
    # it directly would round and break the exact-identity property
    kappa = 1.0 if (ua == 1.0 or ub == 1.0) else ua + ub - ua * ub
    if kappa <= 0.0:
        # both dogmatic: the operator's equal-weight averaging limit
        belief = {x: (a.belief_of(x) + b.belief_of(x)) / 2.0 for x in domain}
        u = 0.0
    else:
        belief = {
            x: (a.belief_of(x) * ub + b.belief_of(x) * ua) / kappa for x in domain
        }
        u = (ua * ub) / kappa
    return Opinion(hypotheses=domain, belief=belief, uncertainty=u, base_rate=base_rate)


def align_for_fusion(a: Opinion, b: Opinion) -> tuple[Opinion, Opinion]:
    """Prepare two single-source opinions for fusion.

    Wildcard-version hypotheses are mapped onto the other source's
    concrete version of the same (vendor, model) when that is unambiguous,
    and both priors are re-based uniformly over the union domain. Sources
    normalize priors over their own candidate lists, so this re-basing is
    what makes their domains comparable.
    """
    a = _absorb_wildcards(a, b)
    b = _absorb_wildcards(b, a)
    domain = _union_domain(a, b)
    if not domain:
        return a, b
    uniform = {x: 1.0 / len(domain) for x in domain}

    def extend(o: Opinion) -> Opinion:
        return Opinion(
            hypotheses=domain,
            belief={x: o.belief_of(x) for x in domain},
            uncertainty=o.uncertainty,
            base_rate=uniform,
        )

    return extend(a), extend(b)


def _absorb_wildcards(o: Opinion, other: Opinion) -> Opinion:
    mapping: dict[ModelIdentity, ModelIdentity] = {}
    for x in o.hypotheses:
        if not x.is_wildcard:
            continue
        concrete = [
            y for y in other.hypotheses
            if not y.is_wildcard and y.model_key() == x.model_key()
        ]
        if len(concrete) == 1:
            mapping[x] = concrete[0]
    if not mapping:
        return o
    belief: dict[ModelIdentity, float] = {}
    rates: dict[ModelIdentity, float] = {}
    hyps: list[ModelIdentity] = []
    for x in o.hypotheses:
        y = mapping.get(x, x)
        if y not in belief:
            hyps.append(y)
            belief[y] = 0.0
            rates[y] = 0.0
        belief[y] += o.belief_of(x)
        rates[y] += o.base_rate_of(x)
    return Opinion(
        hypotheses=tuple(hyps), belief=belief, uncertainty=o.uncertainty, base_rate=rates
    )


@dataclass(frozen=True)
class IdentityDecision:
    identity: Optional[ModelIdentity]
    confidence: Optional[float]
    projected: dict[ModelIdentity, float] = field(default_factory=dict)

    @property
    def identified(self) -> bool:
        return self.identity is not None

    def to_dict(self) -> dict:
        return {
            "identified": self.identified,
            "identity": self.identity.to_dict() if self.identity else None,
            "confidence": self.confidence,
            "projected": [
                {"identity": x.to_dict(), "probability": p}
                for x, p in sorted(self.projected.items(), key=lambda kv: -kv[1])
            ],
        }


def decide_identity(
    o: Opinion, threshold: float = 0.6, margin: float = 0.05
) -> IdentityDecision:
    """Pick the projected-probability argmax, or stay unidentified.

    Requires P(argmax) >= threshold and a lead of at least `margin` over
    the runner-up, to keep near-ties from becoming coin flips.
    """
    projected = o.projected()
    if not projected:
        return IdentityDecision(None, None, projected)
    ranked = sorted(projected.items(), key=lambda kv: (-kv[1], kv[0]))
    best, p_best = ranked[0]
    runner_up = ranked[1][1] if len(ranked) > 1 else 0.0
    if p_best >= threshold and (p_best - runner_up) >= margin:
        return IdentityDecision(best, p_best, projected)
    return IdentityDecision(None, None, projected)
