"""Dictionary between Spekkens' epistemic states and F5 states, sums induced
by F5 linearity, and the search for F5 analogs of entangled epistemic states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import f5qm, spekkens
from .errors import DomainError, UsageError
from .f5qm import CollapseProfile, collapse_profile
from .field import FieldElement
from .projective import (
    KETS,
    Ket,
    ProjectiveState,
    canonicalize,
    enumerate_states,
    factorize,
    is_product,
    named_state,
    tensor,
)
from .spekkens import Entangled, EpistemicState, Product

SCHEMA = "toyqm-report/1"

NAME_OF_EPISTEMIC: dict[EpistemicState, str] = {
    EpistemicState(1, 2): "a",
    EpistemicState(3, 4): "b",
    EpistemicState(1, 3): "c",
    EpistemicState(2, 4): "d",
    EpistemicState(2, 3): "e",
    EpistemicState(1, 4): "f",
}
EPISTEMIC_OF_NAME = {n: e for e, n in NAME_OF_EPISTEMIC.items()}

# Coefficient on the second operand for each sum variant +1..+4.
VARIANT_COEFFICIENTS: dict[int, int] = {1: 1, 2: -1, 3: 2, 4: -2}


def ket_of(e: EpistemicState | Product) -> ProjectiveState:
    if isinstance(e, Product):
        return canonicalize(tensor(ket_of(e.first), ket_of(e.second)))
    return named_state(NAME_OF_EPISTEMIC[e])


def epistemic_of(s: ProjectiveState) -> EpistemicState | Product:
    """Inverse dictionary; product 4-component states map to ``Product``."""
    if s.dim == 2:
        name = s.name
        if name is None:
            raise DomainError(f"{s} is not one of the six elementary states")
        return EPISTEMIC_OF_NAME[name]
    factors = factorize(s)
    if factors is None:
        raise DomainError("no product-state image")
    return Product(epistemic_of(factors[0]), epistemic_of(factors[1]))


def f5_observable(o: spekkens.SpekkensObservable) -> f5qm.Observable:
    return f5qm.OBSERVABLES[o.name]


def _coefficient(variant: int) -> int:
    try:
        return VARIANT_COEFFICIENTS[variant]
    except KeyError:
        raise UsageError(f"sum variant must be 1..4, got {variant!r}") from None


def raw_sum(e1: EpistemicState, variant: int, e2: EpistemicState) -> Ket:
    """``ket(e1) + coeff * ket(e2)`` on the listed representatives, before any
    rescaling."""
    lam = _coefficient(variant)
    k1 = KETS[NAME_OF_EPISTEMIC[e1]]
    k2 = KETS[NAME_OF_EPISTEMIC[e2]]
    comps = [a + lam * b for a, b in zip(k1, k2)]
    if not any(comps):
        raise DomainError("zero superposition")
    return Ket(comps)


def extended_sum(e1: EpistemicState, variant: int, e2: EpistemicState) -> EpistemicState:
    """Sum of any two epistemic states, computed through F5 superposition."""
    lam = _coefficient(variant)
    return epistemic_of(f5qm.superpose(ket_of(e1), lam, ket_of(e2)))


@dataclass(frozen=True)
class SumComparison:
    left: EpistemicState
    right: EpistemicState
    variant: int
    disjoint_sum: EpistemicState
    f5_sum: EpistemicState

    @property
    def agree(self) -> bool:
        return self.disjoint_sum == self.f5_sum

    def to_dict(self) -> dict:
        return {
            "left": str(self.left),
            "right": str(self.right),
            "variant": self.variant,
            "disjoint_sum": str(self.disjoint_sum),
            "f5_sum": str(self.f5_sum),
            "agree": self.agree,
        }


def compare_sum_definitions() -> list[SumComparison]:
    """Every ordered disjoint pair x every variant, Spekkens' rule vs F5."""
    rows = []
    for e1 in spekkens.epistemic_states():
        e2 = e1.disjoint()
        for variant in (1, 2, 3, 4):
            rows.append(
                SumComparison(
                    e1, e2, variant,
                    spekkens.sum_disjoint(e1, e2, variant),
                    extended_sum(e1, variant, e2),
                )
            )
    return rows


def spekkens_profile(state: Entangled | Product) -> CollapseProfile:
    """Collapse behaviour of a pair epistemic state, written in F5 terms."""
    entries = {}
    for sub in f5qm.SUBSYSTEMS:
        for name, o in spekkens.OBSERVABLES.items():
            for outcome, prob, collapsed in spekkens.measure_pair(state, sub, o):
                entries[(sub, name, outcome)] = (prob, ket_of(collapsed))
    return CollapseProfile(entries)


def entangled_f5_states() -> list[ProjectiveState]:
    return [s for s in enumerate_states(4) if not is_product(s)]


def _profiles(candidates: Iterable[ProjectiveState]) -> dict[ProjectiveState, CollapseProfile]:
    return {s: collapse_profile(s) for s in candidates}


def find_f5_analogs(
    state: Entangled,
    candidates: Iterable[ProjectiveState] | None = None,
    _profiles_cache: dict[ProjectiveState, CollapseProfile] | None = None,
) -> list[ProjectiveState]:
    """Entangled F5 states whose collapse profile equals that of ``state``."""
    if _profiles_cache is None:
        cands = entangled_f5_states() if candidates is None else list(candidates)
        _profiles_cache = _profiles(cands)
    target = spekkens_profile(state)
    return sorted(s for s, prof in _profiles_cache.items() if prof == target)


@dataclass(frozen=True)
class ClassificationRecord:
    state: Entangled
    analogs: tuple[ProjectiveState, ...]
    profile: CollapseProfile

    @property
    def matched(self) -> bool:
        return bool(self.analogs)

    def to_dict(self) -> dict:
        return {
            "perm": str(self.state),
            "sign": self.state.sign,
            "matched": self.matched,
            "analogs": [[c.value for c in s.components] for s in self.analogs],
            "profile": self.profile.to_dict(),
        }


@dataclass(frozen=True)
class ClassificationReport:
    records: tuple[ClassificationRecord, ...]

    @property
    def matched(self) -> list[ClassificationRecord]:
        return [r for r in self.records if r.matched]

    @property
    def unmatched(self) -> list[ClassificationRecord]:
        return [r for r in self.records if not r.matched]

    def record(self, perm) -> ClassificationRecord:
        perm = spekkens.parse_permutation(perm) if isinstance(perm, str) else tuple(perm)
        return next(r for r in self.records if r.state.perm == perm)

    @property
    def matched_are_odd(self) -> bool:
        """Whether the matched set is exactly the odd permutations."""
        return {r.state.perm for r in self.matched} == {
            r.state.perm for r in self.records if r.state.sign == -1
        }

    def analog_overlaps(self) -> list[tuple[str, str, ProjectiveState]]:
        """F5 states claimed as analogs by more than one permutation."""
        seen: dict[ProjectiveState, str] = {}
        overlaps = []
        for r in self.records:
            for s in r.analogs:
                if s in seen:
                    overlaps.append((seen[s], str(r.state), s))
                else:
                    seen[s] = str(r.state)
        return overlaps

    def summary(self) -> dict:
        counts = sorted({len(r.analogs) for r in self.matched})
        return {
            "total": len(self.records),
            "matched": len(self.matched),
            "unmatched": len(self.unmatched),
            "matched_are_odd_permutations": self.matched_are_odd,
            "analogs_per_matched": counts,
            "analog_overlaps": len(self.analog_overlaps()),
        }

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "report": "classification",
            "summary": self.summary(),
            "records": [r.to_dict() for r in self.records],
        }


def classify_all(candidates: Iterable[ProjectiveState] | None = None) -> ClassificationReport:
    cands = entangled_f5_states() if candidates is None else list(candidates)
    profiles = _profiles(cands)
    _, entangled = spekkens.pair_states()
    records = tuple(
        ClassificationRecord(
            state,
            tuple(find_f5_analogs(state, _profiles_cache=profiles)),
            spekkens_profile(state),
        )
        for state in entangled
    )
    return ClassificationReport(records)


def product_superposition_witness(
    s: ProjectiveState,
) -> tuple[ProjectiveState, FieldElement, ProjectiveState] | None:
    """Find product states ``p``, ``q`` with no common tensor factor and a
    scalar ``lam`` such that ``s`` is projectively ``p + lam*q``."""
    singles = enumerate_states(2)
    products = [(u, v, canonicalize(tensor(u, v))) for u in singles for v in singles]
    for u1, v1, p in products:
        for u2, v2, q in products:
            if u1 == u2 or v1 == v2:
                continue
            for lam in (1, -1, 2, -2):
                comps = [x + lam * y for x, y in zip(p.components, q.components)]
                if any(comps) and canonicalize(comps) == s:
                    return p, FieldElement(lam), q
    return None


__all__ = [
    "ClassificationRecord", "ClassificationReport", "EPISTEMIC_OF_NAME", "NAME_OF_EPISTEMIC",
    "SCHEMA", "SumComparison", "VARIANT_COEFFICIENTS", "classify_all",
    "compare_sum_definitions", "entangled_f5_states", "epistemic_of", "extended_sum",
    "f5_observable", "find_f5_analogs", "ket_of", "product_superposition_witness",
    "raw_sum", "spekkens_profile",
]

