"""Observables, measurement statistics and collapse in F5 quantum mechanics.

Probabilities use the 0/1 absolute value on F5: an outcome's weight is 1 when
the corresponding bra does not annihilate the state and 0 when it does.
All probabilities are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import DomainError, UsageError
from .field import FieldElement, abs_norm
from .projective import (
    BRAS,
    Bra,
    Ket,
    ProjectiveState,
    canonicalize,
    enumerate_states,
    is_product,
    pairing,
    tensor,
)

OUTCOMES = (1, -1)
SUBSYSTEMS = (1, 2)


@dataclass(frozen=True)
class Observable:
    name: str
    plus_bra: Bra
    minus_bra: Bra

    def bra(self, outcome: int) -> Bra:
        _check_outcome(outcome)
        return self.plus_bra if outcome == 1 else self.minus_bra

    def __str__(self):
        return self.name


X = Observable("X", BRAS["c"], BRAS["d"])
Y = Observable("Y", BRAS["e"], BRAS["f"])
Z = Observable("Z", BRAS["a"], BRAS["b"])
OBSERVABLES: dict[str, Observable] = {"X": X, "Y": Y, "Z": Z}


def observable(name: str) -> Observable:
    try:
        return OBSERVABLES[name.strip().upper()]
    except (KeyError, AttributeError):
        raise UsageError(f"unknown observable {name!r}; use X, Y or Z") from None


def _check_outcome(outcome: int) -> None:
    if outcome not in OUTCOMES:
        raise UsageError(f"outcome must be +1 or -1, got {outcome!r}")


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact two-outcome distribution; index with ``+1`` or ``-1``."""

    p_plus: Fraction
    p_minus: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p_plus", Fraction(self.p_plus))
        object.__setattr__(self, "p_minus", Fraction(self.p_minus))
        if self.p_plus + self.p_minus != 1 or min(self.p_plus, self.p_minus) < 0:
            raise ValueError(f"not a distribution: ({self.p_plus}, {self.p_minus})")

    @classmethod
    def from_weights(cls, w_plus: int, w_minus: int) -> OutcomeDistribution:
        total = w_plus + w_minus
        return cls(Fraction(w_plus, total), Fraction(w_minus, total))

    def __getitem__(self, outcome: int) -> Fraction:
        _check_outcome(outcome)
        return self.p_plus if outcome == 1 else self.p_minus

    def as_tuple(self) -> tuple[Fraction, Fraction]:
        return (self.p_plus, self.p_minus)

    def __str__(self):
        return f"(+1: {self.p_plus}, -1: {self.p_minus})"


def measure_prob(o: Observable, s: ProjectiveState | Ket) -> OutcomeDistribution:
    """Outcome distribution of ``o`` on a single-system state.

    The denominator cannot vanish: two independent bras never both kill a
    nonzero 2-vector.
    """
    w_plus = abs_norm(pairing(o.plus_bra, s))
    w_minus = abs_norm(pairing(o.minus_bra, s))
    return OutcomeDistribution.from_weights(w_plus, w_minus)


def eigenket(o: Observable, outcome: int) -> ProjectiveState:
    """The state killed by the opposite outcome's bra."""
    other = o.bra(-outcome)
    p, q = other.components
    return canonicalize((-q, p))


def superpose(u: ProjectiveState, coeff: FieldElement | int, v: ProjectiveState) -> ProjectiveState:
    """``rep(u) + coeff * rep(v)`` on canonical representatives."""
    coeff = FieldElement(coeff)
    if not coeff:
        raise DomainError("superposition coefficient must be nonzero")
    if u.dim != v.dim:
        raise UsageError("cannot superpose states of different dimension")
    raw = [a + coeff * b for a, b in zip(u.components, v.components)]
    if not any(raw):
        raise DomainError("zero superposition")
    return canonicalize(raw)


def joint_prob(o1: Observable, o2: Observable, psi: ProjectiveState | Ket) -> dict[tuple[int, int], Fraction]:
    """Joint distribution of measuring ``o1`` on system 1 and ``o2`` on system 2."""
    weights = {
        (s, t): abs_norm(pairing(Bra(tensor(Ket(o1.bra(s)), Ket(o2.bra(t)))), psi))
        for s in OUTCOMES
        for t in OUTCOMES
    }
    total = sum(weights.values())
    return {k: Fraction(w, total) for k, w in weights.items()}


def residual(psi: ProjectiveState | Ket, subsystem: int, x: Bra) -> tuple[FieldElement, FieldElement]:
    """Apply ``x`` to one tensor factor of ``psi``; the result lives on the
    other subsystem and may be zero."""
    comps = psi.components
    if len(comps) != 4:
        raise UsageError("residual expects a 4-component state")
    x0, x1 = x.components
    if subsystem == 1:
        return (x0 * comps[0] + x1 * comps[2], x0 * comps[1] + x1 * comps[3])
    if subsystem == 2:
        return (x0 * comps[0] + x1 * comps[1], x0 * comps[2] + x1 * comps[3])
    raise UsageError(f"subsystem must be 1 or 2, got {subsystem!r}")


def _collapse_weights(psi, subsystem, o):
    return {
        outcome: residual(psi, subsystem, o.bra(outcome)) for outcome in OUTCOMES
    }


def subsystem_collapse(
    psi: ProjectiveState, subsystem: int, o: Observable, outcome: int
) -> tuple[Fraction, ProjectiveState]:
    """Measure ``o`` on one subsystem of ``psi`` and return the probability of
    ``outcome`` together with the (product) post-measurement state."""
    _check_outcome(outcome)
    residuals = _collapse_weights(psi, subsystem, o)
    weights = {k: (1 if any(r) else 0) for k, r in residuals.items()}
    if not weights[outcome]:
        raise DomainError("impossible outcome")
    prob = Fraction(weights[outcome], sum(weights.values()))
    r = Ket(residuals[outcome])
    e = eigenket(o, outcome)
    post = tensor(e, r) if subsystem == 1 else tensor(r, e)
    return prob, canonicalize(post)


ProfileKey = tuple[int, str, int]


@dataclass(frozen=True)
class CollapseProfile:
    """Outcome probabilities and post-states for every single-subsystem
    measurement. Keys are ``(subsystem, observable name, outcome)``;
    impossible outcomes are absent."""

    entries: Mapping[ProfileKey, tuple[Fraction, ProjectiveState]]

    def __eq__(self, other):
        if not isinstance(other, CollapseProfile):
            return NotImplemented
        return dict(self.entries) == dict(other.entries)

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __iter__(self) -> Iterator[ProfileKey]:
        return iter(sorted(self.entries, key=_profile_sort_key))

    def __getitem__(self, key: ProfileKey):
        return self.entries[key]

    def setting(self, subsystem: int, name: str) -> dict[int, tuple[Fraction, ProjectiveState]]:
        return {
            k[2]: v for k, v in self.entries.items() if k[0] == subsystem and k[1] == name
        }

    def post_states(self, subsystem: int, name: str) -> set[ProjectiveState]:
        return {post for _, post in self.setting(subsystem, name).values()}

    def to_dict(self) -> dict[str, dict]:
        out = {}
        for key in self:
            prob, post = self.entries[key]
            out[profile_key_str(key)] = {
                "probability": str(prob),
                "post": str(post),
                "post_name": post.name,
            }
        return out


def _profile_sort_key(key: ProfileKey):
    return (key[0], key[1], -key[2])


def profile_key_str(key: ProfileKey) -> str:
    sub, name, outcome = key
    return f"sys{sub}.{name}.{'+1' if outcome == 1 else '-1'}"


def collapse_profile(psi: ProjectiveState) -> CollapseProfile:
    entries = {}
    for sub in SUBSYSTEMS:
        for name, o in OBSERVABLES.items():
            for outcome in OUTCOMES:
                try:
                    entries[(sub, name, outcome)] = subsystem_collapse(psi, sub, o, outcome)
                except DomainError:
                    continue
    return CollapseProfile(entries)


def marginal_disagreements(states=None):
    """Cases where the collapse rule and the marginal of :func:`joint_prob`
    assign different probabilities to a single-subsystem outcome.

    The two rules are independent definitions; nothing forces them to agree
    on entangled states. Yields ``(psi, subsystem, measured, other, collapse
    distribution, marginal distribution)``.
    """
    states = enumerate_states(4) if states is None else states
    for psi in states:
        for sub in SUBSYSTEMS:
            for name, o in OBSERVABLES.items():
                residuals = _collapse_weights(psi, sub, o)
                collapse = OutcomeDistribution.from_weights(
                    *(1 if any(residuals[k]) else 0 for k in OUTCOMES)
                )
                for other_name, other in OBSERVABLES.items():
                    joint = joint_prob(o, other, psi) if sub == 1 else joint_prob(other, o, psi)
                    if sub == 1:
                        p_plus = joint[(1, 1)] + joint[(1, -1)]
                    else:
                        p_plus = joint[(1, 1)] + joint[(-1, 1)]
                    marginal = OutcomeDistribution(p_plus, 1 - p_plus)
                    if marginal != collapse:
                        yield psi, sub, name, other_name, collapse, marginal


def is_entangled(psi: ProjectiveState) -> bool:
    return not is_product(psi)
