"""Spekkens' toy model for one and two elementary systems.

An elementary system has four ontic states labelled 1..4. An epistemic state
is a two-element subset of those labels, written ``1v2``. Two-system
epistemic states are either products ``1v2|1v3`` or permutation patterns
``perm:2134`` (label i of system 1 paired with label perm(i) of system 2).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import DomainError, UsageError
from .f5qm import OUTCOMES, OutcomeDistribution

ONTIC_STATES = (1, 2, 3, 4)


def _check_label(x: int) -> int:
    if x not in ONTIC_STATES:
        raise UsageError(f"ontic labels run from 1 to 4, got {x!r}")
    return x


@dataclass(frozen=True, order=True)
class EpistemicState:
    """Knowledge that the ontic state is one of ``a`` or ``b`` (stored a < b)."""

    a: int
    b: int

    def __post_init__(self):
        a, b = _check_label(self.a), _check_label(self.b)
        if a == b:
            raise DomainError("an epistemic state needs two distinct ontic labels")
        if a > b:
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)

    @property
    def support(self) -> frozenset[int]:
        return frozenset((self.a, self.b))

    def __iter__(self):
        return iter((self.a, self.b))

    def __contains__(self, ontic: int) -> bool:
        return ontic in (self.a, self.b)

    def disjoint(self) -> EpistemicState:
        return EpistemicState(*sorted(set(ONTIC_STATES) - self.support))

    def is_disjoint(self, other: EpistemicState) -> bool:
        return not (self.support & other.support)

    def __str__(self):
        return f"{self.a}v{self.b}"

    @classmethod
    def parse(cls, text: str) -> EpistemicState:
        parts = text.strip().lower().split("v")
        if len(parts) != 2:
            raise UsageError(f"epistemic states look like '1v2', got {text!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise UsageError(f"epistemic states look like '1v2', got {text!r}") from None
        try:
            return cls(a, b)
        except DomainError as exc:
            raise UsageError(str(exc)) from None


@dataclass(frozen=True)
class SpekkensObservable:
    name: str
    plus: EpistemicState
    minus: EpistemicState

    def __post_init__(self):
        if not self.plus.is_disjoint(self.minus):
            raise DomainError("observable supports must partition {1,2,3,4}")

    def eigenstate(self, outcome: int) -> EpistemicState:
        if outcome not in OUTCOMES:
            raise UsageError(f"outcome must be +1 or -1, got {outcome!r}")
        return self.plus if outcome == 1 else self.minus

    def __str__(self):
        return self.name


X = SpekkensObservable("X", EpistemicState(1, 3), EpistemicState(2, 4))
Y = SpekkensObservable("Y", EpistemicState(2, 3), EpistemicState(1, 4))
Z = SpekkensObservable("Z", EpistemicState(1, 2), EpistemicState(3, 4))
OBSERVABLES: dict[str, SpekkensObservable] = {"X": X, "Y": Y, "Z": Z}


def observable(name: str) -> SpekkensObservable:
    try:
        return OBSERVABLES[name.strip().upper()]
    except (KeyError, AttributeError):
        raise UsageError(f"unknown observable {name!r}; use X, Y or Z") from None


def epistemic_states() -> list[EpistemicState]:
    """The six epistemic states, grouped in disjoint pairs Z, X, Y."""
    return [s for o in (Z, X, Y) for s in (o.plus, o.minus)]


def measure_epistemic(o: SpekkensObservable, e: EpistemicState) -> OutcomeDistribution:
    p_plus = Fraction(len(e.support & o.plus.support), 2)
    return OutcomeDistribution(p_plus, 1 - p_plus)


def ontic_outcome(o: SpekkensObservable, ontic: int) -> int:
    return 1 if _check_label(ontic) in o.plus else -1


def ontic_update(o: SpekkensObservable, outcome: int, rng: random.Random) -> int:
    """Resample the ontic state uniformly from the outcome's support."""
    return rng.choice(tuple(o.eigenstate(outcome)))


def collapse_epistemic(o: SpekkensObservable, outcome: int) -> EpistemicState:
    return o.eigenstate(outcome)


# -- sequences of measurements ----------------------------------------------


def sequence_prediction(
    initial: EpistemicState, observables: Sequence[SpekkensObservable]
) -> list[OutcomeDistribution]:
    """Exact marginal outcome distribution at each step, by propagating the
    ontic distribution through the update rule."""
    dist = {x: Fraction(1, 2) if x in initial else Fraction(0) for x in ONTIC_STATES}
    out = []
    for o in observables:
        p_plus = sum(p for x, p in dist.items() if x in o.plus)
        out.append(OutcomeDistribution(p_plus, 1 - p_plus))
        new = dict.fromkeys(ONTIC_STATES, Fraction(0))
        for outcome, p in ((1, p_plus), (-1, 1 - p_plus)):
            for x in o.eigenstate(outcome):
                new[x] += p / 2
        dist = new
    return out


def repeat_agreement(o: SpekkensObservable) -> Fraction:
    """Exact probability that measuring ``o`` twice in a row gives the same
    outcome, starting from the uniform ontic distribution."""
    agree = Fraction(0)
    for x in ONTIC_STATES:
        first = ontic_outcome(o, x)
        for y in o.eigenstate(first):
            agree += Fraction(1, 4) * Fraction(1, 2) * (ontic_outcome(o, y) == first)
    return agree


def run_trial(
    initial: EpistemicState, observables: Sequence[SpekkensObservable], rng: random.Random
) -> list[tuple[int, int, EpistemicState]]:
    """One run of a measurement sequence.

    Returns ``(outcome, ontic after update, tracked epistemic state)`` per
    step. Raises ``AssertionError`` if the tracked knowledge ever fails the
    knowledge-balance check.
    """
    ontic = rng.choice(tuple(initial))
    knowledge = initial
    steps = []
    for o in observables:
        outcome = ontic_outcome(o, ontic)
        ontic = ontic_update(o, outcome, rng)
        knowledge = collapse_epistemic(o, outcome)
        assert len(knowledge.support) == 2 and ontic in knowledge, "knowledge balance violated"
        steps.append((outcome, ontic, knowledge))
    return steps


@dataclass
class SimulationResult:
    initial: EpistemicState
    observables: list[SpekkensObservable]
    trials: int
    seed: int | None
    counts: list[dict[int, int]] = field(default_factory=list)
    # repeats[k] counts trials whose step k outcome equals step k-1's; None
    # unless step k re-measures the observable of step k-1
    repeats: list[int | None] = field(default_factory=list)

    def frequencies(self, step: int) -> dict[int, float]:
        return {k: v / self.trials for k, v in self.counts[step].items()}

    def repeat_frequency(self, step: int) -> float | None:
        r = self.repeats[step]
        return None if r is None else r / self.trials

    def predictions(self) -> list[OutcomeDistribution]:
        return sequence_prediction(self.initial, self.observables)


def simulate_sequence(
    initial: EpistemicState,
    observables: Sequence[SpekkensObservable],
    trials: int,
    seed: int | None = None,
) -> SimulationResult:
    """Monte Carlo run of ``trials`` independent measurement sequences."""
    if trials < 1:
        raise UsageError("trials must be at least 1")
    observables = list(observables)
    rng = random.Random(seed)
    counts = [{1: 0, -1: 0} for _ in observables]
    repeats: list[int | None] = [
        0 if k and observables[k] == observables[k - 1] else None for k in range(len(observables))
    ]
    for _ in range(trials):
        steps = run_trial(initial, observables, rng)
        for k, (outcome, _, _) in enumerate(steps):
            counts[k][outcome] += 1
            if repeats[k] is not None and outcome == steps[k - 1][0]:
                repeats[k] += 1
    return SimulationResult(initial, observables, trials, seed, counts, repeats)


# -- two elementary systems -------------------------------------------------


@dataclass(frozen=True)
class Product:
    first: EpistemicState
    second: EpistemicState

    @property
    def support(self) -> frozenset[tuple[int, int]]:
        return frozenset(itertools.product(self.first, self.second))

    def __str__(self):
        return f"{self.first}|{self.second}"


@dataclass(frozen=True)
class Entangled:
    """``perm[i-1]`` is the system-2 label correlated with system-1 label i."""

    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(self.perm)
        if sorted(perm) != list(ONTIC_STATES):
            raise UsageError(f"not a permutation of 1..4: {self.perm!r}")
        object.__setattr__(self, "perm", perm)

    def image(self, labels) -> frozenset[int]:
        return frozenset(self.perm[i - 1] for i in labels)

    def preimage(self, labels) -> frozenset[int]:
        return frozenset(i for i in ONTIC_STATES if self.perm[i - 1] in labels)

    @property
    def support(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, self.perm[i - 1]) for i in ONTIC_STATES)

    @property
    def sign(self) -> int:
        inversions = sum(
            1 for i, j in itertools.combinations(range(4), 2) if self.perm[i] > self.perm[j]
        )
        return -1 if inversions % 2 else 1

    def grid(self, filled: str = "#", empty: str = ".") -> list[str]:
        """Rows are system-1 labels, columns system-2 labels."""
        return [
            " ".join(filled if self.perm[i - 1] == j else empty for j in ONTIC_STATES)
            for i in ONTIC_STATES
        ]

    def __str__(self):
        return "perm:" + "".join(str(x) for x in self.perm)


PairEpistemicState = Union[Product, Entangled]


def parse_pair_state(text: str) -> PairEpistemicState:
    t = text.strip()
    if t.lower().startswith("perm:"):
        digits = t[5:]
        if len(digits) != 4 or not digits.isdigit():
            raise UsageError(f"entangled states look like 'perm:2134', got {text!r}")
        return Entangled(tuple(int(c) for c in digits))
    left, sep, right = t.partition("|")
    if not sep:
        raise UsageError(f"pair states look like '1v2|1v3' or 'perm:2134', got {text!r}")
    return Product(EpistemicState.parse(left), EpistemicState.parse(right))


def pair_states() -> tuple[list[Product], list[Entangled]]:
    singles = epistemic_states()
    products = [Product(e1, e2) for e1 in singles for e2 in singles]
    entangled = [Entangled(p) for p in itertools.permutations(ONTIC_STATES)]
    return products, entangled


def _epistemic(labels) -> EpistemicState:
    return EpistemicState(*sorted(labels))


def measure_pair(
    state: PairEpistemicState, subsystem: int, o: SpekkensObservable
) -> list[tuple[int, Fraction, Product]]:
    """Measure ``o`` on one system of a pair.

    Returns ``(outcome, probability, collapsed product state)`` for each
    outcome with nonzero probability. Only knowledge of the unmeasured system
    changes; its ontic state is not disturbed.
    """
    if subsystem not in (1, 2):
        raise UsageError(f"subsystem must be 1 or 2, got {subsystem!r}")
    support = state.support
    results = []
    for outcome in OUTCOMES:
        eig = o.eigenstate(outcome)
        hits = sum(1 for pair in support if pair[subsystem - 1] in eig)
        if not hits:
            continue
        prob = Fraction(hits, len(support))
        if isinstance(state, Product):
            other = state.second if subsystem == 1 else state.first
        elif subsystem == 1:
            other = _epistemic(state.image(eig))
        else:
            other = _epistemic(state.preimage(eig))
        collapsed = Product(eig, other) if subsystem == 1 else Product(other, eig)
        results.append((outcome, prob, collapsed))
    return results


# -- coherent sums and relabelling --------------------------------------------


def sum_disjoint(e1: EpistemicState, e2: EpistemicState, variant: int) -> EpistemicState:
    """The four order-sensitive sums of disjoint states ``(a v b) +k (c v d)``:
    1 -> a v c, 2 -> b v d, 3 -> b v c, 4 -> a v d."""
    if variant not in (1, 2, 3, 4):
        raise UsageError(f"sum variant must be 1..4, got {variant!r}")
    if not e1.is_disjoint(e2):
        raise DomainError("sum undefined for non-disjoint states")
    a, b = e1
    c, d = e2
    return EpistemicState(*{1: (a, c), 2: (b, d), 3: (b, c), 4: (a, d)}[variant])


def parse_permutation(text: str) -> tuple[int, ...]:
    t = text.strip()
    if t.lower().startswith("perm:"):
        t = t[5:]
    if len(t) != 4 or sorted(t) != list("1234"):
        raise UsageError(f"not a permutation of 1..4: {text!r}")
    return tuple(int(c) for c in t)


def relabel(perm: Sequence[int], x):
    """Apply the relabelling ``i -> perm[i-1]`` to every ontic label in ``x``.

    Works on ontic labels, epistemic states, observables, and pair states.
    A relabelled observable keeps the name of the standard observable with
    the same outcome supports, prefixed with ``-`` when the outcomes swap.
    """
    perm = Entangled(tuple(perm)).perm

    def img(i: int) -> int:
        return perm[i - 1]

    if isinstance(x, int):
        return img(_check_label(x))
    if isinstance(x, EpistemicState):
        return EpistemicState(img(x.a), img(x.b))
    if isinstance(x, SpekkensObservable):
        plus, minus = relabel(perm, x.plus), relabel(perm, x.minus)
        name = next(
            (n if o.plus == plus else "-" + n)
            for n, o in OBSERVABLES.items()
            if {o.plus, o.minus} == {plus, minus}
        )
        return SpekkensObservable(name, plus, minus)
    if isinstance(x, Product):
        return Product(relabel(perm, x.first), relabel(perm, x.second))
    if isinstance(x, Entangled):
        new = [0] * 4
        for i in ONTIC_STATES:
            new[img(i) - 1] = img(x.perm[i - 1])
        return Entangled(tuple(new))
    raise TypeError(f"cannot relabel {type(x).__name__}")
