"""Kets, bras and projective classes over F5 in dimensions 2 and 4.

Two-system vectors use the subsystem-1-major index convention: component
``2*i + j`` of ``u ⊗ v`` is ``u[i] * v[j]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import DomainError, UsageError
from .field import ELEMENTS, NONZERO, ONE, ZERO, FieldElement

DIMENSIONS = (2, 4)


def _components(values: Iterable) -> tuple[FieldElement, ...]:
    comps = tuple(FieldElement(v) for v in values)
    if len(comps) not in DIMENSIONS:
        raise UsageError(f"vectors must have 2 or 4 components, got {len(comps)}")
    return comps


def format_components(comps: Sequence[FieldElement]) -> str:
    return "[" + ",".join(str(c) for c in comps) + "]"


def _parse_components(text: str) -> tuple[FieldElement, ...]:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise UsageError(f"not a vector: {text!r}")
    parts = [p for p in body[1:-1].split(",")]
    return _components(FieldElement.parse(p) for p in parts)


class _Vector:
    __slots__ = ("components",)

    def __init__(self, components: Iterable):
        comps = _components(components)
        if not any(comps):
            raise DomainError("zero vector has no projective class")
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def dim(self) -> int:
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash((type(self).__name__, self.components))

    def __str__(self):
        return format_components(self.components)

    def __repr__(self):
        return f"{type(self).__name__}({[c.value for c in self.components]})"

    def key(self) -> tuple[int, ...]:
        return tuple(c.value for c in self.components)


class Ket(_Vector):
    """A nonzero column vector over F5.

    Supports ``+``, ``-`` and scalar multiplication; an operation whose result
    would be the zero vector raises :class:`DomainError`.
    """

    __slots__ = ()

    def __add__(self, other: Ket) -> Ket:
        if not isinstance(other, Ket):
            return NotImplemented
        if other.dim != self.dim:
            raise UsageError("dimension mismatch")
        return Ket(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: Ket) -> Ket:
        if not isinstance(other, Ket):
            return NotImplemented
        return self + (-1) * other

    def __rmul__(self, scalar) -> Ket:
        s = FieldElement(scalar)
        return Ket(s * c for c in self.components)

    def __neg__(self) -> Ket:
        return (-1) * self

    def is_multiple_of(self, other: Ket) -> bool:
        return canonicalize(self) == canonicalize(other)

    @classmethod
    def parse(cls, text: str) -> Ket:
        return cls(_parse_components(text))


class Bra(_Vector):
    """A nonzero row vector (dual vector) over F5."""

    __slots__ = ()

    def __call__(self, ket: Ket) -> FieldElement:
        return pairing(self, ket)

    def __rmul__(self, scalar) -> Bra:
        s = FieldElement(scalar)
        return Bra(s * c for c in self.components)

    @classmethod
    def parse(cls, text: str) -> Bra:
        return cls(_parse_components(text))


def pairing(x: Bra, v: Ket | ProjectiveState) -> FieldElement:
    """Evaluate the bra ``x`` on the ket ``v``."""
    if isinstance(v, ProjectiveState):
        v = v.ket
    if x.dim != v.dim:
        raise UsageError(f"cannot pair a {x.dim}-bra with a {v.dim}-ket")
    total = ZERO
    for a, b in zip(x.components, v.components):
        total = total + a * b
    return total


@total_ordering
@dataclass(frozen=True)
class ProjectiveState:
    """A point of P^1(F5) or P^3(F5), stored by its leading-one representative.

    Build one with :func:`canonicalize`; the constructor only accepts vectors
    that are already canonical.
    """

    ket: Ket

    def __post_init__(self):
        lead = next(c for c in self.ket.components if c)
        if lead != ONE:
            raise UsageError(f"{self.ket} is not in canonical form")

    @property
    def dim(self) -> int:
        return self.ket.dim

    @property
    def components(self) -> tuple[FieldElement, ...]:
        return self.ket.components

    def key(self) -> tuple[int, ...]:
        return self.ket.key()

    def __lt__(self, other):
        if not isinstance(other, ProjectiveState):
            return NotImplemented
        return (self.dim, self.key()) < (other.dim, other.key())

    @property
    def name(self) -> str | None:
        """``"a"``..``"f"`` for the six elementary states, ``"a*c"`` for a
        product of them, ``None`` otherwise."""
        if self.dim == 2:
            return _NAME_OF_STATE.get(self)
        factors = factorize(self)
        if factors is None:
            return None
        return f"{factors[0].name}*{factors[1].name}"

    def __str__(self):
        return str(self.ket)

    def label(self) -> str:
        """Vector form followed by the named form when there is one."""
        n = self.name
        return str(self) if n is None else f"{self} ({n})"


def canonicalize(v: Ket | Iterable) -> ProjectiveState:
    """Scale ``v`` so its first nonzero component is 1."""
    if not isinstance(v, Ket):
        comps = _components(v)
        if not any(comps):
            raise DomainError("zero vector has no projective class")
        v = Ket(comps)
    lead = next(c for c in v.components if c)
    return ProjectiveState(lead.inverse() * v)


def dual(s: ProjectiveState | Ket, partner: ProjectiveState | Ket) -> Bra:
    """The bra that kills ``partner`` and takes the value 1 on ``s``."""
    s_ket = s.ket if isinstance(s, ProjectiveState) else s
    p_ket = partner.ket if isinstance(partner, ProjectiveState) else partner
    if s_ket.dim != 2 or p_ket.dim != 2:
        raise UsageError("dual is defined for two-component states only")
    if canonicalize(s_ket) == canonicalize(p_ket):
        raise DomainError("a state and its partner must be projectively distinct")
    p0, p1 = p_ket.components
    annihilator = Bra((p1, -p0))
    return pairing(annihilator, s_ket).inverse() * annihilator


def enumerate_states(dimension: int) -> list[ProjectiveState]:
    """Every projective class of the given dimension, lexicographically
    ordered on the canonical representative (-2 < -1 < 0 < 1 < 2)."""
    if dimension not in DIMENSIONS:
        raise UsageError(f"unsupported dimension {dimension}; use 2 or 4")
    out = []
    for comps in itertools.product(ELEMENTS, repeat=dimension):
        lead = next((c for c in comps if c), None)
        if lead == ONE:
            out.append(ProjectiveState(Ket(comps)))
    return out


def tensor(u: Ket | ProjectiveState, v: Ket | ProjectiveState) -> Ket:
    u = u.ket if isinstance(u, ProjectiveState) else u
    v = v.ket if isinstance(v, ProjectiveState) else v
    if u.dim != 2 or v.dim != 2:
        raise UsageError("tensor takes two 2-component kets")
    return Ket(a * b for a in u.components for b in v.components)


def factorize(s: ProjectiveState | Ket) -> tuple[ProjectiveState, ProjectiveState] | None:
    """Split a 4-component state as ``u ⊗ v``, or return ``None`` if it is
    entangled (the 2x2 reshaping has nonzero determinant)."""
    comps = s.components
    if len(comps) != 4:
        raise UsageError("factorize expects a 4-component state")
    w, x, y, z = comps
    if w * z - x * y:
        return None
    row0, row1 = (w, x), (y, z)
    if any(row0):
        j = 0 if row0[0] else 1
        ratio = row1[j] / row0[j]
        return canonicalize((ONE, ratio)), canonicalize(row0)
    return canonicalize((ZERO, ONE)), canonicalize(row1)


def is_product(s: ProjectiveState | Ket) -> bool:
    return factorize(s) is not None


def parse_state(text: str) -> ProjectiveState:
    """Read ``"[1,-2]"``, ``"e"``, ``"[1,0,0,2]"`` or ``"a*c"``."""
    t = text.strip()
    if t in KETS:
        return canonicalize(KETS[t])
    if "*" in t:
        left, _, right = t.partition("*")
        if left.strip() in KETS and right.strip() in KETS:
            return canonicalize(tensor(KETS[left.strip()], KETS[right.strip()]))
        raise UsageError(f"unknown product state {text!r}")
    return canonicalize(Ket.parse(t))


# The six elementary kets and their dual vectors, as listed by hand.
KETS: dict[str, Ket] = {
    "a": Ket((1, 0)),
    "b": Ket((0, 1)),
    "c": Ket((1, 1)),
    "d": Ket((1, -1)),
    "e": Ket((1, 2)),
    "f": Ket((1, -2)),
}

BRAS: dict[str, Bra] = {
    "a": Bra((1, 0)),
    "b": Bra((0, 1)),
    "c": Bra((-2, -2)),
    "d": Bra((-2, 2)),
    "e": Bra((-2, -1)),
    "f": Bra((-2, 1)),
}

NAMES = ("a", "b", "c", "d", "e", "f")

# Each elementary state paired with the one its own bra must annihilate.
PARTNER = {"a": "b", "b": "a", "c": "d", "d": "c", "e": "f", "f": "e"}

# Rows: bras a..f; columns: kets a..f.
PAIRING_TABLE: tuple[tuple[int, ...], ...] = (
    (1, 0, 1, 1, 1, 1),
    (0, 1, 1, -1, 2, -2),
    (-2, -2, 1, 0, -1, 2),
    (-2, 2, 0, 1, 2, -1),
    (-2, -1, 2, -1, 1, 0),
    (-2, 1, -1, 2, 0, 1),
)

_NAME_OF_STATE = {canonicalize(k): n for n, k in KETS.items()}


def named_state(name: str) -> ProjectiveState:
    try:
        return canonicalize(KETS[name])
    except KeyError:
        raise UsageError(f"unknown state name {name!r}") from None


def pairing_table(bras: dict[str, Bra] | None = None, kets: dict[str, Ket] | None = None):
    """Compute the 6x6 table of bra-on-ket values as plain ints."""
    bras = BRAS if bras is None else bras
    kets = KETS if kets is None else kets
    return tuple(
        tuple(pairing(bras[r], kets[c]).value for c in NAMES) for r in NAMES
    )


__all__ = [
    "BRAS", "Bra", "KETS", "Ket", "NAMES", "NONZERO", "PAIRING_TABLE", "PARTNER",
    "ProjectiveState", "canonicalize", "dual", "enumerate_states", "factorize",
    "format_components", "is_product", "named_state", "pairing", "pairing_table",
    "parse_state", "tensor",
]
