"""Verdicts, errors, capacity limits and bitmask helpers shared by every module."""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
import enum
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator


class Status(str, enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    UNSUPPORTED = "UNSUPPORTED"
    UNDECIDED = "UNDECIDED"


class ConstructionError(ValueError):
    """An explicit table or action violates an algebraic axiom."""


class CapacityError(RuntimeError):
    """A configured size cap would be exceeded."""

    def __init__(self, cap: str, limit: int, actual: int | None = None):
        self.cap = cap
        self.limit = limit
        self.actual = actual
        msg = f"{cap} cap exceeded (limit {limit}"
        msg += f", got {actual})" if actual is not None else ")"
        super().__init__(msg)


@dataclass(frozen=True)
class Caps:
    ring_construction: int = 256
    ring_decider: int = 64
    ideal_count: int = 4096
    module_order: int = 64
    submodule_count: int = 4096
    hom_count: int = 65536
    quasi_injective_order: int = 32
    isomorphism_order: int = 16


_CAPS: contextvars.ContextVar[Caps] = contextvars.ContextVar("rickartlab_caps", default=Caps())


def current_caps() -> Caps:
    return _CAPS.get()


@contextlib.contextmanager
def using_caps(**overrides: int) -> Iterator[Caps]:
    """Temporarily override caps for the current context (thread/task local)."""
    caps = dataclasses.replace(_CAPS.get(), **overrides)
    token = _CAPS.set(caps)
    try:
        yield caps
    finally:
        _CAPS.reset(token)


def check_cap(name: str, actual: int) -> None:
    limit = getattr(current_caps(), name)
    if actual > limit:
        raise CapacityError(name, limit, actual)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decider.

    ``witness`` is the canonical (first in deterministic scan order)
    counterexample for FAILS; ``witnesses`` holds every counterexample when the
    decider ran in exhaustive mode. ``certificate`` optionally backs a HOLDS.
    """

    property: str
    status: Status
    witness: Any = None
    witnesses: tuple = ()
    certificate: Any = None
    reason: str = ""

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    def __str__(self) -> str:
        s = f"{self.property}: {self.status.value}"
        if self.reason:
            s += f" ({self.reason})"
        return s


def run_decider(prop: str, failures: Iterable[Any], all_witnesses: bool = False,
                certificate: Any = None) -> Verdict:
    """Drain a counterexample generator into a verdict.

    The generator is consumed lazily, so in the default mode the scan stops at
    the first counterexample. Capacity overruns become UNSUPPORTED.
    """
    found = []
    try:
        for w in failures:
            found.append(w)
            if not all_witnesses:
                break
    except CapacityError as exc:
        return Verdict(prop, Status.UNSUPPORTED, reason=str(exc))
    if found:
        return Verdict(prop, Status.FAILS, witness=found[0], witnesses=tuple(found))
    cert = certificate() if callable(certificate) else certificate
    return Verdict(prop, Status.HOLDS, certificate=cert)


# bitmask helpers: element index i <-> bit 1 << i

def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        out.append(i)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class IndexSet:
    """A set of element indices stored as a bitmask, with the generators it was closed from."""

    members: int
    generators: tuple = field(default=(), compare=False)

    @property
    def elements(self) -> list[int]:
        return bits(self.members)

    @property
    def size(self) -> int:
        return self.members.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool(self.members >> i & 1)

    def __le__(self, other: "IndexSet") -> bool:  # type: ignore[override]
        return self.members & ~other.members == 0

    def __lt__(self, other: "IndexSet") -> bool:
        return self <= other and self.members != other.members

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(bits(self.members))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.elements})"
