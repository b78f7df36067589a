"""The endomorphism ring ``S = End_R(M)`` as a :class:`FiniteRing`, and module/ring correspondence reports.

Multiplication in ``S`` is composition with ``(f * g)(m) = f(g(m))``. For a
right module this makes ``End(R_R)`` isomorphic to ``R`` through left
multiplications.

Reports compute every side independently and compare; they never assume a
conclusion. A disagreement is reported as ``THEOREM_VIOLATION``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._core import check_cap
from .finmod import FiniteModule, Homomorphism, identity, is_essential
from .finring import (FiniteRing, RightIdeal, decide_ring_property, jacobson_radical, mask_of,
                      quotient_ring)
from .modprops import decide_module_property, local_retraction


@dataclass(frozen=True)
class EndoRing:
    ring: FiniteRing
    carrier: tuple[Homomorphism, ...]
    module: FiniteModule

    def index_of(self, f: Homomorphism) -> int:
        return self._lookup[f.images]

    @property
    def _lookup(self) -> dict:
        return {f.images: i for i, f in enumerate(self.carrier)}


def endomorphism_ring(M: FiniteModule) -> EndoRing:
    homs = tuple(M.endomorphisms)
    check_cap("ring_construction", len(homs))
    lookup = {f.images: i for i, f in enumerate(homs)}
    add = [[lookup[(f + g).images] for g in homs] for f in homs]
    mul = [[lookup[tuple(f.table[y] for y in g.images)] for g in homs] for f in homs]
    zero = lookup[(0,) * len(M.orders)]
    one = lookup[identity(M).images]
    S = FiniteRing(add, mul, zero, one, f"End({M.label})")
    E = EndoRing(S, homs, M)
    _check_faithful(E)
    return E


def _check_faithful(E: EndoRing) -> None:
    """Ring tables agree with pointwise sum and composition on every element of ``M``."""
    S, homs, M = E.ring, E.carrier, E.module
    if not homs[S.one].images == identity(M).images:
        raise AssertionError("ring identity is not the identity endomorphism")
    for a, f in enumerate(homs):
        for b, g in enumerate(homs):
            fg, fpg = homs[S.mul[a][b]].table, homs[S.add[a][b]].table
            for m in range(M.size):
                if fg[m] != f.table[g.table[m]] or fpg[m] != M.add[f.table[m]][g.table[m]]:
                    raise AssertionError(f"End tables disagree with maps at ({a}, {b}, {m})")


@dataclass
class FaithUtumiReport:
    applicable: bool
    essential_kernel: list[int] = field(default_factory=list)
    radical: list[int] = field(default_factory=list)
    quotient_order: int = 0
    quotient_vn_regular: bool = False

    @property
    def status(self) -> str:
        if not self.applicable:
            return "NOT_APPLICABLE"
        ok = self.essential_kernel == self.radical and self.quotient_vn_regular
        return "CONSISTENT" if ok else "THEOREM_VIOLATION"


def faith_utumi_radical_check(M: FiniteModule) -> FaithUtumiReport:
    """Compare the essential-kernel endomorphisms with the Jacobson radical of ``End(M)``."""
    if not decide_module_property(M, "quasi_injective").holds:
        return FaithUtumiReport(applicable=False)
    E = endomorphism_ring(M)
    ess = [i for i, f in enumerate(E.carrier) if is_essential(f.kernel, M)]
    J = jacobson_radical(E.ring)
    Q, _ = quotient_ring(E.ring, J)
    return FaithUtumiReport(True, ess, J.elements, Q.order,
                            decide_ring_property(Q, "vn_regular").holds)


@dataclass
class CorrespondenceReport:
    rickart: bool
    baer: bool
    s_right_rickart: bool
    retractable: bool
    k_local_retractable: bool
    s_vn_regular: bool
    self_cogenerator: bool
    local_retraction_chain: bool = True

    @property
    def flags(self) -> dict[str, bool]:
        return {
            "rickart_implies_s_right_rickart": not self.rickart or self.s_right_rickart,
            "retractable_rickart_iff_s_right_rickart":
                not self.retractable or self.rickart == self.s_right_rickart,
            "rickart_iff_s_right_rickart_and_klr":
                self.rickart == (self.s_right_rickart and self.k_local_retractable),
            "rickart_implies_klr": not self.rickart or self.k_local_retractable,
            "s_regular_implies_rickart": not self.s_vn_regular or (self.rickart and self.s_right_rickart),
            "rickart_self_cogenerator_implies_s_regular":
                not (self.rickart and self.self_cogenerator) or self.s_vn_regular,
            # End of a finite module has no infinite orthogonal idempotent set
            "baer_iff_rickart_iff_s_right_rickart": self.baer == self.rickart == self.s_right_rickart,
            "local_retraction_chain": self.local_retraction_chain,
        }

    @property
    def status(self) -> str:
        return "CONSISTENT" if all(self.flags.values()) else "THEOREM_VIOLATION"


def correspondence_report(M: FiniteModule) -> CorrespondenceReport:
    S = endomorphism_ring(M).ring
    prop = lambda p: decide_module_property(M, p).holds  # noqa: E731
    rickart = prop("rickart")
    chain = True
    if rickart:
        for phi in M.endomorphisms:
            K = phi.kernel
            for m in K.elements:
                if m == 0:
                    continue
                psi = local_retraction(M, phi, m)
                chain &= psi is not None and m in psi.image and psi.image <= K
    return CorrespondenceReport(
        rickart=rickart,
        baer=prop("baer"),
        s_right_rickart=decide_ring_property(S, "right_rickart").holds,
        retractable=prop("retractable"),
        k_local_retractable=prop("k_local_retractable"),
        s_vn_regular=decide_ring_property(S, "vn_regular").holds,
        self_cogenerator=prop("self_cogenerator"),
        local_retraction_chain=chain,
    )


QI_CONDITIONS = ("baer", "rickart", "s_vn_regular", "s_right_semihereditary", "s_right_rickart",
                 "s_right_nonsingular")


@dataclass
class QuasiInjectiveReport:
    applicable: bool
    conditions: dict[str, bool] = field(default_factory=dict)

    @property
    def all_equal(self) -> bool:
        return len(set(self.conditions.values())) <= 1

    @property
    def status(self) -> str:
        if not self.applicable:
            return "NOT_APPLICABLE"
        return "CONSISTENT" if self.all_equal else "THEOREM_VIOLATION"


def quasi_injective_equivalence_report(M: FiniteModule) -> QuasiInjectiveReport:
    if not decide_module_property(M, "quasi_injective").holds:
        return QuasiInjectiveReport(applicable=False)
    S = endomorphism_ring(M).ring
    ring = lambda p: decide_ring_property(S, p).holds  # noqa: E731
    return QuasiInjectiveReport(True, {
        "baer": decide_module_property(M, "baer").holds,
        "rickart": decide_module_property(M, "rickart").holds,
        "s_vn_regular": ring("vn_regular"),
        "s_right_semihereditary": ring("right_semihereditary"),
        "s_right_rickart": ring("right_rickart"),
        "s_right_nonsingular": ring("right_nonsingular"),
    })


def essential_kernel_set(M: FiniteModule) -> RightIdeal:
    """Indices (in ``End(M)`` enumeration order) of endomorphisms with essential kernel."""
    return RightIdeal(mask_of(i for i, f in enumerate(M.endomorphisms) if is_essential(f.kernel, M)))
