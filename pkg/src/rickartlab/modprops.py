"""Module-level property deciders with witnesses, and the direct-sum theorem checker."""

from __future__ import annotations

from dataclasses import dataclass, field

from ._core import CapacityError, Status, Verdict, bits, check_cap, run_decider
from .finmod import (FiniteModule, Homomorphism, Submodule, annihilator_in_ring, as_module,
                     decomposes_along, direct_sum, is_direct_summand, is_essential, iter_homs,
                     singular_submodule, summand_by_complement, summand_by_idempotent)
from .finring import FiniteRing

MODULE_PROPERTIES = ("rickart", "baer", "k_nonsingular", "retractable", "k_local_retractable",
                     "quasi_injective", "extending", "self_cogenerator", "sip", "nonsingular")


def _is_summand(N: Submodule, M: FiniteModule) -> bool:
    return summand_by_complement(N, M) is not None


def _rickart(M):
    for phi in M.endomorphisms:
        K = phi.kernel
        if not _is_summand(K, M):
            yield {"endomorphism": phi, "kernel": K}


def kernel_closure(M: FiniteModule) -> list[tuple[Submodule, list[Homomorphism]]]:
    """Every ``r_M(I)`` for a left ideal ``I`` of ``End(M)``, each with endomorphisms realizing it.

    ``r_M(S phi_1 + ... + S phi_n)`` is the intersection of the kernels of the
    ``phi_i``, so closing the single kernels under intersection yields exactly
    these annihilators.
    """
    found: dict[int, list[Homomorphism]] = {}
    for phi in M.endomorphisms:
        found.setdefault(phi.kernel.members, [phi])
    frontier = list(found)
    while frontier:
        new = []
        for m1 in frontier:
            for m2, phis in list(found.items()):
                m = m1 & m2
                if m not in found:
                    found[m] = found[m1] + [p for p in phis if p not in found[m1]]
                    new.append(m)
        frontier = new
    return [(Submodule(m), phis) for m, phis in found.items()]


def _baer(M):
    for K, phis in kernel_closure(M):
        if not _is_summand(K, M):
            yield {"endomorphisms": phis, "annihilator": K}


def _k_nonsingular(M):
    for phi in M.endomorphisms:
        if not phi.is_zero and is_essential(phi.kernel, M):
            yield {"endomorphism": phi, "kernel": phi.kernel}


def _maps_into(M: FiniteModule, N: Submodule) -> list[Homomorphism]:
    return [psi for psi in M.endomorphisms if psi.image <= N]


def _retractable(M):
    for N in M.submodules:
        if N.size == 1:
            continue
        if all(psi.is_zero for psi in _maps_into(M, N)):
            yield {"submodule": N}


def _k_local_retractable(M):
    done: dict[int, int] = {}
    for phi in M.endomorphisms:
        K = phi.kernel
        if K.members not in done:
            reach = 1
            for psi in _maps_into(M, K):
                reach |= psi.image.members
            done[K.members] = reach
        missing = K.members & ~done[K.members]
        if missing:
            yield {"endomorphism": phi, "kernel": K, "element": bits(missing)[0]}


def local_retraction(M: FiniteModule, phi: Homomorphism, m: int) -> Homomorphism | None:
    """A ``psi`` with ``m in psi(M)`` and ``psi(M)`` inside ``ker(phi)``, if one exists."""
    K = phi.kernel
    for psi in M.endomorphisms:
        if psi.image <= K and m in psi.image:
            return psi
    return None


def _quasi_injective(M):
    check_cap("quasi_injective_order", M.size)
    for N in M.submodules:
        if N.size == 1 or N.size == M.size:
            continue
        sub, inc = as_module(M, N)
        restrictions = {tuple(g.table[y] for y in inc.images) for g in M.endomorphisms}
        for f in iter_homs(sub, M):
            if f.images not in restrictions:
                yield {"submodule": N, "map": f, "inclusion": inc}
                break


def _extending(M):
    summands = M.summands
    for N in M.submodules:
        if not any(N <= D and is_essential(N, M, within=D) for D in summands):
            yield {"submodule": N}


def _self_cogenerator(M):
    for N in M.submodules:
        meet = (1 << M.size) - 1
        for f in M.endomorphisms:
            if N <= f.kernel:
                meet &= f.kernel.members
        extra = meet & ~N.members
        if extra:
            yield {"submodule": N, "element": bits(extra)[0]}


def _sip(M):
    summands = M.summands
    masks = {D.members for D in summands}
    for i, A in enumerate(summands):
        for B in summands[i + 1:]:
            if A.members & B.members not in masks:
                yield {"summands": (A, B), "intersection": Submodule(A.members & B.members)}


def _nonsingular(M):
    Z = singular_submodule(M)
    for m in bits(Z.members & ~1):
        yield {"element": m}


_DECIDERS = {
    "rickart": _rickart, "baer": _baer, "k_nonsingular": _k_nonsingular,
    "retractable": _retractable, "k_local_retractable": _k_local_retractable,
    "quasi_injective": _quasi_injective, "extending": _extending,
    "self_cogenerator": _self_cogenerator, "sip": _sip, "nonsingular": _nonsingular,
}


def decide_module_property(M: FiniteModule, prop: str, all_witnesses: bool = False) -> Verdict:
    if prop not in _DECIDERS:
        raise ValueError(f"unknown module property {prop!r}; expected one of {MODULE_PROPERTIES}")
    try:
        check_cap("module_order", M.size)
    except CapacityError as exc:
        return Verdict(prop, Status.UNSUPPORTED, reason=str(exc))
    return run_decider(prop, _DECIDERS[prop](M), all_witnesses)


def is_relatively_rickart(M: FiniteModule, N: FiniteModule, all_witnesses: bool = False) -> Verdict:
    """``M`` is ``N``-Rickart: every ``phi: M -> N`` has a kernel that is a summand of ``M``."""
    def failures():
        for phi in iter_homs(M, N):
            if not _is_summand(phi.kernel, M):
                yield {"map": phi, "kernel": phi.kernel}
    return run_decider("relatively_rickart", failures(), all_witnesses)


# ---------------------------------------------------------------------------
# independent re-checks of FAILS witnesses

def _kernel_by_tuples(phi: Homomorphism) -> int:
    S, T = phi.source, phi.target
    imgs = [T.elements[y] for y in phi.images]
    m = 0
    for e, t in enumerate(S.elements):
        v = [sum(c * img[j] for c, img in zip(t, imgs)) % d for j, d in enumerate(T.orders)]
        if not any(v):
            m |= 1 << e
    return m


def _meets_every_nonzero(N: int, scope: int, M: FiniteModule) -> bool:
    return all(P.members & N != 1 for P in M.submodules if P.size > 1 and P.members & ~scope == 0)


def recheck(M: FiniteModule, verdict: Verdict) -> bool:
    """Re-validate a FAILS witness by unfolding the definition along a separate code path.

    Summand questions here go through the idempotent search over ``End(M)``,
    kernels are recomputed from coordinates, and essentiality is tested
    against every submodule rather than the cyclic criterion.
    """
    w, p = verdict.witness, verdict.property
    whole = (1 << M.size) - 1
    not_summand = lambda m: summand_by_idempotent(Submodule(m), M) is None  # noqa: E731
    if p == "rickart":
        k = _kernel_by_tuples(w["endomorphism"])
        return k == w["kernel"].members and not_summand(k)
    if p == "baer":
        k = whole
        for phi in w["endomorphisms"]:
            k &= _kernel_by_tuples(phi)
        return k == w["annihilator"].members and not_summand(k)
    if p == "k_nonsingular":
        k = _kernel_by_tuples(w["endomorphism"])
        return not w["endomorphism"].is_zero and _meets_every_nonzero(k, whole, M)
    if p == "retractable":
        N = w["submodule"].members
        return N != 1 and all(e.is_zero for e in M.endomorphisms if e.image.members & ~N == 0)
    if p == "k_local_retractable":
        k = _kernel_by_tuples(w["endomorphism"])
        m = w["element"]
        return m != 0 and k >> m & 1 and not any(
            e.image.members & ~k == 0 and e.image.members >> m & 1 for e in M.endomorphisms)
    if p == "quasi_injective":
        f, inc = w["map"], w["inclusion"]
        Homomorphism(f.source, f.target, f.images)  # raises if f is not a homomorphism
        return not any(all(g.table[inc.table[x]] == f.table[x] for x in range(f.source.size))
                       for g in M.endomorphisms)
    if p == "extending":
        N = w["submodule"].members
        return not any(N & ~D == 0 and not not_summand(D) and _meets_every_nonzero(N, D, M)
                       for D in (P.members for P in M.submodules))
    if p == "self_cogenerator":
        N, x = w["submodule"].members, w["element"]
        return not N >> x & 1 and all(e.table[x] == 0 for e in M.endomorphisms
                                      if all(e.table[n] == 0 for n in bits(N)))
    if p == "sip":
        A, B = w["summands"]
        return not not_summand(A.members) and not not_summand(B.members) and not_summand(A.members & B.members)
    if p == "nonsingular":
        R = M.ring
        m = w["element"]
        ann = {r for r in range(R.order) if M.act[r][m] == 0}
        # every nonzero right ideal of R meets ann outside zero
        from .finring import right_ideals
        return m != 0 and all(any(a in ann and a != R.zero for a in I.elements)
                              for I in right_ideals(R) if I.size > 1)
    raise ValueError(f"no re-check for {p!r}")


# ---------------------------------------------------------------------------
# direct sums

@dataclass
class DirectSumReport:
    rickart_1: bool
    rickart_2: bool
    condition_1: bool
    condition_1_witness: Submodule | None
    rickart_1_to_2: bool
    rickart_2_to_1: bool
    annihilator_1: list[int]
    annihilator_2: list[int]
    corollary_condition: bool
    conclusion: bool
    conclusion_witness: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def condition_2(self) -> bool:
        return self.rickart_1_to_2 and self.rickart_2_to_1

    @property
    def hypotheses(self) -> bool:
        return self.rickart_1 and self.rickart_2 and self.condition_1 and self.condition_2

    @property
    def corollary_hypotheses(self) -> bool:
        return self.rickart_1 and self.rickart_2 and self.corollary_condition and self.condition_2

    @property
    def hypotheses_imply_conclusion(self) -> bool:
        return not self.hypotheses or self.conclusion

    @property
    def corollary_implies_condition_1(self) -> bool:
        return not self.corollary_condition or self.condition_1

    @property
    def corollary_implies_conclusion(self) -> bool:
        return not self.corollary_hypotheses or self.conclusion

    @property
    def status(self) -> str:
        if not (self.hypotheses_imply_conclusion and self.corollary_implies_condition_1
                and self.corollary_implies_conclusion):
            return "THEOREM_VIOLATION"
        return "HYPOTHESES_MET" if self.hypotheses else "HYPOTHESES_NOT_MET"


def ideal_sum(R: FiniteRing, a: int, b: int) -> int:
    out = 0
    for x in bits(a):
        for y in bits(b):
            out |= 1 << R.add[x][y]
    return out


def check_direct_sum_theorem(M1: FiniteModule, M2: FiniteModule) -> DirectSumReport:
    """Evaluate both direct-sum criteria and the conclusion independently for ``M1 + M2``.

    Condition (2) is checked in the two cross directions; the diagonal cases
    are the Rickart hypotheses on each factor.
    """
    M = direct_sum(M1, M2)
    R = M.ring
    cond1_witness = next((N for N in M.submodules if not decomposes_along(N, M)), None)
    a1, a2 = annihilator_in_ring(M1), annihilator_in_ring(M2)
    concl = decide_module_property(M, "rickart")
    return DirectSumReport(
        rickart_1=decide_module_property(M1, "rickart").holds,
        rickart_2=decide_module_property(M2, "rickart").holds,
        condition_1=cond1_witness is None,
        condition_1_witness=cond1_witness,
        rickart_1_to_2=is_relatively_rickart(M1, M2).holds,
        rickart_2_to_1=is_relatively_rickart(M2, M1).holds,
        annihilator_1=a1.elements,
        annihilator_2=a2.elements,
        corollary_condition=ideal_sum(R, a1.members, a2.members) == (1 << R.order) - 1,
        conclusion=concl.holds,
        conclusion_witness=concl.witness,
    )
