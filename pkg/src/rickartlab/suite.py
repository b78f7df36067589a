"""Theorem registry and the corpus-quantified verification suite.

Each registry entry states one claim as a checker over corpus instances. A
checker computes every side of the claim independently and reports
``CONSISTENT``, ``THEOREM_VIOLATION``, or ``SKIPPED`` (a needed verdict was
UNDECIDED or UNSUPPORTED, or the claim's scope does not apply).
"""

from __future__ import annotations

import contextvars
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from ._core import CapacityError, Status, Verdict, current_caps
from .corpus import Corpus
from .endobridge import (endomorphism_ring, faith_utumi_radical_check,
                         quasi_injective_equivalence_report)
from .finmod import FiniteModule, Submodule, as_module, direct_sum, is_closed, regular
from .finring import FiniteRing, annihilator_closure, decide_ring_property
from .modprops import (check_direct_sum_theorem, decide_module_property, is_relatively_rickart,
                       local_retraction)
from .serialize import to_jsonable
from .zmodsnf import zhom_kernel, zrickart_check, zsummand_test, DEFAULT_BOUND

CONSISTENT, VIOLATION, SKIPPED = "CONSISTENT", "THEOREM_VIOLATION", "SKIPPED"


class Undetermined(Exception):
    def __init__(self, verdict: Verdict):
        super().__init__(verdict.reason)
        self.verdict = verdict


def truth(v: Verdict) -> bool:
    if v.status is Status.HOLDS:
        return True
    if v.status is Status.FAILS:
        return False
    raise Undetermined(v)


@dataclass
class InstanceResult:
    instance: str
    hypotheses: str
    status: str
    detail: dict = field(default_factory=dict)


class Context:
    """Per-run memo of verdicts, endomorphism rings and reports.

    Entries are keyed by corpus name. Concurrent tasks may compute the same
    entry twice; the result is identical and the last write wins.
    """

    def __init__(self, corpus: Corpus, bound: int = DEFAULT_BOUND, all_witnesses: bool = False):
        self.corpus = corpus
        self.bound = bound
        self.all_witnesses = all_witnesses
        self._memo: dict = {}
        self._lock = threading.Lock()

    def _get(self, key, compute):
        if key in self._memo:
            return self._memo[key]
        value = compute()
        with self._lock:
            self._memo.setdefault(key, value)
        return self._memo[key]

    def module(self, name: str) -> FiniteModule:
        return self.corpus.get("module", name)

    def ring_obj(self, key: str) -> FiniteRing:
        if key.startswith("End(") and key.endswith(")"):
            return self.endo(key[4:-1]).ring
        return self.corpus.get("ring", key)

    def endo(self, name: str):
        return self._get(("endo", name), lambda: endomorphism_ring(self.module(name)))

    def mod(self, name: str, prop: str) -> Verdict:
        return self._get(("mod", name, prop),
                         lambda: decide_module_property(self.module(name), prop, self.all_witnesses))

    def ring(self, key: str, prop: str) -> Verdict:
        return self._get(("ring", key, prop),
                         lambda: decide_ring_property(self.ring_obj(key), prop, self.all_witnesses))

    def s(self, name: str, prop: str) -> Verdict:
        """Ring property of ``End(M)`` for the named module."""
        return self.ring(f"End({name})", prop)

    def pair(self, a: str, b: str):
        return self._get(("pair", a, b), lambda: check_direct_sum_theorem(self.module(a), self.module(b)))

    def ring_instances(self) -> list[str]:
        return list(self.corpus.ring_specs) + [f"End({n})" for n in self.corpus.module_specs]


def _result(instance: str, key: Verdict | bool, ok: bool, **detail) -> InstanceResult:
    if isinstance(key, Verdict):
        hyp = key.status.value
    else:
        hyp = "HOLDS" if key else "FAILS"
    return InstanceResult(instance, hyp, CONSISTENT if ok else VIOLATION, detail)


def _witness(ctx: Context, name: str, v: Verdict):
    return to_jsonable(v.witness, ctx.module(name)) if v.fails else None


# ---------------------------------------------------------------------------
# module checkers

def _prop_2_2(ctx: Context, name: str) -> InstanceResult:
    M = ctx.module(name)
    lhs = ctx.mod(name, "rickart")
    parts = {D.members: as_module(M, D)[0] for D in M.summands}
    rhs, bad = True, None
    for a, A in parts.items():
        for b, B in parts.items():
            v = is_relatively_rickart(A, B)
            if v.fails:
                rhs, bad = False, {"A": to_jsonable(Submodule(a), M), "B": to_jsonable(Submodule(b), M),
                                   "map": to_jsonable(v.witness["map"])}
                break
        if not rhs:
            break
    return _result(name, lhs, truth(lhs) == rhs, summand_pairs=len(parts) ** 2,
                   summand_condition=rhs, witness=_witness(ctx, name, lhs), summand_witness=bad)


def _thm_2_3(ctx: Context, name: str) -> InstanceResult:
    M = ctx.module(name)
    rick = ctx.mod(name, "rickart")
    if not truth(rick):
        return _result(name, rick, True, witness=_witness(ctx, name, rick))
    for D in M.summands:
        sub, _ = as_module(M, D)
        v = decide_module_property(sub, "rickart")
        if not truth(v):
            return _result(name, rick, False, summand=to_jsonable(D, M), witness=to_jsonable(v.witness, sub))
    return _result(name, rick, True, summands=len(M.summands))


def _prop_3_1(ctx, name):
    rick = ctx.mod(name, "rickart")
    ok = not truth(rick) or truth(ctx.s(name, "right_rickart"))
    return _result(name, rick, ok, s_right_rickart=ctx.s(name, "right_rickart").status.value)


def _prop_3_3(ctx, name):
    ret = ctx.mod(name, "retractable")
    ok = not truth(ret) or truth(ctx.mod(name, "rickart")) == truth(ctx.s(name, "right_rickart"))
    return _result(name, ret, ok, rickart=ctx.mod(name, "rickart").status.value,
                   s_right_rickart=ctx.s(name, "right_rickart").status.value,
                   witness=_witness(ctx, name, ret))


def _local_retraction_chain(M: FiniteModule) -> bool:
    """Every nonzero kernel element is reached by a map with image inside that kernel."""
    for phi in M.endomorphisms:
        for m in phi.kernel.elements[1:]:
            psi = local_retraction(M, phi, m)
            if psi is None or not (m in psi.image and psi.image <= phi.kernel):
                return False
    return True


def _thm_3_4(ctx, name):
    rick = truth(ctx.mod(name, "rickart"))
    klr = truth(ctx.mod(name, "k_local_retractable"))
    srr = truth(ctx.s(name, "right_rickart"))
    chain = _local_retraction_chain(ctx.module(name)) if rick else True
    ok = rick == (srr and klr) and (not rick or (klr and chain))
    return _result(name, ctx.mod(name, "rickart"), ok, k_local_retractable=klr, s_right_rickart=srr,
                   local_retraction_chain=chain)


def _prop_3_5_fwd(ctx, name):
    reg = ctx.s(name, "vn_regular")
    ok = not truth(reg) or (truth(ctx.mod(name, "rickart")) and truth(ctx.s(name, "right_rickart")))
    return _result(name, reg, ok, rickart=ctx.mod(name, "rickart").status.value)


def _prop_3_5_rev(ctx, name):
    rick, cog = truth(ctx.mod(name, "rickart")), truth(ctx.mod(name, "self_cogenerator"))
    ok = not (rick and cog) or truth(ctx.s(name, "vn_regular"))
    return _result(name, rick and cog, ok, rickart=rick, self_cogenerator=cog,
                   s_vn_regular=ctx.s(name, "vn_regular").status.value)


def _thm_small(ctx, name):
    vals = {"baer": truth(ctx.mod(name, "baer")), "rickart": truth(ctx.mod(name, "rickart")),
            "s_right_rickart": truth(ctx.s(name, "right_rickart"))}
    return _result(name, ctx.mod(name, "rickart"), len(set(vals.values())) == 1, **vals)


def _thm_qi_equiv(ctx, name):
    qi = ctx.mod(name, "quasi_injective")
    if not truth(qi):
        return InstanceResult(name, qi.status.value, SKIPPED, {"reason": "not quasi-injective"})
    rep = quasi_injective_equivalence_report(ctx.module(name))
    return _result(name, qi, rep.all_equal, conditions=rep.conditions)


def _faith_utumi(ctx, name):
    qi = ctx.mod(name, "quasi_injective")
    if not truth(qi):
        return InstanceResult(name, qi.status.value, SKIPPED, {"reason": "not quasi-injective"})
    rep = faith_utumi_radical_check(ctx.module(name))
    return _result(name, qi, rep.status == CONSISTENT, essential_kernel=rep.essential_kernel,
                   radical=rep.radical, quotient_order=rep.quotient_order,
                   quotient_vn_regular=rep.quotient_vn_regular)


# ---------------------------------------------------------------------------
# pair checkers

def _thm_2_5(ctx, pair):
    rep = ctx.pair(*pair)
    M = direct_sum(ctx.module(pair[0]), ctx.module(pair[1]))
    return _result("+".join(pair), rep.hypotheses, rep.hypotheses_imply_conclusion,
                   rickart_1=rep.rickart_1, rickart_2=rep.rickart_2, condition_1=rep.condition_1,
                   condition_1_witness=to_jsonable(rep.condition_1_witness, M),
                   relatively_rickart=[rep.rickart_1_to_2, rep.rickart_2_to_1],
                   conclusion=rep.conclusion, conclusion_witness=to_jsonable(rep.conclusion_witness, M))


def _cor_2_6(ctx, pair):
    rep = ctx.pair(*pair)
    ok = rep.corollary_implies_condition_1 and rep.corollary_implies_conclusion
    return _result("+".join(pair), rep.corollary_hypotheses, ok,
                   annihilator_1=rep.annihilator_1, annihilator_2=rep.annihilator_2,
                   annihilators_sum_to_ring=rep.corollary_condition, condition_1=rep.condition_1,
                   condition_2=rep.condition_2, conclusion=rep.conclusion)


# ---------------------------------------------------------------------------
# ring checkers

CHART = (("vn_regular", "right_semihereditary"), ("right_semihereditary", "right_rickart"),
         ("right_rickart", "right_nonsingular"), ("baer", "right_rickart"))


def _chart(ctx, key):
    vals = {p: truth(ctx.ring(key, p)) for p in
            ("vn_regular", "right_semihereditary", "right_rickart", "right_nonsingular", "baer")}
    broken = [f"{a} => {b}" for a, b in CHART if vals[a] and not vals[b]]
    return _result(key, ctx.ring(key, "right_rickart"), not broken, values=vals, broken=broken,
                   witnesses={p: to_jsonable(ctx.ring(key, p).witness) for p in vals
                              if not vals[p]})


def _lemma_3_10(ctx, key):
    R = ctx.ring_obj(key)
    rn = ctx.ring(key, "right_nonsingular")
    M = regular(R)
    open_ann = None
    for mask, X in annihilator_closure(R):
        N = Submodule(sum(1 << M.module_element[a] for a in range(R.order) if mask >> a & 1))
        if not is_closed(N, M):
            open_ann = X
            break
    return _result(key, rn, truth(rn) == (open_ann is None), subset_with_open_annihilator=open_ann)


def _cor_ring_small(ctx, key):
    b, r = ctx.ring(key, "baer"), ctx.ring(key, "right_rickart")
    return _result(key, b, truth(b) == truth(r), right_rickart=r.status.value)


def _cor_self_injective(ctx, key):
    R = ctx.ring_obj(key)
    try:
        si = decide_module_property(regular(R), "quasi_injective")
    except CapacityError as exc:
        si = Verdict("quasi_injective", Status.UNSUPPORTED, reason=str(exc))
    if not truth(si):
        return InstanceResult(key, si.status.value, SKIPPED, {"reason": "not right self-injective"})
    vals = {p: truth(ctx.ring(key, p)) for p in
            ("baer", "vn_regular", "right_semihereditary", "right_rickart", "right_nonsingular")}
    return _result(key, si, len(set(vals.values())) == 1, values=vals)


# ---------------------------------------------------------------------------
# examples

def _ex_2_4(ctx, name):
    G = ctx.corpus.get("zmodule", name)
    if not (G.rank == 1 and G.torsion == (2,)):
        return InstanceResult(name, "n/a", SKIPPED, {"reason": "not Z + Z_2"})
    v = zrickart_check(G, bound=ctx.bound)
    if not v.fails:
        return InstanceResult(name, v.status.value, VIOLATION, {"reason": "Z + Z_2 reported Rickart"})
    # the map Z -> Z_2 of the example, on the free summand alone
    from .zmodsnf import FgZModule, ZModHom
    f = ZModHom(FgZModule(1), FgZModule.from_orders(0, [2]), [[1]])
    K, inc = zhom_kernel(f)
    summand = zsummand_test(inc)
    ok = summand.fails and inc.matrix[0][0] in (2, -2)
    return _result(name, v, ok, witness=to_jsonable(v.witness), kernel_inclusion=to_jsonable(inc),
                   summand_obstruction=to_jsonable(summand.witness))


def _ex_klr_z4(ctx, name):
    M = ctx.module(name)
    if M.orders != (4,) or M.ring.order != 4:
        return InstanceResult(name, "n/a", SKIPPED, {"reason": "not Z_4"})
    rick, klr = ctx.mod(name, "rickart"), ctx.mod(name, "k_local_retractable")
    return _result(name, klr, truth(klr) and not truth(rick), rickart_witness=_witness(ctx, name, rick))


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class TheoremEntry:
    id: str
    anchor: str
    scope: str  # module | pair | ring | zmodule
    check: Callable
    expected: str = "PASS"


REGISTRY: tuple[TheoremEntry, ...] = (
    TheoremEntry("prop-2.2", '§2, "any two direct summands A and B of M"', "module", _prop_2_2),
    TheoremEntry("thm-2.3", '§2, "A direct summand of Rickart module is a Rickart module"', "module", _thm_2_3),
    TheoremEntry("ex-2.4", '§2, "Ker(f) = 2Z is not a direct summand"', "zmodule", _ex_2_4),
    TheoremEntry("thm-2.5", '§2, "sufficient conditions for the direct sums of Rickart modules"', "pair",
                 _thm_2_5),
    TheoremEntry("cor-2.6", '§2, "r_R(M_1) + r_R(M_2) = R"', "pair", _cor_2_6),
    TheoremEntry("prop-3.1", '§3, "S = End_R(M) is a right Rickart ring"', "module", _prop_3_1),
    TheoremEntry("prop-3.3", '§3, "Let M be a (quasi-)retractable module"', "module", _prop_3_3),
    TheoremEntry("ex-klr-z4", '§3, "Z_4 is k-local-retractable but it is not Rickart"', "module", _ex_klr_z4),
    TheoremEntry("thm-3.4", '§3, "right Rickart ring and M is k-local-retractable"', "module", _thm_3_4),
    TheoremEntry("prop-3.5-fwd", '§3, "endomorphism ring is a regular"', "module", _prop_3_5_fwd),
    TheoremEntry("prop-3.5-rev", '§3, "self-cogenerator module then S is regular"', "module", _prop_3_5_rev),
    TheoremEntry("chart", '§3, "We recall the following chart of basic implications"', "ring", _chart),
    TheoremEntry("lemma-3.10", '§3, "always a closed right ideal"', "ring", _lemma_3_10),
    TheoremEntry("thm-qi-equiv", '§3, "Let M be a quasi-injective R-module"', "module", _thm_qi_equiv),
    TheoremEntry("faith-utumi", '§3, "J(S) consists of all endomorphisms of M having essential kernel"',
                 "module", _faith_utumi),
    TheoremEntry("cor-self-injective", '§3, "Let R be any right self-injective ring"', "ring",
                 _cor_self_injective),
    TheoremEntry("thm-small", '§3, "no infinite set of non-zero orthogonal idempotents"', "module", _thm_small),
    TheoremEntry("cor-ring-small", '§3, "R is Baer if and only if R is right Rickart"', "ring", _cor_ring_small),
)

REGISTRY_IDS = tuple(e.id for e in REGISTRY)


def _instances(ctx: Context, scope: str) -> list:
    if scope == "module":
        return list(ctx.corpus.module_specs)
    if scope == "pair":
        return list(ctx.corpus.pairs)
    if scope == "ring":
        return ctx.ring_instances()
    return list(ctx.corpus.zmodule_specs)


def _run_task(ctx: Context, entry: TheoremEntry, inst) -> InstanceResult:
    label = "+".join(inst) if isinstance(inst, tuple) else inst
    try:
        return entry.check(ctx, inst)
    except Undetermined as exc:
        return InstanceResult(label, exc.verdict.status.value, SKIPPED, {"reason": exc.verdict.reason})
    except CapacityError as exc:
        return InstanceResult(label, "UNSUPPORTED", SKIPPED, {"reason": str(exc)})


@dataclass
class TheoremResult:
    id: str
    anchor: str
    results: list[InstanceResult]

    @property
    def violations(self) -> list[InstanceResult]:
        return [r for r in self.results if r.status == VIOLATION]

    @property
    def breakdown(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.results:
            out[r.hypotheses] = out.get(r.hypotheses, 0) + 1
        return dict(sorted(out.items()))

    @property
    def checked(self) -> int:
        return sum(r.status != SKIPPED for r in self.results)


@dataclass
class SuiteReport:
    corpus: str
    theorems: list[TheoremResult]
    seconds: float = 0.0

    @property
    def violation_count(self) -> int:
        return sum(len(t.violations) for t in self.theorems)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def by_id(self, tid: str) -> TheoremResult:
        return next(t for t in self.theorems if t.id == tid)

    def to_json(self) -> dict:
        return {
            "corpus": self.corpus,
            "violations": self.violation_count,
            "theorems": [{
                "id": t.id, "anchor": t.anchor, "instances": len(t.results), "checked": t.checked,
                "violations": len(t.violations), "breakdown": t.breakdown,
                "results": [{"instance": r.instance, "hypotheses": r.hypotheses, "status": r.status,
                             "detail": to_jsonable(r.detail)} for r in t.results],
            } for t in self.theorems],
        }


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("RICKARTLAB_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(corpus: Corpus, ids: list[str] | None = None, *, bound: int = 3,
              all_witnesses: bool = False, threads: int | None = None) -> SuiteReport:
    """Evaluate registry entries over the corpus.

    The default sweep bound for free Z-modules is kept at 3 here; the CLI
    passes ``--bound`` through.
    """
    if corpus.is_empty:
        raise ValueError("empty corpus")
    unknown = [i for i in ids or [] if i not in REGISTRY_IDS]
    if unknown:
        raise KeyError(f"unknown theorem id(s): {', '.join(unknown)}")
    entries = [e for e in REGISTRY if not ids or e.id in ids]
    ctx = Context(corpus, bound, all_witnesses)
    tasks = [(e, inst) for e in entries for inst in _instances(ctx, e.scope)]
    start = time.perf_counter()
    caps = current_caps()

    def run(task):
        from ._core import using_caps
        with using_caps(**caps.__dict__):
            return _run_task(ctx, *task)

    n = threads if threads is not None else worker_count()
    if n <= 1:
        outcomes = [run(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            outcomes = list(pool.map(lambda t: contextvars.copy_context().run(run, t), tasks))
    theorems = []
    for e in entries:
        theorems.append(TheoremResult(e.id, e.anchor,
                                      [o for (te, _), o in zip(tasks, outcomes) if te is e]))
    return SuiteReport(corpus.name, theorems, time.perf_counter() - start)
