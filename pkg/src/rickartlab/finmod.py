"""Finite right modules over finite rings.

A module is presented as ``Z_{d_1} x ... x Z_{d_k}`` with one canonical
generator per factor; every ring element acts through the images of those
generators. Elements are tuples, indexed in lexicographic order (index 0 is
zero), and submodules are bitmasks over those indices.

Homomorphisms are determined by generator images, so ``Hom(M, N)`` is found
by backtracking over images with order and action constraints, never by a
scan over all maps ``M -> N``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from ._core import (CapacityError, ConstructionError, IndexSet, Status, Verdict, bits, check_cap,
                    mask_of)
from .finring import FiniteRing, RightIdeal, zmod
from .zmodsnf import smith_normal_form


def cyclic_decomposition(elements: Iterable, add: Callable, zero) -> tuple[list[int], list, dict]:
    """Decompose a finite abelian group into cyclic factors in divisibility-chain form.

    Returns ``(orders, generators, coords)`` where ``coords`` maps each element
    to its coordinate tuple with respect to ``generators``.

    Generators are picked greedily, recording for each new generator ``x`` the
    least ``k`` with ``k x`` in the span so far; those relations form a
    triangular presentation whose Smith form gives the invariant factors.
    """
    members = {zero: ()}
    gens, rels = [], []
    for x in elements:
        if x in members:
            continue
        k, y = 1, x
        multiples = [zero, x]
        while y not in members:
            y = add(y, x)
            k += 1
            multiples.append(y)
        rels.append((k, members[y]))
        members = {add(h, multiples[t]): c + (t,) for h, c in members.items() for t in range(k)}
        gens.append(x)
    m = len(gens)
    if m == 0:
        return [], [], {zero: ()}
    A = [[0] * m for _ in range(m)]
    for i, (k, c) in enumerate(rels):
        A[i][i] = k
        for j, cj in enumerate(c):
            A[i][j] -= cj
    res = smith_normal_form(A)
    diag = res.diagonal
    V, Vi = res.V, res.V_inv
    gen_orders = []
    for g in gens:
        k, y = 1, g
        while y != zero:
            y = add(y, g)
            k += 1
        gen_orders.append(k)

    def combine(coeffs):
        v = zero
        for c, g, o in zip(coeffs, gens, gen_orders):
            for _ in range(int(c) % o):
                v = add(v, g)
        return v

    keep = [j for j in range(m) if diag[j] != 1]
    orders = [diag[j] for j in keep]
    new_gens = [combine(Vi[j, :]) for j in keep]
    coords = {}
    for h, c in members.items():
        y = [sum(c[i] * int(V[i, j]) for i in range(m)) for j in keep]
        coords[h] = tuple(v % d for v, d in zip(y, orders))
    if len(set(coords.values())) != len(coords) or math.prod(orders) != len(coords):
        raise AssertionError("cyclic decomposition is not a bijection")
    return orders, new_gens, coords


class Submodule(IndexSet):
    """A submodule as a bitmask over module element indices."""


def _ring_generators(R: FiniteRing) -> tuple[int, ...]:
    """Elements generating ``R`` as a unital ring (greedy, ascending)."""
    def close(seed):
        S = set(seed) | {R.zero, R.one}
        frontier = list(S)
        while frontier:
            new = []
            for a in frontier:
                for b in list(S):
                    for c in (R.add[a][b], R.mul[a][b], R.mul[b][a]):
                        if c not in S:
                            S.add(c)
                            new.append(c)
            frontier = new
        return S

    gens: list[int] = []
    S = close(gens)
    for a in range(R.order):
        if a not in S:
            gens.append(a)
            S = close(gens)
    return tuple(gens)


class FiniteModule:
    """A finite right module over ``ring``.

    ``action[r][i]`` is the image of generator ``i`` under right
    multiplication by ring element ``r``, given as a tuple or element index.
    """

    def __init__(self, ring: FiniteRing, cyclic_orders: Sequence[int], action, label: str = "module",
                 *, validate: bool = True):
        self.ring = ring
        self.orders = tuple(int(d) for d in cyclic_orders)
        if any(d < 2 for d in self.orders):
            raise ConstructionError("cyclic orders must be >= 2")
        self.label = label
        self.size = math.prod(self.orders)
        check_cap("module_order", self.size)
        self.elements = list(itertools.product(*(range(d) for d in self.orders)))
        self._index = {t: i for i, t in enumerate(self.elements)}
        k = len(self.orders)
        if len(action) != ring.order:
            raise ConstructionError(f"action must list all {ring.order} ring elements")
        acts = []
        for r, imgs in enumerate(action):
            if len(imgs) != k:
                raise ConstructionError(f"action of ring element {r} must give {k} generator images")
            acts.append(tuple(self.index(y) for y in imgs))
        self.action = tuple(acts)
        n = self.size
        self.add = tuple(tuple(self._index[tuple((a + b) % d for a, b, d in zip(s, t, self.orders))]
                               for t in self.elements) for s in self.elements)
        self.neg = tuple(self._index[tuple((-a) % d for a, d in zip(s, self.orders))]
                         for s in self.elements)
        self.generators = tuple(self._index[tuple(int(i == j) for j in range(k))] for i in range(k))
        if validate:
            self._validate_orders()
        self.act = tuple(self._extend(self.action[r]) for r in range(ring.order))
        if validate:
            self._validate_axioms()

    def index(self, y) -> int:
        if isinstance(y, int):
            if not 0 <= y < self.size:
                raise ConstructionError(f"element index {y} out of range")
            return y
        t = tuple(int(a) % d for a, d in zip(y, self.orders))
        if len(t) != len(self.orders):
            raise ConstructionError(f"element {y} has the wrong length")
        return self._index[t]

    def _extend(self, images: Sequence[int]) -> tuple[int, ...]:
        """Table of the additive map sending generator ``i`` to ``images[i]``."""
        out = [0] * self.size
        for e, t in enumerate(self.elements):
            if e == 0:
                continue
            i = max(j for j, c in enumerate(t) if c)
            prev = self._index[t[:i] + (t[i] - 1,) + t[i + 1:]]
            out[e] = self.add[out[prev]][images[i]]
        return tuple(out)

    def _validate_orders(self) -> None:
        R = self.ring
        for r in range(R.order):
            for i, y in enumerate(self.action[r]):
                if not self._killed_by(y, self.orders[i]):
                    raise ConstructionError(
                        f"well-definedness: generator {i} has order {self.orders[i]} but its image "
                        f"under ring element {r} does not")

    def _validate_axioms(self) -> None:
        R = self.ring
        for i, g in enumerate(self.generators):
            if self.action[R.one][i] != g:
                raise ConstructionError("unital action: the ring identity does not act as the identity")
        acts = self.act
        for a in range(R.order):
            for b in range(R.order):
                s, p = R.add[a][b], R.mul[a][b]
                for i in range(len(self.orders)):
                    if self.action[s][i] != self.add[self.action[a][i]][self.action[b][i]]:
                        raise ConstructionError(f"additivity in the ring: m({a}+{b}) != ma + mb")
                    if self.action[p][i] != acts[b][self.action[a][i]]:
                        raise ConstructionError(f"associativity of the action: m({a}*{b}) != (m{a}){b}")

    def _killed_by(self, y: int, d: int) -> bool:
        return all((d * c) % o == 0 for c, o in zip(self.elements[y], self.orders))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteModule):
            return NotImplemented
        return (self.ring, self.orders, self.action) == (other.ring, other.orders, other.action)

    def __hash__(self) -> int:
        return hash((self.orders, self.action))

    def __repr__(self) -> str:
        return f"FiniteModule({self.label}, order={self.size})"

    def __len__(self) -> int:
        return self.size

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for t in self.elements:
            o = 1
            for c, d in zip(t, self.orders):
                o = math.lcm(o, d // math.gcd(c, d))
            out.append(o)
        return tuple(out)

    @cached_property
    def multiples(self) -> tuple[tuple[int, ...], ...]:
        """``multiples[y][c]`` is ``c * y`` for ``0 <= c < order(y)``."""
        out = []
        for y in range(self.size):
            row, v = [0], y
            while v != 0:
                row.append(v)
                v = self.add[v][y]
            out.append(tuple(row))
        return tuple(out)

    def scale(self, y: int, c: int) -> int:
        row = self.multiples[y]
        return row[c % len(row)]

    def combine(self, coeffs: Sequence[int], images: Sequence[int]) -> int:
        v = 0
        for c, y in zip(coeffs, images):
            if c:
                v = self.add[v][self.scale(y, c)]
        return v

    @cached_property
    def cyclic(self) -> tuple[int, ...]:
        """Bitmask of the cyclic submodule ``mR`` for every element ``m``."""
        R = self.ring
        return tuple(mask_of(self.act[r][m] for r in range(R.order)) for m in range(self.size))

    @cached_property
    def ring_generators(self) -> tuple[int, ...]:
        return _ring_generators(self.ring)

    @cached_property
    def submodules(self) -> list[Submodule]:
        return _enumerate_submodules(self)

    @cached_property
    def endomorphisms(self) -> list["Homomorphism"]:
        return hom_set(self, self)

    @cached_property
    def idempotent_images(self) -> dict[int, "Homomorphism"]:
        """First idempotent endomorphism (in enumeration order) for every image that has one."""
        out: dict[int, Homomorphism] = {}
        for e in self.endomorphisms:
            if e.compose(e) == e:
                out.setdefault(e.image.members, e)
        return out

    @cached_property
    def summands(self) -> list[Submodule]:
        return [N for N in self.submodules if complement_of(N, self) is not None]

    @property
    def zero_submodule(self) -> Submodule:
        return Submodule(1, ())

    @property
    def whole(self) -> Submodule:
        return Submodule((1 << self.size) - 1, self.generators)

    def render(self, y: int) -> str:
        t = self.elements[y]
        return "(" + ", ".join(map(str, t)) + ")"


class Homomorphism:
    """An R-linear map given by the images of the source's canonical generators."""

    def __init__(self, source: FiniteModule, target: FiniteModule, images: Sequence, *,
                 validate: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(target.index(y) for y in images)
        if len(self.images) != len(source.orders):
            raise ConstructionError("one image per source generator is required")
        if validate:
            self._validate()

    def _validate(self) -> None:
        S, T = self.source, self.target
        if S.ring != T.ring:
            raise ConstructionError("source and target are modules over different rings")
        for i, (d, y) in enumerate(zip(S.orders, self.images)):
            if not T._killed_by(y, d):
                raise ConstructionError(f"generator {i} has order {d} but its image does not")
        tab = self.table
        for r in range(S.ring.order):
            for i, y in enumerate(self.images):
                if tab[S.action[r][i]] != T.act[r][y]:
                    raise ConstructionError(f"not R-linear: f(g{i}*{r}) != f(g{i})*{r}")

    @cached_property
    def table(self) -> tuple[int, ...]:
        return self.target_extend()

    def target_extend(self) -> tuple[int, ...]:
        S, T = self.source, self.target
        out = [0] * S.size
        for e, t in enumerate(S.elements):
            if e == 0:
                continue
            i = max(j for j, c in enumerate(t) if c)
            prev = S._index[t[:i] + (t[i] - 1,) + t[i + 1:]]
            out[e] = T.add[out[prev]][self.images[i]]
        return tuple(out)

    def __call__(self, m: int) -> int:
        return self.table[m]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return self.images == other.images and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.images)

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``self`` after ``other``."""
        return Homomorphism(other.source, self.target, [self.table[y] for y in other.images],
                            validate=False)

    def __add__(self, other: "Homomorphism") -> "Homomorphism":
        T = self.target
        return Homomorphism(self.source, T, [T.add[a][b] for a, b in zip(self.images, other.images)],
                            validate=False)

    @cached_property
    def kernel(self) -> Submodule:
        return Submodule(mask_of(m for m, y in enumerate(self.table) if y == 0))

    @cached_property
    def image(self) -> Submodule:
        return Submodule(mask_of(self.table), self.images)

    @property
    def is_zero(self) -> bool:
        return all(y == 0 for y in self.images)

    def render(self) -> str:
        return ", ".join(f"g{i} -> {self.target.render(y)}" for i, y in enumerate(self.images)) or "(empty)"

    def __repr__(self) -> str:
        return f"Homomorphism({self.render()})"


@dataclass(frozen=True)
class SummandCertificate:
    complement: Submodule
    idempotent: Homomorphism


# ---------------------------------------------------------------------------
# constructors

def regular(R: FiniteRing) -> FiniteModule:
    """``R`` as a right module over itself; ``ring_element``/``module_element`` translate indices."""
    orders, gens, coords = cyclic_decomposition(range(R.order), lambda a, b: R.add[a][b], R.zero)
    action = [[coords[R.mul[g][r]] for g in gens] for r in range(R.order)]
    M = FiniteModule(R, orders, action, f"regular({R.label})")
    M.module_element = tuple(M.index(coords[a]) for a in range(R.order))
    inv = [0] * R.order
    for a, m in enumerate(M.module_element):
        inv[m] = a
    M.ring_element = tuple(inv)
    return M


def _scalar_values(R: FiniteRing) -> list[int]:
    """Integer value of every element of a ring equal to ``zmod(n)``."""
    if R != zmod(R.order):
        raise ConstructionError("scalar action needs the ring zmod(n)")
    return list(range(R.order))


def scalar_module(R: FiniteRing, orders: Sequence[int], label: str | None = None) -> FiniteModule:
    """``Z_{d_1} x ... x Z_{d_k}`` over ``zmod(n)``, ring element ``r`` acting as multiplication by ``r``."""
    vals = _scalar_values(R)
    n = R.order
    for d in orders:
        if n % d:
            raise ConstructionError(f"Z_{d} is not a module over zmod({n})")
    k = len(orders)
    action = [[tuple((r if i == j else 0) % orders[j] for j in range(k)) for i in range(k)] for r in vals]
    name = label or (" + ".join(f"Z_{d}" for d in orders) if orders else "0") + f" over {R.label}"
    return FiniteModule(R, orders, action, name)


def abelian_module(orders: Sequence[int]) -> FiniteModule:
    """A finite abelian group as a module over ``zmod(exponent)``.

    Endomorphisms over ``zmod(exponent)`` are exactly the group endomorphisms,
    so this is the finite stand-in for the group as a Z-module.
    """
    orders = [int(d) for d in orders]
    e = math.lcm(*orders) if orders else 1
    return scalar_module(zmod(e), orders)


def zero_module(R: FiniteRing) -> FiniteModule:
    return FiniteModule(R, (), [() for _ in range(R.order)], f"0 over {R.label}")


def direct_sum(M1: FiniteModule, M2: FiniteModule, label: str | None = None) -> FiniteModule:
    """External direct sum keeping injections and projections as homomorphisms."""
    if M1.ring != M2.ring:
        raise ConstructionError("direct_sum needs modules over the same ring")
    k1, k2 = len(M1.orders), len(M2.orders)
    z1, z2 = (0,) * k1, (0,) * k2
    action = [[M1.elements[y] + z2 for y in M1.action[r]] + [z1 + M2.elements[y] for y in M2.action[r]]
              for r in range(M1.ring.order)]
    M = FiniteModule(M1.ring, M1.orders + M2.orders, action,
                     label or f"direct_sum({M1.label}, {M2.label})")
    M.factors = (M1, M2)
    M.injections = (
        Homomorphism(M1, M, [M1.elements[g] + z2 for g in M1.generators]),
        Homomorphism(M2, M, [z1 + M2.elements[g] for g in M2.generators]),
    )
    M.projections = (
        Homomorphism(M, M1, [M1.index(M.elements[g][:k1]) for g in M.generators]),
        Homomorphism(M, M2, [M2.index(M.elements[g][k1:]) for g in M.generators]),
    )
    return M


def build_module(ring: FiniteRing, spec) -> FiniteModule:
    """Build a module from ``"regular"``, ``{"regular": true}``, ``{"cyclic_orders", "action"}``,
    ``{"cyclic_orders", "action": "scalar"}``, ``{"zero": true}`` or ``{"direct_sum": [spec, spec]}``."""
    if isinstance(spec, FiniteModule):
        return spec
    if spec == "regular" or (isinstance(spec, dict) and spec.get("regular")):
        return regular(ring)
    if isinstance(spec, dict) and spec.get("zero"):
        return zero_module(ring)
    if isinstance(spec, dict) and "direct_sum" in spec:
        parts = [build_module(ring, s) for s in spec["direct_sum"]]
        if len(parts) < 2:
            raise ConstructionError("direct_sum needs two summands")
        M = parts[0]
        for P in parts[1:]:
            M = direct_sum(M, P)
        return M
    if isinstance(spec, dict) and "cyclic_orders" in spec:
        orders = spec["cyclic_orders"]
        action = spec.get("action", "scalar")
        if action == "scalar":
            return scalar_module(ring, orders, spec.get("label"))
        if isinstance(action, dict):
            action = [action[str(r)] if str(r) in action else action[r] for r in range(ring.order)]
        return FiniteModule(ring, orders, action, spec.get("label", "module"))
    raise ConstructionError(f"cannot build a module from {spec!r}")


# ---------------------------------------------------------------------------
# homomorphisms

def iter_homs(M: FiniteModule, N: FiniteModule,
              candidates: Sequence[Sequence[int]] | None = None) -> Iterator[Homomorphism]:
    """All homomorphisms ``M -> N`` in lexicographic order of generator images.

    ``candidates`` optionally restricts the image of each generator.
    """
    if M.ring != N.ring:
        raise ConstructionError("Hom needs modules over the same ring")
    k = len(M.orders)
    allowed = []
    for i, d in enumerate(M.orders):
        pool = candidates[i] if candidates is not None else range(N.size)
        allowed.append([y for y in pool if N._killed_by(y, d)])
    checks: list[list] = [[] for _ in range(k)]
    for r in M.ring_generators:
        for i in range(k):
            t = M.elements[M.action[r][i]]
            level = max([j for j, c in enumerate(t) if c] + [i])
            checks[level].append((r, i, t))
    images = [0] * k

    def ok(j):
        for r, i, t in checks[j]:
            if N.combine(t, images) != N.act[r][images[i]]:
                return False
        return True

    def walk(j):
        if j == k:
            yield Homomorphism(M, N, images, validate=False)
            return
        for y in allowed[j]:
            images[j] = y
            if ok(j):
                yield from walk(j + 1)
        images[j] = 0

    yield from walk(0)


def hom_set(M: FiniteModule, N: FiniteModule) -> list[Homomorphism]:
    out = []
    for f in iter_homs(M, N):
        out.append(f)
        check_cap("hom_count", len(out))
    return out


def kernel(f: Homomorphism) -> Submodule:
    return f.kernel


def image(f: Homomorphism) -> Submodule:
    return f.image


def identity(M: FiniteModule) -> Homomorphism:
    return Homomorphism(M, M, M.generators, validate=False)


def zero_map(M: FiniteModule, N: FiniteModule) -> Homomorphism:
    return Homomorphism(M, N, [0] * len(M.orders), validate=False)


# ---------------------------------------------------------------------------
# submodules

def _sumset(M: FiniteModule, m1: int, m2: int) -> int:
    b2 = bits(m2)
    out = 0
    for x in bits(m1):
        row = M.add[x]
        for y in b2:
            out |= 1 << row[y]
    return out


def span(M: FiniteModule, generators: Iterable[int]) -> Submodule:
    gens = tuple(M.index(g) for g in generators)
    m = 1
    for g in gens:
        m = _sumset(M, m, M.cyclic[g])
    return Submodule(m, gens)


def submodule_sum(M: FiniteModule, A: Submodule, B: Submodule) -> Submodule:
    return Submodule(_sumset(M, A.members, B.members), A.generators + B.generators)


def intersection(A: Submodule, B: Submodule) -> Submodule:
    return Submodule(A.members & B.members)


def _enumerate_submodules(M: FiniteModule) -> list[Submodule]:
    first: dict[int, int] = {}
    for m in range(M.size):
        first.setdefault(M.cyclic[m], m)
    cyclics = sorted(first)
    start = Submodule(1, ())
    seen = {1: start}
    queue = [start]
    while queue:
        N = queue.pop()
        for c in cyclics:
            if c & ~N.members == 0:
                continue
            J = _sumset(M, N.members, c)
            if J not in seen:
                seen[J] = Submodule(J, N.generators + (first[c],))
                check_cap("submodule_count", len(seen))
                queue.append(seen[J])
    return sorted(seen.values(), key=lambda N: (N.size, N.members))


def submodules(M: FiniteModule) -> list[Submodule]:
    return M.submodules


def is_submodule(M: FiniteModule, members: int) -> bool:
    el = bits(members)
    if not members & 1:
        return False
    return all(members >> M.add[x][y] & 1 for x in el for y in el) and all(
        members >> M.act[r][x] & 1 for x in el for r in range(M.ring.order))


def is_essential(N: Submodule, M: FiniteModule, within: Submodule | None = None) -> bool:
    """``N`` essential in ``within`` (default ``M``): every nonzero ``m`` has ``mR`` meeting ``N``."""
    scope = within.members if within is not None else (1 << M.size) - 1
    if N.members & ~scope:
        raise ValueError("N is not contained in the ambient submodule")
    for m in bits(scope & ~1):
        if not M.cyclic[m] & N.members & ~1:
            return False
    return True


def is_closed(N: Submodule, M: FiniteModule) -> bool:
    for P in M.submodules:
        if P.size > N.size and N <= P and is_essential(N, M, within=P):
            return False
    return True


def complement_of(N: Submodule, M: FiniteModule) -> Submodule | None:
    """First submodule ``C`` (in (size, bitmask) order) with ``N + C = M`` and ``N & C = 0``."""
    want = M.size // N.size if M.size % N.size == 0 else None
    if want is None:
        return None
    for C in M.submodules:
        if C.size == want and C.members & N.members == 1:
            return C
    return None


def projection_along(M: FiniteModule, N: Submodule, C: Submodule) -> Homomorphism:
    """The idempotent with image ``N`` and kernel ``C`` for ``M = N + C``."""
    split = {}
    for n in bits(N.members):
        for c in bits(C.members):
            split[M.add[n][c]] = n
    return Homomorphism(M, M, [split[g] for g in M.generators])


def summand_by_complement(N: Submodule, M: FiniteModule) -> SummandCertificate | None:
    C = complement_of(N, M)
    if C is None:
        return None
    e = projection_along(M, N, C)
    if e.compose(e) != e or e.image.members != N.members or e.kernel.members != C.members:
        raise AssertionError("reconstructed idempotent does not match the decomposition")
    return SummandCertificate(C, e)


def summand_by_idempotent(N: Submodule, M: FiniteModule) -> SummandCertificate | None:
    e = M.idempotent_images.get(N.members)
    if e is None:
        return None
    return SummandCertificate(e.kernel, e)


def is_direct_summand(N: Submodule, M: FiniteModule, cross_check: bool = False) -> Verdict:
    """HOLDS with a :class:`SummandCertificate`, or FAILS.

    The complement-search route decides; with ``cross_check`` the idempotent
    search over ``End(M)`` runs as well and any disagreement raises.
    """
    cert = summand_by_complement(N, M)
    if cross_check:
        other = summand_by_idempotent(N, M)
        if (cert is None) != (other is None):
            raise AssertionError(f"summand routes disagree on {N}")
    if cert is None:
        return Verdict("direct_summand", Status.FAILS, witness={"submodule": N})
    return Verdict("direct_summand", Status.HOLDS, certificate=cert)


def quotient(M: FiniteModule, N: Submodule) -> tuple[FiniteModule, Homomorphism]:
    members = bits(N.members)
    rep = [-1] * M.size
    reps = []
    for m in range(M.size):
        if rep[m] < 0:
            for n in members:
                rep[M.add[m][n]] = m
            reps.append(m)
    orders, gens, coords = cyclic_decomposition(reps, lambda a, b: rep[M.add[a][b]], 0)
    action = [[coords[rep[M.act[r][g]]] for g in gens] for r in range(M.ring.order)]
    Q = FiniteModule(M.ring, orders, action, f"{M.label}/{N.elements}")
    proj = Homomorphism(M, Q, [coords[rep[g]] for g in M.generators])
    if proj.kernel.members != N.members or proj.image.members != (1 << Q.size) - 1:
        raise AssertionError("quotient projection is not onto with kernel N")
    return Q, proj


def as_module(M: FiniteModule, N: Submodule) -> tuple[FiniteModule, Homomorphism]:
    """``N`` as a module in its own right, with the inclusion into ``M``."""
    orders, gens, coords = cyclic_decomposition(bits(N.members), lambda a, b: M.add[a][b], 0)
    action = [[coords[M.act[r][g]] for g in gens] for r in range(M.ring.order)]
    sub = FiniteModule(M.ring, orders, action, f"{M.label}|{N.elements}")
    inc = Homomorphism(sub, M, gens)
    if inc.image.members != N.members or inc.kernel.members != 1:
        raise AssertionError("inclusion is not an isomorphism onto N")
    return sub, inc


def annihilator_in_ring(M: FiniteModule) -> RightIdeal:
    R = M.ring
    m = mask_of(r for r in range(R.order) if all(y == 0 for y in M.act[r]))
    from .finring import is_two_sided
    if not is_two_sided(R, m):
        raise AssertionError("module annihilator is not two-sided")
    return RightIdeal(m, tuple(bits(m)))


def decomposes_along(N: Submodule, M: FiniteModule) -> bool:
    """``N = (N & M1) + (N & M2)`` for ``M = M1 + M2`` built by :func:`direct_sum`."""
    if not hasattr(M, "factors"):
        raise ValueError("decomposes_along needs a module built by direct_sum")
    p1, i1 = M.projections[0], M.injections[0]
    return all(N.members >> i1.table[p1.table[m]] & 1 for m in bits(N.members))


def singular_submodule(M: FiniteModule) -> Submodule:
    """``Z(M)``: elements whose right annihilator in ``R`` is essential in ``R_R``."""
    from .finring import is_essential_right_ideal

    R = M.ring
    m = mask_of(x for x in range(M.size)
                if is_essential_right_ideal(R, mask_of(r for r in range(R.order) if M.act[r][x] == 0)))
    return Submodule(m)


def ideal_splitting(R: FiniteRing, I: RightIdeal, gens: Sequence[int]) -> list[Homomorphism] | None:
    """Split the free cover ``R^k -> I``, ``(r_i) -> sum g_i r_i``, if possible.

    A splitting is ``x -> (s_1(x), ..., s_k(x))`` with ``s_i`` in ``Hom(I, R)``
    and ``sum g_i s_i(x) = x``; it suffices to check the additive generators of
    ``I``. Returns the maps ``s_i`` or ``None``.
    """
    Mreg = regular(R)
    N = Submodule(mask_of(Mreg.module_element[a] for a in I.elements))
    Imod, inc = as_module(Mreg, N)
    H = hom_set(Imod, Mreg)
    h = tuple(Mreg.ring_element[y] for y in inc.images)
    k = len(gens)
    if k == 0:
        return [] if not h else None

    def vec(i, s):
        return tuple(R.mul[gens[i]][Mreg.ring_element[y]] for y in s.images)

    def vsub(a, b):
        return tuple(R.sub(x, y) for x, y in zip(a, b))

    last = {}
    for s in H:
        last.setdefault(vec(k - 1, s), s)

    def search(i, need):
        if i == k - 1:
            s = last.get(need)
            return None if s is None else [s]
        for s in H:
            rest = search(i + 1, vsub(need, vec(i, s)))
            if rest is not None:
                return [s] + rest
        return None

    return search(0, h)
