"""Finite rings with identity as dense Cayley tables, and exact ring-property deciders.

Elements are the indices ``0 .. order-1``. Tables are validated eagerly (abelian
group law, associativity, two-sided identity, both distributive laws), so a
:class:`FiniteRing` that exists is a ring.
"""

from __future__ import annotations

import ast
import itertools
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._core import (CapacityError, ConstructionError, IndexSet, Status, Verdict, bits, check_cap,
                    current_caps, mask_of, run_decider)

RING_PROPERTIES = ("vn_regular", "right_rickart", "baer", "right_nonsingular",
                   "right_semihereditary", "reduced", "domain")


class RightIdeal(IndexSet):
    """A right ideal (also used for two-sided ideals) as a bitmask over ring elements."""


class FiniteRing:
    def __init__(self, add, mul, zero: int, one: int, label: str = "table", *, validate: bool = True):
        self.add = tuple(tuple(int(x) for x in row) for row in add)
        self.mul = tuple(tuple(int(x) for x in row) for row in mul)
        self.order = len(self.add)
        self.zero = int(zero)
        self.one = int(one)
        self.label = label
        check_cap("ring_construction", self.order)
        if validate:
            self._validate()
        self.neg = tuple(row.index(self.zero) for row in self.add)

    def _validate(self) -> None:
        n = self.order
        if n == 0:
            raise ConstructionError("a ring needs at least one element")
        for name, T in (("addition", self.add), ("multiplication", self.mul)):
            if len(T) != n or any(len(row) != n for row in T):
                raise ConstructionError(f"{name} table is not {n}x{n}")
            if any(not 0 <= x < n for row in T for x in row):
                raise ConstructionError(f"{name} table has entries outside 0..{n - 1}")
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise ConstructionError("zero/one out of range")
        A = np.array(self.add, dtype=np.int32)
        M = np.array(self.mul, dtype=np.int32)
        idx = np.arange(n)
        if not (A[self.zero] == idx).all() or not (A[:, self.zero] == idx).all():
            raise ConstructionError(f"additive identity: {self.zero} is not a two-sided zero")
        if not (A == A.T).all():
            a, b = map(int, np.argwhere(A != A.T)[0])
            raise ConstructionError(f"additive commutativity fails at ({a}, {b})")
        if not ((A == self.zero).sum(axis=1) >= 1).all():
            a = int(np.argmin((A == self.zero).sum(axis=1)))
            raise ConstructionError(f"additive inverse: element {a} has none")
        if not (M[self.one] == idx).all() or not (M[:, self.one] == idx).all():
            raise ConstructionError(f"multiplicative identity: {self.one} is not a two-sided one")
        for a in range(n):
            # (a+b)+c == a+(b+c) and (ab)c == a(bc), for all b, c
            for name, T in (("additive associativity", A), ("multiplicative associativity", M)):
                bad = T[T[a]] != T[a][T]
                if bad.any():
                    b, c = map(int, np.argwhere(bad)[0])
                    raise ConstructionError(f"{name} fails at ({a}, {b}, {c})")
            left = M[a][A] != A[M[a][:, None], M[a][None, :]]
            if left.any():
                b, c = map(int, np.argwhere(left)[0])
                raise ConstructionError(f"left distributivity fails at ({a}, {b}, {c})")
            col = M[:, a]
            right = col[A] != A[col[:, None], col[None, :]]
            if right.any():
                b, c = map(int, np.argwhere(right)[0])
                raise ConstructionError(f"right distributivity fails at ({b}, {c}, {a})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return (self.add, self.mul, self.zero, self.one) == (other.add, other.mul, other.zero, other.one)

    def __hash__(self) -> int:
        return hash((self.add, self.mul, self.zero, self.one))

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, order={self.order})"

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    @cached_property
    def idempotents(self) -> list[int]:
        return [e for e in range(self.order) if self.mul[e][e] == e]

    @cached_property
    def units(self) -> list[int]:
        return [u for u in range(self.order) if self.one in self.mul[u]]

    @cached_property
    def principal_right(self) -> tuple[int, ...]:
        """Bitmask of ``aR`` for every ``a``; ``aR`` is already an additive subgroup."""
        return tuple(mask_of(self.mul[a]) for a in range(self.order))

    @cached_property
    def principal_left(self) -> tuple[int, ...]:
        return tuple(mask_of(self.mul[r][a] for r in range(self.order)) for a in range(self.order))

    @cached_property
    def additive_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.zero:
                x = self.add[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @property
    def is_commutative(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.order) for b in range(a))


# ---------------------------------------------------------------------------
# constructors

def zmod(n: int) -> FiniteRing:
    if n < 1:
        raise ConstructionError("zmod needs n >= 1")
    check_cap("ring_construction", n)
    r = range(n)
    return FiniteRing([[(a + b) % n for b in r] for a in r], [[(a * b) % n for b in r] for a in r],
                      0, 1 % n, f"zmod({n})")


def product(*rings: FiniteRing) -> FiniteRing:
    """Direct product; element ``(x_1, ..., x_k)`` has mixed-radix index with ``x_1`` most significant."""
    if not rings:
        raise ConstructionError("product needs at least one factor")
    sizes = [R.order for R in rings]
    n = int(np.prod(sizes))
    check_cap("ring_construction", n)
    tuples = list(itertools.product(*(range(s) for s in sizes)))
    index = {t: i for i, t in enumerate(tuples)}
    add = [[index[tuple(R.add[x][y] for R, x, y in zip(rings, s, t))] for t in tuples] for s in tuples]
    mul = [[index[tuple(R.mul[x][y] for R, x, y in zip(rings, s, t))] for t in tuples] for s in tuples]
    zero = index[tuple(R.zero for R in rings)]
    one = index[tuple(R.one for R in rings)]
    return FiniteRing(add, mul, zero, one, f"product({', '.join(R.label for R in rings)})")


def matrix(R: FiniteRing, k: int) -> FiniteRing:
    """``k x k`` matrices over ``R``, entries row-major in mixed radix."""
    if k < 1:
        raise ConstructionError("matrix size must be >= 1")
    n = R.order ** (k * k)
    check_cap("ring_construction", n)
    mats = list(itertools.product(range(R.order), repeat=k * k))
    index = {m: i for i, m in enumerate(mats)}

    def mm(a, b):
        out = []
        for i in range(k):
            for j in range(k):
                s = R.zero
                for t in range(k):
                    s = R.add[s][R.mul[a[i * k + t]][b[t * k + j]]]
                out.append(s)
        return index[tuple(out)]

    add = [[index[tuple(R.add[x][y] for x, y in zip(a, b))] for b in mats] for a in mats]
    mul = [[mm(a, b) for b in mats] for a in mats]
    ident = tuple(R.one if i == j else R.zero for i in range(k) for j in range(k))
    return FiniteRing(add, mul, index[(R.zero,) * (k * k)], index[ident], f"matrix({R.label}, {k})")


def poly_quotient(R: FiniteRing, coeffs: Sequence[int]) -> FiniteRing:
    """``R[x] / (f)`` for monic ``f``; ``coeffs`` run from the constant term up to the leading 1.

    Elements are coefficient vectors of length ``deg f`` (constant term first),
    indexed in mixed radix with the constant term most significant.
    """
    coeffs = [int(c) for c in coeffs]
    d = len(coeffs) - 1
    if d < 1:
        raise ConstructionError("poly_quotient needs a polynomial of degree >= 1")
    if coeffs[-1] != R.one:
        raise ConstructionError("poly_quotient needs a monic polynomial")
    if any(not 0 <= c < R.order for c in coeffs):
        raise ConstructionError("polynomial coefficients must be ring element indices")
    n = R.order ** d
    check_cap("ring_construction", n)
    vecs = list(itertools.product(range(R.order), repeat=d))
    index = {v: i for i, v in enumerate(vecs)}

    def pmul(a, b):
        prod = [R.zero] * (2 * d - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = R.add[prod[i + j]][R.mul[x][y]]
        # x^d = -(c_0 + ... + c_{d-1} x^{d-1})
        for top in range(2 * d - 2, d - 1, -1):
            c = prod[top]
            if c == R.zero:
                continue
            prod[top] = R.zero
            for i in range(d):
                prod[top - d + i] = R.sub(prod[top - d + i], R.mul[c][coeffs[i]])
        return index[tuple(prod[:d])]

    add = [[index[tuple(R.add[x][y] for x, y in zip(a, b))] for b in vecs] for a in vecs]
    mul = [[pmul(a, b) for b in vecs] for a in vecs]
    one = index[(R.one,) + (R.zero,) * (d - 1)]
    return FiniteRing(add, mul, index[(R.zero,) * d], one,
                      f"poly_quotient({R.label}, {coeffs})")


def table(add, mul, zero: int, one: int, label: str = "table") -> FiniteRing:
    return FiniteRing(add, mul, zero, one, label)


_CONSTRUCTORS = {"zmod": zmod, "product": product, "matrix": matrix,
                 "poly_quotient": poly_quotient, "table": table}


def build_ring(spec) -> FiniteRing:
    """Build a ring from an expression string, an expression tree, or pass a ring through.

    Strings look like ``"product(zmod(2), zmod(3))"``. Trees are
    ``{"op": name, "args": [...]}`` with nested trees for ring arguments.
    """
    if isinstance(spec, FiniteRing):
        return spec
    if isinstance(spec, str):
        try:
            node = ast.parse(spec.strip(), mode="eval").body
        except SyntaxError as exc:
            raise ConstructionError(f"cannot parse ring expression {spec!r}") from exc
        return _eval_node(node)
    if isinstance(spec, dict):
        if "tables" in spec:
            t = spec["tables"]
            return FiniteRing(t["add"], t["mul"], t["zero"], t["one"], spec.get("label", "table"))
        if "constructor" in spec:
            return build_ring(spec["constructor"])
        op = spec.get("op")
        if op not in _CONSTRUCTORS:
            raise ConstructionError(f"unknown ring constructor {op!r}")
        args = [build_ring(a) if isinstance(a, (dict, FiniteRing)) else a for a in spec.get("args", [])]
        return _CONSTRUCTORS[op](*args)
    raise ConstructionError(f"cannot build a ring from {type(spec).__name__}")


def _eval_node(node):
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        name = node.func.id
        if name not in _CONSTRUCTORS:
            raise ConstructionError(f"unknown ring constructor {name!r}")
        return _CONSTRUCTORS[name](*(_eval_node(a) for a in node.args))
    try:
        return ast.literal_eval(node)
    except ValueError as exc:
        raise ConstructionError(f"unsupported expression {ast.dump(node)}") from exc


def to_expression_tree(label: str):
    """Expression tree for a constructor label, or ``None`` for table-built rings."""
    try:
        node = ast.parse(label, mode="eval").body
    except SyntaxError:
        return None

    def conv(n):
        if isinstance(n, ast.Call) and isinstance(n.func, ast.Name) and n.func.id in _CONSTRUCTORS \
                and n.func.id != "table":
            return {"op": n.func.id, "args": [conv(a) for a in n.args]}
        return ast.literal_eval(n)

    try:
        return conv(node) if isinstance(node, ast.Call) else None
    except ValueError:
        return None


# ---------------------------------------------------------------------------
# ideals

def _sumset(R: FiniteRing, m1: int, m2: int) -> int:
    b2 = bits(m2)
    out = 0
    for x in bits(m1):
        row = R.add[x]
        for y in b2:
            out |= 1 << row[y]
    return out


def right_ideal_closure(R: FiniteRing, generators: Iterable[int]) -> RightIdeal:
    gens = tuple(generators)
    m = 1 << R.zero
    for g in gens:
        m = _sumset(R, m, R.principal_right[g])
    return RightIdeal(m, gens)


def right_annihilator(R: FiniteRing, X: Iterable[int]) -> RightIdeal:
    X = list(X)
    m = mask_of(r for r in range(R.order) if all(R.mul[x][r] == R.zero for x in X))
    return RightIdeal(m, tuple(bits(m)))


def left_annihilator(R: FiniteRing, X: Iterable[int]) -> RightIdeal:
    """``{r : r x = 0 for x in X}`` (a left ideal, returned in the same container)."""
    X = list(X)
    m = mask_of(r for r in range(R.order) if all(R.mul[r][x] == R.zero for x in X))
    return RightIdeal(m, tuple(bits(m)))


def idempotents(R: FiniteRing) -> list[int]:
    return list(R.idempotents)


def right_ideals(R: FiniteRing) -> list[RightIdeal]:
    """Every right ideal once, sorted by (size, bitmask)."""
    check_cap("ring_decider", R.order)
    first_gen: dict[int, int] = {}
    for a in range(R.order):
        first_gen.setdefault(R.principal_right[a], a)
    principals = sorted(first_gen)
    start = RightIdeal(1 << R.zero, ())
    seen = {start.members: start}
    queue = [start]
    while queue:
        I = queue.pop()
        for p in principals:
            if p & ~I.members == 0:
                continue
            J = _sumset(R, I.members, p)
            if J not in seen:
                seen[J] = RightIdeal(J, I.generators + (first_gen[p],))
                check_cap("ideal_count", len(seen))
                queue.append(seen[J])
    return sorted(seen.values(), key=lambda I: (I.size, I.members))


def minimal_generators(R: FiniteRing, I: RightIdeal) -> tuple[int, ...]:
    """A smallest generating set of ``I`` as a right ideal (first found in ascending order)."""
    if I.members == 1 << R.zero:
        return ()
    elems = [a for a in I.elements if a != R.zero]
    for k in range(1, len(elems) + 1):
        for combo in itertools.combinations(elems, k):
            m = 1 << R.zero
            for a in combo:
                m = _sumset(R, m, R.principal_right[a])
            if m == I.members:
                return combo
    raise AssertionError("ideal not generated by its own elements")


def is_essential_right_ideal(R: FiniteRing, members: int) -> bool:
    """Every nonzero ``x`` has ``xR`` meeting the ideal outside zero."""
    zero = 1 << R.zero
    return all(R.principal_right[x] & members & ~zero for x in range(R.order) if x != R.zero)


def is_two_sided(R: FiniteRing, members: int) -> bool:
    el = bits(members)
    return all(members >> R.mul[r][x] & 1 and members >> R.mul[x][r] & 1
               for x in el for r in range(R.order))


def annihilator_closure(R: FiniteRing) -> list[tuple[int, tuple[int, ...]]]:
    """Every right annihilator ``r_R(X)``, each with one subset ``X`` realizing it.

    ``r_R(X)`` is the intersection of the ``r_R(x)``, so closing the element
    annihilators under intersection gives all of them. Discovery order is
    deterministic: singletons by element index, then pairwise intersections.
    """
    found: dict[int, tuple[int, ...]] = {}
    for a in range(R.order):
        m = right_annihilator(R, [a]).members
        found.setdefault(m, (a,))
    frontier = list(found)
    while frontier:
        new = []
        for m1 in frontier:
            for m2, X2 in list(found.items()):
                m = m1 & m2
                if m not in found:
                    found[m] = tuple(sorted(set(found[m1]) | set(X2)))
                    new.append(m)
        frontier = new
    return list(found.items())


# ---------------------------------------------------------------------------
# deciders

def _vn_regular(R):
    for a in range(R.order):
        row = R.mul[a]
        if not any(R.mul[row[x]][a] == a for x in range(R.order)):
            yield {"element": a}


def _idempotent_ideals(R) -> dict[int, int]:
    out: dict[int, int] = {}
    for e in R.idempotents:
        out.setdefault(R.principal_right[e], e)
    return out


def _right_rickart(R, cert):
    eR = _idempotent_ideals(R)
    for a in range(R.order):
        ann = right_annihilator(R, [a])
        e = eR.get(ann.members)
        if e is None:
            yield {"element": a, "annihilator": ann.elements}
        else:
            cert[a] = e


def _baer(R, cert):
    eR = _idempotent_ideals(R)
    for m, X in annihilator_closure(R):
        e = eR.get(m)
        if e is None:
            yield {"subset": list(X), "annihilator": bits(m)}
        else:
            cert[X] = e


def singular_ideal(R: FiniteRing) -> RightIdeal:
    """``Z(R_R)``: elements whose right annihilator is essential."""
    m = mask_of(a for a in range(R.order)
                if is_essential_right_ideal(R, right_annihilator(R, [a]).members))
    return RightIdeal(m, tuple(bits(m)))


def _right_nonsingular(R):
    for a in singular_ideal(R).elements:
        if a != R.zero:
            yield {"element": a, "annihilator": right_annihilator(R, [a]).elements}


def _reduced(R):
    for a in range(R.order):
        if a == R.zero:
            continue
        x, seen = a, set()
        while x not in seen:
            seen.add(x)
            x = R.mul[x][a]
            if x == R.zero:
                yield {"nilpotent": a}
                break


def _domain(R):
    if R.order == 1:
        yield {"reason": "zero ring"}
        return
    for a in range(R.order):
        for b in range(R.order):
            if a != R.zero and b != R.zero and R.mul[a][b] == R.zero:
                yield {"zero_divisors": [a, b]}
                return


def _right_semihereditary(R, cert):
    from .finmod import ideal_splitting

    for I in right_ideals(R):
        gens = minimal_generators(R, I)
        split = ideal_splitting(R, I, gens)
        if split is None:
            yield {"ideal": I.elements, "generators": list(gens)}
        else:
            cert[tuple(I.elements)] = {"generators": list(gens), "splitting": split}


def decide_ring_property(R: FiniteRing, prop: str, all_witnesses: bool = False) -> Verdict:
    if prop not in RING_PROPERTIES:
        raise ValueError(f"unknown ring property {prop!r}; expected one of {RING_PROPERTIES}")
    try:
        check_cap("ring_decider", R.order)
    except CapacityError as exc:
        return Verdict(prop, Status.UNSUPPORTED, reason=str(exc))
    cert: dict = {}
    gens = {
        "vn_regular": lambda: _vn_regular(R),
        "right_rickart": lambda: _right_rickart(R, cert),
        "baer": lambda: _baer(R, cert),
        "right_nonsingular": lambda: _right_nonsingular(R),
        "right_semihereditary": lambda: _right_semihereditary(R, cert),
        "reduced": lambda: _reduced(R),
        "domain": lambda: _domain(R),
    }
    return run_decider(prop, gens[prop](), all_witnesses, certificate=lambda: cert or None)


def jacobson_radical(R: FiniteRing) -> RightIdeal:
    """``{x : 1 - r x is a unit for every r}``."""
    check_cap("ring_decider", R.order)
    units = set(R.units)
    m = mask_of(x for x in range(R.order)
                if all(R.sub(R.one, R.mul[r][x]) in units for r in range(R.order)))
    if not is_two_sided(R, m):
        raise AssertionError("Jacobson radical is not a two-sided ideal")
    return RightIdeal(m, tuple(bits(m)))


def quotient_ring(R: FiniteRing, ideal: RightIdeal) -> tuple[FiniteRing, list[int]]:
    """``R / I`` for a two-sided ideal, with the coset index of every element of ``R``."""
    if not is_two_sided(R, ideal.members):
        raise ValueError("quotient_ring needs a two-sided ideal")
    members = ideal.elements
    coset_of = [-1] * R.order
    reps = []
    for a in range(R.order):
        if coset_of[a] < 0:
            for i in members:
                coset_of[R.add[a][i]] = len(reps)
            reps.append(a)
    add = [[coset_of[R.add[a][b]] for b in reps] for a in reps]
    mul = [[coset_of[R.mul[a][b]] for b in reps] for a in reps]
    Q = FiniteRing(add, mul, coset_of[R.zero], coset_of[R.one], f"{R.label}/{ideal.elements}")
    return Q, coset_of


def is_isomorphic(R: FiniteRing, S: FiniteRing) -> dict[int, int] | None:
    """Brute-force ring isomorphism search (small rings only); returns the element map or ``None``."""
    n = R.order
    check_cap("isomorphism_order", n)
    if S.order != n or sorted(R.additive_orders) != sorted(S.additive_orders) \
            or len(R.idempotents) != len(S.idempotents) or len(R.units) != len(S.units):
        return None
    from .finmod import cyclic_decomposition

    orders, gens, coords = cyclic_decomposition(range(n), lambda a, b: R.add[a][b], R.zero)
    elements = sorted(coords, key=lambda a: coords[a])
    r_idem, s_idem = set(R.idempotents), set(S.idempotents)
    r_unit, s_unit = set(R.units), set(S.units)
    candidates = [[s for s in range(n) if S.additive_orders[s] == d
                   and (s in s_idem) == (g in r_idem) and (s in s_unit) == (g in r_unit)]
                  for d, g in zip(orders, gens)]

    def image(a, images):
        v = S.zero
        for c, img in zip(coords[a], images):
            for _ in range(c):
                v = S.add[v][img]
        return v

    k = len(gens)
    # products of generators whose coordinates only involve the first j generators
    checks = [[] for _ in range(k)]
    for a in range(k):
        for b in range(k):
            p = R.mul[gens[a]][gens[b]]
            last = max([i for i, c in enumerate(coords[p]) if c] + [a, b])
            checks[last].append((a, b, p))

    def extend(images):
        j = len(images)
        if j == k:
            f = {a: image(a, images) for a in elements}
            if len(set(f.values())) == n and f[R.one] == S.one and all(
                    f[R.mul[a][b]] == S.mul[f[a]][f[b]] for a in range(n) for b in range(n)):
                return f
            return None
        for s in candidates[j]:
            trial = images + [s]
            if all(image(p, trial + [S.zero] * (k - j - 1)) == S.mul[trial[a]][trial[b]]
                   for a, b, p in checks[j]):
                f = extend(trial)
                if f is not None:
                    return f
        return None

    return extend([])
