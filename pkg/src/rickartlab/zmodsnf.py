"""Finitely generated abelian groups as Z-modules, via exact Smith normal form.

A group ``Z^r + Z_{d_1} + ... + Z_{d_k}`` is an :class:`FgZModule`; coordinates
list the free part first, then the torsion part. A homomorphism is an integer
matrix whose column ``j`` is the image of generator ``j`` (:class:`ZModHom`).

Everything is exact Python integers. Inputs are bounded by ``MAX_ENTRY`` and
intermediate entries by ``OVERFLOW_LIMIT``; exceeding either raises
:class:`ArithmeticOverflow` instead of producing a wrapped or rounded answer.
Transform entries grow with dimension (about 75 bits for 6x6 inputs with
entries up to 20, about 150 bits at 10x10), so the intermediate budget is
2**256 rather than a machine word.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._core import Status, Verdict

MAX_ENTRY = 10**9
OVERFLOW_LIMIT = 2**256
DEFAULT_BOUND = 5
SWEEP_LIMIT = 200_000


class ArithmeticOverflow(ArithmeticError):
    pass


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _as_rows(A) -> list[list[int]]:
    if isinstance(A, np.ndarray):
        A = A.tolist()
    rows = [[int(x) for x in row] for row in A]
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows


def _guard(*values: int) -> None:
    for v in values:
        if abs(v) > OVERFLOW_LIMIT:
            raise ArithmeticOverflow(f"intermediate entry {v} exceeds {OVERFLOW_LIMIT}")


def _nearest_quotient(a: int, b: int) -> int:
    # symmetric remainder keeps transform entries small
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


@dataclass(frozen=True)
class SnfResult:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in divisibility-chain form."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        return [int(self.D[i, i]) for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def smith_normal_form(A: Sequence[Sequence[int]] | np.ndarray, n_cols: int | None = None) -> SnfResult:
    """Smith normal form with transforms and their inverses.

    Pivot rule: the smallest nonzero absolute value in the active block, ties
    broken by row then column. ``n_cols`` is only needed for a matrix with no
    rows.
    """
    D = _as_rows(A)
    m = len(D)
    n = len(D[0]) if m else (n_cols or 0)
    for row in D:
        for x in row:
            if abs(x) > MAX_ENTRY:
                raise ArithmeticOverflow(f"input entry {x} exceeds {MAX_ENTRY}")
    U, Ui = _identity(m), _identity(m)
    V, Vi = _identity(n), _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        for M in (D, U):
            rd, rs = M[dst], M[src]
            for k in range(len(rd)):
                rd[k] += q * rs[k]
            _guard(*rd)
        for row in Ui:
            row[src] -= q * row[dst]
            _guard(row[src])

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]
                _guard(row[dst])
        rd, rs = Vi[src], Vi[dst]
        for k in range(len(rd)):
            rd[k] -= q * rs[k]
        _guard(*rd)

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    for t in range(min(m, n)):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                x = D[i][j]
                if x and (pivot is None or abs(x) < pivot[0]):
                    pivot = (abs(x), i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            for i in range(t + 1, m):
                add_row(i, t, -_nearest_quotient(D[i][t], D[t][t]))
            for j in range(t + 1, n):
                add_col(j, t, -_nearest_quotient(D[t][j], D[t][t]))
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, pi, pj = min(rest, key=lambda r: (r[0], r[1], r[2]))
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            negate_row(t)

    def arr(rows, r, c):
        out = np.zeros((r, c), dtype=object)
        for i in range(r):
            for j in range(c):
                out[i, j] = rows[i][j]
        return out

    return SnfResult(arr(U, m, m), arr(D, m, n), arr(V, n, n), arr(Ui, m, m), arr(Vi, n, n))


def _matmul(A, B) -> list[list[int]]:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def integer_kernel(A, n_cols: int | None = None) -> list[list[int]]:
    """Basis (as a list of vectors) of ``{x in Z^n : A x = 0}``."""
    rows = _as_rows(A)
    n = len(rows[0]) if rows else (n_cols or 0)
    if not rows:
        return [list(v) for v in _identity(n)]
    res = smith_normal_form(rows)
    r = res.rank
    return [[int(res.V[i, j]) for i in range(n)] for j in range(r, n)]


@dataclass(frozen=True)
class IntegerSolution:
    solution: list[int] | None
    diagonal: list[int]
    transformed_rhs: list[int]
    failed_index: int | None = None


def solve_integer_system(A, b: Sequence[int], n_cols: int | None = None) -> IntegerSolution:
    """One integer solution of ``A x = b``, or the SNF obstruction when none exists."""
    rows = _as_rows(A)
    m = len(rows)
    n = len(rows[0]) if rows else (n_cols or 0)
    if m == 0:
        return IntegerSolution([0] * n, [], [])
    res = smith_normal_form(rows)
    c = [sum(int(res.U[i, k]) * int(b[k]) for k in range(m)) for i in range(m)]
    diag = res.diagonal
    y = [0] * n
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return IntegerSolution(None, diag, c, i)
        elif c[i] % d:
            return IntegerSolution(None, diag, c, i)
        else:
            y[i] = c[i] // d
    x = [sum(int(res.V[i, k]) * y[k] for k in range(n)) for i in range(n)]
    return IntegerSolution(x, diag, c)


# ---------------------------------------------------------------------------
# finitely generated abelian groups

@dataclass(frozen=True)
class FgZModule:
    """``Z^rank + Z_{torsion[0]} + ...`` with torsion in divisibility-chain form."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion factor {d} must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_orders(cls, rank: int, orders: Sequence[int]) -> "FgZModule":
        """Canonical form of ``Z^rank + Z_{o_1} + ...`` for arbitrary cyclic orders."""
        orders = [o for o in orders if o != 1]
        if not orders:
            return cls(rank, ())
        res = smith_normal_form([[o if i == j else 0 for j in range(len(orders))]
                                 for i, o in enumerate(orders)])
        return cls(rank, tuple(d for d in res.diagonal if d > 1))

    @property
    def dims(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus; 0 marks a free coordinate."""
        return (0,) * self.rank + self.torsion

    @property
    def exponent(self) -> int:
        return math.lcm(*self.torsion) if self.torsion else 1

    @property
    def is_zero(self) -> bool:
        return self.dims == 0

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) % m if m else int(x) for x, m in zip(v, self.moduli))

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ZModHom:
    """Homomorphism ``source -> target``; ``matrix[i][j]`` is coordinate ``i`` of the image of generator ``j``."""

    source: FgZModule
    target: FgZModule
    matrix: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        rows = _as_rows(self.matrix) if len(self.matrix) else []
        p, n = self.target.dims, self.source.dims
        if not rows:
            rows = [[0] * n for _ in range(p)]
        if len(rows) != p or any(len(r) != n for r in rows):
            raise ValueError(f"matrix must be {p}x{n}")
        tm = self.target.moduli
        rows = [[x % tm[i] if tm[i] else x for x in row] for i, row in enumerate(rows)]
        for j, d in enumerate(self.source.moduli):
            if d == 0:
                continue
            for i, e in enumerate(tm):
                if (d * rows[i][j]) % e if e else rows[i][j]:
                    raise ValueError(
                        f"generator {j} has order {d} but its image coordinate {i} "
                        f"({rows[i][j]}) is incompatible with modulus {e}")
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in rows))

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        out = [sum(a * x for a, x in zip(row, v)) for row in self.matrix]
        return self.target.reduce(out)

    def compose(self, other: "ZModHom") -> "ZModHom":
        """``self`` after ``other``."""
        if other.target != self.source:
            raise ValueError("shape mismatch in composition")
        n = other.source.dims
        cols = [self(other.column(j)) for j in range(n)]
        return ZModHom(other.source, self.target,
                       tuple(tuple(cols[j][i] for j in range(n)) for i in range(self.target.dims)))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.matrix)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    @classmethod
    def identity(cls, M: FgZModule) -> "ZModHom":
        return cls(M, M, tuple(tuple(int(i == j) for j in range(M.dims)) for i in range(M.dims)))

    def render(self) -> str:
        names = [f"x{j}" for j in range(self.source.dims)]
        coords = []
        for i, row in enumerate(self.matrix):
            terms = [f"{a}*{names[j]}" if a != 1 else names[j] for j, a in enumerate(row) if a]
            s = " + ".join(terms) or "0"
            m = self.target.moduli[i]
            coords.append(f"({s}) mod {m}" if m else s)
        return f"({', '.join(names)}) -> ({', '.join(coords)})"


def _present_subgroup(X: list[list[int]], M: FgZModule) -> tuple[FgZModule, list[tuple[int, ...]]]:
    """Canonical presentation of the subgroup of ``M`` generated by the columns of ``X``.

    Returns the abstract group and, per canonical generator, its coordinates in ``M``.
    """
    n = M.dims
    q = len(X[0]) if X and X[0] else 0
    if q == 0:
        return FgZModule(0, ()), []
    mu = M.moduli
    # c in Z^q is a relation iff X c lies in diag(mu) Z^n
    big = [list(X[i]) + [-mu[i] if k == i else 0 for k in range(n)] for i in range(n)]
    rel = [v[:q] for v in integer_kernel(big, n_cols=q + n)]
    if rel:
        R = [[v[i] for v in rel] for i in range(q)]  # q x s, relations as columns
        res = smith_normal_form(R)
        diag = res.diagonal + [0] * (q - len(res.diagonal))
        Ui = res.U_inv
    else:
        diag = [0] * q
        Ui = np.array(_identity(q), dtype=object)
    free, tors = [], []
    for i, d in enumerate(diag):
        if d == 1:
            continue
        c = [int(Ui[k, i]) for k in range(q)]
        image = M.reduce([sum(X[r][k] * c[k] for k in range(q)) for r in range(n)])
        (free if d == 0 else tors).append((d, image))
    group = FgZModule(len(free), tuple(d for d, _ in tors))
    return group, [img for _, img in free] + [img for _, img in tors]


def zhom_kernel(h: ZModHom) -> tuple[FgZModule, ZModHom]:
    """Kernel of ``h`` in canonical form, with its inclusion into ``h.source``."""
    M, N = h.source, h.target
    n, p = M.dims, N.dims
    A = [list(r) for r in h.matrix]
    nu = N.moduli
    if p:
        big = [A[i] + [-nu[i] if k == i else 0 for k in range(p)] for i in range(p)]
        lifts = [v[:n] for v in integer_kernel(big, n_cols=n + p)]
    else:
        lifts = [list(v) for v in _identity(n)]
    X = [[v[i] for v in lifts] for i in range(n)]
    K, gens = _present_subgroup(X, M)
    inc = ZModHom(K, M, tuple(tuple(g[i] for g in gens) for i in range(n)) if K.dims else ())
    if not h.compose(inc).is_zero:
        raise AssertionError("kernel inclusion does not compose to zero")
    return K, inc


def is_injective(h: ZModHom) -> bool:
    return zhom_kernel(h)[0].is_zero


def zsummand_test(inclusion: ZModHom) -> Verdict:
    """Decide whether the image of an injective map is a direct summand.

    HOLDS carries a retraction ``rho`` with ``rho o inclusion = id``. FAILS
    carries the coordinate whose integer/congruence system has no solution,
    together with the SNF diagonal and transformed right-hand side that rule
    it out.
    """
    if not is_injective(inclusion):
        raise ValueError("zsummand_test needs an injective map")
    K, M = inclusion.source, inclusion.target
    q, n = K.dims, M.dims
    B = [list(r) for r in inclusion.matrix]
    kappa, mu = K.moduli, M.moduli
    tors_cols = [j for j in range(n) if mu[j]]
    P = []
    for i in range(q):
        # unknowns: p_0..p_{n-1}, then slack t_l (per column of K), then slack s_j (per torsion col of M)
        k = kappa[i]
        n_t = q if k else 0
        n_s = len(tors_cols) if k else 0
        width = n + n_t + n_s
        rows, rhs = [], []
        for l in range(q):
            row = [B[j][l] for j in range(n)] + [0] * (n_t + n_s)
            if k:
                row[n + l] = k
            rows.append(row)
            rhs.append(int(i == l))
        for s_idx, j in enumerate(tors_cols):
            row = [0] * width
            row[j] = mu[j]
            if k:
                row[n + n_t + s_idx] = k
            rows.append(row)
            rhs.append(0)
        sol = solve_integer_system(rows, rhs, n_cols=width)
        if sol.solution is None:
            return Verdict("summand", Status.FAILS, witness={
                "coordinate": i,
                "reason": f"no homomorphism M -> {K} restricts to the identity on coordinate {i}: "
                          f"congruence system unsolvable",
                "snf_diagonal": sol.diagonal,
                "transformed_rhs": sol.transformed_rhs,
                "failed_row": sol.failed_index,
            })
        P.append(sol.solution[:n])
    rho = ZModHom(M, K, tuple(tuple(r) for r in P) if q else ())
    if rho.compose(inclusion) != ZModHom.identity(K):
        raise AssertionError("retraction check failed")
    return Verdict("summand", Status.HOLDS, certificate={"retraction": rho})


def _ordered_values(bound: int) -> list[int]:
    out = [0]
    for v in range(1, bound + 1):
        out += [v, -v]
    return out


def endomorphism_entries(M: FgZModule, bound: int) -> list[list[int]]:
    """Admissible values per matrix entry (row-major) for endomorphisms with free entries in [-bound, bound]."""
    mu = M.moduli
    choices = []
    for i in range(M.dims):
        for j in range(M.dims):
            e, d = mu[i], mu[j]
            if e == 0 and d == 0:
                choices.append(_ordered_values(bound))
            elif e == 0:
                choices.append([0])
            elif d == 0:
                choices.append(list(range(e)))
            else:
                choices.append([a for a in range(e) if (d * a) % e == 0])
    return choices


def snf_sweep(M: FgZModule, bound: int) -> tuple[dict | None, int, int]:
    """Kernel-and-summand test through SNF for every endomorphism in the bounded box.

    Returns ``(witness, checked, total)``. For a torsion group the box holds
    every endomorphism, so the sweep is an exact Rickart decision that never
    touches the finite-module engine.
    """
    choices = endomorphism_entries(M, bound)
    total = math.prod(len(c) for c in choices)
    n = M.dims
    checked = 0
    for entries in itertools.product(*choices):
        if checked >= SWEEP_LIMIT:
            break
        checked += 1
        mat = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        phi = ZModHom(M, M, mat)
        K, inc = zhom_kernel(phi)
        v = zsummand_test(inc)
        if v.fails:
            return {"endomorphism": phi, "kernel": K, "inclusion": inc, "obstruction": v.witness}, checked, total
    return None, checked, total


def zrickart_check(M: FgZModule, bound: int = DEFAULT_BOUND) -> Verdict:
    """Rickart decision for a finitely generated abelian group.

    Torsion groups are decided exactly by the finite engine. Free groups hold
    structurally (the quotient by a kernel embeds in a free group, so the
    kernel splits); a bounded sweep re-verifies this. Mixed groups have an
    infinite endomorphism ring, so they get a bounded search: FAILS with the
    first kernel that does not split, else UNDECIDED. A map sending a free
    generator onto a cyclic torsion factor Z_d has kernel dZ, so the search
    finds a witness at bound 1; UNDECIDED needs the sweep limit to cut it off.
    """
    if M.rank == 0:
        return _torsion_rickart(M)
    witness, checked, total = snf_sweep(M, bound)
    if witness is not None:
        if not M.torsion:
            raise AssertionError(f"free-module kernel failed to split: {witness['endomorphism'].matrix}")
        return Verdict("rickart", Status.FAILS, witness=witness)
    complete = checked == total
    sweep = {"bound": bound, "checked": checked, "complete": complete}
    if not M.torsion:
        return Verdict("rickart", Status.HOLDS, certificate={
            "justification": "the image of an endomorphism of Z^r is a subgroup of a free "
                             "group, hence free, so the kernel is a direct summand",
            "sweep": sweep})
    return Verdict("rickart", Status.UNDECIDED, certificate={"sweep": sweep},
                   reason=f"no non-split kernel among {checked} endomorphisms with free entries in "
                          f"[-{bound}, {bound}]" + ("" if complete else " (sweep limit reached)"))


def _torsion_rickart(M: FgZModule) -> Verdict:
    from .finmod import abelian_module
    from .modprops import decide_module_property

    if M.is_zero:
        return Verdict("rickart", Status.HOLDS, reason="zero module")
    fm = abelian_module(M.torsion)
    v = decide_module_property(fm, "rickart")
    if not v.fails:
        return Verdict("rickart", v.status, certificate=v.certificate, reason=v.reason)
    phi = v.witness["endomorphism"]
    n = M.dims
    cols = [fm.elements[y] for y in phi.images]
    mat = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    zphi = ZModHom(M, M, mat)
    K, inc = zhom_kernel(zphi)
    return Verdict("rickart", Status.FAILS, witness={
        "endomorphism": zphi, "kernel": K, "inclusion": inc, "finite_witness": v.witness})
