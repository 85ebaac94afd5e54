"""Characters, tensor products, exterior/symmetric powers, and bundle
expression evaluation.

Two independent routes are kept for the plethysm operations:

* the *fast* backend runs Newton's identities over the Adams
  (power-sum) characters of the weight multiset and decomposes the
  resulting character by the alternating Weyl-group inversion;
* the *oracle* backend enumerates subsets of the weight multiset and
  peels highest weights one irreducible character at a time.

Tensor products of decompositions use a Littlewood-Richardson tableau
walk per block.  All kernel functions work on plain integer tuples (one
block at a time); the cached kernels return read-only mappings that
must never be mutated.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb
from types import MappingProxyType

from . import expr as ex
from .dims import block_rank
from .errors import (
    DomainError,
    NotACharacterError,
    OracleBudgetError,
    StructureError,
)
from .weights import BlockWeight, GrassContext, dual_weight, twist

ORACLE_BUDGET = 10**6


def _dominant(t: tuple) -> bool:
    return all(t[i] >= t[i + 1] for i in range(len(t) - 1))


# ---------------------------------------------------------------------------
# Single-block kernels
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _gt_character(lam: tuple):
    """Exact weight multiset of the GL(k) irreducible with highest
    weight ``lam``, via Gelfand-Tsetlin pattern enumeration.

    Negative entries are handled by shifting with a determinant power,
    enumerating, and shifting back.
    """
    k = len(lam)
    if k == 0:
        return MappingProxyType({(): 1})
    if not _dominant(lam):
        raise DomainError(f"highest weight {lam} is not nonincreasing")
    shift = min(lam[-1], 0)
    top = tuple(x - shift for x in lam)
    table: dict[tuple, int] = {}
    weight = [0] * k

    def descend(row: tuple):
        # Weight entries are the successive differences of row sums,
        # read bottom-up through the pattern.
        m = len(row)
        if m == 1:
            weight[0] = row[0] + shift
            key = tuple(weight)
            table[key] = table.get(key, 0) + 1
            return
        total = sum(row)
        for nxt in product(*(range(row[i + 1], row[i] + 1) for i in range(m - 1))):
            weight[m - 1] = total - sum(nxt) + shift
            descend(nxt)

    descend(top)
    return MappingProxyType(table)


def _peel(table, *, virtual: bool) -> dict[tuple, int]:
    """Decompose a weight multiset by repeatedly removing the character
    of its lexicographically largest weight.

    With ``virtual=False`` the input must be a genuine character and any
    negative multiplicity raises :class:`NotACharacterError`.
    """
    rem = {w: c for w, c in table.items() if c}
    out: dict[tuple, int] = {}
    while rem:
        top = max(rem)
        c = rem[top]
        if not virtual and (c < 0 or not _dominant(top)):
            raise NotACharacterError(
                f"peeling hit weight {top} with multiplicity {c}"
            )
        out[top] = c
        for w, m in _gt_character(top).items():
            nv = rem.get(w, 0) - c * m
            if nv:
                rem[w] = nv
            else:
                rem.pop(w, None)
    return out


@lru_cache(maxsize=None)
def _lr_pair(lam: tuple, mu: tuple):
    """Littlewood-Richardson decomposition of V_lam (x) V_mu for GL(k).

    Negative entries are shifted away with determinant powers.  The
    product is computed by filling the smaller shape with a
    lattice-word tableau walk, which yields each constituent once per
    multiplicity.  Constant factors are determinant powers and act by a
    plain coordinate shift.
    """
    if len(lam) != len(mu):
        raise StructureError("block size mismatch in tensor product")
    if len(set(mu)) == 1:
        return MappingProxyType({tuple(x + mu[0] for x in lam): 1})
    if len(set(lam)) == 1:
        return MappingProxyType({tuple(x + lam[0] for x in mu): 1})
    shift_l = min(lam[-1], 0)
    shift_m = min(mu[-1], 0)
    a = tuple(x - shift_l for x in lam)
    b = tuple(x - shift_m for x in mu)
    if sum(b) > sum(a):
        a, b = b, a
    res = _lr_core(a, b)
    total = shift_l + shift_m
    if total == 0:
        return res
    return MappingProxyType(
        {tuple(x + total for x in nu): c for nu, c in res.items()}
    )


def _lr_core(lam: tuple, mu: tuple):
    """LR product of partition weights (nonnegative, nonincreasing)."""
    k = len(lam)
    cells = [(t, c) for t in range(k) for c in range(mu[t] - 1, -1, -1)]
    entries = [[0] * mu[t] for t in range(k)]
    rho = list(lam)
    out: dict[tuple, int] = {}

    def place(idx: int):
        if idx == len(cells):
            key = tuple(rho)
            out[key] = out.get(key, 0) + 1
            return
        t, c = cells[idx]
        lo = entries[t - 1][c] + 1 if t > 0 else 1
        hi = entries[t][c + 1] if c + 1 < mu[t] else k
        for v in range(lo, hi + 1):
            if v == 1 or rho[v - 1] < rho[v - 2]:
                rho[v - 1] += 1
                entries[t][c] = v
                place(idx + 1)
                rho[v - 1] -= 1

    place(0)
    return MappingProxyType(out)


# ---------------------------------------------------------------------------
# Two-block kernels.  A pair is (first, second) of weight tuples;
# full characters are keyed by the concatenated length-n weight.
# ---------------------------------------------------------------------------


def _pair_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (f1, s1), c1 in a.items():
        for (f2, s2), c2 in b.items():
            c = c1 * c2
            for fw, fc in _lr_pair(f1, f2).items():
                cf = c * fc
                for sw, sc in _lr_pair(s1, s2).items():
                    key = (fw, sw)
                    nv = out.get(key, 0) + cf * sc
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
    return out


@lru_cache(maxsize=None)
def _perm_shifts(size: int):
    """Signed shift vectors rho - sigma(rho) over the symmetric group,
    with the sign of sigma."""
    rho = tuple(range(size - 1, -1, -1))
    out = []
    for arranged in set(permutations(rho)):
        inversions = sum(
            1
            for i in range(size)
            for j in range(i + 1, size)
            if arranged[i] < arranged[j]
        )
        sign = 1 if inversions % 2 == 0 else -1
        out.append((sign, tuple(rho[i] - arranged[i] for i in range(size))))
    return tuple(out)


def _alternant_decompose(char: dict, k: int) -> dict:
    """Decompose a Weyl-group-invariant two-block character (keys are
    concatenated length-n weights) into dominant highest weights by the
    alternating-sum inversion of the character formula, one block at a
    time."""
    if not char:
        return {}
    n = len(next(iter(char)))
    # second block first: partial[(w1, nu2)] = signed sum over its orbit
    partial: dict = {}
    for w, m in char.items():
        w1, w2 = w[:k], w[k:]
        for sign, delta in _perm_shifts(n - k):
            nu2 = tuple(w2[i] - delta[i] for i in range(n - k))
            if _dominant(nu2):
                key = (w1, nu2)
                nv = partial.get(key, 0) + sign * m
                if nv:
                    partial[key] = nv
                else:
                    partial.pop(key, None)
    out: dict = {}
    for (w1, nu2), m in partial.items():
        for sign, delta in _perm_shifts(k):
            nu1 = tuple(w1[i] - delta[i] for i in range(k))
            if _dominant(nu1):
                key = nu1 + nu2
                nv = out.get(key, 0) + sign * m
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
    return out


def _full_char(d: "Decomposition") -> dict:
    """Weight multiset of a decomposition, keyed by length-n tuples."""
    out: dict = {}
    for w, mult in d.table.items():
        for f, cf in _gt_character(w.first).items():
            base = cf * mult
            for s, cs in _gt_character(w.second).items():
                key = f + s
                out[key] = out.get(key, 0) + base * cs
    return out


def _adams_char(items, m: int) -> dict:
    """Character of the Adams operation: every weight scaled by m."""
    out: dict = {}
    for w, c in items:
        key = tuple(x * m for x in w)
        out[key] = out.get(key, 0) + c
    return out


def _char_convolve(a: dict, b: dict) -> dict:
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            key = tuple(x + y for x, y in zip(w1, w2))
            nv = out.get(key, 0) + c1 * c2
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out


# Extended on demand; keyed by (character items, kind).  Entries are
# replaced whole, never mutated, so concurrent readers stay safe.
_series_cache: dict = {}


def _power_char_series(items: tuple, kind: str, jmax: int) -> list:
    """Characters of the exterior or symmetric powers of a weight
    multiset, via Newton's identities over the Adams (power-sum)
    characters:  j E_j = sum_m (-1)^(m-1) psi_m * E_(j-m)  and
    j H_j = sum_m psi_m * H_(j-m)."""
    key = (items, kind)
    series = _series_cache.get(key)
    if series is None:
        n = len(items[0][0]) if items else 0
        series = [{(0,) * n: 1}]
    if len(series) > jmax:
        return series
    series = list(series)
    for j in range(len(series), jmax + 1):
        acc: dict = {}
        for m in range(1, j + 1):
            if not series[j - m]:
                continue
            term = _char_convolve(_adams_char(items, m), series[j - m])
            factor = 1 if kind == "sym" or m % 2 == 1 else -1
            for w, c in term.items():
                nv = acc.get(w, 0) + factor * c
                if nv:
                    acc[w] = nv
                else:
                    acc.pop(w, None)
        level = {}
        for w, c in acc.items():
            if c % j:
                raise AssertionError("Newton recursion produced a non-integer")
            if c // j:
                level[w] = c // j
        series.append(level)
    _series_cache[key] = series
    return series


# ---------------------------------------------------------------------------
# Public single-block surface
# ---------------------------------------------------------------------------


@dataclass
class Character:
    """Weight multiset of a GL(k) representation."""

    k: int
    table: dict = field(default_factory=dict)

    def mass(self) -> int:
        """Total multiplicity; equals the dimension for a genuine character."""
        return sum(self.table.values())


def gt_weights(lam, k: int | None = None) -> Character:
    """Character of the GL(k) irreducible with highest weight ``lam``."""
    lam = tuple(int(x) for x in lam)
    if k is None:
        k = len(lam)
    if len(lam) != k:
        raise StructureError(f"weight length {len(lam)} != k={k}")
    return Character(k, dict(_gt_character(lam)))


def decompose_character(c: Character) -> dict[tuple, int]:
    """Highest-weight peeling of a genuine character; returns the map
    from dominant weights to multiplicities."""
    return _peel(c.table, virtual=False)


# ---------------------------------------------------------------------------
# Decompositions of homogeneous bundles
# ---------------------------------------------------------------------------


@dataclass
class Decomposition:
    """Multiset of dominant highest weights with positive multiplicities."""

    ctx: GrassContext
    table: dict

    def __post_init__(self):
        for w, m in self.table.items():
            if not isinstance(w, BlockWeight) or w.ctx != self.ctx:
                raise StructureError(f"foreign weight {w} in decomposition")
            if not w.is_dominant():
                raise DomainError(f"non-dominant summand {w}")
            if not isinstance(m, int) or m <= 0:
                raise StructureError(f"multiplicity of {w} must be a positive int")

    def rank(self) -> int:
        return sum(m * block_rank(w) for w, m in self.table.items())

    def items(self):
        return self.table.items()

    def mult(self, w: BlockWeight) -> int:
        return self.table.get(w, 0)

    def __len__(self) -> int:
        return len(self.table)

    def canonical_text(self) -> str:
        parts = sorted(f"{w.canonical()}x{m}" for w, m in self.table.items())
        return ";".join(parts)

    def to_json(self) -> dict:
        return {
            "grass": str(self.ctx),
            "weights": {
                w.canonical(): str(m)
                for w, m in sorted(self.table.items(), key=lambda t: t[0].canonical())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "Decomposition":
        k, n = (int(x) for x in data["grass"].split(","))
        ctx = GrassContext(k, n)
        table = {
            BlockWeight.from_canonical(key): int(m)
            for key, m in data["weights"].items()
        }
        return cls(ctx, table)


def _to_pairs(d: Decomposition) -> dict:
    return {(w.first, w.second): m for w, m in d.table.items()}


def _from_pairs(ctx: GrassContext, vd: dict) -> Decomposition:
    table = {}
    for (f, s), m in vd.items():
        if m == 0:
            continue
        if m < 0:
            raise NotACharacterError(f"negative multiplicity at {(f, s)}")
        table[BlockWeight(ctx, f, s)] = m
    return Decomposition(ctx, table)


def lr_tensor(a: Decomposition, b: Decomposition) -> Decomposition:
    """Tensor product, Littlewood-Richardson per block."""
    if a.ctx != b.ctx:
        raise StructureError(f"context mismatch: {a.ctx} vs {b.ctx}")
    return _from_pairs(a.ctx, _pair_mul(_to_pairs(a), _to_pairs(b)))


def _char_items(d: Decomposition) -> tuple:
    return tuple(sorted(_full_char(d).items()))


def _det_pair(items, k: int, nk: int):
    """Weight of the top exterior power: the coordinate sums of the
    weight multiset, constant on each block."""
    n = k + nk
    sums = [0] * n
    for w, c in items:
        for i, x in enumerate(w):
            sums[i] += c * x
    first, second = sums[:k], sums[k:]
    if len(set(first)) > 1 or len(set(second)) > 1:
        raise AssertionError("determinant weight is not block-constant")
    return first[0], second[0]


def _power_fast(d: Decomposition, p: int, kind: str) -> Decomposition:
    ctx = d.ctx
    k, nk = ctx.k, ctx.n - ctx.k
    rank = d.rank()
    if p == 0 or not d.table:
        # the zeroth power is trivial; higher powers of a rank-zero
        # bundle vanish
        if p == 0:
            unit = BlockWeight(ctx, (0,) * k, (0,) * nk)
            return Decomposition(ctx, {unit: 1})
        return Decomposition(ctx, {})
    if kind == "wedge" and p > rank:
        return Decomposition(ctx, {})
    if kind == "wedge" and 2 * p > rank:
        # wedge^p = (wedge^(rank-p))* (x) det, which keeps the Newton
        # recursion depth at rank/2
        comp = _power_fast(d, rank - p, kind)
        d1, d2 = _det_pair(_char_items(d), k, nk)
        table = {}
        for w, c in comp.table.items():
            first = tuple(d1 - x for x in reversed(w.first))
            second = tuple(d2 - x for x in reversed(w.second))
            table[BlockWeight(ctx, first, second)] = c
        return Decomposition(ctx, table)
    items = _char_items(d)
    series = _power_char_series(items, kind, p)
    dec = _alternant_decompose(series[p], k)
    expected = comb(rank, p) if kind == "wedge" else comb(rank + p - 1, p)
    total = 0
    table = {}
    for w, c in dec.items():
        if c <= 0:
            raise AssertionError(f"virtual term {w}: {c} in a genuine power")
        bw = BlockWeight(ctx, w[:k], w[k:])
        total += c * block_rank(bw)
        table[bw] = c
    if total != expected:
        raise AssertionError(f"rank mismatch: {total} != {expected}")
    return Decomposition(ctx, table)


def _oracle_power(d: Decomposition, p: int, with_repetition: bool) -> Decomposition:
    ctx = d.ctx
    k, n = ctx.k, ctx.n
    char = _full_char(d)
    mass = sum(char.values())
    est = comb(mass + p - 1, p) if with_repetition else comb(mass, p)
    if est > ORACLE_BUDGET:
        raise OracleBudgetError(
            f"oracle would enumerate about {est} subsets (budget {ORACLE_BUDGET})"
        )
    if p == 0:
        unit = BlockWeight(ctx, (0,) * k, (0,) * (n - k))
        return Decomposition(ctx, {unit: 1})
    if not char:
        return Decomposition(ctx, {})
    # Pack each weight into one integer, digit per coordinate, so the
    # subset sums run through the C-level combinations/sum machinery;
    # the base is wide enough that digits never carry.
    spread = max(1, max(abs(x) for w in char for x in w))
    base = 2 * p * spread + 1
    powers = [base**i for i in range(n)]
    encoded: list[int] = []
    for w, m in sorted(char.items()):
        code = sum((x + spread) * powers[i] for i, x in enumerate(w))
        encoded.extend([code] * m)
    chooser = combinations_with_replacement if with_repetition else combinations
    packed = Counter(map(sum, chooser(encoded, p)))
    counts: dict[tuple, int] = {}
    shift = p * spread
    for code, c in packed.items():
        counts[tuple((code // powers[i]) % base - shift for i in range(n))] = c
    peeled = _peel_two_block(counts, k)
    return _from_pairs(ctx, {(w[:k], w[k:]): m for w, m in peeled.items()})


def _peel_two_block(table: dict, k: int) -> dict:
    """Peel a two-block weight multiset (keys are concatenated length-n
    tuples) into per-block-dominant highest weights."""
    rem = {w: c for w, c in table.items() if c}
    out: dict[tuple, int] = {}
    while rem:
        top = max(rem)
        c = rem[top]
        if c < 0 or not (_dominant(top[:k]) and _dominant(top[k:])):
            raise NotACharacterError(
                f"peeling hit weight {top} with multiplicity {c}"
            )
        out[top] = c
        for f, a in _gt_character(top[:k]).items():
            for s, b in _gt_character(top[k:]).items():
                key = f + s
                nv = rem.get(key, 0) - c * a * b
                if nv:
                    rem[key] = nv
                else:
                    rem.pop(key, None)
    return out


def wedge_power(d: Decomposition, p: int, method: str = "fast") -> Decomposition:
    """Decomposition of the p-th exterior power of a (possibly
    reducible) representation.

    ``method="oracle"`` enumerates p-subsets of the weight multiset and
    peels; it raises :class:`OracleBudgetError` beyond its budget.  For
    p exceeding the rank the result is the empty decomposition.
    """
    if p < 0:
        raise StructureError("exterior power needs p >= 0")
    if method == "fast":
        return _power_fast(d, p, "wedge")
    if method == "oracle":
        return _oracle_power(d, p, with_repetition=False)
    raise StructureError(f"unknown method {method!r}")


def sym_power(d: Decomposition, p: int, method: str = "fast") -> Decomposition:
    """Decomposition of the p-th symmetric power; same backends as
    :func:`wedge_power` with multisets in place of subsets."""
    if p < 0:
        raise StructureError("symmetric power needs p >= 0")
    if method == "fast":
        return _power_fast(d, p, "sym")
    if method == "oracle":
        return _oracle_power(d, p, with_repetition=True)
    raise StructureError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Expression evaluation
# ---------------------------------------------------------------------------

_store = None


def set_store(store) -> None:
    """Attach a persistent cache (see :mod:`grassbott.cache`) consulted by
    :func:`evaluate` and :func:`grassbott.bott.cohomology`; pass None to
    detach."""
    global _store
    _store = store


def _store_get(operation: str, key: str):
    if _store is None:
        return None
    return _store.get(operation, key)


def _store_put(operation: str, key: str, value) -> None:
    if _store is not None:
        _store.put(operation, key, value)


def _atom_weight(e: ex.Expr, ctx: GrassContext) -> BlockWeight:
    k, nk = ctx.k, ctx.n - ctx.k
    if isinstance(e, ex.Quotient):
        return BlockWeight(ctx, (1,) + (0,) * (k - 1), (0,) * nk)
    if isinstance(e, ex.Sub):
        return BlockWeight(ctx, (0,) * k, (1,) + (0,) * (nk - 1))
    if isinstance(e, ex.Tangent):
        return BlockWeight(ctx, (1,) + (0,) * (k - 1), (0,) * (nk - 1) + (-1,))
    if isinstance(e, ex.Line):
        return BlockWeight(ctx, (e.r,) * k, (0,) * nk)
    raise StructureError(f"not an atom: {e!r}")


@lru_cache(maxsize=None)
def _evaluate(e: ex.Expr, ctx: GrassContext) -> Decomposition:
    key = f"{ctx}|{ex.to_text(e)}"
    cached = _store_get("evaluate", key)
    if cached is not None:
        return Decomposition.from_json(cached)
    result = _evaluate_node(e, ctx)
    _store_put("evaluate", key, result.to_json())
    return result


def _evaluate_node(e: ex.Expr, ctx: GrassContext) -> Decomposition:
    if isinstance(e, ex.Irr):
        w = e.weight
        if w.ctx != ctx:
            raise StructureError(f"weight context {w.ctx} != {ctx}")
        if not w.is_dominant():
            raise DomainError(f"irr weight {w} is not dominant per block")
        return Decomposition(ctx, {w: 1})
    if isinstance(e, (ex.Quotient, ex.Sub, ex.Tangent, ex.Line)):
        return Decomposition(ctx, {_atom_weight(e, ctx): 1})
    if isinstance(e, ex.Wedge):
        return wedge_power(_evaluate(e.child, ctx), e.p)
    if isinstance(e, ex.Sym):
        return sym_power(_evaluate(e.child, ctx), e.p)
    if isinstance(e, ex.Dual):
        child = _evaluate(e.child, ctx)
        return Decomposition(ctx, {dual_weight(w): m for w, m in child.items()})
    if isinstance(e, ex.Twist):
        child = _evaluate(e.child, ctx)
        return Decomposition(ctx, {twist(w, e.r): m for w, m in child.items()})
    if isinstance(e, ex.Tensor):
        return lr_tensor(_evaluate(e.left, ctx), _evaluate(e.right, ctx))
    if isinstance(e, ex.DirectSum):
        left = _evaluate(e.left, ctx)
        right = _evaluate(e.right, ctx)
        table = dict(left.table)
        for w, m in right.items():
            table[w] = table.get(w, 0) + m
        return Decomposition(ctx, table)
    raise StructureError(f"unknown expression node {e!r}")


def evaluate(e: ex.Expr, ctx: GrassContext) -> Decomposition:
    """Evaluate a bundle expression into its irreducible decomposition.

    Results are shared through an in-process cache and must not be
    mutated by callers.
    """
    return _evaluate(e, ctx)
