"""Exact cohomology of fully reducible homogeneous bundles.

For an irreducible bundle the length-n weight is shifted by
(n, n-1, ..., 1); a repeated entry kills all cohomology, and otherwise
exactly one group survives, in the degree given by the number of
inversions, with dimension the Weyl dimension of the sorted shifted
weight re-centered by the same shift.

A cohomology profile is a plain dict {degree: dimension} with absent
keys meaning zero.
"""

from __future__ import annotations

from functools import lru_cache

from . import expr as ex
from .dims import sl_dim
from .errors import DomainError
from .schur import Decomposition, evaluate, _store_get, _store_put
from .weights import FullWeight, GrassContext, full_weight


def rho(n: int) -> tuple:
    """The shift vector (n, n-1, ..., 1)."""
    return tuple(range(n, 0, -1))


def shifted_vector(fw: FullWeight) -> tuple:
    """The rho-shifted weight fed to the distinctness/inversion test."""
    n = fw.ctx.n
    return tuple((n - i) + x for i, x in enumerate(fw.entries))


def bott_irreducible(fw: FullWeight) -> dict[int, int]:
    """Cohomology profile of the irreducible bundle with highest weight
    ``fw``; at most one degree is nonzero."""
    blocks = fw.blocks()
    if not blocks.is_dominant():
        raise DomainError(f"weight {fw.entries} is not dominant per block")
    alpha = shifted_vector(fw)
    n = fw.ctx.n
    if len(set(alpha)) < n:
        return {}
    inversions = 0
    for i in range(n):
        for j in range(i + 1, n):
            if alpha[i] < alpha[j]:
                inversions += 1
    lam = tuple(sorted(alpha, reverse=True))
    recentred = tuple(lam[i] - (n - i) for i in range(n))
    return {inversions: sl_dim(recentred)}


def profile_add(acc: dict[int, int], profile: dict[int, int], mult: int = 1) -> None:
    for p, d in profile.items():
        acc[p] = acc.get(p, 0) + mult * d


def cohomology_of(d: Decomposition) -> dict[int, int]:
    """Pointwise sum of irreducible profiles over a decomposition."""
    acc: dict[int, int] = {}
    for w, m in d.items():
        profile_add(acc, bott_irreducible(full_weight(w)), m)
    return acc


@lru_cache(maxsize=None)
def _cohomology_cached(e: ex.Expr, ctx: GrassContext):
    key = f"{ctx}|{ex.to_text(e)}"
    cached = _store_get("cohomology", key)
    if cached is not None:
        return {int(p): int(d) for p, d in cached.items()}
    profile = cohomology_of(evaluate(e, ctx))
    _store_put("cohomology", key, profile_to_json(profile))
    return profile


def cohomology(e: ex.Expr, ctx: GrassContext) -> dict[int, int]:
    """Cohomology profile of a bundle expression.

    Cached in-process and, when a store is attached, across runs; the
    returned dict is shared and must not be mutated.
    """
    return _cohomology_cached(e, ctx)


def euler_characteristic(profile: dict[int, int]) -> int:
    return sum(d if p % 2 == 0 else -d for p, d in profile.items())


def profile_to_json(profile: dict[int, int]) -> dict[str, str]:
    return {str(p): str(d) for p, d in sorted(profile.items())}
