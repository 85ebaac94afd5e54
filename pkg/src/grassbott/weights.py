"""Parabolic weights on Gr(k,n).

A weight is stored split into a length-k block and a length-(n-k)
block, matching the two factors of the reductive part of the parabolic
subgroup.  Only the concatenated length-n form is ever handed to the
Bott shift, via :class:`FullWeight`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb

from .errors import StructureError


@dataclass(frozen=True)
class GrassContext:
    """The Grassmannian Gr(k,n) of k-dimensional quotients of C^n."""

    k: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.k, int) and isinstance(self.n, int)):
            raise StructureError("k and n must be integers")
        if not 1 <= self.k < self.n:
            raise StructureError(f"need 1 <= k < n, got k={self.k}, n={self.n}")

    @property
    def dimension(self) -> int:
        """dim Gr(k,n) = k(n-k)."""
        return self.k * (self.n - self.k)

    @property
    def plucker_ambient_dim(self) -> int:
        """N for the Pluecker embedding Gr(k,n) in P^N."""
        return comb(self.n, self.k) - 1

    def __str__(self) -> str:
        return f"{self.k},{self.n}"


def _nonincreasing(t: tuple) -> bool:
    return all(t[i] >= t[i + 1] for i in range(len(t) - 1))


@dataclass(frozen=True)
class BlockWeight:
    """An integer weight split into the k-block and the (n-k)-block."""

    ctx: GrassContext
    first: tuple
    second: tuple

    def __post_init__(self):
        object.__setattr__(self, "first", tuple(int(x) for x in self.first))
        object.__setattr__(self, "second", tuple(int(x) for x in self.second))
        if len(self.first) != self.ctx.k:
            raise StructureError(
                f"first block has length {len(self.first)}, expected k={self.ctx.k}"
            )
        if len(self.second) != self.ctx.n - self.ctx.k:
            raise StructureError(
                f"second block has length {len(self.second)}, "
                f"expected n-k={self.ctx.n - self.ctx.k}"
            )

    @classmethod
    def from_first(cls, ctx: GrassContext, first) -> "BlockWeight":
        """Weight with the given k-block and a zero second block."""
        return cls(ctx, tuple(first), (0,) * (ctx.n - ctx.k))

    def is_dominant(self) -> bool:
        """True when both blocks are nonincreasing."""
        return _nonincreasing(self.first) and _nonincreasing(self.second)

    def first_sum(self) -> int:
        """Sum of the k-block entries (the degree of the weight)."""
        return sum(self.first)

    def canonical(self) -> str:
        """Canonical text form ``k,n:[a1,...,ak|b1,...,b_{n-k}]``."""
        f = ",".join(str(x) for x in self.first)
        s = ",".join(str(x) for x in self.second)
        return f"{self.ctx.k},{self.ctx.n}:[{f}|{s}]"

    @classmethod
    def from_canonical(cls, text: str) -> "BlockWeight":
        m = re.fullmatch(r"(\d+),(\d+):\[([-\d,]*)\|([-\d,]*)\]", text)
        if m is None:
            raise StructureError(f"not a canonical weight: {text!r}")
        ctx = GrassContext(int(m.group(1)), int(m.group(2)))
        first = tuple(int(x) for x in m.group(3).split(",")) if m.group(3) else ()
        second = tuple(int(x) for x in m.group(4).split(",")) if m.group(4) else ()
        return cls(ctx, first, second)

    def __str__(self) -> str:
        return self.canonical()


@dataclass(frozen=True)
class FullWeight:
    """The concatenated length-n weight vector, the input form for the
    Bott shift."""

    ctx: GrassContext
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if len(self.entries) != self.ctx.n:
            raise StructureError(
                f"full weight has length {len(self.entries)}, expected n={self.ctx.n}"
            )

    def blocks(self) -> BlockWeight:
        k = self.ctx.k
        return BlockWeight(self.ctx, self.entries[:k], self.entries[k:])


def is_globally_generated(w: BlockWeight) -> bool:
    """True when the concatenated length-n vector is nonincreasing.

    The corresponding homogeneous bundle is globally generated exactly
    in this case.
    """
    return _nonincreasing(w.first + w.second)


def dual_weight(w: BlockWeight) -> BlockWeight:
    """Highest weight of the dual bundle: each block reversed and negated."""
    return BlockWeight(
        w.ctx,
        tuple(-x for x in reversed(w.first)),
        tuple(-x for x in reversed(w.second)),
    )


def twist(w: BlockWeight, r: int) -> BlockWeight:
    """Tensor with the r-th power of the Pluecker line bundle: adds r to
    every entry of the k-block."""
    return BlockWeight(w.ctx, tuple(x + r for x in w.first), w.second)


def full_weight(w: BlockWeight) -> FullWeight:
    """Concatenate the two blocks."""
    return FullWeight(w.ctx, w.first + w.second)
