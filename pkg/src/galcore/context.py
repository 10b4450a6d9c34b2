"""Formal contexts, their derivation operators, and polarities over powersets.

Object and attribute subsets are Python ``int`` bitmasks (object ``i`` at bit
``i``), so carriers are limited to 64 elements for the bitmask kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .galois import GaloisConnection
from .poset import CapExceededError, materialization_cap, powerset_poset, powerset_rank

MAX_CARRIER = 64


class CxtParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


def bits(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


class FormalContext:
    """``(G, M, R)`` with ``R`` as a boolean ``|G| x |M|`` matrix."""

    def __init__(self, incidence, g_labels: Sequence[str] | None = None,
                 m_labels: Sequence[str] | None = None, name: str = ""):
        inc = np.array(incidence, dtype=bool)
        if inc.ndim != 2:
            if inc.size:
                raise ValueError(f"incidence must be 2-dimensional, got shape {inc.shape}")
            inc = inc.reshape(len(g_labels or ()), len(m_labels or ()))
        n, m = inc.shape
        g_labels = [f"g{i + 1}" for i in range(n)] if g_labels is None else [str(x) for x in g_labels]
        m_labels = [f"m{j + 1}" for j in range(m)] if m_labels is None else [str(x) for x in m_labels]
        if len(g_labels) != n or len(m_labels) != m:
            raise ValueError(f"labels ({len(g_labels)}, {len(m_labels)}) do not match incidence shape {inc.shape}")
        for kind, labels in (("object", g_labels), ("attribute", m_labels)):
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate {kind} labels")
        inc.setflags(write=False)
        self.incidence = inc
        self.g_labels = tuple(g_labels)
        self.m_labels = tuple(m_labels)
        self.name = name

    @property
    def g_count(self) -> int:
        return self.incidence.shape[0]

    @property
    def m_count(self) -> int:
        return self.incidence.shape[1]

    @property
    def G(self) -> int:
        return (1 << self.g_count) - 1

    @property
    def M(self) -> int:
        return (1 << self.m_count) - 1

    @cached_property
    def rows(self) -> tuple[int, ...]:
        """Attribute mask of each object."""
        return tuple(mask_of(np.flatnonzero(r).tolist()) for r in self.incidence)

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """Object mask of each attribute."""
        return tuple(mask_of(np.flatnonzero(c).tolist()) for c in self.incidence.T)

    def _check_bitmask_size(self):
        if self.g_count > MAX_CARRIER or self.m_count > MAX_CARRIER:
            raise CapExceededError(f"carriers above {MAX_CARRIER} elements are not supported")

    @cached_property
    def row_array(self) -> np.ndarray:
        self._check_bitmask_size()
        return kernels.as_masks(self.rows)

    @cached_property
    def col_array(self) -> np.ndarray:
        self._check_bitmask_size()
        return kernels.as_masks(self.cols)

    def __eq__(self, other):
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (
            self.g_labels == other.g_labels
            and self.m_labels == other.m_labels
            and np.array_equal(self.incidence, other.incidence)
        )

    def __hash__(self):
        return hash((self.g_labels, self.m_labels, self.incidence.tobytes()))

    def __repr__(self):
        return f"FormalContext({self.g_count}x{self.m_count}, |R|={int(self.incidence.sum())})"

    def H(self, A: int) -> int:
        """Attributes shared by every object in ``A``; ``H(0)`` is all of M."""
        out = self.M
        for g in bits(A):
            out &= self.rows[g]
        return out

    def K(self, B: int) -> int:
        """Objects having every attribute in ``B``; ``K(0)`` is all of G."""
        out = self.G
        for m in bits(B):
            out &= self.cols[m]
        return out

    def pairs(self) -> set[tuple[int, int]]:
        return {(int(g), int(m)) for g, m in np.argwhere(self.incidence)}

    @classmethod
    def from_pairs(cls, n: int, m: int, pairs: Iterable[tuple[int, int]], **kw) -> FormalContext:
        inc = np.zeros((n, m), dtype=bool)
        for g, a in pairs:
            inc[g, a] = True
        return cls(inc, **kw)

    @classmethod
    def from_code(cls, n: int, m: int, code: int) -> FormalContext:
        """Relation number ``code``: bit ``g*m + a`` set iff ``(g, a)`` incident."""
        flat = [(code >> k) & 1 for k in range(n * m)]
        return cls(np.array(flat, dtype=bool).reshape(n, m))

    def code(self) -> int:
        return mask_of(np.flatnonzero(self.incidence.reshape(-1)).tolist())

    def objects(self, mask: int) -> list[str]:
        return [self.g_labels[i] for i in bits(mask)]

    def attributes(self, mask: int) -> list[str]:
        return [self.m_labels[i] for i in bits(mask)]

    def object_mask(self, labels: Iterable[str]) -> int:
        return _labels_to_mask(self.g_labels, labels, "object")

    def attribute_mask(self, labels: Iterable[str]) -> int:
        return _labels_to_mask(self.m_labels, labels, "attribute")


def _labels_to_mask(known: Sequence[str], labels: Iterable[str], kind: str) -> int:
    index = {l: i for i, l in enumerate(known)}
    m = 0
    for l in labels:
        if l not in index:
            raise ValueError(f"unknown {kind} {l!r}")
        m |= 1 << index[l]
    return m


def closure_gg(ctx: FormalContext, A: int) -> int:
    return ctx.K(ctx.H(A))


def closure_mm(ctx: FormalContext, B: int) -> int:
    return ctx.H(ctx.K(B))


@dataclass(frozen=True)
class PolarityHandle:
    """The pair ``(H, K)`` of a context, materialized on demand."""

    context: FormalContext

    def H(self, A: int) -> int:
        return self.context.H(A)

    def K(self, B: int) -> int:
        return self.context.K(B)

    @property
    def materializable(self) -> bool:
        cap = materialization_cap()
        return self.context.g_count <= cap and self.context.m_count <= cap

    def h_table(self) -> np.ndarray:
        ctx = self.context
        return kernels.meet_table(ctx.row_array, kernels.full_mask(ctx.m_count))

    def k_table(self) -> np.ndarray:
        ctx = self.context
        return kernels.meet_table(ctx.col_array, kernels.full_mask(ctx.g_count))

    @cached_property
    def gc(self) -> GaloisConnection | None:
        """``(H, P(G), P(M), K)`` over explicit powerset posets, or ``None`` above the cap."""
        if not self.materializable:
            return None
        ctx = self.context
        return GaloisConnection(
            powerset_poset(ctx.g_count),
            powerset_poset(ctx.m_count),
            self.h_table().astype(np.int64),
            self.k_table().astype(np.int64),
        )


def polarity_of(ctx: FormalContext) -> PolarityHandle:
    return PolarityHandle(ctx)


def relation_of(pol: PolarityHandle | GaloisConnection, g_labels=None, m_labels=None) -> FormalContext:
    """The relation whose Birkhoff polarity is ``pol``: ``(g, m)`` iff ``m in H({g})``."""
    if isinstance(pol, PolarityHandle):
        ctx = pol.context
        inc = np.array([[(pol.H(1 << g) >> m) & 1 for m in range(ctx.m_count)]
                        for g in range(ctx.g_count)], dtype=bool).reshape(ctx.g_count, ctx.m_count)
        return FormalContext(inc, ctx.g_labels, ctx.m_labels, ctx.name)
    n, m = powerset_rank(pol.P), powerset_rank(pol.Q)
    if n is None or m is None:
        raise ValueError("relation_of needs a connection between powerset lattices")
    f = pol.f.table
    inc = np.array([[(int(f[1 << g]) >> a) & 1 for a in range(m)] for g in range(n)], dtype=bool)
    return FormalContext(inc.reshape(n, m), g_labels, m_labels)


# --------------------------------------------------------------------------
# Burmeister .cxt


def _is_int(s: str) -> bool:
    try:
        int(s.strip())
    except ValueError:
        return False
    return True


def parse_cxt(text: str) -> FormalContext:
    lines = text.splitlines()

    def line(i: int) -> str:
        if i >= len(lines):
            raise CxtParseError("unexpected end of file", i + 1)
        return lines[i].rstrip("\r")

    if line(0).strip() != "B":
        raise CxtParseError("expected 'B' header", 1)
    if line(1).strip() == "" and _is_int(line(2)):
        # nameless variant: "B", blank, counts
        name, pos = "", 2
    else:
        name = line(1).strip()
        if line(2).strip() != "":
            raise CxtParseError("expected blank line after context name", 3)
        pos = 3
    try:
        n = int(line(pos).strip())
        m = int(line(pos + 1).strip())
    except ValueError:
        raise CxtParseError("object/attribute counts must be integers", pos + 1) from None
    if n < 0 or m < 0:
        raise CxtParseError("negative carrier size", pos + 1)
    pos += 2
    if line(pos).strip() != "":
        raise CxtParseError("expected blank line after counts", pos + 1)
    pos += 1
    g_labels = [line(pos + i).strip() for i in range(n)]
    pos += n
    m_labels = [line(pos + i).strip() for i in range(m)]
    pos += m
    inc = np.zeros((n, m), dtype=bool)
    for i in range(n):
        row = line(pos + i).strip()
        if len(row) != m:
            raise CxtParseError(f"row has {len(row)} characters, expected {m}", pos + i + 1)
        for j, ch in enumerate(row):
            if ch in "Xx":
                inc[i, j] = True
            elif ch != ".":
                raise CxtParseError(f"illegal character {ch!r} in incidence row", pos + i + 1)
    pos += n
    for extra in range(pos, len(lines)):
        if lines[extra].strip():
            raise CxtParseError("unexpected content after incidence rows", extra + 1)
    try:
        return FormalContext(inc, g_labels, m_labels, name)
    except ValueError as e:
        raise CxtParseError(str(e)) from None


def write_cxt(ctx: FormalContext) -> str:
    out = ["B", ctx.name, "", str(ctx.g_count), str(ctx.m_count), ""]
    out += list(ctx.g_labels)
    out += list(ctx.m_labels)
    out += ["".join("X" if v else "." for v in row) for row in ctx.incidence]
    return "\n".join(out) + "\n"
