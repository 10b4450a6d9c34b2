"""Finite posets on dense integer carriers ``0..size-1``."""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels

DEFAULT_CAP = 12


class CapExceededError(ValueError):
    pass


def materialization_cap() -> int:
    """Largest carrier whose powerset may be built explicitly (``GALCORE_CAP``)."""
    raw = os.environ.get("GALCORE_CAP")
    return int(raw) if raw else DEFAULT_CAP


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    message: str = ""

    def __str__(self):
        return f"{self.kind} {self.witness}" + (f": {self.message}" if self.message else "")


@dataclass
class ValidationReport:
    """All axiom failures found by a validator; empty means valid."""

    subject: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind, witness, message=""):
        self.violations.append(Violation(kind, tuple(int(w) for w in witness), message))

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def first(self, kind: str) -> Violation | None:
        return next((v for v in self.violations if v.kind == kind), None)

    def summary(self, limit: int = 10) -> str:
        if self.ok:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations[:limit]]
        if len(self.violations) > limit:
            lines.append(f"  ... {len(self.violations) - limit} more")
        return "\n".join(lines)


class Poset:
    """Carrier ``range(size)`` with a dense ``leq`` table.

    Construction does not check the axioms; use :func:`validate_poset`.
    Equality compares the order only, labels are for display.
    """

    __slots__ = ("size", "leq", "labels", "_down")

    def __init__(self, leq, labels: Sequence[str] | None = None):
        leq = np.array(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            if leq.size == 0:
                leq = np.zeros((0, 0), dtype=bool)
            else:
                raise ValueError(f"leq must be square, got shape {leq.shape}")
        leq.setflags(write=False)
        self.size = leq.shape[0]
        self.leq = leq
        if labels is None:
            labels = [str(i) for i in range(self.size)]
        if len(labels) != self.size:
            raise ValueError(f"{len(labels)} labels for {self.size} elements")
        self.labels = tuple(str(x) for x in labels)
        self._down = None

    def __repr__(self):
        return f"Poset(size={self.size})"

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.size == other.size and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.size, self.leq.tobytes()))

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def down_mask(self, x: int) -> int:
        """Downset of ``x`` as an integer bitmask over the carrier."""
        if self._down is None:
            self._down = tuple(
                sum(1 << int(y) for y in np.flatnonzero(self.leq[:, i])) for i in range(self.size)
            )
        return self._down[x]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    # constructors

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]], labels=None) -> Poset:
        """Reflexive-transitive closure of the given ``x <= y`` pairs."""
        leq = np.eye(size, dtype=bool)
        for x, y in pairs:
            leq[x, y] = True
        for k in range(size):
            leq |= leq[:, [k]] & leq[[k], :]
        return cls(leq, labels)

    @classmethod
    def chain(cls, n: int, labels=None) -> Poset:
        return cls(np.triu(np.ones((n, n), dtype=bool)), labels)

    @classmethod
    def antichain(cls, n: int, labels=None) -> Poset:
        return cls(np.eye(n, dtype=bool), labels)

    @classmethod
    def diamond(cls) -> Poset:
        """``bot < a, b < top`` with ``a``, ``b`` incomparable."""
        return cls.from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)], labels=["bot", "a", "b", "top"])

    def to_json(self) -> dict:
        return {"size": self.size, "leq": self.leq.tolist(), "labels": list(self.labels)}

    @classmethod
    def from_json(cls, data: dict) -> Poset:
        size = int(data["size"])
        leq = np.array(data.get("leq", []), dtype=bool).reshape(size, size)
        return cls(leq, data.get("labels"))

    @classmethod
    def loads(cls, text: str) -> Poset:
        return cls.from_json(json.loads(text))


class OrderMap:
    """Total function ``dom -> cod`` stored as a table of codomain indices."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom: Poset, cod: Poset, table):
        table = np.array(table, dtype=np.int64).reshape(-1)
        if table.shape[0] != dom.size:
            raise ValueError(f"map table has {table.shape[0]} entries, domain has {dom.size}")
        if table.size and (table.min() < 0 or table.max() >= cod.size):
            raise ValueError("map table points outside the codomain")
        table.setflags(write=False)
        self.dom, self.cod, self.table = dom, cod, table

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other):
        if not isinstance(other, OrderMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"OrderMap({self.table.tolist()})"

    def image(self) -> frozenset[int]:
        return frozenset(int(v) for v in self.table)


def validate_poset(p: Poset) -> ValidationReport:
    report = ValidationReport("poset")
    leq = p.leq
    for x in np.flatnonzero(~np.diag(leq)):
        report.add("reflexivity", (x,))
    both = leq & leq.T
    np.fill_diagonal(both, False)
    for x, y in np.argwhere(both):
        if x < y:
            report.add("antisymmetry", (x, y))
    if p.size <= 64:
        # leq[x,y] & leq[y,z] & ~leq[x,z]
        bad = leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :]
        for x, y, z in np.argwhere(bad):
            report.add("transitivity", (x, y, z))
    else:
        m = leq.astype(np.float32)
        for x, z in np.argwhere(((m @ m) > 0) & ~leq):
            for y in np.flatnonzero(leq[x] & leq[:, z]):
                report.add("transitivity", (x, y, z))
    return report


def is_antitone(m: OrderMap) -> bool:
    return kernels.antitone_violations(m.dom.leq, m.cod.leq, m.table).shape[0] == 0


def is_monotone(m: OrderMap) -> bool:
    t = m.table
    return bool(np.all(~m.dom.leq | m.cod.leq[np.ix_(t, t)]))


def _check(p: Poset, x: int):
    if not 0 <= x < p.size:
        raise IndexError(f"element {x} outside carrier of size {p.size}")


def downset(p: Poset, x: int) -> frozenset[int]:
    _check(p, x)
    return frozenset(int(y) for y in np.flatnonzero(p.leq[:, x]))


def upset(p: Poset, x: int) -> frozenset[int]:
    _check(p, x)
    return frozenset(int(y) for y in np.flatnonzero(p.leq[x, :]))


def upper_bounds(p: Poset, s: Iterable[int]) -> np.ndarray:
    s = list(s)
    if not s:
        return np.arange(p.size)
    return np.flatnonzero(p.leq[s, :].all(axis=0))


def lower_bounds(p: Poset, s: Iterable[int]) -> np.ndarray:
    s = list(s)
    if not s:
        return np.arange(p.size)
    return np.flatnonzero(p.leq[:, s].all(axis=1))


def join(p: Poset, s: Iterable[int]) -> int | None:
    """Least upper bound of ``s`` or ``None``; ``join([])`` is the bottom if any."""
    ub = upper_bounds(p, s)
    least = ub[p.leq[np.ix_(ub, ub)].all(axis=1)] if ub.size else ub
    return int(least[0]) if least.size else None


def meet(p: Poset, s: Iterable[int]) -> int | None:
    """Greatest lower bound of ``s`` or ``None``; ``meet([])`` is the top if any."""
    lb = lower_bounds(p, s)
    greatest = lb[p.leq[np.ix_(lb, lb)].all(axis=0)] if lb.size else lb
    return int(greatest[0]) if greatest.size else None


def top_bottom(p: Poset) -> tuple[int | None, int | None]:
    return meet(p, []), join(p, [])


def subset_label(mask: int, n: int) -> str:
    return "{" + ",".join(str(i) for i in range(n) if mask >> i & 1) + "}"


_POWERSETS: dict[int, Poset] = {}


def powerset_poset(n: int) -> Poset:
    """The subsets of ``range(n)`` under inclusion; element ``i`` is bitmask ``i``."""
    cap = materialization_cap()
    if n < 0:
        raise ValueError("carrier size must be non-negative")
    if n > cap:
        raise CapExceededError(f"powerset of a {n}-element set exceeds the materialization cap {cap}")
    cached = _POWERSETS.get(n)
    if cached is not None:
        return cached
    idx = np.arange(1 << n, dtype=np.int64)
    leq = (idx[:, None] & idx[None, :]) == idx[:, None]
    p = Poset(leq, [subset_label(i, n) for i in range(1 << n)])
    _POWERSETS[n] = p
    return p


def powerset_rank(p: Poset) -> int | None:
    """``k`` when ``p`` is literally ``powerset_poset(k)``, else ``None``."""
    size = p.size
    if size == 0 or size & (size - 1):
        return None
    k = size.bit_length() - 1
    idx = np.arange(size, dtype=np.int64)
    expected = (idx[:, None] & idx[None, :]) == idx[:, None]
    return k if np.array_equal(p.leq, expected) else None


def is_complete_lattice(p: Poset, exhaustive: bool = False) -> bool:
    """Finite case: top, bottom and all pairwise joins/meets exist.

    With ``exhaustive`` every subset is checked (only sensible for tiny posets).
    """
    if p.size == 0:
        return False
    if exhaustive:
        return all(
            join(p, s) is not None and meet(p, s) is not None
            for r in range(p.size + 1)
            for s in itertools.combinations(range(p.size), r)
        )
    if None in top_bottom(p):
        return False
    return all(
        join(p, (x, y)) is not None and meet(p, (x, y)) is not None
        for x in range(p.size)
        for y in range(x + 1, p.size)
    )


def induced(p: Poset, elements: Sequence[int]) -> Poset:
    """Subposet on ``elements`` (renumbered in the given order)."""
    elements = list(elements)
    return Poset(p.leq[np.ix_(elements, elements)], [p.labels[e] for e in elements])


def covers(p: Poset) -> list[tuple[int, int]]:
    """Covering pairs ``(x, y)``: ``x < y`` with nothing strictly between."""
    lt = p.leq.copy()
    np.fill_diagonal(lt, False)
    between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
    return [(int(x), int(y)) for x, y in np.argwhere(lt & ~between)]


def enumerate_posets(n: int, up_to_iso: bool = True) -> list[Poset]:
    """All partial orders on ``n`` labelled points, or one per isomorphism class."""
    if n > 4:
        raise CapExceededError("poset enumeration is limited to n <= 4")
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    found: list[Poset] = []
    seen: set[bytes] = set()
    perms = list(itertools.permutations(range(n)))
    for bits in range(1 << len(off)):
        leq = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(off):
            if bits >> k & 1:
                leq[i, j] = True
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            continue
        if (leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :]).any():
            continue
        if up_to_iso:
            key = min(leq[np.ix_(pm, pm)].tobytes() for pm in perms) if n else b""
            if key in seen:
                continue
            seen.add(key)
        found.append(Poset(leq))
    return found
