"""Color-change processes on graphs.

Blue sets are vertex bitmasks.  Three rules are supported:

* ``standard``: a blue vertex with exactly one white neighbor forces it.
* ``looped``: governed by a :class:`LoopConfig`.  A vertex with a specified
  loop counts itself among its neighbors; a vertex with a specified loop state
  forces its unique white (closed or open) neighbor whatever its own color.
  Unspecified vertices only force when blue, as in the standard rule.
* ``psd``: a blue vertex forces a white neighbor that is its only neighbor in
  one component of the subgraph induced by the white vertices.

All three are monotone in the starting set, so the complement of a stalled
closure is a set every forcing set must meet.  The minimum searches use that
to skip candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .graph import Graph, GraphError, components, iter_bits, members

ForceLog = list[tuple[int, int]]
Chain = tuple[int, ...]


@dataclass(frozen=True)
class LoopConfig:
    """Per-vertex loop state: ``loops`` and ``nonloops`` are disjoint masks."""

    n: int
    loops: int = 0
    nonloops: int = 0

    def __post_init__(self) -> None:
        if self.loops & self.nonloops:
            raise GraphError("a vertex cannot be both looped and loopless")
        if (self.loops | self.nonloops) >> self.n:
            raise GraphError("loop configuration mentions vertices out of range")

    @classmethod
    def full(cls, n: int, loops: int) -> LoopConfig:
        """Every vertex specified: those in ``loops`` carry a loop."""
        return cls(n, loops, ((1 << n) - 1) & ~loops)

    @classmethod
    def parse(cls, text: str) -> LoopConfig:
        """One character per vertex: ``1`` loop, ``0`` no loop, ``*`` unspecified."""
        loops = nonloops = 0
        for i, c in enumerate(text):
            if c == "1":
                loops |= 1 << i
            elif c == "0":
                nonloops |= 1 << i
            elif c not in "*?":
                raise GraphError(f"bad loop state {c!r} at position {i}")
        return cls(len(text), loops, nonloops)

    def __str__(self) -> str:
        return "".join(
            "1" if self.loops >> v & 1 else "0" if self.nonloops >> v & 1 else "*"
            for v in range(self.n)
        )


def _standard(g: Graph, blue: int, log: ForceLog | None) -> int:
    adj = g.adj
    full = g.full
    active = blue
    while True:
        progress = False
        for v in iter_bits(active):
            w = adj[v] & ~blue
            if not w:
                active &= ~(1 << v)
            elif w & (w - 1) == 0:
                blue |= w
                active = (active & ~(1 << v)) | w
                progress = True
                if log is not None:
                    log.append((v, w.bit_length() - 1))
        if not progress or blue == full:
            return blue


def _looped(g: Graph, blue: int, cfg: LoopConfig, log: ForceLog | None) -> int:
    adj = g.adj
    full = g.full
    while True:
        progress = False
        for v in range(g.n):
            bit = 1 << v
            white = full & ~blue
            if not white:
                return blue
            if blue & bit or cfg.nonloops & bit:
                w = adj[v] & white
                if w and w & (w - 1) == 0:
                    blue |= w
                    progress = True
                    if log is not None:
                        log.append((v, w.bit_length() - 1))
            elif cfg.loops & bit and not adj[v] & white:
                blue |= bit
                progress = True
                if log is not None:
                    log.append((v, v))
        if not progress:
            return blue


def _psd(g: Graph, blue: int, log: ForceLog | None) -> int:
    adj = g.adj
    full = g.full
    while blue != full:
        progress = False
        for comp in components(g, full & ~blue):
            for v in iter_bits(blue):
                w = adj[v] & comp
                if w and w & (w - 1) == 0:
                    blue |= w
                    progress = True
                    if log is not None:
                        log.append((v, w.bit_length() - 1))
                    break
            if progress:
                break
        if not progress:
            break
    return blue


def closure(
    g: Graph,
    blue: int,
    rule: str = "standard",
    loops: LoopConfig | None = None,
) -> tuple[int, ForceLog]:
    """Final blue set and one valid chronology of forces.

    A self-coloring vertex under the looped rule is logged as ``(v, v)``.
    """
    if blue >> g.n:
        raise GraphError("blue set mentions vertices out of range")
    log: ForceLog = []
    if rule == "standard":
        return _standard(g, blue, log), log
    if rule == "looped":
        if loops is None:
            raise GraphError("looped rule needs a loop configuration")
        return _looped(g, blue, loops, log), log
    if rule == "psd":
        return _psd(g, blue, log), log
    raise GraphError(f"unknown rule {rule!r}")


def _closer(g: Graph, rule: str, loops: LoopConfig | None) -> Callable[[int], int]:
    if rule == "standard":
        return lambda b: _standard(g, b, None)
    if rule == "looped":
        assert loops is not None
        if not loops.loops and not loops.nonloops:
            return lambda b: _standard(g, b, None)
        return lambda b: _looped(g, b, loops, None)
    if rule == "psd":
        return lambda b: _psd(g, b, None)
    raise GraphError(f"unknown rule {rule!r}")


def is_zfs(g: Graph, blue: int) -> bool:
    return _standard(g, blue, None) == g.full


def _min_forcing(
    g: Graph,
    close: Callable[[int], int],
    sizes: range,
) -> tuple[int, int] | None:
    full = g.full
    forts: list[int] = []
    for k in sizes:
        for combo in combinations(range(g.n), k):
            b = 0
            for v in combo:
                b |= 1 << v
            if any(not f & b for f in forts):
                continue
            c = close(b)
            if c == full:
                return k, b
            forts.append(full & ~c)
    return None


def forcing_number(
    g: Graph, rule: str = "standard", loops: LoopConfig | None = None
) -> tuple[int, int]:
    """Minimum forcing set size under ``rule`` and the first such set found."""
    found = _min_forcing(g, _closer(g, rule, loops), range(g.n + 1))
    assert found is not None
    return found


def zero_forcing_number(g: Graph) -> tuple[int, int]:
    return forcing_number(g)


def psd_zero_forcing_number(g: Graph) -> int:
    return forcing_number(g, "psd")[0]


def looped_forcing_number(g: Graph, loop_mask: int) -> int:
    return forcing_number(g, "looped", LoopConfig.full(g.n, loop_mask))[0]


def zhat(g: Graph, z: int | None = None) -> int:
    """Maximum looped forcing number over all ``2**n`` full loop configurations.

    Each looped number is at most the standard one, so the sweep stops once it
    meets ``Z``; configurations that cannot beat the running maximum are
    dismissed after the small sizes.
    """
    if z is None:
        z = zero_forcing_number(g)[0]
    best = -1
    for mask in range(1 << g.n):
        close = _closer(g, "looped", LoopConfig.full(g.n, mask))
        if _min_forcing(g, close, range(best + 1)) is not None:
            continue
        found = _min_forcing(g, close, range(best + 1, g.n + 1))
        assert found is not None
        best = found[0]
        if best >= z:
            break
    return best


def forcing_chains(g: Graph, blue: int, log: ForceLog) -> set[Chain]:
    """Chains induced by a standard-rule chronology, one per initial blue vertex."""
    current = blue
    nxt: dict[int, int] = {}
    for forcer, forced in log:
        if not current >> forcer & 1:
            raise GraphError(f"{forcer} forces before it is blue")
        if current >> forced & 1:
            raise GraphError(f"{forced} is forced while already blue")
        white = g.adj[forcer] & ~current
        if white != 1 << forced:
            raise GraphError(f"{forcer} -> {forced} is not a valid force")
        if forcer in nxt:
            raise GraphError(f"{forcer} forces twice")
        nxt[forcer] = forced
        current |= 1 << forced
    chains = set()
    for v in members(blue):
        chain = [v]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.add(tuple(chain))
    return chains


def is_fort(g: Graph, f: int) -> bool:
    if not f:
        return False
    for v in iter_bits(g.full & ~f):
        w = g.adj[v] & f
        if w and w & (w - 1) == 0:
            return False
    return True


def forts(g: Graph) -> list[int]:
    return [f for f in range(1, 1 << g.n) if is_fort(g, f)]


def zfs_family_equal(g: Graph, h: Graph) -> bool:
    """Whether ``g`` and ``h`` (same labeled vertex set) have the same forcing sets.

    Decided on fort families and cross-checked against the forcing sets
    themselves.
    """
    if g.n != h.n:
        raise GraphError("graphs must share a vertex set")
    same_forts = set(forts(g)) == set(forts(h))
    same_zfs = all(is_zfs(g, b) == is_zfs(h, b) for b in range(1 << g.n))
    if same_forts != same_zfs:
        raise AssertionError("fort families and forcing-set families disagree")
    return same_forts


def diag_certificate(g: Graph, v: int, k: int) -> str:
    """Diagonal entry of ``v`` in every minimum rank witness, if forcing decides it.

    ``k`` must be a lower bound on the maximum nullity.  A blue set of fewer
    than ``k`` vertices that completes when ``v`` may color itself (no white
    neighbors) proves the entry is zero; one that completes when a white ``v``
    may force its unique white neighbor proves it nonzero.
    """
    if k < 1:
        raise GraphError("k must be at least 1")
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    sizes = range(min(k, g.n + 1))
    zero = _min_forcing(g, _closer(g, "looped", LoopConfig(g.n, loops=1 << v)), sizes)
    nonzero = _min_forcing(g, _closer(g, "looped", LoopConfig(g.n, nonloops=1 << v)), sizes)
    if zero and nonzero:
        return "both"
    if zero:
        return "forced-zero"
    if nonzero:
        return "forced-nonzero"
    return "unknown"
