"""Regular-grid nanoparticle networks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Tuple

Pair = Tuple[int, int]


class TopologyError(ValueError):
    """Raised when a network geometry is invalid."""


@dataclass(frozen=True)
class NanoparticleSpec:
    """Uniform nanoparticle geometry in nanometres."""

    radius: float = 10.0
    spacing: float = 1.0

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise TopologyError(f"radius must be positive, got {self.radius}")
        if self.spacing <= 0:
            raise TopologyError(f"spacing must be positive, got {self.spacing}")

    @property
    def center_distance(self) -> float:
        return 2 * self.radius + self.spacing


@dataclass(frozen=True)
class NetworkTopology:
    """Nanoparticles on a ``rows`` x ``cols`` lattice with nearest-neighbour junctions.

    NP ``i`` sits at ``(i // cols, i % cols)``. ``adjacency`` holds unordered pairs stored
    as ``(low, high)`` tuples.
    """

    rows: int
    cols: int
    adjacency: FrozenSet[Pair]
    np_spec: NanoparticleSpec = field(default_factory=NanoparticleSpec)

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise TopologyError("a network needs at least one nanoparticle")
        for i, j in self.adjacency:
            if i == j:
                raise TopologyError(f"self junction on NP {i}")
            if i > j:
                raise TopologyError(f"pair ({i}, {j}) is not normalised as (low, high)")
            if not (0 <= i < self.n_np and 0 <= j < self.n_np):
                raise TopologyError(f"pair ({i}, {j}) references an unknown NP")
        if not self._is_connected():
            raise TopologyError("adjacency graph is not connected")

    @property
    def n_np(self) -> int:
        return self.rows * self.cols

    @cached_property
    def pairs(self) -> Tuple[Pair, ...]:
        """Adjacency pairs in a stable (sorted) order."""

        return tuple(sorted(self.adjacency))

    @cached_property
    def _neighbor_map(self) -> Dict[int, Tuple[int, ...]]:
        neighbors: Dict[int, List[int]] = {i: [] for i in range(self.n_np)}
        for i, j in self.pairs:
            neighbors[i].append(j)
            neighbors[j].append(i)
        return {i: tuple(sorted(values)) for i, values in neighbors.items()}

    def neighbors(self, i: int) -> Tuple[int, ...]:
        return self._neighbor_map[i]

    def degree(self, i: int) -> int:
        return len(self._neighbor_map[i])

    def is_adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.adjacency

    def coords(self, i: int) -> Tuple[int, int]:
        if not 0 <= i < self.n_np:
            raise TopologyError(f"NP index {i} outside network of {self.n_np}")
        return divmod(i, self.cols)

    def index(self, row: int, col: int) -> int:
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise TopologyError(f"({row}, {col}) outside {self.rows}x{self.cols} grid")
        return row * self.cols + col

    def is_boundary(self, i: int) -> bool:
        row, col = self.coords(i)
        return row in (0, self.rows - 1) or col in (0, self.cols - 1)

    def boundary(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.n_np) if self.is_boundary(i))

    def graph_distance(self, source: int, target: int) -> int:
        """Breadth-first hop count between two NPs."""

        seen = {source: 0}
        queue = deque([source])
        while queue:
            current = queue.popleft()
            if current == target:
                return seen[current]
            for neighbor in self.neighbors(current):
                if neighbor not in seen:
                    seen[neighbor] = seen[current] + 1
                    queue.append(neighbor)
        raise TopologyError(f"NP {target} unreachable from NP {source}")

    def _is_connected(self) -> bool:
        if self.n_np == 1:
            return True
        reached = {0}
        queue = deque([0])
        while queue:
            current = queue.popleft()
            for neighbor in self.neighbors(current):
                if neighbor not in reached:
                    reached.add(neighbor)
                    queue.append(neighbor)
        return len(reached) == self.n_np


def _lattice_pairs(rows: int, cols: int) -> FrozenSet[Pair]:
    pairs = set()
    for row in range(rows):
        for col in range(cols):
            i = row * cols + col
            if col + 1 < cols:
                pairs.add((i, i + 1))
            if row + 1 < rows:
                pairs.add((i, i + cols))
    return frozenset(pairs)


def build_grid(
    rows: int, cols: int, spec: NanoparticleSpec | None = None
) -> NetworkTopology:
    """Return a ``rows`` x ``cols`` grid with 4-neighbour junctions.

    Raises:
        TopologyError: If either dimension is smaller than 2.
    """

    if rows < 2 or cols < 2:
        raise TopologyError(f"grid dimensions must be >= 2, got {rows}x{cols}")
    return NetworkTopology(
        rows=rows,
        cols=cols,
        adjacency=_lattice_pairs(rows, cols),
        np_spec=spec or NanoparticleSpec(),
    )


def build_line(n_np: int, spec: NanoparticleSpec | None = None) -> NetworkTopology:
    """Return a 1 x ``n_np`` chain, including the single-island case."""

    if n_np < 1:
        raise TopologyError(f"a chain needs at least one NP, got {n_np}")
    return NetworkTopology(
        rows=1,
        cols=n_np,
        adjacency=_lattice_pairs(1, n_np),
        np_spec=spec or NanoparticleSpec(),
    )
