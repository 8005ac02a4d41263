"""Multi-aspect graph data model.

A graph here is a list of *aspects* (named, ordered sets of element labels)
plus a set of directed edges between *composite vertices* (one element per
aspect). Vertices map to matrix rows through a 1-based mixed-radix index whose
radices are the aspect sizes (the companion tuple); all matrix modules key
rows and columns by that index. Internally tuples are 0-based and the +1
happens at this boundary only.

Aggregating away some aspects is *sub-determination*: a bitmask selects the
aspects to keep (least significant bit = first aspect), and vertices, edges,
and whole graphs have sub-determined images. Sub-determined edges that
degenerate into self-loops are dropped.

All types are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DuplicateEdgeError,
    EdgeArityError,
    EmptyAspectError,
    IndexOutOfRangeError,
    InvalidAspectError,
    InvalidZetaError,
    NonPositiveWeightError,
    SelfLoopEdgeError,
    UnknownElementError,
)

Labels = tuple[str, ...]
Numeric = tuple[int, ...]


@dataclass(frozen=True)
class Aspect:
    """One named, ordered set of element labels."""

    name: str
    elements: Labels

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise EmptyAspectError(f"aspect {self.name!r} has no elements")
        index = {}
        for i, label in enumerate(self.elements):
            if label in index:
                raise InvalidAspectError(
                    f"duplicate element {label!r} in aspect {self.name!r}"
                )
            index[label] = i
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElementError(
                f"element {label!r} not in aspect {self.name!r}"
            ) from None


@dataclass(frozen=True)
class CompositeVertex:
    """A vertex: one element label per aspect, with its numeric (index) form."""

    labels: Labels
    numeric: Numeric

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "numeric", tuple(self.numeric))
        if len(self.labels) != len(self.numeric):
            raise EdgeArityError("label and numeric forms differ in length")

    @property
    def order(self) -> int:
        return len(self.labels)

    def __str__(self) -> str:
        return "(" + ",".join(self.labels) + ")"


@dataclass(frozen=True)
class AspectList:
    """The ordered aspects of a graph; owns label/index conversions."""

    aspects: tuple[Aspect, ...]

    def __post_init__(self):
        object.__setattr__(self, "aspects", tuple(self.aspects))
        if not self.aspects:
            raise EmptyAspectError("aspect list is empty")
        names = set()
        for a in self.aspects:
            if a.name in names:
                raise InvalidAspectError(f"duplicate aspect name {a.name!r}")
            names.add(a.name)

    @property
    def order(self) -> int:
        return len(self.aspects)

    def __len__(self) -> int:
        return len(self.aspects)

    def __getitem__(self, i: int) -> Aspect:
        return self.aspects[i]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.aspects)

    def vertex(self, labels: Sequence[str]) -> CompositeVertex:
        """Explicit label -> numeric conversion (no coercion elsewhere)."""
        labels = tuple(labels)
        if len(labels) != self.order:
            raise EdgeArityError(
                f"vertex has {len(labels)} elements, expected {self.order}"
            )
        numeric = tuple(a.index_of(x) for a, x in zip(self.aspects, labels))
        return CompositeVertex(labels, numeric)

    def vertex_from_numeric(self, numeric: Sequence[int]) -> CompositeVertex:
        numeric = tuple(numeric)
        if len(numeric) != self.order:
            raise EdgeArityError(
                f"vertex has {len(numeric)} components, expected {self.order}"
            )
        labels = []
        for a, i in zip(self.aspects, numeric):
            if not 0 <= i < len(a):
                raise IndexOutOfRangeError(
                    f"component {i} outside aspect {a.name!r} (size {len(a)})"
                )
            labels.append(a.elements[i])
        return CompositeVertex(tuple(labels), numeric)

    def edge(
        self,
        origin: Sequence[str],
        destination: Sequence[str],
        weight: float = 1.0,
    ) -> "MagEdge":
        return MagEdge(self.vertex(origin), self.vertex(destination), weight)


@dataclass(frozen=True)
class MagEdge:
    """A directed edge between two composite vertices of the same order."""

    origin: CompositeVertex
    destination: CompositeVertex
    weight: float = 1.0

    def __post_init__(self):
        if self.origin.order != self.destination.order:
            raise EdgeArityError("edge endpoints have different orders")
        if self.origin.labels == self.destination.labels:
            raise SelfLoopEdgeError(f"self-loop at {self.origin}")
        if not self.weight > 0:
            raise NonPositiveWeightError(f"edge weight {self.weight} must be > 0")

    def endpoints(self) -> tuple[Labels, Labels]:
        return self.origin.labels, self.destination.labels

    def __str__(self) -> str:
        return f"{self.origin} -> {self.destination}"


@dataclass(frozen=True)
class Mag:
    """A multi-aspect graph: aspect list plus an ordered, duplicate-free edge tuple.

    Edge order is meaningful (it fixes incidence-matrix rows and the
    weighted-Laplacian weight order) and is preserved exactly by file I/O.
    """

    aspects: AspectList
    edges: tuple[MagEdge, ...]
    name: str = "mag"

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        seen: set[tuple[Labels, Labels]] = set()
        for e in self.edges:
            self._check_endpoint(e.origin)
            self._check_endpoint(e.destination)
            key = e.endpoints()
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(key)

    def _check_endpoint(self, v: CompositeVertex) -> None:
        if v.order != self.aspects.order:
            raise EdgeArityError(
                f"vertex {v} has order {v.order}, graph has order {self.aspects.order}"
            )
        for a, label, i in zip(self.aspects.aspects, v.labels, v.numeric):
            if a.index_of(label) != i:
                raise UnknownElementError(
                    f"vertex {v} is inconsistent with aspect {a.name!r}"
                )

    @property
    def order(self) -> int:
        return self.aspects.order

    @property
    def vertex_count(self) -> int:
        return composite_vertex_count(companion_tuple(self))

    @property
    def edge_weights(self) -> tuple[float, ...]:
        return tuple(e.weight for e in self.edges)


@dataclass(frozen=True)
class CompanionTuple:
    """Aspect sizes (tau). A sub-determined tuple has 0 at dropped aspects."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if any(s < 0 for s in self.sizes):
            raise IndexOutOfRangeError("companion tuple entries must be >= 0")

    @property
    def order(self) -> int:
        return len(self.sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    def __iter__(self):
        return iter(self.sizes)

    def is_full(self) -> bool:
        return all(s >= 1 for s in self.sizes)

    def restricted(self) -> "CompanionTuple":
        """Drop zero entries (the kept-aspects-only form of a sub-determined tuple)."""
        return CompanionTuple(tuple(s for s in self.sizes if s))


@dataclass(frozen=True)
class SubDetermination:
    """Bitmask over aspects; bit 0 (least significant) is the first aspect."""

    mask: int

    @classmethod
    def from_bits(cls, bits: str) -> "SubDetermination":
        """Parse a binary string whose rightmost character is aspect 1."""
        bits = bits.strip()
        if not bits or any(c not in "01" for c in bits):
            raise InvalidZetaError(f"malformed sub-determination {bits!r}")
        return cls(int(bits, 2))

    def bits(self, p: int) -> str:
        return format(self.mask, f"0{p}b")

    def require_valid(self, p: int) -> None:
        if not 1 <= self.mask <= 2**p - 2:
            raise InvalidZetaError(
                f"mask {self.bits(max(p, 1))} is not a proper nonempty "
                f"aspect sublist for order {p}"
            )

    def keeps(self, position: int) -> bool:
        """Whether the 0-based aspect position survives."""
        return bool(self.mask >> position & 1)

    def kept(self, p: int) -> tuple[int, ...]:
        return tuple(i for i in range(p) if self.keeps(i))


def build_mag(
    aspects: AspectList | Iterable[Aspect | tuple[str, Sequence[str]]],
    edges: Iterable[MagEdge],
    name: str = "mag",
) -> Mag:
    """Validate and assemble a graph.

    Rejects (rather than silently fixes) empty aspects, duplicate edges,
    self-loops, unknown elements, and arity mismatches.
    """
    if not isinstance(aspects, AspectList):
        built = []
        for a in aspects:
            if isinstance(a, Aspect):
                built.append(a)
            else:
                aspect_name, elements = a
                built.append(Aspect(aspect_name, tuple(elements)))
        aspects = AspectList(tuple(built))
    return Mag(aspects, tuple(edges), name)


def companion_tuple(mag: Mag) -> CompanionTuple:
    """Aspect sizes of a graph; O(p)."""
    return CompanionTuple(mag.aspects.sizes())


def sub_companion_tuple(tau: CompanionTuple, zeta: SubDetermination) -> CompanionTuple:
    """Zero out the entries of the dropped aspects."""
    zeta.require_valid(tau.order)
    return CompanionTuple(
        tuple(s if zeta.keeps(i) else 0 for i, s in enumerate(tau.sizes))
    )


def position_weight(i: int, tau: CompanionTuple) -> int:
    """Mixed-radix weight of tuple position i (1-based; i = p+1 gives the vertex count).

    Zero entries of a sub-determined tuple contribute no factor.
    """
    p = tau.order
    if not 1 <= i <= p + 1:
        raise IndexOutOfRangeError(f"position {i} outside 1..{p + 1}")
    w = 1
    for s in tau.sizes[: i - 1]:
        if s:
            w *= s
    return w


def composite_vertex_count(tau: CompanionTuple) -> int:
    """Product of the (nonzero) aspect sizes."""
    return position_weight(tau.order + 1, tau)


def vertex_index(v: CompositeVertex | Sequence[int], tau: CompanionTuple) -> int:
    """1-based numeric index of a vertex under tau.

    Accepts the numeric tuple directly or a CompositeVertex. With a
    sub-determined tau the components of dropped aspects are ignored, so the
    full-length tuple yields the index of its sub-determined image.
    """
    numeric = v.numeric if isinstance(v, CompositeVertex) else tuple(v)
    if len(numeric) != tau.order:
        raise IndexOutOfRangeError(
            f"vertex has {len(numeric)} components, tuple has {tau.order}"
        )
    d = 0
    w = 1
    for x, s in zip(numeric, tau.sizes):
        if s == 0:
            continue
        if not 0 <= x < s:
            raise IndexOutOfRangeError(f"component {x} outside [0, {s - 1}]")
        d += x * w
        w *= s
    return d + 1


def vertex_from_index(d: int, tau: CompanionTuple) -> Numeric:
    """Invert vertex_index. Dropped aspects of a sub-determined tau come back as 0."""
    n = composite_vertex_count(tau)
    if not 1 <= d <= n:
        raise IndexOutOfRangeError(f"index {d} outside 1..{n}")
    rest = d - 1
    out = []
    for s in tau.sizes:
        if s == 0:
            out.append(0)
        else:
            out.append(rest % s)
            rest //= s
    return tuple(out)


def sub_determine_vertex(v: CompositeVertex, zeta: SubDetermination) -> CompositeVertex:
    """Keep only the aspects selected by zeta, preserving order."""
    zeta.require_valid(v.order)
    kept = zeta.kept(v.order)
    return CompositeVertex(
        tuple(v.labels[i] for i in kept), tuple(v.numeric[i] for i in kept)
    )


def sub_determine_edge(e: MagEdge, zeta: SubDetermination) -> MagEdge | None:
    """Sub-determine both endpoints; None when the image is a self-loop."""
    o = sub_determine_vertex(e.origin, zeta)
    d = sub_determine_vertex(e.destination, zeta)
    if o.labels == d.labels:
        return None
    return MagEdge(o, d, e.weight)


def sub_determine_mag(mag: Mag, zeta: SubDetermination) -> Mag:
    """The graph over the kept aspects.

    Self-loop images are dropped and parallel images collapse to a single
    edge (first occurrence order, unit weight); edge multiplicities survive
    only in the matrix form.
    """
    zeta.require_valid(mag.order)
    kept = zeta.kept(mag.order)
    aspects = AspectList(tuple(mag.aspects.aspects[i] for i in kept))
    seen: set[tuple[Labels, Labels]] = set()
    edges = []
    for e in mag.edges:
        image = sub_determine_edge(e, zeta)
        if image is None:
            continue
        key = image.endpoints()
        if key in seen:
            continue
        seen.add(key)
        edges.append(MagEdge(image.origin, image.destination))
    return Mag(aspects, tuple(edges), f"{mag.name}_zeta{zeta.bits(mag.order)}")
