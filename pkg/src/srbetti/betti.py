"""Multigraded Betti numbers via Hochster's formula, and moment-angle
cohomology dimensions.

Hochster's formula is the only Betti engine here: β_{i,ω} is the dimension of
the reduced cohomology of the full subcomplex K|ω in degree |ω|-i-1.  The
moment-angle dimensions are computed twice, once directly from subcomplex
cohomology and once through the Betti table, and the two routes must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import SimplicialComplex, full_subcomplex, mask_of, submasks, vertices_of
from .errors import MismatchFound, VertexBudgetExceeded, VertexOutOfRange
from .cohomology import reduced_cohomology_dims
from .linalg import FieldSpec

BETTI_TABLE_CAP = 24


@dataclass
class BettiTable:
    """Sparse map (i, ω) -> β_{i,ω} > 0; zero entries are omitted."""

    m: int
    field: FieldSpec
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def get(self, i: int, omega: int) -> int:
        return self.entries.get((i, omega), 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def sum_for_i(self, i: int) -> int:
        return sum(v for (j, _), v in self.entries.items() if j == i)

    def sorted_items(self):
        """Entries ordered by (|ω|, ω, i) — the canonical emission order."""
        return sorted(
            self.entries.items(),
            key=lambda kv: (kv[0][1].bit_count(), kv[0][1], kv[0][0]),
        )

    def to_json(self) -> list[dict]:
        return [
            {"i": i, "omega": list(vertices_of(om)), "beta": b}
            for (i, om), b in self.sorted_items()
        ]


def betti_number(K: SimplicialComplex, i: int, omega, f: FieldSpec) -> int:
    """β_{i,ω} = dim H̃^{|ω|-i-1}(K|ω; f)."""
    if i < 0:
        raise ValueError(f"homological index must be nonnegative, got {i}")
    om = omega if isinstance(omega, int) else mask_of(omega)
    if om & ~K.full_mask:
        raise VertexOutOfRange(f"omega {vertices_of(om)} not within [{K.m}]")
    deg = om.bit_count() - i - 1
    if deg < -1:
        return 0
    sub = full_subcomplex(K, om)
    return reduced_cohomology_dims(sub, f).get(deg, 0)


def _check_cap(K: SimplicialComplex, max_vertices) -> None:
    cap = BETTI_TABLE_CAP if max_vertices is None else max_vertices
    if K.m > cap:
        raise VertexBudgetExceeded(f"m={K.m} exceeds the cap {cap} for 2^m enumeration")


def subcomplex_cohomology(K: SimplicialComplex, omega: int, f: FieldSpec) -> dict[int, int]:
    """Reduced cohomology dimensions of K|ω (shared cached primitive)."""
    return reduced_cohomology_dims(full_subcomplex(K, omega), f)


def betti_table(K: SimplicialComplex, f: FieldSpec, *, max_vertices=None) -> BettiTable:
    """All nonzero β_{i,ω}; 2^m subcomplex cohomology computations."""
    _check_cap(K, max_vertices)
    table = BettiTable(K.m, f)
    for om in sorted(submasks(K.full_mask), key=lambda s: (s.bit_count(), s)):
        card = om.bit_count()
        for deg, d in subcomplex_cohomology(K, om, f).items():
            i = card - deg - 1
            if i >= 0 and d:
                table.entries[(i, om)] = d
    return table


def zk_cohomology_dims_two_routes(
    K: SimplicialComplex, f: FieldSpec, *, max_vertices=None
) -> tuple[dict[int, int], dict[int, int]]:
    """Moment-angle cohomology dims by both evaluation routes.

    Route one sums subcomplex cohomology directly:
    dim H^q = Σ_ω dim H̃^{q-|ω|-1}(K|ω).  Route two reads the Betti table:
    dim H^q = Σ_ω β_{2|ω|-q, ω}.
    """
    _check_cap(K, max_vertices)
    direct: dict[int, int] = {}
    for om in submasks(K.full_mask):
        shift = om.bit_count() + 1
        for deg, d in subcomplex_cohomology(K, om, f).items():
            q = deg + shift
            direct[q] = direct.get(q, 0) + d
    via_betti: dict[int, int] = {}
    for (i, om), b in betti_table(K, f, max_vertices=max_vertices).entries.items():
        q = 2 * om.bit_count() - i
        via_betti[q] = via_betti.get(q, 0) + b
    return direct, via_betti


def zk_cohomology_dims(
    K: SimplicialComplex, f: FieldSpec, *, max_vertices=None
) -> dict[int, int]:
    """Moment-angle cohomology dimensions; both routes computed and compared."""
    direct, via_betti = zk_cohomology_dims_two_routes(K, f, max_vertices=max_vertices)
    if direct != via_betti:
        raise MismatchFound(
            f"moment-angle routes disagree: direct={direct} betti={via_betti}"
        )
    return direct
