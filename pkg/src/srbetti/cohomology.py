"""Finite cochain complexes and reduced simplicial cohomology dimensions.

The reduced (augmented) cochain complex is the only flavor here: the empty
face contributes a generator in degree -1, so H̃^{-1}({∅}) is one-dimensional
and every Hochster-type formula comes out without convention traps.

Orientation convention: the vertices of each face are ordered ascending and
the coboundary sign is (-1)^position of the inserted vertex.  Any fixed
convention yields the same dimensions (tested).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .complexes import SimplicialComplex, vertices_of
from .errors import NotAComplex
from .linalg import FieldSpec, Matrix, rank


@dataclass
class CochainComplex:
    """Graded sequence of free modules with integer coboundary matrices.

    ``d[q]`` maps degree q to degree q+1 and has shape size(q+1) x size(q).
    Degrees run over the contiguous range lo..hi; sizes outside are zero.
    """

    lo: int
    hi: int
    sizes: dict[int, int]
    d: dict[int, Matrix]
    labels: dict[int, list] | None = field(default=None, repr=False)

    def size(self, q: int) -> int:
        return self.sizes.get(q, 0)

    def differential(self, q: int) -> Matrix:
        mat = self.d.get(q)
        if mat is None:
            mat = Matrix(self.size(q + 1), self.size(q))
        return mat

    def check_shapes(self) -> None:
        for q in range(self.lo, self.hi + 1):
            mat = self.differential(q)
            if mat.rows != self.size(q + 1) or mat.cols != self.size(q):
                raise NotAComplex(
                    f"differential at degree {q} has shape {mat.rows}x{mat.cols}, "
                    f"expected {self.size(q + 1)}x{self.size(q)}"
                )

    def check_dd_zero(self) -> None:
        """Verify d_{q+1} ∘ d_q = 0 for all q (sparse column walk)."""
        self.check_shapes()
        for q in range(self.lo, self.hi):
            d1 = self.differential(q)
            d2 = self.differential(q + 1)
            # column i of d2 as sparse (row, value) pairs
            cols2 = [[] for _ in range(d2.cols)]
            for k, row in enumerate(d2.data):
                for i, b in enumerate(row):
                    if b:
                        cols2[i].append((k, b))
            for j in range(d1.cols):
                acc: dict[int, int] = {}
                for i in range(d1.rows):
                    a = d1.data[i][j]
                    if a:
                        for k, b in cols2[i]:
                            acc[k] = acc.get(k, 0) + a * b
                if any(v != 0 for v in acc.values()):
                    raise NotAComplex(f"d∘d != 0 at degree {q}, column {j}")


def cohomology_dims(C: CochainComplex, f: FieldSpec) -> dict[int, int]:
    """dim H^q = kernel_dim(d_q) - image_dim(d_{q-1}); zero entries omitted."""
    C.check_dd_zero()
    ranks = {q: rank(C.differential(q), f) for q in range(C.lo, C.hi + 1)}
    out = {}
    for q in range(C.lo, C.hi + 1):
        h = (C.size(q) - ranks[q]) - ranks.get(q - 1, 0)
        if h:
            out[q] = h
    return out


def reduced_cochain_complex(K: SimplicialComplex) -> CochainComplex:
    """Reduced simplicial cochain complex of K, degrees -1..dim K."""
    by_card = K.faces_by_card
    dim = K.dim
    sizes = {q: len(by_card[q + 1]) for q in range(-1, dim + 1)}
    labels = {q: list(by_card[q + 1]) for q in range(-1, dim + 1)}
    d: dict[int, Matrix] = {}
    for q in range(-1, dim):
        lower = by_card[q + 1]
        upper = by_card[q + 2]
        lower_index = {f: i for i, f in enumerate(lower)}
        mat = Matrix(len(upper), len(lower))
        for i, f in enumerate(upper):
            vs = vertices_of(f)
            for k, v in enumerate(vs):
                sub = f & ~(1 << (v - 1))
                j = lower_index.get(sub)
                if j is not None:
                    mat.data[i][j] += (-1) ** k
        d[q] = mat
    return CochainComplex(-1, dim, sizes, d, labels)


@lru_cache(maxsize=1 << 18)
def reduced_cohomology_dims(K: SimplicialComplex, f: FieldSpec) -> dict[int, int]:
    """Reduced cohomology dimensions of K over f (cached; do not mutate)."""
    return cohomology_dims(reduced_cochain_complex(K), f)


def euler_characteristic_reduced(K: SimplicialComplex) -> int:
    """Alternating sum of face counts, the empty face counted in degree -1."""
    return sum((-1) ** (f.bit_count() + 1) for f in K.faces)
