"""Exact nearest-point projection onto closed Weyl chambers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Tuple

from . import linalg
from .linalg import Matrix
from .pairdatum import PairDatum, Weight
from .weyl import WeylElement


def _inner(gram: Matrix, u: Weight, v: Weight) -> Fraction:
    return sum((a * b for a, b in zip(u, linalg.matvec(gram, v))), Fraction(0))


@dataclass(frozen=True)
class ChamberSpec:
    """The cone ``{x : (x, a) >= 0 for a in simple_roots}``, optionally moved by ``transform``."""

    simple_roots: Tuple[Weight, ...]
    gram: Matrix
    transform: Optional[WeylElement] = None

    def __post_init__(self):
        object.__setattr__(self, "simple_roots", tuple(linalg.vec(a) for a in self.simple_roots))
        if self.simple_roots and linalg.rank(self.simple_roots) < len(self.simple_roots):
            raise ValueError("chamber walls must be linearly independent")

    @classmethod
    def dominant(cls, datum: PairDatum, simple: Sequence[Weight], w: Optional[WeylElement] = None):
        return cls(tuple(simple), datum.gram, w)

    def contains(self, v: Weight) -> bool:
        if self.transform is not None:
            v = self.transform.apply_inverse(v)
        return all(_inner(self.gram, v, a) >= 0 for a in self.simple_roots)


@dataclass(frozen=True)
class Projection:
    point: Weight
    active: Tuple[int, ...]
    multipliers: Tuple[Fraction, ...]
    accepted: int  # number of active sets passing the KKT test; always 1


def _project_untransformed(v: Weight, simple: Sequence[Weight], gram: Matrix) -> Projection:
    r = len(simple)
    pair = [[_inner(gram, a, b) for b in simple] for a in simple]
    vpair = [_inner(gram, v, a) for a in simple]
    found = None
    accepted = 0
    for size in range(r + 1):
        for S in combinations(range(r), size):
            if S:
                A = tuple(tuple(pair[j][i] for i in S) for j in S)
                c = linalg.solve(A, tuple(-vpair[j] for j in S))
            else:
                c = ()
            if c is None or any(ci <= 0 for ci in c):
                continue
            x = v
            for ci, i in zip(c, S):
                x = linalg.add(x, linalg.scale(ci, simple[i]))
            if all(_inner(gram, x, simple[j]) >= 0 for j in range(r) if j not in S):
                accepted += 1
                found = Projection(x, S, c, 0)
    assert found is not None, "projection onto a nonempty closed cone must exist"
    return Projection(found.point, found.active, found.multipliers, accepted)


def project_certified(v: Weight, chamber: ChamberSpec) -> Projection:
    """Projection with its active set and KKT multipliers.

    Every subset ``S`` of walls is tried: ``x = v + sum(c_i a_i)`` with
    ``(x, a_i) = 0`` on ``S``; it is accepted when ``c > 0`` and ``x`` is
    feasible on the other walls.  Walls are independent, so the multipliers of
    the nearest point are unique and exactly one ``S`` (their support) passes.
    """
    v = linalg.vec(v)
    w = chamber.transform
    u = w.apply_inverse(v) if w is not None else v
    proj = _project_untransformed(u, chamber.simple_roots, chamber.gram)
    point = w(proj.point) if w is not None else proj.point
    return Projection(point, proj.active, proj.multipliers, proj.accepted)


def project(v: Weight, chamber: ChamberSpec) -> Weight:
    return project_certified(v, chamber).point


def is_regular(v: Weight, roots: Sequence[Weight], gram: Optional[Matrix] = None) -> bool:
    """True iff ``v`` is off every root hyperplane."""
    return first_wall(v, roots, gram) is None


def first_wall(v: Weight, roots: Sequence[Weight], gram: Optional[Matrix] = None) -> Optional[Weight]:
    """The first root in ``roots`` orthogonal to ``v``, if any."""
    gram = gram if gram is not None else linalg.identity(len(v))
    for a in roots:
        if _inner(gram, v, a) == 0:
            return a
    return None


def cone_generators(chamber: ChamberSpec) -> Tuple[Tuple[Weight, ...], Tuple[Weight, ...]]:
    """``(rays, lines)``: the cone is nonneg. combinations of rays plus any combination of lines.

    Rays are the vectors in the span of the walls dual to them; lines span the
    orthogonal complement of the walls.
    """
    simple = chamber.simple_roots
    gram = chamber.gram
    n = len(gram)
    r = len(simple)
    pair = tuple(tuple(_inner(gram, a, b) for a in simple) for b in simple)
    rays = []
    for i in range(r):
        # omega = sum_k x_k a_k with (omega, a_j) = delta_ij
        x = linalg.solve(pair, tuple(Fraction(int(i == j)) for j in range(r)))
        omega = linalg.zeros(n)
        for xk, ak in zip(x, simple):
            omega = linalg.add(omega, linalg.scale(xk, ak))
        rays.append(omega)
    lines = linalg.nullspace([linalg.matvec(gram, a) for a in simple], n)
    w = chamber.transform
    if w is not None:
        rays = [w(r) for r in rays]
        lines = [w(l) for l in lines]
    return tuple(rays), tuple(lines)
