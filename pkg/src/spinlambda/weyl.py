"""Weyl groups as explicit rational matrix groups.

Elements are generated breadth-first from the simple reflections, so every
stored word is shortlex-minimal and the generation order is already the
deterministic (length, then lexicographic word) order used everywhere.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from . import linalg
from .pairdatum import DatumError, PairDatum, RootData, Weight, fmt_weight, simple_roots, validate

DEFAULT_CAP = 10368


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class WeylElement:
    """``matrix`` acts on column vectors of ambient coordinates.

    ``word = [i1, ..., ik]`` means ``matrix == S[i1] @ ... @ S[ik]``.
    """

    matrix: linalg.Matrix
    inverse: linalg.Matrix = field(compare=False, repr=False)
    word: Tuple[int, ...] = field(compare=False, default=())

    def __call__(self, v: Weight) -> Weight:
        return linalg.matvec(self.matrix, v)

    def apply_inverse(self, v: Weight) -> Weight:
        return linalg.matvec(self.inverse, v)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(
            linalg.matmul(self.matrix, other.matrix),
            linalg.matmul(other.inverse, self.inverse),
            self.word + other.word,
        )

    @property
    def length(self) -> int:
        return len(self.word)

    def word_str(self) -> str:
        return "e" if not self.word else " ".join(f"s{i + 1}" for i in self.word)


def identity_element(n: int) -> WeylElement:
    e = linalg.identity(n)
    return WeylElement(e, e, ())


def reflection_matrix(alpha: Weight, gram: linalg.Matrix) -> linalg.Matrix:
    """Matrix of ``v -> v - 2 (v, alpha) / (alpha, alpha) * alpha``."""
    g_alpha = linalg.matvec(gram, alpha)
    aa = sum((a * b for a, b in zip(alpha, g_alpha)), Fraction(0))
    n = len(alpha)
    return tuple(
        tuple(Fraction(int(i == j)) - 2 * alpha[i] * g_alpha[j] / aa for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class WeylGroup:
    elements: Tuple[WeylElement, ...]
    generators: Tuple[Weight, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    def index(self, w: WeylElement) -> int:
        return self.elements.index(w)


def generate(simple: Sequence[Weight], gram: linalg.Matrix, cap: int = DEFAULT_CAP) -> WeylGroup:
    """The group generated by the reflections in ``simple`` (breadth-first)."""
    n = len(gram)
    if simple and linalg.rank(simple) < len(simple):
        raise ValueError("simple roots are linearly dependent")
    gens = [reflection_matrix(a, gram) for a in simple]
    e = identity_element(n)
    seen = {e.matrix}
    elements = [e]
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for i, s in enumerate(gens):
            m = linalg.matmul(w.matrix, s)
            if m in seen:
                continue
            if len(elements) >= cap:
                raise CapExceeded(
                    f"Weyl group has more than cap={cap} elements; raise the cap "
                    "or use a smaller datum"
                )
            seen.add(m)
            # reflections are involutions
            nxt = WeylElement(m, linalg.matmul(s, w.inverse), w.word + (i,))
            elements.append(nxt)
            queue.append(nxt)
    return WeylGroup(tuple(elements), tuple(simple))


def is_dominant(datum: PairDatum, v: Weight, pos: Sequence[Weight]) -> bool:
    return all(datum.inner(v, a) >= 0 for a in pos)


def make_dominant(
    datum: PairDatum, v: Weight, pos: Sequence[Weight]
) -> Tuple[Weight, WeylElement]:
    """Return ``({v}, u)`` with ``u(v) == {v}`` dominant for the positive system ``pos``.

    Word indices refer to the simple roots of ``pos`` in :func:`simple_roots` order.
    """
    simple = simple_roots(list(pos))
    u = identity_element(datum.ambient_dim)
    refl = [reflection_matrix(a, datum.gram) for a in simple]
    v = tuple(v)
    while True:
        for i, a in enumerate(simple):
            if datum.inner(v, a) < 0:
                v = linalg.matvec(refl[i], v)
                s = WeylElement(refl[i], refl[i], (i,))
                u = s * u
                break
        else:
            return v, u


@dataclass(frozen=True)
class WeylData:
    """Validated datum together with W(g,t), W(k,t) and W^1."""

    roots: RootData
    W_g: WeylGroup
    W_k: WeylGroup
    W1: Tuple[WeylElement, ...]

    @property
    def datum(self) -> PairDatum:
        return self.roots.datum


@lru_cache(maxsize=64)
def prepare(datum: PairDatum, cap: int = DEFAULT_CAP) -> WeylData:
    rd = validate(datum)
    W_g = generate(rd.simple_g, datum.gram, cap)
    W_k = generate(rd.simple_k, datum.gram, cap)
    W1 = tuple(w for w in W_g if is_dominant(datum, w(rd.rho), datum.pos_roots_k))
    return WeylData(rd, W_g, W_k, W1)


def compute_W1(datum: PairDatum, cap: int = DEFAULT_CAP) -> list[WeylElement]:
    """Elements ``w`` of W(g,t) with ``w C(g)`` inside ``C(k)``.

    Since every k-wall is a g-wall, this is the same as ``w rho`` being k-dominant.
    """
    return list(prepare(datum, cap).W1)


def check_k_dominant(datum: PairDatum, mu: Weight) -> None:
    for a in datum.pos_roots_k:
        if datum.inner(mu, a) < 0:
            raise DatumError(
                f"weight {fmt_weight(mu)} is not k-dominant (pairs negatively with {fmt_weight(a)})"
            )


def compute_W1_mu(datum: PairDatum, mu: Weight, cap: int = DEFAULT_CAP) -> list[WeylElement]:
    """Elements ``w`` with ``mu + 2 rho_c`` in ``w C(g)``, in W(g,t) order."""
    mu = linalg.vec(mu)
    check_k_dominant(datum, mu)
    wd = prepare(datum, cap)
    lam = linalg.add(mu, linalg.scale(2, wd.roots.rho_c))
    return [w for w in wd.W_g if all(datum.inner(lam, w(a)) >= 0 for a in wd.roots.simple_g)]


def inversion_set(datum: PairDatum, w: WeylElement) -> list[Weight]:
    """``D_w``: negative roots that lie in ``w Delta+``."""
    image = {w(a) for a in datum.pos_roots_g}
    return [linalg.neg(a) for a in datum.pos_roots_g if linalg.neg(a) in image]
