"""Root-system pair data: positive roots of g and k, inner product, K-type lattice.

A :class:`PairDatum` is the raw description.  :func:`validate` checks it and
returns a :class:`RootData` with the derived objects (simple roots, rho,
rho_c) that the rest of the package works from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple

from . import linalg
from .linalg import Vector, as_fraction, vec

Weight = Vector

PRESETS = ("sl2r", "sp4r", "g2s")


class DatumError(ValueError):
    """A pair datum (or a weight handed to it) violates an invariant."""

    def __init__(self, problems: Sequence[str] | str):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class LatticeSpec:
    """Integer span of ``basis`` cut down by congruences on the coordinates.

    Each congruence ``(coeffs, m)`` demands ``sum(c_i * x_i) % m == 0``.
    """

    basis: Tuple[Weight, ...]
    congruences: Tuple[Tuple[Tuple[int, ...], int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(vec(b) for b in self.basis))
        object.__setattr__(
            self,
            "congruences",
            tuple((tuple(int(c) for c in cs), int(m)) for cs, m in self.congruences),
        )

    @property
    def rank(self) -> int:
        return len(self.basis)

    def admits(self, coords: Sequence[int]) -> bool:
        return all(sum(c * x for c, x in zip(cs, coords)) % m == 0 for cs, m in self.congruences)


@dataclass(frozen=True)
class PairDatum:
    ambient_dim: int
    pos_roots_g: Tuple[Weight, ...]
    pos_roots_k: Tuple[Weight, ...]
    lattice: LatticeSpec
    gram: Optional[linalg.Matrix] = None
    name: str = ""

    def __post_init__(self):
        n = int(self.ambient_dim)
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "pos_roots_g", tuple(vec(r) for r in self.pos_roots_g))
        object.__setattr__(self, "pos_roots_k", tuple(vec(r) for r in self.pos_roots_k))
        gram = linalg.identity(n) if self.gram is None else linalg.matrix(self.gram)
        object.__setattr__(self, "gram", gram)

    def inner(self, u: Weight, v: Weight) -> Fraction:
        return sum((a * b for a, b in zip(u, linalg.matvec(self.gram, v))), Fraction(0))

    def norm_sq(self, v: Weight) -> Fraction:
        return self.inner(v, v)

    def zero(self) -> Weight:
        return linalg.zeros(self.ambient_dim)

    def lattice_point(self, coords: Sequence[int]) -> Weight:
        """Ambient coordinates of ``sum(coords[i] * basis[i])``."""
        if len(coords) != self.lattice.rank:
            raise DatumError(
                f"expected {self.lattice.rank} lattice coordinates, got {len(coords)}"
            )
        out = self.zero()
        for c, b in zip(coords, self.lattice.basis):
            out = linalg.add(out, linalg.scale(c, b))
        return out

    def lattice_coords(self, mu: Weight) -> Optional[Tuple[int, ...]]:
        """Integer lattice coordinates of ``mu``, or None if ``mu`` is not a lattice point."""
        if not self.lattice.basis:
            return () if all(x == 0 for x in mu) else None
        cols = linalg.transpose(self.lattice.basis)
        x = linalg.solve(cols, vec(mu))
        if x is None or any(c.denominator != 1 for c in x):
            return None
        coords = tuple(int(c) for c in x)
        return coords if self.lattice.admits(coords) else None


@dataclass(frozen=True)
class RootData:
    """Derived data of a validated datum."""

    datum: PairDatum
    roots_g: Tuple[Weight, ...]
    simple_g: Tuple[Weight, ...]
    simple_k: Tuple[Weight, ...]
    rho: Weight
    rho_c: Weight


def rho(roots: Iterable[Weight], dim: Optional[int] = None) -> Weight:
    """Half the sum of ``roots`` (zero vector for an empty list, given ``dim``)."""
    roots = list(roots)
    if not roots:
        if dim is None:
            raise ValueError("dimension needed for an empty root list")
        return linalg.zeros(dim)
    total = roots[0]
    for r in roots[1:]:
        total = linalg.add(total, r)
    return linalg.scale(Fraction(1, 2), total)


def pairing(datum: PairDatum, v: Weight, alpha: Weight) -> Tuple[Fraction, Fraction]:
    """Return ``((v, alpha), <v, alpha^vee>)``."""
    aa = datum.norm_sq(alpha)
    if aa == 0:
        raise ValueError("pairing against the zero vector")
    va = datum.inner(v, alpha)
    return va, 2 * va / aa


def coroot_pairing(datum: PairDatum, v: Weight, alpha: Weight) -> Fraction:
    return pairing(datum, v, alpha)[1]


def reflect(datum: PairDatum, alpha: Weight, v: Weight) -> Weight:
    return linalg.sub(v, linalg.scale(coroot_pairing(datum, v, alpha), alpha))


def simple_roots(pos: Sequence[Weight]) -> Tuple[Weight, ...]:
    """Positive roots that are not the sum of two positive roots, in input order."""
    sums = {linalg.add(a, b) for i, a in enumerate(pos) for b in pos[i + 1 :]}
    return tuple(r for r in pos if r not in sums)


def decompose(root: Weight, simple: Sequence[Weight]) -> Optional[Vector]:
    """Coefficients of ``root`` in the ``simple`` basis, or None outside their span."""
    if not simple:
        return None
    return linalg.solve(linalg.transpose(simple), root)


def _check_root_system(datum: PairDatum, pos: Sequence[Weight], label: str) -> list[str]:
    problems = []
    roots = list(pos) + [linalg.neg(r) for r in pos]
    rootset = set(roots)
    for a in roots:
        for b in roots:
            if b == linalg.scale(2, a):
                problems.append(f"{label}: root {fmt_weight(b)} is twice {fmt_weight(a)} (not reduced)")
    for a in roots:
        for b in roots:
            image = reflect(datum, a, b)
            if image not in rootset:
                problems.append(
                    f"{label}: reflection in {fmt_weight(a)} sends {fmt_weight(b)} to "
                    f"{fmt_weight(image)}, which is missing from the root set"
                )
    return problems


def check(datum: PairDatum) -> list[str]:
    """List every violated invariant (empty list means valid)."""
    n = datum.ambient_dim
    if n < 1:
        return ["ambient_dim must be positive"]
    problems = []
    if len(datum.gram) != n or any(len(row) != n for row in datum.gram):
        return [f"gram must be {n}x{n}"]
    for label, roots in (("g", datum.pos_roots_g), ("k", datum.pos_roots_k)):
        for r in roots:
            if len(r) != n:
                problems.append(f"{label}-root {fmt_weight(r)} has length {len(r)}, expected {n}")
    for b in datum.lattice.basis:
        if len(b) != n:
            problems.append(f"lattice basis vector {fmt_weight(b)} has length {len(b)}, expected {n}")
    if problems:
        return problems

    g = datum.gram
    if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
        problems.append("gram is not symmetric")
    for k in range(1, n + 1):
        if linalg.det([row[:k] for row in g[:k]]) <= 0:
            problems.append(f"gram is not positive-definite (leading minor {k} is not positive)")
            break
    if problems:
        return problems

    pos_g = datum.pos_roots_g
    if not pos_g:
        problems.append("pos_roots_g is empty")
    for r in pos_g:
        if all(x == 0 for x in r):
            problems.append("pos_roots_g contains the zero vector")
    if len(set(pos_g)) != len(pos_g):
        problems.append("pos_roots_g has duplicate roots")
    for r in pos_g:
        if linalg.neg(r) in set(pos_g):
            problems.append(f"pos_roots_g contains both {fmt_weight(r)} and its negative")
            break
    if problems:
        return problems

    problems += _check_root_system(datum, pos_g, "Delta(g)")
    roots = list(pos_g) + [linalg.neg(r) for r in pos_g]
    for a in roots:
        for b in roots:
            if coroot_pairing(datum, b, a).denominator != 1:
                problems.append(
                    f"Delta(g): <{fmt_weight(b)}, {fmt_weight(a)}^vee> is not an integer"
                )
    if problems:
        return problems

    simple = simple_roots(pos_g)
    if linalg.rank(simple) < len(simple):
        problems.append("pos_roots_g is not a positive system: its indecomposable roots are dependent")
    else:
        for r in pos_g:
            c = decompose(r, simple)
            if c is None or any(x < 0 or x.denominator != 1 for x in c):
                problems.append(
                    f"pos_roots_g is not a positive system: {fmt_weight(r)} is not a "
                    "nonnegative integer combination of simple roots"
                )

    gset = set(pos_g)
    for r in datum.pos_roots_k:
        if r not in gset:
            problems.append(f"k-root not a g-root: {fmt_weight(r)}")
    if len(set(datum.pos_roots_k)) != len(datum.pos_roots_k):
        problems.append("pos_roots_k has duplicate roots")
    if not problems:
        problems += _check_root_system(datum, datum.pos_roots_k, "Delta(k)")

    lat = datum.lattice
    if lat.basis and linalg.rank(lat.basis) < len(lat.basis):
        problems.append("lattice basis vectors are linearly dependent")
    for cs, m in lat.congruences:
        if m < 1:
            problems.append(f"congruence modulus {m} must be >= 1")
        if len(cs) != lat.rank:
            problems.append(f"congruence {list(cs)} has {len(cs)} coefficients, lattice rank is {lat.rank}")
    return problems


def validate(datum: PairDatum) -> RootData:
    """Check ``datum`` and return its derived data; raise :class:`DatumError` otherwise."""
    problems = check(datum)
    if problems:
        raise DatumError(problems)
    return _derive(datum)


@lru_cache(maxsize=64)
def _derive(datum: PairDatum) -> RootData:
    n = datum.ambient_dim
    pos_g = datum.pos_roots_g
    return RootData(
        datum=datum,
        roots_g=tuple(pos_g) + tuple(linalg.neg(r) for r in pos_g),
        simple_g=simple_roots(pos_g),
        simple_k=simple_roots(datum.pos_roots_k),
        rho=rho(pos_g, n),
        rho_c=rho(datum.pos_roots_k, n),
    )


def build_preset(name: str) -> PairDatum:
    """One of the built-in data: ``sl2r``, ``sp4r`` or ``g2s``."""
    if name == "sl2r":
        datum = PairDatum(
            ambient_dim=1,
            pos_roots_g=[(2,)],
            pos_roots_k=[],
            lattice=LatticeSpec(basis=[(1,)]),
            name="SL(2,R)",
        )
    elif name == "sp4r":
        datum = PairDatum(
            ambient_dim=2,
            pos_roots_g=[(1, -1), (2, 0), (0, 2), (1, 1)],
            pos_roots_k=[(1, -1)],
            lattice=LatticeSpec(basis=[(1, 0), (0, 1)]),
            name="Sp(4,R)",
        )
    elif name == "g2s":
        # G2 sits in the plane x+y+z=0; a1 short, a2 long.
        a1 = vec((1, -1, 0))
        a2 = vec((-2, 1, 1))

        def comb(p, q):
            return linalg.add(linalg.scale(p, a1), linalg.scale(q, a2))

        pos = [comb(1, 0), comb(0, 1), comb(1, 1), comb(2, 1), comb(3, 1), comb(3, 2)]
        gamma1, gamma2 = comb(1, 0), comb(3, 2)
        half = Fraction(1, 2)
        datum = PairDatum(
            ambient_dim=3,
            pos_roots_g=pos,
            pos_roots_k=[gamma1, gamma2],
            lattice=LatticeSpec(
                basis=[linalg.scale(half, gamma1), linalg.scale(half, gamma2)],
                congruences=[((1, 1), 2)],
            ),
            name="G2(2)",
        )
    else:
        raise DatumError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    validate(datum)
    return datum


# -- serialization ----------------------------------------------------------


def fmt_rational(x: Fraction) -> str:
    return str(x)


def fmt_weight(v: Sequence[Fraction]) -> str:
    inner = ", ".join(str(x) for x in v)
    return f"({inner},)" if len(v) == 1 else f"({inner})"


def to_dict(datum: PairDatum) -> dict:
    def enc(v):
        return [str(x) for x in v]

    return {
        "name": datum.name,
        "ambient_dim": datum.ambient_dim,
        "gram": [enc(row) for row in datum.gram],
        "pos_roots_g": [enc(r) for r in datum.pos_roots_g],
        "pos_roots_k": [enc(r) for r in datum.pos_roots_k],
        "lattice": {
            "basis": [enc(b) for b in datum.lattice.basis],
            "congruences": [
                {"coeffs": list(cs), "modulus": m} for cs, m in datum.lattice.congruences
            ],
        },
    }


def from_dict(data: dict) -> PairDatum:
    """Build a datum from the JSON structure; shape errors raise DatumError."""
    try:
        n = data["ambient_dim"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise DatumError("ambient_dim must be an integer")
        lattice = data.get("lattice")
        if lattice is None:
            basis = [[int(i == j) for j in range(n)] for i in range(n)]
            congruences = []
        else:
            basis = lattice.get("basis", [])
            congruences = []
            for c in lattice.get("congruences", []):
                if isinstance(c, dict):
                    congruences.append((c["coeffs"], c["modulus"]))
                else:
                    cs, m = c
                    congruences.append((cs, m))
        return PairDatum(
            ambient_dim=n,
            gram=data.get("gram"),
            pos_roots_g=data.get("pos_roots_g", []),
            pos_roots_k=data.get("pos_roots_k", []),
            lattice=LatticeSpec(basis=basis, congruences=congruences),
            name=data.get("name", ""),
        )
    except DatumError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise DatumError(f"malformed datum: {exc!r}") from exc


def load(path: str | Path) -> PairDatum:
    """Read a datum file. I/O and JSON errors propagate unchanged (OSError, JSONDecodeError)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise DatumError("datum file must hold a JSON object")
    return from_dict(data)


def dump(datum: PairDatum, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_dict(datum), indent=2) + "\n", encoding="utf-8")


def as_weight(xs: Sequence) -> Weight:
    return tuple(as_fraction(x) for x in xs)
