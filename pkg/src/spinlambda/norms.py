"""Lambda norm, spin norm and the equality criterion for K-types.

All norms are squared norms, i.e. exact rationals.  A K-type is given by one
highest weight ``mu`` in ambient coordinates.

``norm_report`` computes the two norms and the criterion along separate
paths. The norms come from projection and minimisation, the criterion from
regularity and dominance tests. It then checks that the two agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from . import chamber, linalg
from .pairdatum import DatumError, PairDatum, Weight, fmt_weight
from .weyl import DEFAULT_CAP, WeylData, WeylElement, compute_W1_mu, is_dominant, make_dominant, prepare


class ConsistencyError(RuntimeError):
    """Two independently computed quantities disagree; this is a bug, not bad input."""


def _setup(datum: PairDatum, mu, cap: int) -> Tuple[WeylData, Weight]:
    wd = prepare(datum, cap)
    mu = linalg.vec(mu)
    if len(mu) != datum.ambient_dim:
        raise DatumError(f"weight {fmt_weight(mu)} has length {len(mu)}, expected {datum.ambient_dim}")
    if datum.lattice_coords(mu) is None:
        raise DatumError(f"weight {fmt_weight(mu)} is not in the K-type lattice")
    if not is_dominant(datum, mu, datum.pos_roots_k):
        raise DatumError(f"weight {fmt_weight(mu)} is not k-dominant")
    return wd, mu


def _shifted(wd: WeylData, mu: Weight) -> Weight:
    """mu + 2 rho_c"""
    return linalg.add(mu, linalg.scale(2, wd.roots.rho_c))


def lambda_norm(
    datum: PairDatum, mu, w: Optional[WeylElement] = None, cap: int = DEFAULT_CAP
) -> Tuple[Fraction, WeylElement]:
    """``|P_w(mu + 2 rho_c - w rho)|^2`` with ``P_w`` the projection onto ``w C(g)``.

    ``w`` defaults to the first element of W^1(mu).  Returns the value and ``w``.
    """
    wd, mu = _setup(datum, mu, cap)
    if w is None:
        w = compute_W1_mu(datum, mu, cap)[0]
    v = linalg.sub(_shifted(wd, mu), w(wd.roots.rho))
    cham = chamber.ChamberSpec(wd.roots.simple_g, datum.gram, w)
    return datum.norm_sq(chamber.project(v, cham)), w


def spin_terms(datum: PairDatum, mu, cap: int = DEFAULT_CAP) -> list[Tuple[WeylElement, Fraction]]:
    """``|{mu - w rho + rho_c} + rho_c|^2`` for every ``w`` in W^1, in W^1 order."""
    wd, mu = _setup(datum, mu, cap)
    rho_c = wd.roots.rho_c
    out = []
    for w in wd.W1:
        v = linalg.add(linalg.sub(mu, w(wd.roots.rho)), rho_c)
        dom, _ = make_dominant(datum, v, datum.pos_roots_k)
        out.append((w, datum.norm_sq(linalg.add(dom, rho_c))))
    return out


def spin_norm(datum: PairDatum, mu, cap: int = DEFAULT_CAP) -> Tuple[Fraction, WeylElement]:
    """Minimum of :func:`spin_terms`, with the first element attaining it."""
    terms = spin_terms(datum, mu, cap)
    best = min(val for _, val in terms)
    return best, next(w for w, val in terms if val == best)


def intermediate(datum: PairDatum, mu, cap: int = DEFAULT_CAP) -> Fraction:
    """``|mu + 2 rho_c - w rho|^2`` for ``w`` in W^1(mu); the same for all such ``w``."""
    wd, mu = _setup(datum, mu, cap)
    lam = _shifted(wd, mu)
    values = {datum.norm_sq(linalg.sub(lam, w(wd.roots.rho))) for w in compute_W1_mu(datum, mu, cap)}
    if len(values) != 1:
        raise ConsistencyError(f"intermediate value differs across W1(mu) at {fmt_weight(mu)}: {sorted(values)}")
    return values.pop()


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of the strictness criterion.

    ``wall_root`` is a root orthogonal to mu + 2 rho_c when ``cond_a``.
    ``violations`` pairs every w in W^1(mu) with a simple k-root that
    mu - w rho + rho_c pairs negatively with (filled when ``cond_b``);
    otherwise ``witness`` is a w0 with mu - w0 rho + rho_c k-dominant.
    """

    cond_a: bool
    wall_root: Optional[Weight]
    cond_b: bool
    violations: Tuple[Tuple[WeylElement, Weight], ...]
    witness: Optional[WeylElement]

    @property
    def strict(self) -> bool:
        return self.cond_a or self.cond_b


def criterion(datum: PairDatum, mu, cap: int = DEFAULT_CAP) -> CriterionVerdict:
    wd, mu = _setup(datum, mu, cap)
    rd = wd.roots
    wall = chamber.first_wall(_shifted(wd, mu), datum.pos_roots_g, datum.gram)

    violations = []
    witness = None
    for w in compute_W1_mu(datum, mu, cap):
        v = linalg.add(linalg.sub(mu, w(rd.rho)), rd.rho_c)
        bad = next((a for a in rd.simple_k if datum.inner(v, a) < 0), None)
        if bad is None:
            witness = w
            break
        violations.append((w, bad))
    cond_b = witness is None
    return CriterionVerdict(
        cond_a=wall is not None,
        wall_root=wall,
        cond_b=cond_b,
        violations=tuple(violations) if cond_b else (),
        witness=witness,
    )


@dataclass(frozen=True)
class NormReport:
    mu: Weight
    lambda_sq: Fraction
    intermediate_sq: Fraction
    spin_sq: Fraction
    spin_witness: WeylElement
    lambda_chamber: WeylElement
    verdict: CriterionVerdict

    @property
    def painted(self) -> bool:
        return not self.verdict.strict


def norm_report(datum: PairDatum, mu, cap: int = DEFAULT_CAP) -> NormReport:
    """All norms plus the verdict, with the chain and the equivalence checked."""
    mu = linalg.vec(mu)
    lam, w_lam = lambda_norm(datum, mu, cap=cap)
    mid = intermediate(datum, mu, cap)
    spin, w_spin = spin_norm(datum, mu, cap)
    verdict = criterion(datum, mu, cap)
    if not (lam <= mid <= spin):
        raise ConsistencyError(
            f"norm chain violated at {fmt_weight(mu)}: lambda={lam}, intermediate={mid}, spin={spin}"
        )
    if (spin > lam) != verdict.strict:
        raise ConsistencyError(
            f"criterion disagrees with the norms at {fmt_weight(mu)}: "
            f"lambda={lam}, spin={spin}, cond_a={verdict.cond_a}, cond_b={verdict.cond_b}"
        )
    return NormReport(mu, lam, mid, spin, w_spin, w_lam, verdict)


def corollary_check(datum: PairDatum, mu, cap: int = DEFAULT_CAP) -> bool:
    """If mu + rho_c - w rho is k-dominant for some w in W^1(mu), assert spin == intermediate.

    Returns whether the hypothesis held.
    """
    wd, mu = _setup(datum, mu, cap)
    rd = wd.roots
    fires = any(
        is_dominant(datum, linalg.add(linalg.sub(mu, w(rd.rho)), rd.rho_c), datum.pos_roots_k)
        for w in compute_W1_mu(datum, mu, cap)
    )
    if not fires:
        return False
    spin, _ = spin_norm(datum, mu, cap)
    mid = intermediate(datum, mu, cap)
    if spin != mid:
        raise ConsistencyError(f"spin {spin} != intermediate {mid} at {fmt_weight(mu)}")
    return True
