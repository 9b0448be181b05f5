"""Fixed-point records and the Galois-conjugate Siegel-disk certificate.

A fixed point w of f_delta with |delta| = 1 certified gets the verdict
SiegelCertified when its rotation number s = Tr^2/Det is certified inside
[0,4], some Galois-conjugate fixed point (delta*, w*) with |delta*| = 1 has s
certified outside [0,4], and delta is certified not a root of unity (Salem
witness polynomial).  The conjugate with the outside s-value forces the
eigenvalue ratio off the unit circle at the conjugate, which upgrades
"eigenvalues on the circle" to "multiplicatively independent eigenvalues";
transcendence theory then provides the Siegel disk, so multiplicative
independence is the entire computable content of the certificate.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from enum import Enum

from .balls import ComplexBall, Verdict, ball_in_interval, certified_out_margin
from .errors import WitnessMismatch
from .geometry import ProjectivePoint, chart_jacobian
from .intpoly import IntPolynomial
from .salem import SalemCertificate, is_salem


class Location(Enum):
    CURVE_SINGULAR = "CurveSingular"
    AFFINE_DIAGONAL = "AffineDiagonal"
    INFINITY = "Infinity"
    GENERIC = "Generic"


class PointVerdict(Enum):
    SIEGEL_CERTIFIED = "SiegelCertified"
    NOT_ROTATION = "NotRotation"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class FixedPointRecord:
    location: Location
    coords: ProjectivePoint
    trace: ComplexBall
    det: ComplexBall
    s: ComplexBall
    eigenvalues: tuple[ComplexBall, ComplexBall]

    def __post_init__(self):
        tr, dt = self.trace, self.det
        e1, e2 = self.eigenvalues
        if not (e1 + e2).disjoint(tr) and not (e1 * e2).disjoint(dt):
            return
        raise ValueError("eigenvalue sum/product inconsistent with trace/det")


def record_from_jacobian(location: Location, coords: ProjectivePoint,
                         jac) -> FixedPointRecord:
    """Build a record from a 2x2 ball Jacobian (trace, det, s, eigenvalues)."""
    (a, b), (c, d) = jac
    tr = a + d
    det = a * d - b * c
    s = tr * tr / det
    disc = tr * tr - 4 * det
    sq = _safe_sqrt(disc)
    half = ComplexBall.exact(0.5)
    eig = ((tr + sq) * half, (tr - sq) * half)
    return FixedPointRecord(location, coords, tr, det, s, eig)


def _safe_sqrt(ball: ComplexBall) -> ComplexBall:
    from .errors import BallDomainError
    try:
        return ball.sqrt()
    except BallDomainError:
        # disc ball contains 0: enclose both branches in one disk around 0
        _, hi = ball.abs_bounds()
        return ComplexBall(0j, math.sqrt(hi) * (1 + 2 ** -40) + 1e-300)


def jacobian(family_map, w: ProjectivePoint, chart: int | None = None):
    """Certified chart Jacobian at a fixed point (see geometry.chart_jacobian)."""
    return chart_jacobian(family_map, w, chart)


@functools.cache
def _salem_verdict(coeffs: tuple[int, ...]) -> bool:
    return bool(is_salem(IntPolynomial(coeffs)))


def not_root_of_unity(delta: ComplexBall, witness_poly: IntPolynomial) -> bool:
    """True when a Salem certificate for witness_poly vouches for delta.

    Salem polynomials are irreducible and not cyclotomic, so none of their
    roots is a root of unity.  Raises WitnessMismatch when witness_poly does
    not vanish on the delta ball.
    """
    value = witness_poly.eval_ball(delta)
    if not value.contains_zero():
        raise WitnessMismatch(
            f"witness polynomial does not vanish at {delta.center}")
    return _salem_verdict(witness_poly.coeffs)


@dataclass(frozen=True)
class Witness:
    delta: ComplexBall
    point_index: int
    margin: float


@dataclass(frozen=True)
class CertifiedVerdict:
    verdict: PointVerdict
    witness: Witness | None = None
    note: str = ""


def certify_fixed_point(rec: FixedPointRecord,
                        conjugates: list[tuple[ComplexBall, int, FixedPointRecord]],
                        witness_poly: IntPolynomial,
                        strict_ok: bool = True) -> CertifiedVerdict:
    """Verdict for one fixed point given its Galois-conjugate records.

    conjugates holds (delta*, index, record) triples for unit-circle conjugate
    parameters; all fixed points of one map share them.  The curve-singular
    fixed point is decided directly: its eigenvalue ratio is a primitive cube
    root of unity, so the eigenvalues are multiplicatively dependent and no
    Siegel disk can be centered there, even though its s-value is 1.
    """
    if rec.location is Location.CURVE_SINGULAR:
        return CertifiedVerdict(PointVerdict.NOT_ROTATION,
                                note="eigenvalue ratio is a root of unity")
    v = ball_in_interval(rec.s, 0.0, 4.0)
    if v is Verdict.CERTIFIED_OUT:
        return CertifiedVerdict(PointVerdict.NOT_ROTATION)
    if v is not Verdict.CERTIFIED_IN:
        return CertifiedVerdict(PointVerdict.INCONCLUSIVE, note="s straddles [0,4]")
    if not strict_ok:
        return CertifiedVerdict(PointVerdict.INCONCLUSIVE,
                                note="strict-mode conjugacy evidence failed")
    best: Witness | None = None
    for delta_star, idx, conj in conjugates:
        if conj.location is Location.CURVE_SINGULAR:
            continue
        margin = certified_out_margin(conj.s, 0.0, 4.0)
        if margin > 0 and (best is None or margin > best.margin):
            best = Witness(delta_star, idx, margin)
    if best is None:
        return CertifiedVerdict(PointVerdict.INCONCLUSIVE,
                                note="no conjugate with s outside [0,4]")
    if not not_root_of_unity(best.delta, witness_poly):
        return CertifiedVerdict(PointVerdict.INCONCLUSIVE,
                                note="witness polynomial is not Salem")
    return CertifiedVerdict(PointVerdict.SIEGEL_CERTIFIED, witness=best)


@dataclass
class RootSection:
    """Certification data for one unit-circle parameter value."""

    delta: ComplexBall
    records: list[FixedPointRecord]
    verdicts: list[CertifiedVerdict]

    def count(self, verdict: PointVerdict) -> int:
        return sum(1 for v in self.verdicts if v.verdict is verdict)


@dataclass
class StrictEvidence:
    resultant_degree: int          # degree of the raw eliminated resultant
    candidate_degree: int          # degree of its squarefree part
    prime: int | None
    irreducible: bool


@dataclass
class CertificationReport:
    family: str
    parameters: dict
    salem_poly: IntPolynomial
    salem_cert: SalemCertificate
    entropy: float
    sections: list[RootSection]
    principal: int                      # index of the headline section
    matrix_info: dict = field(default_factory=dict)
    strict_evidence: StrictEvidence | None = None
    siegel_cap: int | None = None       # hard upper bound on certified centers

    def __post_init__(self):
        if self.siegel_cap is not None:
            for sec in self.sections:
                n = sec.count(PointVerdict.SIEGEL_CERTIFIED)
                if n > self.siegel_cap:
                    raise AssertionError(
                        f"certified {n} Siegel centers, cap is {self.siegel_cap}")

    @property
    def principal_section(self) -> RootSection:
        return self.sections[self.principal]

    @property
    def has_inconclusive(self) -> bool:
        return any(sec.count(PointVerdict.INCONCLUSIVE) for sec in self.sections)
