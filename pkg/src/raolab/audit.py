"""Cross-checks between the restriction engine and the Gröbner route."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .configs import flat_fat_points_plane, general_skew_lines
from .gf import DEFAULT_PRIME, nullspace
from .ideal import Ideal, intersect_all, saturate
from .poly import Polynomial
from .restriction import FLAT_FAT, LINE, Configuration, engine


def _linear(ring, coeffs) -> Polynomial:
    return ring.linear_form([int(c) for c in coeffs])


def component_ideal(cfg: Configuration, i: int) -> Ideal:
    """Ideal of a line or flat fat point component, from its parametrization."""
    comp = cfg.components[i]
    ring = cfg.ring
    p = cfg.p
    line = Configuration(cfg.n_vars, (comp if comp.kind == LINE else
                                      type(comp)(LINE, comp.forms),), (), p)
    lin = engine(line).ideal_basis(1)
    if comp.kind == LINE:
        return Ideal(ring, lin)
    if comp.kind != FLAT_FAT:
        raise ValueError("only lines and flat fat points have closed-form ideals here")
    P = comp.point((1, 0), p)
    Q = comp.point((0, 1), p)
    K = nullspace(np.array([P], dtype=np.int64), p)
    ell = next(row for row in K if int(np.dot(row, Q) % p))
    return Ideal(ring, lin + [_linear(ring, ell) ** comp.multiplicity])


def groebner_ideal(cfg: Configuration) -> Ideal:
    return intersect_all([component_ideal(cfg, i) for i in range(len(cfg.components))])


@dataclass
class AuditReport:
    checks: int = 0
    discrepancies: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def to_json(self) -> dict:
        return {"checks": self.checks, "discrepancies": self.discrepancies, "ok": self.ok}


def audit_lines(cfg: Configuration, t_max: int, m_max: int, L, report: AuditReport) -> None:
    eng = engine(cfg)
    I = groebner_ideal(cfg)
    for t in range(t_max + 1):
        a, b = eng.ideal_dimension(t), I.dim_ideal(t)
        report.checks += 1
        if a != b:
            report.discrepancies.append({"config": cfg.info(), "what": "I_C", "t": t,
                                         "restriction": a, "groebner": b})
    Lp = _linear(cfg.ring, L)
    for m in range(1, m_max + 1):
        Z, _ = saturate(I + Ideal(cfg.ring, [Lp ** m]))
        for t in range(t_max + 1):
            a, b = eng.section_dimension(L, m, t), Z.dim_ideal(t)
            report.checks += 1
            if a != b:
                report.discrepancies.append({"config": cfg.info(), "what": f"Z_{m}", "t": t,
                                             "restriction": a, "groebner": b})


def audit_points(cfg: Configuration, t_max: int, report: AuditReport) -> None:
    eng = engine(cfg)
    I = groebner_ideal(cfg)
    for t in range(t_max + 1):
        a, b = eng.ideal_dimension(t), I.dim_ideal(t)
        report.checks += 1
        if a != b:
            report.discrepancies.append({"config": cfg.info(), "what": "I_points", "t": t,
                                         "restriction": a, "groebner": b})


def cross_engine_audit(max_r: int = 6, max_t: int = 8, m_max: int = 3, seed=0,
                       flatfat=((4, 3),), p: int = DEFAULT_PRIME) -> AuditReport:
    """General skew lines with 1..max_r components, plus the listed (s, m) flat fat sets."""
    report = AuditReport()
    rng = np.random.default_rng(seed)
    for r in range(1, max_r + 1):
        cfg = general_skew_lines(r, seed=(int(seed), r), p=p)
        L = tuple(int(x) for x in rng.integers(1, cfg.p, size=4))
        audit_lines(cfg, max_t, m_max, L, report)
    for s, m in flatfat:
        cfg = flat_fat_points_plane(s, m, seed=(int(seed), s, m), p=p)
        audit_points(cfg, max_t, report)
    return report
