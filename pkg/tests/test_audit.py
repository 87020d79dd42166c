from raolab import configs as cf
from raolab.audit import AuditReport, audit_lines, component_ideal, cross_engine_audit


def test_three_skew_lines_all_t_and_m():
    report = AuditReport()
    audit_lines(cf.general_skew_lines(3, 4), 8, 3, (3, 5, 7, 11), report)
    assert report.checks == 9 + 3 * 9 and report.ok


def test_empty_audit():
    rep = cross_engine_audit(max_r=0, flatfat=())
    assert rep.checks == 0 and rep.ok


def test_flat_fat_component_ideal():
    cfg = cf.flat_fat_points_plane(1, 3, 0)
    I = component_ideal(cfg, 0)
    assert I.degree() == 3 and I.krull_dim() == 1


def test_full_audit():
    rep = cross_engine_audit(max_r=6, max_t=8, m_max=3, seed=0, flatfat=((4, 3),))
    assert rep.checks > 200
    assert rep.ok, rep.discrepancies
