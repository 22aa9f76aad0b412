import json

import pytest

from gupbound import cli, verify

INFO_CHECKS = {"kinetic_expectation_printed_value", "coulomb_expansion_sign", "delta_phi_prefactor"}


@pytest.fixture(scope="module")
def report():
    return verify.run_suite(400)


@pytest.fixture(scope="module")
def coarse():
    return verify.run_suite(50)


def test_report_schema(report):
    data = json.loads(json.dumps(report.to_dict()))
    assert data["schema_version"] == "1"
    assert set(data["counts"]) == {"pass", "fail", "warn", "info"}
    for c in data["checks"]:
        assert set(c) >= {"name", "status", "measured", "threshold", "criterion", "detail"}
        assert c["status"] in {"pass", "fail", "warn", "info"}
    names = [c["name"] for c in data["checks"]]
    assert len(names) == len(set(names))


def test_informational_entries_never_fail(report):
    info = {c.name: c for c in report.checks if c.status == "info"}
    assert set(info) == INFO_CHECKS
    assert info["kinetic_expectation_printed_value"].measured["ratio_mu1"] == pytest.approx(0.5)
    rows = info["coulomb_expansion_sign"].measured
    assert rows[0]["e_minus_printed_expansion"] == pytest.approx(-0.49)
    assert rows[0]["e_minus_exact"] == pytest.approx(-0.51026, abs=1e-5)
    assert info["delta_phi_prefactor"].measured["printed_over_residue"] > 1


def test_every_criterion_is_covered(report):
    covered = {c.criterion for c in report.checks if c.criterion}
    assert covered == {str(i) for i in range(1, 10)}


def test_known_outcomes(report):
    status = {c.name: c.status for c in report.checks}
    expected_fail = {"delta_asymptotic_order", "coulomb_nystrom", "coulomb_veff_long_range", "coulomb_veff_sandwich"}
    assert {n for n, s in status.items() if s == "fail"} == expected_fail
    assert not report.passed


def test_coarse_grid_downgrades_nystrom_checks(coarse):
    status = {c.name: c.status for c in coarse.checks}
    assert status["delta_nystrom"] == "warn"
    assert status["coulomb_nystrom"] == "warn"


def test_failing_check_is_contained(monkeypatch):
    def broken():
        raise RuntimeError("boom")

    monkeypatch.setattr(verify, "all_checks", lambda grid_size: [broken])
    rep = verify.run_suite()
    assert rep.checks[0].status == "fail" and "boom" in rep.checks[0].detail


def test_cli_verify_exit_code_and_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = cli.main(["verify", "--format", "json", "--out", str(out)])
    data = json.loads(out.read_text())
    assert code == (0 if data["passed"] else 3)
    assert code == 3
    csv_out = tmp_path / "report.csv"
    cli.main(["verify", "--out", str(csv_out)])
    assert csv_out.read_text().startswith("name,status,criterion,measured,threshold")
