import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

import lwpot.spectrum
from lwpot.cli import main
from lwpot.closedform import chg_parameters
from lwpot.potential import FIGURE1, PotentialKind, asymptote_origin, eval_potential
from lwpot.specfun import kummer_m


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_potential_csv_matches_library(capsys):
    code, out, _ = run(["potential", "--preset", "figure1", "--grid", "50"], capsys)
    assert code == 0
    r = rows(out)
    assert list(r[0]) == ["x", "z", "V", "asymptote_origin", "asymptote_tail"]
    xs = np.array([float(x["x"]) for x in r])
    V = np.array([float(x["V"]) for x in r])
    assert np.array_equal(V, eval_potential(PotentialKind.SINGULAR, xs, FIGURE1))


def test_potential_origin_ratio(capsys):
    code, out, _ = run(["potential", "--xmin", "0.01", "--xmax", "1", "--grid", "2"], capsys)
    first = rows(out)[0]
    assert float(first["x"]) == 0.01
    assert 0.8 <= float(first["V"]) / float(first["asymptote_origin"]) <= 1.2
    assert float(first["asymptote_origin"]) == asymptote_origin(FIGURE1, 0.01)


def test_full_precision_and_lf(capsys, tmp_path):
    out_file = tmp_path / "v.csv"
    assert main(["potential", "--grid", "7", "--out", str(out_file)]) == 0
    raw = out_file.read_bytes()
    assert b"\r" not in raw
    for row in rows(raw.decode()):
        for v in row.values():
            assert repr(float(v)) == v  # shortest round-trip repr


def test_deterministic_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        assert main(["figure2", "--grid", "40", "--format", "json", "--out", str(f)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_version_header_is_opt_in(capsys):
    _, plain, _ = run(["bounds", "--format", "csv"], capsys)
    _, headed, _ = run(["bounds", "--format", "csv", "--version-header"], capsys)
    assert not plain.startswith("#") and headed.startswith("# lwpot ")


def test_usage_errors_exit_2(capsys):
    assert run(["potential", "--grid", "0"], capsys)[0] == 2
    assert run(["potential", "--xmin", "2", "--xmax", "1"], capsys)[0] == 2
    assert run(["potential", "--xmin", "-1"], capsys)[0] == 2
    code, _, err = run(["spectrum", "--V0", "-1"], capsys)
    assert code == 2 and "V0" in err
    assert run(["wavefunction", "--C1", "0", "--C2", "0"], capsys)[0] == 2
    assert run(["wavefunction", "--E", "-1", "--state", "0"], capsys)[0] == 2
    assert run(["figure2", "--emin", "-1", "--emax", "0.5"], capsys)[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["potential", "--format", "xml"])
    assert e.value.code == 2


def test_spectrum_reports_three_roots(capsys):
    code, out, err = run(["spectrum", "--preset", "figure2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["exact_n"] == 3 and len(data["energies"]) == 3
    assert "bound states: 3" in err


def test_spectrum_curve_sign_changes_at_roots(capsys):
    code, out, _ = run(["spectrum", "--curve", "--grid", "3000", "--quiet"], capsys)
    data = json.loads(out)
    E = np.array(data["curve"]["E"])
    N = np.array(data["curve"]["N"])
    flips = np.flatnonzero(np.sign(N[1:]) != np.sign(N[:-1]))
    assert len(flips) == len(data["energies"])
    for i, root in zip(flips, sorted(data["energies"])):
        assert E[i] <= root <= E[i + 1]


def test_spectrum_csv(capsys):
    code, out, _ = run(["spectrum", "--format", "csv", "--quiet"], capsys)
    r = rows(out)
    assert [int(x["nodes"]) for x in r] == [0, 1, 2]


@pytest.mark.parametrize("state", [0, 1, 2])
def test_wavefunction_at_eigenvalues(capsys, state):
    code, out, _ = run(["wavefunction", "--state", str(state)], capsys)
    assert code == 0
    r = rows(out)
    assert list(r[0]) == ["x", "z", "psi", "dpsi", "residual", "nodes"]
    assert max(float(x["residual"]) for x in r) <= 1e-6
    assert int(r[-1]["nodes"]) == state


def test_wavefunction_zero_energy_and_signs(capsys):
    assert run(["wavefunction", "--E", "0", "--grid", "20"], capsys)[0] == 0
    code, out, _ = run(["wavefunction", "--E", "-0.7", "--signs=+-", "--grid", "20", "--format", "json"], capsys)
    assert code == 0 and len(json.loads(out)["psi"]) == 20
    # the U term needs s0 > 0
    assert run(["wavefunction", "--E", "-0.7", "--signs=+-", "--C2", "1"], capsys)[0] == 2


def test_bounds(capsys):
    code, out, _ = run(["bounds"], capsys)
    d = json.loads(out)
    assert d["bargmann"] == 27.0 and f"{d['calogero']:.3f}" == "7.348" and f"{d['chadan']:.3f}" == "3.674"


def test_figure2_curve(capsys):
    code, out, _ = run(["figure2", "--emin", "-3", "--emax", "-0.01", "--grid", "100"], capsys)
    r = rows(out)
    assert len(r) == 100 and list(r[0]) == ["E", "F"]


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"preset": "figure2", "grid": 5, "format": "json"}))
    code, out, _ = run(["potential", "--config", str(cfg)], capsys)
    assert len(json.loads(out)["x"]) == 5
    code, out, _ = run(["potential", "--config", str(cfg), "--grid", "3", "--format", "csv"], capsys)
    assert len(rows(out)) == 3
    cfg.write_text(json.dumps({"colour": "blue"}))
    assert run(["potential", "--config", str(cfg)], capsys)[0] == 2


def test_verify_single_suite(capsys):
    code, out, _ = run(["verify", "--suite", "specfun"], capsys)
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def flipped_spectrum_parts(E, p):
    """Spectrum condition with the sign of the second term flipped."""
    t = chg_parameters(E, p)
    D = float(kummer_m(t.a, t.c, t.s0))
    N = D - (t.s0 - t.c) / (2.0 * t.c) * float(kummer_m(t.a + 1.0, t.c + 1.0, t.s0))
    return N, D


def test_verify_catches_sign_flip(capsys, monkeypatch):
    monkeypatch.setattr(lwpot.spectrum, "spectrum_parts", flipped_spectrum_parts)
    code, out, _ = run(["verify", "--suite", "spectrum"], capsys)
    assert code == 4
    assert "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lwpot", "bounds", "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("name,value\n")
