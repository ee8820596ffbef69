import io
import json
import subprocess
import sys

import pytest

from resint.cli import JobError, main, parse_job

LINK = """# link of a 2x3 minor ideal
field Q
ring x,y,z
ideal I = x*z - y^2, x^2 - y*z, x*y - z^2
ideal a = x*z - y^2, x^2 - y*z
command residual
"""

NONRES = """field Fp 32003
ring x,y,z,w
ideal I = x, y, z
ideal a = x*w, y*w
"""


def run(tmp_path, text, *args):
    job = tmp_path / "job.txt"
    job.write_text(text)
    buf = io.StringIO()
    code = main([args[0], str(job), *args[1:]], out=buf)
    return code, buf.getvalue()


def test_parse_job_directives():
    job = parse_job(LINK + "budget 8\n")
    assert job.field.p == 0 and job.variables == ("x", "y", "z")
    assert job.ideals["a"] == ["x*z - y^2", "x^2 - y*z"]
    assert job.command == "residual" and job.budget == 8


@pytest.mark.parametrize(
    "text",
    [
        "field Q\nfield Q\nring x\n",
        "ring x\nideal I = x\nideal I = x\n",
        "ring x\nfrobnicate\n",
        "field Fp 12\nring x\n",
        "ideal I = x\n",
        "ring x\ncommand dance\n",
    ],
)
def test_bad_jobs(text):
    with pytest.raises(JobError):
        parse_job(text)


def test_residual_report(tmp_path):
    code, out = run(tmp_path, LINK, "run")
    rep = json.loads(out)
    assert code == 0
    assert rep["s"] == 2 and rep["g"] == 2 and rep["sigma_a"] == 4
    assert rep["reg_bound"] == rep["reg_actual"] == 0 and rep["tight"]
    assert rep["canonical_match"] is True


def test_quotient_and_betti(tmp_path):
    code, out = run(tmp_path, LINK, "quotient")
    assert code == 0 and "J" in json.loads(out)
    code, out = run(tmp_path, LINK, "betti")
    assert code == 0 and json.loads(out)


def test_output_is_deterministic(tmp_path):
    first = run(tmp_path, LINK, "en")
    second = run(tmp_path, LINK, "en")
    assert first == second and first[0] == 0


def test_exit_code_parse(tmp_path):
    code, out = run(tmp_path, LINK.replace("x*z - y^2, x^2", "xz - y^2, x^2"), "residual")
    assert code == 1 and json.loads(out)["error"] == "parse"


def test_exit_code_hypothesis(tmp_path):
    code, out = run(tmp_path, NONRES, "en")
    rep = json.loads(out)
    assert code == 2 and rep["error"] == "hypothesis" and rep["failed_test"] == "height"


def test_exit_code_budget(tmp_path):
    code, out = run(tmp_path, LINK, "residual", "--max-steps", "5")
    assert code == 3 and json.loads(out)["error"] == "budget"


def test_missing_job_file(tmp_path):
    buf = io.StringIO()
    assert main(["residual", str(tmp_path / "nope.job")], out=buf) == 1


def test_beta_table_text():
    buf = io.StringIO()
    assert main(["beta-table", "--m", "3", "--t", "4"], out=buf) == 0
    lines = buf.getvalue().strip().splitlines()
    assert len(lines) >= 3
    assert lines[-1].split()[-2:] == ["6", "36"]


def test_json_file_output(tmp_path):
    target = tmp_path / "out.json"
    code, _ = run(tmp_path, LINK, "residual", "--json", str(target))
    assert code == 0 and json.loads(target.read_text())["s"] == 2


def test_console_script_module_entry(tmp_path):
    job = tmp_path / "j.job"
    job.write_text(LINK)
    proc = subprocess.run([sys.executable, "-m", "resint.cli", "check-conditions", str(job)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)
