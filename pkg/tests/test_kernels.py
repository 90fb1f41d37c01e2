import subprocess
import sys
from pathlib import Path

from hyperfield import _kernels

SRC = str(Path(__file__).parent.parent / "src")

PROBE = (
    "from hyperfield._kernels import BACKEND, ddf_degrees, irreducible_mod_p;"
    "print(BACKEND, ddf_degrees([1,1,0,1], 2), irreducible_mod_p([1,0,1], 3))"
)


def _probe(env_extra):
    env = {"PYTHONPATH": SRC, "PATH": "/usr/bin:/bin", **env_extra}
    proc = subprocess.run([sys.executable, "-c", PROBE], capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout.strip()


def test_default_backend_prefers_compiled():
    out = _probe({})
    backend = out.split()[0]
    assert backend == _kernels.BACKEND
    assert out.endswith("[3] True")


def test_pure_fallback_selected_by_env():
    out = _probe({"HYPERFIELD_PURE": "1"})
    assert out == "pure [3] True"


def test_backends_give_same_answers_everywhere():
    # the main parity sweep lives in test_factor; this is the quick seam check
    assert _kernels.ddf_degrees([1, 0, 1], 5) == [1, 1]
    assert _kernels.roots_mod_p([1, 0, 1], 5) == [2, 3]
