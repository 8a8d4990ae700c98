import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
PROGRAMS = ROOT / "programs"
DATA = Path(__file__).resolve().parent / "data"


def program_path(name: str) -> Path:
    return PROGRAMS / name


def program_source(name: str) -> str:
    return (PROGRAMS / name).read_text()


def run_cli(*args: str, stdin: str | None = None,
            cwd: Path = ROOT) -> subprocess.CompletedProcess[str]:
    return subprocess.run(
        [sys.executable, "-m", "javai", *args],
        capture_output=True, text=True, input=stdin,
        cwd=cwd, timeout=60,
    )
