from __future__ import annotations

import os
import shutil
import subprocess

from . import __version__

cmd_env = {
    "PATH": os.environ.get("PATH", ""),
    "HOME": os.environ.get("HOME", ""),
    "LANG": "C",
    "LC_ALL": "C",
}


def git(*args: str) -> str | None:
    try:
        output = subprocess.check_output(
            ["git", *args], stderr=subprocess.DEVNULL, env=cmd_env
        )
    except (subprocess.SubprocessError, OSError):
        return None
    return output.strip().decode("ascii")


if os.path.exists(".git") and shutil.which("git"):
    git_revision = git("rev-parse", "HEAD") or "unknown"
    git_revision = git_revision[:8]
    git_tag = git("describe", "--exact-match", "--tags")
else:
    git_revision = "unknown"
    git_tag = None

if git_tag and __version__ == git_tag[1:].replace("-", ""):
    version = __version__
else:
    if not __version__.endswith("+dev"):
        __version__ += "+dev"
    version = f"{__version__}.{git_revision}"
