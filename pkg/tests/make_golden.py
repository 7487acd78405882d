"""Regenerate tests/golden/ from the commands in GOLDEN (run after an intended output change)."""

import contextlib
import io
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, HERE)

from lcworkbench.cli import main  # noqa: E402
from test_cli import GOLDEN  # noqa: E402


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


if __name__ == "__main__":
    os.chdir(HERE)
    for name, (argv, code) in GOLDEN.items():
        got, text = run(argv)
        assert got == code, (name, got)
        with open(os.path.join(HERE, "golden", name + ".json"), "w") as fh:
            fh.write(text)
        print(name, got)
