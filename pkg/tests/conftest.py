import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def run_cli(capsys):
    """Run the command line in-process; returns (exit code, stdout, stderr)."""
    from pentatile.cli import cli_main

    def _run(*argv):
        code = cli_main([str(a) for a in argv])
        out = capsys.readouterr()
        return code, out.out, out.err

    return _run
