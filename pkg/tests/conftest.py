import os
import shutil
import pytest
from CogSystem.bench import load_benchmark
from CogSystem.llms import ReplayLLM, Transcript, TranscriptEntry

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
MINI = os.path.join(ROOT, "data", "mini")


@pytest.fixture(autouse=True)
def repo_root(monkeypatch):
    """Config files hold repository-relative paths."""
    monkeypatch.chdir(ROOT)
    return ROOT


@pytest.fixture(scope="session")
def mini_bench():
    return load_benchmark(MINI)


@pytest.fixture
def mini_copy(tmp_path):
    """A writable copy of the mini benchmark."""
    target = tmp_path / "mini"
    shutil.copytree(MINI, target)
    return target


@pytest.fixture
def scripted():
    """Factory of replay providers answering with the given replies in order."""

    def make(*replies: str, dim: int = 16, seed: int = 0) -> ReplayLLM:
        transcript = Transcript(entries=[TranscriptEntry(response=reply) for reply in replies])
        return ReplayLLM(transcript, embedding_dim=dim, seed=seed)

    return make
