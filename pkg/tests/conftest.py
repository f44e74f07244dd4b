import time
from dataclasses import dataclass

import pytest

from cayley_spectra import corpus

CRITERIA: dict[int, tuple[str, str]] = {}


def record(number: int, ok: bool, detail: str, status: str | None = None):
    CRITERIA[number] = (status or ("PASS" if ok else "FAIL"), detail)


@dataclass
class CorpusRun:
    instances: list
    results: list
    seconds: float

    def checks(self, name):
        for res in self.results:
            for c in res["checks"]:
                if c["check"] == name:
                    yield res, c


@pytest.fixture(scope="session")
def corpus_run():
    instances = corpus.default_corpus(seed=0)
    start = time.perf_counter()
    results = corpus.run_corpus(instances)
    return CorpusRun(instances, results, time.perf_counter() - start)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        status, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {detail}")
