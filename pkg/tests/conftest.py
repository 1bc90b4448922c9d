import json
import time

import pytest

from splitjac.pipeline import SearchConfig, search


class SearchCache:
    """Runs each search configuration once per session and keeps the documents."""

    def __init__(self, root):
        self.root = root
        self._runs = {}

    def run(self, **kw):
        key = tuple(sorted(kw.items()))
        if key not in self._runs:
            cfg = SearchConfig(**kw)
            t0 = time.perf_counter()
            run = search(cfg)
            docs = list(run)
            elapsed = time.perf_counter() - t0
            paths = []
            for i, doc in enumerate(docs, start=1):
                path = self.root / f"p{cfg.p}_l{cfg.ell}_{len(self._runs)}_{i:04d}.json"
                path.write_text(json.dumps(doc, indent=2, sort_keys=True))
                paths.append(path)
            self._runs[key] = (docs, run.report, elapsed, paths)
        return self._runs[key]


@pytest.fixture(scope="session")
def searches(tmp_path_factory):
    return SearchCache(tmp_path_factory.mktemp("certificates"))


@pytest.fixture(scope="session")
def cert_7_3(searches):
    docs, *_ = searches.run(p=7, ell=3, max_base_degree=1, max_certificates=2)
    return docs[0]


@pytest.fixture(scope="session")
def cert_7_5(searches):
    docs, *_ = searches.run(p=7, ell=5, max_base_degree=2, min_base_degree=2, max_certificates=1)
    return docs[0]
