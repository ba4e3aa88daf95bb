import random
import sys
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import settings

from iosub.cli import parse_file
from iosub.automata import accepts_epsilon
from iosub.derivation import Leaf, Subst

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

CORPUS_DIR = Path(str(resources.files("iosub") / "corpus"))
CORPUS = {p.stem: parse_file(p.read_text()).main for p in sorted(CORPUS_DIR.glob("*.iod"))}


def corpus_params():
    return [pytest.param(d, id=name) for name, d in CORPUS.items()]


@pytest.fixture
def corpus():
    return dict(CORPUS)


def random_derivation(rng: random.Random, steps=None):
    """Standard-shaped derivation over terminals a, b with binders x, y.

    Leaves are drawn from small fragments so every binder tends to be
    relevant and right operands avoid the empty word in half the cases.
    """
    steps = rng.randint(1, 2) if steps is None else steps
    binders = ["x", "y"][:steps]
    d = Leaf.parse(_leaf_text(rng, "ab" + "".join(binders)))
    for i, x in enumerate(binders):
        later = "".join(binders[i + 1:])
        right = _leaf_text(rng, "ab" + later, allow_eps=rng.random() < 0.5)
        d = Subst(d, x, Leaf.parse(right))
    return d


_FRAGMENTS = ["{s}", "{s} {t}", "{s}*", "{s} {s}*", "({s} | {t})", "{s} {t}*", "({s} {t})*", "{s} {s}"]


def _leaf_text(rng, alphabet, allow_eps=True):
    while True:
        parts = []
        for _ in range(rng.randint(1, 3)):
            frag = rng.choice(_FRAGMENTS)
            parts.append(frag.format(s=rng.choice(alphabet), t=rng.choice(alphabet)))
        text = " ".join(parts)
        if allow_eps or not accepts_epsilon(Leaf.parse(text).nfa):
            return text


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
