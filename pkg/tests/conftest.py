from __future__ import annotations

import random
from pathlib import Path

import pytest

from codegrees import build
from codegrees.dsl import parse_catalog
from codegrees.perm import PermGroup, Permutation

ROOT = Path(__file__).resolve().parent.parent
CATALOG = ROOT / "catalog" / "default.txt"

# Hand-picked small groups: abelian, dihedral, metacyclic, Frobenius, linear.
SMALL_SPECS = [
    "cyclic(2)", "cyclic(6)", "cyclic(8)", "elemab(2,3)", "elemab(3,2)", "dirprod(cyclic(4),cyclic(2))",
    "dihedral(6)", "dihedral(10)", "dihedral(12)", "dihedral(16)", "symmetric(3)", "symmetric(4)",
    "metacyclic(7,3,2)", "metacyclic(5,4,2)", "metacyclic(13,3,3)", "metacyclic(9,6,2)",
    "frobsinger(2,3,1)", "frobsinger(3,7,1)", "frobsinger(5,11,1)", "frobsinger(7,2,1)", "frobsinger(8,3,1)",
    "frobsinger(3,2,2)", "dirprod(symmetric(3),cyclic(5))", "dirprod(cyclic(3),dihedral(8))",
    "matgroup(3,2,[[[1,1],[1,2]],[[0,2],[1,0]]])",            # Q8
    "named(\"Q8rtimesC3\")", "perms(\"(0 1 2)\",\"(1 2 3)\")",  # SL2(3), A4
    "dirprod(metacyclic(7,3,2),cyclic(3))",
]


def random_groups(count: int = 20, seed: int = 7, max_order: int = 200) -> list[PermGroup]:
    """Pairwise distinct groups generated by two random permutations of small degree."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(4, 8)
        gens = []
        for _ in range(2):
            images = list(range(n))
            rng.shuffle(images)
            gens.append(Permutation(images))
        G = PermGroup(gens, n)
        order = G.order()
        if 2 <= order <= max_order and not any(H.degree == n and H.same_as(G) for H in out):
            out.append(G)
    return out


@pytest.fixture(scope="session")
def catalog_entries():
    return parse_catalog(CATALOG.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def catalog_groups(catalog_entries):
    return [(e.text, build(e.spec)) for e in catalog_entries]


@pytest.fixture(scope="session")
def small_groups():
    """At least 20 groups of order at most 200, built once per session."""
    named = [(s, build(s).group) for s in SMALL_SPECS]
    rand = [(f"random#{i}:{G.order()}", G) for i, G in enumerate(random_groups())]
    groups = named + rand
    assert len(rand) >= 20 and all(G.order() <= 200 for _, G in groups)
    return groups


@pytest.fixture(scope="session")
def all_groups(catalog_groups, small_groups):
    return [(t, b.group) for t, b in catalog_groups] + small_groups
