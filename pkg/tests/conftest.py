"""Shared fixtures and random-graph generators."""

from __future__ import annotations

import random
import string
from importlib import resources

import pytest

from likelic import ContextGraph, Likeliness
from likelic.dsl import Document, parse_context, parse_document
from likelic.graph import EdgeKind

STRUCTURAL = (EdgeKind.IS0, EdgeKind.SUBJ1, EdgeKind.OBJ2)


def fixture_text(name: str) -> str:
    return (resources.files("likelic") / "fixtures" / name).read_text(
        encoding="utf-8"
    )


def fixture_path(name: str) -> str:
    return str(resources.files("likelic") / "fixtures" / name)


@pytest.fixture(scope="session")
def snowbird() -> ContextGraph:
    return parse_context(fixture_text("snowbird.ctx"))


@pytest.fixture(scope="session")
def mortality() -> Document:
    return parse_document(fixture_text("mortality.ctx"))


def by_label(g: ContextGraph, valuation) -> dict[str, int]:
    return {g.label(v): int(grade) for v, grade in valuation.items()}


def random_context(
    rng: random.Random,
    max_vertices: int = 8,
    edge_prob: float = 0.3,
    structural_prob: float = 0.0,
    fact_prob: float = 0.0,
    random_labels: bool = False,
) -> ContextGraph:
    """A random graph; single-letter labels unless random_labels is set."""
    n = rng.randint(1, max_vertices)
    if random_labels:
        labels: set[str] = set()
        while len(labels) < n:
            labels.add(
                "".join(
                    rng.choices(string.ascii_lowercase, k=rng.randint(1, 8))
                )
            )
        label_list = sorted(labels)
        rng.shuffle(label_list)
    else:
        label_list = [string.ascii_lowercase[i] for i in range(n)]
    impl = {}
    structural = set()
    for s in range(n):
        for d in range(n):
            if s == d:
                continue
            if rng.random() < edge_prob:
                impl[(s, d)] = Likeliness(rng.randint(0, 6))
            if rng.random() < structural_prob:
                structural.add((s, d, rng.choice(STRUCTURAL)))
    facts = {
        v: Likeliness(rng.randint(0, 6))
        for v in range(n)
        if rng.random() < fact_prob
    }
    return ContextGraph(tuple(label_list), impl, frozenset(structural), facts)
