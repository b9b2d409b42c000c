"""Shared fixtures: the example groups and small standard groups."""

from __future__ import annotations

import functools

import pytest

from permutability import (
    GroupSpec,
    alternating,
    build_from_spec,
    cyclic,
    dihedral,
    direct_product,
    symmetric,
)


@functools.cache
def ex1_2_spec() -> GroupSpec:
    return GroupSpec(
        kind="semidirect",
        name="Ex1_2",
        kernel=GroupSpec(kind="direct", factors=(
            GroupSpec(kind="cyclic", n=3, label="x"),
            GroupSpec(kind="cyclic", n=3, label="y"))),
        actor=GroupSpec(kind="direct", factors=(
            GroupSpec(kind="cyclic", n=2, label="z"),
            GroupSpec(kind="cyclic", n=2, label="w"))),
        action={"z": {"x": "x^-1", "y": "x*y"},
                "w": {"x": "x^-1", "y": "y^-1"}},
        relations=("x^3", "y^3", "z^2", "w^2",
                   "x^-1*y^-1*x*y", "z^-1*w^-1*z*w",
                   "z^-1*x*z*x", "w^-1*y*w*y", "w^-1*x*w*x",
                   "z^-1*y*z*y^-1*x^-1"),
        subgroups={"H": "y,w"},
    )


@functools.cache
def ex1_5_spec() -> GroupSpec:
    return GroupSpec(
        kind="semidirect",
        name="Ex1_5",
        kernel=GroupSpec(kind="cyclic", n=5, label="x"),
        actor=GroupSpec(kind="cyclic", n=4, label="y"),
        action={"y": {"x": "x^2"}},
        relations=("x^5", "y^4", "y^-1*x*y*x^-2"),
        subgroups={"H": "y", "L": "y^2"},
    )


@functools.cache
def ex1_8_spec() -> GroupSpec:
    g1 = GroupSpec(kind="semidirect", name="Ex1_8_G1",
                   kernel=GroupSpec(kind="cyclic", n=3, label="x"),
                   actor=GroupSpec(kind="cyclic", n=2, label="z"),
                   action={"z": {"x": "x^-1"}})
    g2 = GroupSpec(kind="semidirect", name="Ex1_8_G2",
                   kernel=GroupSpec(kind="cyclic", n=5, label="y"),
                   actor=GroupSpec(kind="cyclic", n=2, label="w"),
                   action={"w": {"y": "y^-1"}})
    return GroupSpec(kind="direct", name="Ex1_8", factors=(g1, g2),
                     relations=("x^3", "y^5", "z^2", "w^2",
                                "x^-1*y^-1*x*y", "x^-1*w^-1*x*w",
                                "z^-1*y^-1*z*y", "z^-1*w^-1*z*w",
                                "z^-1*x*z*x", "w^-1*y*w*y"),
                     subgroups={"H": "z*w", "G1": "x,z", "G2": "y,w"})


@functools.cache
def c3_c4_spec() -> GroupSpec:
    # C3 : C4 with the order-4 generator inverting the kernel
    return GroupSpec(kind="semidirect", name="C3:C4",
                     kernel=GroupSpec(kind="cyclic", n=3, label="x"),
                     actor=GroupSpec(kind="cyclic", n=4, label="y"),
                     action={"y": {"x": "x^-1"}},
                     relations=("x^3", "y^4", "y^-1*x*y*x"))


@functools.cache
def group(name: str):
    builders = {
        "S3": lambda: symmetric(3),
        "S4": lambda: symmetric(4),
        "S5": lambda: symmetric(5),
        "A4": lambda: alternating(4),
        "A5": lambda: alternating(5),
        "D8": lambda: dihedral(4),
        "D10": lambda: dihedral(5),
        "D12": lambda: dihedral(6),
        "C12": lambda: cyclic(12),
        "Ex1_2": lambda: build_from_spec(ex1_2_spec()),
        "Ex1_5": lambda: build_from_spec(ex1_5_spec()),
        "Ex1_8": lambda: build_from_spec(ex1_8_spec()),
        "C3:C4": lambda: build_from_spec(c3_c4_spec()),
        "S3xD10": lambda: direct_product(symmetric(3), dihedral(5), name="S3xD10"),
    }
    return builders[name]()


@pytest.fixture
def s3():
    return group("S3")


@pytest.fixture
def s4():
    return group("S4")


@pytest.fixture
def a4():
    return group("A4")


@pytest.fixture
def a5():
    return group("A5")


@pytest.fixture
def d8():
    return group("D8")


@pytest.fixture
def ex1_2():
    return group("Ex1_2")


@pytest.fixture
def ex1_5():
    return group("Ex1_5")


@pytest.fixture
def ex1_8():
    return group("Ex1_8")
