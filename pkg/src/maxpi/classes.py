"""Target graph classes: membership, clique bound, separator test, obstruction finder."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .graph import Graph, is_connected, popcount
from .recognition import (
    find_forbidden_chordal,
    find_forbidden_interval,
    find_induced_copy,
    is_chordal,
    is_interval,
    separator_test_chordal,
    separator_test_interval,
)

Membership = Callable[[Graph, Optional[int]], bool]
SeparatorTest = Callable[[Graph, int, Optional[int]], bool]
ForbiddenFinder = Callable[[Graph, int, Optional[int]], Optional[int]]


@dataclass(frozen=True)
class PiClass:
    """A hereditary subclass of chordal graphs.

    ``aleph`` bounds the clique number of every minimal obstruction minus one;
    ``separator_test(G, S)`` must accept both sides of a balanced clique
    separation of every member and compose under gluing along ``S``.
    """

    name: str
    membership: Membership
    aleph: int
    separator_test: SeparatorTest
    forbidden_finder: ForbiddenFinder
    overlay_family: tuple[Graph, ...] = ()
    base: Optional["PiClass"] = field(default=None, compare=False)

    def contains(self, G: Graph, W: Optional[int] = None) -> bool:
        return self.membership(G, W)

    def find_forbidden(self, G: Graph, ell: int, W: Optional[int] = None) -> Optional[int]:
        return self.forbidden_finder(G, ell, W)

    @property
    def root(self) -> "PiClass":
        return self if self.base is None else self.base.root

    @property
    def overlay_bound(self) -> int:
        return max((F.n for F in self.overlay_family), default=0)


def make_chordal_class() -> PiClass:
    return PiClass("chordal", is_chordal, 2, separator_test_chordal, find_forbidden_chordal)


def make_interval_class() -> PiClass:
    return PiClass("interval", is_interval, 4, separator_test_interval, find_forbidden_interval)


def overlay_finite_family(base: PiClass, family: Sequence[Graph]) -> PiClass:
    """``base`` restricted to graphs with no induced copy of any member of ``family``."""
    family = tuple(family)
    if not family:
        return base
    for F in family:
        if F.n < 1:
            raise ValueError("overlay family members need at least one vertex")
        if not is_connected(F):
            warnings.warn(
                "disconnected overlay member: the solver's component-splitting "
                "branch is only justified for connected obstructions",
                stacklevel=2,
            )
    ordered = tuple(sorted(family, key=lambda F: F.n))

    def membership(G: Graph, W: Optional[int] = None) -> bool:
        if not base.membership(G, W):
            return False
        return all(find_induced_copy(G, F, W) is None for F in ordered)

    def finder(G: Graph, ell: int, W: Optional[int] = None) -> Optional[int]:
        # base obstructions are holes or larger; overlay members may be smaller
        found = base.forbidden_finder(G, ell, W) if ell >= 4 else None
        for F in ordered:
            if F.n > ell or (found is not None and F.n >= popcount(found)):
                break
            copy = find_induced_copy(G, F, W)
            if copy is not None:
                return copy
        return found

    return PiClass(
        f"{base.name}+F",
        membership,
        base.aleph,
        base.separator_test,
        finder,
        base.overlay_family + family,
        base,
    )


def class_by_name(name: str, family: Sequence[Graph] = ()) -> PiClass:
    """Resolve ``chordal``, ``interval``, ``chordal+F`` or ``interval+F``."""
    base_name, plus, rest = name.partition("+")
    if base_name == "chordal":
        base = make_chordal_class()
    elif base_name == "interval":
        base = make_interval_class()
    else:
        raise ValueError(f"unknown class {name!r}")
    if plus:
        if rest != "F":
            raise ValueError(f"unknown class {name!r}")
        if not family:
            raise ValueError(f"class {name!r} needs at least one overlay graph")
        return overlay_finite_family(base, family)
    if family:
        raise ValueError(f"class {name!r} takes no overlay; use {name}+F")
    return base
