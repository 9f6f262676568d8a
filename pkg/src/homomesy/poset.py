"""Finite posets: the rectangle [a] x [b] plus general cover-list posets.

The rectangle carries the full rank/file/fiber structure that the toggling
dynamics rely on.  General posets support cover lists and (when graded)
ranks; file- and fiber-based operations refuse them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class PosetError(ValueError):
    """Invalid poset construction, unknown element, or unsupported selector."""


class BoundaryMark:
    """Virtual bottom/top element of the augmented poset P-hat.

    Boundary marks are never members of the element set; they only appear
    in neighbor queries and as the implicit endpoints of boundary values
    on labeled arrays.
    """

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


BOTTOM = BoundaryMark("0hat")
TOP = BoundaryMark("1hat")

RANKS = "ranks"
FILES = "files"
NEGATIVE_FIBERS = "negative-fibers"
POSITIVE_FIBERS = "positive-fibers"


@dataclass(frozen=True)
class ElementClassSet:
    """An ordered partition of the poset elements (ranks, files, or fibers)."""

    selector: str
    classes: tuple[tuple, ...]

    def __iter__(self):
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, k):
        return self.classes[k]


class Poset:
    """Immutable finite poset given by its cover relation.

    Rectangle elements are the pairs (i, j) with 1 <= i <= a, 1 <= j <= b,
    ordered componentwise, so (i, j) is covered by (i+1, j) and (i, j+1).
    The canonical element order lists (i, j) with j varying slowest:
    (1,1), (2,1), ..., (a,1), (1,2), ...  For [2]x[2] this is the sequence
    w, x, y, z = (1,1), (2,1), (1,2), (2,2).  Bitmask encodings, array
    values, and JSON all use this order.

    Instances are immutable after construction and safe to share across
    threads; equality and hashing are by identity.
    """

    def __init__(self, elements, covers, kind="general", a=None, b=None):
        self.kind = kind
        self.a = a
        self.b = b
        self.elements = tuple(elements)
        covers = list(covers)
        if len(set(self.elements)) != len(self.elements):
            raise PosetError("duplicate elements")
        self.index = {x: k for k, x in enumerate(self.elements)}
        for x, y in covers:
            if x not in self.index or y not in self.index:
                raise PosetError(f"cover ({x!r}, {y!r}) uses an unknown element")
            if x == y:
                raise PosetError(f"self-cover at {x!r}")
        down = {x: [] for x in self.elements}
        up = {x: [] for x in self.elements}
        for x, y in covers:  # x covered by y
            up[x].append(y)
            down[y].append(x)
        key = self.index.__getitem__
        self.up = {x: tuple(sorted(ys, key=key)) for x, ys in up.items()}
        self.down = {x: tuple(sorted(ys, key=key)) for x, ys in down.items()}
        self.minimals = tuple(x for x in self.elements if not self.down[x])
        self.maximals = tuple(x for x in self.elements if not self.up[x])
        self._build_closure()
        self._check_transitively_reduced()
        self._rank = self._grade()
        self.num_ranks = (
            None if self._rank is None else 1 + max(self._rank.values(), default=-1)
        )
        self.linear_extension = self._linear_extension()

    # -- construction helpers -------------------------------------------------

    def _build_closure(self):
        # below_mask[x] includes x itself; iterate in a topological order.
        order = _toposort(self.elements, self.down, self.up)
        below = {}
        for x in order:
            m = 1 << self.index[x]
            for y in self.down[x]:
                m |= below[y]
            below[x] = m
        above = {}
        for x in reversed(order):
            m = 1 << self.index[x]
            for y in self.up[x]:
                m |= above[y]
            above[x] = m
        self.below_mask = below
        self.above_mask = above
        self.down_bits = {
            x: sum(1 << self.index[y] for y in self.down[x]) for x in self.elements
        }
        self.up_bits = {
            x: sum(1 << self.index[y] for y in self.up[x]) for x in self.elements
        }

    def _check_transitively_reduced(self):
        for x in self.elements:
            for y in self.up[x]:
                # a cover x <. y must not be implied by a longer chain
                for z in self.up[x]:
                    if z is not y and self.leq(z, y):
                        raise PosetError(
                            f"cover ({x!r}, {y!r}) is not transitively reduced"
                        )

    def _grade(self):
        # longest-chain height; kept only if every cover raises it by one
        order = _toposort(self.elements, self.down, self.up)
        height = {}
        for x in order:
            height[x] = max((height[y] + 1 for y in self.down[x]), default=0)
        for x in self.elements:
            for y in self.up[x]:
                if height[y] != height[x] + 1:
                    return None
        return height

    def _linear_extension(self):
        # prefer the element order itself when it already extends the order
        pos = self.index
        if all(pos[x] < pos[y] for x, y in self.cover_pairs()):
            return self.elements
        return tuple(_toposort(self.elements, self.down, self.up))

    # -- basic queries ---------------------------------------------------------

    @property
    def is_rect(self) -> bool:
        return self.kind == "rect"

    @property
    def n(self) -> int:
        """The symbol n = a + b of the rectangle."""
        self._require_rect()
        return self.a + self.b

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __repr__(self) -> str:
        if self.is_rect:
            return f"Poset(rect {self.a}x{self.b})"
        return f"Poset(general, {len(self.elements)} elements)"

    def _require_rect(self):
        if not self.is_rect:
            raise PosetError("operation requires a rectangle poset")

    def _require_element(self, x):
        if x not in self.index:
            raise PosetError(f"unknown element {x!r}")

    def leq(self, x, y) -> bool:
        self._require_element(x)
        self._require_element(y)
        return bool(self.above_mask[x] & (1 << self.index[y]))

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def rank(self, x) -> int:
        self._require_element(x)
        if self._rank is None:
            raise PosetError("poset is not graded")
        return self._rank[x]

    def file(self, x) -> int:
        """File index j - i + a, running 1 .. n-1 left to right."""
        self._require_rect()
        self._require_element(x)
        i, j = x
        return j - i + self.a

    def opposite(self, x):
        """The element (a+1-i, b+1-j); an involution on rectangle elements."""
        self._require_rect()
        self._require_element(x)
        i, j = x
        return (self.a + 1 - i, self.b + 1 - j)

    def neighbors(self, x, direction: str, boundary: bool = False) -> set:
        """Covers of x going up or down, optionally with 0hat/1hat marks."""
        self._require_element(x)
        if direction == "up":
            out = set(self.up[x])
            if boundary and not out:
                out.add(TOP)
        elif direction == "down":
            out = set(self.down[x])
            if boundary and not out:
                out.add(BOTTOM)
        else:
            raise PosetError(f"unknown direction {direction!r}")
        return out

    def cover_pairs(self):
        """All pairs (x, y) with x covered by y, elements of P only."""
        for x in self.elements:
            for y in self.up[x]:
                yield (x, y)

    def hat_cover_pairs(self):
        """Cover pairs of the augmented poset, including boundary edges."""
        for x in self.minimals:
            yield (BOTTOM, x)
        yield from self.cover_pairs()
        for x in self.maximals:
            yield (x, TOP)

    def classes(self, selector: str) -> ElementClassSet:
        """Partition into ranks (bottom up), files (left to right), or fibers.

        Within a class, elements appear in canonical order.  No member of
        a rank or file covers another member, so toggles within one class
        commute (same-file elements can still be comparable, e.g. (1,1)
        and (2,2) in the middle file of [2]x[2]).
        """
        if selector == RANKS:
            if self._rank is None:
                raise PosetError("ranks require a graded poset")
            buckets = [[] for _ in range(self.num_ranks)]
            for x in self.elements:
                buckets[self._rank[x]].append(x)
        elif selector == FILES:
            self._require_rect()
            buckets = [[] for _ in range(self.n - 1)]
            for x in self.elements:
                buckets[self.file(x) - 1].append(x)
        elif selector == NEGATIVE_FIBERS:
            self._require_rect()
            buckets = [[] for _ in range(self.b)]
            for i, j in self.elements:
                buckets[j - 1].append((i, j))
        elif selector == POSITIVE_FIBERS:
            self._require_rect()
            buckets = [[] for _ in range(self.a)]
            for i, j in self.elements:
                buckets[i - 1].append((i, j))
        else:
            raise PosetError(f"unknown selector {selector!r}")
        key = self.index.__getitem__
        return ElementClassSet(
            selector, tuple(tuple(sorted(c, key=key)) for c in buckets)
        )

    # -- serialization ---------------------------------------------------------

    def element_key(self, x) -> str:
        if self.is_rect:
            return f"{x[0]},{x[1]}"
        return str(x)

    def parse_element(self, token: str):
        if self.is_rect:
            try:
                i, j = token.replace(".", ",").split(",")
                x = (int(i), int(j))
            except ValueError:
                raise PosetError(f"cannot parse element token {token!r}") from None
            self._require_element(x)
            return x
        for x in self.elements:
            if str(x) == token:
                return x
        raise PosetError(f"unknown element token {token!r}")

    def to_json(self) -> str:
        if self.is_rect:
            return json.dumps({"kind": "rect", "a": self.a, "b": self.b})
        return json.dumps(
            {
                "kind": "general",
                "elements": list(self.elements),
                "covers": [[x, y] for x, y in self.cover_pairs()],
            },
            sort_keys=True,
        )


def rect(a: int, b: int) -> Poset:
    """The poset [a] x [b] with its rc structure (ranks, files, fibers)."""
    if not (isinstance(a, int) and isinstance(b, int)) or a < 1 or b < 1:
        raise PosetError(f"rectangle sides must be positive integers, got {a}x{b}")
    elements = [(i, j) for j in range(1, b + 1) for i in range(1, a + 1)]
    covers = []
    for i, j in elements:
        if i < a:
            covers.append(((i, j), (i + 1, j)))
        if j < b:
            covers.append(((i, j), (i, j + 1)))
    return Poset(elements, covers, kind="rect", a=a, b=b)


def general_poset(elements, covers) -> Poset:
    """A general poset from an explicit cover list (acyclic, reduced)."""
    return Poset(elements, covers, kind="general")


def poset_from_json(text: str) -> Poset:
    data = json.loads(text)
    if data.get("kind") == "rect":
        return rect(data["a"], data["b"])
    if data.get("kind") == "general":
        elements = [tuple(x) if isinstance(x, list) else x for x in data["elements"]]
        covers = [
            (tuple(x) if isinstance(x, list) else x, tuple(y) if isinstance(y, list) else y)
            for x, y in data["covers"]
        ]
        return general_poset(elements, covers)
    raise PosetError(f"unknown poset kind {data.get('kind')!r}")


ROWMOTION = "rowmotion"
PROMOTION = "promotion"
ROWMOTION_INVERSE = "rowmotion-inverse"
PROMOTION_INVERSE = "promotion-inverse"

PRESETS = (ROWMOTION, PROMOTION, ROWMOTION_INVERSE, PROMOTION_INVERSE)


def toggle_order(P: Poset, plan) -> tuple:
    """Resolve a plan to the element sequence toggled first-to-last.

    Presets: rowmotion toggles ranks top to bottom, promotion toggles files
    left to right; the -inverse presets reverse the class order.  Any
    explicit element sequence is passed through after membership checks.
    """
    if isinstance(plan, str):
        if plan == ROWMOTION:
            classes = reversed(P.classes(RANKS).classes)
        elif plan == ROWMOTION_INVERSE:
            classes = P.classes(RANKS).classes
        elif plan == PROMOTION:
            classes = P.classes(FILES).classes
        elif plan == PROMOTION_INVERSE:
            classes = reversed(P.classes(FILES).classes)
        else:
            raise PosetError(f"unknown plan preset {plan!r}")
        return tuple(x for cls in classes for x in cls)
    order = tuple(plan)
    for x in order:
        P._require_element(x)
    return order


def _toposort(elements, down, up):
    indeg = {x: len(down[x]) for x in elements}
    ready = [x for x in elements if indeg[x] == 0]
    out = []
    while ready:
        x = ready.pop()
        out.append(x)
        for y in up[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    if len(out) != len(elements):
        raise PosetError("cover relation has a cycle")
    return out
