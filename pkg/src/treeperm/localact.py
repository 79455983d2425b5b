"""Color-aware tree-ball automorphisms and their local-action panels.

A ball automorphism is a permutation of the ball's vertices preserving
adjacency and the center.  At an interior vertex v with interior image
the local action is the color permutation sigma(g, v) = c_{g(v)} o g o
c_v^{-1}.  Groups with prescribed panels are generated by breadth-first
grafting: choose a panel at the center, then per vertex a panel from
the coset compatible with the inherited inward color; the graft count
and the BSGS order of the generated group certify each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bsgs import StabilizerChain
from .config import DEFAULT_CAPS, Caps
from .errors import InputError, ResourceLimitError
from .groups import PermGroup
from .perms import Permutation
from .treeball import TreeBall


# -- single-automorphism operations -----------------------------------------

def is_ball_automorphism(ball: TreeBall, g: Permutation) -> bool:
    """Adjacency- and center-preserving vertex permutation."""
    if g.degree != ball.n_vertices:
        return False
    for v in range(ball.n_vertices):
        nbrs = {g(u) for u in ball.neighbors(v)}
        if nbrs != set(ball.neighbors(g(v))):
            return False
    if ball.center_kind == "vertex":
        return g(0) == 0
    return {g(0), g(1)} == {0, 1}


def local_action(ball: TreeBall, g: Permutation, v: int) -> Permutation:
    """sigma(g, v) as a permutation of the colors {0..d-1}."""
    if not ball.is_colored():
        raise InputError("local actions need a colored ball")
    w = g(v)
    if not ball.is_interior(v) or not ball.is_interior(w):
        raise InputError(f"local action undefined: vertex {v} or image {w} is not interior")
    images = [0] * ball.d
    for c in range(ball.d):
        u = ball.nbr_by_color[v][c]
        images[c] = ball.color_of[w][g(u)]
    return Permutation(images)


def panel_map(ball: TreeBall, g: Permutation) -> dict[int, Permutation]:
    """Local action at every interior vertex (images are interior too)."""
    return {v: local_action(ball, g, v) for v in ball.interior_vertices()}


def in_Uc(ball: TreeBall, g: Permutation, F: PermGroup) -> bool:
    """Every interior local action lies in F."""
    return all(F.membership(sigma) for sigma in panel_map(ball, g).values())


@dataclass
class DefectReport:
    defects: list[int]
    violations: list[int]

    @property
    def is_valid_element(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {"defects": self.defects, "violations": self.violations,
                "is_valid_element": self.is_valid_element}


def defect_set(ball: TreeBall, g: Permutation, F: PermGroup, Fp: PermGroup) -> DefectReport:
    """Interior vertices with panel in F' \\ F; panels outside F' are violations."""
    defects, violations = [], []
    for v, sigma in sorted(panel_map(ball, g).items()):
        if F.membership(sigma):
            continue
        if Fp.membership(sigma):
            defects.append(v)
        else:
            violations.append(v)
    return DefectReport(defects=defects, violations=violations)


# -- grafting enumeration -----------------------------------------------------

class _Graft:
    """Shared tables for panel-constrained enumeration over one ball."""

    def __init__(self, ball: TreeBall, F: PermGroup, caps: Caps):
        if not ball.is_colored():
            raise InputError("ball groups need a colored ball")
        if F.degree != ball.d:
            raise InputError(f"local group degree {F.degree} != arity {ball.d}")
        self.ball = ball
        self.F = F
        self.caps = caps
        self.elems = F.elements(caps)
        self.by_transition: dict[tuple[int, int], list[Permutation]] = {}
        for sigma in self.elems:
            for i in range(ball.d):
                self.by_transition.setdefault((i, sigma(i)), []).append(sigma)
        # interior vertices in BFS order; children processed after parents
        self.interior = sorted(ball.interior_vertices(),
                               key=lambda v: (ball.depth[v], v))

    def coset(self, i: int, j: int) -> list[Permutation]:
        return self.by_transition.get((i, j), [])

    def stabilizer_size(self, i: int) -> int:
        return len(self.coset(i, i))


def _apply_panel(ball: TreeBall, images: list[int], v: int, sigma: Permutation) -> None:
    """Place the images of v's children as dictated by the panel at v."""
    w = images[v]
    for u in ball.children[v]:
        images[u] = ball.nbr_by_color[w][sigma(ball.color_of[v][u])]


def _root_assignments(ball: TreeBall, swap: bool) -> list[int | None]:
    images: list[int | None] = [None] * ball.n_vertices
    if ball.center_kind == "vertex":
        images[0] = 0
    elif not swap:
        images[0], images[1] = 0, 1
    else:
        images[0], images[1] = 1, 0
    return images


def _panel_choices(graft: _Graft, images: list[int], v: int,
                   forced_identity: set[int]) -> list[Permutation]:
    ball = graft.ball
    if ball.parent[v] is None:
        # free center vertex
        choices = list(graft.elems)
    else:
        i = ball.inward_color(v)
        j = ball.color_of[images[v]][images[ball.parent[v]]]
        choices = graft.coset(i, j)
    if v in forced_identity:
        ident = Permutation.identity(ball.d)
        return [ident] if any(s.images == ident.images for s in choices) else []
    return choices


def _enumerate(graft: _Graft, swap: bool, forced_identity: set[int]):
    """Yield the vertex-image tuples of all panel-compatible automorphisms."""
    ball = graft.ball
    images = _root_assignments(ball, swap)

    def rec(idx: int):
        if idx == len(graft.interior):
            yield tuple(images)
            return
        v = graft.interior[idx]
        saved = [images[u] for u in ball.children[v]]
        for sigma in _panel_choices(graft, images, v, forced_identity):
            _apply_panel(ball, images, v, sigma)
            yield from rec(idx + 1)
        for u, old in zip(ball.children[v], saved):
            images[u] = old

    yield from rec(0)


def formula_order(ball: TreeBall, F: PermGroup, caps: Caps = DEFAULT_CAPS,
                  swap: bool = False) -> int:
    """Exact graft count: product of per-vertex compatible-coset sizes.

    For a vertex center: |F| times the product of |F_{inward color}|
    over interior non-center vertices (transition cosets all have
    stabilizer size since inherited colors stay in the F-orbit).  For
    an edge center, both endpoints contribute constrained factors; with
    `swap` the count is for endpoint-swapping assignments.
    """
    graft = _Graft(ball, F, caps)
    images = _root_assignments(ball, swap)
    total = 1
    # sizes are choice-independent, so one sweep with any concrete panels works
    for v in graft.interior:
        choices = _panel_choices(graft, images, v, set())
        total *= len(choices)
        if total == 0:
            return 0
        _apply_panel(ball, images, v, choices[0])
    return total


@dataclass
class BallGroup:
    """A generated group of color-constrained ball automorphisms."""

    ball: TreeBall
    local_group: PermGroup
    group: PermGroup
    enumerated_count: int
    formula_count: int
    includes_swap: bool = False
    fixing_count: int | None = None
    swap_count: int | None = None

    def order(self) -> int:
        return self.group.order()


def _generate(graft: _Graft, branches: list[bool],
              forced_identity: set[int] = frozenset()) -> tuple[PermGroup, int]:
    """Enumerate all elements over the given swap-branches; build a reduced
    generator set on the fly and certify chain order == graft count."""
    ball = graft.ball
    predicted = sum(formula_order(ball, graft.F, graft.caps, swap=b) for b in branches) \
        if not forced_identity else None
    if predicted is not None and predicted > graft.caps.ball_order_cap:
        raise ResourceLimitError("ball group order", graft.caps.ball_order_cap, predicted,
                                 "--ball-order-cap (or reduce the radius)")
    if ball.n_vertices > graft.caps.ball_vertex_cap:
        raise ResourceLimitError("ball vertices", graft.caps.ball_vertex_cap,
                                 ball.n_vertices, "--ball-vertex-cap (or reduce the radius)")
    chain = StabilizerChain(ball.n_vertices)
    kept: list[Permutation] = []
    count = 0
    for branch in branches:
        for images in _enumerate(graft, branch, set(forced_identity)):
            count += 1
            if chain.add_generator(images):
                kept.append(Permutation(images))
    group = PermGroup(ball.n_vertices, kept)
    group._chain = chain
    if group.order() != count:
        raise AssertionError(
            f"graft count {count} disagrees with BSGS order {group.order()}")
    return group, count


def ball_stabilizer_group(ball: TreeBall, F: PermGroup,
                          caps: Caps = DEFAULT_CAPS) -> BallGroup:
    """Center-fixing automorphisms of a vertex-centered ball, panels in F."""
    if ball.center_kind != "vertex":
        raise InputError("ball_stabilizer_group expects a vertex-centered ball")
    graft = _Graft(ball, F, caps)
    group, count = _generate(graft, branches=[False])
    return BallGroup(ball=ball, local_group=F, group=group,
                     enumerated_count=count,
                     formula_count=formula_order(ball, F, caps))


def edge_ball_group(ball: TreeBall, F: PermGroup,
                    caps: Caps = DEFAULT_CAPS) -> BallGroup:
    """Center-edge-preserving automorphisms, endpoint swaps included."""
    if ball.center_kind != "edge":
        raise InputError("edge_ball_group expects an edge-centered ball")
    graft = _Graft(ball, F, caps)
    group, count = _generate(graft, branches=[False, True])
    fixing = formula_order(ball, F, caps, swap=False)
    swapping = formula_order(ball, F, caps, swap=True)
    return BallGroup(ball=ball, local_group=F, group=group,
                     enumerated_count=count, formula_count=fixing + swapping,
                     includes_swap=True, fixing_count=fixing, swap_count=swapping)


def type_preserving_subgroup(B: BallGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """Endpoint-fixing subgroup of an edge ball group."""
    if B.ball.center_kind != "edge":
        raise InputError("type_preserving_subgroup expects an edge ball group")
    graft = _Graft(B.ball, B.local_group, caps)
    group, _ = _generate(graft, branches=[False])
    return group

def half_ball_rigid_stabilizers(B: BallGroup, caps: Caps = DEFAULT_CAPS
                                ) -> tuple[PermGroup, PermGroup]:
    """Pointwise stabilizers of each half of an edge-centered ball.

    The half containing endpoint 0 is everything whose root path leads
    to 0; the returned pair is (fixes half of 0, fixes half of 1).
    """
    ball = B.ball
    if ball.center_kind != "edge":
        raise InputError("half-ball stabilizers expect an edge-centered ball")

    def side(v: int) -> int:
        while v not in (0, 1):
            v = ball.parent[v]
        return v

    graft = _Graft(ball, B.local_group, caps)
    out = []
    for fixed_endpoint in (0, 1):
        forced = {v for v in ball.interior_vertices() if side(v) == fixed_endpoint}
        group, _ = _generate(graft, branches=[False], forced_identity=forced)
        out.append(group)
    return out[0], out[1]


# -- random sampling -----------------------------------------------------------

def random_ball_automorphism(ball: TreeBall, F: PermGroup, rng: random.Random,
                             caps: Caps = DEFAULT_CAPS, swap: bool = False,
                             defect_panels: dict[int, PermGroup] | None = None
                             ) -> Permutation:
    """Uniform element of the panel-constrained group (product measure).

    `defect_panels` overrides the allowed local group at chosen interior
    vertices (e.g. F' at one vertex to force a defect); an empty
    compatible coset raises InputError naming the vertex.
    """
    graft = _Graft(ball, F, caps)
    grafts = {}
    if defect_panels:
        for v, H in defect_panels.items():
            grafts[v] = _Graft(ball, H, caps)
    images = _root_assignments(ball, swap)
    for v in graft.interior:
        use = grafts.get(v, graft)
        choices = _panel_choices(use, images, v, set())
        if not choices:
            raise InputError(f"no compatible panel at vertex {v}")
        sigma = choices[rng.randrange(len(choices))]
        _apply_panel(ball, images, v, sigma)
    return Permutation(images)
