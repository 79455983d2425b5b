"""Finitely generated permutation groups with BSGS backing.

Covers group arithmetic, membership, order, orbits, stabilizers, normal
closures/cores, centralizers, intersections, and the transitivity /
free-action / stabilizer-generation predicates used by the tree-group
criteria.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .bsgs import StabilizerChain, reduce_generators
from .config import DEFAULT_CAPS, Caps
from .errors import InputError, ResourceLimitError
from .perms import Permutation, commutator, parse_cycles


class PermGroup:
    """Permutation group on {0,...,degree-1} given by generators.

    Immutable after construction except the lazily built stabilizer
    chain, which is populated under an internal lock so concurrent
    readers see a consistent structure.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation], name: str | None = None):
        if degree < 1:
            raise InputError(f"degree must be positive, got {degree}")
        gens = []
        seen = set()
        for g in generators:
            if g.degree != degree:
                raise InputError(f"generator degree {g.degree} != group degree {degree}")
            if g.is_identity() or g.images in seen:
                continue
            seen.add(g.images)
            gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self._chain: StabilizerChain | None = None
        self._chain_lock = threading.Lock()
        self._elements: tuple[Permutation, ...] | None = None

    # -- BSGS ------------------------------------------------------------

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._chain_lock:
                if self._chain is None:
                    self._chain = StabilizerChain.from_generators(
                        self.degree, [g.images for g in self.generators]
                    )
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def membership(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return self.chain.contains(p.images)

    __contains__ = membership

    def random_element(self, rng) -> Permutation:
        return Permutation(self.chain.random_element(rng))

    # -- element enumeration (independent of the chain) -------------------

    def elements(self, caps: Caps = DEFAULT_CAPS) -> tuple[Permutation, ...]:
        """All elements by BFS closure over the generators, sorted.

        Deliberately does not consult the BSGS, so closure counts can
        serve as an independent oracle for chain orders.
        """
        if self._elements is not None:
            return self._elements
        cap = caps.element_cap
        ident = Permutation.identity(self.degree)
        seen = {ident.images}
        frontier = [ident]
        out = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for g in self.generators:
                    u = w * g
                    if u.images not in seen:
                        if len(seen) >= cap:
                            raise ResourceLimitError(
                                "element enumeration", cap, len(seen) + 1, "--element-cap")
                        seen.add(u.images)
                        nxt.append(u)
                        out.append(u)
            frontier = nxt
        out.sort()
        self._elements = tuple(out)
        return self._elements

    # -- orbits and stabilizers -------------------------------------------

    def orbit(self, point: int) -> list[int]:
        if not 0 <= point < self.degree:
            raise InputError(f"point {point} out of range for degree {self.degree}")
        orbit = [point]
        seen = {point}
        idx = 0
        while idx < len(orbit):
            u = orbit[idx]
            for g in self.generators:
                v = g(u)
                if v not in seen:
                    seen.add(v)
                    orbit.append(v)
            idx += 1
        return orbit

    def orbits(self) -> list[list[int]]:
        """Orbit partition of {0..degree-1}, each orbit sorted, ordered by minimum."""
        remaining = set(range(self.degree))
        parts = []
        while remaining:
            a = min(remaining)
            orb = sorted(self.orbit(a))
            remaining.difference_update(orb)
            parts.append(orb)
        return parts

    def point_stabilizer(self, point: int) -> "PermGroup":
        """Stabilizer of a point, generated via Schreier's lemma, sift-reduced."""
        if not 0 <= point < self.degree:
            raise InputError(f"point {point} out of range for degree {self.degree}")
        ident = Permutation.identity(self.degree)
        transversal = {point: ident}
        orbit = [point]
        idx = 0
        while idx < len(orbit):
            u = orbit[idx]
            for g in self.generators:
                v = g(u)
                if v not in transversal:
                    transversal[v] = g * transversal[u]
                    orbit.append(v)
            idx += 1
        schreier = []
        for u in orbit:
            tu = transversal[u]
            for g in self.generators:
                s = transversal[g(u)].inverse() * g * tu
                if not s.is_identity():
                    schreier.append(s.images)
        kept, _ = reduce_generators(self.degree, schreier)
        return PermGroup(self.degree, [Permutation(t) for t in kept])

    # -- predicates --------------------------------------------------------

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def is_trivial(self) -> bool:
        return not self.generators

    def acts_freely(self) -> bool:
        """True when every point stabilizer is trivial."""
        n = self.order()
        return all(n == len(self.orbit(a)) for a in range(self.degree))

    def generated_by_point_stabilizers(self) -> bool:
        gens = []
        for a in range(self.degree):
            gens.extend(self.point_stabilizer(a).generators)
        return PermGroup(self.degree, gens).order() == self.order()

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.membership(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other) and other.is_subgroup_of(self)

    # -- constructions -----------------------------------------------------

    def young_group(self) -> "PermGroup":
        """All permutations preserving each orbit setwise (the orbit Young group)."""
        gens = []
        for orb in self.orbits():
            if len(orb) >= 2:
                gens.append(Permutation.from_cycles([orb[:2]], self.degree))
            if len(orb) >= 3:
                gens.append(Permutation.from_cycles([orb], self.degree))
        return PermGroup(self.degree, gens)

    def conjugated(self, by: Permutation) -> "PermGroup":
        return PermGroup(self.degree, [by * g * by.inverse() for g in self.generators])

    def normal_closure(self, K: "PermGroup") -> "PermGroup":
        """Smallest normal subgroup of self containing K."""
        self._require_subgroup(K, "normal_closure")
        chain = StabilizerChain(self.degree)
        gens: list[Permutation] = []
        queue = list(K.generators)
        for g in queue:
            if chain.add_generator(g.images):
                gens.append(g)
        idx = 0
        while idx < len(gens):
            x = gens[idx]
            for g in self.generators:
                y = g * x * g.inverse()
                if chain.add_generator(y.images):
                    gens.append(y)
            idx += 1
        result = PermGroup(self.degree, gens)
        result._chain = chain
        return result

    def normal_core(self, U: "PermGroup", caps: Caps = DEFAULT_CAPS) -> "PermGroup":
        """Largest normal subgroup of self contained in U.

        Exhaustive over U's elements: u survives iff its whole
        conjugacy closure under self stays inside U.
        """
        self._require_subgroup(U, "normal_core")
        u_elems = set(p.images for p in U.elements(caps))
        core: list[tuple] = []
        decided: set[tuple] = set()
        for u in U.elements(caps):
            if u.images in decided:
                continue
            # conjugacy class of u under self
            cls = {u.images}
            frontier = [u]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in self.generators:
                        y = g * x * g.inverse()
                        if y.images not in cls:
                            cls.add(y.images)
                            nxt.append(y)
                frontier = nxt
            if cls <= u_elems:
                # the whole class lies in the core
                core.extend(sorted(cls))
                decided.update(cls)
            else:
                decided.update(cls & u_elems)
        kept, chain = reduce_generators(self.degree, core)
        result = PermGroup(self.degree, [Permutation(t) for t in kept])
        result._chain = chain
        return result

    def derived_subgroup(self) -> "PermGroup":
        """Commutator subgroup: normal closure of generator-pair commutators."""
        comms = []
        for a in self.generators:
            for b in self.generators:
                c = commutator(a, b)
                if not c.is_identity():
                    comms.append(c)
        return self.normal_closure(PermGroup(self.degree, comms))

    def centralizer(self, H: "PermGroup", caps: Caps = DEFAULT_CAPS) -> "PermGroup":
        """Centralizer of H in self, by exhaustive element scan."""
        if H.degree != self.degree:
            raise InputError("centralizer: degree mismatch")
        hits = []
        for g in self.elements(caps):
            if all((g * h).images == (h * g).images for h in H.generators):
                hits.append(g.images)
        kept, chain = reduce_generators(self.degree, hits)
        result = PermGroup(self.degree, [Permutation(t) for t in kept])
        result._chain = chain
        return result

    def center(self, caps: Caps = DEFAULT_CAPS) -> "PermGroup":
        return self.centralizer(self, caps)

    def intersection(self, other: "PermGroup", caps: Caps = DEFAULT_CAPS) -> "PermGroup":
        """Intersection by enumerating the smaller group under the element cap."""
        if other.degree != self.degree:
            raise InputError("intersection: degree mismatch")
        small, big = (self, other) if self.order() <= other.order() else (other, self)
        hits = [g.images for g in small.elements(caps) if big.membership(g)]
        kept, chain = reduce_generators(self.degree, hits)
        result = PermGroup(self.degree, [Permutation(t) for t in kept])
        result._chain = chain
        return result

    def _require_subgroup(self, K: "PermGroup", op: str) -> None:
        if K.degree != self.degree:
            raise InputError(f"{op}: degree mismatch")
        for g in K.generators:
            if not self.membership(g):
                raise InputError(f"{op}: generator {g.cycle_string()} not in the ambient group")

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}"
        gens = ", ".join(g.cycle_string() for g in self.generators) or "()"
        return f"PermGroup<{label}: {gens}>"


# -- group elements by brute closure, no PermGroup machinery ---------------

def closure_elements(degree: int, gens: Sequence[Permutation], cap: int) -> list[Permutation]:
    """Exhaustive closure oracle: plain BFS over image tuples."""
    ident = Permutation.identity(degree)
    seen = {ident.images}
    out = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                u = w * g
                if u.images not in seen:
                    if len(seen) >= cap:
                        raise ResourceLimitError("element enumeration", cap, len(seen) + 1,
                                                 "--element-cap")
                    seen.add(u.images)
                    nxt.append(u)
                    out.append(u)
        frontier = nxt
    return out


# -- named families and group specs -----------------------------------------

def symmetric(n: int) -> PermGroup:
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles([[0, 1]], n))
    if n >= 3:
        gens.append(Permutation.from_cycles([list(range(n))], n))
    return PermGroup(n, gens, name=f"Sym({n})")

def alternating(n: int) -> PermGroup:
    gens = []
    if n >= 3:
        gens.append(Permutation.from_cycles([[0, 1, 2]], n))
    if n >= 4:
        cycle = list(range(n)) if n % 2 == 1 else list(range(1, n))
        gens.append(Permutation.from_cycles([cycle], n))
    return PermGroup(n, gens, name=f"Alt({n})")

def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise InputError(f"Cyc(n) needs n >= 1, got {n}")
    gens = [Permutation.from_cycles([list(range(n))], n)] if n >= 2 else []
    return PermGroup(n, gens, name=f"Cyc({n})")

def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n on n points (n >= 3)."""
    if n < 3:
        raise InputError(f"Dih(n) needs n >= 3, got {n}")
    rot = Permutation.from_cycles([list(range(n))], n)
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup(n, [rot, refl], name=f"Dih({n})")

def klein4() -> PermGroup:
    return PermGroup(4, [parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)],
                     name="Klein4")

def trivial(n: int) -> PermGroup:
    return PermGroup(n, [], name=f"Triv({n})")

def frobenius20() -> PermGroup:
    return PermGroup(5, [parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(2 3 5 4)", 5)],
                     name="F20")


_FAMILY_BUILDERS = {
    "sym": symmetric,
    "alt": alternating,
    "cyc": cyclic,
    "dih": dihedral,
}


def named_group(spec: str) -> PermGroup:
    """Resolve a named family: Sym(n), Alt(n), Cyc(n), Dih(n), Klein4, Triv(n), F20."""
    text = spec.strip()
    low = text.lower()
    if low == "klein4":
        return klein4()
    if low == "f20":
        return frobenius20()
    if "(" in text and text.endswith(")"):
        head, _, arg = text[:-1].partition("(")
        key = head.strip().lower()
        if key == "triv":
            return trivial(int(arg))
        if key in _FAMILY_BUILDERS:
            try:
                n = int(arg)
            except ValueError as exc:
                raise InputError(f"bad family argument in {spec!r}") from exc
            return _FAMILY_BUILDERS[key](n)
    raise InputError(f"unknown group family: {spec!r}")


def is_named_family(spec: str) -> bool:
    try:
        named_group(spec)
        return True
    except InputError:
        return False


def parse_group_file(text: str, name: str | None = None) -> PermGroup:
    """Parse the group-spec text format:

        degree: <n>
        gen: <cycle notation>     (one line per generator; identity is ``()``)
    """
    degree = None
    gens = []
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise InputError(f"line {lineno}: expected 'degree:' or 'gen:' in {line!r}")
        key = key.strip().lower()
        value = value.strip()
        if key == "degree":
            try:
                degree = int(value)
            except ValueError as exc:
                raise InputError(f"line {lineno}: bad degree {value!r}") from exc
            if degree < 1:
                raise InputError(f"line {lineno}: degree must be positive")
        elif key == "gen":
            if degree is None:
                raise InputError(f"line {lineno}: 'degree:' must come before 'gen:'")
            try:
                gens.append(parse_cycles(value, degree))
            except InputError as exc:
                raise InputError(f"line {lineno}: {exc}") from exc
        else:
            raise InputError(f"line {lineno}: unknown key {key!r}")
    if degree is None:
        raise InputError("missing 'degree:' line")
    return PermGroup(degree, gens, name=name)


def render_group_file(G: PermGroup) -> str:
    lines = [f"degree: {G.degree}"]
    for g in G.generators:
        lines.append(f"gen: {g.cycle_string()}")
    if not G.generators:
        lines.append("gen: ()")
    return "\n".join(lines) + "\n"


def parse_group_spec(text: str) -> PermGroup:
    """Accept a named family or the group-file format."""
    if is_named_family(text):
        return named_group(text)
    if ":" in text:
        return parse_group_file(text)
    raise InputError(f"not a recognized group spec: {text!r}")
