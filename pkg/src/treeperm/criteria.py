"""Criteria evaluators for tree-local-action groups.

Given a degree d and local groups F <= F' <= Sym(d), the report decides
the finite facts (transitivity, free action, generation by point
stabilizers, Young-group sandwich) and derives the theorem-backed
verdicts about the associated tree groups: non-discreteness, virtual
simplicity, and membership in the simple/robust classes.  Verdicts are
inferences from published criteria and carry their citation; the tool
certifies only the finite hypotheses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_CAPS, Caps
from .errors import InputError
from .groups import PermGroup, closure_elements
from .series import prime_factors, p_part
from .subgroups import SubgroupClass, enumerate_subgroups_up_to_conjugacy
from .treeball import build_ball, legal_coloring
from .localact import formula_order

CITES = {
    "nondiscrete": ("restricted universal groups are non-discrete exactly when F "
                    "does not act freely (Le Boudec 2016, Sec. 3)"),
    "virtually_simple": ("virtually simple iff F' is transitive and generated by its "
                         "point stabilizers (Le Boudec 2016; cf. Burger-Mozes 2000)"),
    "in_R": ("robustly monolithic: virtually simple and non-discrete, over a "
             "non-free F (criterion equivalence for restricted universal groups)"),
    "Uc_virtually_S": ("Burger-Mozes 2000, Prop. 3.2.1: simple monolith of index 2 "
                       "iff the local group is transitive and generated by its point "
                       "stabilizers"),
}


@dataclass
class Verdict:
    name: str
    value: bool
    applicable: bool
    cite: str

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value,
                "applicable": self.applicable, "cite": self.cite}


@dataclass
class CriterionReport:
    d: int
    F_spec: str
    Fp_spec: str
    facts: dict
    verdicts: list[Verdict]
    eta: list[int]
    sandwich_ok: bool

    def verdict(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "inputs": {"d": self.d, "F": self.F_spec, "Fprime": self.Fp_spec},
            "facts": self.facts,
            "sandwich_ok": self.sandwich_ok,
            "verdicts": [v.as_dict() for v in self.verdicts],
            "eta": self.eta,
        }


def compute_facts(F: PermGroup, Fp: PermGroup) -> dict:
    """Finite facts feeding the verdicts (BSGS-backed route)."""
    young = F.young_group()
    return {
        "F_transitive": F.is_transitive(),
        "F_free": F.acts_freely(),
        "Fp_transitive": Fp.is_transitive(),
        "Fp_free": Fp.acts_freely(),
        "Fp_gen_by_stabs": Fp.generated_by_point_stabilizers(),
        "F_le_Fp": F.is_subgroup_of(Fp),
        "Fp_le_young_F": Fp.is_subgroup_of(young),
    }


def oracle_facts(F: PermGroup, Fp: PermGroup, caps: Caps = DEFAULT_CAPS) -> dict:
    """The same facts by exhaustive closure only: no stabilizer chains."""
    f_elems = closure_elements(F.degree, F.generators, caps.element_cap)
    fp_elems = closure_elements(Fp.degree, Fp.generators, caps.element_cap)

    def orbit(elems, a):
        return {g(a) for g in elems}

    def transitive(elems, deg):
        return len(orbit(elems, 0)) == deg

    def free(elems, deg):
        return all(len(orbit(elems, a)) == len(elems) for a in range(deg))

    def gen_by_stabs(elems, deg):
        stab_elems = [g for g in elems if any(g(a) == a for a in range(deg))]
        # closure of all point-stabilizer elements
        gens = [g for g in stab_elems if not g.is_identity()]
        if not gens:
            return len(elems) == 1
        return len(closure_elements(deg, gens, caps.element_cap)) == len(elems)

    def young_contains(fp_elems, f_elems, deg):
        # orbit partition of F by scanning elements
        remaining = set(range(deg))
        parts = []
        while remaining:
            a = min(remaining)
            orb = orbit(f_elems, a)
            remaining -= orb
            parts.append(orb)
        return all(all({g(x) for x in part} == part for part in parts) for g in fp_elems)

    f_set = {g.images for g in f_elems}
    return {
        "F_transitive": transitive(f_elems, F.degree),
        "F_free": free(f_elems, F.degree),
        "Fp_transitive": transitive(fp_elems, Fp.degree),
        "Fp_free": free(fp_elems, Fp.degree),
        "Fp_gen_by_stabs": gen_by_stabs(fp_elems, Fp.degree),
        "F_le_Fp": f_set <= {g.images for g in fp_elems},
        "Fp_le_young_F": young_contains(fp_elems, f_elems, F.degree),
    }


def verdicts_from_facts(facts: dict) -> list[Verdict]:
    """Pure function of the facts, per the published criteria."""
    sandwich = facts["F_le_Fp"] and facts["Fp_le_young_F"]
    crit = facts["Fp_transitive"] and facts["Fp_gen_by_stabs"]
    return [
        Verdict("Gc_nondiscrete", value=not facts["F_free"], applicable=sandwich,
                cite=CITES["nondiscrete"]),
        Verdict("Gc_virtually_simple", value=crit,
                applicable=sandwich and not facts["Fp_free"],
                cite=CITES["virtually_simple"]),
        Verdict("Gc_in_R", value=crit and not facts["F_free"],
                applicable=sandwich and not facts["F_free"],
                cite=CITES["in_R"]),
        Verdict("Uc_Fp_virtually_in_S", value=crit, applicable=not facts["Fp_free"],
                cite=CITES["Uc_virtually_S"]),
    ]


def evaluate(d: int, F: PermGroup, Fp: PermGroup, caps: Caps = DEFAULT_CAPS,
             eta_depth: int = 2) -> CriterionReport:
    """Full criteria report for the pair (F, F') at degree d."""
    if F.degree != d or Fp.degree != d:
        raise InputError(f"local groups must have degree {d}")
    facts = compute_facts(F, Fp)
    verdicts = verdicts_from_facts(facts)
    eta = sorted(eta_estimate(F, eta_depth, caps)) if d >= 3 else []
    return CriterionReport(
        d=d, F_spec=F.name or "custom", Fp_spec=Fp.name or "custom",
        facts=facts, verdicts=verdicts, eta=eta,
        sandwich_ok=facts["F_le_Fp"] and facts["Fp_le_young_F"],
    )


# -- local prime content estimate ---------------------------------------------

def ball_stabilizer_order(F: PermGroup, radius: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Order of the radius-r vertex-ball stabilizer with panels in F.

    Computed from the exact graft-count product, so it works far past
    the exhaustive-generation cap.
    """
    if radius == 0:
        return 1
    ball = legal_coloring(build_ball(F.degree, radius, "vertex", caps))
    return formula_order(ball, F, caps)


def eta_estimate(F: PermGroup, depth: int, caps: Caps = DEFAULT_CAPS) -> frozenset[int]:
    """Primes whose p-part of the ball-stabilizer order grows at `depth`.

    Finite proxy for the local prime content: for transitive F and
    depth >= 2 this equals the primes dividing a point stabilizer.
    """
    if depth < 1:
        raise InputError("eta estimate needs depth >= 1")
    before = ball_stabilizer_order(F, depth - 1, caps)
    after = ball_stabilizer_order(F, depth, caps)
    primes = set()
    for p in prime_factors(after):
        if p_part(after, p) > p_part(before, p):
            primes.add(p)
    return frozenset(primes)


# -- survey over subgroup classes ----------------------------------------------

_KNOWN_TRANSITIVE = {
    (3, 3): "C3", (3, 6): "S3",
    (4, 4): None,  # C4 vs V disambiguated below
    (4, 8): "D4", (4, 12): "A4", (4, 24): "S4",
    (5, 5): "C5", (5, 10): "D5", (5, 20): "F20", (5, 60): "A5", (5, 120): "S5",
}


def class_label(cls: SubgroupClass, d: int, idx: int) -> str:
    """Human name when recognizable, else a stable generic label."""
    G = cls.rep
    n = cls.order
    if n == 1:
        return "1"
    cyclic = any(g.order() == n for g in G.elements())
    if cls.is_transitive:
        if (d, n) in _KNOWN_TRANSITIVE and _KNOWN_TRANSITIVE[(d, n)]:
            return _KNOWN_TRANSITIVE[(d, n)]
        if d == 4 and n == 4:
            return "C4" if cyclic else "V"
    if cyclic:
        return f"C{n}"
    if n == 4:
        return "C2xC2"
    return f"G{n}_{idx}"


@dataclass
class SurveyRow:
    label: str
    order: int
    class_size: int
    generators: list[str]
    report: CriterionReport
    oracle_agrees: bool

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "order": self.order,
            "class_size": self.class_size,
            "generators": self.generators,
            "report": self.report.as_dict(),
            "oracle_agrees": self.oracle_agrees,
        }


def survey(d: int, transitive_only: bool = False, caps: Caps = DEFAULT_CAPS,
           with_eta: bool = True) -> list[SurveyRow]:
    """One criteria row per conjugacy class of F' <= Sym(d), F = F'.

    Every row's facts are recomputed by the exhaustive no-BSGS oracle;
    disagreement is reported, never silently patched.
    """
    from .groups import symmetric

    if d > 6:
        raise InputError("survey supports d <= 6 (subgroup enumeration cap)")
    classes = enumerate_subgroups_up_to_conjugacy(symmetric(d), caps)
    rows = []
    for idx, cls in enumerate(classes):
        if transitive_only and not cls.is_transitive:
            continue
        F = cls.rep
        facts = compute_facts(F, F)
        report = CriterionReport(
            d=d, F_spec=class_label(cls, d, idx), Fp_spec=class_label(cls, d, idx),
            facts=facts, verdicts=verdicts_from_facts(facts),
            eta=sorted(eta_estimate(F, 2, caps)) if (with_eta and d >= 3) else [],
            sandwich_ok=True,
        )
        rows.append(SurveyRow(
            label=class_label(cls, d, idx),
            order=cls.order,
            class_size=cls.class_size,
            generators=[g.cycle_string() for g in F.generators],
            report=report,
            oracle_agrees=oracle_facts(F, F, caps) == facts,
        ))
    return rows
