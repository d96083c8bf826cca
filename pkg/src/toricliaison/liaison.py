"""The G-biliaison chain from P(G) down to a complete intersection.

Per leafless stage with cycles: choose a maximal path ordered matching
e_1, ..., e_r, walk P(G) = I_{e(0)} -> I_{e(1)} -> ... -> I_{e(r)}, split off
the free variable x with I_e^G = I_e^{G-x} + (x), and continue on G - x.
Every step is checked by the verifiers below.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .graph import (
    Graph,
    bipartition,
    delete_edge,
    edge_name,
    enumerate_cycles,
    strip_leaves,
)
from .groebner import (
    IdealPresentation,
    MonomialIdeal,
    ideal_equal,
    is_nzd,
    is_nzd_variable,
    is_unmixed,
    mi_height,
    times_plus,
    variable_ideal,
)
from .pom import (
    EMPTY_POM,
    PathOrderedMatching,
    PomError,
    build_I,
    compute_M,
    extend_pom,
    find_free_variable,
    validate_pom,
)
from .poly import LexOrder, Mono, Monomial
from .simplicial import (
    NotVD,
    complex_of,
    is_vertex_decomposable,
    verify_vd_induction,
)
from .toric import alternating_sides, toric_binomial, toric_ideal
from .verdict import HypothesisViolation, Verdict

log = logging.getLogger(__name__)

SCHEMA = "liaison-cert/1"

LEAF_STRIP = "LeafStrip"
BILIAISON_DOWN = "BiliaisonDown"
VARIABLE_SPLIT = "VariableSplit"
TERMINAL = "Terminal"


class ChainVerificationError(RuntimeError):
    def __init__(self, step: "ChainStep"):
        failed = {k: v.failed() for k, v in step.verdicts.items() if not v.ok}
        super().__init__(f"{step.kind} step failed verification: {failed}")
        self.step = step


def pom_order(base: LexOrder, pom: PathOrderedMatching) -> LexOrder:
    """Matching edges on top, last one highest, then the rest as in ``base``."""
    top = list(reversed(pom.edges))
    return LexOrder(top + [v for v in base.priority if v not in pom.edge_set])


def _without(pom_edges: tuple[int, ...], s: int) -> tuple[int, ...]:
    return pom_edges[: s - 1] + pom_edges[s:]


def _check_step_hypotheses(g: Graph, pom: PathOrderedMatching, s: int, order: LexOrder):
    """Return e' (the matching without e_s) after checking the order and both matchings."""
    if not 1 <= s <= pom.r:
        raise HypothesisViolation(f"s={s} out of range for a matching of length {pom.r}")
    try:
        validate_pom(g, pom.edges)
        reduced = validate_pom(g, _without(pom.edges, s))
    except PomError as exc:
        raise HypothesisViolation(f"not a path ordered matching: {exc}") from None
    e_s = pom.edges[s - 1]
    head = order.priority[: pom.r]
    if not order.variables >= set(g.edge_ids):
        raise HypothesisViolation("order does not cover every edge")
    if order.priority[0] != e_s or set(head) != pom.edge_set:
        raise HypothesisViolation(
            f"order must put {edge_name(e_s)} first and the matching above all other edges; got {order}"
        )
    return reduced


def verify_gb_step(g: Graph, pom: PathOrderedMatching, s: int, order: LexOrder) -> Verdict:
    """The natural generators of I_e^G already form a Gröbner basis.

    Also checks that keeping only the cofactors of cycles whose matching
    variables sit on one side still gives the full initial ideal.
    """
    _check_step_hypotheses(g, pom, s, order)
    v = Verdict("gb_step")
    ideal = build_I(g, pom, order)
    raw = ideal.lead_ideal_of_generators()
    v.check("raw_leads_generate_initial", raw == ideal.initial, f"raw leads {raw} vs initial {ideal.initial}")
    trimmed = build_I(g, pom, order, one_sided_only=True).lead_ideal_of_generators()
    v.check("one_sided_leads_generate_initial", trimmed == ideal.initial, f"one-sided leads {trimmed}")
    return v


def verify_initial_bdl(g: Graph, pom: PathOrderedMatching, s: int, order: LexOrder) -> Verdict:
    """in(I_{e'}^G) = e_s in(I_e^G) + in(I_{e'}^{G-e_s}) with e_s regular on the last summand."""
    reduced = _check_step_hypotheses(g, pom, s, order)
    e_s = pom.edges[s - 1]
    minus = delete_edge(g, e_s)
    try:
        reduced_minus = validate_pom(minus, reduced.edges)
    except PomError as exc:
        raise HypothesisViolation(f"e' is not path ordered in G - {edge_name(e_s)}: {exc}") from None
    v = Verdict("initial_bdl")
    big = build_I(g, reduced, order).initial
    small = build_I(g, pom, order).initial
    base = build_I(minus, reduced_minus, order).initial
    rhs = small.scaled(e_s) + base
    v.check("initial_identity", big == rhs, f"in(I_e') = {big} but e_s*in(I_e) + in(J) = {rhs}")
    squarefree = base.is_squarefree()
    v.check("base_squarefree", squarefree, f"{base} not squarefree")
    if squarefree:
        v.check("e_s_nonzerodivisor", is_nzd_variable(e_s, base), f"{edge_name(e_s)} is a zero divisor mod {base}")
    return v


@dataclass
class IsoInstance:
    kind: str  # "single_edge_cycles" | "one_sided_cycles"
    cycle: tuple[int, ...]
    g: object
    g_prime: Monomial


def verify_iso_equalities(g: Graph, pom: PathOrderedMatching, order: LexOrder) -> Verdict:
    """The ideal equalities behind the degree-one biliaison I_e^G ~ I_{e'}^G on J = I_{e'}^{G-e_r}.

    For cycles through e_r avoiding e_1..e_{r-1}, with T_c = m_c e_r - n_c:
        m_c I_{e'} + J = T_c I_e + J.
    For cycles through e_r and some earlier e_j, all matching variables on
    e_r's side (other cycles are skipped, as the one-sided generators suffice):
        m_c I_{e'} + J = e_r m_c I_e + J.
    One instance (g, g') with both regular modulo J is then recorded, and
    deg g - deg g' = 1 checked for it.
    """
    if pom.r < 1:
        raise HypothesisViolation("need a matching of length at least one")
    e_r = pom.edges[-1]
    earlier = set(pom.edges[:-1])
    reduced = pom.prefix(pom.r - 1)
    minus = delete_edge(g, e_r)
    J = build_I(minus, validate_pom(minus, reduced.edges), order)
    I_e = build_I(g, pom, order)
    I_ep = build_I(g, reduced, order)
    v = Verdict("iso_equalities")
    instances: list[IsoInstance] = []
    skipped = 0
    for cyc in enumerate_cycles(g):
        if e_r not in cyc:
            continue
        sides = alternating_sides(cyc)
        own = sides[0] if e_r in sides[0].support else sides[1]
        other = sides[1] if own is sides[0] else sides[0]
        hit = earlier.intersection(cyc)
        if not hit:
            m_c = own.divide(Monomial.var(e_r))
            T_c = toric_binomial(cyc, order).poly
            lhs = times_plus(Mono(1, m_c), I_ep, J)
            rhs = times_plus(T_c, I_e, J)
            v.check("single_edge_cycles", ideal_equal(lhs, rhs),
                    f"single-edge cycle equality fails for cycle {_cyc(cyc)}")
            instances.append(IsoInstance("single_edge_cycles", cyc, T_c, m_c))
        elif earlier & other.support:
            skipped += 1
        else:
            m_c = Monomial.squarefree(own.support - pom.edge_set)
            g_mono = m_c * Monomial.var(e_r)
            lhs = times_plus(Mono(1, m_c), I_ep, J)
            rhs = times_plus(Mono(1, g_mono), I_e, J)
            v.check("one_sided_cycles", ideal_equal(lhs, rhs),
                    f"one-sided cycle equality fails for cycle {_cyc(cyc)}")
            instances.append(IsoInstance("one_sided_cycles", cyc, Mono(1, g_mono), m_c))
    v.diagnostics.append(
        f"{sum(i.kind == 'single_edge_cycles' for i in instances)} single-edge cycles, "
        f"{sum(i.kind == 'one_sided_cycles' for i in instances)} one-sided cycles, {skipped} two-sided skipped"
    )

    # Regularity modulo J is decided through heights, which needs J unmixed;
    # a vertex decomposable initial complex makes J Cohen-Macaulay.
    j_init = J.initial
    cm = j_init.is_squarefree() and not isinstance(
        is_vertex_decomposable(complex_of(j_init, g.edge_ids)), NotVD
    )
    v.check("J_cohen_macaulay_proxy", cm, f"initial ideal of J {j_init} is not squarefree+VD")
    found = None
    if cm:
        for inst in instances:
            g_prime = Mono(1, inst.g_prime)
            if (
                I_ep.contains(inst.g)
                and I_e.contains(g_prime)
                and is_nzd(inst.g, J)
                and is_nzd(g_prime, J)
            ):
                found = inst
                break
    v.flags["regular_pair_found"] = found is not None
    if found is not None:
        deg_g = found.g.lead.degree
        deg_gp = found.g_prime.degree
        v.check("degree_shift_one", deg_g - deg_gp == 1, f"deg g = {deg_g}, deg g' = {deg_gp}")
        v.diagnostics.append(f"regular pair g = {found.g}, g' = {found.g_prime} ({found.kind})")
    else:
        v.diagnostics.append("no regular (g, g') instance among the cycle instances")
    return v


def verify_key_split(g: Graph, pom: PathOrderedMatching, x: int, order: LexOrder) -> Verdict:
    """I_e^G = I_e^{G-x} + (x) in the ring of all edges of ``g``."""
    if g.leaves():
        raise HypothesisViolation(f"graph has leaves {g.leaves()}")
    if x not in compute_M(g, pom).variables():
        raise HypothesisViolation(f"{edge_name(x)} is not an indeterminate in M")
    minus = delete_edge(g, x)
    lhs = build_I(g, pom, order)
    rhs = build_I(minus, validate_pom(minus, pom.edges), order).plus([Mono(1, Monomial.var(x))])
    v = Verdict("key_split")
    v.check("ideal_equality", ideal_equal(lhs, rhs), f"I_e^G != I_e^(G-{edge_name(x)}) + ({edge_name(x)})")
    return v


# chain data ------------------------------------------------------------------------


@dataclass
class IdealRecord:
    generators: list[str]
    initial: list[str]
    height: int | None
    squarefree: bool | None
    unmixed: bool | None

    @classmethod
    def of(cls, ideal: IdealPresentation, with_initial: bool = True) -> "IdealRecord":
        if not with_initial:
            return cls(ideal.strings(), [], None, None, None)
        init = ideal.initial
        sf = init.is_squarefree()
        return cls(
            ideal.strings(),
            init.strings(),
            mi_height(init, squarefree_only=False),
            sf,
            is_unmixed(init) if sf else False,
        )

    def to_json_obj(self) -> dict:
        obj = {"generators": self.generators}
        if self.height is not None:
            obj.update(initial=self.initial, height=self.height, squarefree=self.squarefree, unmixed=self.unmixed)
        return obj


@dataclass
class ChainStep:
    kind: str
    stage: int
    graph: Graph
    pom: PathOrderedMatching | None = None
    s: int | None = None
    order: LexOrder | None = None
    ideals: dict[str, IdealRecord] = field(default_factory=dict)
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts.values())

    def to_json_obj(self) -> dict:
        obj: dict = {"kind": self.kind, "stage": self.stage, "graph": self.graph.to_json_obj()}
        if self.pom is not None:
            obj["pom"] = self.pom.to_json_obj()
        if self.s is not None:
            obj["s"] = self.s
        if self.order is not None:
            obj["order"] = [edge_name(v) for v in self.order.priority]
        if self.ideals:
            obj["ideals"] = {k: r.to_json_obj() for k, r in self.ideals.items()}
        if self.verdicts:
            obj["verdicts"] = {k: v.to_json_obj() for k, v in self.verdicts.items()}
        obj.update(self.info)
        return obj


@dataclass
class ChainCertificate:
    graph: Graph
    steps: list[ChainStep]
    ci_variables: list[int]
    original_height: int | None
    verified: bool

    @property
    def ok(self) -> bool:
        return all(step.ok for step in self.steps)

    def count(self, kind: str) -> int:
        return sum(step.kind == kind for step in self.steps)

    def stage_heights(self) -> list[list[int]]:
        """Per stage: ht P(G), ht I_{e(1)}, ..., ht I_{e(r)}, ht of I_e^{G-x} + (x)."""
        out: list[list[int]] = []
        for step in self.steps:
            if step.kind == BILIAISON_DOWN:
                if step.s == 1:
                    out.append([step.ideals["I_prev"].height])
                out[-1].append(step.ideals["I_next"].height)
            elif step.kind == VARIABLE_SPLIT and "I_split_sum" in step.ideals:
                out[-1].append(step.ideals["I_split_sum"].height)
        return out

    def summary(self) -> dict:
        return {
            "biliaisons": self.count(BILIAISON_DOWN),
            "splits": self.count(VARIABLE_SPLIT),
            "leaf_strips": self.count(LEAF_STRIP),
            "complete_intersection": [edge_name(v) for v in self.ci_variables],
            "height": self.original_height,
            "stage_heights": self.stage_heights() if self.verified else None,
            "verified": self.verified,
            "ok": self.ok,
        }

    def to_json_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "input": self.graph.to_json_obj(),
            "summary": self.summary(),
            "steps": [s.to_json_obj() for s in self.steps],
        }


# the chain ---------------------------------------------------------------------------


def _cyc(cyc) -> str:
    return "(" + ",".join(edge_name(e) for e in cyc) + ")"


def _maximal_pom(g: Graph, seed: tuple[int, ...] | None) -> PathOrderedMatching:
    start = validate_pom(g, seed) if seed else validate_pom(g, (min(g.edge_ids),))
    return extend_pom(g, start)


def run_chain(
    g: Graph,
    *,
    verify: bool = True,
    seed_pom: tuple[int, ...] | None = None,
    base_order: LexOrder | None = None,
    max_cycles: int | None = None,
    check_vd: bool = True,
) -> ChainCertificate:
    """Build (and unless ``verify`` is off, check) the chain for ``g``.

    ``seed_pom`` only applies to the first stage with cycles. Raises
    :class:`ChainVerificationError` on the first failing step.
    """
    bipartition(g)
    base = base_order or LexOrder.default(g.edge_ids)
    if set(base.priority) != set(g.edge_ids):
        raise ValueError("the order must list every edge exactly once")
    steps: list[ChainStep] = []
    pile: list[int] = []
    original_height = None
    if verify:
        original_height = mi_height(toric_ideal(g, base, max_cycles=max_cycles).initial)

    cur = g
    stage = 0
    while True:
        stripped = strip_leaves(cur)
        if stripped != cur:
            removed = sorted(cur.vertices - stripped.vertices)
            gone = sorted(set(cur.edge_ids) - set(stripped.edge_ids))
            steps.append(
                ChainStep(
                    LEAF_STRIP,
                    stage,
                    cur,
                    info={"removed_vertices": removed, "removed_edges": [edge_name(e) for e in gone]},
                )
            )
            cur = stripped
        cycles = enumerate_cycles(cur, max_cycles=max_cycles)
        if not cycles:
            steps.append(_terminal_step(cur, stage, pile, original_height, verify))
            break

        rest = base.restricted(cur.edge_ids)
        pom = _maximal_pom(cur, seed_pom if stage == 0 else None)
        log.info("stage %d: %s, matching %s", stage, cur, pom)
        for s in range(1, pom.r + 1):
            step = _biliaison_step(cur, pom, s, rest, stage, verify, check_vd)
            steps.append(step)
            if not step.ok:
                raise ChainVerificationError(step)

        x = find_free_variable(cur, pom)
        step = _split_step(cur, pom, x, rest, stage, verify, check_vd)
        steps.append(step)
        if not step.ok:
            raise ChainVerificationError(step)
        pile.append(x)
        cur = delete_edge(cur, x)
        stage += 1
        if stage > g.q:
            raise AssertionError("chain failed to terminate within q stages")

    cert = ChainCertificate(g, steps, pile, original_height, verify)
    if verify:
        hv = verify_heights(cert)
        steps[-1].verdicts["heights"] = hv
        if not hv.ok:
            raise ChainVerificationError(steps[-1])
    return cert


def _biliaison_step(g, pom, s, rest, stage, verify, check_vd) -> ChainStep:
    prev, nxt = pom.prefix(s - 1), pom.prefix(s)
    order = pom_order(rest, nxt)
    step = ChainStep(BILIAISON_DOWN, stage, g, nxt, s, order)
    e_s = nxt.edges[-1]
    minus = delete_edge(g, e_s)
    step.info["edge"] = edge_name(e_s)
    ideals = {
        "I_prev": build_I(g, prev, order),
        "I_next": build_I(g, nxt, order),
        "J": build_I(minus, validate_pom(minus, prev.edges), order),
    }
    step.ideals = {k: IdealRecord.of(v, verify) for k, v in ideals.items()}
    if not verify:
        return step
    step.verdicts["gb_step"] = verify_gb_step(g, nxt, s, order)
    step.verdicts["initial_bdl"] = verify_initial_bdl(g, nxt, s, order)
    step.verdicts["iso_equalities"] = verify_iso_equalities(g, nxt, order)
    if check_vd:
        prev_order = pom_order(rest, prev)
        verdict, witness = verify_vd_induction(g, prev, prev_order, extension=e_s)
        step.verdicts["vd_induction"] = verdict
        step.info["vd_witness"] = {"pom": str(prev), "witness": witness.to_json_obj()}
    return step


def _split_step(g, pom, x, rest, stage, verify, check_vd) -> ChainStep:
    order = pom_order(rest, pom)
    minus = delete_edge(g, x)
    step = ChainStep(VARIABLE_SPLIT, stage, g, pom, None, order, info={"x": edge_name(x)})
    if not verify:
        return step
    I_e = build_I(g, pom, order)
    I_minus = build_I(minus, validate_pom(minus, pom.edges), order)
    step.ideals = {
        "I_e": IdealRecord.of(I_e),
        "I_split": IdealRecord.of(I_minus),
        "I_split_sum": IdealRecord.of(I_minus.plus([Mono(1, Monomial.var(x))])),
    }
    step.verdicts["key_split"] = verify_key_split(g, pom, x, order)
    if check_vd:
        verdict, witness = verify_vd_induction(g, pom, order)
        step.verdicts["vd_induction"] = verdict
        step.info["vd_witness"] = {"pom": str(pom), "witness": witness.to_json_obj()}
    return step


def _terminal_step(g, stage, pile, original_height, verify) -> ChainStep:
    step = ChainStep(TERMINAL, stage, g, info={"complete_intersection": [edge_name(v) for v in pile]})
    if verify:
        order = LexOrder.default(set(g.edge_ids) | set(pile))
        ci = variable_ideal(pile, order)
        v = Verdict("terminal")
        v.check("distinct_variables", len(set(pile)) == len(pile), "repeated split variable")
        ht = mi_height(ci.initial)
        v.check("ci_height_matches", ht == len(pile) == original_height,
                f"CI of {len(pile)} variables, height {ht}, ht P(G) = {original_height}")
        step.verdicts["terminal"] = v
    return step


def verify_heights(cert: ChainCertificate) -> Verdict:
    """Height bookkeeping along the chain, from the recorded ideal data."""
    v = Verdict("heights")
    for step in cert.steps:
        for name, rec in step.ideals.items():
            if rec.height is None:
                continue
            v.check("squarefree", bool(rec.squarefree), f"stage {step.stage} {name}: non-squarefree initial ideal")
            v.check("unmixed", bool(rec.unmixed), f"stage {step.stage} {name}: mixed minimal primes")
        g = step.graph
        if step.kind == BILIAISON_DOWN:
            c = step.ideals["I_prev"].height
            v.check("constant_in_stage", step.ideals["I_next"].height == c,
                    f"stage {step.stage} s={step.s}: heights {c} -> {step.ideals['I_next'].height}")
            v.check("base_one_less", step.ideals["J"].height == c - 1,
                    f"stage {step.stage} s={step.s}: ht J = {step.ideals['J'].height}, expected {c - 1}")
            if step.s == 1 and g.is_connected():
                formula = g.q - len(g.non_isolated) + 1
                v.check("formula_q_minus_n_plus_1", c == formula,
                        f"stage {step.stage}: ht P = {c}, q - n + 1 = {formula}")
        elif step.kind == VARIABLE_SPLIT:
            h = step.ideals["I_e"].height
            v.check("split_drops_one", step.ideals["I_split"].height == h - 1,
                    f"stage {step.stage}: ht I_e^(G-x) = {step.ideals['I_split'].height}, ht I_e^G = {h}")
            v.check("split_sum_restores", step.ideals["I_split_sum"].height == h,
                    f"stage {step.stage}: adding x gives height {step.ideals['I_split_sum'].height}")
    if cert.original_height is not None:
        v.check("ci_count_is_height", len(cert.ci_variables) == cert.original_height,
                f"{len(cert.ci_variables)} CI variables, ht P(G) = {cert.original_height}")
    return v
