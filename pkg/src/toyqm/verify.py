"""Exhaustive identity and invariant checks, grouped into named suites.

``run_all()`` drives the ``verify`` subcommand. Suites marked informational
report findings without affecting the pass/fail verdict.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Callable

from . import correspondence as corr
from . import f5qm, projective, spekkens
from .field import ELEMENTS, NONZERO, FieldElement, abs_norm, sqrt_minus_one
from .projective import BRAS, KETS, NAMES, PARTNER, Ket, canonicalize, tensor

MONTE_CARLO_SEED = 20170123
MONTE_CARLO_TRIALS = 100_000
MONTE_CARLO_TOLERANCE = 0.01
BALANCE_SEQUENCES = 10_000


@dataclass
class Check:
    description: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class SuiteResult:
    name: str
    citation: str
    checks: list[Check] = field(default_factory=list)
    informational: bool = False
    notes: list[str] = field(default_factory=list)

    def check(self, description: str, expected, actual) -> None:
        self.checks.append(Check(description, expected, actual))

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.informational or self.passed == len(self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "citation": self.citation,
            "ok": self.ok,
            "informational": self.informational,
            "passed": self.passed,
            "total": len(self.checks),
            "failures": [
                {"check": c.description, "expected": str(c.expected), "actual": str(c.actual)}
                for c in self.failures()
            ],
            "notes": self.notes,
        }


SUITES: dict[str, Callable[[], SuiteResult]] = {}


def suite(name: str, citation: str, informational: bool = False):
    def register(fn):
        def run() -> SuiteResult:
            result = SuiteResult(name, citation, informational=informational)
            fn(result)
            return result

        SUITES[name] = run
        return fn

    return register


def _k(name: str) -> Ket:
    return KETS[name]


def _kk(x: str, y: str) -> Ket:
    return tensor(KETS[x], KETS[y])


@suite("field-axioms", "F5 arithmetic and the 0/1 absolute value")
def _field_axioms(r: SuiteResult) -> None:
    els = ELEMENTS
    r.check("closure in balanced set", True, all((a + b).value in range(-2, 3) and (a * b).value in range(-2, 3) for a in els for b in els))
    r.check("additive commutativity", True, all(a + b == b + a for a in els for b in els))
    r.check("multiplicative commutativity", True, all(a * b == b * a for a in els for b in els))
    triples = list(itertools.product(els, repeat=3))
    r.check("additive associativity", True, all((a + b) + c == a + (b + c) for a, b, c in triples))
    r.check("multiplicative associativity", True, all((a * b) * c == a * (b * c) for a, b, c in triples))
    r.check("distributivity", True, all(a * (b + c) == a * b + a * c for a, b, c in triples))
    r.check("unique inverses", True, all(sum(1 for x in els if a * x == 1) == 1 for a in NONZERO))
    r.check("abs_norm multiplicative", True, all(abs_norm(a * b) == abs_norm(a) * abs_norm(b) for a in els for b in els))
    r.check("square roots of -1", (FieldElement(2), FieldElement(-2)), sqrt_minus_one())
    r.check("2*2 = -1", FieldElement(-1), FieldElement(2) * FieldElement(2))


@suite("pairing-table", "bra-on-ket table for the six elementary states")
def _pairing_table(r: SuiteResult) -> None:
    computed = projective.pairing_table()
    for i, row in enumerate(NAMES):
        for j, col in enumerate(NAMES):
            r.check(f"<{row}|{col}>", projective.PAIRING_TABLE[i][j], computed[i][j])


@suite("dual-derivation", "listed dual vectors")
def _duals(r: SuiteResult) -> None:
    for n in NAMES:
        r.check(f"dual of {n}", BRAS[n], projective.dual(KETS[n], KETS[PARTNER[n]]))


@suite("census", "state counts in P1, P3 and the Spekkens pair model")
def _census(r: SuiteResult) -> None:
    p1 = projective.enumerate_states(2)
    p3 = projective.enumerate_states(4)
    n_prod = sum(projective.is_product(s) for s in p3)
    r.check("|P1(F5)|", 6, len(p1))
    r.check("P1 equals named kets", {canonicalize(k) for k in KETS.values()}, set(p1))
    r.check("|P3(F5)|", 156, len(p3))
    r.check("P3 product", 36, n_prod)
    r.check("P3 entangled", 120, len(p3) - n_prod)
    products, entangled = spekkens.pair_states()
    r.check("Spekkens product pairs", 36, len(products))
    r.check("Spekkens entangled pairs", 24, len(entangled))
    r.check("Spekkens epistemic states", 6, len(spekkens.epistemic_states()))


@suite("eq15-identities", "c, d, e, f as a + k b")
def _basis_sums(r: SuiteResult) -> None:
    for name, lam in (("c", 1), ("d", -1), ("e", 2), ("f", -2)):
        r.check(f"|{name}> = |a> + ({lam})|b>", _k(name), _k("a") + lam * _k("b"))


# Each line: the left-hand sum, then two right-hand sums; all carry factor -2.
AABB_LINES = (
    ((1, ("a", "a"), ("b", "b")), (("c", "c"), ("d", "d")), (("e", "f"), ("f", "e"))),
    ((-1, ("a", "a"), ("b", "b")), (("c", "d"), ("d", "c")), (("e", "e"), ("f", "f"))),
    ((2, ("a", "a"), ("b", "b")), (("c", "e"), ("d", "f")), (("e", "c"), ("f", "d"))),
    ((-2, ("a", "a"), ("b", "b")), (("c", "f"), ("d", "e")), (("f", "c"), ("e", "d"))),
)


@suite("eq16-identities", "two-system superpositions of a*a and b*b")
def _two_system_sums(r: SuiteResult) -> None:
    for (lam, t1, t2), *rhs_list in AABB_LINES:
        lhs = _kk(*t1) + lam * _kk(*t2)
        for u, v in rhs_list:
            rhs = (-2) * (_kk(*u) + _kk(*v))
            r.check(f"a*a+({lam})b*b = -2({u[0]}*{u[1]}+{v[0]}*{v[1]})", lhs, rhs)


@suite("eq17-identities", "sums of a with multiples of c")
def _sums_with_c(r: SuiteResult) -> None:
    for lam, scale, name in ((1, 2, "f"), (-1, -1, "b"), (2, -2, "d"), (-2, -1, "e")):
        r.check(f"|a> + ({lam})|c> = ({scale})|{name}>", scale * _k(name), _k("a") + lam * _k("c"))


@suite("eq18-identities", "F5-induced sums of 1v2 and 1v3")
def _induced_sums(r: SuiteResult) -> None:
    e12, e13 = spekkens.EpistemicState(1, 2), spekkens.EpistemicState(1, 3)
    for variant, expected in ((1, (1, 4)), (2, (3, 4)), (3, (2, 4)), (4, (2, 3))):
        r.check(f"1v2 +{variant} 1v3", spekkens.EpistemicState(*expected), corr.extended_sum(e12, variant, e13))


@suite("eq7-sums", "coherent sums of 1v2 and 3v4")
def _disjoint_sums(r: SuiteResult) -> None:
    e12, e34 = spekkens.EpistemicState(1, 2), spekkens.EpistemicState(3, 4)
    for variant, expected in ((1, (1, 3)), (2, (2, 4)), (3, (2, 3)), (4, (1, 4))):
        exp = spekkens.EpistemicState(*expected)
        r.check(f"1v2 +{variant} 3v4 (Spekkens)", exp, spekkens.sum_disjoint(e12, e34, variant))
        r.check(f"1v2 +{variant} 3v4 (F5)", exp, corr.extended_sum(e12, variant, e34))


@suite("single-system-agreement", "Spekkens and F5 predictions agree on one system")
def _agreement(r: SuiteResult) -> None:
    for e in spekkens.epistemic_states():
        for name, o in spekkens.OBSERVABLES.items():
            r.check(
                f"{name} on {e}",
                spekkens.measure_epistemic(o, e),
                f5qm.measure_prob(f5qm.OBSERVABLES[name], corr.ket_of(e)),
            )


@suite("collapse-agreement", "epistemic collapse matches F5 eigenkets")
def _collapse_agreement(r: SuiteResult) -> None:
    for name, o in spekkens.OBSERVABLES.items():
        for outcome in f5qm.OUTCOMES:
            r.check(
                f"{name} {outcome:+d}",
                f5qm.eigenket(f5qm.OBSERVABLES[name], outcome),
                corr.ket_of(spekkens.collapse_epistemic(o, outcome)),
            )


@suite("f5-measurement", "single-system probability rule")
def _f5_measurement(r: SuiteResult) -> None:
    halves = {0, Fraction(1, 2), 1}
    for s in projective.enumerate_states(2):
        for name, o in f5qm.OBSERVABLES.items():
            d = f5qm.measure_prob(o, s)
            r.check(f"{name} on {s} in {{0,1/2,1}}", True, d.p_plus in halves and d.p_minus in halves)
            r.check(
                f"{name} on {s} scale invariant",
                True,
                all(f5qm.measure_prob(o, lam * s.ket) == d for lam in NONZERO),
            )
    for name, o in f5qm.OBSERVABLES.items():
        for outcome in f5qm.OUTCOMES:
            r.check(f"{name} certain on its {outcome:+d} eigenket", 1, f5qm.measure_prob(o, f5qm.eigenket(o, outcome))[outcome])


@suite("entangled-collapse", "entangled F5 states collapse to products with 1/2 each")
def _entangled_collapse(r: SuiteResult) -> None:
    for s in projective.enumerate_states(4):
        prof = f5qm.collapse_profile(s)
        entangled = not projective.is_product(s)
        for sub in f5qm.SUBSYSTEMS:
            for name in f5qm.OBSERVABLES:
                setting = prof.setting(sub, name)
                ok = sum(p for p, _ in setting.values()) == 1 and all(
                    projective.is_product(post) for _, post in setting.values()
                )
                if entangled:
                    ok = ok and sorted(p for p, _ in setting.values()) == [Fraction(1, 2)] * 2
                r.check(f"{s} sys{sub} {name}", True, ok)


@suite("entangled-as-sum", "entangled states as sums of two factor-free products")
def _entangled_as_sum(r: SuiteResult) -> None:
    for s in corr.entangled_f5_states():
        r.check(f"witness for {s}", True, corr.product_superposition_witness(s) is not None)


@suite("no-simultaneous-superposition", "no a*a/b*b superposition is also c*c/d*d and e*e/f*f")
def _no_simultaneous(r: SuiteResult) -> None:
    xs = {canonicalize(_kk("c", "c")), canonicalize(_kk("d", "d"))}
    ys = {canonicalize(_kk("e", "e")), canonicalize(_kk("f", "f"))}
    for alpha, beta in itertools.product(ELEMENTS, repeat=2):
        if not (alpha or beta):
            continue
        comps = [alpha * x + beta * y for x, y in zip(_kk("a", "a"), _kk("b", "b"))]
        prof = f5qm.collapse_profile(canonicalize(comps))
        for sub in f5qm.SUBSYSTEMS:
            both = prof.post_states(sub, "X") == xs and prof.post_states(sub, "Y") == ys
            r.check(f"({alpha})a*a+({beta})b*b sys{sub}", False, both)


@suite("s4-covariance", "relabelling symmetry of the toy model")
def _s4(r: SuiteResult) -> None:
    for perm in itertools.permutations(spekkens.ONTIC_STATES):
        images = {spekkens.relabel(perm, e) for e in spekkens.epistemic_states()}
        r.check(f"{perm} permutes epistemic states", set(spekkens.epistemic_states()), images)
        for o in spekkens.OBSERVABLES.values():
            for e in spekkens.epistemic_states():
                r.check(
                    f"{perm} {o} {e}",
                    spekkens.measure_epistemic(o, e),
                    spekkens.measure_epistemic(spekkens.relabel(perm, o), spekkens.relabel(perm, e)),
                )


@suite("spekkens-dynamics", "repeatability, disturbance and pair collapse")
def _dynamics(r: SuiteResult) -> None:
    obs = list(spekkens.OBSERVABLES.values())
    for o in obs:
        r.check(f"{o} twice agrees", 1, spekkens.repeat_agreement(o))
        for e in spekkens.epistemic_states():
            for outcome in f5qm.OUTCOMES:
                if spekkens.measure_epistemic(o, e)[outcome]:
                    post = spekkens.collapse_epistemic(o, outcome)
                    r.check(f"{o} on {e} then {o}", 1, spekkens.measure_epistemic(o, post)[outcome])
    for o, o2 in itertools.permutations(obs, 2):
        for outcome in f5qm.OUTCOMES:
            start = o2.eigenstate(outcome)
            preds = spekkens.sequence_prediction(start, [o, o2])
            half = f5qm.OutcomeDistribution(Fraction(1, 2), Fraction(1, 2))
            r.check(f"{o} disturbs {o2} eigenstate {start}", half, preds[1])
    products, entangled = spekkens.pair_states()
    for st in products + entangled:
        for sub in (1, 2):
            for o in obs:
                res = spekkens.measure_pair(st, sub, o)
                ok = sum(p for _, p, _ in res) == 1 and all(isinstance(c, spekkens.Product) for *_, c in res)
                if isinstance(st, spekkens.Entangled):
                    ok = ok and [p for _, p, _ in res] == [Fraction(1, 2)] * 2
                r.check(f"{st} sys{sub} {o}", True, ok)


@suite("monte-carlo", "seeded simulation of the measurement-disturbance rule")
def _monte_carlo(r: SuiteResult) -> None:
    e12 = spekkens.EpistemicState(1, 2)
    res = spekkens.simulate_sequence(e12, [spekkens.X, spekkens.Z], MONTE_CARLO_TRIALS, MONTE_CARLO_SEED)
    freq = res.frequencies(1)
    r.check("Z after X within 0.01 of 1/2", True, all(abs(f - 0.5) <= MONTE_CARLO_TOLERANCE for f in freq.values()))
    for o in spekkens.OBSERVABLES.values():
        rep = spekkens.simulate_sequence(e12, [o, o], 10_000, MONTE_CARLO_SEED)
        r.check(f"{o} repeated", 1.0, rep.repeat_frequency(1))
    rng = random.Random(MONTE_CARLO_SEED)
    obs = list(spekkens.OBSERVABLES.values())
    states = spekkens.epistemic_states()
    ok = True
    for _ in range(BALANCE_SEQUENCES):
        seq = [rng.choice(obs) for _ in range(rng.randint(1, 8))]
        try:
            spekkens.run_trial(rng.choice(states), seq, rng)
        except AssertionError:
            ok = False
            break
    r.check(f"knowledge balance over {BALANCE_SEQUENCES} random sequences", True, ok)


@suite("compare-sums", "disjoint coherent sums vs F5-induced sums")
def _compare_sums(r: SuiteResult) -> None:
    rows = corr.compare_sum_definitions()
    e12, e34 = spekkens.EpistemicState(1, 2), spekkens.EpistemicState(3, 4)
    e13, e24 = spekkens.EpistemicState(1, 3), spekkens.EpistemicState(2, 4)
    r.check("1v2,3v4 agree on all variants", True, all(c.agree for c in rows if (c.left, c.right) == (e12, e34)))
    r.check("1v3,2v4 disagree somewhere", True, any(not c.agree for c in rows if (c.left, c.right) == (e13, e24)))
    for c in rows:
        if not c.agree:
            r.notes.append(f"{c.left} +{c.variant} {c.right}: Spekkens {c.disjoint_sum}, F5 {c.f5_sum}")


@suite("classification", "12 of 24 entangled epistemic states have F5 analogs")
def _classification(r: SuiteResult) -> None:
    report = corr.classify_all()
    r.check("matched", 12, len(report.matched))
    r.check("unmatched", 12, len(report.unmatched))
    r.check("perm:1234 matched", False, report.record("1234").matched)
    r.check("perm:2134 has [1,0,0,2]", True, canonicalize((1, 0, 0, 2)) in report.record("2134").analogs)
    r.check("analogs are entangled", True, all(not projective.is_product(s) for rec in report.records for s in rec.analogs))
    summary = report.summary()
    r.notes.append(f"matched set equals the odd permutations: {summary['matched_are_odd_permutations']}")
    r.notes.append(f"analogs per matched permutation: {summary['analogs_per_matched']}")
    r.notes.append(f"analog lists shared between permutations: {summary['analog_overlaps']}")


@suite("joint-vs-collapse", "marginals of the joint rule vs the collapse rule", informational=True)
def _joint_vs_collapse(r: SuiteResult) -> None:
    cases = list(f5qm.marginal_disagreements())
    products = [s for s in projective.enumerate_states(4) if projective.is_product(s)]
    r.check("product states: no disagreement", 0, len(list(f5qm.marginal_disagreements(products))))
    r.notes.append(f"{len(cases)} (state, subsystem, observable, other-observable) disagreements")
    r.notes.append(f"{len({c[0] for c in cases})} distinct states affected")


def run_all(names=None) -> list[SuiteResult]:
    names = list(SUITES) if names is None else names
    return [SUITES[n]() for n in names]
