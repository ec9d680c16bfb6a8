"""Verification suites and their machine-readable report.

Every check returns a deviation. Exact checks compare against the literal
tolerance ``"exact"`` and pass only on exact zero; float checks compare
against the run tolerance.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

import numpy as np

from ._version import __version__
from .clifford import FULL_SET, basis_matrix, basis_rank, basis_table, canonical_product, gamma, identity_checks
from .coupling import (
    COMPOSITES,
    INSTANCE_MAPS_EXPECTED,
    DiracInstance,
    build_solution,
    compose_maps,
    coupled_residual,
    derive_instance_map,
    instance_map,
    potential_rule_equivalence,
    random_instance,
    transport_check,
)
from .discrete import (
    TABLE_EXPECTED,
    IntertwinerConstraint,
    apply,
    commutator_deviation,
    compose,
    default_samples,
    expected_row,
    lightcone_check,
    make_C,
    make_P,
    make_Q,
    make_T,
    operator,
    random_test_function,
    solve_intertwiner,
)
from .gammaexpr import (
    Generator,
    Product,
    canonicalize,
    eval_exact,
    format_expr,
    parse,
)
from .planewave import (
    PlaneWaveState,
    bar_product,
    charge_conjugate,
    dirac_residual,
    eval_psi,
    momentum_residual,
    ptq_vs_c_check,
    random_momentum,
    random_points,
    random_spinor,
    sheet_identify,
    spinor_neg,
    spinor_pos,
)
from .scalars import ExactMatrix, I_UNIT, ONE

__all__ = [
    "CheckRecord",
    "Report",
    "SUITES",
    "REPORT_SCHEMA",
    "run_suite",
    "DEFAULT_TOL",
    "EXPR_CORPUS",
]

DEFAULT_TOL = 1e-12

Deviation = Union[float, str]

REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "seed", "version", "checks", "summary"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "seed": {"type": "integer"},
        "version": {"type": "string"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "paper_ref", "status", "deviation", "tolerance", "runtime_ms"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "paper_ref": {"type": "string"},
                    "status": {"enum": ["pass", "fail"]},
                    "deviation": {"oneOf": [{"type": "number", "minimum": 0}, {"const": "exact-zero"}]},
                    "tolerance": {"oneOf": [{"type": "number"}, {"const": "exact"}]},
                    "runtime_ms": {"type": "integer", "minimum": 0},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["pass", "fail"],
            "additionalProperties": False,
            "properties": {"pass": {"type": "integer"}, "fail": {"type": "integer"}},
        },
    },
}


@dataclass(frozen=True)
class CheckRecord:
    id: str
    paper_ref: str
    status: str
    deviation: Deviation
    tolerance: Union[float, str]
    runtime_ms: int

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "runtime_ms": self.runtime_ms,
        }


@dataclass
class Report:
    suite: str
    seed: int
    version: str = __version__
    checks: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        passed = sum(1 for c in self.checks if c.passed)
        return {"pass": passed, "fail": len(self.checks) - passed}

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "version": self.version,
            "checks": [c.to_json() for c in self.checks],
            "summary": self.summary,
        }

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  seed {self.seed}  version {self.version}"]
        for c in self.checks:
            dev = c.deviation if isinstance(c.deviation, str) else f"{c.deviation:.3e}"
            tol = c.tolerance if isinstance(c.tolerance, str) else f"{c.tolerance:.1e}"
            lines.append(f"  [{c.status.upper():4}] {c.id:<40} dev={dev:<12} tol={tol}  ({c.paper_ref})")
        s = self.summary
        lines.append(f"{s['pass']} passed, {s['fail']} failed")
        return "\n".join(lines)


def _record(check_id: str, ref: str, exact: bool, fn: Callable, tol: float) -> CheckRecord:
    start = time.perf_counter()
    dev = fn()
    ms = int(round((time.perf_counter() - start) * 1000))
    if exact:
        dev = Fraction(dev)
        if dev == 0:
            return CheckRecord(check_id, ref, "pass", "exact-zero", "exact", ms)
        return CheckRecord(check_id, ref, "fail", float(dev), "exact", ms)
    dev = float(dev)
    status = "pass" if np.isfinite(dev) and dev <= tol else "fail"
    return CheckRecord(check_id, ref, status, dev, tol, ms)


def _flag(ok: bool) -> int:
    return 0 if ok else 1


# algebra -------------------------------------------------------------------

EXPR_CORPUS = [
    "I",
    "i",
    "g0",
    "-g2",
    "i*g0",
    "-i*g0*g1*g3",
    "-1*g0*g2",
    "g0*g2*g0",
    "-i*g0*g1*g2*g3",
    "g5*g5",
    "star(g2)",
    "transpose(g1)",
    "dagger(g1)",
    "dagger(i*g0*g5)",
    "-(g0*g1)",
    "-(-g3)",
    "2*g1*(g2*g3)",
    "star(transpose(-i*g2))",
    "(g1)*(g2)*i",
    "3*-g5",
]

_ALPHABET = (0, 1, 2, 3, 5)


def _words(max_len: int = 3):
    for n in range(max_len + 1):
        yield from itertools.product(_ALPHABET, repeat=n)


def _direct_product(word) -> ExactMatrix:
    out = ExactMatrix.identity(4)
    for s in word:
        out = out @ gamma(s)
    return out


def canonical_product_deviation() -> Fraction:
    worst = Fraction(0)
    for word in _words():
        phase, key = canonical_product(word)
        worst = max(worst, (basis_matrix(key).scale(phase) - _direct_product(word)).max_part())
    return worst


def canonicalize_deviation() -> Fraction:
    worst = Fraction(0)
    for word in _words():
        expr = Product(tuple(Generator(s) for s in word))
        scale, key = canonicalize(expr)
        worst = max(worst, (basis_matrix(key).scale(scale) - _direct_product(word)).max_part())
    return worst


def roundtrip_deviation(corpus=EXPR_CORPUS) -> Fraction:
    worst = Fraction(0)
    for text in corpus:
        e = parse(text)
        worst = max(worst, (eval_exact(parse(format_expr(e))) - eval_exact(e)).max_part())
    return worst


def _random_op(rng: random.Random):
    ops = [make_P(), make_T(), make_C(), make_Q()]
    return rng.choice(ops)


def _algebra_checks(seed: int, tol: float):
    rng = random.Random(seed)
    checks = []
    for name, value in identity_checks().items():
        checks.append((f"clifford.{name}", "gamma identity group", True, lambda v=value: v))
    checks += [
        (
            "clifford.g5_block_form",
            "g5 = -i g0 g1 g2 g3, off-diagonal -I blocks",
            True,
            lambda: ((gamma(0) @ gamma(1) @ gamma(2) @ gamma(3)).scale(-I_UNIT) - gamma(5)).max_part(),
        ),
        ("clifford.canonical_product", "products of generators", True, canonical_product_deviation),
        ("clifford.basis_rank", "16-element basis spans 4x4", True, lambda: 16 - basis_rank()),
        (
            "clifford.traceless",
            "non-identity basis elements are traceless",
            True,
            lambda: max(el.matrix.trace().max_part() for el in basis_table()[1:]),
        ),
        ("expr.canonicalize", "monomials of length <= 3", True, canonicalize_deviation),
        ("expr.roundtrip", "format/parse round trip", True, roundtrip_deviation),
    ]

    fns = [random_test_function(rng) for _ in range(100)]
    samples = default_samples(rng)
    ptq = operator("PTQ")
    checks.append(
        (
            "discrete.commutator_C_PTQ",
            "[C, PTQ] psi = 0",
            True,
            lambda: max(commutator_deviation(make_C(), ptq, f, samples) for f in fns),
        )
    )

    def associativity():
        bad = 0
        for _ in range(30):
            a, b, c = (_random_op(rng) for _ in range(3))
            bad += compose(a, compose(b, c)) != compose(compose(a, b), c)
        return bad

    def composition_action():
        bad = 0
        for f in fns[:30]:
            a, b = _random_op(rng), _random_op(rng)
            bad += apply(compose(a, b), f) != apply(a, apply(b, f))
        return bad

    def squares():
        bad = 0
        for f in fns[:30]:
            minus_f = (f - f) - f
            bad += apply(make_P(), apply(make_P(), f)) != minus_f
            bad += apply(make_C(), apply(make_C(), f)) != f
        return bad

    checks += [
        ("discrete.associativity", "composition of operators", True, associativity),
        ("discrete.compose_action", "(O1 O2) f = O1 (O2 f)", True, composition_action),
        ("discrete.squares", "P^2 = -1, C^2 = 1", True, squares),
    ]

    pts = [
        (
            Fraction(rng.randint(-50, 50), rng.randint(1, 9)),
            tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(3)),
            Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 9)),
        )
        for _ in range(100)
    ]

    def lightcone():
        return max(abs(a - b) for a, b in (lightcone_check(t, x, c) for t, x, c in pts))

    checks.append(("lightcone.c_inversion", "c^2 t^2 - x^2 = 0 invariant under c -> -c", True, lightcone))
    return checks


# table ------------------------------------------------------------------------


def _table_checks(seed: int, tol: float):
    checks = []
    for name, (text, anti, signs) in TABLE_EXPECTED.items():
        def dev(name=name):
            op = operator(name)
            exp = expected_row(name)
            mat = (op.matrix - exp.matrix).max_part()
            return mat + _flag(op.antilinear == exp.antilinear) + _flag(op.arg_signs == exp.arg_signs)

        kind = "antilinear" if anti else "linear"
        checks.append((f"table.{name}", f"{name}: {text}, {kind}, args {signs}", True, dev))
    return checks


# intertwiners --------------------------------------------------------------------


def _solution_set(signs: str, mode: str) -> set:
    return set(solve_intertwiner(IntertwinerConstraint.from_string(signs, mode)))


def _family(key) -> set:
    return {(ph, tuple(key)) for ph in (ONE, -ONE, I_UNIT, -I_UNIT)}


def _intertwiner_checks(seed: int, tol: float):
    cases = [
        ("intertwiner.Q", "U g^a U^-1 = -g^a gives lambda g5", "----", "plain", FULL_SET, None),
        ("intertwiner.P", "U g0 U^-1 = g0, U g U^-1 = -g", "+---", "plain", (0,), (I_UNIT, (0,))),
        ("intertwiner.T", "U g0^T U^-1 = g0, U g^T U^-1 = -g", "+---", "transpose", (0, 1, 3), (-I_UNIT, (0, 1, 3))),
        ("intertwiner.T_combined", "M g^a* M^-1 = (g0, -g)", "+---", "conjugate", (1, 3), (-I_UNIT, (1, 3))),
        ("intertwiner.C_combined", "M g^a* M^-1 = -g^a", "----", "conjugate", (2,), (ONE, (2,))),
        ("intertwiner.identity", "identity commutes with all", "++++", "plain", (), None),
    ]
    checks = []
    for cid, ref, signs, mode, key, member in cases:
        def dev(signs=signs, mode=mode, key=key, member=member):
            found = _solution_set(signs, mode)
            bad = len(found ^ _family(key))
            if member is not None:
                bad += _flag(member in found)
            return bad

        checks.append((cid, ref, True, dev))
    checks.append(
        ("intertwiner.Q_size", "four solutions lambda in {+-1, +-i}", True, lambda: abs(len(_solution_set("----", "plain")) - 4))
    )
    return checks


# plane waves ------------------------------------------------------------------------


def _plane_inputs(seed: int, n: int = 100, m: float = 1.0, c: float = 3.0, hbar: float = 1.0):
    rng = np.random.default_rng(seed)
    states = []
    for sheet in (c, -c):
        for i in range(n):
            p = np.zeros(3) if i == 0 else random_momentum(rng, m, sheet)
            states.append(PlaneWaveState("positive", p, random_spinor(rng), m, sheet, hbar))
    return states, random_points(rng, 10)


def _planewave_checks(seed: int, tol: float):
    states, pts = _plane_inputs(seed)

    def mass_shell():
        return max(abs(s.p0**2 - np.dot(s.p, s.p) - s.mc**2) / s.p0**2 for s in states)

    def norm_pos():
        return max(abs(bar_product(spinor_pos(s.p, s.w, s.m, s.c)) - 2 * s.mc) / abs(2 * s.mc) for s in states)

    def norm_neg():
        return max(abs(bar_product(spinor_neg(s.p, s.w, s.m, s.c)) + 2 * s.mc) / abs(2 * s.mc) for s in states)

    def residual_pos():
        return max(momentum_residual(spinor_pos(s.p, s.w, s.m, s.c), s.p, s.m, s.c, 1) / s.p0 for s in states)

    def residual_neg():
        return max(momentum_residual(spinor_neg(s.p, s.w, s.m, s.c), s.p, s.m, s.c, -1) / s.p0 for s in states)

    def free_pde():
        return max(dirac_residual(s.wave(), s.mc, s.hbar, x0, x) / s.p0 for s in states[::10] for x0, x in pts)

    def c_pointwise():
        worst = 0.0
        for s in states:
            neg = charge_conjugate(s)  # negative state with w' = -sigma_y w*
            image = make_C().act(neg.family())
            for x0, x in pts:
                ref = eval_psi(s, x0, x)
                worst = max(worst, np.linalg.norm(image(x0, x, s.c) - ref) / np.linalg.norm(ref))
        return worst

    def sheet():
        worst = 0.0
        for s in states:
            t = sheet_identify(s)
            for x0, x in pts:
                worst = max(worst, float(np.max(np.abs(eval_psi(t, x0, x) - eval_psi(s, x0, x)))))
        return worst

    def ptq_image_shell():
        ptq = operator("PTQ")
        return max(
            dirac_residual(s.wave().transformed(ptq), -s.mc, s.hbar, x0, x) / s.p0
            for s in states[::10]
            for x0, x in pts
        )

    memo = {}

    def comparisons():
        if "r" not in memo:
            memo["r"] = [ptq_vs_c_check(s, pts, tol) for s in states]
        return memo["r"]

    return [
        ("planewave.mass_shell", "(p0)^2 - p^2 = (mc)^2", False, mass_shell),
        ("planewave.norm_positive", "ubar u = 2mc", False, norm_pos),
        ("planewave.norm_negative", "ubar u = -2mc", False, norm_neg),
        ("planewave.residual_positive", "(g p - mc) u = 0", False, residual_pos),
        ("planewave.residual_negative", "(g p + mc) u = 0", False, residual_neg),
        ("planewave.free_equation", "free equation at sample points", False, free_pde),
        ("planewave.c_maps_negative_to_positive", "C psi(-p,-s,-E) = psi(p,s,E)", False, c_pointwise),
        ("planewave.sheet_identification", "E/c = (-E)/(-c), mc = (-m)(-c)", False, sheet),
        ("planewave.ptq_image_flipped_mass", "PTQ image solves the c -> -c equation", False, ptq_image_shell),
        ("planewave.c_vs_ptq_best_phase", "C psi = lambda PTQ psi, best lambda", False, lambda: max(r.deviation for r in comparisons())),
        ("planewave.c_vs_ptq_minus_one", "C psi = -PTQ psi", False, lambda: max(r.phase_deviations["-1"] for r in comparisons())),
    ]


# coupling --------------------------------------------------------------------


def _em_inputs(seed: int, n: int = 20):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        inst = random_instance(rng)
        pi = random_momentum(rng, float(inst.m), float(inst.c))
        sol = build_solution(inst, pi, random_spinor(rng))
        out.append((inst, sol))
    return out, random_points(rng, 5)


def _em_checks(seed: int, tol: float):
    pairs, pts = _em_inputs(seed)
    checks = [
        (
            "em.solution_residual",
            "(g p - mc) psi = (e/c) g A psi",
            False,
            lambda: max(coupled_residual(inst, sol, pts) / sol.pi0 for inst, sol in pairs),
        )
    ]
    for name in COMPOSITES:
        checks.append(
            (
                f"em.transport_{name}",
                f"{name} maps solutions to solutions of the mapped equation",
                False,
                lambda name=name: max(transport_check(inst, name, sol, pts) / sol.pi0 for inst, sol in pairs),
            )
        )

    def map_composition():
        composed = compose_maps(instance_map("P"), instance_map("T"), instance_map("Q"))
        bad = _flag(composed.same_action(INSTANCE_MAPS_EXPECTED["PTQ"]))
        bad += _flag(composed.same_action(derive_instance_map(operator("PTQ"))))
        for name in ("P", "T", "C", "Q"):
            bad += _flag(instance_map(name).same_action(INSTANCE_MAPS_EXPECTED[name]))
        return bad

    def potential_rule():
        bad = 0
        for inst, _ in pairs:
            bad += _flag(potential_rule_equivalence(inst))
            bad += _flag(potential_rule_equivalence(instance_map("PTQ").apply(inst)))
        return bad

    def free_limit():
        rng = np.random.default_rng(seed + 1)
        worst = 0.0
        for _ in range(10):
            c = 3.0 if rng.integers(0, 2) else -3.0
            state = PlaneWaveState("positive", random_momentum(rng, 1.0, c), random_spinor(rng), 1.0, c)
            inst = DiracInstance(m=1, c=c, e=0, hbar=1)
            sol = build_solution(inst, state.p, state.w)
            image_a = sol.wave().transformed(operator("PTQ"))
            image_b = state.wave().transformed(operator("PTQ"))
            for x0, x in pts:
                worst = max(worst, np.linalg.norm(image_a(x0, x) - image_b(x0, x)))
            worst = max(worst, transport_check(inst, "PTQ", sol, pts) / state.p0)
        return worst

    checks += [
        ("em.map_composition", "P T Q on (m, c, e, A) equals PTQ", True, map_composition),
        ("em.potential_rule", "QPT(A) = (-A0, -A) read as charge flip", True, potential_rule),
        ("em.free_limit", "A = 0 reproduces the free PTQ image", False, free_limit),
    ]
    return checks


SUITES = {
    "algebra": _algebra_checks,
    "table": _table_checks,
    "intertwiners": _intertwiner_checks,
    "planewave": _planewave_checks,
    "em": _em_checks,
}


def run_suite(suite: str = "all", seed: int = 0, tol: float = DEFAULT_TOL) -> Report:
    if suite != "all" and suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    names = list(SUITES) if suite == "all" else [suite]
    report = Report(suite=suite, seed=seed)
    for name in names:
        for cid, ref, exact, fn in SUITES[name](seed, tol):
            report.checks.append(_record(cid, ref, exact, fn, tol))
    return report
