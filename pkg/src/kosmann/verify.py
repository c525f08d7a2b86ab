"""Randomized verification suites over every library invariant.

Each suite draws seeded samples, tracks the worst residual, and reports it
against a fixed tolerance.  ``comparison`` is "<=" for agreement bounds and
">=" for witness suites that must exhibit a LARGE residual (non-Killing
witnesses, the curved commutator defect).

``run_verification`` executes every applicable suite: the algebra suites
always, the geometry suites on the builtin fixture set or on one supplied
geometry.  A sample count of 0 skips everything (empty summary, passing).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .clifford import gamma_matrices, spin_algebra_map
from .errors import PreconditionError
from .expr import eval_dual, fd_gradient
from .fixtures import (
    Fixture,
    builtin_fixtures,
    curved_defect_witness,
    flat_fixture,
    minkowski_killing_fields,
    non_killing_witnesses,
    random_density_field,
    random_expression,
    random_polynomial,
    random_spinor_field,
    random_vector_field,
)
from .geometry import (
    GeometrySpec,
    SpinorFieldSpec,
    VectorFieldSpec,
    covariant_derivative_covector,
    vector_field_at,
)
from .jets import (
    STANDARD_GROUPS,
    action_tau,
    action_v,
    action_vertical,
    multiply_oracle,
    random_element,
    w11_identity,
    w11_inverse,
    w11_multiply,
)
from .liealg import (
    Signature,
    decompose_gl,
    adjoint_action,
    eta_adjoint,
    eta_matrix,
    random_so_element,
)
from .liederiv import (
    commutator_defect,
    flow_lie_density_oracle,
    flow_lie_spinor_oracle,
    killing_residual,
    lichnerowicz,
    lie_density,
    lie_spinor_covariant,
    lie_spinor_kosmann,
    lie_tensor,
    metric_tensor_field,
    reductive_metric_lie,
    spinor_value_at,
)
from .expr import Binary, Literal, Node


@dataclass(frozen=True)
class SuiteResult:
    name: str
    samples: int
    max_residual: float
    tolerance: float
    comparison: str  # "<=" (agreement) or ">=" (witness must exceed)
    passed: bool


def _result(name: str, samples: int, residual: float, tolerance: float,
            comparison: str = "<=") -> SuiteResult:
    if comparison == "<=":
        passed = residual <= tolerance
    else:
        passed = residual >= tolerance
    return SuiteResult(
        name=name,
        samples=samples,
        max_residual=float(residual),
        tolerance=tolerance,
        comparison=comparison,
        passed=passed,
    )


def _all_signatures(max_dim: int, min_dim: int = 1) -> list[Signature]:
    return [
        Signature(p, m - p) for m in range(min_dim, max_dim + 1) for p in range(m, -1, -1)
    ]


# ---------------------------------------------------------------------------
# Algebra suites (geometry-independent)
# ---------------------------------------------------------------------------


def suite_reductive_reconstruction(rng: np.random.Generator, n: int = 1000) -> SuiteResult:
    signatures = _all_signatures(4)
    worst = 0.0
    for i in range(n):
        sig = signatures[i % len(signatures)]
        mat = rng.uniform(-2.0, 2.0, size=(sig.dim, sig.dim))
        split = decompose_gl(mat, sig)
        worst = max(worst, float(np.max(np.abs(split.reconstruct() - mat))))
    return _result("reductive-reconstruction", n, worst, 1e-12)


def suite_reductive_membership(rng: np.random.Generator, n: int = 1000) -> SuiteResult:
    signatures = _all_signatures(4)
    worst = 0.0
    for i in range(n):
        sig = signatures[i % len(signatures)]
        mat = rng.uniform(-2.0, 2.0, size=(sig.dim, sig.dim))
        split = decompose_gl(mat, sig)
        worst = max(
            worst,
            float(np.max(np.abs(eta_adjoint(split.antisym, sig) + split.antisym))),
            float(np.max(np.abs(eta_adjoint(split.sym_traceless, sig) - split.sym_traceless))),
            abs(float(np.trace(split.sym_traceless))),
        )
    return _result("reductive-membership", n, worst, 1e-12)


def suite_reductive_ad_invariance(rng: np.random.Generator, n: int = 1000) -> SuiteResult:
    signatures = _all_signatures(4)
    worst = 0.0
    for i in range(n):
        sig = signatures[i % len(signatures)]
        mat = rng.uniform(-2.0, 2.0, size=(sig.dim, sig.dim))
        o = random_so_element(sig, seed=int(rng.integers(1 << 31)), scale=0.7)
        direct = decompose_gl(adjoint_action(o, mat), sig)
        moved = decompose_gl(mat, sig)
        worst = max(
            worst,
            float(np.max(np.abs(direct.antisym - adjoint_action(o, moved.antisym)))),
            float(
                np.max(np.abs(direct.sym_traceless - adjoint_action(o, moved.sym_traceless)))
            ),
            abs(direct.trace_coeff - moved.trace_coeff),
        )
    return _result("reductive-ad-invariance", n, worst, 1e-9)


def suite_clifford_relations(rng: np.random.Generator, n: int = 0) -> SuiteResult:
    signatures = _all_signatures(5)
    worst = 0.0
    for sig in signatures:
        rep = gamma_matrices(sig)
        eta = eta_matrix(sig)
        eye = np.eye(rep.n_spinor)
        for a in range(sig.dim):
            for b in range(sig.dim):
                anti = rep.gammas[a] @ rep.gammas[b] + rep.gammas[b] @ rep.gammas[a]
                worst = max(worst, float(np.max(np.abs(anti - 2.0 * eta[a, b] * eye))))
    return _result("clifford-relations", len(signatures), worst, 1e-12)


def suite_clifford_homomorphism(rng: np.random.Generator, n: int = 200) -> SuiteResult:
    signatures = [s for s in _all_signatures(5, min_dim=2)]
    worst = 0.0
    for i in range(n):
        sig = signatures[i % len(signatures)]
        rep = gamma_matrices(sig)
        eta = eta_matrix(sig)
        m = sig.dim
        raw_a, raw_b = rng.uniform(-1.0, 1.0, size=(2, m, m))
        low_a = 0.5 * (raw_a - raw_a.T)
        low_b = 0.5 * (raw_b - raw_b.T)
        # so(p,q) bracket acts through the mixed (one index up) form
        mixed_bracket = (eta @ low_a) @ (eta @ low_b) - (eta @ low_b) @ (eta @ low_a)
        lhs = spin_algebra_map(rep, eta @ mixed_bracket)
        sa, sb = spin_algebra_map(rep, low_a), spin_algebra_map(rep, low_b)
        worst = max(worst, float(np.max(np.abs(lhs - (sa @ sb - sb @ sa)))))
    return _result("clifford-homomorphism", n, worst, 1e-10)


def suite_jet_axioms(rng: np.random.Generator, n: int = 500) -> SuiteResult:
    worst = 0.0
    groups = list(STANDARD_GROUPS.values())
    m = 2
    per_group = max(1, n // len(groups))
    for desc in groups:
        identity = w11_identity(m, desc)
        for _ in range(per_group):
            g1 = random_element(desc, m, rng)
            g2 = random_element(desc, m, rng)
            g3 = random_element(desc, m, rng)
            assoc_l = w11_multiply(w11_multiply(g1, g2), g3)
            assoc_r = w11_multiply(g1, w11_multiply(g2, g3))
            worst = max(worst, _element_distance(assoc_l, assoc_r))
            worst = max(worst, _element_distance(w11_multiply(g1, identity), g1))
            worst = max(worst, _element_distance(w11_multiply(identity, g1), g1))
            inv = w11_inverse(g1)
            worst = max(worst, _element_distance(w11_multiply(g1, inv), identity))
            worst = max(worst, _element_distance(w11_multiply(inv, g1), identity))
    return _result("jet-group-axioms", per_group * len(groups), worst, 1e-8)


def _element_distance(g1, g2) -> float:
    parts = [np.max(np.abs(g1.alpha - g2.alpha)), np.max(np.abs(g1.a - g2.a))]
    parts += [np.max(np.abs(t1 - t2)) for t1, t2 in zip(g1.theta, g2.theta)]
    return float(max(parts))


def suite_jet_oracle(rng: np.random.Generator, n: int = 100) -> SuiteResult:
    worst = 0.0
    groups = list(STANDARD_GROUPS.values())
    m = 2
    per_group = max(1, n // len(groups))
    for desc in groups:
        for _ in range(per_group):
            g1 = random_element(desc, m, rng)
            g2 = random_element(desc, m, rng)
            product = w11_multiply(g1, g2)
            alpha, a, theta = multiply_oracle(g1, g2)
            worst = max(worst, float(np.max(np.abs(product.alpha - alpha))))
            worst = max(worst, float(np.max(np.abs(product.a - a))))
            for t_formula, t_oracle in zip(product.theta, theta):
                worst = max(worst, float(np.max(np.abs(t_formula - t_oracle))))
    return _result("jet-oracle", per_group * len(groups), worst, 1e-6)


def suite_jet_actions(rng: np.random.Generator, n: int = 200) -> SuiteResult:
    """Left-action axiom for all three actions, restriction identities exact."""
    worst = 0.0
    groups = list(STANDARD_GROUPS.values())
    m = 2
    per_group = max(1, n // len(groups))
    for desc in groups:
        for _ in range(per_group):
            g1 = random_element(desc, m, rng)
            g2 = random_element(desc, m, rng)
            nu = rng.uniform(-1.0, 1.0, size=m)
            v = desc.random_algebra(rng)
            # action axiom for the full action
            nu_a, v_a = action_v(w11_multiply(g1, g2), nu, v)
            nu_b, v_b = action_v(g1, *action_v(g2, nu, v))
            worst = max(worst, float(np.max(np.abs(nu_a - nu_b))),
                        float(np.max(np.abs(v_a - v_b))))
            # vertical action: restriction of the full action at nu = 0
            vert = action_vertical(g1, v)
            _, v_zero = action_v(g1, np.zeros(m), v)
            worst = max(worst, float(np.max(np.abs(vert - v_zero))))
            # vertical action ignores theta entirely (exact)
            perturbed = _with_theta(g1, tuple(desc.random_algebra(rng) for _ in range(m)))
            worst = max(worst, float(np.max(np.abs(action_vertical(perturbed, v) - vert))))
            # kernel elements: the full action coincides with the tau action
            kernel = _with_identity_a(g1, desc)
            nu_k, v_k = action_v(kernel, nu, v)
            nu_t, v_t = action_tau(kernel, nu, v)
            worst = max(worst, float(np.max(np.abs(nu_k - nu_t))),
                        float(np.max(np.abs(v_k - v_t))))
    return _result("jet-actions", per_group * len(groups), worst, 1e-8)


def _with_theta(g, theta):
    from .jets import JetGroupElement

    return JetGroupElement(group=g.group, alpha=g.alpha, a=g.a, theta=theta)


def _with_identity_a(g, desc):
    from .jets import JetGroupElement

    return JetGroupElement(group=desc, alpha=g.alpha, a=np.eye(desc.n), theta=g.theta)


def suite_ad_vs_fd(rng: np.random.Generator, n: int = 500) -> SuiteResult:
    """Dual-number gradients vs central differences on well-conditioned draws.

    Draws whose value or gradient is non-finite or huge are redrawn (the
    comparison itself is never consulted when filtering).
    """
    worst = 0.0
    m = 3
    accepted = 0
    while accepted < n:
        node = random_expression(rng, m)
        point = rng.uniform(-2.0, 2.0, size=m)
        try:
            dual = eval_dual(node, point)
            if not (np.isfinite(dual.value) and np.all(np.isfinite(dual.grad))):
                continue
            if abs(dual.value) > 1e4 or float(np.max(np.abs(dual.grad))) > 1e4:
                continue
            fd = fd_gradient(node, point)
        except (PreconditionError, OverflowError):
            continue
        if not np.all(np.isfinite(fd)):
            continue
        scale = max(1.0, float(np.max(np.abs(dual.grad))))
        worst = max(worst, float(np.max(np.abs(dual.grad - fd))) / scale)
        accepted += 1
    return _result("ad-vs-fd-gradients", n, worst, 1e-5)


# ---------------------------------------------------------------------------
# Geometry suites
# ---------------------------------------------------------------------------


def _draw(fixtures: list[Fixture], rng: np.random.Generator, i: int):
    fixture = fixtures[i % len(fixtures)]
    return fixture, fixture.sample_point(rng)


def suite_recast_equality(rng: np.random.Generator, n: int = 200,
                          fixtures: list[Fixture] | None = None) -> SuiteResult:
    fixtures = fixtures if fixtures is not None else builtin_fixtures()
    worst = 0.0
    for i in range(n):
        fixture, point = _draw(fixtures, rng, i)
        m = fixture.spec.dim
        xi = random_vector_field(rng, m)
        psi = random_spinor_field(rng, m)
        a = lie_spinor_kosmann(fixture.spec, xi, psi, point)
        b = lie_spinor_covariant(fixture.spec, xi, psi, point)
        worst = max(worst, float(np.max(np.abs(a - b))))
    return _result("spinor-recast-equality", n, worst, 1e-8)


def suite_reductive_metric_lie(rng: np.random.Generator, n: int = 200,
                               fixtures: list[Fixture] | None = None) -> SuiteResult:
    fixtures = fixtures if fixtures is not None else builtin_fixtures()
    worst = 0.0
    for i in range(n):
        fixture, point = _draw(fixtures, rng, i)
        xi = random_vector_field(rng, fixture.spec.dim)
        worst = max(worst, float(np.max(np.abs(reductive_metric_lie(fixture.spec, xi, point)))))
    return _result("reductive-metric-lie", n, worst, 1e-8)


def suite_natural_metric_identity(rng: np.random.Generator, n: int = 200,
                                  fixtures: list[Fixture] | None = None) -> SuiteResult:
    fixtures = fixtures if fixtures is not None else builtin_fixtures()
    worst = 0.0
    for i in range(n):
        fixture, point = _draw(fixtures, rng, i)
        xi = random_vector_field(rng, fixture.spec.dim)
        lie_g = lie_tensor(fixture.spec, xi, metric_tensor_field(fixture.spec), point)
        nab = covariant_derivative_covector(fixture.spec, xi, point)
        worst = max(worst, float(np.max(np.abs(lie_g - (nab + nab.T)))))
    return _result("natural-metric-identity", n, worst, 1e-9)


def suite_flow_vs_formula(rng: np.random.Generator, n: int = 24,
                          fixtures: list[Fixture] | None = None) -> SuiteResult:
    fixtures = fixtures if fixtures is not None else builtin_fixtures()
    worst = 0.0
    for i in range(n):
        fixture, point = _draw(fixtures, rng, i)
        m = fixture.spec.dim
        xi = random_vector_field(rng, m)
        psi = random_spinor_field(rng, m)
        formula = lie_spinor_kosmann(fixture.spec, xi, psi, point)
        oracle = flow_lie_spinor_oracle(fixture.spec, xi, psi, point)
        worst = max(worst, float(np.max(np.abs(formula - oracle))))
    return _result("flow-vs-formula", n, worst, 1e-3)


def suite_killing_reduction(rng: np.random.Generator, n: int = 5) -> SuiteResult:
    """Kosmann = Lichnerowicz on the full flat isometry algebras; n points per field."""
    worst = 0.0
    checks = 0
    for signature in (Signature(1, 1), Signature(1, 3)):
        fixture = flat_fixture(signature)
        for field in minkowski_killing_fields(signature).values():
            for _ in range(n):
                point = fixture.sample_point(rng)
                psi = random_spinor_field(rng, signature.dim)
                a = lie_spinor_kosmann(fixture.spec, field, psi, point)
                b = lichnerowicz(fixture.spec, field, psi, point)
                worst = max(worst, float(np.max(np.abs(a - b))))
                checks += 1
    return _result("killing-reduction", checks, worst, 1e-9)


def suite_killing_residual_on_isometries(rng: np.random.Generator, n: int = 5) -> SuiteResult:
    """The flat isometry algebras really are Killing: residual <= 1e-10."""
    worst = 0.0
    checks = 0
    for signature in (Signature(1, 1), Signature(1, 3)):
        fixture = flat_fixture(signature)
        for field in minkowski_killing_fields(signature).values():
            for _ in range(n):
                point = fixture.sample_point(rng)
                worst = max(worst, killing_residual(fixture.spec, field, point))
                checks += 1
    return _result("killing-residual-on-isometries", checks, worst, 1e-10)


def suite_killing_witnesses(rng: np.random.Generator, n: int = 0) -> SuiteResult:
    """Documented non-Killing witnesses must show residual >= 1e-2."""
    smallest = np.inf
    checks = 0
    for signature in (Signature(1, 1), Signature(1, 3)):
        fixture = flat_fixture(signature)
        for field, point in non_killing_witnesses(signature):
            smallest = min(smallest, killing_residual(fixture.spec, field, point))
            checks += 1
    return _result("killing-witnesses", checks, float(smallest), 1e-2, comparison=">=")


def suite_commutator_killing(rng: np.random.Generator, n: int = 2) -> SuiteResult:
    """Commutator defect vanishes on the flat (1,1) isometry algebra.

    Every ordered generator pair is checked at n points, then the same number
    of random linear combinations of the generators (the defect is bilinear,
    so this exercises the whole algebra).
    """
    worst = 0.0
    checks = 0
    fixture = flat_fixture(Signature(1, 1))
    fields = list(minkowski_killing_fields(Signature(1, 1)).values())
    for xi in fields:
        for zeta in fields:
            for _ in range(n):
                point = fixture.sample_point(rng)
                psi = random_spinor_field(rng, 2)
                defect = commutator_defect(fixture.spec, xi, zeta, psi, point)
                worst = max(worst, float(np.max(np.abs(defect))))
                checks += 1
    names = list(fixture.spec.coord_names)
    for _ in range(len(fields) ** 2 * max(1, n)):
        xi = _killing_combination(rng, fields, names)
        zeta = _killing_combination(rng, fields, names)
        point = fixture.sample_point(rng)
        psi = random_spinor_field(rng, 2)
        defect = commutator_defect(fixture.spec, xi, zeta, psi, point)
        worst = max(worst, float(np.max(np.abs(defect))))
        checks += 1
    return _result("commutator-defect-killing", checks, worst, 1e-5)


def _killing_combination(rng: np.random.Generator, fields: list[VectorFieldSpec],
                         names: list[str]) -> VectorFieldSpec:
    weights = np.round(rng.normal(size=len(fields)), 6)
    combined = []
    for mu in range(len(names)):
        terms = [
            Binary("*", Literal(float(w)), f.components[mu])
            for w, f in zip(weights, fields)
        ]
        node = terms[0]
        for term in terms[1:]:
            node = Binary("+", node, term)
        combined.append(node)
    return VectorFieldSpec(tuple(combined))


def suite_commutator_curved_witness(rng: np.random.Generator, n: int = 0) -> SuiteResult:
    """The documented curved witness pair exhibits a non-vanishing defect."""
    fixture, xi, zeta, psi, point = curved_defect_witness()
    defect = commutator_defect(fixture.spec, xi, zeta, psi, point)
    return _result(
        "commutator-defect-curved-witness",
        1,
        float(np.max(np.abs(defect))),
        1e-3,
        comparison=">=",
    )


def suite_density_flow_oracle(rng: np.random.Generator, n: int = 50,
                              fixtures: list[Fixture] | None = None) -> SuiteResult:
    fixtures = fixtures if fixtures is not None else builtin_fixtures()
    ranks = [(0, 0), (1, 0), (0, 1), (1, 1)]
    weights = [0.0, 1.0, 2.0, -1.0, 0.5]
    worst = 0.0
    for i in range(n):
        fixture, point = _draw(fixtures, rng, i)
        m = fixture.spec.dim
        xi = random_vector_field(rng, m)
        tensor = random_density_field(
            rng, m, ranks[i % len(ranks)], weights[i % len(weights)]
        )
        formula = lie_density(fixture.spec, xi, tensor, point)
        oracle = flow_lie_density_oracle(fixture.spec, xi, tensor, point)
        worst = max(worst, float(np.max(np.abs(formula - oracle))))
    return _result("density-flow-oracle", n, worst, 1e-4)


def _scale_spinor(psi: SpinorFieldSpec, alpha: float) -> SpinorFieldSpec:
    lit = Literal(value=alpha)
    return SpinorFieldSpec(
        tuple(
            (Binary(op="*", left=lit, right=re), Binary(op="*", left=lit, right=im))
            for re, im in psi.components
        )
    )


def _add_spinors(a: SpinorFieldSpec, b: SpinorFieldSpec) -> SpinorFieldSpec:
    return SpinorFieldSpec(
        tuple(
            (Binary(op="+", left=re1, right=re2), Binary(op="+", left=im1, right=im2))
            for (re1, im1), (re2, im2) in zip(a.components, b.components)
        )
    )


def _multiply_spinor(psi: SpinorFieldSpec, f: Node) -> SpinorFieldSpec:
    return SpinorFieldSpec(
        tuple(
            (Binary(op="*", left=f, right=re), Binary(op="*", left=f, right=im))
            for re, im in psi.components
        )
    )


def suite_spinor_linearity(rng: np.random.Generator, n: int = 100,
                           fixtures: list[Fixture] | None = None) -> SuiteResult:
    fixtures = fixtures if fixtures is not None else builtin_fixtures()
    worst = 0.0
    for i in range(n):
        fixture, point = _draw(fixtures, rng, i)
        m = fixture.spec.dim
        xi = random_vector_field(rng, m)
        psi1 = random_spinor_field(rng, m)
        psi2 = random_spinor_field(rng, m)
        alpha, beta = rng.uniform(-2.0, 2.0, size=2)
        combined = _add_spinors(_scale_spinor(psi1, alpha), _scale_spinor(psi2, beta))
        lhs = lie_spinor_kosmann(fixture.spec, xi, combined, point)
        rhs = alpha * lie_spinor_kosmann(fixture.spec, xi, psi1, point) + beta * (
            lie_spinor_kosmann(fixture.spec, xi, psi2, point)
        )
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return _result("spinor-linearity", n, worst, 1e-10)


def suite_leibniz(rng: np.random.Generator, n: int = 100,
                  fixtures: list[Fixture] | None = None) -> SuiteResult:
    fixtures = fixtures if fixtures is not None else builtin_fixtures()
    worst = 0.0
    for i in range(n):
        fixture, point = _draw(fixtures, rng, i)
        m = fixture.spec.dim
        xi = random_vector_field(rng, m)
        psi = random_spinor_field(rng, m)
        f = random_polynomial(rng, m)
        lhs = lie_spinor_kosmann(fixture.spec, xi, _multiply_spinor(psi, f), point)
        xi_val, _ = vector_field_at(fixture.spec, xi, point)
        df = eval_dual(f, point)
        rhs = (xi_val @ df.grad) * spinor_value_at(fixture.spec, psi, point) + df.value * (
            lie_spinor_kosmann(fixture.spec, xi, psi, point)
        )
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return _result("leibniz-scalar", n, worst, 1e-8)


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

_ALGEBRA_SUITES = [
    suite_reductive_reconstruction,
    suite_reductive_membership,
    suite_reductive_ad_invariance,
    suite_clifford_relations,
    suite_clifford_homomorphism,
    suite_jet_axioms,
    suite_jet_oracle,
    suite_jet_actions,
    suite_ad_vs_fd,
]

_GEOMETRY_SUITES = [
    suite_recast_equality,
    suite_reductive_metric_lie,
    suite_natural_metric_identity,
    suite_flow_vs_formula,
    suite_density_flow_oracle,
    suite_spinor_linearity,
    suite_leibniz,
]

_BUILTIN_ONLY_SUITES = [
    suite_killing_reduction,
    suite_killing_residual_on_isometries,
    suite_killing_witnesses,
    suite_commutator_killing,
    suite_commutator_curved_witness,
]


def run_verification(geometry: GeometrySpec | None = None, seed: int = 0,
                     samples: int | None = None) -> list[SuiteResult]:
    """Run every applicable suite; ``samples`` overrides each default count."""
    if samples == 0:
        return []
    rng = np.random.default_rng(seed)
    results = []
    for suite in _ALGEBRA_SUITES:
        results.append(suite(rng) if samples is None else suite(rng, samples))
    if geometry is not None:
        fixtures = [_fixture_from_spec(geometry)]
        for suite in _GEOMETRY_SUITES:
            if samples is None:
                results.append(suite(rng, fixtures=fixtures))
            else:
                results.append(suite(rng, samples, fixtures=fixtures))
    else:
        for suite in _GEOMETRY_SUITES:
            results.append(suite(rng) if samples is None else suite(rng, samples))
        for suite in _BUILTIN_ONLY_SUITES:
            results.append(suite(rng) if samples is None else suite(rng, samples))
    return results


def _fixture_from_spec(spec: GeometrySpec) -> Fixture:
    """Sample a custom geometry near the all-0.5 point, a half-unit box."""
    m = spec.dim
    return Fixture(
        name="custom", spec=spec, low=np.full(m, 0.25), high=np.full(m, 0.75)
    )


def all_passed(results: list[SuiteResult]) -> bool:
    return all(r.passed for r in results)
