"""Builtin geometry fixtures and random-field generators for the test suites.

The fixture set spans flat and curved charts in Euclidean and Lorentzian
signatures: flat (p,q) for m in {2, 3, 4}, a 2D polar-type metric
diag(1, x0^2) away from the axis, a conformally flat Lorentzian surface, and
a Schwarzschild-like (1,3) diagonal metric sampled away from its horizon.
Each fixture carries a sampling box well inside its domain of validity.

Random vector/spinor/density fields are degree-two polynomials in the
coordinates with seeded coefficients, so every derivative the suites need is
smooth and exactly representable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .expr import Binary, Call, Coordinate, Literal, Node, Power, Unary, parse
from .geometry import (
    DensityFieldSpec,
    GeometrySpec,
    SpinorFieldSpec,
    VectorFieldSpec,
    metric_from_strings,
)
from .liealg import Signature


@dataclass(frozen=True)
class Fixture:
    """A geometry plus a box to draw well-behaved sample points from."""

    name: str
    spec: GeometrySpec
    low: np.ndarray
    high: np.ndarray

    def sample_point(self, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(self.low, self.high)


def _coords(m: int) -> list[str]:
    return [f"x{i}" for i in range(m)]


def _diag_metric(entries: list[str]) -> list[list[str]]:
    m = len(entries)
    return [[entries[i] if i == j else "0" for j in range(m)] for i in range(m)]


def _make_fixture(name: str, signature: Signature, diag: list[str],
                  low: list[float], high: list[float]) -> Fixture:
    m = signature.dim
    coords = _coords(m)
    spec = GeometrySpec(
        dim=m,
        signature=signature,
        coord_names=tuple(coords),
        metric=metric_from_strings(m, signature, coords, _diag_metric(diag)),
    )
    return Fixture(name=name, spec=spec, low=np.array(low), high=np.array(high))


def flat_fixture(signature: Signature) -> Fixture:
    m = signature.dim
    diag = ["1"] * signature.p + ["-1"] * signature.q
    return _make_fixture(
        f"flat({signature.p},{signature.q})", signature, diag, [-0.8] * m, [0.8] * m
    )


def polar_fixture() -> Fixture:
    return _make_fixture("polar", Signature(2, 0), ["1", "x0^2"], [1.0, 0.1], [2.0, 1.5])


def conformal_fixture() -> Fixture:
    return _make_fixture(
        "conformal", Signature(1, 1), ["exp(2*x0)", "-exp(2*x0)"], [-0.5, -0.5], [0.5, 0.5]
    )


def schwarzschild_fixture() -> Fixture:
    f = "1 - 1/x1"
    return _make_fixture(
        "schwarzschild",
        Signature(1, 3),
        [f, f"-1/({f})", "-x1^2", "-x1^2*sin(x2)^2"],
        [0.0, 3.0, 0.8, 0.0],
        [1.0, 5.0, 2.3, 1.0],
    )


def builtin_fixtures() -> list[Fixture]:
    flats = [Signature(2, 0), Signature(1, 1), Signature(3, 0), Signature(1, 2), Signature(1, 3)]
    return [flat_fixture(sig) for sig in flats] + [
        polar_fixture(),
        conformal_fixture(),
        schwarzschild_fixture(),
    ]


def fixture_by_name(name: str) -> Fixture:
    for fixture in builtin_fixtures():
        if fixture.name == name:
            return fixture
    raise KeyError(f"no builtin fixture named '{name}'")


# ---------------------------------------------------------------------------
# Random polynomial fields
# ---------------------------------------------------------------------------


def random_polynomial(rng: np.random.Generator, m: int, scale: float = 0.5) -> Node:
    """A degree-<=2 polynomial with seeded coefficients, built as a tree."""
    terms: list[Node] = [Literal(value=round(rng.uniform(-scale, scale), 6))]
    for i in range(m):
        coeff = round(rng.uniform(-scale, scale), 6)
        terms.append(
            Binary(op="*", left=Literal(value=coeff), right=Coordinate(index=i, name=f"x{i}"))
        )
    for i in range(m):
        for j in range(i, m):
            if rng.uniform() < 0.5:
                continue
            coeff = round(rng.uniform(-scale, scale), 6)
            product = Binary(
                op="*",
                left=Binary(
                    op="*", left=Literal(value=coeff), right=Coordinate(index=i, name=f"x{i}")
                ),
                right=Coordinate(index=j, name=f"x{j}"),
            )
            terms.append(product)
    node = terms[0]
    for term in terms[1:]:
        node = Binary(op="+", left=node, right=term)
    return node


def random_vector_field(rng: np.random.Generator, m: int, scale: float = 0.5) -> VectorFieldSpec:
    return VectorFieldSpec(tuple(random_polynomial(rng, m, scale) for _ in range(m)))


def random_spinor_field(rng: np.random.Generator, m: int, scale: float = 0.5) -> SpinorFieldSpec:
    n = 2 ** (m // 2)
    return SpinorFieldSpec(
        tuple(
            (random_polynomial(rng, m, scale), random_polynomial(rng, m, scale))
            for _ in range(n)
        )
    )


def random_density_field(rng: np.random.Generator, m: int, rank: tuple[int, int],
                         weight: float, scale: float = 0.5) -> DensityFieldSpec:
    r, s = rank
    indices = [()] if r + s == 0 else list(np.ndindex(*((m,) * (r + s))))
    components = {
        tuple(int(k) for k in idx): random_polynomial(rng, m, scale) for idx in indices
    }
    return DensityFieldSpec(rank=rank, weight=weight, components=components)


# ---------------------------------------------------------------------------
# Random expressions (for the AD-vs-FD suite)
# ---------------------------------------------------------------------------


def random_expression(rng: np.random.Generator, m: int, depth: int = 3) -> Node:
    """A random expression tree over x0..x{m-1} using every node kind.

    May still step outside a function domain at a given point; callers skip
    and redraw on domain errors.
    """
    if depth == 0 or rng.uniform() < 0.3:
        if rng.uniform() < 0.5:
            return Literal(value=round(rng.uniform(-2.0, 2.0), 6))
        index = int(rng.integers(m))
        return Coordinate(index=index, name=f"x{index}")
    choice = rng.uniform()
    if choice < 0.45:
        op = ("+", "-", "*", "/")[int(rng.integers(4))]
        return Binary(
            op=op,
            left=random_expression(rng, m, depth - 1),
            right=random_expression(rng, m, depth - 1),
        )
    if choice < 0.6:
        return Unary(operand=random_expression(rng, m, depth - 1))
    if choice < 0.75:
        return Power(base=random_expression(rng, m, depth - 1), exponent=int(rng.integers(2, 4)))
    func = ("sqrt", "sin", "cos", "exp", "log")[int(rng.integers(5))]
    return Call(func=func, arg=random_expression(rng, m, depth - 1))


# ---------------------------------------------------------------------------
# Killing fields of flat space and documented witnesses
# ---------------------------------------------------------------------------


def minkowski_killing_fields(signature: Signature) -> dict[str, VectorFieldSpec]:
    """The full isometry algebra of the flat metric: m translations plus
    m(m-1)/2 eta-antisymmetric rotations/boosts."""
    m = signature.dim
    coords = _coords(m)
    eta_diag = [1.0] * signature.p + [-1.0] * signature.q
    fields: dict[str, VectorFieldSpec] = {}
    for mu in range(m):
        comps = ["1" if nu == mu else "0" for nu in range(m)]
        fields[f"translation{mu}"] = VectorFieldSpec(
            tuple(parse(c, coords) for c in comps)
        )
    for a in range(m):
        for b in range(a + 1, m):
            # xi^mu = eta^{mu a} x^b - eta^{mu b} x^a (diagonal eta)
            comps = ["0"] * m
            comps[a] = f"x{b}" if eta_diag[a] > 0 else f"-x{b}"
            comps[b] = f"-x{a}" if eta_diag[b] > 0 else f"x{a}"
            kind = "rotation" if eta_diag[a] == eta_diag[b] else "boost"
            fields[f"{kind}{a}{b}"] = VectorFieldSpec(tuple(parse(c, coords) for c in comps))
    return fields


def curved_defect_witness() -> tuple[
    Fixture, VectorFieldSpec, VectorFieldSpec, SpinorFieldSpec, np.ndarray
]:
    """Documented witness: a curved-chart field pair whose spinor Lie
    derivatives fail to bracket, with a point where the defect is large.

    Returns (fixture, xi, zeta, psi, point); the defect magnitude at the
    point is asserted (>= 1e-3) by the verification suites.
    """
    fixture = polar_fixture()
    coords = _coords(2)
    xi = VectorFieldSpec((parse("x1", coords), parse("x0", coords)))
    zeta = VectorFieldSpec((parse("x0*x1", coords), parse("x0 - x1", coords)))
    psi = SpinorFieldSpec(
        ((parse("1", coords), parse("0", coords)), (parse("0", coords), parse("0", coords)))
    )
    point = np.array([1.5, 0.7])
    return fixture, xi, zeta, psi, point


def non_killing_witnesses(signature: Signature) -> list[tuple[VectorFieldSpec, np.ndarray]]:
    """Documented non-Killing fields with evaluation points; each has
    killing residual >= 1e-2 at its point (asserted by the suites)."""
    m = signature.dim
    coords = _coords(m)
    stretch = VectorFieldSpec(
        tuple(parse("x0" if nu == 0 else "0", coords) for nu in range(m))
    )
    shear = VectorFieldSpec(
        tuple(parse("x1^2" if nu == 0 else "0", coords) for nu in range(m))
    )
    point = np.full(m, 0.3)
    return [(stretch, point), (shear, point)]
