"""Degeneration certificates, their exact verification, and obstructions.

A certificate for ``A(*) -> B`` is a parametric index (family parameters of
``A`` as expressions in ``t``) plus a parametric basis ``E_i = sum_j
a_ij(t) e_j``.  It is accepted when every structure constant of the
substituted source, written in the basis ``E``, has a finite limit at
``t = 0`` equal to the corresponding constant of ``B``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from . import expr as ex
from .algebra import (
    Algebra,
    constants_in_basis,
    substitute_algebra_params,
    substitute_constants,
)
from .errors import (
    DimensionMismatchError,
    InputError,
    LimitDivergesError,
    SingularMatrixError,
    SqrtError,
    SubstitutionPoleError,
    ZeroDivisorError,
)
from .invariants import InvariantProfile, invariant_profile, orbit_dimension
from .linalg import det
from .scalars import T, Scalar, limit_at_zero, scalar, var

__all__ = [
    "Certificate",
    "Witness",
    "Verdict",
    "Reason",
    "NecessaryConditions",
    "ClosureEstimate",
    "verify_certificate",
    "trivial_scaling_certificate",
    "check_necessary_conditions",
    "compare_profiles",
    "closure_dimension",
    "family_closure_dimension_estimate",
    "random_rational",
    "SAMPLE_BOUND",
]

SAMPLE_BOUND = 10**6
MAX_SAMPLE_RETRIES = 64


def _as_node(value) -> ex.Node:
    if isinstance(value, ex.Node):
        return value
    if isinstance(value, str):
        return ex.parse(value, macros=True)
    return ex.Lit(scalar(value))


@dataclass(frozen=True, eq=False)
class Certificate:
    """Parametric index + parametric basis proving ``source(*) -> target``.

    ``params`` are extra symbols the certificate quantifies over (besides
    the target's parameters); index and basis expressions may use them,
    ``t`` and the target parameters.
    """

    name: str
    source: Algebra
    target: Algebra
    index: Mapping = field(default_factory=dict)
    basis: tuple = ()
    params: tuple = ()

    def __post_init__(self):
        n = self.source.dim
        if self.target.dim != n:
            raise DimensionMismatchError("source and target dimensions differ")
        index = {k: _as_node(v) for k, v in dict(self.index).items()}
        basis = tuple(tuple(_as_node(x) for x in row) for row in self.basis)
        if len(basis) != n or any(len(row) != n for row in basis):
            raise DimensionMismatchError(f"parametric basis must be {n}x{n}")
        unknown = set(index) - set(self.source.params)
        if unknown:
            raise InputError(f"index assigns unknown source parameters {sorted(unknown)}")
        free = set(self.target.params) | set(self.params)
        for p in self.source.params:
            if p not in index and p not in free:
                raise InputError(f"source parameter {p!r} is neither assigned nor a target parameter")
        allowed = free | {T}
        for node in list(index.values()) + [x for row in basis for x in row]:
            bad = ex.free_variables(node) - allowed
            if bad:
                raise InputError(f"certificate uses undeclared symbols {sorted(bad)}")
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "params", tuple(self.params))

    @property
    def dim(self) -> int:
        return self.source.dim

    def nodes(self):
        return list(self.index.values()) + [x for row in self.basis for x in row]

    @property
    def uses_sqrt(self) -> bool:
        return any(ex.has_sqrt(n) for n in self.nodes())

    @property
    def free_symbols(self) -> tuple:
        names = set(self.target.params) | set(self.params)
        names |= {p for p in self.source.params if p not in self.index}
        for node in self.nodes():
            names |= ex.free_variables(node)
        names.discard(T)
        return tuple(sorted(names))


@dataclass(frozen=True)
class Witness:
    """First failing entry ``e_i e_j -> e_k`` (1-based)."""

    i: int
    j: int
    k: int
    reason: str
    value: Optional[str] = None
    expected: Optional[str] = None

    def __str__(self):
        out = f"({self.i},{self.j},{self.k}): {self.reason}"
        if self.value is not None:
            out += f"; c(t) = {self.value}"
        if self.expected is not None:
            out += f"; expected {self.expected}"
        return out


@dataclass(frozen=True)
class Verdict:
    status: str
    reason: str = ""
    witness: Optional[Witness] = None
    limits: Optional[tuple] = None
    sample: Optional[dict] = None

    @property
    def accepted(self) -> bool:
        return self.status == "accepted"

    def __str__(self):
        if self.accepted:
            return "accepted"
        if self.witness is not None:
            out = f"rejected at {self.witness}"
        else:
            out = f"rejected: {self.reason}"
        if self.sample:
            out += " [sample " + ", ".join(f"{k}={v}" for k, v in self.sample.items()) + "]"
        return out


def _rejected(reason, witness=None, sample=None):
    return Verdict("rejected", reason, witness, None, sample)


def _verify_point(c: Certificate, env: Mapping[str, Scalar], sample=None) -> Verdict:
    n = c.dim
    try:
        assignment = {p: ex.evaluate(node, env) for p, node in c.index.items()}
    except (SubstitutionPoleError, ZeroDivisorError) as exc:
        return _rejected(f"index substitution pole ({exc})", sample=sample)
    for p in c.source.params:
        if p not in assignment and p in env:
            assignment[p] = env[p]
    try:
        consts = substitute_constants(c.source.constants, assignment)
    except SubstitutionPoleError as exc:
        return _rejected(f"index substitution pole ({exc})", sample=sample)
    try:
        rows = [[ex.evaluate(x, env) for x in row] for row in c.basis]
    except (SubstitutionPoleError, ZeroDivisorError) as exc:
        return _rejected(f"basis entry pole ({exc})", sample=sample)
    if not det(rows):
        return _rejected("degenerate parametric basis", sample=sample)
    try:
        moved = constants_in_basis(consts, rows)
    except SingularMatrixError:
        return _rejected("degenerate parametric basis", sample=sample)
    target = substitute_constants(c.target.constants, env) if env else c.target.constants
    limits = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            for k in range(n):
                value = moved[i][j][k]
                try:
                    lim = limit_at_zero(value)
                except LimitDivergesError:
                    w = Witness(i + 1, j + 1, k + 1, "limit diverges", str(value))
                    return _rejected("limit diverges", w, sample)
                if lim != target[i][j][k]:
                    w = Witness(i + 1, j + 1, k + 1, "limit differs from target", str(lim), str(target[i][j][k]))
                    return _rejected("limit differs from target", w, sample)
                row.append(lim)
            plane.append(tuple(row))
        limits.append(tuple(plane))
    return Verdict("accepted", limits=tuple(limits), sample=sample)


def random_rational(rng: random.Random, bound: int = SAMPLE_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _linear_split(value: Scalar, name: str):
    """``value = a*name + b`` with a, b free of ``name``, or None."""
    x = var(name)
    if not value.den.is_one and name in Scalar.from_polys(value.den).variables:
        return None
    num = Scalar.from_polys(value.num)
    if name not in num.variables:
        return None
    names = [str(s) for s in value.ring.symbols]
    idx = names.index(name)
    if max(m[idx] for m in value.num.itermonoms()) != 1:
        return None
    b = ex.evaluate(ex.Lit(value), {name: 0})
    a = (value - b) / x
    if name in a.variables:
        return None
    return a, b


def sample_parameters(c: Certificate, rng: random.Random, bound: int = SAMPLE_BOUND) -> dict:
    """Random rational values for the certificate's free symbols.

    Each square-root radicand that is linear in a not-yet-fixed symbol is
    solved for that symbol so the radicand becomes ``r^2`` for random ``r``;
    remaining symbols are uniform rationals.  Retries a bounded number of
    times before giving up.
    """
    rads = [r for node in c.nodes() for r in ex.radicands(node)]
    for _ in range(MAX_SAMPLE_RETRIES):
        env: dict = {}
        try:
            for rad in rads:
                value = _partial(rad, env)
                if value is None:
                    continue
                if T in value.variables:
                    raise _RadicandInT()
                _solve_square(value, env, rng, bound)
            for v in c.free_symbols:
                env.setdefault(v, scalar(random_rational(rng, bound)))
            for node in c.nodes():
                ex.evaluate(node, env)
            return env
        except (SqrtError, ZeroDivisorError, SubstitutionPoleError):
            continue
        except _RadicandInT:
            raise SqrtError("sqrt radicand depends on t") from None
    raise SqrtError("could not sample parameters making every sqrt radicand a rational square")


class _RadicandInT(Exception):
    pass


def _solve_square(value: Scalar, env: dict, rng, bound):
    open_vars = sorted(value.variables - set(env))
    for v in open_vars:
        if _linear_split(value, v) is None:
            continue
        for other in open_vars:
            if other != v:
                env[other] = scalar(random_rational(rng, bound))
        a, b = _linear_split(ex.evaluate(ex.Lit(value), env), v)
        if not a:
            raise ZeroDivisorError("degenerate radicand at this sample")
        r = scalar(random_rational(rng, bound))
        env[v] = (r * r - b) / a
        return
    for v in open_vars:
        env[v] = scalar(random_rational(rng, bound))


def _partial(node, env):
    # evaluate a radicand with the symbols fixed so far; None if an inner
    # sqrt is not yet resolvable
    try:
        return ex.evaluate(node, env)
    except SqrtError:
        return None


def verify_certificate(
    c: Certificate,
    mode: str = "exact",
    samples: int = 5,
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> Verdict:
    """Check ``lim_{t->0}`` of the moved structure constants against the target.

    ``exact`` verifies symbolically in every free parameter; ``sampled``
    fixes the free symbols at ``samples`` random rational points (required
    when square roots appear) and verifies exactly in ``t`` at each.
    """
    if mode == "exact":
        if c.uses_sqrt:
            raise SqrtError("sqrt not allowed in exact mode")
        return _verify_point(c, {})
    if mode != "sampled":
        raise InputError(f"unknown mode {mode!r}")
    rng = rng or random.Random(seed)
    last = None
    for _ in range(max(1, samples)):
        env = sample_parameters(c, rng)
        shown = {k: str(v) for k, v in env.items()}
        verdict = _verify_point(c, env, shown)
        if not verdict.accepted:
            return verdict
        last = verdict
    return last


def trivial_scaling_certificate(A: Algebra) -> Certificate:
    """``E_i = t e_i``: every constant scales by ``t``, so ``A -> 0``."""
    n = A.dim
    basis = [[ex.Var(T) if i == j else ex.Num(Fraction(0)) for j in range(n)] for i in range(n)]
    return Certificate(
        f"scaling:{A.name}",
        A,
        Algebra.zero(n),
        {p: ex.Var(p) for p in A.params},
        basis,
        params=A.params,
    )


# -- obstructions ---------------------------------------------------------------


@dataclass(frozen=True)
class Reason:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class NecessaryConditions:
    reasons: tuple = ()

    @property
    def blocked(self) -> bool:
        return bool(self.reasons)

    @property
    def status(self) -> str:
        return "blocked" if self.reasons else "possible"

    @property
    def kinds(self) -> tuple:
        return tuple(r.kind for r in self.reasons)

    def __str__(self):
        if not self.reasons:
            return "possible"
        return "blocked(" + "; ".join(str(r) for r in self.reasons) + ")"


def closure_dimension(A: Algebra, profile: Optional[InvariantProfile] = None) -> int:
    """``#params + generic orbit dimension``; the orbit dimension for k = 0."""
    orbit = profile.orbit if profile is not None else orbit_dimension(A)
    return len(A.params) + orbit


def compare_profiles(
    pa: InvariantProfile,
    pb: InvariantProfile,
    closure_a: int,
    closure_b: int,
    families: bool,
    equal: bool,
    mode: str = "paper",
) -> NecessaryConditions:
    """Obstructions to ``A -> B`` from precomputed invariants."""
    reasons = []
    if pa.square < pb.square:
        reasons.append(Reason("square dimension", f"dim A^2 = {pa.square} < {pb.square} = dim B^2"))
    if families:
        if closure_b > closure_a:
            reasons.append(Reason("orbit dimension", f"closure dim {closure_a} < {closure_b}"))
    elif not equal and closure_b >= closure_a:
        reasons.append(Reason("orbit dimension", f"orbit dim {closure_a} <= {closure_b} for a proper degeneration"))
    if mode == "extended":
        a_pow, b_pow = list(pa.powers), list(pb.powers)
        # a chain ends either at 0 or at its stable value
        width = max(len(a_pow), len(b_pow))
        a_pow += [a_pow[-1]] * (width - len(a_pow))
        b_pow += [b_pow[-1]] * (width - len(b_pow))
        for k, (da, db) in enumerate(zip(a_pow, b_pow), start=1):
            if da < db:
                reasons.append(Reason("power series", f"dim A^{k} = {da} < {db} = dim B^{k}"))
                break
        if pb.annihilator < pa.annihilator:
            reasons.append(Reason("annihilator dimension", f"{pa.annihilator} > {pb.annihilator}"))
    return NecessaryConditions(tuple(reasons))


def check_necessary_conditions(A: Algebra, B: Algebra, mode: str = "paper") -> NecessaryConditions:
    """Invariant obstructions to ``A -> B``.

    Algebras with parameters are compared as families: ranks are generic and
    the orbit test compares ``#params + orbit dim``.
    """
    if A.dim != B.dim:
        raise DimensionMismatchError("algebras of different dimensions")
    pa = invariant_profile(A, mode)
    pb = invariant_profile(B, mode)
    families = A.is_family() or B.is_family()
    return compare_profiles(
        pa,
        pb,
        closure_dimension(A, pa),
        closure_dimension(B, pb),
        families,
        A.structurally_equal(B),
        mode,
    )


@dataclass(frozen=True)
class ClosureEstimate:
    """``#params + max sampled orbit dimension`` (an estimate, not a proof)."""

    dimension: int
    parameters: int
    orbit_dims: tuple
    samples: tuple
    constant: bool
    label: str = "estimate"

    def __str__(self):
        flag = "" if self.constant else " (orbit dimension varies across samples)"
        return f"{self.dimension} ({self.label}: {self.parameters} params + orbit dim){flag}"


def family_closure_dimension_estimate(
    F: Algebra,
    samples: int = 5,
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
    bound: int = SAMPLE_BOUND,
) -> ClosureEstimate:
    k = len(F.params)
    if k == 0:
        o = orbit_dimension(F)
        return ClosureEstimate(o, 0, (o,), (), True)
    rng = rng or random.Random(seed)
    orbits = []
    points = []
    for _ in range(max(1, samples)):
        point = {p: random_rational(rng, bound) for p in F.params}
        try:
            member = substitute_algebra_params(F, point)
        except SubstitutionPoleError:
            continue
        orbits.append(orbit_dimension(member))
        points.append({p: str(v) for p, v in point.items()})
    if not orbits:
        raise SubstitutionPoleError("every sampled parameter point is a pole of the family")
    return ClosureEstimate(k + max(orbits), k, tuple(orbits), tuple(points), len(set(orbits)) == 1)
