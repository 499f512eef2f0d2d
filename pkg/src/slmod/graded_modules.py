"""Graded Shen-Larsson module engine: fiber operators, windows, closure.

A module V (x) Q[t_1^{+-1}, ..., t_N^{+-1}] is handled one degree k at a time.
Every generator of the acting algebra moves the fiber at k to the fiber at
k + r through a matrix c * Id + D, where c is a pairing against k + beta and D
is the derivation action of a rank-one matrix on the fiber representation:

    h_r     : c = (bar r | k + beta),  D = action of r bar(r)^T   (Hamiltonian)
    D(u, r) : c = (u | k + beta),      D = action of r u^T        (Witt / div-free)

Degree derivations act by the scalar k_i + alpha_i and never move fibers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Iterable

from .exact_linalg import (
    IntSpan,
    Subspace,
    _int_row,
    dot,
    frac,
    mat_scale,
    mat_vec,
)
from .exterior_algebra import (
    ext_dim,
    fundamental_subspace,
    gl_action_matrix,
    sym_action_matrix,
    sym_dim,
)
from .reports import Recorder, Report
from .torus_lie import AlgebraKind, bar, degree_box, rank_one, rank_one_sym, require_even

Degree = tuple


# ---------------------------------------------------------------------------
# fiber types and their coordinate spaces


@dataclass(frozen=True)
class FiberType:
    kind: str  # "lambda" | "fund" | "sym2" | "scalar"
    p: int = 0

    def __str__(self):
        if self.kind == "lambda":
            return f"Lambda({self.p})"
        if self.kind == "fund":
            return f"Fund({self.p})"
        return self.kind.capitalize()


def Lambda(p: int) -> FiberType:
    return FiberType("lambda", p)


def Fund(p: int) -> FiberType:
    return FiberType("fund", p)


def Sym2() -> FiberType:
    return FiberType("sym2")


def ScalarFiber() -> FiberType:
    return FiberType("scalar")


class FiberSpace:
    """Coordinate space of one fiber type, with the derivation action on it.

    Fundamental fibers use the pivot-1 basis of the contraction kernel, so a
    coordinate vector is read off the pivot entries of its ambient image.  The
    integer action matrix returned by ``action_matrix_int`` is ``scale`` times
    the exact one; the multiple cancels everywhere an image or kernel is
    taken.
    """

    def __init__(self, n: int, fiber: FiberType):
        self.n = n
        self.fiber = fiber
        if fiber.kind == "scalar":
            self.dim = 1
        elif fiber.kind == "lambda":
            self.dim = ext_dim(n, fiber.p)
        elif fiber.kind == "sym2":
            self.dim = sym_dim(n)
        elif fiber.kind == "fund":
            require_even(n)
            self._fund = fundamental_subspace(n, fiber.p)
            self.dim = self._fund.dim
        else:
            raise ValueError(f"unknown fiber kind {fiber.kind!r}")

    # -- actions ----------------------------------------------------------

    def action_matrix(self, a) -> tuple:
        """Exact derivation action of the N x N matrix ``a`` on coordinates."""
        rows, scale = self.action_matrix_int(a)
        if scale == 1:
            return rows
        return mat_scale(Fraction(1, scale), rows)

    def action_matrix_int(self, a) -> tuple:
        """Integer matrix equal to ``scale`` times the exact action."""
        kind = self.fiber.kind
        if kind == "scalar":
            return ((0,),), 1
        if kind == "lambda":
            return gl_action_matrix(self.n, self.fiber.p, a), 1
        if kind == "sym2":
            return sym_action_matrix(self.n, a), 1
        return self._restricted_action(a)

    def _restricted_action(self, a) -> tuple:
        p = self.fiber.p
        full = gl_action_matrix(self.n, p, a)
        basis = self._fund.rows
        pivots = self._fund.pivots
        if not basis:
            return ((),), 1
        scale = lcm(*(row[pc] for row, pc in zip(basis, pivots)))
        cols = []
        for brow, bpiv in zip(basis, pivots):
            img = mat_vec(full, brow)  # = b_piv * (action of pivot-1 basis vector)
            if not self._fund.contains_vector(img):
                raise ValueError("matrix action does not preserve the contraction kernel")
            # coords of img/b_piv are its pivot entries / b_piv; scale to ints
            cols.append([img[pc] * (scale // brow[bpiv]) for pc in pivots])
        dim = self.dim
        return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim)), scale

    # -- fundamental coordinate conversions --------------------------------

    def embed_subspace(self, s: Subspace) -> Subspace:
        """Fund coordinates -> the ambient exterior-power coordinates."""
        if self.fiber.kind != "fund":
            return s
        basis = self._fund.rows
        pivots = self._fund.pivots
        gens = []
        for row in s.rows:
            v = [Fraction(0)] * ext_dim(self.n, self.fiber.p)
            for c, brow, pc in zip(row, basis, pivots):
                for j, x in enumerate(brow):
                    v[j] += Fraction(c * x, brow[pc])
            gens.append(v)
        return Subspace(ext_dim(self.n, self.fiber.p), gens)

    def restrict_subspace(self, s: Subspace) -> Subspace:
        """Exterior-power coordinates (inside the kernel) -> Fund coordinates."""
        if self.fiber.kind != "fund":
            return s
        if not self._fund.contains(s):
            raise ValueError("subspace does not lie inside the contraction kernel")
        pivots = self._fund.pivots
        gens = [[row[pc] for pc in pivots] for row in s.rows]
        return Subspace(self.dim, gens)

    def fundamental_rows(self) -> Subspace:
        if self.fiber.kind != "fund":
            raise ValueError("not a fundamental fiber")
        return self._fund


@lru_cache(maxsize=None)
def fiber_space(n: int, fiber: FiberType) -> FiberSpace:
    return FiberSpace(n, fiber)


# ---------------------------------------------------------------------------
# the action specification


@lru_cache(maxsize=None)
def _beta_denominator(beta: tuple) -> int:
    return lcm(*(frac(b).denominator for b in beta)) if beta else 1


@lru_cache(maxsize=None)
def _beta_numerators(beta: tuple) -> tuple:
    q = _beta_denominator(beta)
    return tuple(int(q * b) for b in beta)


@lru_cache(maxsize=None)
def _scaled_shift(beta: tuple, k: tuple) -> tuple:
    q = _beta_denominator(beta)
    qb = _beta_numerators(beta)
    return tuple(q * ki + bi for ki, bi in zip(k, qb))


@dataclass(frozen=True)
class ActionSpec:
    """Which algebra acts, on which fiber type, with which beta and alpha."""

    kind: AlgebraKind
    n: int
    fiber: FiberType
    beta: tuple
    alpha: tuple

    @staticmethod
    def make(kind, n: int, fiber: FiberType, beta=None, alpha=None) -> "ActionSpec":
        kind = AlgebraKind(kind)
        beta = tuple(frac(b) for b in (beta if beta is not None else [0] * n))
        alpha = tuple(frac(a) for a in (alpha if alpha is not None else [0] * n))
        if len(beta) != n or len(alpha) != n:
            raise ValueError("beta and alpha must have length N")
        if kind is AlgebraKind.H:
            require_even(n)
        if fiber.kind == "fund":
            require_even(n)
            if not 1 <= fiber.p <= n // 2:
                raise ValueError(f"Fund(p) needs 1 <= p <= {n // 2}")
        if fiber.kind == "lambda" and not 0 <= fiber.p <= n:
            raise ValueError(f"Lambda(p) needs 0 <= p <= {n}")
        return ActionSpec(kind, n, fiber, beta, alpha)

    def with_fiber(self, fiber: FiberType) -> "ActionSpec":
        return ActionSpec.make(self.kind, self.n, fiber, self.beta, self.alpha)

    @property
    def beta_denominator(self) -> int:
        return _beta_denominator(self.beta)

    def scaled_shift(self, k: Degree) -> tuple:
        """q * (k + beta) as an integer vector, q the beta denominator."""
        return _scaled_shift(self.beta, tuple(k))

    def space(self) -> FiberSpace:
        return fiber_space(self.n, self.fiber)

    def is_special(self, k: Degree) -> bool:
        """Whether k + beta = 0 (the one fiber every formula degenerates at)."""
        return all(ki + bi == 0 for ki, bi in zip(k, self.beta))

    def beta_integral(self) -> bool:
        return all(b.denominator == 1 for b in self.beta)


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class Generator:
    """h(r) for the Hamiltonian algebra, D(u, r) for Witt/divergence-free."""

    r: tuple
    u: tuple | None = None

    def label(self) -> str:
        if self.u is None:
            return f"h{list(self.r)}"
        return f"D({list(self.u)},{list(self.r)})"


def gen_h(r) -> Generator:
    return Generator(tuple(int(x) for x in r))


def gen_d(u, r) -> Generator:
    return Generator(tuple(int(x) for x in r), tuple(int(x) for x in u))


def _check_generator(spec: ActionSpec, gen: Generator):
    if spec.kind is AlgebraKind.H:
        if gen.u is not None:
            raise ValueError("the Hamiltonian algebra acts through h(r) generators")
    else:
        if gen.u is None:
            raise ValueError(f"kind {spec.kind} acts through D(u, r) generators")
        if spec.kind is AlgebraKind.S and dot(gen.u, gen.r) != 0:
            raise ValueError("divergence-free generators require (u|r) = 0")


@lru_cache(maxsize=None)
def _unit_vectors(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def default_generators(kind: AlgebraKind, n: int, bound: int = 1) -> tuple:
    """The generator sample set built from the degree box max|r_i| <= bound."""
    gens = []
    if kind is AlgebraKind.H:
        for r in degree_box(n, bound):
            gens.append(gen_h(r))
    elif kind is AlgebraKind.W:
        for r in degree_box(n, bound):
            for u in _unit_vectors(n):
                gens.append(gen_d(u, r))
    else:
        from .torus_lie import _perp_basis

        for r in degree_box(n, bound):
            for u in _perp_basis(r):
                gens.append(gen_d(u, r))
    return tuple(gens)


@lru_cache(maxsize=None)
def _derivation_int(n: int, fiber: FiberType, gen: Generator) -> tuple:
    """Cached integer derivation matrix (and scale) of the rank-one part."""
    a = rank_one_sym(gen.r) if gen.u is None else rank_one(gen.r, gen.u)
    return fiber_space(n, fiber).action_matrix_int(a)


def edge_scalar(spec: ActionSpec, gen: Generator, k: Degree) -> Fraction:
    """The pairing coefficient c of the fiber map at degree k."""
    shift = tuple(frac(ki) + bi for ki, bi in zip(k, spec.beta))
    if spec.kind is AlgebraKind.H:
        return frac(dot(bar(gen.r), shift))
    return frac(dot(gen.u, shift))


def edge_scalar_scaled(spec: ActionSpec, gen: Generator, k: Degree) -> int:
    kq = spec.scaled_shift(k)
    if spec.kind is AlgebraKind.H:
        return dot(bar(gen.r), kq)
    return dot(gen.u, kq)


def fiber_action(spec: ActionSpec, gen: Generator, k: Degree):
    """Exact matrix of the fiber map fiber(k) -> fiber(k + r)."""
    _check_generator(spec, gen)
    c = edge_scalar(spec, gen, k)
    rows, scale = _derivation_int(spec.n, spec.fiber, gen)
    dim = spec.space().dim
    return tuple(
        tuple((c if i == j else 0) + Fraction(rows[i][j], scale) for j in range(dim))
        for i in range(dim)
    )


def _apply_edge(spec: ActionSpec, gen: Generator, k: Degree, rows_in) -> list:
    """Images of integer row vectors under a positive multiple of the map."""
    cq = edge_scalar_scaled(spec, gen, k)
    drows, scale = _derivation_int(spec.n, spec.fiber, gen)
    q = spec.beta_denominator
    a = cq * scale  # coefficient of the identity part, times q * scale overall
    dim = spec.space().dim
    rng = range(dim)
    out = []
    for row in rows_in:
        img = [a * row[i] + q * sum(drows[i][j] * row[j] for j in rng) for i in rng]
        out.append(img)
    return out


def d_eigenvalue(spec: ActionSpec, i: int, k: Degree) -> Fraction:
    """Eigenvalue k_i + alpha_i of the i-th degree derivation on the fiber."""
    if not 1 <= i <= spec.n:
        raise ValueError(f"index {i} out of range 1..{spec.n}")
    return frac(k[i - 1]) + spec.alpha[i - 1]


# ---------------------------------------------------------------------------
# windows and graded families


@dataclass(frozen=True)
class Window:
    n: int
    d: int

    def degrees(self) -> tuple:
        return _window_degrees(self.n, self.d)

    def __contains__(self, k: Degree) -> bool:
        return len(k) == self.n and all(abs(x) <= self.d for x in k)

    def is_interior(self, k: Degree) -> bool:
        return all(abs(x) <= self.d - 1 for x in k)

    def interior_degrees(self) -> tuple:
        return tuple(k for k in self.degrees() if self.is_interior(k))


@lru_cache(maxsize=None)
def _window_degrees(n: int, d: int) -> tuple:
    return tuple(product(range(-d, d + 1), repeat=n))


def default_window(n: int) -> Window:
    """d = 2 up to four variables, d = 1 beyond (keeps runs in seconds)."""
    return Window(n, 2 if n <= 4 else 1)


class GradedFamily:
    """A finite window of fibers: degree -> canonical subspace of the fiber."""

    def __init__(self, spec: ActionSpec, window: Window, fibers: dict | None = None):
        self.spec = spec
        self.window = window
        self.fibers: dict = {}
        dim = spec.space().dim
        for k, sub in (fibers or {}).items():
            if tuple(k) not in window:
                raise ValueError(f"degree {k} outside the window")
            if sub.ambient_dim != dim:
                raise ValueError("fiber ambient dimension differs from the fiber type")
            if sub.dim:
                self.fibers[tuple(k)] = sub

    def fiber(self, k: Degree) -> Subspace:
        return self.fibers.get(tuple(k), Subspace.zero(self.spec.space().dim))

    def dims(self) -> dict:
        return {k: self.fiber(k).dim for k in self.window.degrees()}

    def copy_with(self, k: Degree, sub: Subspace) -> "GradedFamily":
        fibers = dict(self.fibers)
        fibers[tuple(k)] = sub
        return GradedFamily(self.spec, self.window, fibers)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedFamily)
            and self.spec == other.spec
            and self.window == other.window
            and all(self.fiber(k) == other.fiber(k) for k in self.window.degrees())
        )

    def __repr__(self):
        nonzero = sum(1 for s in self.fibers.values() if s.dim)
        return f"GradedFamily({self.spec.kind}, {self.spec.fiber}, nonzero fibers={nonzero})"


def dims(family: GradedFamily) -> dict:
    return family.dims()


# ---------------------------------------------------------------------------
# closure and invariance


def closure(
    spec: ActionSpec,
    seeds: dict,
    window: Window,
    generators: Iterable[Generator] | None = None,
) -> GradedFamily:
    """Smallest window-truncated family containing the seeds and stable under
    every in-window fiber map; worklist iteration to the fixpoint.

    ``seeds`` maps degrees to lists of fiber coordinate vectors.  Action
    targets outside the window are discarded.
    """
    gens = tuple(generators) if generators is not None else default_generators(spec.kind, spec.n)
    for g in gens:
        _check_generator(spec, g)
    dim = spec.space().dim
    spans: dict = {}
    work: list = []
    for k, vectors in seeds.items():
        k = tuple(k)
        if k not in window:
            raise ValueError(f"seed degree {k} outside the window")
        span = spans.setdefault(k, IntSpan(dim))
        grew = False
        for v in vectors:
            grew |= span.add(_int_row(v))
        if grew:
            work.append(k)
    queued = set(work)
    while work:
        k = work.pop()
        queued.discard(k)
        span = spans[k]
        if not span.rows:
            continue
        rows_snapshot = [list(r) for r in span.rows]
        for g in gens:
            target = tuple(a + b for a, b in zip(k, g.r))
            if target not in window:
                continue
            tspan = spans.setdefault(target, IntSpan(dim))
            if tspan.dim == dim:
                continue
            grew = False
            for img in _apply_edge(spec, g, k, rows_snapshot):
                if any(img):
                    grew |= tspan.add(img)
            if grew and target not in queued:
                work.append(target)
                queued.add(target)
    fibers = {k: span.to_subspace() for k, span in spans.items() if span.rows}
    return GradedFamily(spec, window, fibers)


def is_invariant(
    spec: ActionSpec,
    family: GradedFamily,
    generators: Iterable[Generator] | None = None,
) -> Report:
    """PASS when every in-window fiber map sends each fiber into its target.

    Maps whose target degree leaves the window are reported as skipped, never
    as failures.
    """
    gens = tuple(generators) if generators is not None else default_generators(spec.kind, spec.n)
    rec = Recorder(
        "is-invariant",
        {"kind": str(spec.kind), "N": spec.n, "fiber": str(spec.fiber), "beta": beta_str(spec)},
    )
    for k in family.window.degrees():
        sub = family.fiber(k)
        if not sub.dim:
            continue
        rows = [list(r) for r in sub.rows]
        failed_here = False
        for g in gens:
            target = tuple(a + b for a, b in zip(k, g.r))
            if target not in family.window:
                rec.skip(degree=k)
                continue
            tgt = family.fiber(target)
            for img in _apply_edge(spec, g, k, rows):
                if any(img) and not tgt.contains_vector(img):
                    rec.record(
                        False,
                        degree=k,
                        expected="image inside fiber",
                        actual="escapes",
                        note=f"generator {g.label()} -> degree {list(target)}",
                    )
                    failed_here = True
                    break
            if failed_here:
                break
        if not failed_here:
            rec.record(True, degree=k, expected="invariant", actual="invariant")
    return rec.result()


def beta_str(spec: ActionSpec) -> str:
    return ",".join(str(b) for b in spec.beta)
