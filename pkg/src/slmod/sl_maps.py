"""Symplectic frames, the fiber-level structural maps, and family builders.

The four graded families cut out of Lambda^p (x) Q[t^{+-1}] are built fiber by
fiber from the shifted degree K = k + beta:

    MIN    image of the derivation action of K bar(K)^T
    FULLW  K ^ Lambda^{p-1}
    INT    image of the degree-lowering contraction from Lambda^{p+1}
    MAX    kernel of the derivation action of K bar(K)^T

At the single degree with K = 0 (present only for integral beta) every
defining operator vanishes; a policy flag picks the zero fiber or the full
fiber there, which is exactly the difference between each family and its hat
variant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .exact_linalg import (
    Subspace,
    dot,
    frac,
    image,
    intersect,
    kernel,
    mat_scale,
    rref,
    vec,
)
from .exterior_algebra import (
    ext_dim,
    fundamental_subspace,
    gl_action_matrix,
    interior_matrix,
    wedge_matrix,
)
from .graded_modules import (
    ActionSpec,
    Degree,
    GradedFamily,
    Lambda,
    Window,
    _derivation_int,
    default_generators,
    edge_scalar_scaled,
    fiber_space,
)
from .reports import Recorder, Report
from .torus_lie import AlgebraKind, bar, rank_one_sym, require_even, sympl_form


# ---------------------------------------------------------------------------
# symplectic frames


@dataclass(frozen=True)
class SymplecticFrame:
    """A basis (v0, w_1, ..., w_{N-1}) with (bar v0|w_1) = 1,
    (bar w_{2i}|w_{2i+1}) = 1 and every other pairing zero."""

    v0: tuple
    w: tuple

    def vectors(self) -> tuple:
        return (self.v0,) + self.w

    def validate(self):
        vecs = self.vectors()
        n = len(vecs)
        pairs = {(0, 1)} | {(2 * i, 2 * i + 1) for i in range(1, n // 2)}
        for i in range(n):
            for j in range(i + 1, n):
                expected = 1 if (i, j) in pairs else 0
                got = sympl_form(vecs[i], vecs[j])
                if got != expected:
                    raise ValueError(f"pairing ({i},{j}) is {got}, expected {expected}")
        if rref(vecs).dim != n:
            raise ValueError("frame vectors do not form a basis")


def symplectic_extend(v) -> SymplecticFrame:
    """Deterministic symplectic frame through v.

    w_1 = e_j / (bar v)_j for the smallest j with (bar v)_j nonzero; remaining
    standard basis vectors are projected off the pair via
    u -> u - (bar v|u) w_1 + (bar w_1|u) v and the construction recurses on the
    projected complement, pairing smallest-index-first with pairings
    normalized to 1.
    """
    v = vec(v)
    n = len(v)
    require_even(n)
    if all(x == 0 for x in v):
        raise ValueError("cannot extend the zero vector to a symplectic frame")

    def extend(v0, candidates):
        bv = bar(v0)
        pivot = None
        for u in candidates:
            pairing = dot(bv, u)
            if pairing:
                pivot = (u, pairing)
                break
        if pivot is None:
            raise ValueError("degenerate pairing while extending the frame")
        u1, pairing = pivot
        w1 = tuple(x / pairing for x in u1)
        bw1 = bar(w1)
        projected = []
        for u in candidates:
            coeff_v = dot(bv, u)
            coeff_w = dot(bw1, u)
            proj = tuple(x - coeff_v * y + coeff_w * z for x, y, z in zip(u, w1, v0))
            if any(proj):
                projected.append(proj)
        return w1, projected

    units = [tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)]
    w1, rest = extend(v, units)
    ws = [w1]
    while rest:
        v_next = rest[0]
        w_next, rest = extend(v_next, rest[1:])
        ws.append(v_next)
        ws.append(w_next)
    frame = SymplecticFrame(v, tuple(ws))
    frame.validate()
    return frame


# ---------------------------------------------------------------------------
# fiber-level map matrices


@dataclass(frozen=True)
class MapId:
    """One of the structural maps: pi(p), T(p), theta_tilde(p), f(p)."""

    name: str  # "pi" | "T" | "theta" | "f"
    p: int

    def __str__(self):
        return f"{self.name}({self.p})"


def pi(p: int) -> MapId:
    return MapId("pi", p)


def T(p: int) -> MapId:
    return MapId("T", p)


def theta_tilde(p: int) -> MapId:
    return MapId("theta", p)


def f(p: int) -> MapId:
    return MapId("f", p)


def map_degrees(map_id: MapId, n: int) -> tuple:
    """(source degree, target degree) of the map on exterior powers."""
    p = map_id.p
    if map_id.name == "pi":
        if not 0 <= p <= n - 1:
            raise ValueError(f"pi({p}) needs 0 <= p <= {n - 1}")
        return p, p + 1
    if map_id.name == "T":
        if not 1 <= p <= n:
            raise ValueError(f"T({p}) needs 1 <= p <= {n}")
        return p, p - 1
    if map_id.name == "theta":
        if not 2 <= p <= n:
            raise ValueError(f"theta_tilde({p}) needs 2 <= p <= {n}")
        return p, p - 2
    if map_id.name == "f":
        if not 0 <= p <= n - 1:
            raise ValueError(f"f({p}) needs 0 <= p <= {n - 1}")
        return p, p
    raise ValueError(f"unknown map {map_id.name!r}")


def map_homogeneity(map_id: MapId) -> int:
    """Degree of the matrix entries as polynomials in k + beta."""
    return {"pi": 1, "T": 1, "theta": 0, "f": 2}[map_id.name]


def _map_matrix_scaled(map_id: MapId, n: int, kq: tuple) -> tuple:
    """Integer matrix of the map evaluated at the scaled shift q(k + beta).

    Equals q^homogeneity times the exact matrix.
    """
    from .exterior_algebra import theta_matrix

    p = map_id.p
    if map_id.name == "pi":
        return wedge_matrix(n, p, kq)
    if map_id.name == "T":
        return interior_matrix(n, p, bar(kq))
    if map_id.name == "theta":
        return theta_matrix(n, p)
    # f(p) = T(p+1) o pi(p) = derivation action of K bar(K)^T
    return gl_action_matrix(n, p, rank_one_sym(kq))


def map_matrix(map_id: MapId, k: Degree, beta, n: int | None = None) -> tuple:
    """Exact matrix of the fiber-level map at degree k."""
    beta = vec(beta)
    n = n if n is not None else len(beta)
    require_even(n)
    shift = tuple(frac(ki) + bi for ki, bi in zip(k, beta))
    map_degrees(map_id, n)  # validates the degree range
    q = lcm(*(x.denominator for x in shift)) if shift else 1
    kq = tuple(int(x * q) for x in shift)
    rows = _map_matrix_scaled(map_id, n, kq)
    scale = q ** map_homogeneity(map_id)
    if scale == 1:
        return rows
    return mat_scale(Fraction(1, scale), rows)


# ---------------------------------------------------------------------------
# module-map verification


def verify_module_map(
    map_id: MapId,
    spec: ActionSpec,
    window: Window,
    generators=None,
) -> Report:
    """PASS when the map intertwines every in-window fiber action.

    Checks map(k+r) o act(k -> k+r) = act'(k -> k+r) o map(k) for all degrees
    k in the window and all generators with k + r still inside; pairs whose
    target leaves the window are skipped.

    The sweep is exact: matrices are scaled to integers by the beta
    denominator and compared entrywise (int64, with an overflow guard).
    """
    if spec.kind is not AlgebraKind.H:
        raise ValueError("module-map verification is defined for the Hamiltonian action")
    n = spec.n
    src_p, tgt_p = map_degrees(map_id, n)
    gens = tuple(generators) if generators is not None else default_generators(spec.kind, n)
    rec = Recorder(
        "module-map",
        {"map": str(map_id), "N": n, "beta": ",".join(str(b) for b in spec.beta), "d": window.d},
    )
    q = spec.beta_denominator
    hom = map_homogeneity(map_id)
    degs = window.degrees()
    index = {k: i for i, k in enumerate(degs)}

    phi = np.stack(
        [
            np.array(_map_matrix_scaled(map_id, n, spec.scaled_shift(k)), dtype=np.int64)
            for k in degs
        ]
    )
    src_space = fiber_space(n, Lambda(src_p))
    tgt_space = fiber_space(n, Lambda(tgt_p))
    max_phi = int(np.abs(phi).max(initial=0))
    for g in gens:
        d_src, s_src = _derivation_int(n, Lambda(src_p), g)
        d_tgt, s_tgt = _derivation_int(n, Lambda(tgt_p), g)
        assert s_src == 1 and s_tgt == 1
        d_src = np.array(d_src, dtype=np.int64).reshape(src_space.dim, src_space.dim)
        d_tgt = np.array(d_tgt, dtype=np.int64).reshape(tgt_space.dim, tgt_space.dim)
        srcs, tgts, cs = [], [], []
        skipped = 0
        for k in degs:
            target = tuple(a + b for a, b in zip(k, g.r))
            if target not in window:
                skipped += 1
                continue
            srcs.append(index[k])
            tgts.append(index[target])
            cs.append(edge_scalar_scaled(spec, g, k))
        rec.counts["skipped"] += skipped
        if not srcs:
            continue
        a = phi[np.array(tgts)]
        b = phi[np.array(srcs)]
        c = np.array(cs, dtype=np.int64)[:, None, None]
        # overflow guard for the integer identity below
        max_c = int(np.abs(c).max(initial=0))
        max_d = max(int(np.abs(d_src).max(initial=0)), int(np.abs(d_tgt).max(initial=0)))
        inner = max(src_space.dim, tgt_space.dim)
        if max_c * 2 * max_phi + q * inner * max_phi * max_d >= 2**62:
            raise OverflowError("entries too large for the int64 fast path")
        # q^{hom+1} * (commutation defect) expressed with integer matrices
        lhs = c * (a - b) + q * (a @ d_src - d_tgt @ b)
        if np.any(lhs):
            bad = np.argwhere(np.any(lhs, axis=(1, 2)))[:, 0]
            for idx in bad[:8]:
                k = degs[srcs[int(idx)]]
                rec.record(
                    False,
                    degree=k,
                    expected="intertwines",
                    actual="defect",
                    note=f"generator {g.label()}",
                )
            rec.counts["fail"] += max(0, len(bad) - 8)
            rec.counts["pass"] += len(srcs) - len(bad)
        else:
            rec.counts["pass"] += len(srcs)
    if not rec.failed:
        rec.record(
            True,
            expected="intertwines everywhere",
            actual="intertwines everywhere",
            note=f"{len(gens)} generators over {len(degs)} degrees",
        )
    return rec.result()


# ---------------------------------------------------------------------------
# family builders


class FamilyKind(enum.Enum):
    MIN = "MIN"
    FULLW = "FULLW"
    INT = "INT"
    MAX = "MAX"

    def __str__(self):
        return self.value


class SpecialFiberPolicy(enum.Enum):
    """What to place at the single degree with k + beta = 0."""

    OMIT = "OMIT"
    FULL = "FULL"

    def __str__(self):
        return self.value


def _family_fiber_lambda(kind: FamilyKind, p: int, n: int, kq: tuple) -> Subspace:
    """One fiber of the family on Lambda^p coordinates, for q(k+beta) != 0."""
    dim = ext_dim(n, p)
    if kind is FamilyKind.MIN:
        return image(gl_action_matrix(n, p, rank_one_sym(kq)))
    if kind is FamilyKind.FULLW:
        if p < 1:
            raise ValueError("FULLW needs p >= 1")
        return image(wedge_matrix(n, p - 1, kq))
    if kind is FamilyKind.INT:
        if p > n - 1:
            raise ValueError(f"INT needs p <= {n - 1}")
        return image(interior_matrix(n, p + 1, bar(kq)))
    if kind is FamilyKind.MAX:
        return kernel(gl_action_matrix(n, p, rank_one_sym(kq)))
    raise ValueError(kind)


@lru_cache(maxsize=None)
def _build_family_cached(
    kind: FamilyKind,
    p: int,
    spec: ActionSpec,
    window: Window,
    policy: SpecialFiberPolicy,
    restrict: bool,
) -> GradedFamily:
    n = spec.n
    fibers = {}
    fund = spec.fiber.kind == "fund"
    if fund and spec.fiber.p != p:
        raise ValueError("Fund fiber degree differs from the family degree")
    space = spec.space()
    fund_sub = fundamental_subspace(n, p) if (restrict or fund) else None
    for k in window.degrees():
        kq = spec.scaled_shift(k)
        if not any(kq):
            if policy is SpecialFiberPolicy.FULL:
                # the hat variants carry the whole representation fiber here
                if fund_sub is not None and not fund:
                    fibers[k] = fund_sub
                else:
                    fibers[k] = Subspace.full(space.dim)
            continue
        sub = _family_fiber_lambda(kind, p, n, kq)
        if fund_sub is not None:
            sub = intersect(sub, fund_sub)
        if fund:
            sub = space.restrict_subspace(sub)
        if sub.dim:
            fibers[k] = sub
    return GradedFamily(spec, window, fibers)


def build_family(
    kind: FamilyKind,
    p: int,
    spec: ActionSpec,
    window: Window,
    policy: SpecialFiberPolicy = SpecialFiberPolicy.OMIT,
    restrict_to_fundamental: bool = False,
) -> GradedFamily:
    """The graded family of the given kind on the spec's fiber type.

    With a Lambda(p) fiber the result lives on exterior-power coordinates
    (optionally intersected with the contraction kernel); with a Fund(p)
    fiber it is intersected and converted to kernel coordinates.  The policy
    decides the single degenerate fiber: OMIT is the plain family, FULL the
    hat variant.
    """
    if spec.fiber.kind == "lambda" and spec.fiber.p != p:
        spec = spec.with_fiber(Lambda(p))
    return _build_family_cached(
        FamilyKind(kind), p, spec, window, SpecialFiberPolicy(policy), restrict_to_fundamental
    )


def quotient_dims(outer: GradedFamily, inner: GradedFamily) -> dict:
    """Per-degree dim(outer) - dim(inner); containment is checked first."""
    if outer.window != inner.window:
        raise ValueError("families live on different windows")
    out = {}
    for k in outer.window.degrees():
        o = outer.fiber(k)
        i = inner.fiber(k)
        if not o.contains(i):
            raise ValueError(f"containment violated at degree {k}")
        out[k] = o.dim - i.dim
    return out
