"""Per-fiber homology of the wedge complex, the contraction complex, and the
square-zero endomorphism of each exterior-power module.

At any degree with k + beta != 0 the wedge maps and contraction maps form
exact sequences, so all homology is concentrated at the single degenerate
degree (present only for integral beta), where every map vanishes and the
homology is the whole fiber.  The square-zero endomorphism f(p) has kernel
the maximal family and image the minimal one, so its per-fiber homology
equals the neighbouring minimal-family dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import image, intersect, kernel, mat_mul
from .exterior_algebra import ext_dim, fundamental_subspace
from .graded_modules import ActionSpec, Lambda, Window, beta_str
from .reports import Recorder, Report
from .sl_maps import (
    FamilyKind,
    MapId,
    _map_matrix_scaled,
    build_family,
    f,
    map_degrees,
    pi,
    T,
)
from .torus_lie import require_even


@dataclass(frozen=True)
class ComplexId:
    """DERHAM / TCHAIN positions, or the square-zero endomorphism FSQ(p)
    (FSQ_FUND(p) restricts it to the contraction kernel)."""

    kind: str  # "derham" | "tchain" | "fsq" | "fsq_fund"
    p: int | None = None

    def __str__(self):
        if self.p is None:
            return self.kind.upper()
        return f"{self.kind.upper()}({self.p})"


DERHAM = ComplexId("derham")
TCHAIN = ComplexId("tchain")


def FSQ(p: int) -> ComplexId:
    return ComplexId("fsq", p)


def FSQ_FUND(p: int) -> ComplexId:
    return ComplexId("fsq_fund", p)


def _position(cid: ComplexId, p: int | None) -> int:
    if cid.p is not None:
        if p is not None and p != cid.p:
            raise ValueError("conflicting positions given")
        return cid.p
    if p is None:
        raise ValueError(f"{cid} needs a position")
    return p


def _in_out_maps(cid: ComplexId, p: int, n: int) -> tuple:
    """(incoming map id or None, outgoing map id or None) at position p."""
    if cid.kind == "derham":
        if not 0 <= p <= n:
            raise ValueError(f"position {p} out of range 0..{n}")
        inc = pi(p - 1) if p >= 1 else None
        out = pi(p) if p <= n - 1 else None
        return inc, out
    if cid.kind == "tchain":
        if not 0 <= p <= n:
            raise ValueError(f"position {p} out of range 0..{n}")
        inc = T(p + 1) if p <= n - 1 else None
        out = T(p) if p >= 1 else None
        return inc, out
    if cid.kind in ("fsq", "fsq_fund"):
        if not 1 <= p <= n // 2:
            raise ValueError(f"position {p} out of range 1..{n // 2}")
        return f(p), f(p)
    raise ValueError(f"unknown complex kind {cid.kind!r}")


def complex_homology(
    cid: ComplexId,
    n: int,
    beta,
    window: Window,
    p: int | None = None,
) -> dict:
    """Per-degree homology dimension dim ker(outgoing) - dim im(incoming).

    For FSQ the square-zero identity f o f = 0 is verified first and a
    structural failure raises; for FSQ_FUND kernel and image are both
    intersected with the contraction kernel.
    """
    require_even(n)
    pos = _position(cid, p)
    spec = ActionSpec.make("H", n, Lambda(min(pos, n)), beta)
    inc, out = _in_out_maps(cid, pos, n)
    fund = fundamental_subspace(n, pos) if cid.kind == "fsq_fund" else None
    table: dict = {}
    for k in window.degrees():
        kq = spec.scaled_shift(k)
        dim_here = ext_dim(n, pos)
        if cid.kind == "fsq_fund":
            dim_here = fund.dim
        if out is None:
            ker_dim = dim_here
            ker_sub = None
        else:
            mat = _map_matrix_scaled(out, n, kq)
            if cid.kind == "fsq" and any(x for row in mat_mul(mat, mat) for x in row):
                raise ValueError(f"square-zero violated at degree {k}")
            if cid.kind == "fsq_fund":
                ker_sub = intersect(kernel(mat), fund)
                ker_dim = ker_sub.dim
            else:
                ker_sub = kernel(mat)
                ker_dim = ker_sub.dim
        if inc is None:
            im_dim = 0
        else:
            mat_in = _map_matrix_scaled(inc, n, kq)
            if cid.kind == "fsq_fund":
                im_sub = image(mat_in, fund)
            else:
                im_sub = image(mat_in)
            im_dim = im_sub.dim
            if ker_sub is not None and not ker_sub.contains(im_sub):
                raise ValueError(f"complex property violated at degree {k}")
        table[k] = ker_dim - im_dim
    return table


def predicted_homology(
    cid: ComplexId,
    n: int,
    beta,
    window: Window,
    p: int | None = None,
) -> dict:
    """Closed-form prediction, evaluated from independently built families.

    DERHAM / TCHAIN: zero away from the degenerate degree, the full fiber
    there.  FSQ(p): the minimal-family dimensions one step above plus one
    step below.  FSQ_FUND(p): the image of the wedge map on the restricted
    maximal family (p < n), or the restricted minimal family one step below
    (p = n); the full restricted fiber at the degenerate degree.
    """
    require_even(n)
    pos = _position(cid, p)
    half = n // 2
    _in_out_maps(cid, pos, n)  # validates the position
    spec = ActionSpec.make("H", n, Lambda(min(pos, n)), beta)
    table: dict = {}
    if cid.kind in ("derham", "tchain"):
        for k in window.degrees():
            table[k] = ext_dim(n, pos) if spec.is_special(k) else 0
        return table
    if cid.kind == "fsq":
        above = build_family(FamilyKind.MIN, pos + 1, spec.with_fiber(Lambda(pos + 1)), window)
        below = (
            build_family(FamilyKind.MIN, pos - 1, spec.with_fiber(Lambda(pos - 1)), window)
            if pos >= 1
            else None
        )
        for k in window.degrees():
            if spec.is_special(k):
                table[k] = ext_dim(n, pos)
            else:
                table[k] = above.fiber(k).dim + (below.fiber(k).dim if below else 0)
        return table
    # fsq_fund
    fund_dim = fundamental_subspace(n, pos).dim
    if pos == half:
        lower = build_family(
            FamilyKind.MIN,
            pos - 1,
            spec.with_fiber(Lambda(pos - 1)),
            window,
            restrict_to_fundamental=True,
        )
        for k in window.degrees():
            table[k] = fund_dim if spec.is_special(k) else lower.fiber(k).dim
        return table
    maxf = build_family(
        FamilyKind.MAX, pos, spec.with_fiber(Lambda(pos)), window, restrict_to_fundamental=True
    )
    for k in window.degrees():
        if spec.is_special(k):
            table[k] = fund_dim
            continue
        kq = spec.scaled_shift(k)
        table[k] = image(_map_matrix_scaled(pi(pos), n, kq), maxf.fiber(k)).dim
    return table


def compare_with_prediction(
    cid: ComplexId,
    n: int,
    beta,
    window: Window,
    p: int | None = None,
) -> Report:
    """PASS when the computed homology table matches the prediction fiberwise."""
    pos = _position(cid, p)
    spec = ActionSpec.make("H", n, Lambda(0), beta)
    rec = Recorder(
        "homology",
        {"complex": str(cid), "position": pos, "N": n, "beta": beta_str(spec), "d": window.d},
    )
    computed = complex_homology(cid, n, beta, window, p=pos)
    predicted = predicted_homology(cid, n, beta, window, p=pos)
    for k in window.degrees():
        note = "degenerate degree" if spec.is_special(k) else ""
        rec.expect(predicted[k], computed[k], degree=k, note=note)
    return rec.result()
