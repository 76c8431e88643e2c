"""Two-sided subgroup actions on a compact group and their quotient curvature.

A subgroup U of G x G acts by (u_L, u_R) . g = u_L g u_R^{-1}.  When the
action is free and the metric is invariant under the right projection of
U, the quotient carries a metric and

    sec_quotient(x, y) = sec_G(x, y) + 3/4 ||[X, Y]^vertical||^2

for orthonormal horizontal x, y.  Working in the left-translated frame,
the vertical space at g is spanned by Ad_{g^{-1}} X_L - X_R over a basis
(X_L, X_R) of the Lie algebra of U, and the vertical part of the bracket
of horizontal extensions has norm

    z(a, b; g) = max_{0 != X in u} |<Ad_{g^{-1}} X_L, L(a,b)> - <X_R, [a,b]>|
                 / |X*(g)|,

a generalized Rayleigh quotient computed in closed form from the Gram
matrix of the vertical generators (no iterative search).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from . import freeness
from .algebra import (
    AlgebraElement,
    AlgebraError,
    GroupElement,
    GroupFamily,
    RootDecomposition,
    Subspace,
    adjoint,
    bracket,
    quaternion_block,
    root_decomposition,
    torus_element,
)
from .curvature import DegeneratePlaneError, puttmann_numerator
from .metric import L_tensor, MetricOperator

HORIZONTAL_TOL = 1e-9


class NonFreePointError(ValueError):
    """The action field degenerates at this point (Gram matrix singular)."""


class NonHorizontalError(ValueError):
    """Input vector is not horizontal at the given point (beyond tolerance)."""


@dataclass(frozen=True)
class BiquotientAction:
    """Subgroup U of G x G given by Lie-algebra generator pairs.

    torus_weights, when present, are the integer characters of a maximal
    torus of U (equal to U's own characters when U is a torus); they feed
    the exact freeness checker.  mode records the intended freeness notion.
    """

    group: GroupFamily
    u_basis: tuple  # of (AlgebraElement, AlgebraElement) pairs
    torus_weights: "freeness.TorusActionWeights | None" = None
    mode: str = "strict"
    label: str = ""

    def __post_init__(self):
        dec = root_decomposition(self.group)
        rows = []
        for xl, xr in self.u_basis:
            if xl.family != self.group or xr.family != self.group:
                raise AlgebraError("generator pair from the wrong algebra")
            rows.append(np.concatenate([dec.to_coords(xl), dec.to_coords(xr)]))
        if rows and np.linalg.matrix_rank(np.asarray(rows)) < len(rows):
            raise AlgebraError("u_basis must be linearly independent in g + g")

    @property
    def dim_u(self) -> int:
        return len(self.u_basis)

    def dec(self) -> RootDecomposition:
        return root_decomposition(self.group)


def from_torus_weights(w: "freeness.TorusActionWeights", label: str = "") -> BiquotientAction:
    """Torus action from integer weight matrices (one circle per column).

    SU weight columns may have a nonzero (but equal on both sides) sum:
    the pair then lives in u(n) x u(n), and the common scalar part is
    dropped from both generators, which leaves the action on the
    determinant-one group unchanged.
    """
    fam = w.group
    pairs = []
    for j in range(w.k):
        cl = _column(w.w_left, j)
        cr = _column(w.w_right, j)
        if fam.name == "SU":
            # equal column sums are enforced by the weights invariant
            cl = cl - cl.mean()
            cr = cr - cr.mean()
        xl = torus_element(fam, cl)
        xr = torus_element(fam, cr)
        pairs.append((xl, xr))
    return BiquotientAction(
        group=fam, u_basis=tuple(pairs), torus_weights=w, mode=w.mode, label=label
    )


def _column(rows, j):
    return np.array([float(r[j]) for r in rows])


def trivial_action(fam: GroupFamily) -> BiquotientAction:
    return BiquotientAction(group=fam, u_basis=(), label="trivial")


def one_sided_action(fam, generators, side: str = "right", label: str = "") -> BiquotientAction:
    """U acting by left translations only or right translations only."""
    from .algebra import zero

    z = zero(fam)
    if side == "right":
        pairs = tuple((z, x) for x in generators)
    elif side == "left":
        pairs = tuple((x, z) for x in generators)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return BiquotientAction(group=fam, u_basis=pairs, label=label or f"one-sided-{side}")


def gromoll_meyer_action() -> BiquotientAction:
    """The Sp(1) action (diag(q,q), diag(q,1)) on Sp(2)."""
    fam = GroupFamily("Sp", 2)
    units = [_imag_unit(m) for m in range(3)]

    def dq(q1, q2):
        b = np.diag([q1[0], q2[0]])
        c = np.diag([q1[1], q2[1]])
        return AlgebraElement(fam, quaternion_block(b, c))

    zero_q = (0.0, 0.0)
    pairs = tuple((dq(uq, uq), dq(uq, zero_q)) for uq in units)
    w = freeness.TorusActionWeights(
        group=fam, k=1, w_left=((1,), (1,)), w_right=((1,), (0,))
    )
    return BiquotientAction(
        group=fam, u_basis=pairs, torus_weights=w, label="gromoll-meyer"
    )


def _imag_unit(m):
    # quaternion units i, j, k as (b, c) components of b + jc
    return [(1j, 0.0), (0.0, 1.0), (0.0, -1j)][m]


def unit_tangent_flow_action(n: int) -> BiquotientAction:
    """Diagonal circle (geodesic flow) on the left of SO(2n+1), block
    SO(2n-1) on the right; the quotient of the unit tangent bundle of the
    n-sphere by its geodesic flow."""
    fam = GroupFamily("SO", 2 * n + 1)
    size = fam.matrix_size
    dec = root_decomposition(fam)
    z_delta = torus_element(fam, np.ones(n))
    pairs = [(z_delta, _zero(fam))]
    for i in range(2 * n - 1):
        for j in range(i + 1, 2 * n - 1):
            m = np.zeros((size, size), dtype=complex)
            m[i, j] = 1.0
            m[j, i] = -1.0
            pairs.append((_zero(fam), AlgebraElement(fam, m)))
    w = freeness.TorusActionWeights(
        group=fam,
        k=n,
        w_left=tuple((1,) + (0,) * (n - 1) for _ in range(n)),
        w_right=tuple(
            tuple(1 if j == i + 1 else 0 for j in range(n)) for i in range(n - 1)
        )
        + ((0,) * n,),
    )
    return BiquotientAction(
        group=fam, u_basis=tuple(pairs), torus_weights=w,
        mode="mod-center", label=f"unit-tangent-flow-S{n}",
    )


def _zero(fam):
    from .algebra import zero

    return zero(fam)


# ---------------------------------------------------------------------------
# vertical / horizontal geometry at a point
# ---------------------------------------------------------------------------

def vertical_vectors(act: BiquotientAction, g: GroupElement):
    """Left-translated action-field values Ad_{g^{-1}} X_L - X_R per generator."""
    ginv = g.inverse()
    return [adjoint(ginv, xl) - xr for xl, xr in act.u_basis]


def vertical_space(act: BiquotientAction, g: GroupElement) -> Subspace:
    """Span of the vertical generators at g (dimension < dim U flags a
    non-free point; no error is raised here)."""
    dec = act.dec()
    vecs = vertical_vectors(act, g)
    if not vecs:
        return Subspace(dec, np.zeros((0, dec.dim)), label="vertical")
    return Subspace.from_elements(dec, vecs, label="vertical")


def horizontal_space(act: BiquotientAction, g: GroupElement, P: MetricOperator) -> Subspace:
    """Metric-orthogonal complement of the vertical space at g."""
    dec = act.dec()
    vecs = vertical_vectors(act, g)
    if not vecs:
        return Subspace(dec, np.eye(dec.dim), label="horizontal")
    vc = np.asarray([dec.to_coords(v) for v in vecs])
    basis = scipy.linalg.null_space(vc @ P.mat).T
    return Subspace(dec, basis, label="horizontal")


def action_gram(act: BiquotientAction, g: GroupElement, P: MetricOperator) -> np.ndarray:
    """Gram matrix N_jk = <v_j, v_k> of the vertical generators; positive
    definite exactly when the action is free at g."""
    dec = act.dec()
    vc = np.asarray([dec.to_coords(v) for v in vertical_vectors(act, g)])
    if vc.size == 0:
        return np.zeros((0, 0))
    return vc @ P.mat @ vc.T


@dataclass(frozen=True)
class PointFrame:
    """Cached vertical data for one (action, point, metric) triple."""

    act: BiquotientAction
    g: GroupElement
    P: MetricOperator
    vert_coords: np.ndarray  # (dim_u, dim) raw generator coordinates
    gram: np.ndarray
    gram_inv: np.ndarray | None

    @classmethod
    def at(cls, act, g, P):
        dec = act.dec()
        vc = np.asarray([dec.to_coords(v) for v in vertical_vectors(act, g)])
        if vc.size == 0:
            vc = np.zeros((0, dec.dim))
        gram = vc @ P.mat @ vc.T
        gram_inv = None
        if gram.shape[0]:
            eigs = np.linalg.eigvalsh(gram)
            if eigs.min() > 1e-12 * max(eigs.max(), 1.0):
                gram_inv = np.linalg.inv(gram)
        return cls(act=act, g=g, P=P, vert_coords=vc, gram=gram, gram_inv=gram_inv)

    @property
    def is_free_point(self) -> bool:
        return self.gram.shape[0] == 0 or self.gram_inv is not None

    def horizontal(self) -> Subspace:
        return horizontal_space(self.act, self.g, self.P)

    def horizontal_residual(self, coords) -> float:
        if self.vert_coords.size == 0:
            return 0.0
        pairings = self.vert_coords @ (self.P.mat @ np.asarray(coords))
        return float(np.linalg.norm(pairings))

    def project_horizontal(self, coords) -> np.ndarray:
        """Metric-orthogonal projection onto the horizontal space."""
        c = np.asarray(coords, dtype=float)
        if self.vert_coords.size == 0:
            return c
        if self.gram_inv is None:
            raise NonFreePointError("action is not free at this point")
        pairings = self.vert_coords @ (self.P.mat @ c)
        return c - self.vert_coords.T @ (self.gram_inv @ pairings)


def z_term(
    act: BiquotientAction,
    g: GroupElement,
    P: MetricOperator,
    a: AlgebraElement,
    b: AlgebraElement,
    frame: PointFrame | None = None,
) -> float:
    """Norm of the vertical part of the bracket of horizontal extensions of
    a, b at g; requires a, b horizontal and the action free at g."""
    frame = frame or PointFrame.at(act, g, P)
    if frame.vert_coords.size == 0:
        return 0.0
    if frame.gram_inv is None:
        raise NonFreePointError("action is not free at this point")
    dec = act.dec()
    ca, cb = dec.to_coords(a), dec.to_coords(b)
    scale = max(np.linalg.norm(ca), np.linalg.norm(cb), 1e-300)
    for c in (ca, cb):
        if frame.horizontal_residual(c) > HORIZONTAL_TOL * scale:
            raise NonHorizontalError("input vector is not horizontal at g")
    c_vec = _z_pairings(act, g, P, a, b, dec)
    val = float(c_vec @ frame.gram_inv @ c_vec)
    return float(np.sqrt(max(val, 0.0)))


def _z_pairings(act, g, P, a, b, dec):
    ell = L_tensor(P, a, b)
    ab = bracket(a, b)
    p_ell = P.apply_coords(dec.to_coords(ell))
    p_ab = P.apply_coords(dec.to_coords(ab))
    ginv = g.inverse()
    out = np.empty(len(act.u_basis))
    for j, (xl, xr) in enumerate(act.u_basis):
        out[j] = dec.to_coords(adjoint(ginv, xl)) @ p_ell - dec.to_coords(xr) @ p_ab
    return out


@dataclass(frozen=True)
class PlaneReport:
    """Curvature record for one horizontal 2-plane at one point."""

    point: GroupElement
    x: AlgebraElement
    y: AlgebraElement
    sec_g: float
    oneill_term: float
    sec_quotient: float
    certificate: str = "none"  # N1 | N2 | N3 | numeric | none

    def to_dict(self):
        return {
            "sec_G": self.sec_g,
            "oneill_term": self.oneill_term,
            "sec_quotient": self.sec_quotient,
            "certificate": self.certificate,
        }


def quotient_sectional(
    act: BiquotientAction,
    g: GroupElement,
    P: MetricOperator,
    a: AlgebraElement,
    b: AlgebraElement,
    frame: PointFrame | None = None,
    certificate: str = "none",
) -> PlaneReport:
    """Quotient sectional curvature of the horizontal plane span{a, b} at g.

    Inputs within the horizontality tolerance are projected onto the
    horizontal space, then orthonormalized; others are rejected.
    """
    frame = frame or PointFrame.at(act, g, P)
    if not frame.is_free_point:
        raise NonFreePointError("action is not free at this point")
    dec = act.dec()
    ca, cb = dec.to_coords(a), dec.to_coords(b)
    for c in (ca, cb):
        if frame.horizontal_residual(c) > HORIZONTAL_TOL * max(np.linalg.norm(c), 1e-300):
            raise NonHorizontalError("input vector is not horizontal at g")
    ca = frame.project_horizontal(ca)
    cb = frame.project_horizontal(cb)

    # metric orthonormalization of the frame
    pm = P.mat
    na = np.sqrt(ca @ pm @ ca)
    if na <= 0:
        raise DegeneratePlaneError("zero vector")
    cx = ca / na
    cb = cb - (cb @ pm @ cx) * cx
    nb = np.sqrt(cb @ pm @ cb)
    if nb * nb <= 1e-12:
        raise DegeneratePlaneError("a and b do not span a 2-plane")
    cy = cb / nb

    x = dec.from_coords(cx)
    y = dec.from_coords(cy)
    sec_g = puttmann_numerator(P, x, y)
    z = z_term(act, g, P, x, y, frame=frame)
    oneill = 0.75 * z * z
    return PlaneReport(
        point=g, x=x, y=y, sec_g=sec_g, oneill_term=oneill,
        sec_quotient=sec_g + oneill, certificate=certificate,
    )


def with_certificate(report: PlaneReport, certificate: str) -> PlaneReport:
    return replace(report, certificate=certificate)
