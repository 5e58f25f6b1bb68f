"""Independent route to the principal asymmetry value.

Assembles the subleading symbol parts of the Hodge Laplacian on 1-forms
directly from curvature-derivative tensors, runs the square-root symbol
hierarchy for the half and inverse-half powers, and extracts the principal
asymmetry value from the two deepest components.  This path shares only the
polynomial and geometry layers with the projection construction, so exact
agreement of the two results is a strong cross-check.

All of this assumes the Ricci tensor itself vanishes at the origin; only its
covariant derivative enters, which still covers every curvature direction the
asymmetry value can feel.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactpoly import (
    GR_I,
    GaussianRational,
    TruncatedPoly,
    poly_add,
    poly_diff,
    poly_mul,
    rat,
)
from .geometry import (
    CurvatureConfig,
    MetricJet,
    build_metric_jet,
    epsilon,
    euclid_norm_power_jet,
    norm_power_jet,
    riemann_from_ricci,
    xi_polys,
)
from .polymat import (
    Matrix,
    identity_mat,
    mat_add,
    mat_map,
    mat_scale,
)

_WORK_ORDER = 4
_X_VARS = (0, 1, 2)
_ETA_VARS = (3, 4, 5)


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def hodge_symbol(cfg: CurvatureConfig) -> tuple:
    """Degree-1 and degree-0 symbol parts of the Hodge Laplacian on 1-forms.

    Returns (q1, q0) as matrices of truncated polynomials: q1 is linear in
    the covector and quadratic in x, q0 linear in x, both assembled from the
    covariant derivatives of Ricci and Riemann at the origin.  Accurate up to
    the stated higher-order-in-x remainders.
    """
    if any(v != 0 for row in cfg.ric0 for v in row):
        raise ValueError("requires vanishing Ricci tensor at the origin")
    _, driem0 = riemann_from_ricci(cfg)
    dric = cfg.dric0
    order = _WORK_ORDER

    # a_al{}^{be ga}{}_{mu nu}; index raising at the origin is trivial.
    def a_tensor(al, be, ga, mu, nu):
        val = rat(0)
        if al == be:
            val += rat(1, 2) * dric[mu][ga][nu] - rat(1, 12) * dric[ga][mu][nu]
        val -= (
            driem0[al][ga][mu][be][nu]
            - 3 * driem0[mu][ga][al][be][nu]
            + 5 * driem0[nu][ga][mu][be][al]
        ) * rat(1, 6)
        return val

    def b_tensor(al, be, nu):
        return (
            -rat(1, 6) * dric[be][al][nu]
            + rat(1, 2) * dric[al][be][nu]
            + rat(1, 2) * dric[nu][al][be]
        )

    x = [TruncatedPoly.variable(i, order) for i in range(3)]
    xi = xi_polys(order)

    q1_rows = []
    q0_rows = []
    for al in range(3):
        q1_row = []
        q0_row = []
        for be in range(3):
            acc1 = TruncatedPoly.zero(order)
            for ga in range(3):
                for mu in range(3):
                    for nu in range(3):
                        coeff = a_tensor(al, be, ga, mu, nu)
                        if coeff == 0:
                            continue
                        acc1 = poly_add(
                            acc1,
                            poly_mul(poly_mul(xi[ga], x[mu]), x[nu]).scale(
                                coeff
                            ),
                        )
            q1_row.append(acc1.scale(GR_I))
            acc0 = TruncatedPoly.zero(order)
            for nu in range(3):
                coeff = b_tensor(al, be, nu)
                if coeff != 0:
                    acc0 = poly_add(acc0, x[nu].scale(coeff))
            q0_row.append(acc0)
        q1_rows.append(tuple(q1_row))
        q0_rows.append(tuple(q0_row))
    return tuple(q1_rows), tuple(q0_rows)


@dataclass(frozen=True)
class HodgeHierarchy:
    """Symbol components of the half and inverse-half Laplacian powers."""

    config: CurvatureConfig
    mj: MetricJet
    q1: Matrix
    q0: Matrix
    r0: Matrix
    r_m1: Matrix
    r_m2: Matrix
    s_m2: Matrix
    s_m3: Matrix
    s_m4: Matrix


def sqrt_hierarchy(q1: Matrix, q0: Matrix, mj: MetricJet) -> HodgeHierarchy:
    """Solve the symbol hierarchy for the square-root powers.

    r0, r_m1, r_m2 are the components of the half power below the Riemannian
    norm; s_m2, s_m3, s_m4 those of the inverse-half power below the inverse
    norm.  Each identity mixes the Euclidean norm jet (covector derivatives)
    with Riemannian norm jets (base derivatives), exactly as the hierarchy is
    stated, and each result is reliable only up to its stated remainder.
    """
    order = _WORK_ORDER
    ident = identity_mat(order)
    xi = xi_polys(order)

    eu1 = euclid_norm_power_jet(1, order).jet
    eum1 = euclid_norm_power_jet(-1, order).jet
    eum2 = euclid_norm_power_jet(-2, order).jet
    rn1 = norm_power_jet(mj, 1, order).jet
    rnm1 = norm_power_jet(mj, -1, order).jet

    half = rat(1, 2)
    inv_i = -GR_I  # 1/i

    def dxi(p: TruncatedPoly, *vs: int) -> TruncatedPoly:
        for v in vs:
            p = poly_diff(p, _ETA_VARS[v])
        return p

    def transport_term(m: Matrix) -> Matrix:
        """(1/(i |xi|^2)) xi^mu d_x^mu applied to a matrix symbol."""
        out = None
        for mu in range(3):
            term = mat_map(
                lambda p: poly_mul(poly_mul(eum2, xi[mu]), poly_diff(p, mu)),
                m,
            )
            out = term if out is None else mat_add(out, term)
        return mat_map(lambda p: p.scale(inv_i), out)

    def hess_term(m: Matrix, weight) -> Matrix:
        """weight * |xi|^{-?} sum of d2_xi |xi| times d2_x of m."""
        out = None
        for mu in range(3):
            for nu in range(3):
                w = dxi(eu1, mu, nu)
                term = mat_map(
                    lambda p: poly_mul(
                        w, poly_diff(poly_diff(p, mu), nu)
                    ),
                    m,
                )
                out = term if out is None else mat_add(out, term)
        return mat_map(lambda p: poly_mul(p, weight), out)

    def third_term(m: Matrix, weight) -> Matrix:
        out = None
        for mu in range(3):
            for nu in range(3):
                for ro in range(3):
                    w = dxi(eu1, mu, nu, ro)
                    term = mat_map(
                        lambda p: poly_mul(
                            w,
                            poly_diff(
                                poly_diff(poly_diff(p, mu), nu), ro
                            ),
                        ),
                        m,
                    )
                    out = term if out is None else mat_add(out, term)
        return mat_map(lambda p: poly_mul(p, weight), out)

    def times(jet, m: Matrix) -> Matrix:
        return mat_map(lambda p: poly_mul(jet, p), m)

    rn_mat = mat_map(lambda p: poly_mul(rn1, p), ident)
    rnm1_mat = mat_map(lambda p: poly_mul(rnm1, p), ident)

    half_eum1 = eum1.scale(half)

    r0 = mat_add(
        times(half_eum1, q1),
        mat_scale(transport_term(rn_mat), rat(-1, 2)),
    )
    r_m1 = mat_add(
        mat_add(
            times(half_eum1, q0),
            mat_scale(transport_term(r0), rat(-1, 2)),
        ),
        hess_term(rn_mat, eum1.scale(rat(1, 4))),
    )
    r_m2 = mat_add(
        mat_add(
            mat_scale(transport_term(r_m1), rat(-1, 2)),
            hess_term(r0, eum1.scale(rat(1, 4))),
        ),
        mat_scale(third_term(rn_mat, eum1.scale(rat(1, 12))), inv_i),
    )

    s_m2 = mat_add(
        mat_scale(times(eum2, r0), rat(-1)),
        mat_scale(transport_term(rnm1_mat), rat(-1)),
    )
    s_m3 = mat_add(
        mat_add(
            mat_scale(times(eum2, r_m1), rat(-1)),
            mat_scale(transport_term(s_m2), rat(-1)),
        ),
        hess_term(rnm1_mat, eum1.scale(half)),
    )
    s_m4 = mat_add(
        mat_add(
            mat_add(
                mat_scale(times(eum2, r_m2), rat(-1)),
                mat_scale(transport_term(s_m3), rat(-1)),
            ),
            hess_term(s_m2, eum1.scale(half)),
        ),
        mat_scale(third_term(rnm1_mat, eum1.scale(rat(1, 6))), inv_i),
    )

    return HodgeHierarchy(
        mj.config,
        mj,
        q1,
        q0,
        r0,
        r_m1,
        r_m2,
        s_m2,
        s_m3,
        s_m4,
    )


def build_hierarchy(cfg: CurvatureConfig) -> HodgeHierarchy:
    q1, q0 = hodge_symbol(cfg)
    mj = build_metric_jet(cfg, order=_WORK_ORDER)
    return sqrt_hierarchy(q1, q0, mj)


def aprin_alternative(h: HodgeHierarchy) -> GaussianRational:
    """Principal asymmetry value from the inverse-half power components.

    Contracts the alternating symbol with the base derivative of the degree
    -3 component plus i times the anchor covector against the degree -4
    component, evaluated at the anchor point.
    """
    total = GaussianRational(0)
    for be in range(3):
        for al in range(3):
            for ga in range(3):
                sign = epsilon(be, al, ga)
                if sign == 0:
                    continue
                val = poly_diff(h.s_m3[al][be], ga).constant_term()
                if ga == 2:
                    val = val + h.s_m4[al][be].constant_term() * GR_I
                total = total + val * rat(sign)
    return -total
