"""Shipped interval-valued benchmark problems.

Every problem intervalizes a classically flavored multiobjective instance:
each objective f_i becomes [f_i, f_i + w_i] with a smooth nonnegative width
w_i (constant or x-dependent), so endpoint functions never cross and analytic
endpoint gradients are available everywhere. Constant-width objectives have
degenerate gH-gradients, hence their Pareto critical set coincides with the
classical one; x-dependent widths enlarge the calculus but keep everything
smooth.

The registry spans one- to thirty-dimensional decision spaces, biobjective
and triobjective instances, and convex-quadratic as well as nonconvex
families. Problem names are stable CLI identifiers; ``datasheet_markdown``
renders the per-problem documentation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .ivf import IntervalObjective, Ivmop

__all__ = [
    "Family",
    "ProblemSpec",
    "registry",
    "lookup",
    "problem_names",
    "sample_start",
    "datasheet_markdown",
]


class Family(str, enum.Enum):
    CONVEX_QUADRATIC = "convex-quadratic"
    NONCONVEX = "nonconvex"


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    family: Family
    ivmop: Ivmop
    reference_note: str
    datasheet: str

    @property
    def is_convex(self) -> bool:
        return self.family is Family.CONVEX_QUADRATIC


def _interval_objective(f, gf, w=None, gw=None) -> IntervalObjective:
    """Objective [f, f + w]; degenerate (classical) when w is omitted."""
    if w is None:
        return IntervalObjective(lower_fn=f, upper_fn=f,
                                 lower_grad=gf, upper_grad=gf)
    return IntervalObjective(
        lower_fn=f,
        upper_fn=lambda x, f=f, w=w: f(x) + w(x),
        lower_grad=gf,
        upper_grad=lambda x, gf=gf, gw=gw: gf(x) + gw(x),
    )


def _quad(center, weights):
    """f(x) = sum_j weights_j (x_j - center_j)^2 with its gradient."""
    center = np.asarray(center, dtype=float)
    weights = np.asarray(weights, dtype=float)

    def f(x, c=center, a=weights):
        return float(a @ (x - c) ** 2)

    def gf(x, c=center, a=weights):
        return 2.0 * a * (x - c)

    return f, gf


def _const_width(value):
    return (lambda x, v=value: v), (lambda x: np.zeros_like(x))


def _quad_width(base, coef):
    """w(x) = base + coef * ||x||^2 (smooth, nonnegative for base, coef >= 0)."""
    return (lambda x, b=base, c=coef: b + c * float(x @ x)),\
           (lambda x, c=coef: 2.0 * c * x)


def _spec(name, family, n, m, objectives, box_lo, box_hi, reference_note,
          datasheet) -> ProblemSpec:
    ivmop = Ivmop(name=name, n=n, m=m, objectives=tuple(objectives),
                  box_lo=np.full(n, float(box_lo)) if np.isscalar(box_lo) else np.asarray(box_lo, float),
                  box_hi=np.full(n, float(box_hi)) if np.isscalar(box_hi) else np.asarray(box_hi, float))
    return ProblemSpec(name=name, family=family, ivmop=ivmop,
                       reference_note=reference_note, datasheet=datasheet)


def _make_parab1() -> ProblemSpec:
    f1, g1 = _quad([0.0], [1.0])
    f2, g2 = _quad([2.0], [1.0])
    w1, gw1 = _const_width(1.0)
    w2, gw2 = _const_width(0.5)
    return _spec(
        "iv-parab1", Family.CONVEX_QUADRATIC, 1, 2,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2)],
        -5.0, 5.0,
        "one-dimensional pair of shifted parabolas with constant widths",
        "G1 = [x^2, x^2 + 1], G2 = [(x-2)^2, (x-2)^2 + 0.5] on the box "
        "[-5, 5]. Constant widths make the gH-gradients degenerate, so the "
        "Pareto critical set is the classical interval [0, 2].")


def _make_quad_tr1() -> ProblemSpec:
    f1, g1 = _quad([0.0, 0.0], [1.0, 1.0])
    f2, g2 = _quad([1.0, 1.0], [1.0, 1.0])
    w1, gw1 = _const_width(1.0)
    w2, gw2 = _const_width(0.5)
    return _spec(
        "iv-quad-tr1", Family.CONVEX_QUADRATIC, 2, 2,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2)],
        -2.0, 2.0,
        "strongly convex biobjective quadratic, widths constant in x",
        "G1 = [r0, r0 + 1] with r0 = x1^2 + x2^2 and G2 = [r1, r1 + 0.5] "
        "with r1 = (x1-1)^2 + (x2-1)^2, box [-2, 2]^2. Critical set: the "
        "segment x1 = x2 in [0, 1] joining the two minimizers.")


def _make_bk1() -> ProblemSpec:
    f1, g1 = _quad([0.0, 0.0], [1.0, 1.0])
    f2, g2 = _quad([5.0, 5.0], [1.0, 1.0])
    w1, gw1 = _quad_width(1.0, 0.05)
    w2, gw2 = _const_width(1.0)
    return _spec(
        "iv-bk1", Family.CONVEX_QUADRATIC, 2, 2,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2)],
        -5.0, 10.0,
        "origin-vs-(5,5) quadratic pair, one growing width",
        "G1 = [r0, 1.05 r0 + 1] with r0 = x1^2 + x2^2 and G2 = [r5, r5 + 1] "
        "with r5 = (x1-5)^2 + (x2-5)^2, box [-5, 10]^2. Critical points lie "
        "along the segment joining the origin and (5, 5); the x-dependent "
        "width of G1 shifts its upper-endpoint minimizer toward the origin.")


def _make_sd_quad() -> ProblemSpec:
    a = [1.0, 2.0, 5.0, 10.0]
    f1, g1 = _quad([0.0, 0.0, 0.0, 0.0], a)
    f2, g2 = _quad([1.0, 1.0, -1.0, 0.5], a)
    w1, gw1 = _quad_width(0.5, 0.1)
    w2, gw2 = _const_width(1.0)
    return _spec(
        "iv-sd-quad", Family.CONVEX_QUADRATIC, 4, 2,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2)],
        -3.0, 3.0,
        "anisotropic four-dimensional quadratic pair",
        "Diagonal weights (1, 2, 5, 10); G1 = [q(x; 0), q(x; 0) + 0.5 + "
        "0.1||x||^2], G2 = [q(x; c), q(x; c) + 1] with c = (1, 1, -1, 0.5), "
        "box [-3, 3]^4. Mild anisotropy (condition number 10) exercises "
        "conjugacy without stressing the line search.")


def _make_quad30() -> ProblemSpec:
    n = 30
    a = 1.0 + np.arange(1, n + 1) / 10.0
    b = a[::-1].copy()
    c = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    f1, g1 = _quad(np.zeros(n), a)
    f2, g2 = _quad(c, b)
    w1, gw1 = _const_width(1.0)
    w2, gw2 = _quad_width(2.0, 0.01)
    return _spec(
        "iv-quad30", Family.CONVEX_QUADRATIC, n, 2,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2)],
        -2.0, 2.0,
        "thirty-dimensional quadratic pair with alternating-sign targets",
        "G1 = [sum a_j x_j^2, . + 1] with a_j = 1 + j/10; G2 targets the "
        "alternating-sign point c_j = (-1)^(j+1) with reversed weights and "
        "width 2 + 0.01||x||^2; box [-2, 2]^30. The largest instance in the "
        "registry; keeps the direction QP at 61 variables.")


def _make_illcond() -> ProblemSpec:
    n = 8
    a1 = np.geomspace(1.0, 200.0, n)
    a2 = a1[::-1].copy()
    c2 = np.where(np.arange(n) % 2 == 0, 1.0, -1.0) * 0.5
    f1, g1 = _quad(np.zeros(n), a1)
    f2, g2 = _quad(c2, a2)
    w1, gw1 = _const_width(1.0)
    w2, gw2 = _const_width(0.5)
    return _spec(
        "iv-illcond", Family.CONVEX_QUADRATIC, n, 2,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2)],
        -2.0, 2.0,
        "ill-conditioned quadratic pair separating the solver variants",
        "G1 = [sum a_j x_j^2, . + 1] with a_j log-spaced from 1 to 200 and "
        "G2 the reversed weights centered at the alternating point "
        "(+-0.5, ...), width 0.5; box [-2, 2]^8. Condition number 200 makes "
        "plain steepest descent take hundreds of iterations while the "
        "conjugate variants need tens, so performance profiles separate "
        "cleanly here.")


def _make_mhhm2() -> ProblemSpec:
    centers = [(0.8, 0.6), (0.85, 0.7), (0.9, 0.6)]
    widths = [0.1, 0.2, 0.15]
    objectives = []
    for ctr, wd in zip(centers, widths):
        f, gf = _quad(ctr, [1.0, 1.0])
        w, gw = _const_width(wd)
        objectives.append(_interval_objective(f, gf, w, gw))
    return _spec(
        "iv-mhhm2-like", Family.CONVEX_QUADRATIC, 2, 3,
        objectives, 0.0, 1.0,
        "triobjective distance-to-three-centers instance",
        "G_i = [||x - c_i||^2, ||x - c_i||^2 + w_i] with centers (0.8, 0.6), "
        "(0.85, 0.7), (0.9, 0.6) and widths (0.1, 0.2, 0.15), box [0, 1]^2. "
        "Constant widths: the critical set is the classical one, the filled "
        "triangle spanned by the three centers.")


def _make_vfm1() -> ProblemSpec:
    f1, g1 = _quad([0.0, 1.0], [1.0, 1.0])

    def f2(x):
        return float(x[0] ** 2 + (x[1] + 1.0) ** 2 + 1.0)

    def g2(x):
        return np.array([2.0 * x[0], 2.0 * (x[1] + 1.0)])

    def f3(x):
        return float((x[0] - 1.0) ** 2 + x[1] ** 2 + 2.0)

    def g3(x):
        return np.array([2.0 * (x[0] - 1.0), 2.0 * x[1]])

    w1, gw1 = _const_width(0.5)
    w2, gw2 = _quad_width(0.25, 0.05)
    w3, gw3 = _const_width(1.0)
    return _spec(
        "iv-vfm1-like", Family.CONVEX_QUADRATIC, 2, 3,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2),
         _interval_objective(f3, g3, w3, gw3)],
        -2.0, 2.0,
        "classical triobjective quadratic trio with offsets",
        "G1 = [x1^2 + (x2-1)^2, . + 0.5], G2 = [x1^2 + (x2+1)^2 + 1, "
        ". + 0.25 + 0.05||x||^2], G3 = [(x1-1)^2 + x2^2 + 2, . + 1], box "
        "[-2, 2]^2. Critical set: triangle spanned by (0, 1), (0, -1), "
        "(1, 0) for the classical part.")


def _make_fon() -> ProblemSpec:
    a = 1.0 / np.sqrt(3.0)

    def f1(x, a=a):
        return float(1.0 - np.exp(-np.sum((x - a) ** 2)))

    def g1(x, a=a):
        return 2.0 * np.exp(-np.sum((x - a) ** 2)) * (x - a)

    def f2(x, a=a):
        return float(1.0 - np.exp(-np.sum((x + a) ** 2)))

    def g2(x, a=a):
        return 2.0 * np.exp(-np.sum((x + a) ** 2)) * (x + a)

    def w(x):
        return 0.1 + 0.1 * float(np.exp(-x @ x))

    def gw(x):
        return -0.2 * np.exp(-x @ x) * x

    return _spec(
        "iv-fon-like", Family.NONCONVEX, 3, 2,
        [_interval_objective(f1, g1, w, gw),
         _interval_objective(f2, g2, w, gw)],
        -2.0, 2.0,
        "nonconvex biobjective with exponential endpoints",
        "G_i = [1 - exp(-||x -/+ a||^2) , . + 0.1 + 0.1 exp(-||x||^2)] with "
        "a = 3^(-1/2)(1, 1, 1), box [-2, 2]^3. Classical critical set: the "
        "segment between -a and a; the flat far field makes many points "
        "numerically critical, as is typical for this family.")


def _make_deb() -> ProblemSpec:
    f1, g1 = _quad([0.0, 0.0], [1.0, 1.0])

    def f2(x):
        return float((x[0] - 1.0) ** 2 + (x[1] - 1.0) ** 2
                     + 0.4 * np.cos(2.0 * np.pi * x[0]))

    def g2(x):
        return np.array([
            2.0 * (x[0] - 1.0) - 0.8 * np.pi * np.sin(2.0 * np.pi * x[0]),
            2.0 * (x[1] - 1.0),
        ])

    def w2(x):
        return 0.1 + 0.1 * float(x[0] ** 2)

    def gw2(x):
        return np.array([0.2 * x[0], 0.0])

    w1, gw1 = _const_width(0.2)
    return _spec(
        "iv-deb-like", Family.NONCONVEX, 2, 2,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2)],
        -1.0, 2.0,
        "multimodal coordinate ripple against a convex bowl",
        "G1 = [x1^2 + x2^2, . + 0.2]; G2 adds the ripple 0.4 cos(2 pi x1) "
        "to (x1-1)^2 + (x2-1)^2 with width 0.1 + 0.1 x1^2; box [-1, 2]^2. "
        "The ripple creates several disconnected critical patches.")


def _make_hil() -> ProblemSpec:
    def f1(x):
        return float(1.0 + 0.25 * (x[0] ** 2 + x[1] ** 2) + np.sin(x[0] + x[1]))

    def g1(x):
        c = np.cos(x[0] + x[1])
        return np.array([0.5 * x[0] + c, 0.5 * x[1] + c])

    def f2(x):
        return float(1.0 + 0.25 * ((x[0] - 1.0) ** 2 + x[1] ** 2)
                     + np.cos(x[0] - x[1]))

    def g2(x):
        s = np.sin(x[0] - x[1])
        return np.array([0.5 * (x[0] - 1.0) - s, 0.5 * x[1] + s])

    def w2(x):
        return 0.1 * (2.0 + float(np.sin(x[0])))

    def gw2(x):
        return np.array([0.1 * np.cos(x[0]), 0.0])

    w1, gw1 = _const_width(0.25)
    return _spec(
        "iv-hil-like", Family.NONCONVEX, 2, 2,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2)],
        -2.0, 2.0,
        "trigonometric landscape over a shallow quadratic",
        "G1 = [1 + ||x||^2/4 + sin(x1 + x2), . + 0.25]; G2 = [1 + "
        "((x1-1)^2 + x2^2)/4 + cos(x1 - x2), . + 0.1 (2 + sin x1)]; box "
        "[-2, 2]^2. Sinusoidal terms make both objectives nonconvex while "
        "the quadratic envelope keeps them coercive.")


def _make_kw2() -> ProblemSpec:
    def f1(x):
        e = np.exp(-((x[0] - 1.0) ** 2 + x[1] ** 2))
        return float(0.1 * (x[0] ** 2 + x[1] ** 2) - e)

    def g1(x):
        e = np.exp(-((x[0] - 1.0) ** 2 + x[1] ** 2))
        return np.array([0.2 * x[0] + 2.0 * (x[0] - 1.0) * e,
                         0.2 * x[1] + 2.0 * x[1] * e])

    def f2(x):
        e = np.exp(-((x[0] + 1.0) ** 2 + x[1] ** 2))
        return float(0.1 * (x[0] ** 2 + x[1] ** 2) - e)

    def g2(x):
        e = np.exp(-((x[0] + 1.0) ** 2 + x[1] ** 2))
        return np.array([0.2 * x[0] + 2.0 * (x[0] + 1.0) * e,
                         0.2 * x[1] + 2.0 * x[1] * e])

    def w1(x):
        return 0.15 + 0.1 * float(np.exp(-x[1] ** 2))

    def gw1(x):
        return np.array([0.0, -0.2 * x[1] * np.exp(-x[1] ** 2)])

    w2, gw2 = _const_width(0.2)
    return _spec(
        "iv-kw2-like", Family.NONCONVEX, 2, 2,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2)],
        -3.0, 3.0,
        "two Gaussian wells under a weak quadratic confinement",
        "G_i = [0.1||x||^2 - exp(-||x -/+ e1||^2), . + w_i] with wells at "
        "(1, 0) and (-1, 0), w1 = 0.15 + 0.1 exp(-x2^2), w2 = 0.2; box "
        "[-3, 3]^2. Each objective has a global well plus a shallow far "
        "field, so starts far from the wells terminate quickly.")


def _make_viennet() -> ProblemSpec:
    def f1(x):
        r2 = float(x @ x)
        return 0.5 * r2 + float(np.sin(r2))

    def g1(x):
        r2 = float(x @ x)
        return x * (1.0 + 2.0 * np.cos(r2))

    def f2(x):
        return float((3.0 * x[0] - 2.0 * x[1] + 4.0) ** 2 / 8.0
                     + (x[0] - x[1] + 1.0) ** 2 / 27.0 + 15.0)

    def g2(x):
        t1 = 3.0 * x[0] - 2.0 * x[1] + 4.0
        t2 = x[0] - x[1] + 1.0
        return np.array([0.75 * t1 + 2.0 * t2 / 27.0,
                         -0.5 * t1 - 2.0 * t2 / 27.0])

    def f3(x):
        r2 = float(x @ x)
        return 1.0 / (r2 + 1.0) - 1.1 * float(np.exp(-r2))

    def g3(x):
        r2 = float(x @ x)
        return x * (-2.0 / (r2 + 1.0) ** 2 + 2.2 * np.exp(-r2))

    def w2(x):
        return 0.5 + 0.02 * float(x[0] ** 2)

    def gw2(x):
        return np.array([0.04 * x[0], 0.0])

    w1, gw1 = _const_width(0.3)
    w3, gw3 = _const_width(0.1)
    return _spec(
        "iv-viennet-like", Family.NONCONVEX, 2, 3,
        [_interval_objective(f1, g1, w1, gw1),
         _interval_objective(f2, g2, w2, gw2),
         _interval_objective(f3, g3, w3, gw3)],
        -3.0, 3.0,
        "classical triobjective mix of ripple, quadratic, and bump",
        "G1 = [r2/2 + sin(r2), . + 0.3] with r2 = ||x||^2; G2 = "
        "[(3x1 - 2x2 + 4)^2/8 + (x1 - x2 + 1)^2/27 + 15, . + 0.5 + "
        "0.02 x1^2]; G3 = [1/(r2 + 1) - 1.1 exp(-r2), . + 0.1]; box "
        "[-3, 3]^2. The radial sine of G1 produces rings of critical "
        "points around the origin.")


_REGISTRY: tuple[ProblemSpec, ...] = (
    _make_parab1(),
    _make_quad_tr1(),
    _make_bk1(),
    _make_sd_quad(),
    _make_quad30(),
    _make_illcond(),
    _make_mhhm2(),
    _make_vfm1(),
    _make_fon(),
    _make_deb(),
    _make_hil(),
    _make_kw2(),
    _make_viennet(),
)


def registry() -> tuple[ProblemSpec, ...]:
    """All shipped problems, in curated order."""
    return _REGISTRY


def problem_names() -> list[str]:
    return [spec.name for spec in _REGISTRY]


def lookup(name: str) -> ProblemSpec:
    for spec in _REGISTRY:
        if spec.name == name:
            return spec
    raise KeyError(f"unknown problem {name!r}; available: {', '.join(problem_names())}")


def sample_start(spec: ProblemSpec, seed: int) -> np.ndarray:
    """Uniform draw from the problem's start box, deterministic in seed."""
    rng = np.random.default_rng(seed)
    return rng.uniform(spec.ivmop.box_lo, spec.ivmop.box_hi)


def datasheet_markdown(spec: ProblemSpec) -> str:
    iv = spec.ivmop
    lines = [
        f"## {spec.name}",
        "",
        f"- family: {spec.family.value}",
        f"- dimensions: n = {iv.n}, objectives m = {iv.m}",
        f"- start box: [{iv.box_lo[0]:g}, {iv.box_hi[0]:g}]^{iv.n}"
        if np.all(iv.box_lo == iv.box_lo[0]) and np.all(iv.box_hi == iv.box_hi[0])
        else f"- start box: lo={iv.box_lo.tolist()}, hi={iv.box_hi.tolist()}",
        f"- provenance: {spec.reference_note}",
        "",
        spec.datasheet,
        "",
    ]
    return "\n".join(lines)
