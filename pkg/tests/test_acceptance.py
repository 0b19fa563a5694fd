"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report.  Criterion 6b (the hyperbolic derivative-interval check) encodes a
documented expectation that contradicts the 1-D derivative identity
f''(x) f(x) / f'(x)^2 verified by criterion 6a at the same points; it is kept
verbatim and is expected to fail.
"""

import json
import math

import numpy as np
import pytest

from subproj import (
    AffineMax,
    Ball,
    Box,
    ConvexComb,
    Dist,
    Halfspace,
    Hyperbolic,
    Indicator,
    LeftCompose,
    Linear,
    NegLog,
    NormPow,
    PowerComp,
    ProjStatus,
    Problem,
    RightLinear,
    Scale,
    SeqVerdict,
    SqDist,
    SqrtShift,
    SumPair,
    acceleration_gap,
    concentric_ball_pair,
    evaluate,
    fd_gradient,
    fd_jacobian,
    fejer_gap,
    moreau_value,
    prox,
    relax,
    seq_lab,
    solve,
    sproj,
    sproj_convexcomb,
    sproj_deriv_1d,
    sproj_jacobian,
    sproj_leftcompose,
    sproj_moreau,
    sproj_power,
    sproj_rightlinear,
    sproj_scale,
    sproj_set,
    sproj_sum,
    subgradient,
)
from subproj.cli import main
from subproj.serialize import problem_from_record, problem_to_record


def report(name: str, failures: list) -> None:
    status = "PASS" if not failures else f"FAIL ({len(failures)} checks)"
    print(f"[acceptance] {name}: {status}")
    assert not failures, f"{name}: " + "; ".join(str(f) for f in failures[:5])


def catalog():
    """(name, function, domain sampler, feasible sampler) for property sweeps."""
    rng = np.random.default_rng(1000)
    ball = Ball([0.0, 0.0], 1.0)
    box = Box([-1.0, -1.0], [1.0, 1.0])
    hs = Halfspace([1.0, 2.0], 0.5)
    a = math.sqrt(3.0)
    return [
        ("linear", Linear([0.5, -1.0]),
         lambda: rng.standard_normal(2) * 3.0,
         lambda: Halfspace([0.5, -1.0], 0.0).project(rng.standard_normal(2) * 3.0)),
        ("dist-ball", Dist(ball), lambda: rng.standard_normal(2) * 3.0,
         lambda: ball.project(rng.standard_normal(2) * 3.0)),
        ("dist-halfspace", Dist(hs), lambda: rng.standard_normal(2) * 3.0,
         lambda: hs.project(rng.standard_normal(2) * 3.0)),
        ("dist-box", Dist(box), lambda: rng.standard_normal(2) * 3.0,
         lambda: box.project(rng.standard_normal(2) * 3.0)),
        ("sqdist-ball", SqDist(ball), lambda: rng.standard_normal(2) * 3.0,
         lambda: ball.project(rng.standard_normal(2) * 3.0)),
        ("normpow2", NormPow(2.0, dim=2), lambda: rng.standard_normal(2) * 3.0,
         lambda: np.zeros(2)),
        ("normpow1", NormPow(1.0, dim=2), lambda: rng.standard_normal(2) * 3.0,
         lambda: np.zeros(2)),
        ("affinemax", AffineMax([([1.0], 1.0), ([2.0], 1.0)]),
         lambda: rng.standard_normal(1) * 3.0,
         lambda: np.array([rng.uniform(-5.0, -1.0)])),
        ("neglog", NegLog(), lambda: np.array([rng.uniform(0.05, 10.0)]),
         lambda: np.array([rng.uniform(1.0, 10.0)])),
        ("sqrtshift", SqrtShift(2.0), lambda: np.array([rng.uniform(0.05, 10.0)]),
         lambda: np.array([rng.uniform(4.0, 10.0)])),
        ("hyperbolic", Hyperbolic(2.0), lambda: rng.standard_normal(1) * 4.0,
         lambda: np.array([rng.uniform(-0.99 * a, 0.99 * a)])),
    ]


# -- criterion 1: closed-form conformance (1e-10) -----------------------------------

def test_criterion_01_closed_forms():
    rng = np.random.default_rng(1)
    tol = 1e-10
    failures = []

    sets = [Ball([0.3, -0.2], 1.5), Halfspace([1.0, -2.0], 0.7), Box([-1.0, 0.0], [2.0, 1.0])]
    for s in sets:
        f = Dist(s)
        for _ in range(1000):
            x = rng.standard_normal(2) * 4.0
            got = sproj(f, x).point
            if np.linalg.norm(got - s.project(x)) > tol:
                failures.append(("dist", type(s).__name__, x))

    for _ in range(1000):
        x = rng.standard_normal(2) * 4.0
        if np.linalg.norm(sproj(NormPow(2.0, dim=2), x).point - x / 2.0) > tol:
            failures.append(("normpow2", x))

    ball = Ball([0.0, 0.0], 1.0)
    f = SqDist(ball)
    for _ in range(1000):
        x = rng.standard_normal(2) * 4.0
        want = 0.5 * (x + ball.project(x))
        if np.linalg.norm(sproj(f, x).point - want) > tol:
            failures.append(("sqdist", x))

    two_piece = AffineMax([([1.0], 1.0), ([2.0], 1.0)])
    for _ in range(1000):
        t = rng.uniform(-4.0, 4.0)
        want = -0.5 if t > 0 else (-1.0 if t > -1.0 else t)
        if abs(sproj(two_piece, t).point[0] - want) > tol:
            failures.append(("affinemax", t))

    for _ in range(1000):
        t = rng.uniform(1e-3, 1.0 - 1e-3)
        if abs(sproj(NegLog(), t).point[0] - (t - t * math.log(t))) > tol:
            failures.append(("neglog", t))

    for eta in (1.5, 2.0):
        fs = SqrtShift(eta)
        for _ in range(500):
            t = rng.uniform(1e-3, eta * eta * (1 - 1e-6))
            if abs(sproj(fs, t).point[0] - (2 * eta * math.sqrt(t) - t)) > tol:
                failures.append(("sqrtshift", eta, t))

    for eta in (1.5, 2.0, 3.0):
        fh = Hyperbolic(eta)
        edge = math.sqrt(eta * eta - 1.0)
        for _ in range(500):
            t = rng.choice([-1.0, 1.0]) * rng.uniform(edge * 1.0001, 8.0)
            want = (eta * math.hypot(1.0, t) - 1.0) / t
            if abs(sproj(fh, t).point[0] - want) > tol:
                failures.append(("hyperbolic", eta, t))

    u = np.array([1.0, -2.0])
    flin = Linear(u)
    lev = Halfspace(u, 0.0)
    for _ in range(1000):
        x = rng.standard_normal(2) * 4.0
        if np.linalg.norm(sproj(flin, x).point - lev.project(x)) > tol:
            failures.append(("linear", x))

    report("criterion 01 closed-form conformance", failures)


# -- criterion 2: algebraic identities (1e-9) -----------------------------------------

def test_criterion_02_algebraic_identities():
    rng = np.random.default_rng(2)
    tol = 1e-9
    failures = []
    ball = Dist(Ball([0.0, 0.0], 1.0))

    for _ in range(1000):
        lam = 10.0 ** rng.uniform(-3.0, 3.0)
        x = rng.standard_normal(2) * 4.0
        if np.linalg.norm(sproj_scale(lam, ball, x).point - sproj(ball, x).point) > tol:
            failures.append(("scale", lam, x))

    for alpha in (0.25, 0.5, 1.0, 2.0, 4.0):
        spec = PowerComp(alpha, ball)
        for _ in range(200):
            x = rng.standard_normal(2) * 4.0
            if evaluate(ball, x) <= 0.0:
                continue
            want = (1.0 - alpha) * x + alpha * sproj(ball, x).point
            if np.linalg.norm(sproj_power(alpha, ball, x) - want) > tol:
                failures.append(("power-direct", alpha, x))
            if np.linalg.norm(sproj(spec, x).point - want) > tol:
                failures.append(("power-spec", alpha, x))

    fns = [NormPow(2.0, dim=3), Dist(Ball([0.0, 0.0, 0.0], 1.0)), Linear([1.0, -2.0, 0.5])]
    for _ in range(50):
        q, r = np.linalg.qr(rng.standard_normal((3, 3)))
        L = rng.uniform(0.2, 3.0) * q * np.sign(np.diag(r))
        alpha = float(np.trace(L.T @ L)) / 3.0
        f = fns[rng.integers(len(fns))]
        y = rng.standard_normal(3) * 2.0
        pulled = (L.T @ sproj(f, L @ y).point) / alpha
        if np.linalg.norm(sproj_rightlinear(L, f, y) - pulled) > tol:
            failures.append(("rightlinear-direct", y))
        if np.linalg.norm(sproj(RightLinear(L, f), y).point - pulled) > tol:
            failures.append(("rightlinear-spec", y))

    cube = (lambda t: t ** 3, lambda t: 3.0 * t * t)
    for f, sampler in [
        (NegLog(), lambda: np.array([rng.uniform(0.05, 0.95)])),
        (ball, lambda: rng.standard_normal(2) * 4.0),
        (NormPow(2.0, dim=2), lambda: rng.standard_normal(2) * 2.0),
    ]:
        composed = LeftCompose(*cube, f)
        for _ in range(150):
            x = sampler()
            if evaluate(f, x) <= 0.0:
                continue
            if np.linalg.norm(sproj_leftcompose(cube, f, x)
                              - sproj(composed, x).point) > tol:
                failures.append(("leftcompose", x))

    report("criterion 02 algebraic identities", failures)


# -- criterion 3: addition case tables --------------------------------------------------

def test_criterion_03_case_tables():
    rng = np.random.default_rng(3)
    tol = 1e-10
    failures = []
    f, g, joint = concentric_ball_pair(1.0, 2.0)
    alpha = 0.5

    got = sproj_convexcomb(alpha, f, g, joint, [4.0, 0.0])
    if np.linalg.norm(got - np.array([1.5, 0.0])) > tol:
        failures.append(("comb-value", got))
    got = sproj_sum(f, g, joint, [4.0, 0.0])
    if np.linalg.norm(got - np.array([1.5, 0.0])) > tol:
        failures.append(("sum-value", got))

    comb_spec = ConvexComb(alpha, f, g, joint)
    sum_spec = SumPair(f, g, joint)
    checked = 0
    while checked < 1000:
        x = rng.standard_normal(2) * rng.uniform(0.05, 4.0)
        n = np.linalg.norm(x)
        if 1.0 < n < 2.0:
            continue
        checked += 1
        scale = 1.0 + n
        table = sproj_convexcomb(alpha, f, g, joint, x)
        if np.linalg.norm(table - sproj(comb_spec, x).point) > tol * scale:
            failures.append(("comb-direct", x))
        table_sum = sproj_sum(f, g, joint, x)
        if np.linalg.norm(table_sum - sproj(sum_spec, x).point) > tol * scale:
            failures.append(("sum-direct", x))
        fx, gx = evaluate(f, x), evaluate(g, x)
        if fx <= 0.0 and gx <= 0.0:
            comb = x
            mean = x
        else:
            u = joint(x)
            n2 = float(u @ u)
            pf = x - (max(fx, 0.0) / n2) * u
            pg = x - (max(gx, 0.0) / n2) * u
            comb = alpha * pf + (1.0 - alpha) * pg
            mean = 0.5 * pf + 0.5 * pg
        splits = np.linalg.norm(table - comb) <= tol * scale
        if splits != (fx * gx >= 0.0):
            failures.append(("comb-equivalence", x))
        splits_sum = np.linalg.norm(table_sum - mean) <= tol * scale
        if splits_sum != (fx * gx >= 0.0):
            failures.append(("sum-equivalence", x))

    # shared-slope affine pair reaches the mixed-sign rows of both tables
    u = np.array([1.0, 0.0])
    fa = AffineMax([(u, -2.0)])
    ga = AffineMax([(u, 2.0)])
    joint_a = lambda x: u
    comb_a = ConvexComb(alpha, fa, ga, joint_a)
    sum_a = SumPair(fa, ga, joint_a)
    mixed_seen = 0
    for _ in range(1000):
        x = rng.standard_normal(2) * 3.0
        fx, gx = evaluate(fa, x), evaluate(ga, x)
        if fx <= 0.0 and gx <= 0.0:
            continue
        scale = 1.0 + np.linalg.norm(x)
        table = sproj_convexcomb(alpha, fa, ga, joint_a, x)
        if np.linalg.norm(table - sproj(comb_a, x).point) > tol * scale:
            failures.append(("comb-direct-affine", x))
        table_sum = sproj_sum(fa, ga, joint_a, x)
        if np.linalg.norm(table_sum - sproj(sum_a, x).point) > tol * scale:
            failures.append(("sum-direct-affine", x))
        comb = alpha * sproj(fa, x).point + (1.0 - alpha) * sproj(ga, x).point
        splits = np.linalg.norm(table - comb) <= tol * scale
        if splits != (fx * gx >= 0.0):
            failures.append(("comb-equivalence-affine", x))
        mixed_seen += fx * gx < 0.0
    if mixed_seen == 0:
        failures.append("mixed-sign rows were never exercised")

    report("criterion 03 case tables", failures)


# -- criteria 4 and 5: quasi-nonexpansiveness and fixed points ---------------------------

def test_criterion_04_fejer_quasi_nonexpansiveness():
    failures = []
    alphas = (0.5, 1.0, 1.5)
    for name, f, sampler, feas in catalog():
        for _ in range(10_000):
            x, y = sampler(), feas()
            out = sproj(f, x)
            p = out.point
            gap = fejer_gap(x, p, y)
            xnorm2 = float(np.dot(x, x))
            if gap < -1e-12 * (1.0 + xnorm2):
                failures.append((name, "gap", x, y))
                break
            d2 = float(np.dot(x - y, x - y))
            step2 = float(np.dot(p - x, p - x))
            for alpha in alphas:
                z = x + alpha * (p - x)
                lhs = float(np.dot(z - y, z - y))
                if lhs > d2 - alpha * (2.0 - alpha) * step2 + 1e-10:
                    failures.append((name, "relaxed", alpha, x, y))
                    break
    report("criterion 04 Fejer quasi-nonexpansiveness", failures)


def test_criterion_05_fixed_points():
    failures = []
    for name, f, sampler, _ in catalog():
        for _ in range(1000):
            x = sampler()
            fixed = sproj(f, x).status is ProjStatus.FIXED
            if fixed != (evaluate(f, x) <= 0.0):
                failures.append((name, x))
                break
    report("criterion 05 fixed points", failures)


# -- criterion 6: derivatives ---------------------------------------------------------

def test_criterion_06_jacobian_vs_finite_differences():
    rng = np.random.default_rng(6)
    failures = []
    ball = Ball([0.0, 0.0], 1.0)

    def interior_points(f, sampler, count=20, margin=0.1):
        pts = []
        while len(pts) < count:
            x = sampler()
            fx = evaluate(f, x)
            if fx == math.inf or fx <= 0.0:
                continue
            if np.linalg.norm(x - f.level_set_project(x)) >= margin:
                pts.append(x)
        return pts

    cases = [
        ("neglog", NegLog(), lambda: np.array([rng.uniform(0.05, 0.85)])),
        ("sqrtshift", SqrtShift(2.0), lambda: np.array([rng.uniform(0.2, 3.5)])),
        ("hyperbolic", Hyperbolic(2.0),
         lambda: np.array([rng.choice([-1.0, 1.0]) * rng.uniform(2.0, 6.0)])),
        ("normpow2", NormPow(2.0, dim=3), lambda: rng.standard_normal(3) * 2.0),
        ("sqdist", SqDist(ball), lambda: rng.standard_normal(2) * 3.0),
    ]
    for name, f, sampler in cases:
        for x in interior_points(f, sampler):
            exact = sproj_jacobian(f, x)
            approx = fd_jacobian(lambda z: sproj(f, z).point, x)
            scale = 1.0 + np.max(np.abs(exact))
            if np.max(np.abs(exact - approx)) > 1e-6 * scale:
                failures.append((name, x))
    report("criterion 06a projector Jacobian vs finite differences", failures)


def test_criterion_06_hyperbolic_derivative_interval():
    rng = np.random.default_rng(66)
    eta = 2.0
    lo = 1.5 - 1.0 / (eta * eta - 1.0)
    hi = 2.5 + 1.0 / (eta * eta - 1.0)
    f = Hyperbolic(eta)
    edge = math.sqrt(eta * eta - 1.0)
    failures = []
    for _ in range(50):
        t = rng.choice([-1.0, 1.0]) * rng.uniform(edge * 1.001, 8.0)
        d = sproj_deriv_1d(f, t)
        if not lo <= d <= hi:
            failures.append((t, d))
    report("criterion 06b hyperbolic derivative interval", failures)


# -- criterion 7: solver ----------------------------------------------------------------

def test_criterion_07_two_ball_solver():
    failures = []
    witness = np.array([0.75, 0.0])
    f1 = Dist(Ball([0.0, 0.0], 1.0))
    f2 = Dist(Ball([1.5, 0.0], 1.0))
    for lam in (1.0, 1.5):
        p = Problem(dimension=2, functions=[f1, f2], x0=[5.0, 5.0],
                    relaxation=lam, max_iter=500, feasible_witness=witness)
        x, trace = solve(p)
        if trace.status != "Converged" or trace.final_residual > 1e-8:
            failures.append((lam, trace.status, trace.final_residual))
            continue
        xn = p.x0
        for row in trace.rows:
            out = sproj(p.functions[row.index], xn)
            x_next = xn + row.lam * (out.point - xn)
            d_prev2 = float(np.dot(xn - witness, xn - witness))
            d_next2 = float(np.dot(x_next - witness, x_next - witness))
            drop = row.lam * (2.0 - row.lam) * float(np.dot(out.point - xn, out.point - xn))
            if d_next2 > d_prev2 - drop + 1e-10:
                failures.append((lam, "fejer", row.n))
            xn = x_next
        if not np.array_equal(xn, x):
            failures.append((lam, "replay mismatch"))
    report("criterion 07 two-ball feasibility solver", failures)


# -- criterion 8: Moreau ---------------------------------------------------------------

def test_criterion_08_moreau():
    rng = np.random.default_rng(8)
    failures = []
    ball = Ball([0.0, 0.0], 1.0)
    ind = Indicator(ball)
    checked = 0
    while checked < 1000:
        x = rng.standard_normal(2) * rng.uniform(0.2, 5.0)
        got = sproj_moreau(ind, 1.0, x)
        p = ball.project(x)
        if np.linalg.norm(x) <= 1.0:
            if not np.array_equal(got, x):
                failures.append(("fixed", x))
        else:
            # identical map, halved-displacement rendering: bit-for-bit
            if not np.array_equal(got, x - 0.5 * (x - p)):
                failures.append(("exact", x))
            # averaged form agrees to the last ulp
            if not np.allclose(got, 0.5 * (x + p), rtol=1e-14, atol=0.0):
                failures.append(("averaged", x))
        checked += 1

    for gamma in (0.5, 1.0, 2.0):
        for _ in range(20):
            x = rng.standard_normal(2) * 3.0
            if abs(ball.distance(x)) < 0.15:
                continue
            grad = (x - prox(ind, gamma, x)) / gamma
            approx = fd_gradient(lambda z: moreau_value(ind, gamma, z), x)
            if np.linalg.norm(grad - approx) > 1e-6 * (1.0 + np.linalg.norm(grad)):
                failures.append(("gradient", gamma, x))

    report("criterion 08 Moreau projector and gradient", failures)


# -- criterion 9: non-convex values ------------------------------------------------------

def test_criterion_09_nonconvex_image_set():
    failures = []
    f = AffineMax([([1.0, 0.0], 1.0), ([0.0, 1.0], 1.0)])
    x = np.zeros(2)
    images = sproj_set(f, x, 10_000)
    midpoint = 0.5 * (np.array([-1.0, 0.0]) + np.array([0.0, -1.0]))
    measured = min(float(np.linalg.norm(p - midpoint)) for p in images)

    # dense-grid oracle over the subgradient segment u = (t, 1-t)
    t = np.linspace(0.0, 1.0, 200_001)
    us = np.column_stack([t, 1.0 - t])
    pts = -us / np.sum(us * us, axis=1, keepdims=True)
    oracle = float(np.min(np.linalg.norm(pts - midpoint, axis=1)))

    if abs(measured - oracle) > 1e-6:
        failures.append(("mismatch", measured, oracle))
    if not measured > 0.0:
        failures.append(("not positive", measured))
    if abs(oracle - 1.0 / math.sqrt(2.0)) > 1e-9:
        failures.append(("oracle sanity", oracle))
    report("criterion 09 non-convex image set", failures)


# -- criterion 10: sequential trichotomy ---------------------------------------------------

def test_criterion_10_sequence_lab_trichotomy():
    failures = []
    horizon = 1000

    f_a = NegLog()
    rep_a = seq_lab(lambda n: Scale(1.0 + 1.0 / n, f_a), f_a, 2.0, n_steps=horizon)
    if rep_a.verdict is not SeqVerdict.FEASIBLE_LIMIT:
        failures.append(("family-a verdict", rep_a.verdict))
    if rep_a.tail_deviation > 1e-8:
        failures.append(("family-a tail", rep_a.tail_deviation))

    # shifted family: the deviation decays like (1/n)/||u||
    u = np.array([6e5, 8e5])  # ||u|| = 1e6
    un = 1e6
    f_c = AffineMax([(u, 0.0)])
    x_c = 2.0 * u / un ** 2  # f(x) = 2
    rep_c = seq_lab(lambda n: AffineMax([(u, -1.0 / n)]), f_c, x_c, n_steps=horizon)
    if rep_c.verdict is not SeqVerdict.POINTWISE_LIMIT:
        failures.append(("family-c verdict", rep_c.verdict))
    if rep_c.tail_deviation > 1e-8:
        failures.append(("family-c tail", rep_c.tail_deviation))
    tail = rep_c.deviations[3 * horizon // 4:]
    ns = np.arange(3 * horizon // 4 + 1, horizon + 1)
    if not np.allclose(tail * ns * un, 1.0, rtol=1e-6):
        failures.append(("family-c rate",))

    u2 = np.array([0.0, 1.0])
    f_b = AffineMax([(u2, 0.0)])
    x_b = np.array([0.4, 1.0])  # f(x) = 1, gap floor 1
    fam_b = lambda n: AffineMax([(u2, -2.0 if n % 2 == 0 else 0.0)])
    rep_b = seq_lab(fam_b, f_b, x_b, n_steps=horizon)
    if rep_b.verdict is not SeqVerdict.PERSISTENT_GAP:
        failures.append(("family-b verdict", rep_b.verdict))
    if rep_b.recurrent_deviation < 0.9 * rep_b.gap_floor:
        failures.append(("family-b recurrence", rep_b.recurrent_deviation))

    report("criterion 10 sequence-lab trichotomy", failures)


# -- criterion 11: acceleration -------------------------------------------------------------

def test_criterion_11_acceleration():
    rng = np.random.default_rng(11)
    failures = []
    ball_set = Ball([0.0, 0.0], 1.0)
    f = Dist(ball_set)

    gap = acceleration_gap(f, 0.5, [3.0, 0.0])
    if abs(gap - (-2.0)) > 1e-10:
        failures.append(("example", gap))

    checked = 0
    while checked < 1000:
        x = rng.standard_normal(2) * rng.uniform(1.2, 6.0)
        if evaluate(f, x) <= 0.0:
            continue
        checked += 1
        alpha = rng.uniform(0.05, 1.0)
        if acceleration_gap(f, alpha, x) > 1e-12:
            failures.append(("sign", alpha, x))
        gx = sproj(f, x).point
        gax = (1.0 - 1.0 / alpha) * x + (1.0 / alpha) * gx
        p = ball_set.project(x)
        if np.linalg.norm(gx - p) > np.linalg.norm(gax - p) + 1e-12:
            failures.append(("proximity", alpha, x))
    report("criterion 11 acceleration", failures)


# -- criterion 12: command-line interface ------------------------------------------------------

def test_criterion_12_cli(tmp_path, capsys):
    failures = []
    record = {
        "dimension": 2,
        "functions": [
            {"type": "dist", "set": {"type": "ball", "center": [0.0, 0.0], "radius": 1.0}},
            {"type": "dist", "set": {"type": "ball", "center": [1.5, 0.0], "radius": 1.0}},
        ],
        "control": {"type": "cyclic"},
        "relaxation": 1.0,
        "epsilon": 0.05,
        "x0": [5.0, 5.0],
        "tol": 1e-8,
        "max_iter": 500,
        "feasible_witness": [0.75, 0.0],
    }

    parsed = problem_from_record(record)
    if problem_to_record(parsed) != record:
        failures.append("round-trip record mismatch")
    p2 = problem_from_record(problem_to_record(parsed))
    if not (np.array_equal(p2.x0, parsed.x0) and p2.tol == parsed.tol
            and p2.max_iter == parsed.max_iter and p2.epsilon == parsed.epsilon):
        failures.append("round-trip field mismatch")

    path = tmp_path / "problem.json"
    path.write_text(json.dumps(record))
    t1, t2 = tmp_path / "t1.csv", tmp_path / "t2.csv"
    if main(["solve", "--file", str(path), "--trace", str(t1), "--seed", "0"]) != 0:
        failures.append("solve exit code")
    if main(["solve", "--file", str(path), "--trace", str(t2), "--seed", "0"]) != 0:
        failures.append("solve exit code (second run)")
    if t1.read_bytes() != t2.read_bytes():
        failures.append("trace not byte-deterministic")

    bad1 = tmp_path / "unknown-key.json"
    bad1.write_text(json.dumps({**record, "wibble": 1}))
    bad2 = tmp_path / "not-json.json"
    bad2.write_text("{this is not json")
    bad3 = tmp_path / "bad-lambda.json"
    bad3.write_text(json.dumps({**record, "relaxation": 2.5, "epsilon": 0.1}))
    for bad in (bad1, bad2, bad3):
        if main(["solve", "--file", str(bad)]) != 2:
            failures.append(f"schema exit code for {bad.name}")

    slow = tmp_path / "slow.json"
    slow.write_text(json.dumps({**record, "max_iter": 1}))
    if main(["solve", "--file", str(slow)]) != 1:
        failures.append("max-iter exit code")

    neglog = tmp_path / "neglog.json"
    neglog.write_text(json.dumps({
        "dimension": 1, "functions": [{"type": "neglog"}],
        "control": {"type": "cyclic"}, "relaxation": 1.0, "epsilon": 0.05,
        "x0": [0.5], "tol": 1e-8, "max_iter": 10,
    }))
    if main(["project", "--file", str(neglog), "--point", "-1.0"]) != 3:
        failures.append("numeric exit code")
    if main(["project", "--file", str(neglog), "--point", "0.5"]) != 0:
        failures.append("project exit code")
    out = capsys.readouterr().out
    if "0.84657359" not in out:
        failures.append("project output")

    with capsys.disabled():
        report("criterion 12 CLI round-trip, determinism, exit codes", failures)
