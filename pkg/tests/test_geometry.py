import cmath
import math

import numpy as np
import pytest

from qtet.geometry import (
    AngleSet,
    NotHyperbolic,
    _quadratic,
    classify_vertex,
    delta_eta,
    delta_terms,
    gram_det,
    gram_matrix,
    potential_F,
    predictor_logmag,
    stationary_point,
    volume,
)
from qtet.qarith import DomainError
from qtet.qdilog import clausen

PI = math.pi
EUCLID = math.acos(1.0 / 3.0)


def sample_hyperbolic(rng, *, ultra_only=False):
    """Rejection-sample an angle set with det G < 0 and a usable window."""
    while True:
        th = rng.uniform(0.05, PI - 0.05, size=6)
        A = AngleSet.of(*th)
        if ultra_only:
            sums = [sum(th[list(t)]) for t in ((0, 1, 4), (0, 2, 5), (1, 3, 5), (2, 3, 4))]
            if max(sums) >= PI:
                continue
        d, _ = gram_det(A)
        if d >= -1e-3:
            continue
        if float(np.min(A.tau)) - float(np.max(A.sigma)) < 1e-3:
            continue
        return A, d


def test_gram_matrix_layout():
    A = AngleSet.of(0.1, 0.2, 0.3, 0.4, 0.5, 0.6)
    g = gram_matrix(A)
    assert np.allclose(g, g.T)
    assert np.allclose(np.diag(g), 1.0)
    # opposite pairs {a,d}, {b,c}, {e,f}
    assert g[0, 1] == pytest.approx(-math.cos(0.1))
    assert g[2, 3] == pytest.approx(-math.cos(0.4))
    assert g[0, 2] == pytest.approx(-math.cos(0.2))
    assert g[1, 3] == pytest.approx(-math.cos(0.3))
    assert g[0, 3] == pytest.approx(-math.cos(0.6))
    assert g[1, 2] == pytest.approx(-math.cos(0.5))


def test_gram_det_regular_family():
    # eigenvalues (1 - 3 cos t) once and (1 + cos t) three times
    assert gram_det(AngleSet.regular(0.0))[0] == pytest.approx(-16.0, abs=1e-12)
    assert gram_det(AngleSet.regular(EUCLID))[0] == pytest.approx(0.0, abs=1e-12)
    assert gram_det(AngleSet.regular(PI / 3))[0] == pytest.approx(-27.0 / 16.0, abs=1e-12)
    for t in (0.3, 0.9, 1.2):
        expect = (1 - 3 * math.cos(t)) * (1 + math.cos(t)) ** 3
        assert gram_det(AngleSet.regular(t))[0] == pytest.approx(expect, rel=1e-12)


def test_classify_vertex():
    assert classify_vertex(AngleSet.regular(PI / 3), 0) == "Ideal"
    A = AngleSet.regular(PI / 4)
    assert all(classify_vertex(A, v) == "UltraIdeal" for v in range(4))
    assert classify_vertex(AngleSet.regular(1.3), 2) == "Normal"


def test_eta_sigma_tau_sums():
    rng = np.random.default_rng(1)
    for _ in range(50):
        A = AngleSet.of(*rng.uniform(-3, 3, size=6) * 0.9)
        assert float(np.sum(A.sigma)) == pytest.approx(2 * float(np.sum(A.eta)), abs=1e-12)
        assert float(np.sum(A.tau)) == pytest.approx(2 * float(np.sum(A.eta)), abs=1e-12)


def test_stationary_regular_ideal_closed_form():
    A = AngleSet.regular(PI / 3)
    st = stationary_point(A)
    assert st.zeta0 == pytest.approx(7.0 / 6.0, abs=1e-12)
    assert st.u0 == pytest.approx(cmath.exp(1j * PI / 3), abs=1e-10)
    disc = st.a1 ** 2 - 4 * st.a0 * st.a2
    assert disc == pytest.approx(-27.0 + 0j, abs=1e-12)
    # after removing the overall factor 3: a2 = B-1, a1 = 2-B-B^2, a0 = B^2-1
    B = cmath.exp(2j * PI / 3)
    gauge = cmath.exp(1j * 2 * PI)  # sum(theta) = 2 pi at the ideal point
    scale = st.a2 / (3 * (B - 1) * gauge)
    assert st.a1 == pytest.approx(3 * (2 - B - B * B) * gauge * scale, abs=1e-10)
    assert st.a0 == pytest.approx(3 * (B * B - 1) * gauge * scale, abs=1e-10)


def test_stationary_euclidean_double_root():
    # disc = 16 det G -> 0 linearly as the angles approach the Euclidean point
    A = AngleSet.regular(EUCLID - 1e-7)
    a2, a1, a0 = _quadratic(A)
    disc = a1 * a1 - 4 * a0 * a2
    assert abs(disc) < 2e-5


def test_discriminant_identity_random():
    rng = np.random.default_rng(20240)
    worst = 0.0
    for _ in range(1000):
        A, d = sample_hyperbolic(rng)
        a2, a1, a0 = _quadratic(A)
        disc = a1 * a1 - 4 * a0 * a2
        worst = max(worst, abs(disc - 16 * d) / abs(16 * d))
    assert worst <= 1e-9


def test_stationary_invariants_random():
    rng = np.random.default_rng(31337)
    for _ in range(200):
        A, d = sample_hyperbolic(rng, ultra_only=True)
        st = stationary_point(A)
        assert abs(abs(st.u0) - 1.0) <= 1e-10
        lo, hi = st.window
        assert lo < st.zeta0 < hi
        F0, F1, F2 = potential_F(A, st.zeta0)
        assert abs(F1) < 1e-9
        assert F2 == pytest.approx(st.fpp, rel=1e-9, abs=1e-12)
        # product identity |prod (A_j - u0) / u0^2 * F''| = 4 pi sqrt(-det G)
        Aj = np.exp(2j * PI * A.sigma)
        prod = complex(np.prod(Aj - st.u0) / st.u0 ** 2 * st.fpp)
        assert abs(prod) == pytest.approx(4 * PI * math.sqrt(-d), rel=1e-8)
        # with the exp(i sum theta) gauge the product is +/- real
        gauged = prod * cmath.exp(1j * sum(A.theta))
        assert abs(gauged.imag) <= 1e-8 * abs(gauged)


def test_not_hyperbolic_raises():
    with pytest.raises(NotHyperbolic):
        stationary_point(AngleSet.regular(1.5))  # spherical side, det G > 0


def test_potential_branch_point_error():
    A = AngleSet.regular(PI / 3)
    with pytest.raises(DomainError):
        potential_F(A, 1.0)  # sigma_j = 1 is a branch point


def test_regular_ideal_potential_value():
    A = AngleSet.regular(PI / 3)
    F0, _, _ = potential_F(A, 7.0 / 6.0)
    assert F0.real == pytest.approx(6.0 / (4 * PI) * clausen(PI / 3), abs=1e-12)


def test_delta_eta_examples():
    d = delta_eta(1 / 3, 1 / 3, 1 / 3)
    assert d.real == pytest.approx(-(3.0 / (8 * PI)) * clausen(2 * PI / 3), abs=1e-12)
    d2 = delta_eta(0.5, 0.5, 0.5)
    assert abs(d2.real) < 1e-14  # purely imaginary
    # domain edge: eta sum = 1 hits Li2(1), still finite
    d3 = delta_eta(0.4, 0.3, 0.3)
    assert np.isfinite(d3.real) and np.isfinite(d3.imag)
    with pytest.raises(DomainError):
        delta_eta(1.2, 0.3, 0.3)


def test_volume_regular_ideal():
    # oracle: the Lobachevsky value 3 Lambda(pi/3) = Cl2(pi/3), series-computed
    v = volume(AngleSet.regular(PI / 3))
    assert v.vol == pytest.approx(1.5 * clausen(2 * PI / 3), abs=1e-6)
    assert v.vol == pytest.approx(1.0149416064096536, abs=1e-6)


def test_volume_euclidean_limit():
    v = volume(AngleSet.regular(EUCLID - 1e-7))
    assert v.vol == pytest.approx(0.0, abs=1e-6)


def test_volume_monotone_regular_family():
    ths = np.linspace(0.0, EUCLID - 1e-3, 20)
    vols = [volume(AngleSet.regular(float(t))).vol for t in ths]
    assert all(vols[i] > vols[i + 1] for i in range(len(vols) - 1))
    # theta = 0 gives the ideal right-angled octahedron volume 8 Lambda(pi/4)
    assert vols[0] == pytest.approx(4.0 * clausen(PI / 2), abs=1e-9)


def test_volume_symmetry_relabelings():
    A = AngleSet.of(0.6, 0.7, 0.45, 0.65, 0.5, 0.55)
    ref = volume(A).vol
    # tetrahedral relabelings: column permutations of the pairs (a,d), (b,c),
    # (e,f), and reversals of two pairs at a time
    perms = [
        (1, 0, 3, 2, 4, 5),  # swap pairs (a,d) <-> (b,c)
        (4, 1, 2, 5, 0, 3),  # swap pairs (a,d) <-> (e,f)
        (0, 4, 5, 3, 1, 2),  # swap pairs (b,c) <-> (e,f)
        (3, 2, 1, 0, 4, 5),  # reverse within (a,d) and (b,c)
        (3, 1, 2, 0, 5, 4),  # reverse within (a,d) and (e,f)
        (0, 2, 1, 3, 5, 4),  # reverse within (b,c) and (e,f)
    ]
    for p in perms:
        assert volume(A.relabel(p)).vol == pytest.approx(ref, abs=1e-9)


def test_volume_single_edge_flip_invariance():
    A = AngleSet.of(0.6, 0.7, 0.45, 0.65, 0.5, 0.55)
    ref = volume(A).vol
    for edge in range(6):
        assert volume(A.flip(edge)).vol == pytest.approx(ref, abs=1e-9)
    assert gram_det(A.flip(2))[0] == pytest.approx(gram_det(A)[0], rel=1e-14)


def test_volume_negative_regular_matches_positive():
    for th in (0.08 * PI, 0.3 * PI):
        vp = volume(AngleSet.regular(th)).vol
        vm = volume(AngleSet.regular(-th)).vol
        assert vm == pytest.approx(vp, abs=1e-9)


def test_predictor_example():
    A = AngleSet.regular(PI / 3)
    v = volume(A)
    got = predictor_logmag(A, 101, v)
    expect = (
        math.log(math.sqrt(2.0) * PI)
        - 1.5 * math.log(101)
        - 0.25 * math.log(27.0 / 16.0)
        + 101 * v.vol / (2 * PI)
    )
    assert got == pytest.approx(expect, rel=1e-14)
    assert math.exp(got) == pytest.approx(4.67e4, rel=2e-2)


def test_predictor_scaling_shape():
    # predictor(r)/predictor(r') depends on angles only through Vol and det G
    A = AngleSet.regular(PI / 4)
    v = volume(A)
    d = predictor_logmag(A, 301, v) - predictor_logmag(A, 101, v)
    expect = -1.5 * math.log(301.0 / 101.0) + (301 - 101) * v.vol / (2 * PI)
    assert d == pytest.approx(expect, rel=1e-13)


def test_predictor_blows_up_near_euclidean():
    r = 101
    vals = [predictor_logmag(AngleSet.regular(EUCLID - eps), r) for eps in (1e-2, 1e-4, 1e-6)]
    assert vals[0] < vals[1] < vals[2]


def test_volume_propagates_not_hyperbolic():
    with pytest.raises(NotHyperbolic):
        volume(AngleSet.regular(1.5))
