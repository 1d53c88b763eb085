import numpy as np
import pytest

import dunklkit as dk
from dunklkit.functions import generate_corpus
from dunklkit.inequalities import (AdmissibilityError, DegenerateFunctionError,
                                   FunctionClassError, InequalitySpec, SeriesCapError,
                                   THEOREM_TAGS, admissible, evaluate_sides,
                                   fractional_hardy_constant, largest_admissible_a,
                                   trudinger_lhs, verify_corpus)


def test_theorem_tags_complete():
    expected = {"ClassicalCKN_1_1", "CKN_I", "CKN_II", "CKN_fractional", "Hardy_Lp",
                "WeightedHardy", "ClassicalRellich", "WeightedRellich", "HigherRellich",
                "Uncertainty", "GN_I", "GN_II", "WeightedGN_I", "WeightedGN_II",
                "WeightedGN_III", "FractionalHardy", "Trudinger", "Sobolev"}
    assert set(THEOREM_TAGS) == expected


def test_spec_parameter_validation():
    with pytest.raises(AdmissibilityError):
        InequalitySpec("NoSuchTheorem", {})
    with pytest.raises(AdmissibilityError):
        dk.make_spec("FractionalHardy", N=3, gamma=0.0)                 # missing s
    with pytest.raises(AdmissibilityError):
        dk.make_spec("FractionalHardy", N=3, gamma=0.0, s=1.0, junk=2)  # extraneous


def test_classical_ckn_intro_point_rejected_with_zero_residual():
    # p = q = r, b = -N/p: the inequality escapes the classical range
    spec = dk.make_spec("ClassicalCKN_1_1", N=3, gamma=0.0, p=2, q=2, r=2,
                        a=0.0, b=-1.5, d=-1.0, delta=0.5)
    rep = admissible(spec)
    assert not rep.admissible
    failed = {c.cid: c for c in rep.failed}
    assert set(failed) == {"clas_CKN0"}
    assert failed["clas_CKN0"].residual == 0.0


def test_ckn1_accepts_the_same_point():
    spec = dk.make_spec("CKN_I", N=3, gamma=0.0, p=2, q=2, r=2, b=-1.5,
                        c=-1.25, delta=0.5)
    assert admissible(spec).admissible


def test_gn1_theta_formula_special_case():
    # p = r = 2 forces θ = (N+2γ)(q-2)/(2q)
    N, g, q = 3, 0.5, 3.0
    lam = N + 2 * g
    spec = dk.gn1_spec(N, g, p=2.0, q=q, r=2.0)
    assert spec.params["theta"] == pytest.approx(lam * (q - 2) / (2 * q))
    assert admissible(spec).admissible


def test_admissibility_rejections():
    # Hardy_Lp outside 1 < p < Λ/(1+2γ)
    bad = dk.make_spec("Hardy_Lp", N=3, gamma=0.0, p=4.0)
    assert not admissible(bad).admissible
    # WeightedRellich wrong p
    bad2 = dk.make_spec("WeightedRellich", N=5, gamma=0.0, a=0.0, b=2.0, p=2.3)
    assert not admissible(bad2).admissible
    # WeightedGN_II needs Λ > 4
    bad3 = dk.wgn2_spec(3, 0.0, a=1.5, s=2.0)
    assert not admissible(bad3).admissible
    # CKN_I balance violated
    bad4 = dk.make_spec("CKN_I", N=3, gamma=0.0, p=2, q=2, r=1.7, b=0.0,
                        c=-0.5, delta=0.5)
    assert not admissible(bad4).admissible


def test_uncertainty_gaussian_value(wb_rank1_k05):
    # Gaussian moments give exactly 1/2 at N = 1, k = 0 (evaluator arithmetic;
    # the theorem's own p-range is empty there)
    wb0 = dk.rank1_workbench(0.0)
    g = generate_corpus(1, 1, ["Gaussian"], mode="rank1")[0]
    spec = dk.make_spec("Uncertainty", N=1, gamma=0.0, p=2.0, q=2.0)
    rec = evaluate_sides(spec, g, wb0, enforce_hypotheses=False)
    assert rec.ratio == pytest.approx(0.5, rel=1e-8)


def test_uncertainty_admissible_case(wb_radial3):
    g = generate_corpus(1, 1, ["Gaussian"], mode="radial")[0]
    spec = dk.uncertainty_spec(3, 0.0, 2.0)
    rec = evaluate_sides(spec, g, wb_radial3)
    # dimension-Λ Gaussian moments: ratio = Λ/2
    assert rec.ratio == pytest.approx(1.5, rel=1e-8)


def test_fractional_hardy_constant_values():
    assert fractional_hardy_constant(3, 0.0, 0.0) == pytest.approx(1.0)
    assert fractional_hardy_constant(3, 0.0, 1.0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        fractional_hardy_constant(3, 0.0, 1.6)


def test_fractional_hardy_gaussian_ratio(wb_radial3):
    g = generate_corpus(1, 1, ["Gaussian"], mode="radial")[0]
    spec = dk.make_spec("FractionalHardy", N=3, gamma=0.0, s=1.0)
    rec = evaluate_sides(spec, g, wb_radial3)
    # Γ moments: ratio² = Γ(1/2)/Γ(5/2) = 4/3
    assert rec.ratio == pytest.approx(2.0 / np.sqrt(3.0), rel=1e-8)
    assert rec.ratio <= 2.0


def test_classical_rellich_corpus(wb_radial5):
    corpus = generate_corpus(11, 10, ["HermiteGaussian", "SeededSuperposition"],
                             {"vanish_at_origin": True}, mode="radial")
    spec = dk.make_spec("ClassicalRellich", N=5, gamma=0.0)
    res = verify_corpus(spec, corpus, wb_radial5)
    assert res.known_bound == pytest.approx(4.0 / 5.0)
    assert not res.violations
    assert res.empirical_constant <= 0.8


def test_class_gate(wb_radial5):
    g = generate_corpus(1, 1, ["Gaussian"], mode="radial")[0]
    spec = dk.make_spec("ClassicalRellich", N=5, gamma=0.0)
    with pytest.raises(FunctionClassError):
        evaluate_sides(spec, g, wb_radial5)


def test_degenerate_function_rejected(wb_radial3):
    zero = generate_corpus(1, 1, ["Gaussian"], mode="radial")[0]
    zero = zero._rewrap((zero.components[0].__class__(0.0, (0.0,), 1.0),), "~zero")
    spec = dk.make_spec("FractionalHardy", N=3, gamma=0.0, s=1.0)
    with pytest.raises(DegenerateFunctionError):
        evaluate_sides(spec, zero, wb_radial3)


def test_weighted_rellich_reduces_to_classical(wb_radial5):
    # a=0, b=2 gives p=2 and the classical Rellich record
    corpus = generate_corpus(13, 4, ["HermiteGaussian"], {"vanish_at_origin": True},
                             mode="radial")
    wspec = dk.weighted_rellich_spec(5, 0.0, a=0.0, b=2.0)
    assert wspec.params["p"] == pytest.approx(2.0)
    cspec = dk.make_spec("ClassicalRellich", N=5, gamma=0.0)
    for f in corpus:
        rw = evaluate_sides(wspec, f, wb_radial5)
        rc = evaluate_sides(cspec, f, wb_radial5)
        assert rw.ratio == pytest.approx(rc.ratio, rel=1e-10)


def test_higher_rellich_j2(wb_radial5=None):
    # j=2 at Λ=11 (richer admissible window), vanish-at-origin corpus
    wb = dk.radial_workbench(11, 0.0)
    spec = dk.higher_rellich_spec(11, 0.0, a=0.0, b=3.5, j=2)
    assert admissible(spec).admissible
    corpus = generate_corpus(3, 4, ["HermiteGaussian"], {"vanish_at_origin": True},
                             mode="radial")
    res = verify_corpus(spec, corpus, wb)
    assert np.isfinite(res.empirical_constant) and res.empirical_constant > 0


def test_sobolev_and_hardy(wb_radial3):
    corpus = generate_corpus(19, 4, ["Gaussian", "HermiteGaussian"], mode="radial")
    res = verify_corpus(dk.sobolev_spec(3, 0.0, 2.0), corpus, wb_radial3)
    assert res.empirical_constant > 0
    res2 = verify_corpus(dk.make_spec("Hardy_Lp", N=3, gamma=0.0, p=1.5),
                         corpus, wb_radial3)
    assert res2.empirical_constant > 0


def test_gn2_and_weighted_gn(wb_radial3):
    corpus = generate_corpus(23, 3, ["Gaussian", "DilatedGaussian"], mode="radial")
    gn2 = dk.make_spec("GN_II", N=3, gamma=0.0, p=2.0, s=1.5, theta=0.4)
    res = verify_corpus(gn2, corpus, wb_radial3)
    assert res.empirical_constant > 0
    wgn3 = dk.make_spec("WeightedGN_III", N=3, gamma=0.0, a=0.5, s=1.0)
    res3 = verify_corpus(wgn3, corpus, wb_radial3)
    assert res3.empirical_constant > 0
    # a = s reduces WeightedGN_III to the fractional Hardy ratio
    wgn_eq = dk.make_spec("WeightedGN_III", N=3, gamma=0.0, a=1.0, s=1.0)
    fh = dk.make_spec("FractionalHardy", N=3, gamma=0.0, s=1.0)
    f = corpus[0]
    assert evaluate_sides(wgn_eq, f, wb_radial3).ratio == pytest.approx(
        evaluate_sides(fh, f, wb_radial3).ratio, rel=1e-10)


def test_wgn1_wgn2(wb_radial5=None):
    wb = dk.radial_workbench(9, 0.0)
    corpus = generate_corpus(29, 3, ["HermiteGaussian"], {"vanish_at_origin": True},
                             mode="radial")
    wgn1 = dk.wgn1_spec(9, 0.0, p=1.5, s=2.0)
    assert admissible(wgn1).admissible
    assert verify_corpus(wgn1, corpus, wb).empirical_constant > 0
    wgn2 = dk.wgn2_spec(9, 0.0, a=1.5, s=2.5)
    assert admissible(wgn2).admissible
    assert verify_corpus(wgn2, corpus, wb).empirical_constant > 0


def test_ckn_fractional_known_bound(wb_radial3):
    spec = dk.ckn_fractional_spec(3, 0.0, q=2.0, a=0.5, b=0.3, delta=0.5)
    corpus = generate_corpus(31, 6, ["Gaussian", "DilatedGaussian", "HermiteGaussian"],
                             mode="radial")
    res = verify_corpus(spec, corpus, wb_radial3)
    expect = 1.0 / fractional_hardy_constant(3, 0.0, 0.5) ** 0.5
    assert res.known_bound == pytest.approx(expect)
    assert not res.violations


def test_trudinger_basics(wb_radial3):
    g = generate_corpus(1, 1, ["Gaussian"], mode="radial")[0]
    vals = g.value(wb_radial3.quad.nodes)
    a = 0.4
    lhs = trudinger_lhs(vals, a, 2.0, wb_radial3.quad)
    direct = float(np.sum(wb_radial3.quad.weights * (np.exp(a * vals ** 2) - 1.0)))
    assert lhs == pytest.approx(direct, rel=1e-12)
    assert trudinger_lhs(np.zeros_like(vals), 1.0, 2.0, wb_radial3.quad) == 0.0
    # small-amplitude leading order for non-integer p (first kept term j0 = 2)
    eps, p = 1e-5, 2.5
    pp = p / (p - 1.0)
    z = a * (eps * np.abs(vals)) ** pp
    lead = float(np.sum(wb_radial3.quad.weights * z ** 2 / 2.0))
    assert trudinger_lhs(eps * vals, a, p, wb_radial3.quad) == pytest.approx(lead, rel=1e-6)


def test_trudinger_evaluate_monotone_in_a(wb_radial3):
    g = generate_corpus(1, 1, ["Gaussian"], mode="radial")[0]
    r1 = evaluate_sides(dk.make_spec("Trudinger", N=3, gamma=0.0, p=2.0, a=0.3),
                        g, wb_radial3)
    r2 = evaluate_sides(dk.make_spec("Trudinger", N=3, gamma=0.0, p=2.0, a=0.6),
                        g, wb_radial3)
    assert r2.ratio > r1.ratio > 0


def test_trudinger_overflow_guard(wb_radial3):
    g = generate_corpus(1, 1, ["Gaussian"], mode="radial")[0]
    with pytest.raises(SeriesCapError):
        trudinger_lhs(50.0 * g.value(wb_radial3.quad.nodes), 1.0, 2.0, wb_radial3.quad)


def test_largest_admissible_a_bisection(wb_radial3):
    corpus = generate_corpus(21, 3, ["Gaussian", "DilatedGaussian"], mode="radial")
    a_star = largest_admissible_a(corpus, 2.0, wb_radial3, ratio_bound=2.0)
    assert a_star > 0
    # the reported a keeps the corpus below the bound
    lam = wb_radial3.lam
    for f in corpus:
        c = wb_radial3.frac_norm(f, lam / 2.0, 2.0)
        vals = f.value(wb_radial3.quad.nodes) / c
        lhs = trudinger_lhs(vals, a_star, 2.0, wb_radial3.quad)
        assert lhs / (wb_radial3.norm(f, 2.0) / c) ** 2 <= 2.0 * (1 + 1e-9)


def test_empty_corpus_rejected(wb_radial3):
    spec = dk.make_spec("FractionalHardy", N=3, gamma=0.0, s=1.0)
    with pytest.raises(ValueError):
        verify_corpus(spec, [], wb_radial3)


def test_workbench_mismatch_rejected(wb_radial3):
    spec = dk.make_spec("FractionalHardy", N=5, gamma=0.0, s=1.0)
    g = generate_corpus(1, 1, ["Gaussian"], mode="radial")[0]
    with pytest.raises(ValueError):
        evaluate_sides(spec, g, wb_radial3)
