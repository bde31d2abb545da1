import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.special import expit
from scipy.stats import norm

from oracles import pairwise_auc, pairwise_delta
from smellprone.dataset import Dataset, FeatureRow, ModelSpec
from smellprone.errors import (
    ContractViolation,
    DegenerateTrainingError,
    StratificationError,
    UndefinedAUCError,
)
from smellprone.ml import (
    EvaluationResult,
    LogisticModel,
    auc_roc,
    cliffs_delta,
    confusion_metrics,
    cross_validate,
    discretize,
    f_measure,
    fit_logistic,
    gain_ratio_rank,
    info_gain,
    overlap_analysis,
    predict,
    scott_knott_esd,
    stratified_folds,
    train_logistic,
    variance_inflation,
    vif_filter,
)


def dataset(columns, labels, release="r1", smelly=None):
    names = list(columns)
    n = len(labels)
    smelly = smelly or [False] * n
    rows = [FeatureRow(release, f"C{i}", {f: float(columns[f][i]) for f in names},
                       bool(labels[i]), bool(smelly[i])) for i in range(n)]
    return Dataset(ModelSpec("SM"), names, rows)


# logistic regression

def test_constant_features_give_prior():
    m = fit_logistic(np.ones((6, 2)), [1, 0, 1, 0, 1, 0])
    assert m.predict_proba(np.ones(2))[0] == pytest.approx(0.5, abs=1e-6)


def test_separable_ordering():
    m = fit_logistic(np.array([[0.0], [1.0]]), [0, 1])
    lo, hi = m.predict_proba(np.array([[0.0], [1.0]]))
    assert lo < 0.5 < hi


def test_two_point_grid_oracle():
    lam = 1.0
    m = fit_logistic(np.array([[0.0], [1.0]]), [0, 1], lam)
    # standardized x is -1 and +1
    z, y = np.array([-1.0, 1.0]), np.array([0.0, 1.0])
    def search(b_grid, w_grid):
        B, W = np.meshgrid(b_grid, w_grid, indexing="ij")
        s = B[..., None] + W[..., None] * z
        obj = np.sum(np.logaddexp(0, s) - y * s, axis=-1) + 0.5 * lam * W ** 2
        i, j = np.unravel_index(np.argmin(obj), obj.shape)
        return b_grid[i], w_grid[j]

    b, w = search(np.arange(-3, 3, 0.01), np.arange(-3, 3, 0.01))
    b, w = search(np.arange(b - 0.02, b + 0.02, 0.0002), np.arange(w - 0.02, w + 0.02, 0.0002))
    assert m.intercept == pytest.approx(b, abs=1e-3)
    assert m.coefficients[0] == pytest.approx(w, abs=1e-3)
    assert w == pytest.approx(0.675, abs=2e-3)


def test_single_label_rejected():
    with pytest.raises(DegenerateTrainingError):
        fit_logistic(np.zeros((3, 1)), [1, 1, 1])
    with pytest.raises(ContractViolation):
        fit_logistic(np.zeros((2, 1)), [0, 1], lam=-1)


def hand_model(intercept=0.0, coef=1.0):
    return LogisticModel(("x",), np.array([coef]), intercept, 1.0, np.zeros(1), np.ones(1))


def test_predict():
    assert predict(hand_model(0, 0), {"x": 3}) == 0.5
    assert predict(hand_model(50, 0), {"x": 0}) == pytest.approx(1.0)
    assert predict(hand_model(), {"x": 1}) == pytest.approx(0.7311, abs=1e-4)
    with pytest.raises(ContractViolation):
        predict(hand_model(), {"y": 1})


def test_train_on_dataset_ignores_seed():
    d = dataset({"a": [0, 1, 2, 3, 4, 5]}, [0, 0, 1, 0, 1, 1])
    m1, m2 = train_logistic(d, 1.0, seed=1), train_logistic(d, 1.0, seed=99)
    assert m1.features == ("a",)
    assert np.array_equal(m1.coefficients, m2.coefficients)


# metrics

def test_f_measure_examples():
    assert f_measure(0.61, 0.66) == pytest.approx(0.634, abs=1e-3)
    assert f_measure(0.50, 0.56) == pytest.approx(0.528, abs=1e-3)
    assert confusion_metrics(0, 0, 5, 0) == (0.0, 0.0, 0.0)
    p, r, f = confusion_metrics(3, 1, 4, 2)
    assert (p, r) == (0.75, 0.6)
    assert f == pytest.approx(2 / 3)


@given(st.floats(0.001, 1))
def test_f_fixed_point(x):
    assert f_measure(x, x) == pytest.approx(x)


def test_auc_examples():
    assert auc_roc([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1]) == 1.0
    assert auc_roc([0.3] * 4, [0, 1, 0, 1]) == 0.5
    assert auc_roc([0.9, 0.8, 0.4, 0.3], [1, 0, 1, 0]) == 0.75
    with pytest.raises(UndefinedAUCError):
        auc_roc([0.1, 0.2], [1, 1])


scores_labels = st.lists(st.tuples(st.integers(0, 20), st.booleans()), min_size=2, max_size=40)


@settings(max_examples=300, deadline=None)
@given(scores_labels)
def test_auc_matches_pairs_and_is_monotone_invariant(data):
    s = [float(a) for a, _ in data]
    y = [b for _, b in data]
    assume(any(y) and not all(y))
    a = auc_roc(s, y)
    assert a == pytest.approx(pairwise_auc(s, y))
    assert auc_roc([math.exp(v) * 3 - 7 for v in s], y) == pytest.approx(a)
    assert auc_roc([-v for v in s], y) == pytest.approx(1 - a)


# cross-validation

def test_stratification():
    labels = [i < 30 for i in range(100)]
    folds = stratified_folds(labels, 10, seed=4)
    for f in range(10):
        pos = sum(1 for lab, g in zip(labels, folds) if g == f and lab)
        assert abs(pos - 3) <= 1
    with pytest.raises(StratificationError):
        stratified_folds([True] * 3 + [False] * 20, 10, 0)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 10), st.integers(0, 60), st.integers(0, 60), st.integers(0, 10_000))
def test_fold_balance(k, n_pos, n_neg, seed):
    assume(n_pos >= k and n_neg >= k)
    labels = [True] * n_pos + [False] * n_neg
    folds = stratified_folds(labels, k, seed)
    sizes = np.bincount(folds, minlength=k)
    pos = np.bincount(folds[:n_pos], minlength=k)
    assert sizes.max() - sizes.min() <= 1
    assert pos.max() - pos.min() <= 1


def noisy_dataset(n=60, seed=0):
    rng = np.random.default_rng(seed)
    y = np.arange(n) % 3 == 0
    return dataset({"a": y + rng.normal(0, 0.8, n), "b": rng.normal(0, 1, n)}, y)


def test_cv_deterministic_and_thread_independent():
    d = noisy_dataset()
    r1 = cross_validate(d, k=5, repeats=4, base_seed=7)
    r2 = cross_validate(d, k=5, repeats=4, base_seed=7, threads=4)
    assert r1.to_json() == r2.to_json()
    assert r1.seeds == [7, 8, 9, 10]
    assert r1.to_json() != cross_validate(d, k=5, repeats=4, base_seed=8).to_json()
    back = EvaluationResult.from_dict(r1.to_dict())
    assert back.to_json() == r1.to_json()


def test_label_equal_feature():
    y = np.arange(50) % 4 == 0
    d = dataset({"a": y.astype(float)}, y)
    res = cross_validate(d, k=10, repeats=3, base_seed=0)
    assert res.f_measure >= 0.99
    # direct training on every recorded split gives the same confusion counts
    X, yy = d.matrix()
    for o in res.folds:
        test = np.array(res.assignments[o.repeat]) == o.fold
        probs = fit_logistic(X[~test], yy[~test], 1.0).predict_proba(X[test])
        assert int(np.sum((probs >= 0.5) & yy[test])) == o.tp


def identity_classifier(X, y, features):
    return lambda Xt: Xt[:, 0]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.sampled_from([0.0, 0.3, 0.5, 0.9]), st.booleans()),
                min_size=6, max_size=50), st.integers(0, 100))
def test_identity_classifier_brute_force(data, seed):
    y = [b for _, b in data]
    assume(sum(y) >= 3 and len(y) - sum(y) >= 3)
    d = dataset({"s": [s for s, _ in data]}, y)
    res = cross_validate(d, k=3, repeats=1, base_seed=seed, classifier=identity_classifier)
    folds = res.assignments[0]
    for o in res.folds:
        members = [(s, lab) for (s, lab), g in zip(data, folds) if g == o.fold]
        tp = sum(1 for s, lab in members if s >= 0.5 and lab)
        fp = sum(1 for s, lab in members if s >= 0.5 and not lab)
        tn = sum(1 for s, lab in members if s < 0.5 and not lab)
        fn = sum(1 for s, lab in members if s < 0.5 and lab)
        assert (o.tp, o.fp, o.tn, o.fn) == (tp, fp, tn, fn)
        assert o.auc == pytest.approx(pairwise_auc([s for s, _ in members],
                                                   [lab for _, lab in members]))


def test_true_positive_majority():
    y = [True, True, True, False, False, False]
    d = dataset({"s": [0.9, 0.9, 0.1, 0.1, 0.9, 0.1]}, y, smelly=[True, False, True, True, True, False])
    res = cross_validate(d, k=3, repeats=3, classifier=identity_classifier)
    assert res.true_positives() == {("r1", "C0"), ("r1", "C1")}
    assert res.smelly_change_prone() == {("r1", "C0"), ("r1", "C2")}


# collinearity

def test_orthogonal_features_keep_vif_one():
    a = np.array([1, -1, 1, -1, 1, -1, 1, -1], dtype=float)
    b = np.array([1, 1, -1, -1, 1, 1, -1, -1], dtype=float)
    c = np.array([1, 1, 1, 1, -1, -1, -1, -1], dtype=float)
    assert variance_inflation(np.column_stack([a, b, c])) == pytest.approx([1, 1, 1])
    d = dataset({"a": a, "b": b, "c": c}, a > 0)
    out, removed = vif_filter(d)
    assert removed == [] and out.features == ["a", "b", "c"]


def test_duplicate_feature_removes_later_name():
    rng = np.random.default_rng(1)
    x, z = rng.normal(size=30), rng.normal(size=30)
    d = dataset({"alpha": x, "zeta": x.copy(), "mid": z}, x > 0)
    out, removed = vif_filter(d)
    assert removed == ["zeta"]
    assert vif_filter(out)[1] == []


def test_vif_keeps_last_feature():
    x = np.arange(10.0)
    d = dataset({"a": x, "b": 2 * x, "c": 3 * x + 1}, x > 4)
    out, removed = vif_filter(d)
    assert len(out.features) == 1
    assert sorted(removed + out.features) == ["a", "b", "c"]


# information gain

def test_gain_examples():
    y = [1, 1, 1, 0, 1, 0, 0, 0]
    x = [0, 0, 0, 0, 1, 1, 1, 1]
    h = lambda p: -p * math.log2(p) - (1 - p) * math.log2(1 - p)
    assert info_gain(x, y) == pytest.approx(1 - (0.5 * h(0.75) + 0.5 * h(0.25)))
    assert info_gain(x, y) == pytest.approx(0.1887, abs=1e-4)
    assert info_gain([5] * 8, y) == 0


def test_rank_label_equal_first():
    rng = np.random.default_rng(3)
    y = np.arange(40) % 2 == 0
    d = dataset({"noise": rng.normal(size=40), "const": np.ones(40), "perfect": y * 1.0}, y)
    rank = gain_ratio_rank(d, bins=10, resamples=0)
    assert rank.order[0] == "perfect"
    by = {e.feature: e for e in rank}
    assert by["const"].mean_gain == 0
    assert by["perfect"].top_likelihood == 100
    assert rank.to_csv().splitlines()[0] == "feature,mean_gain,stddev,sk_top_likelihood"


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-50, 50), st.booleans()), min_size=4, max_size=60),
       st.integers(2, 10))
def test_discretize_rank_based(data, bins):
    x = np.array([a for a, _ in data], dtype=float)
    y = [b for _, b in data]
    transformed = np.exp(x / 10) * 5 + 3
    assert np.array_equal(discretize(x, bins), discretize(transformed, bins))
    d1 = dataset({"f": x}, y)
    d2 = dataset({"f": transformed}, y)
    r1 = gain_ratio_rank(d1, bins=bins, resamples=3, seed=2)
    r2 = gain_ratio_rank(d2, bins=bins, resamples=3, seed=2)
    assert list(r1)[0].mean_gain == pytest.approx(list(r2)[0].mean_gain)


# effect size and clustering

def test_cliffs_examples():
    assert cliffs_delta([1, 2, 3], [1, 2, 3]) == 0
    assert cliffs_delta([5, 6], [1, 2]) == 1
    assert cliffs_delta([1, 2], [1, 3]) == -0.25


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=20),
       st.lists(st.integers(0, 9), min_size=1, max_size=20))
def test_cliffs_antisymmetric(a, b):
    d = cliffs_delta(a, b)
    assert d == pytest.approx(pairwise_delta(a, b))
    assert cliffs_delta(b, a) == pytest.approx(-d)


def test_skesd_examples():
    same = [0.7, 0.71, 0.72, 0.73]
    assert scott_knott_esd({"a": same, "b": same, "c": same}) == [["a", "b", "c"]]
    clusters = scott_knott_esd({"low": [0.50, 0.51, 0.52, 0.49], "high": [0.90, 0.91, 0.92, 0.89]})
    assert clusters == [["high"], ["low"]]


def test_skesd_merges_negligible_difference():
    q = (np.arange(400) + 0.5) / 400
    a = norm.ppf(q) + 5
    b = a + 0.177
    assert abs(pairwise_delta(list(b), list(a))) == pytest.approx(0.10, abs=0.005)
    assert len(scott_knott_esd({"a": a, "b": b})) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 1), st.floats(0.001, 0.2)), min_size=1, max_size=6),
       st.integers(0, 1000))
def test_skesd_clusters_contiguous(params, seed):
    rng = np.random.default_rng(seed)
    groups = {f"g{i}": rng.normal(mu, sd, 10) for i, (mu, sd) in enumerate(params)}
    clusters = scott_knott_esd(groups)
    assert len(clusters) <= len(groups)
    assert sorted(itertools.chain(*clusters)) == sorted(groups)
    means = [[float(np.mean(groups[g])) for g in c] for c in clusters]
    for upper, lower in zip(means, means[1:]):
        assert min(upper) >= max(lower)


# overlap

def test_overlap_examples():
    assert overlap_analysis({1, 2}, {1, 2}) == (100, 0, 0)
    assert overlap_analysis({1, 2, 3}, {4}) == (0, 75, 25)
    assert overlap_analysis(set(), set()) == (0, 0, 0)
    with pytest.raises(ContractViolation):
        overlap_analysis({1}, {2}, universe={2})


@given(st.sets(st.integers(0, 30)), st.sets(st.integers(0, 30)))
def test_overlap_sums_to_hundred(a, b):
    both, only_a, only_b = overlap_analysis(a, b)
    if a | b:
        assert both + only_a + only_b == pytest.approx(100)
        assert overlap_analysis(b, a) == pytest.approx((both, only_b, only_a))


def test_expit_matches_hand_sigmoid():
    assert expit(1.0) == pytest.approx(1 / (1 + math.exp(-1)))
