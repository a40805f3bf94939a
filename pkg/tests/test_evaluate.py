import random

import pytest
from hypothesis import given, strategies as st

from lifesent import (
    EngineConfig,
    EvalReport,
    Label,
    NbModel,
    macro_f1,
    nbs_baseline,
    nbt_baseline,
    percentage_sweep,
)

from conftest import make_corpus
from gen import planted_corpus, separable_domain

POS, NEG = Label.POS, Label.NEG


class TestMacroF1:
    def test_hand_computed_mixed_case(self):
        gold = [POS, POS, NEG, NEG]
        pred = [POS, NEG, NEG, NEG]
        # F1(pos) = 2/3, F1(neg) = 4/5
        assert macro_f1(pred, gold) == pytest.approx(11 / 15, abs=1e-12)

    def test_perfect_predictions(self):
        gold = [POS, NEG, NEG, POS]
        assert macro_f1(gold, gold) == 1.0

    def test_all_one_class_on_balanced_gold(self):
        gold = [POS, POS, NEG, NEG]
        pred = [POS, POS, POS, POS]
        # F1(pos) = 2/3, F1(neg) = 0, so macro is F1(pos)/2.
        assert macro_f1(pred, gold) == pytest.approx((2 / 3) / 2, abs=1e-12)

    def test_absent_class_scores_zero(self):
        assert macro_f1([POS, POS], [POS, POS]) == pytest.approx(0.5)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="predictions"):
            macro_f1([POS], [POS, NEG])

    def test_empty_input(self):
        with pytest.raises(ValueError, match="empty"):
            macro_f1([], [])

    @given(st.lists(st.tuples(st.sampled_from(list(Label)), st.sampled_from(list(Label))), min_size=1), st.randoms())
    def test_permutation_invariant(self, pairs, rng):
        pred = [p for p, _ in pairs]
        gold = [g for _, g in pairs]
        before = macro_f1(pred, gold)
        rng.shuffle(pairs)
        after = macro_f1([p for p, _ in pairs], [g for _, g in pairs])
        assert after == pytest.approx(before, abs=1e-12)
        assert 0.0 <= before <= 1.0

    def test_one_iff_exact_match(self):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randint(1, 12)
            gold = [rng.choice([POS, NEG]) for _ in range(n)]
            pred = [rng.choice([POS, NEG]) for _ in range(n)]
            score = macro_f1(pred, gold)
            if pred == gold and len(set(gold)) == 2:
                assert score == 1.0
            elif pred != gold:
                assert score < 1.0


class TestEvalReport:
    def _report(self):
        report = EvalReport(seed=42)
        report.add("books", "NB-S", 0.5)
        report.add("books", "NB-T", 0.7)
        report.add("music", "NB-S", 0.6)
        report.add("music", "NB-T", 0.8)
        return report

    def test_average_is_arithmetic_mean(self):
        report = self._report()
        assert report.average("NB-S") == pytest.approx(0.55, abs=1e-12)
        assert report.average("NB-T") == pytest.approx(0.75, abs=1e-12)

    def test_render_layout(self):
        text = self._report().render()
        lines = text.splitlines()
        assert lines[0] == "# seed 42"
        assert lines[1].split() == ["Domain", "NB-S", "NB-T"]
        assert lines[-1].startswith("Average")

    def test_tsv_round_trip(self, tmp_path):
        report = self._report()
        path = tmp_path / "report.tsv"
        report.save(path)
        loaded = EvalReport.load(path)
        assert loaded.rows == report.rows
        assert loaded.seed == 42


def _labeled_domain(name, n_pos=20, n_neg=15, seed=0):
    rng = random.Random(seed)
    words_pos = ["nice", "sweet", "solid"]
    words_neg = ["sour", "flaky", "weak"]
    shared = ["box", "item", "day"]
    records = []
    for i in range(n_pos):
        text = " ".join(rng.choices(words_pos + shared, k=8))
        records.append((POS, text))
    for i in range(n_neg):
        text = " ".join(rng.choices(words_neg + shared, k=8))
        records.append((NEG, text))
    rng.shuffle(records)
    return make_corpus(name, records)


class TestNbtBaseline:
    def test_separable_domain_scores_high(self):
        domain = separable_domain(n_docs=200, seed=1)
        assert nbt_baseline(domain, k=5, seed=42) > 0.95

    def test_singleton_test_folds_run(self):
        domain = _labeled_domain("tiny", n_pos=5, n_neg=5)
        score = nbt_baseline(domain, k=5, seed=42)
        assert 0.0 <= score <= 1.0

    def test_insufficient_class_counts(self):
        domain = _labeled_domain("small", n_pos=4, n_neg=9)
        with pytest.raises(ValueError, match="at least k"):
            nbt_baseline(domain, k=5, seed=42)

    def test_unlabeled_rejected(self):
        domain = separable_domain(seed=0)
        unlabeled = type(domain)(domain.name, domain.documents, None)
        with pytest.raises(ValueError, match="labels"):
            nbt_baseline(unlabeled)


class TestNbsBaseline:
    def test_target_identical_to_source_is_self_evaluation(self):
        source = _labeled_domain("src", seed=3)
        model = NbModel.fit(source.documents, source.labels)
        train_preds = [model.decide(d) for d in source.documents]
        expected = macro_f1(train_preds, source.labels)
        assert nbs_baseline([source], source) == pytest.approx(expected, abs=1e-12)

    def test_shifted_target_scores_below_in_domain_cv(self):
        for seed in range(5):
            domains = planted_corpus(n_domains=4, seed=seed, docs_per_domain=300)
            sources, target = domains[:3], domains[3]
            assert nbs_baseline(sources, target) < nbt_baseline(target, 5, 42)

    def test_requires_sources(self):
        with pytest.raises(ValueError, match="source"):
            nbs_baseline([], _labeled_domain("t"))


class TestPercentageSweep:
    def test_full_percent_equals_unrestricted_cv(self):
        config = EngineConfig(min_avg_freq=0.0)
        domains = [_labeled_domain("a", seed=5), _labeled_domain("b", seed=6)]
        sweep = percentage_sweep(domains, [100.0], config, k=5, seed=42)
        for domain in domains:
            expected = nbt_baseline(domain, 5, 42, config)
            assert sweep.grid[domain.name][100.0] == pytest.approx(
                expected, abs=0.0
            )

    def test_grid_shape_and_average(self):
        domains = [_labeled_domain("a", seed=5), _labeled_domain("b", seed=6)]
        sweep = percentage_sweep(domains, [100.0, 50.0], EngineConfig(min_avg_freq=0.0))
        assert set(sweep.grid) == {"a", "b"}
        expected = (sweep.grid["a"][50.0] + sweep.grid["b"][50.0]) / 2
        assert sweep.average(50.0) == pytest.approx(expected, abs=1e-12)

    def test_percent_out_of_range(self):
        with pytest.raises(ValueError, match="percent"):
            percentage_sweep([_labeled_domain("a")], [0.0])

    def test_planted_polar_words_carry_the_signal(self):
        # 20 planted polar words among 100 neutral ones: scores hold up
        # at generous cutoffs and collapse below the planted fraction.
        rng = random.Random(11)
        polar_pos = [f"up{i}" for i in range(10)]
        polar_neg = [f"dn{i}" for i in range(10)]
        neutral = [f"nn{i}" for i in range(100)]
        records = []
        for i in range(240):
            label = POS if i % 2 else NEG
            own = polar_pos if label is POS else polar_neg
            tokens = rng.choices(own, k=2) + rng.choices(neutral, k=18)
            rng.shuffle(tokens)
            records.append((label, " ".join(tokens)))
        domain = make_corpus("planted", records)
        config = EngineConfig(min_avg_freq=0.0)
        sweep = percentage_sweep([domain], [100.0, 30.0, 2.0], config)
        row = sweep.grid["planted"]
        assert row[30.0] > row[100.0] - 0.05
        assert row[2.0] < row[100.0] - 0.2
