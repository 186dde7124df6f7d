"""Experiment drivers: feature ablation and training/test size sweeps."""

from __future__ import annotations

import pytest

from senticite.classifiers import Task, TrainConfig
from senticite.corpus import stratified_split
from senticite.errors import ValidationError
from senticite.experiments import feature_ablation, make_fit_predict, train_algorithm
from senticite.experiments import test_size_sweep as sweep_test_sizes
from senticite.experiments import train_size_sweep as sweep_train_sizes
from senticite.features import COMBINATION

from conftest import example


QUICK = TrainConfig(epochs=8, shuffle_seed=42)


class TestTrainAlgorithm:
    def test_dispatch(self):
        examples = [example({"f": 1.0}, "a", 0), example({"g": 1.0}, "b", 1)]
        assert train_algorithm("svm", examples, QUICK).metadata["algorithm"] == "svm"
        assert train_algorithm("paum", examples, QUICK).metadata["algorithm"] == "paum"

    def test_unknown_algorithm_rejected(self):
        with pytest.raises(ValidationError):
            train_algorithm("forest", [], QUICK)


class TestMakeFitPredict:
    def test_returns_one_label_per_test_record(self, mini_sentiment, resource):
        split = stratified_split(mini_sentiment, 6, seed=42)
        fit_predict = make_fit_predict(
            "svm", COMBINATION, resource, QUICK, Task.SENTIMENT
        )
        predictions = fit_predict(split.train, split.test[:10])
        assert len(predictions) == 10
        assert set(predictions) <= set(Task.SENTIMENT.labels)


class TestFeatureAblation:
    def run(self, mini_sentiment, resource):
        split = stratified_split(mini_sentiment, 8, seed=42)
        return feature_ablation(
            split.train, split.test, Task.SENTIMENT, resource, QUICK
        )

    def test_two_rows_two_columns(self, mini_sentiment, resource):
        result = self.run(mini_sentiment, resource)
        assert result.presets == ("only-pos", "combination")
        assert result.algorithms == ("svm", "paum")
        assert set(result.micro_f1) == {
            (p, a) for p in result.presets for a in result.algorithms
        }
        for score in result.micro_f1.values():
            assert 0.0 <= score <= 1.0

    def test_format_table(self, mini_sentiment, resource):
        table = self.run(mini_sentiment, resource).format_table()
        lines = table.splitlines()
        assert len(lines) == 3
        assert lines[1].startswith("only-pos")
        assert lines[2].startswith("combination")

    def test_to_dict_keys(self, mini_sentiment, resource):
        data = self.run(mini_sentiment, resource).to_dict()
        assert set(data["micro_f1"]) == {
            "only-pos/svm", "only-pos/paum", "combination/svm", "combination/paum",
        }

    def test_deterministic(self, mini_sentiment, resource):
        a = self.run(mini_sentiment, resource)
        b = self.run(mini_sentiment, resource)
        assert a == b

    def test_empty_test_set_rejected(self, mini_sentiment, resource):
        split = stratified_split(mini_sentiment, 8, seed=42)
        with pytest.raises(ValidationError):
            feature_ablation(split.train, [], Task.SENTIMENT, resource, QUICK)


class TestTestSizeSweep:
    def test_scores_for_each_size(self, mini_sentiment, resource):
        result = sweep_test_sizes(
            mini_sentiment, sizes=(1, 2, 4), n_train_per_class=6, seed=42,
            resource=resource, train_config=QUICK,
        )
        assert result.axis == "test"
        for algorithm in result.algorithms:
            for size in (1, 2, 4):
                score = result.micro_f1[(algorithm, size)]
                assert score is not None and 0.0 <= score <= 1.0

    def test_oversized_request_is_clipped_with_note(self, mini_sentiment, resource):
        result = sweep_test_sizes(
            mini_sentiment, sizes=(500,), n_train_per_class=6, seed=42,
            resource=resource, train_config=QUICK,
        )
        assert result.effective_sizes[500] < 500
        assert any("500" in note for note in result.notes)

    def test_invalid_sizes_rejected(self, mini_sentiment, resource):
        with pytest.raises(ValidationError):
            sweep_test_sizes(
                mini_sentiment, sizes=(), n_train_per_class=6, seed=1,
                resource=resource, train_config=QUICK,
            )
        with pytest.raises(ValidationError):
            sweep_test_sizes(
                mini_sentiment, sizes=(0,), n_train_per_class=6, seed=1,
                resource=resource, train_config=QUICK,
            )


class TestTrainSizeSweep:
    def test_undefined_cells_render_as_dash(self, mini_sentiment, resource):
        result = sweep_train_sizes(
            mini_sentiment, sizes=(2, 30), seed=42,
            resource=resource, train_config=QUICK,
        )
        # A 2-record prefix of an unbalanced pool usually misses a class;
        # if so the cell is None and the table shows '-'.
        table = result.format_table()
        assert result.axis == "train"
        for (_, size), score in result.micro_f1.items():
            if score is None:
                assert "-" in table
                assert any(str(size) in note for note in result.notes)
            else:
                assert 0.0 <= score <= 1.0

    def test_large_sizes_score_normally(self, mini_sentiment, resource):
        result = sweep_train_sizes(
            mini_sentiment, sizes=(40,), seed=42,
            resource=resource, train_config=QUICK,
        )
        for algorithm in result.algorithms:
            assert result.micro_f1[(algorithm, 40)] is not None

    def test_bad_test_fraction_rejected(self, mini_sentiment, resource):
        with pytest.raises(ValidationError):
            sweep_train_sizes(
                mini_sentiment, sizes=(10,), seed=1, resource=resource,
                train_config=QUICK, test_fraction=1.5,
            )

    def test_deterministic(self, mini_sentiment, resource):
        kwargs = dict(sizes=(20,), seed=9, resource=resource, train_config=QUICK)
        assert sweep_train_sizes(mini_sentiment, **kwargs) == sweep_train_sizes(
            mini_sentiment, **kwargs
        )
