import json
import shutil
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from healthfc.artifacts import ArtifactError, read_artifact, write_artifact
from healthfc.corpus import ClaimRecord, SourceSite, VeracityLabel, _data_path
from healthfc.pipeline import (
    ConfigError,
    PipelineConfig,
    SPLIT_NAMES,
    StageError,
    _largest_remainder_counts,
    run,
    split,
    stage_curate,
    stage_predict,
)

FIXTURE = _data_path("fixture_corpus_raw.jsonl")


def make_records(n: int) -> list[ClaimRecord]:
    return [
        ClaimRecord(
            claim_id=f"r-{i:05d}",
            claim_text="claim text long enough to be a plausible sentence",
            article_text="article text",
            explanation_text="explanation text long enough",
            label=list(VeracityLabel)[i % 4],
            source_site=SourceSite.SNOPES,
        )
        for i in range(n)
    ]


def fixture_config(tmp_path, **overrides) -> PipelineConfig:
    config = PipelineConfig(
        corpus=str(FIXTURE),
        out_dir=str(tmp_path / "out"),
        seed=13,
        **overrides,
    )
    config.validate()
    return config


class TestSplit:
    def test_paper_scale_counts(self):
        assignment = split(make_records(11832))
        sizes = {name: 0 for name in SPLIT_NAMES}
        for v in assignment.values():
            sizes[v] += 1
        assert sizes == {"train": 9466, "validation": 1183, "test": 1183}

    def test_ten_records(self):
        assignment = split(make_records(10))
        sizes = [list(assignment.values()).count(n) for n in SPLIT_NAMES]
        assert sizes == [8, 1, 1]

    def test_same_seed_same_assignment(self):
        records = make_records(50)
        assert split(records, seed=7) == split(records, seed=7)

    def test_different_seed_differs(self):
        records = make_records(200)
        assert split(records, seed=1) != split(records, seed=2)

    def test_empty_split_is_an_error(self):
        with pytest.raises(ValueError):
            split(make_records(2))

    def test_empty_corpus_is_an_error(self):
        with pytest.raises(ValueError):
            split([])

    def test_stratified_keeps_partition(self):
        records = make_records(40)
        assignment = split(records, stratify_by_label=True)
        assert set(assignment) == {r.claim_id for r in records}

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(10, 400), seed=st.integers(0, 1000))
    def test_partition_property(self, n, seed):
        records = make_records(n)
        assignment = split(records, seed=seed)
        assert set(assignment) == {r.claim_id for r in records}
        assert set(assignment.values()) <= set(SPLIT_NAMES)
        sizes = [list(assignment.values()).count(name) for name in SPLIT_NAMES]
        assert sum(sizes) == n
        for size, fraction in zip(sizes, (0.8, 0.1, 0.1)):
            assert abs(size - n * fraction) <= 1

    def test_largest_remainder_for_paper_counts(self):
        assert _largest_remainder_counts(11832, (0.8, 0.1, 0.1)) == [9466, 1183, 1183]


class TestConfig:
    def test_fractions_must_sum_to_one(self):
        with pytest.raises(ConfigError):
            PipelineConfig(split_fractions=(0.5, 0.2, 0.2)).validate()

    def test_k_must_be_positive(self):
        with pytest.raises(ConfigError):
            PipelineConfig(k=0).validate()

    def test_from_file_rejects_unknown_keys(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text('{"corpus": "x.jsonl", "bogus": 1}', encoding="utf-8")
        with pytest.raises(ConfigError):
            PipelineConfig.from_file(path)

    def test_from_file_round_trip(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(
            json.dumps({"corpus": "x.jsonl", "k": 3, "split_fractions": [0.6, 0.2, 0.2]}),
            encoding="utf-8",
        )
        config = PipelineConfig.from_file(path)
        assert config.k == 3
        assert config.split_fractions == (0.6, 0.2, 0.2)


class TestArtifacts:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "a.jsonl"
        write_artifact(path, "widgets", [{"x": 1}, {"x": 2}])
        assert list(read_artifact(path, "widgets")) == [{"x": 1}, {"x": 2}]

    def test_kind_mismatch(self, tmp_path):
        path = tmp_path / "a.jsonl"
        write_artifact(path, "widgets", [])
        with pytest.raises(ArtifactError):
            list(read_artifact(path, "gadgets"))

    def test_schema_version_checked(self, tmp_path):
        path = tmp_path / "a.jsonl"
        path.write_text('{"artifact": "widgets", "schema_version": 999}\n', encoding="utf-8")
        with pytest.raises(ArtifactError):
            list(read_artifact(path, "widgets"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ArtifactError, match="MissingInput"):
            list(read_artifact(tmp_path / "nope.jsonl", "widgets"))


class TestCurateStage:
    def test_fixture_keeps_25_and_counts_drops(self, tmp_path):
        config = fixture_config(tmp_path)
        report = stage_curate(config)
        assert report["input_records"] == 50
        assert report["kept"] == 25
        drops = report["dropped"]
        assert drops["headline_prefix"] == 4
        assert drops["interrogative"] == 3
        assert drops["unmappable_label"] == 4
        assert drops["not_health_related"] == 8
        assert drops["too_short_claim"] == 2
        assert drops["too_long_claim"] == 2
        assert drops["short_explanation"] == 2
        assert sum(drops.values()) + report["kept"] == 50
        assert report["splits"] == {"train": 20, "validation": 3, "test": 2}
        audit = report["lexicon_audit"]
        assert audit["article_terms_mean"] > 3.0

    def test_missing_corpus_is_stage_error(self, tmp_path):
        config = fixture_config(tmp_path)
        config.corpus = str(tmp_path / "missing.jsonl")
        with pytest.raises(StageError) as err:
            stage_curate(config)
        assert err.value.reason == "MissingInput"


class TestStageWiring:
    def test_predict_without_rank_is_missing_input(self, tmp_path):
        config = fixture_config(tmp_path)
        stage_curate(config)
        with pytest.raises(StageError) as err:
            stage_predict(config)
        assert err.value.reason == "MissingInput"
        assert err.value.to_dict()["stage"] == "predict"

    def test_full_pipeline_with_stub_backends(self, tmp_path):
        config = fixture_config(tmp_path, annotations=str(_data_path("sample_annotations.csv")))
        results = run(config)
        assert list(results) == ["curate", "rank", "predict", "explain", "cohere", "report"]
        out = Path(config.out_dir)
        for name in (
            "corpus_curated.jsonl",
            "filter_audit.jsonl",
            "splits.jsonl",
            "rankings.jsonl",
            "predictions.jsonl",
            "explanations.jsonl",
            "report.json",
        ):
            assert (out / name).exists(), name
        report = json.loads((out / "report.json").read_text(encoding="utf-8"))
        assert report["n_records"] == 25
        assert {"lead3", "oracle"} <= set(report["explanations"]["rouge"])
        rouge = report["explanations"]["rouge"]
        assert rouge["oracle"]["rouge1_f"] > rouge["lead3"]["rouge1_f"]
        assert "gold" in report["coherence"]["coherence"]
        assert "human_agreement" in report["coherence"]
        assert report["classification"]["metrics"]["accuracy"] >= 0.0
        assert report["readability"]["n_texts"] == 25

    def test_rerun_is_byte_identical(self, tmp_path):
        config = fixture_config(tmp_path)
        run(config)
        out = Path(config.out_dir)
        first = {
            p.name: p.read_bytes() for p in sorted(out.iterdir()) if p.name != "run_meta.json"
        }
        shutil.rmtree(out)
        run(config)
        second = {
            p.name: p.read_bytes() for p in sorted(out.iterdir()) if p.name != "run_meta.json"
        }
        assert first == second

    def test_unknown_stage_rejected(self, tmp_path):
        config = fixture_config(tmp_path)
        with pytest.raises(ConfigError):
            run(config, stages=("fly",))
