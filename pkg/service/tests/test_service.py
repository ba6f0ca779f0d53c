import random

import pytest
from fastapi.testclient import TestClient

from healthfc_service import ModelRegistry, ServiceConfig, create_app


@pytest.fixture(scope="module")
def client() -> TestClient:
    return TestClient(create_app())


WORDS = ["flu", "vaccine", "virus", "not", "safe", "hospital", "officials", "confirmed", "study"]


def sentence(rng: random.Random) -> str:
    return " ".join(rng.choices(WORDS, k=rng.randint(1, 8)))


class TestSchemas:
    def test_embed_round_trip(self, client):
        r = client.post("/v1/embed", json={"texts": ["a claim", "more text"]})
        assert r.status_code == 200
        body = r.json()
        assert set(body) == {"vectors", "dim"}
        assert len(body["vectors"]) == 2
        assert all(len(v) == body["dim"] for v in body["vectors"])

    def test_nli_round_trip(self, client):
        pairs = [{"premise": "the flu is mild", "hypothesis": "the flu is mild"},
                 {"premise": "apples", "hypothesis": "oranges everywhere"}]
        r = client.post("/v1/nli", json={"pairs": pairs})
        assert r.status_code == 200
        body = r.json()
        assert set(body) == {"relations", "probs"}
        assert len(body["relations"]) == len(pairs)
        assert all(rel in {"entails", "contradicts", "neutral"} for rel in body["relations"])
        for row in body["probs"]:
            assert sum(row) == pytest.approx(1.0, abs=1e-6)
            assert all(p >= 0 for p in row)

    def test_classify_round_trip(self, client):
        items = [{"claim": "officials confirmed the data", "evidence": ["a report"]},
                 {"claim": "an unverified rumor", "evidence": []}]
        r = client.post("/v1/classify", json={"items": items})
        assert r.status_code == 200
        body = r.json()
        assert len(body["probs"]) == len(items) == len(body["labels"])
        for row, label in zip(body["probs"], body["labels"]):
            assert len(row) == 4
            assert sum(row) == pytest.approx(1.0, abs=1e-6)
            assert label in {"true", "false", "mixture", "unproven"}

    def test_summarize_round_trip(self, client):
        items = [{"claim": "c1", "sentences": ["s1", "s2", "s3", "s4"]},
                 {"claim": "c2", "sentences": ["only one"]}]
        r = client.post("/v1/summarize", json={"items": items})
        assert r.status_code == 200
        body = r.json()
        assert body["summaries"] == [["s1", "s2", "s3"], ["only one"]]

    def test_health_reports_model_identifiers(self, client):
        body = client.get("/v1/health").json()
        assert body["status"] == "ok"
        assert set(body["models"]) == {"embed", "nli", "classify", "summarize"}
        assert all("id" in m for m in body["models"].values())


class TestBatchSingletonEquivalence:
    def test_20_random_batches_across_all_endpoints(self, client):
        rng = random.Random(17)
        for _ in range(20):
            texts = [sentence(rng) for _ in range(rng.randint(1, 6))]
            batch = client.post("/v1/embed", json={"texts": texts}).json()["vectors"]
            singles = [
                client.post("/v1/embed", json={"texts": [t]}).json()["vectors"][0]
                for t in texts
            ]
            assert batch == singles

            pairs = [
                {"premise": sentence(rng), "hypothesis": sentence(rng)}
                for _ in range(rng.randint(1, 5))
            ]
            batch = client.post("/v1/nli", json={"pairs": pairs}).json()
            for i, pair in enumerate(pairs):
                single = client.post("/v1/nli", json={"pairs": [pair]}).json()
                assert batch["relations"][i] == single["relations"][0]
                assert batch["probs"][i] == single["probs"][0]

            items = [
                {"claim": sentence(rng), "evidence": [sentence(rng)]}
                for _ in range(rng.randint(1, 4))
            ]
            batch = client.post("/v1/classify", json={"items": items}).json()
            for i, item in enumerate(items):
                single = client.post("/v1/classify", json={"items": [item]}).json()
                assert batch["probs"][i] == single["probs"][0]
                assert batch["labels"][i] == single["labels"][0]

            items = [
                {"claim": sentence(rng), "sentences": [sentence(rng) for _ in range(3)]}
                for _ in range(rng.randint(1, 4))
            ]
            batch = client.post("/v1/summarize", json={"items": items}).json()
            for i, item in enumerate(items):
                single = client.post("/v1/summarize", json={"items": [item]}).json()
                assert batch["summaries"][i] == single["summaries"][0]


class TestOrderingAndDeterminism:
    def test_response_order_matches_request_order(self, client):
        texts = [f"text number {i}" for i in range(5)]
        fwd = client.post("/v1/embed", json={"texts": texts}).json()["vectors"]
        rev = client.post("/v1/embed", json={"texts": texts[::-1]}).json()["vectors"]
        assert fwd == rev[::-1]

    def test_identical_inputs_identical_outputs(self, client):
        r = client.post("/v1/embed", json={"texts": ["a", "a"]}).json()
        assert r["vectors"][0] == r["vectors"][1]

    def test_identity_nli_pair_entails(self, client):
        r = client.post(
            "/v1/nli",
            json={"pairs": [{"premise": "the vaccine works", "hypothesis": "the vaccine works"}]},
        )
        assert r.json()["relations"] == ["entails"]

    def test_negation_asymmetry_contradicts(self, client):
        r = client.post(
            "/v1/nli",
            json={"pairs": [{"premise": "the vaccine does not work",
                             "hypothesis": "the vaccine does work"}]},
        )
        assert r.json()["relations"] == ["contradicts"]


class TestErrors:
    def test_malformed_json_is_400(self, client):
        r = client.post(
            "/v1/embed", content="{oops", headers={"content-type": "application/json"}
        )
        assert r.status_code == 400
        assert "error" in r.json()

    def test_schema_violation_is_422(self, client):
        assert client.post("/v1/embed", json={"texts": "not a list"}).status_code == 422
        assert client.post("/v1/nli", json={"pairs": [{"premise": "x"}]}).status_code == 422
        assert client.post("/v1/classify", json={}).status_code == 422

    def test_503_while_loading_then_recovers(self):
        registry = ModelRegistry(defer_load=True)
        client = TestClient(create_app(registry))
        assert client.post("/v1/embed", json={"texts": ["x"]}).status_code == 503
        assert client.get("/v1/health").status_code == 503
        registry.load()
        assert client.post("/v1/embed", json={"texts": ["x"]}).status_code == 200
        assert client.get("/v1/health").status_code == 200

    def test_unhosted_head_is_503(self):
        registry = ModelRegistry(ServiceConfig(heads=("nli",)))
        client = TestClient(create_app(registry))
        assert client.post("/v1/embed", json={"texts": ["x"]}).status_code == 503
        assert client.post(
            "/v1/nli", json={"pairs": [{"premise": "a", "hypothesis": "a"}]}
        ).status_code == 200
        assert set(client.get("/v1/health").json()["models"]) == {"nli"}


class TestConfig:
    def test_config_file_controls_heads(self, tmp_path):
        path = tmp_path / "svc.json"
        path.write_text('{"embed_dim": 64, "summary_sentences": 2}', encoding="utf-8")
        config = ServiceConfig.from_file(path)
        client = TestClient(create_app(ModelRegistry(config)))
        body = client.post("/v1/embed", json={"texts": ["x"]}).json()
        assert body["dim"] == 64
        summaries = client.post(
            "/v1/summarize", json={"items": [{"claim": "c", "sentences": ["a", "b", "c"]}]}
        ).json()["summaries"]
        assert summaries == [["a", "b"]]

    def test_bad_label_map_rejected(self):
        config = ServiceConfig(nli_label_map={"entailment": "yes"})
        with pytest.raises(ValueError):
            ModelRegistry(config)
