"""HTTP adapters exposing a model inference service as backend objects.

The service speaks JSON over HTTP/1.1 on four endpoints (/v1/embed,
/v1/nli, /v1/classify, /v1/summarize, plus /v1/health for capability
discovery). Each adapter below satisfies the corresponding in-process
backend protocol, so pipeline code cannot tell a served model from the
native stub. The base URL can come from configuration or from the
``HEALTHFC_BACKEND_URL`` environment variable.
"""

import os
from typing import Sequence

import httpx
import numpy as np

from .coherence import NliRelation, _BatchByLoop

ENV_BACKEND_URL = "HEALTHFC_BACKEND_URL"


class ServiceError(Exception):
    """Raised when the inference service rejects a request or is unreachable."""


def backend_url_from_env(default: str | None = None) -> str | None:
    return os.environ.get(ENV_BACKEND_URL, default)


class ServiceClient:
    """Thin JSON client shared by all endpoint adapters."""

    def __init__(self, base_url: str, client: httpx.Client | None = None, timeout: float = 30.0):
        self.base_url = base_url.rstrip("/")
        self._client = client or httpx.Client(timeout=timeout)

    def post(self, endpoint: str, payload: dict) -> dict:
        try:
            response = self._client.post(self.base_url + endpoint, json=payload)
        except httpx.HTTPError as e:
            raise ServiceError(f"request to {endpoint} failed: {e}") from e
        if response.status_code != 200:
            raise ServiceError(
                f"{endpoint} returned {response.status_code}: {response.text[:200]}"
            )
        return response.json()

    def health(self) -> dict:
        try:
            response = self._client.get(self.base_url + "/v1/health")
        except httpx.HTTPError as e:
            raise ServiceError(f"health check failed: {e}") from e
        if response.status_code != 200:
            raise ServiceError(f"health check returned {response.status_code}")
        return response.json()


class HttpEmbeddingBackend:
    def __init__(self, service: ServiceClient):
        self.service = service

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        data = self.service.post("/v1/embed", {"texts": list(texts)})
        vectors = np.asarray(data["vectors"], dtype=float)
        if vectors.shape[0] != len(texts):
            raise ServiceError("embed response length mismatch")
        return vectors


class HttpNliBackend(_BatchByLoop):
    def __init__(self, service: ServiceClient):
        self.service = service

    def relate(self, premise: str, hypothesis: str) -> NliRelation:
        return self.relate_many([(premise, hypothesis)])[0]

    def relate_many(self, pairs: Sequence[tuple[str, str]]) -> list[NliRelation]:
        payload = {"pairs": [{"premise": p, "hypothesis": h} for p, h in pairs]}
        data = self.service.post("/v1/nli", payload)
        relations = data["relations"]
        if len(relations) != len(pairs):
            raise ServiceError("nli response length mismatch")
        return [NliRelation(r) for r in relations]


class HttpClassifierBackend:
    def __init__(self, service: ServiceClient):
        self.service = service

    def predict(self, claim: str, evidence: Sequence[str]) -> np.ndarray:
        payload = {"items": [{"claim": claim, "evidence": list(evidence)}]}
        data = self.service.post("/v1/classify", payload)
        probs = np.asarray(data["probs"], dtype=float)
        if probs.shape[0] != 1:
            raise ServiceError("classify response length mismatch")
        return probs[0]


class HttpSummarizerBackend:
    def __init__(self, service: ServiceClient):
        self.service = service

    def summarize(self, claim: str, article_sentences: Sequence[str]) -> list[str]:
        payload = {"items": [{"claim": claim, "sentences": list(article_sentences)}]}
        data = self.service.post("/v1/summarize", payload)
        summaries = data["summaries"]
        if len(summaries) != 1:
            raise ServiceError("summarize response length mismatch")
        return list(summaries[0])
