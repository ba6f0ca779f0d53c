"""HTTP API: JSON over HTTP/1.1 on four inference endpoints plus health.

Response arrays always align positionally with request arrays. Error
codes: 400 for bodies that are not valid JSON, 422 for valid JSON that
violates an endpoint schema, 503 while models are loading.
"""

import argparse

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .registry import ModelRegistry, ServiceConfig

API_VERSION = "v1"


class EmbedRequest(BaseModel):
    texts: list[str]


class EmbedResponse(BaseModel):
    vectors: list[list[float]]
    dim: int


class NliPair(BaseModel):
    premise: str
    hypothesis: str


class NliRequest(BaseModel):
    pairs: list[NliPair]


class NliResponse(BaseModel):
    relations: list[str]
    probs: list[list[float]] = Field(description="per pair, over the model's classes")


class ClassifyItem(BaseModel):
    claim: str
    evidence: list[str] = Field(default_factory=list)


class ClassifyRequest(BaseModel):
    items: list[ClassifyItem]


class ClassifyResponse(BaseModel):
    probs: list[list[float]]
    labels: list[str]


class SummarizeItem(BaseModel):
    claim: str
    sentences: list[str]


class SummarizeRequest(BaseModel):
    items: list[SummarizeItem]


class SummarizeResponse(BaseModel):
    summaries: list[list[str]]


def create_app(registry: ModelRegistry | None = None) -> FastAPI:
    registry = registry or ModelRegistry()
    app = FastAPI(title="healthfc-service", version="0.1.0")
    app.state.registry = registry

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        # Unparseable JSON is a malformed request (400); parseable JSON
        # with wrong shape is a schema violation (422).
        malformed = any(e.get("type") == "json_invalid" for e in exc.errors())
        status = 400 if malformed else 422
        return JSONResponse(
            status_code=status,
            content={"error": "malformed json" if malformed else "schema violation",
                     "detail": exc.errors()},
        )

    def head_or_503(name: str):
        if not registry.ready:
            return None, JSONResponse(status_code=503, content={"error": "models loading"})
        head = getattr(registry, name)
        if head is None:
            return None, JSONResponse(
                status_code=503, content={"error": f"{name} head not hosted"}
            )
        return head, None

    @app.get(f"/{API_VERSION}/health")
    async def health():
        if not registry.ready:
            return JSONResponse(status_code=503, content={"status": "loading"})
        return {"status": "ok", "models": registry.model_info(), "version": app.version}

    @app.post(f"/{API_VERSION}/embed", response_model=EmbedResponse)
    async def embed(body: EmbedRequest):
        head, error = head_or_503("embedder")
        if error:
            return error
        return EmbedResponse(vectors=head.embed(body.texts), dim=head.dim)

    @app.post(f"/{API_VERSION}/nli", response_model=NliResponse)
    async def nli(body: NliRequest):
        head, error = head_or_503("nli")
        if error:
            return error
        probs = head.predict([(p.premise, p.hypothesis) for p in body.pairs])
        label_map = registry.config.nli_label_map
        relations = [
            label_map[head.class_names[max(range(len(row)), key=row.__getitem__)]]
            for row in probs
        ]
        return NliResponse(relations=relations, probs=probs)

    @app.post(f"/{API_VERSION}/classify", response_model=ClassifyResponse)
    async def classify(body: ClassifyRequest):
        head, error = head_or_503("classifier")
        if error:
            return error
        probs = head.predict([(item.claim, item.evidence) for item in body.items])
        labels = [
            head.class_names[max(range(len(row)), key=row.__getitem__)] for row in probs
        ]
        return ClassifyResponse(probs=probs, labels=labels)

    @app.post(f"/{API_VERSION}/summarize", response_model=SummarizeResponse)
    async def summarize(body: SummarizeRequest):
        head, error = head_or_503("summarizer")
        if error:
            return error
        return SummarizeResponse(
            summaries=head.summarize([(item.claim, item.sentences) for item in body.items])
        )

    return app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="healthfc-service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8008)
    parser.add_argument("--config", default=None, help="JSON file of head settings")
    args = parser.parse_args(argv)
    config = ServiceConfig.from_file(args.config) if args.config else ServiceConfig()
    app = create_app(ModelRegistry(config))

    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
