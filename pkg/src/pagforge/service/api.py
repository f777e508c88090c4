"""HTTP API for the adjudication workflow, versioned under /api/v1."""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from pagforge.chem import parse_smiles
from pagforge.depict import depict_svg
from pagforge.service.network import DEFAULT_THRESHOLD, network_from_store
from pagforge.service.store import (
    AdjudicationStore,
    InvalidDecisionError,
    UnknownScaffoldError,
)


class LabelRequest(BaseModel):
    scaffold_id: str
    decision: str
    annotator: str = "default"
    note: str = ""


def create_app(store: AdjudicationStore,
               frontend_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="pagforge adjudication", version="1")

    @app.get("/api/v1/candidates")
    def candidates(page: int = Query(1, ge=1),
                   page_size: int = Query(50, ge=1, le=500)):
        ordered = sorted(store.candidates.values(), key=lambda c: c.id)
        start = (page - 1) * page_size
        items = [c.to_dict() for c in ordered[start : start + page_size]]
        return {
            "total": len(ordered),
            "page": page,
            "page_size": page_size,
            "items": items,
        }

    @app.get("/api/v1/scaffolds/{scaffold_id}")
    def scaffold(scaffold_id: str):
        s = store.scaffolds.get(scaffold_id)
        if s is None:
            raise HTTPException(status_code=404, detail="unknown scaffold")
        decisions = store.effective_labels()
        return {
            **s.to_dict(),
            "decision": decisions.get(scaffold_id),
            "score": store.scaffold_score(scaffold_id),
            "depiction": f"/api/v1/depict/{scaffold_id}",
            "parents": [
                store.candidates[p].to_dict()
                for p in s.parent_ids if p in store.candidates
            ],
        }

    @app.get("/api/v1/network")
    def network(threshold: float = Query(DEFAULT_THRESHOLD, ge=0.0, le=1.0)):
        return network_from_store(store, threshold=threshold).to_dict()

    @app.post("/api/v1/labels")
    def submit_label(req: LabelRequest):
        try:
            record = store.submit_label(
                req.scaffold_id, req.decision,
                annotator=req.annotator, note=req.note)
        except UnknownScaffoldError:
            raise HTTPException(status_code=404, detail="unknown scaffold")
        except InvalidDecisionError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {
            "stored": {
                "scaffold_id": record.scaffold_id,
                "decision": record.decision,
                "annotator": record.annotator,
                "timestamp": record.timestamp,
                "note": record.note,
            },
            "counts": store.decision_counts(),
        }

    @app.get("/api/v1/export")
    def export():
        try:
            text = store.export_text()
        except ValueError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return Response(content=text, media_type="application/json")

    @app.get("/api/v1/depict/{entity_id}")
    def depict(entity_id: str):
        if entity_id in store.scaffolds:
            smiles = store.scaffolds[entity_id].smiles
        elif entity_id in store.candidates:
            smiles = store.candidates[entity_id].smiles
        else:
            raise HTTPException(status_code=404, detail="unknown id")
        svg = depict_svg(parse_smiles(smiles))
        return Response(content=svg, media_type="image/svg+xml")

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True),
                  name="frontend")
    return app
