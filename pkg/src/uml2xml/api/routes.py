"""
API routes for the converter.
"""

from typing import Any, Dict, List, Optional

from fastapi import APIRouter, HTTPException
from fastapi.responses import Response
from loguru import logger
from pydantic import BaseModel

from ..diagnostics import Diagnostic, has_errors
from ..errors import CodificationError, XmlSyntaxError
from ..pipeline import ConversionPipeline, Stage
from ..schema import embedded_schema_text

router = APIRouter()

_pipeline: Optional[ConversionPipeline] = None


class CodificationRequest(BaseModel):
    """Codification text to convert or validate."""
    codification: str
    lenient: bool = False


class XmlRequest(BaseModel):
    xml: str


class ConvertResponse(BaseModel):
    xml: str
    diagnostics: List[Dict[str, Any]]


class ValidationResponse(BaseModel):
    valid: bool
    diagnostics: List[Dict[str, Any]]


def get_pipeline() -> ConversionPipeline:
    """Get or create the global pipeline instance."""
    global _pipeline

    if _pipeline is None:
        _pipeline = ConversionPipeline.create()

    return _pipeline


def use_pipeline(pipeline: ConversionPipeline) -> None:
    """Serve every following request with `pipeline`."""
    global _pipeline
    _pipeline = pipeline


def _pipeline_for(lenient: bool) -> ConversionPipeline:
    pipeline = get_pipeline()
    if lenient and pipeline.config.strict:
        lenient_pipeline = ConversionPipeline(pipeline.config.model_copy(update={"strict": False}))
        lenient_pipeline.metrics = pipeline.metrics
        return lenient_pipeline
    return pipeline


def _records(diagnostics: List[Diagnostic]) -> List[Dict[str, Any]]:
    return [d.to_record() for d in diagnostics]


@router.post("/convert", response_model=ConvertResponse)
async def convert(request: CodificationRequest):
    """
    Run the full pipeline.

    400 when the codification does not parse, 422 when the diagram breaks a
    rule, 500 when the generated document fails its own schema.
    """
    result = _pipeline_for(request.lenient).convert(request.codification)
    if result.failed_stage is None:
        return ConvertResponse(xml=result.xml, diagnostics=_records(result.diagnostics))

    status_code = {Stage.READ: 400, Stage.VALIDATE_DIAGRAM: 422}.get(result.failed_stage, 500)
    logger.error(f"Conversion failed at stage {result.failed_stage.value}")
    raise HTTPException(
        status_code=status_code,
        detail={"stage": result.failed_stage.value, "diagnostics": _records(result.diagnostics)},
    )


@router.post("/validate", response_model=ValidationResponse)
async def validate(request: CodificationRequest):
    """Parse and validate a codification without generating XML."""
    pipeline = _pipeline_for(request.lenient)
    try:
        parsed = pipeline.read_uml(request.codification)
    except CodificationError as e:
        return ValidationResponse(valid=False, diagnostics=_records(e.diagnostics))

    diagnostics = list(parsed.diagnostics)
    if parsed.ok:
        diagnostics += pipeline.validate_class_diagram(parsed.diagram)
    return ValidationResponse(valid=not has_errors(diagnostics), diagnostics=_records(diagnostics))


@router.post("/check-xml", response_model=ValidationResponse)
async def check_xml(request: XmlRequest):
    """Validate an XML document against the embedded schema."""
    try:
        diagnostics = get_pipeline().check_xml(request.xml)
    except XmlSyntaxError as e:
        return ValidationResponse(valid=False, diagnostics=_records([e.to_diagnostic()]))
    return ValidationResponse(valid=not has_errors(diagnostics), diagnostics=_records(diagnostics))


@router.get("/schema")
async def schema():
    """The embedded schema."""
    try:
        return Response(content=embedded_schema_text(), media_type="application/xml")
    except Exception as e:
        logger.error(f"Schema error: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.get("/metrics")
async def metrics():
    """Per-stage counts, failures and mean latency since startup."""
    return get_pipeline().get_metrics_summary()
