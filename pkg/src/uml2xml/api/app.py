"""
FastAPI application factory.
"""

from typing import Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from loguru import logger

from .. import __version__
from ..pipeline import ConversionPipeline
from ..schema import embedded_content_model
from . import routes

SERVICE = "uml2xml"


def create_app(pipeline: Optional[ConversionPipeline] = None) -> FastAPI:
    """
    Build the HTTP service.

    Args:
        pipeline: Pipeline behind every route. When omitted, one is created
            from the environment on the first request.
    """
    if pipeline is not None:
        routes.use_pipeline(pipeline)

    app = FastAPI(
        title="UML2XML API",
        description="Convert codified UML class diagrams into schema-validated XML",
        version=__version__,
        docs_url="/docs",
        redoc_url="/redoc",
    )

    # read-only conversions; no cookies are involved
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["Content-Type"],
    )

    app.include_router(routes.router, prefix="/api/v1")

    @app.get("/health")
    async def health_check():
        return {"status": "healthy", "service": SERVICE, "version": __version__}

    @app.on_event("startup")
    async def compile_embedded_schema():
        """Compile the embedded schema before the first request needs it."""
        model = embedded_content_model()
        logger.info(f"{SERVICE} {__version__} ready; schema root <{model.root}>, {len(model.elements)} element(s)")

    @app.on_event("shutdown")
    async def report_metrics():
        logger.info(f"{SERVICE} shutting down; stage metrics: {routes.get_pipeline().get_metrics_summary()}")

    return app
