"""
Entry point for `python -m uml2xml.api`.
"""

import os

import uvicorn

from .app import create_app

if __name__ == "__main__":
    app = create_app()
    uvicorn.run(
        app,
        host=os.getenv("UML2XML_HOST", "127.0.0.1"),
        port=int(os.getenv("UML2XML_PORT", "8000")),
        log_level="info",
        access_log=True,
    )
