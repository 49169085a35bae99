"""
Conversion pipeline: read codification, validate the diagram, generate the
document, validate the document against the embedded schema.
"""

import time
from enum import Enum
from typing import Dict, List, Optional

from loguru import logger
from pydantic import BaseModel, Field

from .codec import ParseResult, parse_codification
from .diagnostics import Code, Diagnostic, has_errors
from .dom import XmlNode, parse_xml, serialize
from .errors import CodificationError, Uml2XmlError
from .generator import generate_document
from .models import Diagram
from .schema import embedded_content_model, validate_document
from .utils.config import ConverterConfig, load_config_from_env, load_config_from_file
from .utils.metrics import StageMetrics
from .validator import validate_diagram


class Stage(str, Enum):
    """Pipeline stages in execution order."""
    READ = "read"
    VALIDATE_DIAGRAM = "validate_diagram"
    GENERATE = "generate"
    VALIDATE_XML = "validate_xml"


class ConversionResult(BaseModel):
    """Outcome of a full conversion run."""

    diagram: Optional[Diagram] = None
    document: Optional[XmlNode] = None
    xml: Optional[str] = None
    diagnostics: List[Diagnostic] = Field(default_factory=list)
    failed_stage: Optional[Stage] = None

    @property
    def ok(self) -> bool:
        return self.failed_stage is None

    @property
    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def warnings(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if not d.is_error]


class ConversionPipeline:
    """
    Codification to XML conversion with per-stage diagnostics.

    Each stage is usable on its own; `convert` chains them and stops at
    the first stage that reports an error.
    """

    @classmethod
    def create(cls, env_file: str = ".env") -> "ConversionPipeline":
        """
        Create a pipeline configured from environment variables.

        Args:
            env_file: Path to the environment file. Defaults to ".env"
        """
        return cls(load_config_from_env(env_file))

    @classmethod
    def create_from_config(cls, config_file: str) -> "ConversionPipeline":
        """
        Create a pipeline configured from a YAML file.

        Args:
            config_file: Path to the YAML configuration file
        """
        return cls(load_config_from_file(config_file))

    def __init__(self, config: Optional[ConverterConfig] = None):
        self.config = config or ConverterConfig()
        self.metrics = StageMetrics()

    def _timed(self, stage: Stage, started: float, diagnostics: List[Diagnostic], error: Optional[str] = None) -> None:
        latency = time.perf_counter() - started
        success = error is None and not has_errors(diagnostics)
        self.metrics.record_stage(stage.value, latency, success=success, diagnostics=len(diagnostics), error=error)

    # -- stages ---------------------------------------------------------

    def read_uml(self, text: str) -> ParseResult:
        """
        Decode codification text using the configured strictness.

        Raises:
            CodificationError: strict mode and the text has errors.
        """
        started = time.perf_counter()
        try:
            result = parse_codification(text, strict=self.config.strict)
        except CodificationError as e:
            self._timed(Stage.READ, started, e.diagnostics, error=e.message)
            raise
        self._timed(Stage.READ, started, result.diagnostics)
        logger.info(f"Read {len(result.diagram.classes)} class(es) with {len(result.diagnostics)} diagnostic(s)")
        return result

    def validate_class_diagram(self, diagram: Diagram) -> List[Diagnostic]:
        started = time.perf_counter()
        diagnostics = validate_diagram(diagram)
        self._timed(Stage.VALIDATE_DIAGRAM, started, diagnostics)
        return diagnostics

    def generate_xml(self, diagram: Diagram) -> XmlNode:
        started = time.perf_counter()
        document = generate_document(diagram)
        self._timed(Stage.GENERATE, started, [])
        return document

    def validate_xml_document(self, document: XmlNode) -> List[Diagnostic]:
        """Validate a tree against the embedded schema."""
        started = time.perf_counter()
        diagnostics = validate_document(document, embedded_content_model())
        self._timed(Stage.VALIDATE_XML, started, diagnostics)
        return diagnostics

    def check_xml(self, text: str) -> List[Diagnostic]:
        """
        Parse XML text and validate it against the embedded schema.

        Raises:
            XmlSyntaxError: the text is not well-formed or uses unsupported XML.
        """
        return self.validate_xml_document(parse_xml(text))

    def serialize(self, document: XmlNode) -> str:
        return serialize(document, with_declaration=self.config.xml_declaration)

    # -- orchestration --------------------------------------------------

    def convert(self, text: str) -> ConversionResult:
        """
        Run every stage in order. Never raises for bad input; the result
        names the stage that failed.
        """
        result = ConversionResult()

        try:
            parsed = self.read_uml(text)
        except CodificationError as e:
            logger.error(f"Reading the codification failed: {e}")
            result.diagnostics.extend(e.diagnostics)
            result.failed_stage = Stage.READ
            return result
        result.diagnostics.extend(parsed.diagnostics)
        if not parsed.ok:
            logger.error(f"Reading the codification failed with {len(parsed.errors)} error(s)")
            result.failed_stage = Stage.READ
            return result
        result.diagram = parsed.diagram

        diagram_diagnostics = self.validate_class_diagram(parsed.diagram)
        result.diagnostics.extend(diagram_diagnostics)
        if has_errors(diagram_diagnostics):
            logger.error("Class diagram validation failed")
            result.failed_stage = Stage.VALIDATE_DIAGRAM
            return result

        try:
            document = self.generate_xml(parsed.diagram)
            xml = self.serialize(document)
        except (Uml2XmlError, ValueError) as e:
            logger.error(f"Document generation failed: {e}")
            result.diagnostics.append(Diagnostic.error(Code.SHAPE_ERROR, f"document generation failed: {e}"))
            result.failed_stage = Stage.GENERATE
            return result

        # validate what a reader of the file will see, not only the tree
        try:
            reread = parse_xml(xml)
        except Uml2XmlError as e:
            logger.error(f"Generated document does not re-parse: {e}")
            result.diagnostics.append(e.to_diagnostic())
            result.failed_stage = Stage.VALIDATE_XML
            return result
        xml_diagnostics = self.validate_xml_document(reread)
        result.diagnostics.extend(xml_diagnostics)
        if has_errors(xml_diagnostics) or reread != document:
            if not has_errors(xml_diagnostics):
                result.diagnostics.append(Diagnostic.error(
                    Code.SHAPE_ERROR, "generated document does not re-parse to the same tree"
                ))
            logger.error("Generated document failed self-validation")
            result.failed_stage = Stage.VALIDATE_XML
            return result

        result.document = document
        result.xml = xml
        logger.info(f"Converted {len(parsed.diagram.classes)} class(es) to XML")
        return result

    def get_metrics_summary(self) -> Dict[str, Dict]:
        """Per-stage run counts, failures and mean latency."""
        return self.metrics.get_stage_breakdown()
