"""
Tracing setup for the simulator.

Spans go to an OTLP collector when ``OTEL_EXPORTER_OTLP_ENDPOINT`` is set and to
stderr when ``SECRECY_SIM_TRACE_CONSOLE`` is on. With neither, spans are recorded
by the SDK and dropped. ``OTEL_SDK_DISABLED=true`` leaves the no-op API provider in place.
"""

import os
import sys

from opentelemetry import trace
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor, ConsoleSpanExporter, SimpleSpanProcessor

SERVICE_NAME = "secrecy-coverage-sim"

_configured = False


def _env_flag(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).lower() in {"1", "true", "yes", "on"}


def configure() -> None:
    global _configured
    if _configured:
        return
    _configured = True
    if _env_flag("OTEL_SDK_DISABLED"):
        return

    provider = TracerProvider(resource=Resource.create({"service.name": SERVICE_NAME}))
    if os.getenv("OTEL_EXPORTER_OTLP_ENDPOINT"):
        try:
            from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter

            provider.add_span_processor(BatchSpanProcessor(OTLPSpanExporter()))
        except Exception as exc:
            sys.stderr.write(f"telemetry: OTLP exporter unavailable: {exc}\n")
    if _env_flag("SECRECY_SIM_TRACE_CONSOLE"):
        provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter(out=sys.stderr)))
    trace.set_tracer_provider(provider)


def get_tracer(name: str) -> trace.Tracer:
    return trace.get_tracer(name)
