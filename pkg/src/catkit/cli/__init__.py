"""DSL front end, exporters and the ``catkit`` command."""
from .dsl import Diagnostic, SourceFile, export_dsl, parse_dsl, tokenize
from .export import export_dot, export_json, parse_json
from .main import main, run_command

__all__ = ["Diagnostic", "SourceFile", "export_dsl", "parse_dsl", "tokenize", "export_dot", "export_json",
           "parse_json", "main", "run_command"]
