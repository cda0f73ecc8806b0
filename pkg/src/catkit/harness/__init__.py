"""Instance generation and theorem suites."""
from .generate import GenBounds, generate_precategories
from .suites import (SUITES, TheoremReport, check_precomposition, check_univalence_characterization,
                     run_theorem_suite)

__all__ = ["GenBounds", "generate_precategories", "TheoremReport", "check_precomposition",
           "check_univalence_characterization", "run_theorem_suite", "SUITES"]
