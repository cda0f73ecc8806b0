"""Validation reports: law violations as data."""
from __future__ import annotations

from dataclasses import dataclass, field

# law names used in reports and diagnostics
RANGE = "range"
SHAPE = "shape"
UNIT_LEFT = "unit-left"
UNIT_RIGHT = "unit-right"
ASSOC = "assoc"
J_REFL = "J-refl"
J_FUNCTOR = "J-functor"
J_INVERSE = "J-inverse"
J_ISO = "J-iso"
GPD_UNIT = "groupoid-unit"
GPD_ASSOC = "groupoid-assoc"
GPD_INVERSE = "groupoid-inverse"
F_IDENTITY = "functor-identity"
F_COMPOSITION = "functor-composition"
F_PATH = "functor-paths"
F_IDTOISO = "idtoiso-preservation"
NATURALITY = "naturality"
TRIANGLE_1 = "triangle-1"
TRIANGLE_2 = "triangle-2"
PSH_IDENTITY = "presheaf-identity"
PSH_COMPOSITION = "presheaf-composition"


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        s = f"{self.law} at {self.witness}"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass
class ValidationReport:
    subject: str = ""
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    @property
    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def by_law(self, law: str) -> list[Violation]:
        return [v for v in self.violations if v.law == law]

    def add(self, law, witness, detail=""):
        self.violations.append(Violation(law, tuple(witness), detail))

    def extend(self, other: ValidationReport, prefix: str = ""):
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law if prefix else v.law, v.witness, v.detail))

    def summary(self) -> str:
        head = f"{self.subject}: " if self.subject else ""
        if self.ok:
            return head + "valid"
        lines = [head + f"{len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)
