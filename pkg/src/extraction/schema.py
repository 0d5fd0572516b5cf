"""
Output Schema: Pydantic models for every artifact the toolkit emits.

Exact polynomials are carried as strings in the polynomial text grammar;
numeric values are carried as decimal strings so no precision is lost in JSON.
"""

from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class ComplexValue(BaseModel):
    """A complex number written with a fixed number of significant digits."""
    re: str
    im: str

    @classmethod
    def from_number(cls, z, digits: int = 20) -> "ComplexValue":
        import mpmath as mp

        z = mp.mpmathify(z)
        return cls(re=mp.nstr(mp.re(z), digits), im=mp.nstr(mp.im(z), digits))

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def short(self, digits: int = 6) -> str:
        z = self.to_complex()
        re, im = f"{z.real:.{digits}g}", f"{abs(z.imag):.{digits}g}"
        if abs(z.imag) < 10 ** (-digits) * max(1.0, abs(z)):
            return re
        sign = "-" if z.imag < 0 else "+"
        return f"{re}{sign}{im}i"


class RunManifest(BaseModel):
    """Provenance embedded in every emitted artifact."""
    command: str = Field(description="CLI command or API route that produced the artifact.")
    arguments: Dict[str, Any] = Field(default_factory=dict, description="Parsed arguments.")
    precision: int = Field(description="Working precision in bits.")
    tool_version: str = Field(description="Toolkit version string.")
    input_hash: str = Field(default="", description="SHA-256 of the canonical argument payload.")
    started_at: datetime = Field(default_factory=datetime.utcnow, description="Start time (UTC).")
    elapsed_seconds: float = Field(default=0.0, description="Wall-clock time; excluded from payload hashing.")


class CheckResult(BaseModel):
    """One exact check inside a verification report."""
    label: str
    passed: bool
    detail: str = ""
    quotient: Optional[str] = Field(default=None, description="Exact quotient witnessing a divisibility.")


class VerificationReport(BaseModel):
    """Outcome of a family of exact checks (lemma verifications, Riley criterion, ...)."""
    name: str = Field(description="Which verification ran.")
    subject: str = Field(description="Knot, slope or index the checks refer to.")
    verified: bool = Field(description="True when every check passed.")
    checks: List[CheckResult] = Field(default_factory=list)
    data: Dict[str, Any] = Field(default_factory=dict, description="Extra exact data, e.g. degrees or units.")

    @classmethod
    def from_checks(cls, name: str, subject: str, checks: List[CheckResult], **data) -> "VerificationReport":
        return cls(name=name, subject=subject, verified=all(c.passed for c in checks), checks=checks, data=data)


class PolynomialReport(BaseModel):
    """An exact polynomial with its provenance."""
    name: str
    subject: str
    polynomial: str = Field(description="Canonical text form.")
    variables: List[str] = Field(default_factory=list)
    degrees: Dict[str, int] = Field(default_factory=dict)
    provenance: str = ""
    removed_factors: List[str] = Field(default_factory=list)
    manifest: Optional[RunManifest] = None


class SolutionPoint(BaseModel):
    """One numeric surgery representation: a row of a solution table."""
    index: int
    s: ComplexValue
    t: ComplexValue
    L: ComplexValue
    tau: ComplexValue
    acyclic: bool
    residual_phi: float = Field(description="|phi(s,t)| scaled by coefficient size.")
    residual_surgery: float = Field(description="|s^p L^q - 1|.")
    precision: int

    def to_flat_dict(self) -> dict:
        return {
            "index": self.index,
            "s": self.s.short(),
            "t": self.t.short(),
            "tau": self.tau.short(),
            "L": self.L.short(),
            "acyclic": self.acyclic,
            "residual_phi": f"{self.residual_phi:.3e}",
            "residual_surgery": f"{self.residual_surgery:.3e}",
        }


class FactorMatch(BaseModel):
    """A squarefree factor of the eliminant and the solutions it vanishes at."""
    factor: str
    multiplicity: int
    degree: int
    matched: List[int] = Field(default_factory=list, description="Indices of matched solution points.")


class AnnihilatorCertificate(BaseModel):
    """Monic integer polynomial annihilating every acyclic torsion value of a surgery."""
    subject: str
    slope: str
    continuation: List[int] = Field(description="(p', q') with p q' - q p' = 1.")
    annihilator: str = Field(description="Matched product, normalized.")
    leading_coefficient: str
    monic: bool
    verified: bool = Field(description="Monic over Z, divides the eliminant, vanishes at every acyclic tau.")
    eliminant_degree: int
    divides_eliminant: bool
    factors: List[FactorMatch] = Field(default_factory=list)
    removed_factors: List[str] = Field(default_factory=list)
    witnesses: List[SolutionPoint] = Field(default_factory=list)
    max_witness_residual: float = 0.0
    notes: List[str] = Field(default_factory=list)
    riley: str = Field(default="", description="phi(s,t) of the knot.")
    s_eliminant: str = Field(default="", description="S(s) after removing the listed factors.")
    manifest: Optional[RunManifest] = None


class PerronReport(BaseModel):
    polynomial: str
    is_perron: bool
    dominant_root: ComplexValue
    second_modulus: float
    bracket: Optional[List[int]] = Field(default=None, description="Integers n, n+1 with a sign change.")
    precision: int


class SeifertValue(BaseModel):
    """Torsion value of one admissible tuple."""
    k: List[int]
    tau: str
    acyclic: bool
    product_form_agrees: bool = True

    def to_flat_dict(self) -> dict:
        return {"k": " ".join(map(str, self.k)), "tau": self.tau, "acyclic": self.acyclic}


class SeifertCertificate(BaseModel):
    """Monic integer annihilator of a Seifert torsion value."""
    index: str
    k: List[int]
    tau: str
    annihilator: str
    degree: int
    residual: float
    combination: List[str] = Field(default_factory=list, description="Combination tree, leaves first.")
    manifest: Optional[RunManifest] = None


class SigmaReport(BaseModel):
    """Numerically expanded torsion polynomial with integer rounding."""
    subject: str
    sigma: str
    degree: int
    max_deviation: float
    values: List[SeifertValue] = Field(default_factory=list)
    manifest: Optional[RunManifest] = None


class SpliceWitness(BaseModel):
    L: ComplexValue
    M: ComplexValue
    residual: float


class SpliceReport(BaseModel):
    subject: str
    satisfied: bool
    eliminated: str = Field(description="Variable eliminated first.")
    eliminant_degree: int
    witnesses: List[SpliceWitness] = Field(default_factory=list)
    manifest: Optional[RunManifest] = None


class SolutionTable(BaseModel):
    """All surgery representations of one slope, in table order."""
    subject: str
    slope: str
    rows: List[SolutionPoint] = Field(default_factory=list)
    removed_factors: List[str] = Field(default_factory=list, description="Factors stripped from S(s).")
    manifest: Optional[RunManifest] = None


class SeifertTable(BaseModel):
    """Torsion values of a Seifert index, with certificates when requested."""
    index: str
    values: List[SeifertValue] = Field(default_factory=list)
    certificates: List[SeifertCertificate] = Field(default_factory=list)
    manifest: Optional[RunManifest] = None


class ReportBundle(BaseModel):
    """Several exact results produced by one command."""
    command: str
    subject: str
    verified: bool = Field(description="True when every contained report verified.")
    polynomials: List[PolynomialReport] = Field(default_factory=list)
    reports: List[VerificationReport] = Field(default_factory=list)
    perron: Optional[PerronReport] = None
    manifest: Optional[RunManifest] = None
