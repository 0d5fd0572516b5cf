from fastapi import FastAPI, HTTPException, Query
from typing import List
import uvicorn

from config.settings import DEFAULT_PRECISION, MIN_PRECISION, VERSION
from src.apoly.apoly import a_polynomial, hoste_shanahan
from src.errors import InternalConsistencyError, ParseError, PreconditionError, ToolkitError, VerificationError
from src.extraction.schema import (
    AnnihilatorCertificate,
    PolynomialReport,
    SeifertValue,
    SigmaReport,
    SolutionTable,
    SpliceReport,
)
from src.representations.riley import parse_knot, riley_polynomial
from src.seifert.index import SeifertIndex, admissible_tuples
from src.seifert.torsion import brieskorn_sigma, seifert_torsion_values
from src.surgery.annihilator import torsion_annihilator
from src.surgery.slope import SurgerySlope
from src.surgery.splice import splice_condition_check
from src.surgery.system import solution_points, solve_representations, surgery_system

from main import parse_orders, polynomial_report, twist_parameter

app = FastAPI(
    title="Torsion Toolkit API",
    description="Read-only access to Riley polynomials, A-polynomials, surgery torsion and Seifert torsion.",
    version=VERSION,
)


# ──────────────────────────────────────────────────────────────
# Error mapping
# ──────────────────────────────────────────────────────────────
def _run(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ParseError, PreconditionError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except InternalConsistencyError as e:
        raise HTTPException(status_code=500, detail=str(e))
    except VerificationError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except ToolkitError as e:
        raise HTTPException(status_code=500, detail=str(e))


Precision = Query(DEFAULT_PRECISION, ge=MIN_PRECISION, le=4096, description="Working precision in bits")


# ──────────────────────────────────────────────────────────────
# Endpoints
# ──────────────────────────────────────────────────────────────
@app.get("/")
async def root():
    return {
        "message": "Torsion Toolkit API",
        "docs": "/docs",
        "endpoints": ["/riley", "/apoly", "/surgery", "/seifert", "/splice"],
    }


@app.get("/riley", response_model=PolynomialReport)
def riley(knot: str = Query(..., description="J(2,2m) or a catalog name")):
    """Riley polynomial phi(s, t)."""
    family = _run(parse_knot, knot)
    return polynomial_report("riley", family.label, _run(riley_polynomial, family), "word evaluation")


@app.get("/apoly", response_model=PolynomialReport)
def apoly(
    knot: str = Query(..., description="J(2,2m), a catalog name, or unknot"),
    recursion: bool = Query(False, description="Use the three-term recursion"),
):
    m = _run(twist_parameter, knot, allow_unknot=True)
    a = _run(hoste_shanahan if recursion else a_polynomial, m)
    return polynomial_report("A-polynomial", f"J(2,{2 * m})", a.poly, a.provenance, a.removed)


@app.get("/surgery")
def surgery(
    knot: str = Query(...),
    slope: str = Query(..., description="p/q"),
    emit: str = Query("table", enum=["table", "annihilator"]),
    precision: int = Precision,
):
    """Solution table, or the annihilator certificate (422 when it does not verify)."""
    family = _run(parse_knot, knot)
    s = _run(SurgerySlope.parse, slope)
    system = _run(surgery_system, family, s)
    if emit == "table":
        reps = _run(solve_representations, family, s, precision)
        return SolutionTable(subject=family.label, slope=str(s), rows=solution_points(reps),
                             removed_factors=list(system.removed))
    cert: AnnihilatorCertificate = _run(torsion_annihilator, family, s, precision)
    if not cert.verified:
        raise HTTPException(status_code=422, detail=cert.model_dump(mode="json"))
    return cert


@app.get("/seifert", response_model=List[SeifertValue])
def seifert(
    index: str = Query(..., description='"b;g;(a1,b1),(a2,b2),..."'),
    precision: int = Precision,
):
    idx = _run(SeifertIndex.parse, index)
    values = _run(seifert_torsion_values, idx, list(admissible_tuples(idx)), precision)
    return [v.to_value() for v in values]


@app.get("/seifert/brieskorn", response_model=SigmaReport)
def brieskorn(orders: str = Query(..., description="a1,a2,a3"), precision: int = Precision):
    return _run(brieskorn_sigma, _run(parse_orders, orders), None, max(precision, 128))


@app.get("/splice", response_model=SpliceReport)
def splice(knot: str = Query(...), precision: int = Precision):
    m = _run(twist_parameter, knot, allow_unknot=True)
    return _run(splice_condition_check, _run(a_polynomial, m), precision=precision)


if __name__ == "__main__":
    uvicorn.run(app, host="0.0.0.0", port=8000)
