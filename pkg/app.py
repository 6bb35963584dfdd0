import logging
from typing import Any, Dict, Optional, Tuple

from fastapi import Body, FastAPI, HTTPException
from pydantic import BaseModel, Field

from src.dynamics.blaschke import BlaschkeParams
from src.experiments import run_experiment
from src.oracle import blaschke_exact_spectrum, blaschke_fixed_point
from src.utils.config import EXPERIMENT_KINDS, build_experiment_config
from src.utils.errors import EXIT_CONFIG, EdmdError

logger = logging.getLogger('service')

app = FastAPI(title="EDMD Spectra Service")


class OracleRequest(BaseModel):
    mu: Tuple[float, float] = (0.0, 0.0)
    rho: Tuple[float, float] = (0.0, 0.0)
    count: int = Field(11, ge=1, le=1001)


class OracleResponse(BaseModel):
    z_star: Tuple[float, float]
    multiplier: Tuple[float, float]
    residual: float
    solver_agreement: float
    eigenvalues: list


def _http_error(error: EdmdError) -> HTTPException:
    status = 422 if error.exit_code == EXIT_CONFIG else 409
    logger.error(f"Request failed ({status}): {error}")
    return HTTPException(status_code=status, detail=str(error))


@app.get("/health")
async def health():
    return {"status": "ready", "experiments": list(EXPERIMENT_KINDS)}


@app.post("/experiments/{kind}")
def run_experiment_endpoint(kind: str, body: Optional[Dict[str, Any]] = Body(default=None)):
    """Run an experiment on its preset, with the request body merged on top."""
    if kind not in EXPERIMENT_KINDS:
        raise HTTPException(status_code=404, detail=f"Unknown experiment '{kind}'")
    try:
        config = build_experiment_config(kind, body or {})
        report = run_experiment(kind, config)
    except EdmdError as e:
        raise _http_error(e)
    except ValueError as e:
        logger.error(f"Request rejected: {e}")
        raise HTTPException(status_code=422, detail=str(e))
    return report.to_dict()


@app.post("/oracle/blaschke", response_model=OracleResponse)
def blaschke_oracle(request: OracleRequest):
    try:
        params = BlaschkeParams(complex(*request.mu), complex(*request.rho))
        fixed_point = blaschke_fixed_point(params)
        spectrum = blaschke_exact_spectrum(params, request.count)
    except EdmdError as e:
        raise _http_error(e)
    return OracleResponse(
        z_star=(fixed_point.z_star.real, fixed_point.z_star.imag),
        multiplier=(fixed_point.multiplier.real, fixed_point.multiplier.imag),
        residual=fixed_point.residual,
        solver_agreement=fixed_point.agreement,
        eigenvalues=spectrum.as_pairs(),
    )


if __name__ == "__main__":
    import uvicorn
    from src.utils.logging_config import setup_logging

    setup_logging()
    uvicorn.run(app, host="0.0.0.0", port=8000)
