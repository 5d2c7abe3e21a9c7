"""HTTP service wrapping the simulator core."""

from fastapi import APIRouter, FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import FlyqError, ParseError
from . import handlers, schemas

router = APIRouter()


@router.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@router.post("/run", response_model=schemas.RunResponse)
def run(req: schemas.RunRequest) -> schemas.RunResponse:
    return handlers.run_op(req)


@router.post("/curves", response_model=schemas.CurvesResponse)
def curves(req: schemas.CurvesRequest) -> schemas.CurvesResponse:
    return handlers.curves_op(req)


@router.post("/calibrate", response_model=schemas.CalibrateResponse)
def calibrate(req: schemas.CalibrateRequest) -> schemas.CalibrateResponse:
    return handlers.calibrate_op(req)


@router.post("/route", response_model=schemas.RouteResponse)
def route(req: schemas.RouteRequest) -> schemas.RouteResponse:
    return handlers.route_op(req)


@router.post("/verify-gates", response_model=schemas.VerifyGatesResponse)
def verify_gates(req: schemas.VerifyGatesRequest) -> schemas.VerifyGatesResponse:
    return handlers.verify_gates_op(req)


@router.post("/budget", response_model=schemas.BudgetResponse)
def budget(req: schemas.BudgetRequest) -> schemas.BudgetResponse:
    return handlers.budget_op(req)


def create_app() -> FastAPI:
    app = FastAPI(title="flyq", version=__version__)
    app.include_router(router)

    @app.exception_handler(FlyqError)
    async def _flyq_error(request, exc: FlyqError):
        status = 422 if isinstance(exc, ParseError) else 400
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    return app


app = create_app()
