import asyncio
from typing import List

from fastapi import APIRouter, HTTPException

from core.bv_kernel import BVModel, apply_B, bracket
from core.errors import BVError, ModelIncompleteError
from models.schemas import (
    ApplyBRequest,
    ApplyBResult,
    BracketRequest,
    BracketResult,
    CatalogEntry,
    DecompositionReport,
    IdentityReport,
    ModelRequest,
    ModelSummary,
    SuiteReport,
    TableReport,
    VerificationWindow,
    WindowedRequest,
)
from services.config import get_logger, get_settings
from services.decomposition import decomposition_check
from services.model_loader import list_catalog, load_model
from services.tables import b_table, summarize
from services.verification import verification_tasks
from tools.expression import ExpressionTools

router = APIRouter()

logger = get_logger("bv_api")


def _http_error(e: BVError) -> HTTPException:
    status = 422 if isinstance(e, ModelIncompleteError) else 400
    logger.error(f"❌ {type(e).__name__}: {e}")
    return HTTPException(status_code=status, detail=f"{type(e).__name__}: {e}")


def _load(request: ModelRequest) -> BVModel:
    try:
        return load_model(request.model, tensor=request.tensor)
    except BVError as e:
        raise _http_error(e)


def _window(request: WindowedRequest) -> VerificationWindow:
    return request.window or get_settings().default_window()


@router.get("/catalog", response_model=List[CatalogEntry])
async def get_catalog():
    """Models shipped in the catalog directory"""
    try:
        return list_catalog()
    except BVError as e:
        raise _http_error(e)


@router.post("/model", response_model=ModelSummary)
async def describe_model(request: WindowedRequest):
    model = _load(request)
    return summarize(model, _window(request))


@router.post("/apply-b", response_model=ApplyBResult)
async def apply_b(request: ApplyBRequest):
    model = _load(request)
    try:
        a = ExpressionTools.parse(model.signature, request.a)
        return ApplyBResult(model=model.name, input=str(a), output=str(apply_B(model, a)))
    except BVError as e:
        raise _http_error(e)


@router.post("/bracket", response_model=BracketResult)
async def compute_bracket(request: BracketRequest):
    model = _load(request)
    try:
        a = ExpressionTools.parse(model.signature, request.a)
        b = ExpressionTools.parse(model.signature, request.b)
        return BracketResult(model=model.name, a=str(a), b=str(b), output=str(bracket(model, a, b)))
    except BVError as e:
        raise _http_error(e)


@router.post("/table", response_model=TableReport)
async def table(request: WindowedRequest):
    model = _load(request)
    try:
        return await asyncio.to_thread(b_table, model, _window(request))
    except BVError as e:
        raise _http_error(e)


@router.post("/verify", response_model=SuiteReport)
async def verify(request: WindowedRequest):
    """Run every identity check for the model; independent checks run in parallel threads"""
    model = _load(request)
    window = _window(request)
    tasks = verification_tasks(model, window)
    logger.info(f"🚀 Running {len(tasks)} verification tasks for {model.name}...")
    try:
        results = await asyncio.gather(*(asyncio.to_thread(task) for task in tasks))
    except BVError as e:
        raise _http_error(e)
    sections: List[IdentityReport] = [section for result in results for section in result]
    report = SuiteReport(model=model.name, rule=model.tag, window=window, sections=sections)
    logger.info(f"{'✅' if report.ok else '❌'} {model.name}: {len(sections)} sections")
    return report


@router.post("/decompose", response_model=DecompositionReport)
async def decompose(request: WindowedRequest):
    model = _load(request)
    if model.lie_data is None:
        raise HTTPException(status_code=400, detail=f"{model.name} is not a Lie-group model")
    try:
        return await asyncio.to_thread(decomposition_check, model.lie_data, _window(request), model, model.name)
    except BVError as e:
        raise _http_error(e)
