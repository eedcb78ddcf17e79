"""
Verification API endpoints.
"""

from typing import List, Optional

from fastapi import APIRouter, Depends, Query

from ..core.exceptions import QuantumDoubleError
from ..models.group import FiniteGroup
from ..services.verification_service import run_checks
from .deps import get_group, to_http

router = APIRouter()


@router.get("/{name}")
def verify_group(
    check: Optional[List[str]] = Query(None),
    tolerance: Optional[float] = Query(None, gt=0, le=1e-3),
    group: FiniteGroup = Depends(get_group),
):
    """Run the named checks (all by default) and return the report."""
    try:
        return run_checks(group, checks=check, tolerance=tolerance).to_dict()
    except QuantumDoubleError as exc:
        raise to_http(exc) from exc
