"""
Anyon API endpoints.
"""

from typing import Dict, List

from fastapi import APIRouter, Depends

from ..core.exceptions import QuantumDoubleError
from ..models.group import FiniteGroup
from ..services import anyon_service
from .deps import get_group, to_http

router = APIRouter()


@router.get("/{name}", response_model=List[Dict])
def list_anyons(group: FiniteGroup = Depends(get_group)):
    try:
        return anyon_service.anyon_table(group)
    except QuantumDoubleError as exc:
        raise to_http(exc) from exc
