"""
Group API endpoints.
"""

from fastapi import APIRouter, Depends

from ..core.exceptions import QuantumDoubleError
from ..models.group import FiniteGroup
from ..services import character_service, group_service
from .deps import get_group, to_http

router = APIRouter()


@router.get("/{name}")
def get_group_report(group: FiniteGroup = Depends(get_group)):
    """Order, classes with normalizer orders, and the character table."""
    try:
        report = group_service.group_report(group)
        report["character_table"] = character_service.table_to_dict(character_service.character_table(group))
    except QuantumDoubleError as exc:
        raise to_http(exc) from exc
    return report
