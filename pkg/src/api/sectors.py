"""
Energy sector API endpoints.
"""

from typing import Optional

from fastapi import APIRouter, Depends

from ..core.exceptions import QuantumDoubleError
from ..models.couplings import CouplingConfig
from ..models.group import FiniteGroup
from ..services import sector_service
from .deps import get_group, to_http

router = APIRouter()


@router.post("/{name}/diagram")
def splitting_diagram(
    couplings: Optional[CouplingConfig] = None,
    group: FiniteGroup = Depends(get_group),
):
    """
    Splitting diagram of the group. With couplings every cell carries its
    energy alpha_Gamma + beta_C.
    """
    if couplings is not None and not couplings.alpha and not couplings.beta:
        couplings = None
    try:
        return sector_service.diagram_export(group, couplings).to_dict()
    except QuantumDoubleError as exc:
        raise to_http(exc) from exc
