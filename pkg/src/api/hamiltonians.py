"""
Hamiltonian API endpoints.
"""

import logging

from fastapi import APIRouter, Depends

from ..core.config import settings
from ..core.exceptions import CapacityError, QuantumDoubleError
from ..models.couplings import CouplingConfig
from ..models.group import FiniteGroup
from ..services.hamiltonian_service import HamiltonianService, spectrum
from ..services.operator_service import OperatorService
from .deps import get_group, to_http

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/{name}/site-spectrum")
def site_spectrum(couplings: CouplingConfig, group: FiniteGroup = Depends(get_group)):
    """Spectrum of the refined Hamiltonian restricted to site 0."""
    try:
        if group.order**6 > settings.MAX_HILBERT_DIM:
            raise CapacityError(f"Site space of {group.name} exceeds {settings.MAX_HILBERT_DIM}")
        service = HamiltonianService(OperatorService(group))
        hamiltonian = service.build_refined(couplings, site=0)
        projectors = service.sector_projectors(0) if hamiltonian.dim <= settings.FULL_DIAG_MAX_DIM else None
        report = spectrum(hamiltonian, sector_projectors=projectors)
    except QuantumDoubleError as exc:
        logger.info("Site spectrum of %s failed: %s", group.name, exc)
        raise to_http(exc) from exc
    return report.to_dict()
