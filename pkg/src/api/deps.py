"""
Shared router dependencies.
"""

from fastapi import HTTPException

from ..core.exceptions import QuantumDoubleError
from ..models.group import FiniteGroup
from ..services.group_service import resolve_builtin


def to_http(exc: QuantumDoubleError) -> HTTPException:
    return HTTPException(status_code=exc.http_status, detail=str(exc))


def get_group(name: str) -> FiniteGroup:
    """Resolve the {name} path parameter to a built-in group."""
    try:
        return resolve_builtin(name)
    except QuantumDoubleError as exc:
        raise to_http(exc) from exc
