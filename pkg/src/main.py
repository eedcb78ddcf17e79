"""
Quantum Double API
Main FastAPI application entry point.
"""

from fastapi import FastAPI

from .api import anyons, groups, hamiltonians, sectors, verify
from .core.config import settings
from .core.logging_config import configure_logging

configure_logging(settings.LOG_LEVEL)

app = FastAPI(
    title="Quantum Double API",
    description="Anyons, energy sectors and Hamiltonians of Kitaev quantum double models D(G)",
    version="1.0.0"
)

# Register routers
app.include_router(groups.router, prefix="/api/groups", tags=["Groups"])
app.include_router(anyons.router, prefix="/api/anyons", tags=["Anyons"])
app.include_router(sectors.router, prefix="/api/sectors", tags=["Sectors"])
app.include_router(hamiltonians.router, prefix="/api/hamiltonians", tags=["Hamiltonians"])
app.include_router(verify.router, prefix="/api/verify", tags=["Verification"])


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "service": "quantum-double-api"}


@app.get("/")
async def root():
    """Root endpoint with API information."""
    return {
        "name": "Quantum Double API",
        "version": "1.0.0",
        "docs": "/docs"
    }
