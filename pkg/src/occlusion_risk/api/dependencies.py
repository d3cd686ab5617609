"""
FastAPI Dependency Injection
============================

Route handlers receive the compiled experiment workflow through ``Depends(get_workflow)``
so tests can swap it via ``app.dependency_overrides``.
"""

from functools import lru_cache

from occlusion_risk.graph.workflow import create_workflow


@lru_cache()
def get_workflow():
    """
    Get the compiled LangGraph workflow, built once per process.

    Usage in routes:
        @router.post("/runs")
        def start_run(request: RunRequest, workflow = Depends(get_workflow)):
            final = run_plan(request.to_plan(), workflow=workflow)
    """
    return create_workflow()


__all__ = ["get_workflow"]
