"""Kernel time-series forecasting with a multi-view restricted kernel machine.

The heavy lifting lives in the compiled extension ``_mvrkm``; this package
re-exports its surface. Configurations and hyperparameter grids travel as
JSON strings in the same format the ``mvrkm`` command-line tool reads and
writes, so a ``best_config.json`` produced by either front end works in the
other.

Quick start::

    import json
    import mvrkm

    values = mvrkm.generate_sine(500)
    config = json.loads(mvrkm.default_config("mvrkm"))
    config.update(p=50, s=30)
    model = mvrkm.Model.train(values[:400], json.dumps(config))
    out = model.forecast(100, truth=values[400:])
    print(out["mse"])
"""

from ._mvrkm import (
    Model,
    default_config,
    generate_lorenz,
    generate_sine,
    generate_sum_sines,
    grid_search,
    lag_embed,
    mse,
)

__all__ = [
    "Model",
    "default_config",
    "generate_lorenz",
    "generate_sine",
    "generate_sum_sines",
    "grid_search",
    "lag_embed",
    "mse",
]
