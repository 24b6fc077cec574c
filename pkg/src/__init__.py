"""Unit disk embedding solver for neutral-atom registers.

The package places the vertices of a graph as atoms inside a register of
radius ``L`` so that adjacent vertices lie within the interaction distance
and all other pairs stay clearly outside of it:
- Graph instances and the necessary-condition gate (``src.graphs``)
- Feasibility check and initial layouts (``src.embedding``)
- Dense layers, AdamW and the gradient oracle (``src.neural``)
- Distance Encoder Network and its loss (``src.den``)
- Learning phase and hyperparameter sweep (``src.training``)
- Dataset files, reports, SVG output and logging (``src.pipeline``)

Note: To keep imports lightweight and avoid side effects, we do not import
subpackages at module import time. Import the needed submodules explicitly, e.g.:

    from src.training import run_learning_phase
    from src.embedding import check_embedding
"""

__version__ = "1.0.0"

# Public subpackages (names for discoverability only)
# Import subpackages explicitly in your code as needed
from typing import List

__all__: List[str] = []
