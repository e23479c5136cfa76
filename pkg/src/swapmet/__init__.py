"""Logical-qubit phase metrology with swap-test purity mitigation.

Layering, bottom to top:

* :mod:`swapmet.logical` -- two-dimensional codespace states, generators,
  readout observables;
* :mod:`swapmet.channels` -- Pauli noise, accumulation laws, and the
  QEC-filtered logical channel;
* :mod:`swapmet.dense` -- full 2^n reference simulator (the oracle the
  fast paths are validated against);
* :mod:`swapmet.swaptest` -- the destructive swap-test distribution,
  sampler, and moment estimates;
* :mod:`swapmet.estimators` -- closed-form estimators and their
  variance/bias guarantees;
* :mod:`swapmet.mle` -- two-parameter maximum-likelihood fitting;
* :mod:`swapmet.experiments` / :mod:`swapmet.cli` -- reproducible
  figure-style experiment runs writing deterministic CSV.
"""

from __future__ import annotations

__version__ = "0.1.0"
