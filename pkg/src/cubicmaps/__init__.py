"""cubicmaps: exact counting and asymptotics of rooted cubic maps on
surfaces of arbitrary genus, orientable or not, with an independent
Gaussian-matrix-moment oracle for cross-checking.

The package splits into:

* ``exact``    — rational/quadratic-extension scalars, truncated Laurent
                 series, dense polynomials, rational functions with
                 factored structural denominators;
* ``algframe`` — the ψ-basis over the algebraic parametrisation of the
                 counting variable and the change to z-series;
* ``genus``    — the per-genus linear solves producing every L_g, plus
                 residual re-checks of the defining equations;
* ``asympt``   — exact constant recursions (u, v, β, μ, ν) and the
                 float-only asymptotic comparisons built on them;
* ``oracle``   — Wick-pairing moments of the Gaussian symmetric matrix
                 ensemble and the identity checks (Virasoro, BKP-type,
                 derivative reductions, pfaffian calculus);
* ``cli``      — the ``cubicmaps`` command.
"""

__version__ = "0.1.0"

from .genus import GenusTable, coefficients, solve_genus

__all__ = ["GenusTable", "coefficients", "solve_genus", "__version__"]
