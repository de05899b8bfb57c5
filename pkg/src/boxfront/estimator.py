"""Estimator-style front ends so the solvers compose with sklearn tooling.

Both classes follow the sklearn contract: constructor arguments are stored
verbatim, all validation and work happen in ``fit``, results land in
trailing-underscore attributes, and ``get_params``/``set_params`` come from
``BaseEstimator`` so instances survive ``sklearn.base.clone``.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .dominance import OutcomeSet, filter_nondominated
from .driver import Algorithm, RunConfig, SelectionRule, applicable_bound, check_bound, run
from .backends import ExplicitSetBackend
from .scalarize import Method, ScalarizationConfig, Variant
from .validation import UsageError, check_outcome_array


class ParetoFilter(TransformerMixin, BaseEstimator):
    """Transformer that keeps exactly the nondominated rows of an outcome array.

    Stateless apart from the recorded input dimension; minimization in every
    column is assumed.

    Parameters
    ----------
    dedupe : bool, default=False
        Drop duplicate rows instead of rejecting them.
    """

    def __init__(self, dedupe=False):
        self.dedupe = dedupe

    def fit(self, X, y=None):
        X = check_outcome_array(X)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        X = check_outcome_array(X)
        Z = OutcomeSet.from_array(X, dedupe=self.dedupe)
        return filter_nondominated(Z).array.copy()


class BoxDecompositionEnumerator(BaseEstimator):
    """Enumerate the complete nondominated set of an explicit outcome array.

    ``fit`` runs the box-decomposition loop over the rows of X (one outcome
    vector per row, minimization everywhere) and exposes the result along with
    the run statistics.

    Parameters
    ----------
    algorithm : {"vsplit", "generic"}, default="vsplit"
        Decomposition strategy; "vsplit" requires exactly three columns.
    scalarization : {"ec", "wt"}, default="ec"
        Subproblem type: epsilon-constraint or weighted Tchebycheff.
    variant : {"ts", "aug"}, default="ts"
        Two-stage or augmented formulation.
    selection : {"auto", "first", "minv1"}, default="auto"
        Box selection rule; "auto" picks "minv1" whenever it is valid
        (vsplit + epsilon-constraint on component 1) and "first" otherwise.
    objective_index : int, default=1
        1-based component minimized by the epsilon-constraint method.
    delta : int, default=1
        Offset added to the componentwise maximum for the starting box.
    dedupe : bool, default=False
        Drop duplicate rows instead of rejecting them.
    check_invariants : bool, default=False
        Run the internal consistency checks after every iteration (slow).

    Attributes
    ----------
    nondominated_ : ndarray of shape (k, m), points in generation order.
    stats_ : RunStats with counters and the per-iteration log.
    n_subproblems_ : number of scalarized subproblems solved.
    bound_ : guaranteed worst-case subproblem count, or None.
    bound_met_ : whether n_subproblems_ respects bound_.
    """

    def __init__(self, algorithm="vsplit", scalarization="ec", variant="ts", selection="auto",
                 objective_index=1, delta=1, dedupe=False, check_invariants=False):
        self.algorithm = algorithm
        self.scalarization = scalarization
        self.variant = variant
        self.selection = selection
        self.objective_index = objective_index
        self.delta = delta
        self.dedupe = dedupe
        self.check_invariants = check_invariants

    def _run_config(self):
        scal = ScalarizationConfig(
            method=Method(self.scalarization),
            variant=Variant(self.variant),
            objective_index=self.objective_index,
        )
        if self.selection == "auto":
            selection = (
                SelectionRule.MIN_V1
                if Algorithm(self.algorithm) is Algorithm.VSPLIT
                and scal.method is Method.EPSILON_CONSTRAINT
                and self.objective_index == 1
                else SelectionRule.FIRST_IN_LIST
            )
        else:
            selection = SelectionRule(self.selection)
        return RunConfig(
            algorithm=Algorithm(self.algorithm),
            scalarization=scal,
            selection=selection,
            delta=self.delta,
            verify_invariants=self.check_invariants,
        )

    def fit(self, X, y=None):
        X = check_outcome_array(X)
        try:
            cfg = self._run_config()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        Z = OutcomeSet.from_array(X, dedupe=self.dedupe)
        nondominated, stats = run(ExplicitSetBackend(Z), cfg)
        self.n_features_in_ = X.shape[1]
        self.nondominated_ = nondominated.array.copy()
        self.stats_ = stats
        self.n_subproblems_ = stats.subproblems_solved
        self.bound_ = applicable_bound(len(nondominated), Z.m, cfg)
        self.bound_met_ = check_bound(stats, len(nondominated), cfg, m=Z.m)
        return self

    def fit_transform(self, X, y=None):
        """Fit and return the nondominated rows (generation order)."""
        return self.fit(X, y).nondominated_
