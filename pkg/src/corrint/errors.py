"""Exception types shared across the package."""


class CorrintError(Exception):
    """Base class for all library errors."""


class ImmersionLost(CorrintError):
    """A Jacobian became rank-deficient where a full-rank immersion was required."""

    def __init__(self, position, detail=""):
        self.position = position
        msg = f"immersion lost at x = {position}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class DominanceViolated(CorrintError):
    """Diagonal dominance a11 >= |a12|, a22 >= |a12| failed at a sample point."""

    def __init__(self, position, matrix):
        self.position = position
        self.matrix = matrix
        super().__init__(f"diagonal dominance violated at x = {position}: {matrix.tolist()}")


class NotPSD(CorrintError):
    """A sampled matrix field has an eigenvalue below the PSD tolerance."""

    def __init__(self, position, eigenvalue):
        self.position = position
        self.eigenvalue = eigenvalue
        super().__init__(f"matrix not PSD at x = {position}: min eigenvalue {eigenvalue:.3e}")


class LambdaCapExceeded(CorrintError):
    """The frequency search hit lambda_max before all step conditions held."""

    def __init__(self, lambda_max, conditions):
        self.lambda_max = lambda_max
        self.conditions = conditions
        super().__init__(
            f"frequency cap {lambda_max:.3e} reached before step conditions held: {conditions}"
        )


class ShortnessLost(CorrintError):
    """Post-stage defect has a negative sampled eigenvalue off the boundary."""

    def __init__(self, position, eigenvalue):
        self.position = position
        self.eigenvalue = eigenvalue
        super().__init__(f"shortness lost at x = {position}: defect eigenvalue {eigenvalue:.3e}")


class StageEstimateViolated(CorrintError):
    """A stage-level estimate (C0 drift, metric error or C1 drift) failed its bound."""

    def __init__(self, name, measured, allowed):
        self.name = name
        self.measured = measured
        self.allowed = allowed
        super().__init__(f"stage estimate {name}: measured {measured:.6e} > allowed {allowed:.6e}")


class NotConverged(CorrintError):
    """Iteration stopped at the stage cap; carries the partial result."""

    def __init__(self, stages_run, achieved_defect, partial_map=None, report=None):
        self.stages_run = stages_run
        self.achieved_defect = achieved_defect
        self.partial_map = partial_map
        self.report = report
        super().__init__(
            f"not converged after {stages_run} stages: defect sup {achieved_defect:.6e}"
        )


class HypothesisFailed(CorrintError):
    """h - <Abar, nubar> is not positive definite at a boundary sample."""

    def __init__(self, position, eigenvalue):
        self.position = position
        self.eigenvalue = eigenvalue
        super().__init__(
            f"normal-data hypothesis failed at x = {position}: min eigenvalue {eigenvalue:.3e}"
        )


class PhiRangeError(CorrintError):
    """Conformal factor left (0, 1] or is not 1 on the boundary."""


class ShootingDiverged(CorrintError):
    """Geodesic two-point shooting failed to converge."""

    def __init__(self, p, q, residual):
        self.p = p
        self.q = q
        self.residual = residual
        super().__init__(f"geodesic shooting diverged for {p} -> {q}: residual {residual:.3e}")


class ConfigError(CorrintError):
    """Run configuration failed schema validation; message carries field paths."""
