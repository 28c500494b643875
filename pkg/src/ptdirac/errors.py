"""Exception types for numerical edge cases and contract violations."""


class PTDiracError(Exception):
    """Base class for all domain errors raised by this package."""


class BandEdgeDegeneracy(PTDiracError):
    """Energy coincides with a band edge (|E| = m, or a shifted edge
    E - q*V0 = +/-m inside a sharp real well), where the plane-wave basis
    degenerates and the matching construction is singular.

    Band edges are hard errors, not limits: callers should nudge the energy
    by at least ~1e-9*m.
    """


class DegenerateParameterization(BandEdgeDegeneracy):
    """The polar well parameterization degenerates (alpha_plus or
    alpha_minus vanishes, so the in-well momentum or spinor ratio is 0/inf)."""


class SingularOmega(PTDiracError):
    """A region basis matrix is numerically singular (|det| below 1e-14)."""


class IntegrationFailure(PTDiracError):
    """The adaptive ODE integrator failed (step underflow / no convergence)."""


class TransmissionPole(PTDiracError):
    """|M22| fell below 1e-13 at a real scattering energy: a transmission
    pole on the real axis (spectral singularity). Reported, never clipped."""

    def __init__(self, energy: float, magnitude: float):
        super().__init__(
            f"transmission pole at E = {energy!r}: |M22| = {magnitude:.3e}"
        )
        self.energy = energy
        self.magnitude = magnitude


class EmptyGrid(PTDiracError):
    """All grid points were excluded by the admissibility filter."""


class NoBreakingDetected(PTDiracError):
    """Real bound-state counts agree at both ends of the searched interval."""


class ScaleViolation(PTDiracError):
    """Inputs violate the smallness preconditions of a limit check."""
