"""Exception hierarchy shared across the toolkit.

Everything derives from ClimberError so callers (notably the CLI) can
catch domain failures in one place while letting programming errors
(ValueError, TypeError) surface normally.
"""


class ClimberError(Exception):
    """Base class for all domain errors raised by this package."""


# --- kinematics ---------------------------------------------------------

class KinematicsError(ClimberError):
    """A leg solve failed. `plane` is 'xy' or 'zy' when known."""

    def __init__(self, message, plane=None):
        super().__init__(message)
        self.plane = plane


class OutOfReach(KinematicsError):
    """Planar target radius lies outside the reachable annulus."""


class DegenerateTarget(KinematicsError):
    """Planar target coincides with the shoulder axis; heading undefined."""


class ZUnreachable(KinematicsError):
    """Requested wall clearance cannot be met at the given approach angle."""


class JointLimit(KinematicsError):
    """A solution exists but violates the configured joint limits."""


# --- gait ---------------------------------------------------------------

class BadOrder(ClimberError):
    """Swing order is not a permutation of the four leg ids."""


class UnreachableFoothold(ClimberError):
    """A planned foothold cannot be reached; carries leg id and step index."""

    def __init__(self, message, leg=None, step=None):
        super().__init__(message)
        self.leg = leg
        self.step = step


class GaitValidationError(ClimberError):
    """A gait script failed validation; carries the violation report."""

    def __init__(self, report):
        lines = "; ".join(str(v) for v in report.violations)
        super().__init__(f"gait script invalid: {lines}")
        self.report = report


# --- pneumatics ---------------------------------------------------------

class PumpOff(ClimberError):
    """Attach requested while the leg's assigned pump is off."""


class AttachTimeout(ClimberError):
    """Cup pressure cannot reach the attach threshold within the dwell."""


class NotAttached(ClimberError):
    """Detach requested on a leg that is not currently attached."""


# --- simulation ---------------------------------------------------------

class ZeroCapacity(ClimberError):
    """Tangential load present but holding capacity is zero."""


class AdhesionFailure(ClimberError):
    """Tangential load exceeded holding capacity with no recovery."""


# --- configuration ------------------------------------------------------

class ConfigError(ClimberError):
    """Config file is malformed or violates a value constraint."""
