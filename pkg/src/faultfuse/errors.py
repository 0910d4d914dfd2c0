"""Exception types shared across the package."""


class FaultfuseError(Exception):
    """Base class for all faultfuse errors."""


# --- dataset / corpus ---

class MissingFileError(FaultfuseError):
    pass


class DimensionMismatchError(FaultfuseError):
    pass


class InvalidCellValueError(FaultfuseError):
    pass


class DanglingReferenceError(FaultfuseError):
    pass


class InfeasibleSpecError(FaultfuseError):
    pass


class TooFewInstancesError(FaultfuseError):
    pass


# --- toy language ---

class LexError(FaultfuseError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ParseError(FaultfuseError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# --- feature extraction ---

class NoFailingTestsError(FaultfuseError):
    pass


# --- optimization ---

class LengthMismatchError(FaultfuseError):
    pass


class ConfigError(FaultfuseError):
    pass


class EmptySelectionError(FaultfuseError):
    pass


class EmptyBallotsError(FaultfuseError):
    pass


# --- neural models ---

class ShapeMismatchError(FaultfuseError):
    pass


class NonFiniteInputError(FaultfuseError):
    pass


class LabelOutOfRangeError(FaultfuseError):
    pass


class DegenerateLabelsError(FaultfuseError):
    pass


class UntrainedModelError(FaultfuseError):
    pass


# --- metrics ---

class SingleClassError(FaultfuseError):
    pass


class NoFaultsError(FaultfuseError):
    pass
