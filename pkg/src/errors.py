class OtrankError(Exception):
    pass

class InvalidArgumentError(OtrankError, ValueError):
    pass

class UnsupportedError(OtrankError, ValueError):
    pass

class SolverError(OtrankError, RuntimeError):
    pass
