"""Exception types shared by the evaluators.

``Stuck`` and ``OutOfFuel`` are control-flow signals inside the engines;
public entry points turn them into :class:`~k2lab.partialfn.Outcome` values.
"""


class K2LabError(Exception):
    pass


class CodingOverflow(K2LabError):
    """A natural exceeded the configured width cap."""


class CodingError(K2LabError):
    """An item cannot be coded by the scheme (e.g. not a carrier element)."""


class Stuck(K2LabError):
    """Definite undefinedness: table miss, stuck term, off-protocol value."""


class OutOfFuel(K2LabError):
    """The evaluation budget was exhausted."""


class ParseError(K2LabError):
    pass
