class NetControlError(Exception):
    """Base class for errors raised by netcontrol."""


class InputError(NetControlError, ValueError):
    """Invalid arguments or malformed input data."""


class CapacityError(NetControlError):
    """A configured size limit was exceeded (ball cap, brute-force edge limit)."""
