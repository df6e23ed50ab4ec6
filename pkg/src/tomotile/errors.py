"""Exception hierarchy shared by every module."""


class TomoTileError(Exception):
    pass


class TileError(TomoTileError, ValueError):
    pass


class EmptyTile(TileError):
    pass


class Disconnected(TileError):
    pass


class HasHole(TileError):
    pass


class BadTypeIndex(TomoTileError, IndexError):
    pass


class InvalidTiling(TomoTileError, ValueError):
    def __init__(self, violation):
        super().__init__(str(violation))
        self.violation = violation


class NotRepresentable(TomoTileError, ValueError):
    pass


class Oversubscribed(TomoTileError, ValueError):
    pass


class MalformedInstance(TomoTileError, ValueError):
    pass


class LimitExceeded(TomoTileError):
    pass


class BadIndexSet(TomoTileError, ValueError):
    pass


class OutOfRange(TomoTileError, ValueError):
    pass


class WrongTileSet(TomoTileError, ValueError):
    pass


class InvalidGadget(TomoTileError, ValueError):
    pass


class UnverifiedGadget(TomoTileError, ValueError):
    pass


class SearchSpaceTooLarge(TomoTileError):
    pass
