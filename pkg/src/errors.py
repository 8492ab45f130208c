from __future__ import annotations


class SecAggError(Exception):
    """Base class for every domain error raised by the toolkit."""


# numeric
class NonInvertible(SecAggError):
    pass


class NotAResidue(SecAggError):
    pass


# curves and pairings
class NotOnCurve(SecAggError):
    pass


class CannotCompressInfinity(SecAggError):
    pass


class InvalidCompressedPoint(SecAggError):
    pass


class PairingDegenerate(SecAggError):
    pass


# cryptosystem
class GenerationFailure(SecAggError):
    pass


class MessageOutOfRange(SecAggError):
    pass


class DlogNotFound(SecAggError):
    pass


class LevelMismatch(SecAggError):
    pass


class TableTooLarge(SecAggError):
    pass


class ExtensionDisabled(SecAggError):
    pass


class MalformedKeyFile(SecAggError):
    pass


class MalformedCiphertext(SecAggError):
    pass


# watermarking
class MalformedPgm(SecAggError):
    pass


class OverlappingThresholds(SecAggError):
    pass


class DegenerateHost(SecAggError):
    pass
