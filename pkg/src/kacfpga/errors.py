"""Exception hierarchy. ``exit_code`` drives the CLI's exit status."""


class KacfpgaError(Exception):
    exit_code = 2


class UsageError(KacfpgaError):
    exit_code = 1


class BadParameter(UsageError, ValueError):
    pass


class CryptoError(KacfpgaError):
    exit_code = 2


class ZeroInverse(CryptoError, ZeroDivisionError):
    pass


class BadEncoding(CryptoError, ValueError):
    pass


class NotOnCurve(BadEncoding):
    pass


class WrongSubgroup(BadEncoding):
    pass


class MixedGroup(CryptoError, TypeError):
    pass


class InfinityInput(CryptoError, ValueError):
    pass


class ZeroInput(CryptoError, ValueError):
    pass


class BadId(CryptoError, ValueError):
    pass


class BadLength(CryptoError, ValueError):
    pass


class EmptySubset(CryptoError, ValueError):
    pass


class IdOutOfRange(CryptoError, ValueError):
    pass


class IdNotInSubset(CryptoError):
    pass


class MalformedCiphertext(CryptoError, ValueError):
    pass


class TooManyPartitions(CryptoError):
    pass


class UnknownPartition(CryptoError, KeyError):
    pass


class ForeignPartition(CryptoError):
    pass


class TagMismatch(CryptoError):
    pass


class StoreError(KacfpgaError):
    exit_code = 3


class StoreExists(StoreError):
    pass


class BadMagic(StoreError):
    pass


class VersionMismatch(StoreError):
    pass


class CorruptPoint(StoreError):
    pass


class MissingKey(StoreError):
    """Vendor-only material (msk) is not present in the store."""


class HoleAccess(IdOutOfRange):
    """Attempt to read the unpublished power at index n+1."""
