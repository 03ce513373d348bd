"""The virtual-TEDS directory service: store, wire server, and client."""

from .store import (
    DirectoryEntry,
    DirectoryKey,
    DirectoryStore,
    InvalidBinary,
    NotFound,
    RegistryError,
    StorageFailure,
)
from .server import RegistryServer
from .client import RegistryClient, RegistryUnreachable, StoreRejected

__all__ = [
    "DirectoryEntry",
    "DirectoryKey",
    "DirectoryStore",
    "InvalidBinary",
    "NotFound",
    "RegistryClient",
    "RegistryError",
    "RegistryServer",
    "RegistryUnreachable",
    "StorageFailure",
    "StoreRejected",
]
