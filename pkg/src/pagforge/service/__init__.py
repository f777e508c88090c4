"""Expert adjudication backend: store, network, HTTP API."""

from pagforge.service.api import create_app
from pagforge.service.network import (
    DEFAULT_THRESHOLD,
    NetworkGraph,
    build_network,
    network_from_store,
)
from pagforge.service.store import (
    AdjudicationStore,
    Candidate,
    DECISIONS,
    InvalidDecisionError,
    LabelRecord,
    Scaffold,
    UnknownScaffoldError,
    write_candidate_file,
)

__all__ = [
    "AdjudicationStore",
    "Candidate",
    "DECISIONS",
    "DEFAULT_THRESHOLD",
    "InvalidDecisionError",
    "LabelRecord",
    "NetworkGraph",
    "Scaffold",
    "UnknownScaffoldError",
    "build_network",
    "create_app",
    "network_from_store",
    "write_candidate_file",
]
