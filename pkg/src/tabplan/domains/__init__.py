from .explicit import GraphDomain, desk_dag, layered_dag
from .floortile import FloortileDomain
from .parking import ParkingDomain, curb_estimate
from .tetris import TetrisDomain, piece_estimate
from .transport import TransportDomain, estimate as transport_estimate

__all__ = [
    "FloortileDomain",
    "GraphDomain",
    "ParkingDomain",
    "TetrisDomain",
    "TransportDomain",
    "curb_estimate",
    "desk_dag",
    "layered_dag",
    "piece_estimate",
    "transport_estimate",
]
