"""
Barcodes from any engine, merge sets and engine dispatch.
"""

from typing import List, Tuple, Union

from ..exceptions import InvalidInputError
from ..filtration import FilteredComplex
from ..geometry import Edge
from .matrix import ReductionMatrix
from .models import Barcode, Engine, MergeEvent
from .reduction import reduce_parallel, reduce_standard
from .unionfind import persistence_unionfind


def barcode_from_reduction(complex_: FilteredComplex, matrix: ReductionMatrix) -> Barcode:
    """Read the merge events off a reduced boundary matrix of ``complex_``."""
    if len(matrix) != complex_.column_count:
        raise InvalidInputError(
            f"Matrix has {len(matrix)} columns, complex has {complex_.column_count}"
        )
    events: List[MergeEvent] = []
    for column in range(complex_.vertex_count, complex_.column_count):
        low = matrix.low(column)
        if low < 0:
            continue
        edge = complex_.column_edge(column)
        events.append(MergeEvent(eps=edge.eps, edge=edge.edge, killed_vertex=low))
    return Barcode(events=tuple(events), vertex_count=complex_.vertex_count)


def compute_barcode(
    complex_: FilteredComplex,
    engine: Union[Engine, str] = Engine.UNIONFIND,
    threads: int = 1,
) -> Barcode:
    """Barcode of ``complex_`` computed with the chosen engine."""
    engine = Engine(engine)
    if engine is Engine.UNIONFIND:
        return persistence_unionfind(complex_)
    matrix = ReductionMatrix.from_complex(complex_)
    if engine is Engine.STANDARD:
        reduced = reduce_standard(matrix)
    else:
        reduced = reduce_parallel(matrix, threads=threads).matrix
    return barcode_from_reduction(complex_, reduced)


def merge_set(barcode: Barcode) -> List[Tuple[float, Edge]]:
    """Merge distances with their causing edges, ascending by distance then edge."""
    return sorted(((event.eps, event.edge) for event in barcode.events))


def format_barcode(barcode: Barcode) -> str:
    """Tab-separated ``birth death i j`` lines followed by one ``essential`` line."""
    lines = [
        f"0\t{event.death:.17g}\t{event.edge.i}\t{event.edge.j}" for event in barcode.events
    ]
    lines.extend("essential" for _ in range(barcode.essential_count))
    return "\n".join(lines) + "\n"
