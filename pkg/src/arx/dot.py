"""DOT rendering of the truncated AR quiver of the linear quiver."""
from __future__ import annotations

from .artheory.almost_split import almost_split
from .artheory.catalog import linear_catalog
from .artheory.translate import tau_report
from .lincat import LinCat
from .modrep.decompose import decompose, find_isomorphism
from .modrep.module import Module
from .modrep.projective import DEFAULT_MARGIN, minimal_presentation


def _node_id(M: Module) -> str:
    return M.name.replace(":", "_")


def _match(X: Module, catalog: list[Module]) -> Module:
    for Y in catalog:
        if Y.dims == X.dims and find_isomorphism(X, Y) is not None:
            return Y
    raise LookupError(f"{X!r} is not in the catalog")


def ar_quiver_edges(cat: LinCat, margin: int = DEFAULT_MARGIN):
    """(irreducible-map edges, tau edges) as sorted lists of node-name pairs."""
    catalog = linear_catalog(cat)
    solid, dashed = set(), set()
    for M in catalog:
        if minimal_presentation(M).is_projective():
            continue
        T = _match(tau_report(M, margin).module, catalog)
        dashed.add((M.name, T.name))
        seq = almost_split(M, margin=margin, check_indecomposable=False).seq
        for X, _ in decompose(seq.E).summands:
            Y = _match(X, catalog)
            solid.add((T.name, Y.name))
            solid.add((Y.name, M.name))
    return sorted(solid), sorted(dashed)


def ar_quiver_dot(cat: LinCat, margin: int = DEFAULT_MARGIN) -> str:
    """Nodes are the interval modules labelled by dimension vectors; solid
    edges come from middle terms of almost split sequences, dashed edges are tau."""
    catalog = linear_catalog(cat)
    solid, dashed = ar_quiver_edges(cat, margin)
    by_name = {M.name: M for M in catalog}
    lines = [f'digraph "AR_linear_{cat.L}" {{', "  rankdir=LR;", "  node [shape=box, fontsize=10];"]
    for M in catalog:
        dv = "".join(str(d) for d in M.dims)
        lines.append(f'  {_node_id(M)} [label="{M.name}\\n{dv}"];')
    for s, t in solid:
        lines.append(f"  {_node_id(by_name[s])} -> {_node_id(by_name[t])};")
    for s, t in dashed:
        lines.append(f"  {_node_id(by_name[s])} -> {_node_id(by_name[t])} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
