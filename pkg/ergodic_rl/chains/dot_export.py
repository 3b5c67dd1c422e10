from ergodic_rl.chains.chain_analysis import MatrixLike
from ergodic_rl.chains.chain_report import ChainReport
from ergodic_rl.chains.transition_matrix import as_transition_matrix


def condensation_dot(report: ChainReport, P: MatrixLike,
                     name: str = 'condensation') -> str:
    """
    Return a DOT graph with one node per strongly connected component and an
    edge wherever some transition leaves one component for another.
    Recurrent classes are drawn with a double border.

    :param report: The report for P.
    :param P: The transition matrix the report was computed from.
    :param name: Graph name.
    """
    P = as_transition_matrix(P)
    component_of = {
        state: index
        for index, scc in enumerate(report.sccs)
        for state in scc
    }
    lines = [f'digraph {name} {{']
    for index, scc in enumerate(report.sccs):
        label = report._names(scc)
        shape = 'doublecircle' if scc in report.recurrent_classes else 'circle'
        lines.append(f'  c{index} [label="{label}", shape={shape}];')
    edges = set()
    rows, cols = P.support.nonzero()
    for u, v in zip(rows, cols):
        cu, cv = component_of[int(u)], component_of[int(v)]
        if cu != cv:
            edges.add((cu, cv))
    for cu, cv in sorted(edges):
        lines.append(f'  c{cu} -> c{cv};')
    lines.append('}')
    return '\n'.join(lines) + '\n'
