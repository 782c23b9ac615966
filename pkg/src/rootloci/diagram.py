"""Text, DOT, and JSON emitters for the stratification diagram.

Rows group partitions with the same number of parts (= the dimension of
their locus).  Edges run from a partition down to each proper coarsening;
dashed means the stratum is nonsingular inside the bigger locus, labels
"n", "*", "n*" report branch count and tangent degeneracy.
"""

from __future__ import annotations


def render_text(data):
    lines = ["strata for d = %d (dim = number of parts)" % (data.d,)]
    by_dim = {}
    for lam, dim in data.nodes:
        by_dim.setdefault(dim, []).append(lam)
    for dim in sorted(by_dim, reverse=True):
        row = "  ".join("(%s)" % (lam,) for lam in sorted(by_dim[dim], reverse=True))
        lines.append("dim %d:  %s" % (dim, row))
    lines.append("")
    for e in data.edges:
        if e.dashed:
            mark = "--- (nonsingular)"
        else:
            mark = "**- %s" % (e.text,)
        lines.append("(%s) %s (%s)" % (e.upper, mark, e.lower))
    return "\n".join(lines) + "\n"


def render_dot(data):
    lines = [
        "digraph strata {",
        "  rankdir=TB;",
        '  node [shape=plaintext, fontname="Helvetica"];',
    ]
    by_dim = {}
    for lam, dim in data.nodes:
        by_dim.setdefault(dim, []).append(lam)
    for dim in sorted(by_dim, reverse=True):
        row = " ".join('"(%s)"' % (lam,) for lam in sorted(by_dim[dim], reverse=True))
        lines.append("  { rank=same; %s }" % (row,))
    for e in data.edges:
        attrs = []
        if e.dashed:
            attrs.append("style=dashed")
        else:
            attrs.append("style=solid")
            attrs.append('label="%s"' % (e.text,))
        lines.append(
            '  "(%s)" -> "(%s)" [%s];' % (e.upper, e.lower, ", ".join(attrs))
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_obj(data):
    return {
        "schema": 1,
        "d": data.d,
        "nodes": [
            {"partition": list(lam.parts), "dim": dim} for lam, dim in data.nodes
        ],
        "edges": [
            {
                "from": list(e.upper.parts),
                "to": list(e.lower.parts),
                "fiber_count": e.label.fiber_count,
                "tangent_degenerate": e.label.tangent_degenerate,
                "nonsingular": e.label.nonsingular,
                "label": e.text,
            }
            for e in data.edges
        ],
    }
