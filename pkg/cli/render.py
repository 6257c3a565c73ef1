from __future__ import annotations

from fractions import Fraction

from criteria.binary import BinaryUtility
from lottery.degrees import KappaRank, format_fraction, format_rational, is_terminating
from lottery.kappa import KappaLottery
from lottery.possibilistic import SimpleLottery


def value_text(value) -> str:
    """Exact, canonical text of a criterion value."""
    if value is None:
        return "-"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, tuple):
        return " vs ".join(value_text(v) for v in value)
    return str(value)


def describe_value(value) -> str:
    """Rational and decimal forms side by side when both exist."""
    if isinstance(value, Fraction) and value.denominator != 1 and is_terminating(value):
        return f"{format_fraction(value)} = {format_rational(value)}"
    return value_text(value)


def _payload_text(payload) -> str:
    if isinstance(payload, (BinaryUtility, KappaRank)):
        return str(payload)
    return format_rational(payload)


def lottery_text(lottery: SimpleLottery | KappaLottery) -> str:
    """``<degree/utility, ...>`` in ascending outcome order."""
    if isinstance(lottery, KappaLottery):
        body = ", ".join(f"{kappa}/{mu}" for mu, kappa in lottery.items)
    else:
        body = ", ".join(f"{format_rational(d)}/{_payload_text(o)}" for o, d in lottery.items)
    return f"<{body}>"


def weight_text(weight) -> str:
    return str(weight) if isinstance(weight, KappaRank) else format_rational(weight)


def dump_tree(tree, strategy=None) -> list[str]:
    """Indented outline; chosen chance nodes are starred when a strategy is given."""
    lines: list[str] = [f"# mode={tree.mode.value} root={tree.root}"]
    stack: list[tuple[str, int, str]] = [(tree.root, 0, "")]
    seen: set[str] = set()
    while stack:
        node_id, depth, label = stack.pop()
        pad = "  " * depth
        if node_id not in tree.nodes:
            lines.append(f"{pad}{label}{node_id} ?")
            continue
        if node_id in seen:
            lines.append(f"{pad}{label}{node_id} (again)")
            continue
        seen.add(node_id)
        node = tree.nodes[node_id]
        kind = node.kind.value
        if kind == "leaf":
            lines.append(f"{pad}{label}{node_id} leaf {_payload_text(node.payload)}")
            continue
        lines.append(f"{pad}{label}{node_id} {kind}")
        if kind == "decision":
            chosen = strategy.choice(node_id) if strategy is not None else None
            children = [(c, "* " if c == chosen else "- ") for c in node.children]
        else:
            children = [(e.child, f"[{weight_text(e.weight)}] ") for e in node.edges]
        for child, child_label in reversed(children):
            stack.append((child, depth + 1, child_label))
    return lines
