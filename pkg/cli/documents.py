"""JSON documents for trees, strategies, lotteries and monotonicity witnesses.

Numbers travel as strings ("0.51", "51/100", "inf" for kappa ranks) so every
value is parsed to an exact rational. Bare JSON integers are accepted, JSON
floats are refused. Documents are written canonically: fixed field order,
two-space indentation, trailing newline.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, ValidationError, model_validator

from cli.render import value_text, weight_text
from criteria.binary import BinaryUtility
from criteria.schemas import CriterionId, Embedding
from dtree.model import BOTTOM, ChanceNode, DecisionNode, DecisionTree, Edge, LeafNode, Strategy, TreeMode
from errors import DocumentError, PossibilisticError
from lottery.degrees import KappaRank, format_rational, parse_rational
from lottery.kappa import KappaLottery
from lottery.possibilistic import SimpleLottery
from propcheck.trials import MonotonicityTrial, Violation

FORMAT_VERSION = 1
BOTTOM_TEXT = "bottom"


def _number_text(value: Any) -> str:
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"write numbers as strings for exactness, got {value!r}")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value.strip()
    raise ValueError(f"expected a number string, got {type(value).__name__}")


Number = Annotated[str, BeforeValidator(_number_text)]
PairField = Annotated[list[Number], Field(min_length=2, max_length=2)]


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PayloadFields:
    """Leaf and lottery-entry payload: exactly one of utility, utility_pair, mu."""

    def payload_count(self) -> int:
        return sum(x is not None for x in (self.utility, self.utility_pair, self.mu))

    def to_payload(self, mode: TreeMode):
        if mode is TreeMode.KAPPA:
            if self.mu is None:
                raise DocumentError("kappa payloads need 'mu'")
            return KappaRank.parse(self.mu)
        if self.utility_pair is not None:
            return BinaryUtility(parse_rational(self.utility_pair[0]), parse_rational(self.utility_pair[1]))
        if self.utility is None:
            raise DocumentError("possibilistic payloads need 'utility' or 'utility_pair'")
        return parse_rational(self.utility)

    @staticmethod
    def from_payload(payload) -> dict[str, Any]:
        if isinstance(payload, KappaRank):
            return {"mu": str(payload)}
        if isinstance(payload, BinaryUtility):
            return {"utility_pair": [format_rational(payload.top), format_rational(payload.bottom)]}
        return {"utility": format_rational(payload)}


class EdgeDocument(_Document):
    child: str
    degree: Number


class NodeDocument(_Document, PayloadFields):
    id: str
    kind: Literal["decision", "chance", "leaf"]
    children: list[str] | None = None
    edges: list[EdgeDocument] | None = None
    utility: Number | None = None
    utility_pair: PairField | None = None
    mu: Number | None = None

    @model_validator(mode="after")
    def _fields_match_kind(self) -> NodeDocument:
        if self.kind == "decision" and (self.children is None or self.edges is not None or self.payload_count()):
            raise ValueError(f"decision node {self.id!r} takes only 'children'")
        if self.kind == "chance" and (self.edges is None or self.children is not None or self.payload_count()):
            raise ValueError(f"chance node {self.id!r} takes only 'edges'")
        if self.kind == "leaf" and (self.children is not None or self.edges is not None or self.payload_count() != 1):
            raise ValueError(f"leaf {self.id!r} takes exactly one of 'utility', 'utility_pair', 'mu'")
        return self


class TreeDocument(_Document):
    version: int = FORMAT_VERSION
    mode: TreeMode = TreeMode.POSSIBILISTIC
    root: str
    nodes: list[NodeDocument]

    @model_validator(mode="after")
    def _supported(self) -> TreeDocument:
        if self.version != FORMAT_VERSION:
            raise ValueError(f"unsupported format version {self.version}")
        ids = [n.id for n in self.nodes]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate node ids")
        return self

    def to_tree(self) -> DecisionTree:
        nodes = {}
        for doc in self.nodes:
            if doc.kind == "decision":
                nodes[doc.id] = DecisionNode(tuple(doc.children))
            elif doc.kind == "chance":
                nodes[doc.id] = ChanceNode(tuple(Edge(e.child, _weight(e.degree, self.mode)) for e in doc.edges))
            else:
                nodes[doc.id] = LeafNode(doc.to_payload(self.mode))
        return DecisionTree(nodes, self.root, self.mode)

    @classmethod
    def from_tree(cls, tree: DecisionTree) -> TreeDocument:
        docs = []
        for node_id, node in tree.nodes.items():
            if isinstance(node, DecisionNode):
                docs.append(NodeDocument(id=node_id, kind="decision", children=list(node.children)))
            elif isinstance(node, ChanceNode):
                edges = [EdgeDocument(child=e.child, degree=weight_text(e.weight)) for e in node.edges]
                docs.append(NodeDocument(id=node_id, kind="chance", edges=edges))
            else:
                docs.append(NodeDocument(id=node_id, kind="leaf", **PayloadFields.from_payload(node.payload)))
        return cls(mode=tree.mode, root=tree.root, nodes=docs)


def _weight(text: str, mode: TreeMode):
    return KappaRank.parse(text) if mode is TreeMode.KAPPA else parse_rational(text)


class StrategyDocument(_Document):
    version: int = FORMAT_VERSION
    choices: dict[str, str]

    def to_strategy(self) -> Strategy:
        return Strategy({d: BOTTOM if c == BOTTOM_TEXT else c for d, c in self.choices.items()})

    @classmethod
    def from_strategy(cls, strategy: Strategy) -> StrategyDocument:
        return cls(choices={d: BOTTOM_TEXT if c is BOTTOM else c for d, c in sorted(strategy.choices.items())})


class LotteryEntry(_Document, PayloadFields):
    utility: Number | None = None
    utility_pair: PairField | None = None
    mu: Number | None = None
    degree: Number


class LotteryDocument(_Document):
    mode: TreeMode = TreeMode.POSSIBILISTIC
    entries: list[LotteryEntry] = Field(min_length=1)

    def to_lottery(self) -> SimpleLottery | KappaLottery:
        pairs = [(e.to_payload(self.mode), _weight(e.degree, self.mode)) for e in self.entries]
        if self.mode is TreeMode.KAPPA:
            return KappaLottery(tuple(pairs))
        return SimpleLottery(tuple(pairs))

    @classmethod
    def from_lottery(cls, lottery: SimpleLottery | KappaLottery) -> LotteryDocument:
        mode = TreeMode.KAPPA if isinstance(lottery, KappaLottery) else TreeMode.POSSIBILISTIC
        entries = [LotteryEntry(degree=weight_text(w), **PayloadFields.from_payload(o)) for o, w in lottery.items]
        return cls(mode=mode, entries=entries)


class WitnessDocument(_Document):
    version: int = FORMAT_VERSION
    criterion: CriterionId
    embedding: Embedding | None = None
    symmetric: bool = False
    alpha: Number
    beta: Number
    L: LotteryDocument
    Lp: LotteryDocument
    Lpp: LotteryDocument
    premise: str
    outcome: str
    left_value: str
    right_value: str

    def to_trial(self) -> MonotonicityTrial:
        mode = TreeMode.KAPPA if self.criterion is CriterionId.OMEU else TreeMode.POSSIBILISTIC
        return MonotonicityTrial(
            self.L.to_lottery(),
            self.Lp.to_lottery(),
            self.Lpp.to_lottery(),
            _weight(self.alpha, mode),
            _weight(self.beta, mode),
            self.criterion,
            self.embedding,
        )

    @classmethod
    def from_violation(cls, violation: Violation, symmetric: bool = False) -> WitnessDocument:
        trial = violation.trial
        return cls(
            criterion=trial.criterion,
            embedding=trial.embedding,
            symmetric=symmetric,
            alpha=weight_text(trial.alpha),
            beta=weight_text(trial.beta),
            L=LotteryDocument.from_lottery(trial.L),
            Lp=LotteryDocument.from_lottery(trial.Lp),
            Lpp=LotteryDocument.from_lottery(trial.Lpp),
            premise=violation.premise.value,
            outcome=violation.outcome.value,
            left_value=value_text(violation.left_value),
            right_value=value_text(violation.right_value),
        )

    def reproduced_by(self, violation: Violation | None) -> bool:
        if violation is None:
            return False
        return (
            violation.premise.value == self.premise
            and violation.outcome.value == self.outcome
            and value_text(violation.left_value) == self.left_value
            and value_text(violation.right_value) == self.right_value
        )


def dumps(document: BaseModel) -> str:
    return document.model_dump_json(indent=2, exclude_none=True) + "\n"


def _parse_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: {exc.msg}", exc.lineno, exc.colno) from exc


def _validate(model: type[BaseModel], data: Any, source: str):
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise DocumentError(f"{source}: {where}: {first['msg']}") from exc


def load_document(model: type[BaseModel], path: Path | str):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    return _validate(model, _parse_json(text, str(path)), str(path))


def parse_document(model: type[BaseModel], text: str, source: str = "<input>"):
    return _validate(model, _parse_json(text, source), source)


def _convert(convert, source: str):
    try:
        return convert()
    except DocumentError:
        raise
    except PossibilisticError as exc:
        # bad number text or an impossible payload; tree structure is left to validation
        raise DocumentError(f"{source}: {exc}") from exc


def load_tree(path: Path | str) -> DecisionTree:
    return _convert(load_document(TreeDocument, path).to_tree, str(path))


def load_strategy(path: Path | str) -> Strategy:
    return load_document(StrategyDocument, path).to_strategy()


def load_witness(path: Path | str) -> tuple[WitnessDocument, MonotonicityTrial]:
    witness = load_document(WitnessDocument, path)
    return witness, _convert(witness.to_trial, str(path))


def write_document(document: BaseModel, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(document), encoding="utf-8")
    return path
