"""JSON instance/result documents and the random instance generator.

Instance document::

    {"version": "1",
     "chores": ["o1", "o2", ...],
     "agents": [{"weight": "1/2",
                 "cost": {"family": "approval_cap", "approved": ["o1"], "cap": 1}}, ...]}

``cost`` may also be ``{"family": "partition_cap", "categories": [{"chores": [...], "cap": k}]}``
or ``{"family": "explicit", "costs": {"": 0, "o1": 1, "o1,o2": 1, ...}}`` where keys are
sorted, comma-joined labels. Weights are integers or ``"num/den"`` strings.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .clean import Decomposition, check_decomposition
from .core import Allocation, Instance, utility_vector, weighted
from .costs import (
    ApprovalCapCost,
    CostOracle,
    ExplicitCost,
    PartitionCapCost,
    validate_binary_supermodular,
)
from .errors import ChoreswapError, DocumentError
from .yankee import Criterion, SwapResult, TraceStep, WeightedPMalfare

VERSION = "1"
FAMILIES = ("approval_cap", "partition_cap", "explicit")
# explicit tables hold 2^m entries
MAX_EXPLICIT_CHORES = 12


def format_rational(q) -> str | int:
    q = Fraction(q)
    if q.denominator == 1:
        return int(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(value, field: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DocumentError(f"expected an integer or 'num/den' string, got {value!r}", field)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"not a rational number: {value!r}", field) from None


def _set_key(labels: Sequence[str], subset) -> str:
    return ",".join(sorted(labels[o] for o in subset))


# -- instances ----------------------------------------------------------------


def _parse_chores(names, index: dict[str, int], field: str) -> frozenset[int]:
    if not isinstance(names, list):
        raise DocumentError("expected a list of chore labels", field)
    out = set()
    for name in names:
        if name not in index:
            raise DocumentError(f"unknown chore {name!r}", field)
        if index[name] in out:
            raise DocumentError(f"chore {name!r} listed twice", field)
        out.add(index[name])
    return frozenset(out)


def _parse_cap(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise DocumentError(f"cap must be a nonnegative integer, got {value!r}", field)
    return value


def _parse_cost(doc, labels, index, field: str) -> CostOracle:
    if not isinstance(doc, dict):
        raise DocumentError("expected an object", field)
    ground = frozenset(range(len(labels)))
    family = doc.get("family")
    if family == "approval_cap":
        approved = _parse_chores(doc.get("approved"), index, f"{field}.approved")
        return ApprovalCapCost(ground, approved, _parse_cap(doc.get("cap"), f"{field}.cap"))
    if family == "partition_cap":
        cats = doc.get("categories")
        if not isinstance(cats, list):
            raise DocumentError("expected a list of categories", f"{field}.categories")
        parsed, seen = [], set()
        for k, cat in enumerate(cats):
            where = f"{field}.categories[{k}]"
            if not isinstance(cat, dict):
                raise DocumentError("expected an object", where)
            chores = _parse_chores(cat.get("chores"), index, f"{where}.chores")
            if seen & chores:
                raise DocumentError("categories overlap", where)
            seen |= chores
            parsed.append((chores, _parse_cap(cat.get("cap"), f"{where}.cap")))
        return PartitionCapCost(ground, tuple(parsed))
    if family == "explicit":
        costs = doc.get("costs")
        if not isinstance(costs, dict):
            raise DocumentError("expected an object keyed by subsets", f"{field}.costs")
        if len(labels) > MAX_EXPLICIT_CHORES:
            raise DocumentError(f"explicit tables support at most {MAX_EXPLICIT_CHORES} chores", field)
        table = {}
        for key, value in costs.items():
            names = key.split(",") if key else []
            subset = _parse_chores(names, index, f"{field}.costs[{key!r}]")
            if key != _set_key(labels, subset):
                raise DocumentError("subset keys must be sorted, comma-joined labels", f"{field}.costs[{key!r}]")
            if isinstance(value, bool) or not isinstance(value, int):
                raise DocumentError(f"cost must be an integer, got {value!r}", f"{field}.costs[{key!r}]")
            table[subset] = value
        if len(table) != 1 << len(labels):
            raise DocumentError(
                f"table has {len(table)} entries, a complete one has {1 << len(labels)}", f"{field}.costs"
            )
        oracle = ExplicitCost(ground, table)
        violation = validate_binary_supermodular(oracle)
        if violation is not None:
            where = f"S={{{_set_key(labels, violation.subset)}}}"
            if violation.chore is not None:
                where += f", o={labels[violation.chore]}"
            if violation.superset is not None:
                where += f", T={{{_set_key(labels, violation.superset)}}}"
            raise DocumentError(f"axiom ({violation.axiom}) violated at {where}: {violation}", field)
        return oracle
    raise DocumentError(f"unknown cost family {family!r}", f"{field}.family")


def instance_from_dict(doc) -> Instance:
    if not isinstance(doc, dict):
        raise DocumentError("instance document must be an object")
    if doc.get("version") != VERSION:
        raise DocumentError(f"unsupported version {doc.get('version')!r}", "version")
    labels = doc.get("chores")
    if not isinstance(labels, list) or not all(isinstance(x, str) and x for x in labels):
        raise DocumentError("expected a list of non-empty strings", "chores")
    if len(set(labels)) != len(labels):
        raise DocumentError("duplicate chore labels", "chores")
    if any("," in x for x in labels):
        raise DocumentError("labels may not contain commas", "chores")
    agents = doc.get("agents")
    if not isinstance(agents, list) or not agents:
        raise DocumentError("expected a non-empty list", "agents")
    index = {name: k for k, name in enumerate(labels)}
    weights, oracles = [], []
    for i, agent in enumerate(agents):
        where = f"agents[{i}]"
        if not isinstance(agent, dict):
            raise DocumentError("expected an object", where)
        w = parse_rational(agent.get("weight"), f"{where}.weight")
        if w <= 0:
            raise DocumentError(f"weight must be positive, got {w}", f"{where}.weight")
        weights.append(w)
        oracles.append(_parse_cost(agent.get("cost"), labels, index, f"{where}.cost"))
    return Instance(tuple(weights), tuple(oracles), tuple(labels))


def _cost_to_dict(oracle: CostOracle, labels) -> dict:
    def names(chores):
        return [labels[o] for o in sorted(chores)]

    if isinstance(oracle, ApprovalCapCost):
        return {"family": "approval_cap", "approved": names(oracle.approved), "cap": oracle.cap}
    if isinstance(oracle, PartitionCapCost):
        return {
            "family": "partition_cap",
            "categories": [{"chores": names(c), "cap": k} for c, k in oracle.categories],
        }
    if isinstance(oracle, ExplicitCost):
        m = len(labels)
        entries = sorted(
            (_set_key(labels, s), oracle.cost(s))
            for r in range(m + 1)
            for s in combinations(range(m), r)
        )
        return {"family": "explicit", "costs": dict(entries)}
    raise DocumentError(f"cannot serialize oracle of type {type(oracle).__name__}")


def instance_to_dict(instance: Instance) -> dict:
    return {
        "version": VERSION,
        "chores": list(instance.labels),
        "agents": [
            {"weight": format_rational(w), "cost": _cost_to_dict(oracle, instance.labels)}
            for w, oracle in zip(instance.weights, instance.oracles)
        ],
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None
    try:
        return instance_from_dict(doc)
    except DocumentError:
        raise
    except ChoreswapError as e:
        raise DocumentError(str(e)) from None


def serialize_instance(instance: Instance) -> str:
    return dumps(instance_to_dict(instance))


# -- results ------------------------------------------------------------------


def _value_to_json(value):
    if isinstance(value, tuple):
        return [format_rational(v) for v in value]
    if isinstance(value, float):
        return value
    return format_rational(value)


def result_to_dict(instance: Instance, criterion: Criterion, result: SwapResult, trace: bool = False) -> dict:
    labels = instance.labels
    u = utility_vector(instance, result.allocation)

    def names(chores):
        return [labels[o] for o in sorted(chores)]

    doc = {
        "version": VERSION,
        "criterion": {"name": criterion.name},
        "value": _value_to_json(criterion.value(u, instance.weights)),
        "allocation": [
            {
                "agent": i,
                "chores": names(result.allocation.bundles[i]),
                "clean": names(result.decomposition.clean.bundles[i]),
                "supplementary": names(result.decomposition.supplementary.bundles[i]),
            }
            for i in range(instance.n)
        ],
        "utilities": list(u),
        "weighted_utilities": [str(format_rational(e)) for e in weighted(u, instance.weights)],
    }
    if isinstance(criterion, WeightedPMalfare):
        p = criterion.p
        doc["criterion"]["p"] = p if isinstance(p, (int, float)) else format_rational(p)
    if trace:
        doc["trace"] = [
            {
                "iteration": s.iteration,
                "agent": s.agent,
                "chore": labels[s.chore],
                "gain": [v if isinstance(v, float) else str(format_rational(v)) for v in s.gain],
            }
            for s in result.trace
        ]
    return doc


def _gain_entry(v):
    return v if isinstance(v, float) else Fraction(v)


def result_from_dict(instance: Instance, doc) -> SwapResult:
    """Rebuild a solver result from its document, re-checking the decomposition."""
    if not isinstance(doc, dict) or doc.get("version") != VERSION:
        raise DocumentError("not a version-1 result document")
    index = {name: k for k, name in enumerate(instance.labels)}
    rows = doc.get("allocation")
    if not isinstance(rows, list) or len(rows) != instance.n:
        raise DocumentError(f"expected {instance.n} agent rows", "allocation")
    clean, extra, full = [], [], []
    for i, row in enumerate(rows):
        where = f"allocation[{i}]"
        clean.append(_parse_chores(row.get("clean"), index, f"{where}.clean"))
        extra.append(_parse_chores(row.get("supplementary"), index, f"{where}.supplementary"))
        full.append(_parse_chores(row.get("chores"), index, f"{where}.chores"))
    try:
        allocation = Allocation.from_bundles(instance.m, full)
        decomposition = Decomposition(
            Allocation.from_bundles(instance.m, clean), Allocation.from_bundles(instance.m, extra)
        )
    except ChoreswapError as e:
        raise DocumentError(str(e), "allocation") from None
    problems = check_decomposition(instance, decomposition, allocation)
    if problems:
        raise DocumentError("; ".join(problems), "allocation")
    trace = tuple(
        TraceStep(s["iteration"], s["agent"], index[s["chore"]], tuple(_gain_entry(v) for v in s["gain"]))
        for s in doc.get("trace", [])
    )
    return SwapResult(allocation, decomposition, trace)


# -- generator ----------------------------------------------------------------

ACCEPTANCE_WEIGHTS = (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2))


def skew_weights(skew: int) -> tuple[Fraction, ...]:
    """Weight pool for ``--weight-skew``: 0 gives all ones, k adds 2..k+1 and their inverses."""
    pool = [Fraction(1)]
    for a in range(2, skew + 2):
        pool += [Fraction(a), Fraction(1, a)]
    return tuple(pool)


def random_oracle(rng: random.Random, m: int, family: str) -> CostOracle:
    ground = frozenset(range(m))
    if family == "approval_cap":
        approved = frozenset(o for o in range(m) if rng.random() < 0.6)
        return ApprovalCapCost(ground, approved, rng.randint(0, len(approved)))
    if family == "partition_cap":
        t = rng.randint(1, max(1, min(4, m)))
        slots = [rng.randrange(t + 1) for _ in range(m)]  # slot t = uncategorized
        cats = []
        for k in range(t):
            chores = frozenset(o for o in range(m) if slots[o] == k)
            if chores:
                cats.append((chores, rng.randint(0, len(chores))))
        return PartitionCapCost(ground, tuple(cats))
    if family == "explicit":
        if m > MAX_EXPLICIT_CHORES:
            raise ValueError(f"explicit tables support at most {MAX_EXPLICIT_CHORES} chores")
        base = random_oracle(rng, m, rng.choice(("approval_cap", "partition_cap")))
        table = ExplicitCost.from_oracle(base)
        violation = validate_binary_supermodular(table)
        if violation is not None:
            raise AssertionError(f"generated table is invalid: {violation}")
        return table
    raise ValueError(f"unknown cost family {family!r}")


def random_instance(
    rng: random.Random,
    n: int,
    m: int,
    families: Sequence[str] = ("approval_cap", "partition_cap"),
    weights: Sequence[Fraction] = (Fraction(1),),
) -> Instance:
    if n < 1 or m < 0:
        raise ValueError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    oracles = tuple(random_oracle(rng, m, rng.choice(list(families))) for _ in range(n))
    return Instance(tuple(rng.choice(list(weights)) for _ in range(n)), oracles)
