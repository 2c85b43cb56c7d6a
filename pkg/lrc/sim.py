# lrc/sim.py

"""
Replay of node failures on a striped store.

Every (group, slot) coordinate is one storage node holding that coordinate for
all stripes. Events at the same time are applied together, then repairs run:
groups with a single lost node repair locally from their r neighbours, anything
left is tried with a global decode, and what still cannot be rebuilt waits for
the next batch of events.
"""

from __future__ import annotations
import itertools
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
import pandas as pd

from lrc.code_params import CodeSpec, spec_from_json, spec_to_json
from lrc.codec import Codeword, encode, global_decode, local_recover, msg_from_int
from lrc.config import DEFAULTS
from lrc.errors import InvalidScenario, InvariantViolation, LrcError

logger = logging.getLogger(__name__)

Node = Tuple[int, int]
KINDS = ("fail", "restore")


@dataclass(frozen=True)
class Event:
    time: int
    node: Node
    kind: str


@dataclass(frozen=True)
class Scenario:
    spec:    CodeSpec
    stripes: int
    events:  Tuple[Event, ...]
    seed:    int = DEFAULTS["default_seed"]


@dataclass
class SimReport:
    repairs_local:  int = 0
    repairs_global: int = 0
    symbols_read:   int = 0
    global_reads:   int = 0
    unrecoverable:  int = 0
    log:            List[Dict[str, Any]] = dc_field(default_factory=list)


def validate_scenario(sc: Scenario) -> None:
    spec = sc.spec
    if not spec.good:
        raise InvalidScenario("[scenario] spec is not a good split code")
    if sc.stripes < 1:
        raise InvalidScenario(f"[stripes={sc.stripes}] must be >= 1")
    last = None
    for ev in sc.events:
        if ev.kind not in KINDS:
            raise InvalidScenario(f"[t={ev.time}] unknown event kind {ev.kind!r}")
        g, k = ev.node
        if not (0 <= g < spec.ell and 0 <= k <= spec.r):
            raise InvalidScenario(f"[t={ev.time}] node {ev.node} outside ({spec.ell}, {spec.r + 1})")
        if ev.time < 0 or (last is not None and ev.time < last):
            raise InvalidScenario(f"[t={ev.time}] events must be time-ordered")
        last = ev.time


def _stripe_messages(spec: CodeSpec, stripes: int, seed: int) -> List[int]:
    rng = np.random.default_rng(seed)
    nbytes = (spec.size.bit_length() + 7) // 8 + 8
    return [int.from_bytes(rng.bytes(nbytes), "big") % spec.size for _ in range(stripes)]


def _map(fn, items: Sequence[Any], threads: int) -> List[Any]:
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _solvable_groups(spec: CodeSpec, down: Set[Node]) -> List[int]:
    lost = [sum((g, k) in down for k in range(spec.r + 1)) for g in range(spec.ell)]
    return [g for g in range(spec.ell) if spec.r + 1 - lost[g] >= spec.r]


def run_scenario(sc: Scenario, *, threads: int = DEFAULTS["default_threads"]) -> SimReport:
    """
    Deterministic replay of `sc`; the same scenario gives the same report for any
    thread count.

    Raises:
        InvalidScenario: malformed scenario or a spec that is not good
    """
    validate_scenario(sc)
    spec = sc.spec
    r = spec.r
    originals = [encode(spec, msg_from_int(spec, v)) for v in _stripe_messages(spec, sc.stripes, sc.seed)]
    report = SimReport()
    down: Set[Node] = set()

    def entry(time: int, node: Optional[Node], kind: str, action: str, read: int = 0) -> None:
        report.log.append({
            "time":         time,
            "node":         None if node is None else list(node),
            "kind":         kind,
            "action":       action,
            "symbols_read": read,
        })

    def views() -> List[Codeword]:
        return [cw.erase_many(sorted(down)) for cw in originals]

    for time, batch in itertools.groupby(sc.events, key=lambda ev: ev.time):
        for ev in batch:
            if ev.kind == "fail":
                if ev.node in down:
                    entry(time, ev.node, "fail", "noop")
                else:
                    down.add(ev.node)
                    entry(time, ev.node, "fail", "failed")
            else:
                if ev.node in down:
                    down.discard(ev.node)
                    entry(time, ev.node, "restore", "restored")
                else:
                    entry(time, ev.node, "restore", "noop")

        if not down:
            continue

        # ─── local repairs: groups with exactly one lost node ───
        for g in range(spec.ell):
            lost = [(g, k) for k in range(r + 1) if (g, k) in down]
            if len(lost) != 1:
                continue
            node = lost[0]
            current = views()
            rebuilt = _map(lambda cw: local_recover(spec, cw, node[0], node[1]), current, threads)
            for cw, sym in zip(originals, rebuilt):
                if sym != cw.symbols[node[0]][node[1]]:
                    raise InvariantViolation(f"[t={time}] local repair of {node} returned a wrong symbol")
            down.discard(node)
            report.repairs_local += sc.stripes
            report.symbols_read += r * sc.stripes
            entry(time, node, "repair", "local", r * sc.stripes)

        if not down:
            continue

        # ─── global decode for whatever is left ───
        solvable = _solvable_groups(spec, down)
        reads = sum(1 for g in solvable for k in range(r + 1) if (g, k) not in down)
        current = views()

        def decode(cw: Codeword) -> Optional[Codeword]:
            try:
                return encode(spec, global_decode(spec, cw))
            except LrcError as exc:
                logger.debug(f"[t={time}] global decode failed: {exc}")
                return None

        decoded = _map(decode, current, threads)
        if any(d is None for d in decoded):
            for node in sorted(down):
                entry(time, node, "repair", "deferred")
            continue
        for cw, again in zip(originals, decoded):
            if again.symbols != cw.symbols:
                raise InvariantViolation(f"[t={time}] global decode rebuilt a different stripe")
        repaired = sorted(down)
        down.clear()
        report.repairs_global += len(repaired) * sc.stripes
        report.global_reads += reads * sc.stripes
        report.symbols_read += reads * sc.stripes
        for node in repaired:
            entry(time, node, "repair", "global")
        entry(time, None, "repair", "global-read", reads * sc.stripes)

    report.unrecoverable = len(down)
    logger.info(f"[sim] local={report.repairs_local} global={report.repairs_global} "
                f"read={report.symbols_read} unrecoverable={report.unrecoverable}")
    return report


def random_scenario(spec: CodeSpec,
                    stripes: int,
                    failures: int,
                    seed: int = DEFAULTS["default_seed"],
                    *,
                    max_burst: int = 3) -> Scenario:
    """Seeded timeline of failure bursts (1..max_burst nodes at once) and occasional restores."""
    rng = np.random.default_rng(seed)
    nodes = [(g, k) for g in range(spec.ell) for k in range(spec.r + 1)]
    events: List[Event] = []
    for t in range(failures):
        burst = int(rng.integers(1, max_burst + 1))
        picks = rng.choice(len(nodes), size=min(burst, len(nodes)), replace=False)
        for idx in sorted(int(i) for i in picks):
            events.append(Event(t, nodes[idx], "fail"))
        if rng.random() < 0.25:
            events.append(Event(t, nodes[int(rng.integers(len(nodes)))], "restore"))
    return Scenario(spec=spec, stripes=stripes, events=tuple(events), seed=seed)


# ─── JSON ──────────────────────────────────────────────────────────────

def scenario_to_json(sc: Scenario) -> Dict[str, Any]:
    return {
        "spec":    spec_to_json(sc.spec),
        "stripes": sc.stripes,
        "seed":    sc.seed,
        "events":  [{"time": ev.time, "node": list(ev.node), "kind": ev.kind} for ev in sc.events],
    }


def scenario_from_json(obj: Dict[str, Any], base_dir: Optional[Path] = None) -> Scenario:
    """`spec` is either an inline CodeSpec object or a path relative to base_dir."""
    try:
        spec_obj = obj["spec"]
        if isinstance(spec_obj, str):
            path = Path(spec_obj)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            spec_obj = json.loads(path.read_text())
        spec = spec_from_json(spec_obj)
        events = tuple(
            Event(int(e["time"]), (int(e["node"][0]), int(e["node"][1])), str(e["kind"]))
            for e in obj["events"]
        )
        sc = Scenario(spec=spec, stripes=int(obj.get("stripes", 1)), events=events,
                      seed=int(obj.get("seed", DEFAULTS["default_seed"])))
    except LrcError:
        raise
    except (KeyError, TypeError, ValueError, IndexError, OSError) as exc:
        raise InvalidScenario(f"[scenario json] {exc}") from exc
    validate_scenario(sc)
    return sc


def report_to_json(report: SimReport) -> Dict[str, Any]:
    return {
        "repairs_local":  report.repairs_local,
        "repairs_global": report.repairs_global,
        "symbols_read":   report.symbols_read,
        "global_reads":   report.global_reads,
        "unrecoverable":  report.unrecoverable,
        "log":            report.log,
    }


def log_table(report: SimReport) -> pd.DataFrame:
    return pd.DataFrame(report.log, columns=["time", "node", "kind", "action", "symbols_read"])
