"""In-process producer / broker / consumer pipeline with integrity checks.

Producers stamp every event with a fresh identifier and publish it to a
partitioned, append-only topic; the partition is picked by hashing the
identifier string (CRC-32, fixed and replayable) modulo the partition count.
Consumers in one group drain the partitions through per-partition offsets,
so each event is delivered at most once per group, and store the events in
a sink that counts duplicate identifiers. After the run the per-partition
logs can be checked for per-producer ordering violations.

Two execution modes share all of the above: a threaded mode where producers
and consumers run concurrently against real time, and a deterministic mode
that steps everything round-robin on a virtual millisecond clock so a seed
reproduces the full report bit for bit.
"""

from __future__ import annotations

import threading
import time
import zlib
from dataclasses import dataclass, field

from . import codec
from .core import (
    FixedClock,
    IdScheme,
    MonotonicState,
    RandomOverflow,
    SeededEntropy,
    SystemClock,
    UnsupportedScheme,
    generate_uuidv4,
    generate_uuidv7,
    next_monotonic_ulid,
)
from .bench import bandwidth_mbps, serialized_size

__all__ = [
    "Event",
    "Topic",
    "Sink",
    "SimConfig",
    "SimReport",
    "OrderingViolation",
    "OrderingReport",
    "TopicClosed",
    "UnknownPartition",
    "partition_for",
    "publish",
    "consume",
    "run_simulation",
    "verify_ordering",
    "SIM_CSV_HEADER",
]

# Epoch for the deterministic mode's virtual clock (fixed, arbitrary).
_VIRTUAL_EPOCH_MS = 1_700_000_000_000

_CONSUME_BATCH = 256

SIM_CSV_HEADER = (
    "scheme,producers,partitions,events_total,consumed_total,stored_total,"
    "unique_ids,duplicate_count,ordering_violations,overflow_waits,"
    "elapsed_seconds,effective_mbps"
)


class TopicClosed(RuntimeError):
    """Publish attempted after the topic stopped accepting events."""


class UnknownPartition(ValueError):
    pass


@dataclass(slots=True, frozen=True)
class Event:
    """One simulated message: serialized identifier plus provenance."""

    id: str
    producer: int
    seq: int
    produced_at: int
    payload_bytes: int


def partition_for(id_text: str, partitions: int) -> int:
    """CRC-32 of the identifier string modulo the partition count."""
    return zlib.crc32(id_text.encode("ascii")) % partitions


class Topic:
    """Append-only partitioned log with per-group consumer offsets."""

    def __init__(self, name: str, partitions: int):
        if partitions < 1:
            raise ValueError("partitions must be >= 1")
        self.name = name
        self.partitions = partitions
        self._logs: list[list[Event]] = [[] for _ in range(partitions)]
        self._append_locks = [threading.Lock() for _ in range(partitions)]
        self._offsets: dict[tuple[str, int], int] = {}
        self._offsets_lock = threading.Lock()
        self._closed = False

    def publish(self, event: Event) -> tuple[int, int]:
        """Append atomically; returns (partition, offset)."""
        if self._closed:
            raise TopicClosed(f"topic {self.name!r} is closed")
        p = partition_for(event.id, self.partitions)
        with self._append_locks[p]:
            log = self._logs[p]
            log.append(event)
            return p, len(log) - 1

    def consume(self, group: str, partition: int, max_events: int) -> list[Event]:
        """Next batch for the group, advancing its offset; never re-delivers."""
        if not 0 <= partition < self.partitions:
            raise UnknownPartition(f"partition {partition} not in [0, {self.partitions})")
        key = (group, partition)
        log = self._logs[partition]
        with self._offsets_lock:
            start = self._offsets.get(key, 0)
            end = min(len(log), start + max_events)
            self._offsets[key] = end
        return log[start:end]

    def close(self) -> None:
        self._closed = True

    @property
    def closed(self) -> bool:
        return self._closed

    def end_offset(self, partition: int) -> int:
        return len(self._logs[partition])

    def committed(self, group: str, partition: int) -> int:
        with self._offsets_lock:
            return self._offsets.get((group, partition), 0)

    def partition_log(self, partition: int) -> tuple[Event, ...]:
        """Immutable view of one partition, for post-run verification."""
        return tuple(self._logs[partition])


class Sink:
    """Uniqueness-checking event store standing in for the database.

    Counts every insertion whose identifier was already present. Optionally
    appends each identifier to a file, one per line.
    """

    def __init__(self, persist_path=None):
        self._lock = threading.Lock()
        self.stored: dict[str, tuple[int, int]] = {}
        self.duplicate_count = 0
        self.insertions = 0
        self.payload_bits = 0
        self._file = open(persist_path, "w", encoding="ascii") if persist_path else None

    def store(self, events) -> None:
        with self._lock:
            for e in events:
                if e.id in self.stored:
                    self.duplicate_count += 1
                else:
                    self.stored[e.id] = (e.producer, e.seq)
                self.insertions += 1
                self.payload_bits += e.payload_bytes * 8
                if self._file is not None:
                    self._file.write(e.id + "\n")

    def close(self) -> None:
        if self._file is not None:
            self._file.close()
            self._file = None


def publish(topic: Topic, event: Event) -> tuple[int, int]:
    return topic.publish(event)


def consume(topic: Topic, group: str, partition: int, max_events: int) -> list[Event]:
    return topic.consume(group, partition, max_events)


@dataclass
class SimConfig:
    """Knobs of one pipeline run. ``produce_interval`` is seconds, 0 = flat out."""

    scheme: IdScheme
    producers: int = 4
    events_per_producer: int = 1000
    partitions: int = 4
    consumers: int = 4
    produce_interval: float = 0.0
    seed: int = 0
    bytes_per_char: int = 2
    deterministic: bool = False
    persist_path: str | None = None

    def __post_init__(self):
        for name in ("producers", "events_per_producer", "partitions", "consumers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.produce_interval < 0:
            raise ValueError("produce_interval must be >= 0")


@dataclass(frozen=True)
class SimReport:
    """Exact totals of one run. Ordering fields apply to time-ordered schemes."""

    scheme: IdScheme
    producers: int
    partitions: int
    events_total: int
    consumed_total: int
    stored_total: int
    unique_ids: int
    duplicate_count: int
    ordering_checked: bool
    ordering_violations: int
    overflow_waits: int
    elapsed_seconds: float
    effective_mbps: float

    @property
    def per_partition_order_ok(self) -> bool:
        return self.ordering_checked and self.ordering_violations == 0

    @property
    def conserved(self) -> bool:
        return self.events_total == self.consumed_total == self.stored_total

    def render_text(self) -> str:
        lines = [
            f"scheme              {self.scheme.cli_name}",
            f"producers           {self.producers}",
            f"partitions          {self.partitions}",
            f"events published    {self.events_total}",
            f"events consumed     {self.consumed_total}",
            f"events stored       {self.stored_total}",
            f"unique ids          {self.unique_ids}",
            f"duplicate count     {self.duplicate_count}",
        ]
        if self.ordering_checked:
            lines.append(f"ordering violations {self.ordering_violations}")
        if self.overflow_waits:
            lines.append(f"overflow waits      {self.overflow_waits}")
        lines.append(f"elapsed seconds     {self.elapsed_seconds:.6f}")
        lines.append(f"effective mbps      {self.effective_mbps:.6f}")
        return "\n".join(lines) + "\n"

    def render_csv(self) -> str:
        ordering = str(self.ordering_violations) if self.ordering_checked else ""
        row = (
            f"{self.scheme.cli_name},{self.producers},{self.partitions},"
            f"{self.events_total},{self.consumed_total},{self.stored_total},"
            f"{self.unique_ids},{self.duplicate_count},{ordering},"
            f"{self.overflow_waits},{self.elapsed_seconds!r},{self.effective_mbps!r}"
        )
        return SIM_CSV_HEADER + "\n" + row + "\n"


@dataclass(frozen=True)
class OrderingViolation:
    partition: int
    producer: int
    position: int
    previous_id: str
    id: str


@dataclass(frozen=True)
class OrderingReport:
    pairs_checked: int
    violations: tuple[OrderingViolation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_ordering(partition_logs, scheme: IdScheme) -> OrderingReport:
    """Check per-producer subsequences inside each partition for sortedness.

    Within one partition, events of one producer must appear with identifier
    string order matching sequence order (the codecs preserve numeric order,
    so string comparison is the time comparison). UUIDv4 has no ordering
    claim to check and is rejected.
    """
    if not scheme.time_ordered:
        raise UnsupportedScheme("ordering verification needs a time-ordered scheme")
    violations = []
    pairs = 0
    for p, log in enumerate(partition_logs):
        last_seen: dict[int, str] = {}
        for pos, event in enumerate(log):
            prev = last_seen.get(event.producer)
            if prev is not None:
                pairs += 1
                if event.id < prev:
                    violations.append(
                        OrderingViolation(p, event.producer, pos, prev, event.id)
                    )
            last_seen[event.producer] = event.id
    return OrderingReport(pairs_checked=pairs, violations=tuple(violations))


class _Producer:
    """Identifier-stamping event source; one per simulated node.

    Owns its seed-derived randomness and, for ULID, its monotonic state, so
    producers share nothing and never coordinate.
    """

    def __init__(self, index: int, cfg: SimConfig, clock):
        self.index = index
        self.clock = clock
        self.rng = SeededEntropy(cfg.seed + index)
        self.state = MonotonicState()
        self.scheme = cfg.scheme
        self.payload_bytes = serialized_size(cfg.scheme, cfg.bytes_per_char)
        self.overflow_waits = 0

    def _next_value(self) -> int:
        if self.scheme is IdScheme.ULID:
            return next_monotonic_ulid(self.state, self.clock, self.rng)
        if self.scheme is IdScheme.UUID_V7:
            return generate_uuidv7(self.clock, self.rng)
        return generate_uuidv4(self.rng)

    def make_event(self, seq: int) -> Event:
        while True:
            try:
                value = self._next_value()
                break
            except RandomOverflow:
                self.overflow_waits += 1
                self._wait_next_millisecond()
        if self.scheme is IdScheme.ULID:
            text = codec.ulid_encode(value)
            produced_at = value >> 80
        else:
            text = codec.uuid_format(value)
            produced_at = value >> 80 if self.scheme is IdScheme.UUID_V7 else self.clock.now()
        return Event(text, self.index, seq, produced_at, self.payload_bytes)

    def _wait_next_millisecond(self) -> None:
        if isinstance(self.clock, FixedClock):
            self.clock.advance(1)
            return
        while self.clock.now() <= self.state.last_ts:
            time.sleep(0.0002)


def run_simulation(cfg: SimConfig) -> SimReport:
    """Run the pipeline to completion and return exact totals."""
    runner = _run_deterministic if cfg.deterministic else _run_threaded
    return runner(cfg)


def _build_report(cfg, topic, sink, consumed_total, overflow_waits, elapsed) -> SimReport:
    events_total = sum(topic.end_offset(p) for p in range(topic.partitions))
    if cfg.scheme.time_ordered:
        logs = [topic.partition_log(p) for p in range(topic.partitions)]
        ordering = verify_ordering(logs, cfg.scheme)
        ordering_checked, ordering_violations = True, len(ordering.violations)
    else:
        ordering_checked, ordering_violations = False, 0
    return SimReport(
        scheme=cfg.scheme,
        producers=cfg.producers,
        partitions=cfg.partitions,
        events_total=events_total,
        consumed_total=consumed_total,
        stored_total=sink.insertions,
        unique_ids=len(sink.stored),
        duplicate_count=sink.duplicate_count,
        ordering_checked=ordering_checked,
        ordering_violations=ordering_violations,
        overflow_waits=overflow_waits,
        elapsed_seconds=elapsed,
        effective_mbps=bandwidth_mbps(sink.payload_bits, elapsed),
    )


def _run_threaded(cfg: SimConfig) -> SimReport:
    topic = Topic("events", cfg.partitions)
    sink = Sink(cfg.persist_path)
    group = "sim"
    done = threading.Event()
    consumed_counts = [0] * cfg.consumers

    def produce(producer: _Producer):
        for seq in range(cfg.events_per_producer):
            topic.publish(producer.make_event(seq))
            if cfg.produce_interval > 0:
                time.sleep(cfg.produce_interval)

    def consume_loop(idx: int, my_partitions: list[int]):
        total = 0
        while True:
            progressed = False
            for p in my_partitions:
                batch = topic.consume(group, p, _CONSUME_BATCH)
                if batch:
                    sink.store(batch)
                    total += len(batch)
                    progressed = True
            if not progressed:
                if done.is_set() and all(
                    topic.committed(group, p) >= topic.end_offset(p) for p in my_partitions
                ):
                    break
                time.sleep(0.0002)
        consumed_counts[idx] = total

    producers = [_Producer(i, cfg, SystemClock()) for i in range(cfg.producers)]
    producer_threads = [
        threading.Thread(target=produce, args=(p,), name=f"producer-{p.index}")
        for p in producers
    ]
    consumer_threads = [
        threading.Thread(
            target=consume_loop,
            args=(i, [p for p in range(cfg.partitions) if p % cfg.consumers == i]),
            name=f"consumer-{i}",
        )
        for i in range(cfg.consumers)
    ]

    start = time.perf_counter()
    for t in consumer_threads + producer_threads:
        t.start()
    for t in producer_threads:
        t.join()
    topic.close()
    done.set()
    for t in consumer_threads:
        t.join()
    elapsed = time.perf_counter() - start
    sink.close()

    return _build_report(
        cfg, topic, sink, sum(consumed_counts), sum(p.overflow_waits for p in producers), elapsed
    )


def _run_deterministic(cfg: SimConfig) -> SimReport:
    """Round-robin single-threaded run on a virtual millisecond clock."""
    topic = Topic("events", cfg.partitions)
    sink = Sink(cfg.persist_path)
    group = "sim"
    clock = FixedClock(_VIRTUAL_EPOCH_MS)
    producers = [_Producer(i, cfg, clock) for i in range(cfg.producers)]
    assignments = [
        [p for p in range(cfg.partitions) if p % cfg.consumers == i]
        for i in range(cfg.consumers)
    ]

    consumed_total = 0
    sequences = [0] * cfg.producers
    rounds = 0
    remaining = cfg.producers * cfg.events_per_producer
    while remaining:
        for producer in producers:
            seq = sequences[producer.index]
            if seq < cfg.events_per_producer:
                topic.publish(producer.make_event(seq))
                sequences[producer.index] = seq + 1
                remaining -= 1
        for my_partitions in assignments:
            for p in my_partitions:
                batch = topic.consume(group, p, _CONSUME_BATCH)
                sink.store(batch)
                consumed_total += len(batch)
        clock.advance(1)
        rounds += 1
    topic.close()
    while any(
        topic.committed(group, p) < topic.end_offset(p) for p in range(cfg.partitions)
    ):
        for my_partitions in assignments:
            for p in my_partitions:
                batch = topic.consume(group, p, _CONSUME_BATCH)
                sink.store(batch)
                consumed_total += len(batch)
        rounds += 1
    sink.close()

    elapsed = rounds / 1000.0  # one virtual millisecond per round
    return _build_report(
        cfg, topic, sink, consumed_total, sum(p.overflow_waits for p in producers), elapsed
    )
