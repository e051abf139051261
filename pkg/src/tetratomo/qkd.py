"""Source-controlled key distribution with a posteriori grant or denial.

Charles owns a singlet source.  For every pair he secretly displaces Bob's
qubit by one of ``I, sigma_z, sigma_x, sigma_y`` chosen uniformly, which turns
the singlet into one of the four Bell states.  Alice and Bob measure their
tetrahedron POVMs.  Pooled over Charles's choices their data is uncorrelated;
if Charles later announces his choices, Bob relabels his outcomes and the
pair recovers singlet anti-correlations.

The three parties are separate objects that only talk through a
:class:`Channel` carrying explicit message records.
"""
import json
import math
from collections import defaultdict, deque
from dataclasses import asdict, dataclass, field

import numpy as np

from .correlations import pauli_permutation
from .errors import MissingAnnouncements, OutOfRange
from .pauli import LABELS, bell_state
from .sim import STREAM_VERSION, CountTable, estimate, joint_table, with_white_noise
from .wigner import W_TA_PSI_MINUS, W_TT_PSI_MINUS

CONFIG_PARITIES = {"TT": ("even", "even"), "TA": ("even", "odd")}
DEFAULT_ALARM_THRESHOLD = 0.95


@dataclass(frozen=True)
class SessionParams:
    pairs: int
    grant: bool = True
    noise: float | None = None  # Werner visibility; None means a noiseless source
    seed: int = 0
    config: str = "TT"

    def __post_init__(self):
        if self.pairs < 1:
            raise ValueError("a session needs at least one pair")
        if self.config not in CONFIG_PARITIES:
            raise ValueError(f"config must be 'TT' or 'TA', not {self.config!r}")
        if self.noise is not None and not 0.0 <= self.noise <= 1.0:
            raise OutOfRange(f"visibility must lie in [0, 1], got {self.noise}")


# --- messages and transport ----------------------------------------------------

@dataclass(frozen=True)
class PairDelivery:
    round: int
    half: object


@dataclass(frozen=True)
class OutcomeRecord:
    round: int
    party: str
    outcome: int


@dataclass(frozen=True)
class Announcement:
    round: int
    choice: tuple


class Channel:
    """In-process mailbox keyed by recipient name."""

    def __init__(self):
        self._boxes = defaultdict(deque)

    def send(self, recipient: str, message) -> None:
        self._boxes[recipient].append(message)

    def drain(self, recipient: str) -> list:
        box = self._boxes[recipient]
        out = list(box)
        box.clear()
        return out


class _PairStatistics:
    """Cumulative tables for sampling one side and then the other conditionally."""

    def __init__(self, p: np.ndarray):
        self.marginal_a = _cumulative(p.sum(axis=1))
        self.marginal_b = _cumulative(p.sum(axis=0))
        self.given_a = [_cumulative(row) if row.sum() > 0 else None for row in p]
        self.given_b = [_cumulative(col) if col.sum() > 0 else None for col in p.T]


def _cumulative(w: np.ndarray) -> np.ndarray:
    c = np.cumsum(w / w.sum())
    c[-1] = 1.0
    return c


def _draw(cum: np.ndarray, u: float) -> int:
    # zero-width cells can never be selected
    return int(np.searchsorted(cum, u, side="right"))


class EntangledPair:
    """Shared state of one emitted pair; the first measurement fixes the joint outcome law."""

    def __init__(self, stats: _PairStatistics, rng: np.random.Generator):
        self._stats = stats
        self._rng = rng
        self._first = None

    def measure(self, side: str) -> int:
        u = self._rng.random()
        if self._first is None:
            cum = self._stats.marginal_a if side == "a" else self._stats.marginal_b
            outcome = _draw(cum, u)
            self._first = (side, outcome)
            return outcome
        first_side, first_outcome = self._first
        if first_side == side:
            raise RuntimeError("each half of a pair is measured once")
        table = self._stats.given_a if first_side == "a" else self._stats.given_b
        return _draw(table[first_outcome], u)


@dataclass(frozen=True)
class PairHalf:
    pair: EntangledPair
    side: str


# --- parties -------------------------------------------------------------------

class Charles:
    def __init__(self, params: SessionParams, choice_rng, nature_rng):
        self.params = params
        self._choice_rng = choice_rng
        self._nature_rng = nature_rng
        self._choices = []
        parity_a, parity_b = CONFIG_PARITIES[params.config]
        self._stats = []
        for lab in LABELS:
            rho = bell_state(lab)
            if params.noise is not None:
                rho = with_white_noise(rho, params.noise)
            self._stats.append(_PairStatistics(joint_table(rho, parity_a, parity_b).p))

    def emit(self, rnd: int, channel: Channel) -> None:
        c = int(self._choice_rng.integers(4))
        self._choices.append(LABELS[c])
        pair = EntangledPair(self._stats[c], self._nature_rng)
        channel.send("alice", PairDelivery(rnd, PairHalf(pair, "a")))
        channel.send("bob", PairDelivery(rnd, PairHalf(pair, "b")))

    def announce(self, channel: Channel) -> None:
        for rnd, choice in enumerate(self._choices):
            for who in ("alice", "bob"):
                channel.send(who, Announcement(rnd, choice))

    @property
    def secret_choices(self) -> list:
        return list(self._choices)


class Observer:
    """Alice or Bob: measures delivered halves and keeps outcome records."""

    def __init__(self, name: str):
        self.name = name
        self.records = []
        self.announcements = {}

    def process(self, channel: Channel) -> None:
        for msg in channel.drain(self.name):
            if isinstance(msg, PairDelivery):
                outcome = msg.half.pair.measure(msg.half.side)
                self.records.append(OutcomeRecord(msg.round, self.name, outcome))
            elif isinstance(msg, Announcement):
                self.announcements[msg.round] = msg.choice

    def outcomes(self) -> list:
        return [r.outcome for r in sorted(self.records, key=lambda r: r.round)]


# --- sessions ------------------------------------------------------------------

@dataclass
class SessionTranscript:
    alice_outcomes: list
    bob_outcomes: list
    charles_choices: list
    announcements: list = None
    metadata: dict = field(default_factory=dict)

    @property
    def pairs(self) -> int:
        return len(self.alice_outcomes)

    @property
    def config(self) -> str:
        return self.metadata.get("params", {}).get("config", "TT")

    def to_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "alice_outcomes": self.alice_outcomes,
            "bob_outcomes": self.bob_outcomes,
            "charles_choices": [list(c) for c in self.charles_choices],
            "announcements": None if self.announcements is None else [list(c) for c in self.announcements],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "SessionTranscript":
        ann = d.get("announcements")
        return cls(
            alice_outcomes=list(d["alice_outcomes"]),
            bob_outcomes=list(d["bob_outcomes"]),
            charles_choices=[tuple(c) for c in d["charles_choices"]],
            announcements=None if ann is None else [tuple(c) for c in ann],
            metadata=d.get("metadata", {}),
        )


def run_session(params: SessionParams) -> SessionTranscript:
    choice_seq, nature_seq = np.random.SeedSequence(params.seed).spawn(2)
    choice_rng = np.random.Generator(np.random.PCG64(choice_seq))
    nature_rng = np.random.Generator(np.random.PCG64(nature_seq))
    channel = Channel()
    charles = Charles(params, choice_rng, nature_rng)
    alice = Observer("alice")
    bob = Observer("bob")
    for rnd in range(params.pairs):
        charles.emit(rnd, channel)
        alice.process(channel)
        bob.process(channel)
    if params.grant:
        charles.announce(channel)
        alice.process(channel)
        bob.process(channel)
        announcements = [bob.announcements[r] for r in range(params.pairs)]
    else:
        announcements = None
    return SessionTranscript(
        alice_outcomes=alice.outcomes(),
        bob_outcomes=bob.outcomes(),
        charles_choices=charles.secret_choices,
        announcements=announcements,
        metadata={"params": asdict(params), "stream": STREAM_VERSION},
    )


_INVERSE_RELABEL = {}
for _lab in LABELS:
    _m = pauli_permutation(_lab).mapping
    _INVERSE_RELABEL[_lab] = tuple(_m.index(v) for v in range(4))


def unscramble(transcript: SessionTranscript) -> list:
    """Bob's outcomes relabelled by the inverse of each announced displacement's permutation."""
    if transcript.announcements is None:
        raise MissingAnnouncements("the session was not granted; nothing to unscramble")
    return [_INVERSE_RELABEL[tuple(c)][b] for c, b in zip(transcript.announcements, transcript.bob_outcomes)]


def contingency(xs, ys, nx: int = 4, ny: int = 4) -> np.ndarray:
    table = np.zeros((nx, ny), dtype=np.int64)
    np.add.at(table, (np.asarray(xs, dtype=int), np.asarray(ys, dtype=int)), 1)
    return table


def mutual_information(table) -> float:
    """Plug-in Shannon mutual information in bits of a 2-D table of counts or probabilities."""
    p = np.asarray(table, dtype=float)
    p = p / p.sum()
    pa = p.sum(axis=1, keepdims=True)
    pb = p.sum(axis=0, keepdims=True)
    mask = p > 0
    return float(np.sum(p[mask] * np.log2(p[mask] / (pa @ pb)[mask])))


def plugin_bias(n: int, na: int = 4, nb: int = 4) -> float:
    """First-order upward bias of the plug-in MI estimate, in bits."""
    return (na - 1) * (nb - 1) / (2 * n * math.log(2))


def capability_report(transcript: SessionTranscript) -> dict:
    alice = transcript.alice_outcomes
    charles = [2 * i + j for i, j in transcript.charles_choices]
    pre = mutual_information(contingency(alice, transcript.bob_outcomes))
    post = None
    if transcript.announcements is not None:
        post = mutual_information(contingency(alice, unscramble(transcript)))
    return {
        "pairs": transcript.pairs,
        "pre_announcement_mi": pre,
        "post_announcement_mi": post,
        "charles_alice_mi": mutual_information(contingency(charles, alice)),
        "plugin_bias": plugin_bias(transcript.pairs),
    }


@dataclass(frozen=True)
class TomographicCheck:
    W_hat: object
    fidelity: float
    alarm: bool
    rounds: int
    threshold: float


def tomographic_check(transcript: SessionTranscript, sacrifice_fraction: float,
                      threshold: float = DEFAULT_ALARM_THRESHOLD) -> TomographicCheck:
    """Estimate the shared state from a sacrificed prefix of relabelled rounds."""
    if not 0.0 < sacrifice_fraction <= 1.0:
        raise ValueError("sacrifice_fraction must lie in (0, 1]")
    bob = unscramble(transcript)
    n = math.ceil(sacrifice_fraction * transcript.pairs)
    parities = CONFIG_PARITIES[transcript.config]
    counts = CountTable(contingency(transcript.alice_outcomes[:n], bob[:n]), *parities)
    est = estimate(counts)
    ref = W_TT_PSI_MINUS if transcript.config == "TT" else W_TA_PSI_MINUS
    f = est.fidelity_vs(ref)
    return TomographicCheck(est.W_hat, f, f < threshold, n, threshold)
