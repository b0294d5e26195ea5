"""Steps between k-trees, and the fusion and compression of state sequences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Sequence, TypeVar

from ..errors import SequenceError
from ..properties.concordance import concordant_sequences
from ..properties.sequences import Lasso
from ..tableau.premodel import PreModel
from .trees import KTree, TreeVerdict

T = TypeVar("T", bound=Hashable)

STEP_CLAUSES = ("domain", "start", "advance", "interior", "target", "concordance", "progress")


@dataclass(frozen=True)
class TreeStep:
    """source ->_f target, with f given as a mapping from source states to sequences."""

    source: KTree
    target: KTree
    f: Mapping[int, tuple[int, ...]]

    def endpoint(self, state_id: int) -> int:
        return self.f[state_id][-1]

    def moved(self) -> list[int]:
        return sorted(s for s, seq in self.f.items() if len(seq) > 1)


def check_tree_step(pm: PreModel, step: TreeStep) -> TreeVerdict:
    if set(step.f) != set(step.source.states):
        return TreeVerdict(False, "domain", "f must be defined on exactly the source states")
    for s in step.source.ordered():
        seq = step.f[s]
        if not seq or seq[0] != s:
            return TreeVerdict(False, "start", f"f(s{s}) does not start at s{s}")
        for a, b in zip(seq, seq[1:]):
            if b not in pm.successors.get(a, ()):
                return TreeVerdict(False, "advance", f"s{a} -> s{b} is not a step")
        for t in seq[:-1]:
            if t not in step.source:
                return TreeVerdict(False, "interior", f"s{t} in f(s{s}) is outside the source tree")
        if seq[-1] not in step.target:
            return TreeVerdict(False, "target", f"f(s{s}) ends outside the target tree")
    ordered = step.source.ordered()
    for agent in range(1, pm.agents + 1):
        related = lambda a, b, agent=agent: pm.related(a, b, agent)  # noqa: E731
        for x, s in enumerate(ordered):
            for s2 in ordered[x + 1 :]:
                if pm.related(s, s2, agent) and not concordant_sequences(step.f[s], step.f[s2], related):
                    return TreeVerdict(
                        False, "concordance", f"f(s{s}) and f(s{s2}) are not concordant for agent {agent}"
                    )
    if not step.moved():
        return TreeVerdict(False, "progress", "every f(s) has length 1")
    return TreeVerdict(True)


def check_step_chain(pm: PreModel, steps: Sequence[TreeStep]) -> TreeVerdict:
    """Each step valid and each target the next step's source."""
    for position, step in enumerate(steps):
        if position and steps[position - 1].target != step.source:
            return TreeVerdict(False, "chain", f"step {position} does not start where step {position - 1} ends")
        verdict = check_tree_step(pm, step)
        if not verdict:
            return TreeVerdict(False, verdict.clause, f"step {position}: {verdict.detail}")
    return TreeVerdict(True)


def fusion(a: Sequence[T], b: Sequence[T]) -> tuple[T, ...]:
    """a without its last element, followed by b; defined when a ends where b starts."""
    if not a or not b:
        raise SequenceError("fusion needs two nonempty sequences")
    if a[-1] != b[0]:
        raise SequenceError(f"cannot fuse: {a[-1]!r} is not {b[0]!r}")
    return tuple(a[:-1]) + tuple(b)


def _next_position(word: Sequence[T], h: int, advance: Callable[[T, T], bool], limit: int) -> int | None:
    """Least h' > h with word[h'-1] -> word[h'] and word[h..h'-1] constant."""
    for candidate in range(h + 1, limit):
        if word[candidate - 1] != word[h]:
            return None
        if advance(word[candidate - 1], word[candidate]):
            return candidate
    return None


def compression(seq: Sequence[T], advance: Callable[[T, T], bool]) -> tuple[T, ...]:
    """Compression of a finite sequence: stutters are dropped, genuine steps kept."""
    if not seq:
        return ()
    result = [seq[0]]
    h = _next_position(seq, 0, advance, len(seq))
    while h is not None:
        result.append(seq[h])
        h = _next_position(seq, h, advance, len(seq))
    return tuple(result)


def compression_lasso(head: Sequence[T], loop: Sequence[T], advance: Callable[[T, T], bool]) -> Lasso[T]:
    """Compression of head.loop^w; finite when some state stutters forever."""
    if not loop:
        return Lasso(compression(head, advance))
    head, loop = tuple(head), tuple(loop)
    span = len(head) + len(loop)
    # a scan from a canonical position stays within one extra period
    word = head + loop * 2

    def canonical(p: int) -> int:
        return p if p < span else len(head) + (p - len(head)) % len(loop)

    emitted: list[T] = []
    seen: dict[int, int] = {}
    h = 0
    while True:
        h = canonical(h)
        if h in seen:
            cut = seen[h]
            return Lasso(tuple(emitted[:cut]), tuple(emitted[cut:]))
        seen[h] = len(emitted)
        emitted.append(word[h])
        nxt = _next_position(word, h, advance, max(h, len(head)) + len(loop) + 1)
        if nxt is None:
            return Lasso(tuple(emitted))
        h = nxt
