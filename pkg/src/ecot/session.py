"""Sans-IO plumbing for two-party protocol roles.

A role is a generator.  It yields

* a :class:`~ecot.messages.Message` to send it,
* :data:`RECV` to block until the peer's next message arrives (the message
  is the value of the ``yield`` expression),
* ``Swap(msg)`` to send and receive "simultaneously": both sides commit a
  message before either sees the other's,

and finally returns its outcome.  :func:`run_pair` drives two roles in one
process; :mod:`ecot.transport.net` drives a single role over a socket.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Generator, Optional

from .errors import AbortedByPeer, DegenerateValue, PhaseError, ProtocolError
from .messages import ABORT_DEGENERATE, Abort, Message

RECV = object()


@dataclass(frozen=True)
class Swap:
    msg: Message


Role = Generator[Any, Optional[Message], Any]

# called as hook(sender_role, message) whenever a message crosses over;
# returns the message the receiver should see
DeliveryHook = Callable[[str, Message], Message]

ROLES = ("A", "B")


def peer_of(role: str) -> str:
    return "B" if role == "A" else "A"


def expect(msg: Message | None, cls: type[Message]) -> Message:
    """Check an incoming message's type; an Abort from the peer is raised."""
    if isinstance(msg, Abort):
        raise AbortedByPeer(msg.reason)
    if not isinstance(msg, cls):
        got = type(msg).__name__
        raise PhaseError(f"expected {cls.NAME}, received {got}")
    return msg


@dataclass
class _Slot:
    name: str
    gen: Role
    inbox: deque = field(default_factory=deque)
    # action the role is blocked on: RECV, a Swap, or None when runnable
    blocked: Any = None
    started: bool = False
    done: bool = False
    result: Any = None


def run_pair(role_a: Role, role_b: Role, hook: DeliveryHook | None = None) -> tuple[Any, Any]:
    """Run two roles to completion against each other, deterministically.

    Role A always runs first and a role keeps the floor until it blocks; a
    swap is released only when both parties have committed (A's message is
    delivered first), so the delivery order depends on nothing but the
    roles' own behaviour.
    """
    slots = {"A": _Slot("A", role_a), "B": _Slot("B", role_b)}

    def deliver(sender: str, msg: Message) -> None:
        if hook is not None:
            msg = hook(sender, msg)
        slots[peer_of(sender)].inbox.append(msg)

    def step(slot: _Slot, value: Any) -> None:
        """Advance one role until it blocks or finishes."""
        while True:
            try:
                if not slot.started:
                    slot.started = True
                    action = next(slot.gen)
                else:
                    action = slot.gen.send(value)
            except StopIteration as stop:
                slot.done, slot.result = True, stop.value
                return
            value = None
            if action is RECV:
                if slot.inbox:
                    value = slot.inbox.popleft()
                    continue
                slot.blocked = RECV
                return
            if isinstance(action, Swap):
                slot.blocked = action
                return
            if not isinstance(action, Message):
                raise TypeError(f"role {slot.name} yielded {action!r}")
            deliver(slot.name, action)

    def release_swaps() -> bool:
        a, b = slots["A"], slots["B"]
        swapping = [s for s in (a, b) if isinstance(s.blocked, Swap)]
        if not swapping:
            return False
        other = slots[peer_of(swapping[0].name)]
        if len(swapping) == 1 and not (other.done or (other.blocked is RECV and not other.inbox)):
            return False
        for s in swapping:
            deliver(s.name, s.blocked.msg)
            s.blocked = RECV
        return True

    def wake(slot: _Slot) -> bool:
        if slot.done or slot.blocked is not RECV or not slot.inbox:
            return False
        slot.blocked = None
        step(slot, slot.inbox.popleft())
        return True

    step(slots["A"], None)
    if not slots["B"].started:
        step(slots["B"], None)
    while not (slots["A"].done and slots["B"].done):
        # drain pending deliveries first so a lone swap is released only
        # when the peer really is waiting on it
        progressed = False
        for name in ROLES:
            progressed = wake(slots[name]) or progressed
        if not progressed:
            progressed = release_swaps()
        if not progressed:
            stuck = [s.name for s in slots.values() if not s.done]
            raise ProtocolError(f"deadlock: role(s) {', '.join(stuck)} waiting on an empty channel")
    return slots["A"].result, slots["B"].result


def with_restarts(attempt: Callable[[int], Role], max_attempts: int = 8) -> Role:
    """Re-run ``attempt(i)`` whenever either side hits a degenerate value.

    The side that detects the degeneracy tells its peer with an Abort frame,
    so both sides restart in lockstep; each attempt is expected to draw fresh
    randomness for anything not injected by the caller.
    """
    for i in range(max_attempts):
        try:
            return (yield from attempt(i))
        except DegenerateValue:
            yield Abort(ABORT_DEGENERATE)
        except AbortedByPeer as exc:
            if exc.reason != ABORT_DEGENERATE:
                raise
    raise DegenerateValue(f"still degenerate after {max_attempts} attempts")
