"""Transcripts and the in-process runner."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from ..config import SessionConfig
from ..curve import AffinePoint
from ..errors import EcotError
from ..messages import Message
from ..session import peer_of, run_pair
from .roles import Inputs, make_role, role_rng
from .wire import decode_frame, encode_frame


def _point_json(pt: AffinePoint) -> Optional[list[int]]:
    return None if pt is None else [pt[0], pt[1]]


@dataclass(frozen=True)
class Record:
    direction: str
    tag: str
    frame: bytes
    message: Optional[Message] = None
    error: Optional[str] = None

    def to_json(self) -> str:
        # field order is fixed so transcripts diff cleanly
        if self.error is not None:
            return json.dumps({"direction": self.direction, "tag": "error", "frame": "",
                               "points": [], "text": self.error})
        return json.dumps({
            "direction": self.direction,
            "tag": self.tag,
            "frame": self.frame.hex(),
            "points": [_point_json(p) for p in self.message.points()],
            "text": self.message.render(),
        })


@dataclass
class Transcript:
    """Append-only log of every frame that crossed the channel."""

    records: list[Record] = field(default_factory=list)
    path: Optional[Path] = None

    def append(self, rec: Record) -> None:
        self.records.append(rec)
        if self.path is not None:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(rec.to_json() + "\n")

    def record_frame(self, sender: str, frame: bytes, msg: Message) -> None:
        self.append(Record(f"{sender}->{peer_of(sender)}", msg.NAME, frame, msg))

    def record_error(self, where: str, exc: BaseException) -> None:
        self.append(Record(where, "error", b"", error=f"{type(exc).__name__}: {exc}"))

    def messages(self) -> list[Message]:
        return [r.message for r in self.records if r.message is not None]

    def frames(self) -> list[bytes]:
        return [r.frame for r in self.records if r.message is not None]

    def lines(self) -> list[str]:
        return [r.to_json() for r in self.records]

    def dumps(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    def write(self, path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    def __len__(self) -> int:
        return len(self.records)


def open_transcript(path=None) -> Transcript:
    """Transcript that also streams to ``path`` (truncated first) if given."""
    if path is None:
        return Transcript()
    path = Path(path)
    path.write_text("", encoding="utf-8")
    return Transcript(path=path)


def run_local(cfg: SessionConfig, scenario: str, seed=None, inputs: Inputs | None = None,
              transcript: Transcript | None = None) -> tuple[Transcript, tuple[Any, Any]]:
    """Run both roles in this process, every message going through the wire codec.

    Each role draws from its own rng derived from ``seed``.  On failure the
    error is appended to the transcript, which is also attached to the
    exception as ``.transcript``.
    """
    inputs = inputs or Inputs()
    transcript = transcript if transcript is not None else Transcript()
    role_a = make_role(cfg, scenario, "A", inputs, role_rng(seed, "A"))
    role_b = make_role(cfg, scenario, "B", inputs, role_rng(seed, "B"))

    def hook(sender: str, msg: Message) -> Message:
        frame = encode_frame(msg)
        received = decode_frame(frame, cfg.curve)
        transcript.record_frame(sender, frame, received)
        return received

    try:
        outcomes = run_pair(role_a, role_b, hook)
    except EcotError as exc:
        transcript.record_error("local", exc)
        exc.transcript = transcript
        raise
    return transcript, outcomes
