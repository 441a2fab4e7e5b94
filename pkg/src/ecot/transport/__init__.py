"""Framing, handshake and the local and socket runners."""
