"""
Cooperative key exchange: split a pre-secret B into one block per transmitter, send
block b_i from transmitter t_i, and derive K = SHA-256(b_1 || ... || b_n) at the receiver.

Block i leaks when some eavesdropper is at least as close to t_i as the receiver is:
the block is sent at a rate only decodable inside t_i's secrecy disk. The adversary
learns K only when every block leaks. Links between transmitters are treated as
perfectly protected.
"""

import hashlib
import secrets
from dataclasses import dataclass

import _kernels
import telemetry
from errors import InvalidParameterError
from placement import SeedStream
from secrecy_core import Deployment

DEFAULT_PRESECRET_LENGTH = 64

tracer = telemetry.get_tracer(__name__)


@dataclass(frozen=True)
class BlockSet:
    blocks: tuple[bytes, ...]

    def joined(self) -> bytes:
        return b"".join(self.blocks)


@dataclass(frozen=True)
class ExchangeOutcome:
    blocks: BlockSet
    intercepted: tuple[bool, ...]
    receiver_key: bytes
    adversary_key: bytes | None
    secure: bool


def split_presecret(presecret: bytes, n_blocks: int) -> BlockSet:
    """Contiguous split; the first (len % n) blocks are one octet longer."""
    if n_blocks < 1:
        raise InvalidParameterError(f"n_blocks must be >= 1, got {n_blocks}")
    if len(presecret) < n_blocks:
        raise InvalidParameterError(f"pre-secret of {len(presecret)} octets cannot fill {n_blocks} blocks")
    size, extra = divmod(len(presecret), n_blocks)
    blocks = []
    start = 0
    for i in range(n_blocks):
        stop = start + size + (1 if i < extra else 0)
        blocks.append(bytes(presecret[start:stop]))
        start = stop
    return BlockSet(tuple(blocks))


def derive_key(blocks: BlockSet) -> bytes:
    digest = hashlib.sha256()
    for block in blocks.blocks:
        digest.update(block)
    return digest.digest()


def generate_presecret(length: int = DEFAULT_PRESECRET_LENGTH, seed: SeedStream | None = None) -> bytes:
    if length < 1:
        raise InvalidParameterError(f"pre-secret length must be >= 1, got {length}")
    if seed is None:
        return secrets.token_bytes(length)
    return seed.generator().bytes(length)


def simulate_exchange(deployment: Deployment, presecret: bytes) -> ExchangeOutcome:
    n = deployment.transmitters.shape[0]
    if n == 0:
        raise InvalidParameterError("key exchange needs at least one transmitter")
    with tracer.start_as_current_span("keyexchange.simulate_exchange") as span:
        blocks = split_presecret(presecret, n)
        receiver_key = derive_key(blocks)
        rx = deployment.receiver
        flags = tuple(bool(f) for f in _kernels.intercepted(deployment.transmitters, deployment.eavesdroppers, rx.x, rx.y))
        secure = not all(flags)
        captured = BlockSet(tuple(b for b, f in zip(blocks.blocks, flags) if f))
        adversary_key = None if secure else derive_key(captured)
        span.set_attribute("blocks", n)
        span.set_attribute("secure", secure)
    return ExchangeOutcome(blocks, flags, receiver_key, adversary_key, secure)


def format_transcript(deployment: Deployment, outcome: ExchangeOutcome) -> str:
    lines = [f"receiver      ({deployment.receiver.x:.6f}, {deployment.receiver.y:.6f})"]
    for i, ((x, y), block, flag) in enumerate(zip(deployment.transmitters, outcome.blocks.blocks, outcome.intercepted), start=1):
        state = "intercepted" if flag else "protected"
        lines.append(f"transmitter {i:<2d}({x:.6f}, {y:.6f})  block {block.hex()}  {state}")
    for i, (x, y) in enumerate(deployment.eavesdroppers, start=1):
        lines.append(f"eavesdropper {i:<2d}({x:.6f}, {y:.6f})")
    lines.append(f"receiver key  {outcome.receiver_key.hex()}")
    lines.append(f"adversary key {outcome.adversary_key.hex() if outcome.adversary_key is not None else '-'}")
    lines.append(f"verdict       {'secure' if outcome.secure else 'compromised'}")
    return "\n".join(lines) + "\n"
