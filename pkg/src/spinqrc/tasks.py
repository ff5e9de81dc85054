"""Benchmark sequences: delayed-recall streams and NARMA-n system output.

The delayed-recall task feeds the reservoir an i.i.d. binary stream and
asks it to reproduce the input from ``tau_b`` steps earlier. The NARMA
task drives a fixed triple-sine input through the standard NARMA-n
recurrence and asks the readout to track the recurrence output.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DivergenceError

# Standard NARMA-n recurrence coefficients; module-level so variant
# recurrences can be explored by monkeypatching in analysis scripts.
NARMA_FEEDBACK_GAIN = 0.3
NARMA_MEMORY_GAIN = 0.05
NARMA_INPUT_GAIN = 1.5
NARMA_OFFSET = 0.1

# Triple-sine input tones and common period.
NARMA_TONES = (2.11, 3.73, 4.11)
NARMA_PERIOD = 100.0

# Recurrence values past this magnitude indicate mis-scaled inputs.
DIVERGENCE_LIMIT = 10.0

NARMA_ORDERS = (2, 5, 10, 15, 20)


@dataclass(frozen=True)
class SequencePair:
    """Aligned input and target vectors for one task realization."""

    inputs: np.ndarray
    targets: np.ndarray

    def __post_init__(self) -> None:
        if self.inputs.shape != self.targets.shape or self.inputs.ndim != 1:
            raise ConfigError("inputs and targets must be equal-length vectors")


@dataclass(frozen=True)
class TaskSpec:
    """Which benchmark to run and with what horizon.

    ``kind`` is "stm" (binary delayed recall, uses ``tau_b`` and ``seed``)
    or "narma" (triple-sine NARMA-n, uses ``order``).
    """

    kind: str
    length: int
    tau_b: int = 0
    order: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("stm", "narma"):
            raise ConfigError(f"unknown task kind {self.kind!r}")
        if self.length < 1:
            raise ConfigError("length must be positive")
        if self.kind == "stm" and not 0 <= self.tau_b <= self.length:
            raise ConfigError(f"tau_b {self.tau_b} outside [0, {self.length}]")
        if self.kind == "narma" and self.order < 2:
            raise ConfigError(f"NARMA order must be at least 2, got {self.order}")

    def generate(self) -> SequencePair:
        if self.kind == "stm":
            return gen_stm(self.length, self.tau_b, self.seed)
        inputs = gen_narma_input(self.length)
        return SequencePair(inputs=inputs, targets=gen_narma_target(inputs, self.order))


def gen_stm(length: int, tau_b: int, seed: int) -> SequencePair:
    """Binary input stream with target_k = input_{k - tau_b} (0 before that)."""
    if tau_b < 0:
        raise ConfigError(f"tau_b must be nonnegative, got {tau_b}")
    if length < 1:
        raise ConfigError("length must be positive")
    rng = np.random.default_rng(seed)
    inputs = rng.integers(0, 2, length).astype(float)
    targets = np.zeros(length)
    if tau_b < length:
        targets[tau_b:] = inputs[: length - tau_b]
    return SequencePair(inputs=inputs, targets=targets)


def gen_narma_input(length: int) -> np.ndarray:
    """Deterministic triple-sine drive, always within [0, 0.2]."""
    if length < 1:
        raise ConfigError("length must be positive")
    k = np.arange(length)
    prod = np.ones(length)
    for tone in NARMA_TONES:
        prod *= np.sin(2.0 * np.pi * tone * k / NARMA_PERIOD)
    return 0.1 * (prod + 1.0)


def gen_narma_target(inputs: np.ndarray, order: int) -> np.ndarray:
    """NARMA-n output for the given drive, aligned so targets[k] = y_k.

    y_{k+1} = 0.3 y_k + 0.05 y_k (sum of the last n outputs)
              + 1.5 s_{k-n+1} s_k + 0.1

    with zero-padded history. Raises DivergenceError if |y| exceeds
    DIVERGENCE_LIMIT, which signals inputs outside the intended scale.
    """
    s = np.asarray(inputs, dtype=float)
    if s.ndim != 1 or len(s) == 0:
        raise ConfigError("inputs must be a nonempty vector")
    if order < 2:
        raise ConfigError(f"NARMA order must be at least 2, got {order}")
    length = len(s)
    y = np.zeros(length)
    for k in range(length - 1):
        window = y[max(0, k - order + 1): k + 1].sum()
        s_old = s[k - order + 1] if k - order + 1 >= 0 else 0.0
        y[k + 1] = (NARMA_FEEDBACK_GAIN * y[k]
                    + NARMA_MEMORY_GAIN * y[k] * window
                    + NARMA_INPUT_GAIN * s_old * s[k]
                    + NARMA_OFFSET)
        if abs(y[k + 1]) > DIVERGENCE_LIMIT:
            raise DivergenceError(
                f"recurrence output {y[k + 1]:.3g} at step {k + 1}; "
                "inputs are outside the intended scale")
    return y
