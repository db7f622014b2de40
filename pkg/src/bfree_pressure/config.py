"""Run-time caps and output settings.

The active :class:`RunConfig` lives in a context variable, so concurrent
callers (threads, asyncio tasks) can override caps independently::

    with configured(lcm_cap=10**8):
        eta_word(ModulusSet([101, 103, 107]))
"""

import contextlib
import contextvars
import dataclasses
import os

LCM_CAP = 10**7
SUBSET_CAP = 24
ENUM_CAP = 10**7
WIDTH_CAP = 64
DP_CAP = 10**5


@dataclasses.dataclass(frozen=True)
class RunConfig:
    lcm_cap: int = LCM_CAP
    subset_cap: int = SUBSET_CAP
    enum_cap: int = ENUM_CAP
    width_cap: int = WIDTH_CAP
    dp_cap: int = DP_CAP
    # None means IEEE double; an int selects an mpmath working precision in bits
    precision_bits: int | None = None
    output: str = "json"
    seed: int = 0
    serial: bool = True

    def __post_init__(self):
        for name in ("lcm_cap", "subset_cap", "enum_cap", "width_cap", "dp_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.precision_bits is not None and self.precision_bits < 53:
            raise ValueError("precision_bits must be at least 53")
        if self.output not in ("json", "csv", "pretty"):
            raise ValueError(f"unknown output format {self.output!r}")

    @classmethod
    def from_env(cls, environ=None, **overrides):
        """Build a config from PF_* environment variables; explicit overrides win."""
        env = os.environ if environ is None else environ
        kw = {}
        if "PF_LCM_CAP" in env:
            kw["lcm_cap"] = int(env["PF_LCM_CAP"])
        if "PF_ENUM_CAP" in env:
            kw["enum_cap"] = int(env["PF_ENUM_CAP"])
        if "PF_OUTPUT" in env:
            kw["output"] = env["PF_OUTPUT"]
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


_current = contextvars.ContextVar("bfree_pressure_config", default=RunConfig())


def get_config():
    return _current.get()


@contextlib.contextmanager
def configured(config=None, **overrides):
    """Temporarily replace (or patch) the active configuration."""
    base = config if config is not None else get_config()
    token = _current.set(dataclasses.replace(base, **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
