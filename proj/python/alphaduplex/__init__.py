"""Analytic and simulated BER/throughput of alpha-duplex cellular networks."""

from alphaduplex._core import *  # noqa: F401,F403
from alphaduplex._core import __doc__  # noqa: F401
