"""Exact computations for (q, Q)-current algebras of sl_n."""

from .scalars import QRational, parse_qrational, qint, qpow, qq

__all__ = ['QRational', 'parse_qrational', 'qint', 'qpow', 'qq']
__version__ = '0.1.0'
