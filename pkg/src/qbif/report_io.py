"""JSON encoding for reports.

Complex values are written as ``{"re": "...", "im": "..."}`` with the exact
decimal expansion of each binary component, so decoding at any precision
at least as fine as the original recovers it bit for bit.
"""
from __future__ import annotations

import json
import math
from datetime import datetime, timezone

import mpmath
from mpmath import mp

SCHEMA_KEYS = ("command", "config", "result", "certificates", "timestamp")


def exact_decimal(x) -> str:
    """Exact decimal expansion of a binary float (mpf or float)."""
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(float(x))
    if not mpmath.isfinite(x):
        raise ValueError("cannot encode a non-finite value")
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return "0"
    if exp >= 0:
        body = str(man << exp)
    else:
        digits = str(man * 5 ** (-exp)).rjust(-exp + 1, "0")
        whole, frac = digits[:exp], digits[exp:].rstrip("0")
        body = whole + ("." + frac if frac else "")
    return ("-" if sign else "") + body


def encode_complex(z) -> dict:
    if not isinstance(z, mpmath.mpc):
        z = mpmath.mpc(complex(z))
    return {"re": exact_decimal(z.real), "im": exact_decimal(z.imag)}


def _bits_for(text: str) -> int:
    digits = sum(ch.isdigit() for ch in text)
    return max(mp.prec, int(math.ceil(digits * math.log2(10))) + 16)


def decode_real(text: str):
    with mp.workprec(_bits_for(text)):
        return +mpmath.mpf(text)


def decode_complex(d: dict):
    with mp.workprec(max(_bits_for(d["re"]), _bits_for(d["im"]))):
        return mpmath.mpc(mpmath.mpf(d["re"]), mpmath.mpf(d["im"]))


def _default(obj):
    if isinstance(obj, (mpmath.mpc, complex)):
        return encode_complex(obj)
    if isinstance(obj, mpmath.mpf):
        return float(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if hasattr(obj, "tolist"):
        return obj.tolist()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def make_report(command: str, config: dict, result, certificates=(), timestamp: str | None = None) -> dict:
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return {"command": command, "config": config, "result": result,
            "certificates": list(certificates), "timestamp": timestamp}


def dumps(report: dict) -> str:
    return json.dumps(report, default=_default, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    data = json.loads(text)
    missing = [k for k in SCHEMA_KEYS if k not in data]
    if missing:
        raise ValueError(f"report is missing keys {missing}")
    return data
