# Copyright 2026 The mabd Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Blocked regular fractional factorial designs.

Designs are given either in the text form ``"s=2 m=3 t=4,2,1,7 b=3"`` or as
the JSON object the CLI prints (a dict here). Results are plain dicts in the
CLI's JSON schema; large integers arrive as decimal strings.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Optional, Union

from . import _core
from ._core import MabdError

__all__ = [
    "MabdError",
    "bound",
    "bundled_catalog",
    "oracle_wlp",
    "run_cli",
    "search",
    "verify_catalog",
    "wlp",
]

Design = Union[str, dict]


def _design_text(design: Design) -> str:
    return json.dumps(design) if isinstance(design, dict) else design


def wlp(design: Design, pair_rule: str = "any") -> dict[str, Any]:
    """Moment-derived wordlength pattern, plus clear counts when blocked."""
    return json.loads(_core.wlp_json(_design_text(design), False, pair_rule))


def oracle_wlp(design: Design) -> dict[str, Any]:
    """The same pattern by brute-force dual word enumeration."""
    return json.loads(_core.wlp_json(_design_text(design), True))


def bound(n: int, m: int, p: int, s: int = 2) -> dict[str, Any]:
    """Lower bound on A_{2,1}, raw and modified, with its display string."""
    return json.loads(_core.bound_json(n, m, p, s))


def search(
    s: int,
    m: int,
    n: int,
    p: int,
    criteria: Iterable[str] = (),
    source: str = "all",
    cap: Optional[int] = None,
    threads: int = 1,
    pair_rule: str = "any",
) -> dict[str, Any]:
    """Exhaustive minimum aberration search over s^m-run blocked designs."""
    return json.loads(
        _core.search_json(s, m, n, p, list(criteria), source, cap, threads, pair_rule)
    )


def verify_catalog(text: Optional[str] = None, include_ambiguous: bool = False) -> list[dict]:
    """Recomputes every catalog entry; the bundled catalog when text is None."""
    if text is None:
        text = _core.bundled_catalog()
    return json.loads(_core.verify_json(text, include_ambiguous))


def bundled_catalog() -> str:
    return _core.bundled_catalog()


def run_cli(args: Iterable[str]) -> tuple[int, str, str]:
    """Runs a CLI command in process; returns (exit code, stdout, stderr)."""
    return _core.run_cli(list(args))
