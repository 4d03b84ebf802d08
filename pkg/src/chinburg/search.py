"""Enumeration of candidate pairs (a, b) with b -+ 2a = c v^2.

Candidates are grouped into blocks by the polynomial a. Blocks are
processed in a fixed order, records are deduplicated on their conductor
tuple (first found wins), and a checkpoint is written after every block
so an interrupted run can resume with byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import product
from math import isqrt
from pathlib import Path
from typing import Iterator

from chinburg.arith import euler_phi, indices_with_phi_at_most, is_squarefree
from chinburg.permissible import check
from chinburg.polyz import IntPoly, cyclotomic

CASES = ("case1", "case2")
SIGNS = ("plus", "minus")
VANISH = (1, -1)

# distinct outputs per l as (strong, weak, B)
PUBLISHED_COUNTS = {
    2: (10, 3, 100), 3: (10, 46, 100), 4: (20, 28, 100),
    5: (3, 28, 30), 6: (12, 62, 30), 7: (1, 9, 10),
}


@dataclass(frozen=True)
class SearchConfig:
    ell: int
    bound: int
    cases: tuple[str, ...] = CASES
    signs: tuple[str, ...] = SIGNS
    vanish_at: tuple[int, ...] = VANISH
    out_path: str | None = None
    checkpoint_path: str | None = None

    def __post_init__(self):
        if self.ell < 2:
            raise ValueError("ell must be at least 2")
        if self.bound < 0:
            raise ValueError("bound must be nonnegative")
        if not set(self.cases) <= set(CASES) or not self.cases:
            raise ValueError(f"cases must be a nonempty subset of {CASES}")
        if not set(self.signs) <= set(SIGNS) or not self.signs:
            raise ValueError(f"signs must be a nonempty subset of {SIGNS}")
        if not set(self.vanish_at) <= set(VANISH) or not self.vanish_at:
            raise ValueError("vanish_at must be a nonempty subset of {1, -1}")

    def config_hash(self) -> str:
        key = {"ell": self.ell, "bound": self.bound, "cases": sorted(self.cases),
               "signs": sorted(self.signs), "vanish_at": sorted(self.vanish_at)}
        return hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CandidateRecord:
    a: IntPoly
    b: IntPoly
    ell: int
    c: int
    v: IntPoly
    sign: str
    conductors: tuple[int, ...]
    report_digest: str
    found_at: dict = field(hash=False, compare=False)

    def payload(self) -> dict:
        return {
            "a": self.a.dumps(), "b": self.b.dumps(), "ell": self.ell, "c": self.c,
            "v": self.v.dumps(), "sign": self.sign, "conductors": list(self.conductors),
            "report_digest": self.report_digest, "found_at": self.found_at,
        }

    @classmethod
    def from_payload(cls, d: dict) -> CandidateRecord:
        return cls(IntPoly.parse(d["a"]), IntPoly.parse(d["b"]), d["ell"], d["c"],
                   IntPoly.parse(d["v"]), d["sign"], tuple(d["conductors"]),
                   d["report_digest"], d["found_at"])

    def to_json(self) -> str:
        return json.dumps({"type": "candidate", "version": 1, "payload": self.payload()},
                          sort_keys=True, separators=(",", ":"))


# ----------------------------------------------------------------------
# enumeration of a
# ----------------------------------------------------------------------

def _multisets(indices: tuple[int, ...], budget: int, start: int = 0) -> Iterator[tuple[int, ...]]:
    """Sorted multisets from indices with total phi-degree <= budget."""
    yield ()
    for i in range(start, len(indices)):
        n = indices[i]
        d = euler_phi(n)
        if d > budget:
            continue
        for rest in _multisets(indices, budget - d, i):
            yield (n,) + rest


@lru_cache(maxsize=32)
def a_multisets(ell: int, case: str) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """(k, indices) with a = x^k prod Phi_n 2l-shifted reciprocal of sign +1."""
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}")
    indices = indices_with_phi_at_most(2 * ell)
    out = []
    for ms in _multisets(indices, 2 * ell):
        D = sum(euler_phi(n) for n in ms)
        if D % 2 or ms.count(1) % 2:
            continue
        k = (2 * ell - D) // 2
        if (case == "case1") != (k == 0):
            continue
        out.append((k, ms))
    out.sort(key=lambda t: t[1])
    return tuple(out)


def a_from_multiset(k: int, ms: tuple[int, ...]) -> IntPoly:
    a = IntPoly.x_power(k)
    for n in ms:
        a = a * cyclotomic(n)
    return a


def enumerate_a(ell: int, case: str) -> Iterator[IntPoly]:
    for k, ms in a_multisets(ell, case):
        yield a_from_multiset(k, ms)


# ----------------------------------------------------------------------
# enumeration of v
# ----------------------------------------------------------------------

def a0_c_pairs(case: str, bound: int) -> list[tuple[int, int]]:
    if case == "case2":
        return [(1, 1)]
    pairs = [(1, -1), (1, 2), (1, -2), (1, 3), (2, 1)]
    for m in range(1, bound + 1):
        if is_squarefree(m):
            pairs.extend([(0, m), (0, -m)])
    return pairs


def _targets(a_at_s: int, c: int, sign: str) -> list[int]:
    """Values t = v(s) making h vanish at s: v(s) = 0 or c v(s)^2 -+ 4 a(s) = 0."""
    out = [0]
    num = 4 * a_at_s if sign == "plus" else -4 * a_at_s
    if num and num % c == 0 and num // c > 0:
        r = isqrt(num // c)
        if r * r == num // c:
            out.extend([r, -r])
    return out


def _palindrome(ell: int, half: list[int]) -> IntPoly:
    """a_0 + a_1 x + ... + a_1 x^(l-1) + a_0 x^l from half = [a_0, a_1, ...]."""
    coeffs = [0] * (ell + 1)
    for j, c in enumerate(half):
        coeffs[j] = c
        coeffs[ell - j] = c
    return IntPoly(coeffs)


def _first_nonzero_positive(v: IntPoly) -> bool:
    return v.coeffs[v.ord0()] > 0


def enumerate_v(ell: int, bound: int, case: str, vanish: int, sign: str,
                a: IntPoly) -> Iterator[tuple[IntPoly, int, dict]]:
    """(v, c, coordinates) with h forced to vanish at x = vanish."""
    s = vanish
    a_at_s = a(s)
    n_free = (ell - 1) // 2
    for a0, c in a0_c_pairs(case, bound):
        targets = _targets(a_at_s, c, sign)
        for free in product(range(-bound, bound + 1), repeat=n_free):
            half = [a0, *free]
            if ell % 2 == 0:
                m = ell // 2
                partial = 2 * sum(cj * s ** j for j, cj in enumerate(half))
                for t in targets:
                    mid = s ** m * (t - partial)
                    v = _palindrome(ell, half + [mid])
                    if v.is_zero or not _first_nonzero_positive(v):
                        continue
                    yield v, c, {"a0": a0, "free": list(free), "t": t}
            else:
                if s == -1:
                    # odd l: v(-1) = 0 automatically
                    v = _palindrome(ell, half)
                    if v.is_zero or not _first_nonzero_positive(v):
                        continue
                    yield v, c, {"a0": a0, "free": list(free), "t": 0}
                    continue
                if n_free == 0:
                    continue
                for t in targets:
                    # v(1) = 2 * sum(half) = t fixes the last free coefficient
                    if t % 2:
                        continue
                    last = t // 2 - sum(half[:-1])
                    if half[-1] != last:
                        continue
                    v = _palindrome(ell, half)
                    if v.is_zero or not _first_nonzero_positive(v):
                        continue
                    yield v, c, {"a0": a0, "free": list(free), "t": t}


# ----------------------------------------------------------------------
# fast necessary conditions
# ----------------------------------------------------------------------

_P = 2_147_483_647


def _mod_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _mod_rem(f: list[int], g: list[int]) -> list[int]:
    f = f[:]
    inv = pow(g[-1], _P - 2, _P)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        q = f[-1] * inv % _P
        shift = len(f) - 1 - dg
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - q * gc) % _P
        _mod_trim(f)
    return f


def _mod_gcd_degree(f: list[int], g: list[int]) -> int:
    f, g = _mod_trim([x % _P for x in f]), _mod_trim([x % _P for x in g])
    while g:
        f, g = g, _mod_rem(f, g)
    return len(f) - 1


def squarefree_degree_at_least(w: IntPoly) -> int:
    """Lower bound for the degree of the odd-multiplicity part of w.

    For w = prod f_i^i, deg w - 2 deg gcd(w, w') = sum (2 - i) deg f_i, which
    never exceeds the odd part's degree; the gcd taken mod p can only be larger.
    """
    if w.lead % _P == 0:
        return 0
    d = _mod_gcd_degree(list(w.coeffs), list(w.derivative().coeffs))
    return w.degree - 2 * d


def prefilter(a: IntPoly, b: IntPoly, w: IntPoly) -> bool:
    if b.is_zero or w.is_zero:
        return False
    if b.degree > a.degree and b.lead != 1:
        return False
    if b.degree == a.degree and b.lead not in (1, 2):
        return False
    return squarefree_degree_at_least(w) <= 4


# ----------------------------------------------------------------------
# driver
# ----------------------------------------------------------------------

def _digest(report) -> str:
    blob = json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def a_blocks(cfg: SearchConfig) -> list[tuple[str, int, tuple[int, ...]]]:
    out = []
    for case in CASES:
        if case in cfg.cases:
            out.extend((case, k, ms) for k, ms in a_multisets(cfg.ell, case))
    return out


def process_block(cfg: SearchConfig, index: int) -> list[CandidateRecord]:
    """All permissible candidates for one a, in enumeration order (no dedup)."""
    case, k, ms = a_blocks(cfg)[index]
    a = a_from_multiset(k, ms)
    seen: set = set()
    out = []
    for sign in SIGNS:
        if sign not in cfg.signs:
            continue
        for vanish in VANISH:
            if vanish not in cfg.vanish_at:
                continue
            for v, c, coords in enumerate_v(cfg.ell, cfg.bound, case, vanish, sign, a):
                cv2 = v * v * c
                b = cv2 - a * 2 if sign == "plus" else cv2 + a * 2
                key = (b.coeffs, c, v.coeffs)
                if key in seen:
                    continue
                seen.add(key)
                w = cv2 - a * 4 if sign == "plus" else cv2 + a * 4
                if not prefilter(a, b, w):
                    continue
                report = check(a, b, strict_galois=True)
                if not report.permissible or not report.conductors:
                    continue
                out.append(CandidateRecord(
                    a=a, b=b, ell=cfg.ell, c=c, v=v, sign=sign,
                    conductors=report.conductors, report_digest=_digest(report),
                    found_at={"a_index": index, "case": case, "a_factors": list(ms),
                              "x_power": k, "vanish": vanish, **coords},
                ))
    return out


def _process_block_args(args):
    return process_block(*args)


@dataclass
class SearchSummary:
    blocks: int
    records: int
    strong: int
    weak: int
    tuples: list[tuple[int, ...]]

    def published_comparison(self, ell: int) -> str:
        ref = PUBLISHED_COUNTS.get(ell)
        line = f"l={ell}: ours strong={self.strong} weak={self.weak}"
        if ref:
            line += f" | published strong={ref[0]} weak={ref[1]} (B={ref[2]})"
        return line


class _Checkpoint:
    def __init__(self, path: str | None, cfg: SearchConfig):
        self.path = Path(path) if path else None
        self.hash = cfg.config_hash()
        self.completed: list[int] = []
        self.output_bytes = 0

    def load(self) -> bool:
        if not self.path or not self.path.exists():
            return False
        data = json.loads(self.path.read_text())
        if data.get("config_hash") != self.hash:
            raise ValueError("checkpoint belongs to a different search configuration")
        self.completed = list(data["completed_a_indices"])
        self.output_bytes = int(data["output_bytes"])
        return True

    def save(self):
        if not self.path:
            return
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps({"config_hash": self.hash,
                                   "completed_a_indices": self.completed,
                                   "output_bytes": self.output_bytes}))
        os.replace(tmp, self.path)


def run_search(cfg: SearchConfig, resume: bool = False, threads: int = 1,
               stop_after_blocks: int | None = None) -> Iterator[CandidateRecord]:
    """Yield deduplicated records in deterministic order.

    With out_path set, records are appended as JSONL; with checkpoint_path
    set, progress is saved after each a-block. stop_after_blocks simulates an
    interruption (used to test resumption).
    """
    blocks = a_blocks(cfg)
    ckpt = _Checkpoint(cfg.checkpoint_path, cfg)
    resumed = resume and ckpt.load()
    seen: set[tuple[int, ...]] = set()
    out_file = None
    if cfg.out_path:
        mode = "r+b" if resumed and Path(cfg.out_path).exists() else "wb"
        out_file = open(cfg.out_path, mode)
        if resumed:
            out_file.truncate(ckpt.output_bytes)
            out_file.seek(0)
            for line in out_file.read().splitlines():
                rec = CandidateRecord.from_payload(json.loads(line)["payload"])
                seen.add(rec.conductors)
            out_file.seek(ckpt.output_bytes)
    elif resumed:
        raise ValueError("resuming requires the original output file")
    start = max(ckpt.completed) + 1 if ckpt.completed else 0
    todo = list(range(start, len(blocks)))
    if stop_after_blocks is not None:
        todo = todo[:stop_after_blocks]
    try:
        if threads > 1:
            pool = ProcessPoolExecutor(max_workers=threads)
            results = pool.map(_process_block_args, [(cfg, i) for i in todo], chunksize=1)
        else:
            pool = None
            results = (process_block(cfg, i) for i in todo)
        for index, records in zip(todo, results):
            for rec in records:
                if rec.conductors in seen:
                    continue
                seen.add(rec.conductors)
                if out_file:
                    out_file.write((rec.to_json() + "\n").encode())
                yield rec
            if out_file:
                out_file.flush()
                ckpt.output_bytes = out_file.tell()
            ckpt.completed.append(index)
            ckpt.save()
        if pool:
            pool.shutdown()
    finally:
        if out_file:
            out_file.close()


def summarize(records: list[CandidateRecord], blocks: int) -> SearchSummary:
    tuples = [r.conductors for r in records]
    return SearchSummary(
        blocks=blocks, records=len(records),
        strong=sum(1 for t in tuples if len(t) == 1),
        weak=sum(1 for t in tuples if len(t) > 1),
        tuples=tuples,
    )


def config_dict(cfg: SearchConfig) -> dict:
    return asdict(cfg)
