"""Grid scans of x^5 + ax^2 + b: CSV rows, JSON report, discrepancy ledger."""

from __future__ import annotations

import configparser
import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import ffield
from .quintic import READINGS, quintic_verdict

SCHEMA_SCAN = "oreindex.scan/1"
CSV_FIELDS = (
    "a", "b", "irreducible", "t2_condition", "t2_engine",
    "t3_condition", "t3_engine", "consistent", "notes",
)
ALLOWED_PRIMES = (2, 3, 5)


class ConfigError(ValueError):
    pass


def _parse_range(text: str) -> tuple[int, int]:
    for sep in ("..", ","):
        if sep in text:
            lo, hi = (int(t) for t in text.split(sep, 1))
            return lo, hi
    v = int(text)
    return v, v


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(";", ",").split(",") if t.strip())


@dataclass
class ScanConfig:
    a_range: tuple[int, int] = (-20, 20)
    b_range: tuple[int, int] = (-20, 20)
    a_values: tuple[int, ...] | None = None
    b_values: tuple[int, ...] | None = None
    primes: tuple[int, ...] = (2, 3)
    csv: str | None = None
    json: str | None = None
    ledger: str | None = None
    jobs: int = 1
    seed: int = 0
    reading: str = "printed"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not self.a_list():
            raise ConfigError(f"empty a range {self.a_range}")
        if not self.b_list():
            raise ConfigError(f"empty b range {self.b_range}")
        if not self.primes or any(p not in ALLOWED_PRIMES for p in self.primes):
            raise ConfigError(f"primes must be a nonempty subset of {ALLOWED_PRIMES}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        if self.reading not in READINGS:
            raise ConfigError(f"reading must be one of {READINGS}")

    def a_list(self) -> list[int]:
        if self.a_values is not None:
            return sorted(set(self.a_values))
        return list(range(self.a_range[0], self.a_range[1] + 1))

    def b_list(self) -> list[int]:
        if self.b_values is not None:
            return sorted(set(self.b_values))
        return list(range(self.b_range[0], self.b_range[1] + 1))

    @classmethod
    def from_file(cls, path: str | Path, **overrides) -> ScanConfig:
        """Read ``key = value`` lines; ``#`` starts a comment."""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"{path}: {exc.strerror}") from exc
        cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
        try:
            cp.read_string("[scan]\n" + text, source=str(path))
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        kw = {}
        parsers = {
            "a_range": _parse_range, "b_range": _parse_range,
            "a_values": _parse_ints, "b_values": _parse_ints, "primes": _parse_ints,
            "jobs": int, "seed": int, "csv": str, "json": str, "ledger": str, "reading": str,
        }
        for key, value in cp["scan"].items():
            if key not in parsers:
                raise ConfigError(f"{path}: unknown key {key!r}")
            try:
                kw[key] = parsers[key](value.strip())
            except ValueError as exc:
                raise ConfigError(f"{path}: bad value for {key}: {value!r}") from exc
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)

    def to_dict(self) -> dict:
        # jobs is deliberately left out: outputs must not depend on it
        return {
            "a": self.a_list() if self.a_values is not None else list(self.a_range),
            "b": self.b_list() if self.b_values is not None else list(self.b_range),
            "primes": list(self.primes),
            "seed": self.seed,
            "reading": self.reading,
        }


def _row(a: int, b: int, primes: tuple[int, ...], reading: str) -> dict | None:
    v = quintic_verdict(a, b, reading, primes)
    if not v.irreducible:
        return None
    row = {"a": a, "b": b, "irreducible": True}
    for p in (2, 3):
        key = f"t{p}"
        if p in primes:
            row[f"{key}_condition"] = v.by_theorem[p].tag or "none"
            row[f"{key}_engine"] = v.by_engine[p].divides
        else:
            row[f"{key}_condition"] = ""
            row[f"{key}_engine"] = ""
    row["consistent"] = v.consistent
    row["notes"] = " | ".join(v.notes)
    if 5 in primes:
        row["_p5"] = v.by_engine[5].divides
    return row


def _init_worker(seed: int) -> None:
    ffield.set_default_seed(seed)


def _scan_chunk(args) -> list[dict]:
    a, bs, primes, reading = args
    return [r for b in bs if (r := _row(a, b, primes, reading)) is not None]


@dataclass
class ScanResult:
    config: ScanConfig
    rows: list[dict]
    candidates: int
    summary: dict = field(default_factory=dict)

    @property
    def discrepancies(self) -> list[dict]:
        return [r for r in self.rows if not r["consistent"]]


def run_scan(cfg: ScanConfig) -> ScanResult:
    cfg.validate()
    bs = cfg.b_list()
    tasks = [(a, bs, tuple(cfg.primes), cfg.reading) for a in cfg.a_list()]
    if cfg.jobs == 1:
        _init_worker(cfg.seed)
        chunks = [_scan_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(cfg.jobs, initializer=_init_worker, initargs=(cfg.seed,)) as ex:
            # map preserves submission order, which is (a, b)-lexicographic
            chunks = list(ex.map(_scan_chunk, tasks))
    rows = [r for chunk in chunks for r in chunk]
    res = ScanResult(cfg, rows, len(tasks) * len(bs))
    res.summary = summarize(res)
    return res


def summarize(res: ScanResult) -> dict:
    out = {
        "candidates": res.candidates,
        "irreducible": len(res.rows),
        "discrepancies": len(res.discrepancies),
    }
    for p in (2, 3):
        if p not in res.config.primes:
            continue
        conds = Counter(r[f"t{p}_condition"] for r in res.rows)
        eng = Counter(r[f"t{p}_engine"] for r in res.rows)
        out[f"p{p}"] = {
            "conditions": dict(sorted(conds.items())),
            "engine": dict(sorted(eng.items())),
        }
    if 5 in res.config.primes:
        out["p5"] = {"engine": dict(sorted(Counter(r["_p5"] for r in res.rows).items()))}
    return out


def csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\r\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _csv_value(r[k]) for k in CSV_FIELDS})
    return buf.getvalue()


def _csv_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def row_from_csv(rec: dict[str, str]) -> dict:
    """Inverse of the CSV encoding, giving the JSON row form."""
    out = dict(rec)
    out["a"], out["b"] = int(rec["a"]), int(rec["b"])
    out["irreducible"] = rec["irreducible"] == "true"
    out["consistent"] = rec["consistent"] == "true"
    return out


def json_text(res: ScanResult) -> str:
    doc = {
        "schema": SCHEMA_SCAN,
        "config": res.config.to_dict(),
        "summary": res.summary,
        "rows": [{k: r[k] for k in CSV_FIELDS} for r in res.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def ledger_text(res: ScanResult) -> str:
    lines = [f"# discrepancy ledger ({res.config.reading} reading)"]
    for r in res.discrepancies:
        lines.append(f"({r['a']}, {r['b']}): {r['notes']}")
    if len(lines) == 1:
        lines.append("(empty)")
    return "\n".join(lines) + "\n"


def write_outputs(res: ScanResult) -> None:
    cfg = res.config
    for path, text in ((cfg.csv, csv_text(res.rows)), (cfg.json, json_text(res)),
                       (cfg.ledger, ledger_text(res))):
        if path is None:
            continue
        try:
            Path(path).write_text(text, encoding="utf-8", newline="")
        except OSError as exc:
            raise OSError(f"{path}: {exc.strerror}") from exc
