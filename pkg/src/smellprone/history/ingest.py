"""Reading version history into per-window change records.

Two sources are supported. A log export is a text file with one record
per line::

    commit_id|timestamp_iso8601|author|file_path|added|deleted
    R|old_path|new_path
    T|tag|timestamp_iso8601

``R`` records a rename at that point of the log; ``T`` pins a release tag
to a timestamp so windows can be resolved. Records are expected in
chronological order. A live git working directory is read with
``git log --numstat`` between two tags instead.
"""

from __future__ import annotations

import subprocess
from collections import OrderedDict
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path, PurePosixPath
from typing import Callable, Iterable, Mapping, Sequence

from ..errors import InputError, SchemaError


@dataclass(frozen=True)
class Touched:
    cls: str
    lines_added: int
    lines_deleted: int

    @property
    def churn(self) -> int:
        return self.lines_added + self.lines_deleted


@dataclass
class Commit:
    id: str
    timestamp: datetime
    author: str
    touched: list[Touched] = field(default_factory=list)


@dataclass
class ChangeHistory:
    commits: list[Commit]
    window: tuple[str | None, str | None] = (None, None)

    def classes(self) -> set[str]:
        return {t.cls for c in self.commits for t in c.touched}

    def authors(self) -> set[str]:
        return {c.author for c in self.commits}


def normalize_author(author: str) -> str:
    return " ".join(author.split()).lower()


def parse_timestamp(text: str) -> datetime:
    text = text.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    ts = datetime.fromisoformat(text)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts


class ClassPathMapper:
    """Maps a repository file path to a class qualified name.

    With `known` names the longest dotted suffix of the path that names a
    known class wins. Without them the path after the last ``src`` (and an
    optional ``main/java``) becomes the name.
    """

    def __init__(self, known: Iterable[str] | None = None, extensions=(".java",)):
        self.known = set(known) if known is not None else None
        self.extensions = tuple(extensions)

    def __call__(self, path: str) -> str | None:
        p = PurePosixPath(path.replace("\\", "/"))
        if p.suffix not in self.extensions:
            return None
        parts = list(p.with_suffix("").parts)
        if self.known is not None:
            for i in range(len(parts)):
                cand = ".".join(parts[i:])
                if cand in self.known:
                    return cand
            return None
        if "src" in parts:
            parts = parts[len(parts) - parts[::-1].index("src"):]
            if parts[:2] == ["main", "java"]:
                parts = parts[2:]
        return ".".join(parts) or None


@dataclass
class _Entry:
    commit: str
    timestamp: datetime
    author: str
    ident: int
    added: int
    deleted: int


@dataclass
class ParsedLog:
    entries: list[_Entry]
    final_path: dict[int, str]
    tags: dict[str, datetime]


def parse_log_records(lines: Iterable[str], source: str = "<log>") -> ParsedLog:
    """Parse log-export lines, following renames to each file's final path."""
    current: dict[str, int] = {}
    final: dict[int, str] = {}
    entries: list[_Entry] = []
    tags: dict[str, datetime] = {}
    next_id = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("|")
        if fields[0] == "R" and len(fields) == 3:
            old, new = fields[1].strip(), fields[2].strip()
            ident = current.pop(old, None)
            if ident is None:
                ident = next_id
                next_id += 1
            current[new] = ident
            final[ident] = new
            continue
        if fields[0] == "T" and len(fields) == 3:
            try:
                tags[fields[1].strip()] = parse_timestamp(fields[2])
            except ValueError:
                raise SchemaError(f"{source}: bad tag timestamp", row=lineno) from None
            continue
        if len(fields) != 6:
            raise SchemaError(f"{source}: expected 6 fields, found {len(fields)}", row=lineno)
        cid, ts, author, path, added, deleted = (f.strip() for f in fields)
        try:
            stamp = parse_timestamp(ts)
        except ValueError:
            raise SchemaError(f"{source}: bad timestamp {ts!r}", row=lineno) from None
        try:
            a = int(added) if added not in ("-", "") else 0
            d = int(deleted) if deleted not in ("-", "") else 0
        except ValueError:
            raise SchemaError(f"{source}: non-integer line counts", row=lineno) from None
        if a < 0 or d < 0:
            raise SchemaError(f"{source}: negative line counts", row=lineno)
        ident = current.get(path)
        if ident is None:
            ident = next_id
            next_id += 1
            current[path] = ident
            final[ident] = path
        entries.append(_Entry(cid, stamp, normalize_author(author), ident, a, d))
    return ParsedLog(entries, final, tags)


def _assemble(entries: Sequence[_Entry], final_path: Mapping[int, str],
              mapper: Callable[[str], str | None], window) -> ChangeHistory:
    commits: "OrderedDict[str, Commit]" = OrderedDict()
    sums: dict[str, dict[str, list[int]]] = {}
    for e in entries:
        commit = commits.setdefault(e.commit, Commit(e.commit, e.timestamp, e.author))
        cls = mapper(final_path[e.ident])
        if cls is None or e.added + e.deleted == 0:
            continue
        acc = sums.setdefault(commit.id, {}).setdefault(cls, [0, 0])
        acc[0] += e.added
        acc[1] += e.deleted
    for cid, commit in commits.items():
        commit.touched = [Touched(cls, a, d) for cls, (a, d) in sums.get(cid, {}).items()]
    ordered = sorted(commits.values(), key=lambda c: c.timestamp)
    return ChangeHistory([c for c in ordered if c.touched], window)


def _window_bounds(tags: Mapping[str, datetime], window):
    prev, cur = window
    bounds = []
    for tag in (prev, cur):
        if tag is None:
            bounds.append(None)
        elif isinstance(tag, datetime):
            bounds.append(tag)
        elif tag in tags:
            bounds.append(tags[tag])
        else:
            raise InputError(f"unresolvable release tag {tag!r}")
    return bounds


def history_from_log(log: ParsedLog, window, mapper=None, tags=None) -> ChangeHistory:
    mapper = mapper or ClassPathMapper()
    all_tags = dict(log.tags)
    all_tags.update(tags or {})
    lo, hi = _window_bounds(all_tags, window)
    inside = [e for e in log.entries
              if (lo is None or e.timestamp > lo) and (hi is None or e.timestamp <= hi)]
    return _assemble(inside, log.final_path, mapper, tuple(window))


def _git(repo: Path, *args: str) -> str:
    try:
        res = subprocess.run(["git", "-C", str(repo), *args], capture_output=True,
                             text=True, check=False)
    except FileNotFoundError:
        raise InputError("git executable not found") from None
    if res.returncode != 0:
        raise InputError(f"git {' '.join(args[:2])} failed: {res.stderr.strip()}")
    return res.stdout


def _split_rename(path: str) -> tuple[str, str] | None:
    if " => " not in path:
        return None
    if "{" in path and "}" in path:
        pre, rest = path.split("{", 1)
        mid, post = rest.split("}", 1)
        old, new = mid.split(" => ", 1)
        norm = lambda s: (pre + s + post).replace("//", "/")
        return norm(old), norm(new)
    old, new = path.split(" => ", 1)
    return old, new


def git_log_records(repo, window) -> list[str]:
    """Translate ``git log --numstat`` of a tag range into log-export records."""
    repo = Path(repo)
    prev, cur = window
    for tag in (prev, cur):
        if tag is not None:
            _git(repo, "rev-parse", "--verify", "--quiet", f"{tag}^{{commit}}")
    rev = f"{prev}..{cur or 'HEAD'}" if prev else (cur or "HEAD")
    out = _git(repo, "log", "--reverse", "-M", "--numstat", "--date=iso-strict",
               "--format=%x01%H|%ad|%an <%ae>", rev)
    records: list[str] = []
    header = None
    for line in out.splitlines():
        if line.startswith("\x01"):
            header = line[1:]
            continue
        if not line.strip() or header is None:
            continue
        added, deleted, path = line.split("\t", 2)
        renamed = _split_rename(path)
        if renamed:
            records.append(f"R|{renamed[0]}|{renamed[1]}")
            path = renamed[1]
        records.append(f"{header}|{path}|{added}|{deleted}")
    return records


def ingest_history(source, window: tuple, mapper: Callable[[str], str | None] | None = None,
                   tags: Mapping[str, datetime] | None = None) -> ChangeHistory:
    """Commits inside ``(window[0], window[1]]`` with files mapped to classes.

    `source` is either a log-export file or a git working directory. A
    window bound of None means the start (or end) of the history.
    """
    path = Path(source)
    if path.is_dir():
        if not (path / ".git").exists():
            raise InputError(f"{path} is not a git working directory")
        log = parse_log_records(git_log_records(path, window), str(path))
        return _assemble(log.entries, log.final_path, mapper or ClassPathMapper(), tuple(window))
    if not path.is_file():
        raise InputError(f"history source not found: {path}")
    with path.open(encoding="utf-8") as fh:
        log = parse_log_records(fh, str(path))
    return history_from_log(log, window, mapper, tags)


def read_log_export(path) -> ParsedLog:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"history source not found: {path}")
    with path.open(encoding="utf-8") as fh:
        return parse_log_records(fh, str(path))
