"""Check reports: named laws with pass/fail status and witnesses."""
import json
from dataclasses import dataclass, field, asdict

MAX_WITNESSES = 8

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass
class Check:
    name: str
    status: str
    witnesses: list = field(default_factory=list)
    violations: int = 0
    tested: int = 0
    kind: str = "axiom"  # "info" checks never affect Report.ok
    note: str = ""

    @property
    def passed(self):
        return self.status == PASS

    @property
    def failed(self):
        return self.status == FAIL

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    def law(self, name, cases, holds, show=None, kind="axiom", note=""):
        """Evaluate `holds(*case)` on every case, keeping the first witnesses."""
        bad, wits, n = 0, [], 0
        for case in cases:
            if not isinstance(case, tuple):
                case = (case,)
            n += 1
            if not holds(*case):
                bad += 1
                if len(wits) < MAX_WITNESSES:
                    wits.append(show(*case) if show else list(case))
        chk = Check(name, FAIL if bad else PASS, wits, bad, n, kind, note)
        self.checks.append(chk)
        return chk

    def add(self, name, ok, witness=None, kind="axiom", note=""):
        wits = [] if witness is None else [witness]
        chk = Check(name, PASS if ok else FAIL, wits, 0 if ok else 1, 1, kind, note)
        self.checks.append(chk)
        return chk

    def skip(self, name, note="", kind="axiom"):
        chk = Check(name, NA, kind=kind, note=note)
        self.checks.append(chk)
        return chk

    def merge(self, other, prefix=""):
        for c in other.checks:
            c = Check(**asdict(c))
            if prefix:
                c.name = f"{prefix}{c.name}"
            self.checks.append(c)
        for k, v in other.facts.items():
            self.facts[f"{prefix}{k}"] = v
        return self

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    def names(self):
        return [c.name for c in self.checks]

    @property
    def ok(self):
        return not any(c.failed and c.kind == "axiom" for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.failed and c.kind == "axiom"]

    def to_dict(self):
        return {"title": self.title, "ok": self.ok,
                "checks": [asdict(c) for c in self.checks],
                "facts": self.facts}

    @classmethod
    def from_dict(cls, d):
        return cls(d["title"], [Check(**c) for c in d["checks"]], dict(d.get("facts", {})))

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=1, ensure_ascii=False)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_text(self):
        lines = [f"== {self.title}"]
        for c in self.checks:
            tag = {PASS: "PASS", FAIL: "FAIL", NA: "n/a "}[c.status]
            if c.kind == "info":
                tag = tag.lower()
            line = f"  {tag}  {c.name}"
            if c.failed:
                line += f"  [{c.violations}/{c.tested}]"
                if c.witnesses:
                    line += f"  witness: {_fmt(c.witnesses[0])}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
        for k, v in self.facts.items():
            lines.append(f"  - {k}: {_fmt(v)}")
        lines.append(f"  => {'OK' if self.ok else 'FAILED'}")
        return "\n".join(lines)


def _fmt(v):
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)
