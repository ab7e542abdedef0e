"""Machine-readable suite reports.

Schema "1": {"schema", "suite", "context", "cases": [{"name", "inputs",
"residual", "threshold", "pass"}], "pass"}.  Cases are sorted by (name,
serialized inputs) so reports are byte-identical across repeated runs with
the same flags and seed; wall time is tracked on the object for console
display but deliberately excluded from the serialized forms.
"""

import csv
import io
import json
from dataclasses import dataclass, field

SCHEMA = "1"


def fmt_complex(z):
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_complex(text):
    """Accepts 're', 're+imi' / 're-imi' literals."""
    t = text.strip().replace(" ", "")
    if t.endswith(("i", "j")):
        t = t[:-1] + "j"
        return complex(t)
    return complex(float(t))


def _fmt_input(v):
    if isinstance(v, complex):
        return fmt_complex(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


@dataclass
class Case:
    name: str
    inputs: dict
    residual: float
    threshold: float

    @property
    def passed(self):
        return self.residual < self.threshold

    def as_dict(self):
        return {
            "name": self.name,
            "inputs": {k: _fmt_input(v) for k, v in sorted(self.inputs.items())},
            "residual": float(self.residual),
            "threshold": float(self.threshold),
            "pass": self.passed,
        }


@dataclass
class SuiteReport:
    suite: str
    context: dict
    cases: list = field(default_factory=list)
    wall_s: float = 0.0  # console-only; never serialized

    def add(self, name, inputs, residual, threshold):
        self.cases.append(Case(name, inputs, float(residual), float(threshold)))

    @property
    def passed(self):
        return all(c.passed for c in self.cases)

    def sorted_cases(self):
        return sorted(self.cases, key=lambda c: (c.name, json.dumps(
            c.as_dict()["inputs"], sort_keys=True)))

    def as_dict(self):
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "context": {k: _fmt_input(v) for k, v in sorted(self.context.items())},
            "cases": [c.as_dict() for c in self.sorted_cases()],
            "pass": self.passed,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=False) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "name", "residual", "threshold", "pass"])
        for c in self.sorted_cases():
            w.writerow([self.suite, c.name, repr(float(c.residual)),
                        repr(float(c.threshold)), str(c.passed).lower()])
        return buf.getvalue()

    def to_table(self):
        lines = [f"suite: {self.suite}   "
                 f"({'PASS' if self.passed else 'FAIL'}, {len(self.cases)} cases, "
                 f"{self.wall_s:.2f}s)"]
        for k, v in sorted(self.context.items()):
            lines.append(f"  {k} = {_fmt_input(v)}")
        width = max((len(c.name) for c in self.cases), default=10)
        for c in self.sorted_cases():
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  {mark} {c.name:<{width}}  residual {c.residual:.3e}"
                         f"  < {c.threshold:.1e}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        rep = cls(data["suite"], dict(data["context"]))
        for c in data["cases"]:
            rep.add(c["name"], dict(c["inputs"]), c["residual"], c["threshold"])
        return rep
