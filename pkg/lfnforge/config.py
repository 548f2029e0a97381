"""
Run configuration of the command line with a canonical key=value text form.
"""

# License: BSD (3-clause)

import dataclasses
import os

from .util import default_precision, fingerprint

FORM_BUILTINS = ("builtin:delta",)


def _text_float(value):
    return repr(float(value))


def _text_list(value):
    return ",".join(value)


def _parse_list(text):
    return tuple(item.strip() for item in text.split(",") if item.strip())


def _parse_optional(parse):
    def parser(text):
        return None if text == "" else parse(text)
    return parser


@dataclasses.dataclass
class RunConfig:
    """Everything that determines the output of a command-line run.

    Parameters
    ----------
    form: str
        'builtin:delta' or 'file:<path>' of a coefficient file.
    precision: int
        Working precision in bits.
    T: float | None
        Window parameter of the moment statistics.
    tmax: float | None
        Height of the zero scan.
    nmax: int | None
        Size of the coefficient table.
    statistics: tuple of str
        Statistics to compute.
    output_dir: str
        Directory of all artifacts.
    n_jobs: int
        Number of joblib workers.
    seed: int
        Seed of the randomized checkers.
    weight, level: int
        Weight and level of a form read from a file.
    character: str
        Character label of a form read from a file.
    """
    form: str = "builtin:delta"
    precision: int = dataclasses.field(default_factory=default_precision)
    T: float = None
    tmax: float = None
    nmax: int = None
    statistics: tuple = ()
    output_dir: str = "lfnforge-out"
    n_jobs: int = 1
    seed: int = 0
    weight: int = 12
    level: int = 1
    character: str = "principal"

    def __post_init__(self):
        if not (self.form in FORM_BUILTINS or self.form.startswith("file:")):
            raise ValueError(
                f"form expected to be one of {FORM_BUILTINS} or 'file:<path>', got '{self.form}'")
        if self.precision < 53:
            raise ValueError(f"precision expected to be >= 53 bits, got {self.precision}")
        if self.n_jobs == 0:
            raise ValueError("n_jobs expected to be nonzero")
        self.statistics = tuple(self.statistics)
        for name in ("T", "tmax"):
            value = getattr(self, name)
            if value is not None:
                setattr(self, name, float(value))

    @property
    def form_path(self):
        return self.form[len("file:"):] if self.form.startswith("file:") else None

    def to_text(self):
        """Canonical text: sorted keys, one ``key=value`` per line."""
        lines = []
        for field in sorted(dataclasses.fields(self), key=lambda f: f.name):
            value = getattr(self, field.name)
            lines.append(f"{field.name}={_FORMATTERS[field.name](value)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        """Parse ``key=value`` lines, skipping blank lines and '#' comments."""
        values = {}
        for line_no, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line {line_no}: expected key=value, got '{line}'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _PARSERS:
                raise ValueError(f"config line {line_no}: unknown key '{key}'")
            values[key] = _PARSERS[key](value)
        return cls(**values)

    @classmethod
    def from_file(cls, path):
        with open(path) as f:
            return cls.from_text(f.read())

    def save(self, path, overwrite=False):
        if os.path.exists(path) and not overwrite:
            raise FileExistsError(f"{path} exists, use overwrite=True to replace it")
        with open(path, "w") as f:
            f.write(self.to_text())

    def update(self, **overrides):
        """Copy with every override that is not None applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changes)

    @property
    def fingerprint(self):
        """First 16 hex chars of the SHA-256 of the canonical text."""
        return fingerprint(self.to_text())


_FORMATTERS = {
    "form": str, "precision": str, "T": lambda v: "" if v is None else _text_float(v),
    "tmax": lambda v: "" if v is None else _text_float(v),
    "nmax": lambda v: "" if v is None else str(v), "statistics": _text_list,
    "output_dir": str, "n_jobs": str, "seed": str, "weight": str, "level": str,
    "character": str,
}

_PARSERS = {
    "form": str, "precision": int, "T": _parse_optional(float), "tmax": _parse_optional(float),
    "nmax": _parse_optional(int), "statistics": _parse_list, "output_dir": str,
    "n_jobs": int, "seed": int, "weight": int, "level": int, "character": str,
}
