"""Access to the structure files shipped with the package."""
from importlib import resources
from pathlib import Path

from . import io

NAMES = ("discrete2", "local2catoid", "functional2catoid", "twocategory", "pairgroupoid2", "path4",
         "bool2q", "aabot", "diamond", "domnotunique", "d10", "idid")

CATOID_FIXTURES = ("discrete2", "local2catoid", "functional2catoid", "twocategory", "pairgroupoid2", "path4")


def fixture_path(name) -> Path:
    return Path(str(resources.files("catoids") / "fixtures" / f"{name}.json"))


def load_fixture(name):
    return io.load(fixture_path(name))


def spec_path(name) -> Path:
    return Path(str(resources.files("catoids") / "specs" / f"{name}.json"))


def resolve(path):
    """A path as given, or a shipped fixture or search spec when the path does not exist but names one."""
    p = Path(path)
    if p.exists():
        return p
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    here = p.parent.name in ("", ".") or str(p.parent) == "."
    if stem in NAMES and (here or p.parent.name == "fixtures"):
        return fixture_path(stem)
    if (here or p.parent.name == "specs") and spec_path(stem).exists():
        return spec_path(stem)
    return p
