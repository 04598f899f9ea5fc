"""Bundled example surfaces and curves, loadable by name."""

from importlib import resources

from ..surface import Triangulation, parse_triangulation

# every bundled triangulation; closed-curve fixtures keyed by surface name
SURFACES = (
    "annulus",
    "pentagon",
    "hexagon",
    "heptagon",
    "octagon",
    "punctured-square",
    "annulus2",
    "torus-boundary",
)
CLOSED_CURVES = {
    "annulus": "annulus-core",
    "annulus2": "annulus2-core",
    "torus-boundary": "torus-weave",
}


def fixture_text(filename: str) -> str:
    return resources.files(__package__).joinpath(filename).read_text()


def load_surface(name: str) -> Triangulation:
    if name not in SURFACES:
        raise KeyError(f"unknown surface fixture {name!r}")
    return parse_triangulation(fixture_text(name + ".tri"))


def load_curve_text(name: str) -> str:
    return fixture_text(name + ".curve")
