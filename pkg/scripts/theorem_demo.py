"""Build one quiver carrying several groups, one ideal per group, and
report the invariants of each presentation.

    python scripts/theorem_demo.py            # Z^2, S3, Z*Z2
    python scripts/theorem_demo.py a.grp b.grp
"""
import argparse
from dataclasses import dataclass, field

from triquiver.cli import Limits, verify_family
from triquiver.presentations import parse_presentation

DEFAULT_GROUPS = [
    "generators: a b\nrelators: a*b*a^-1*b^-1\n",
    "generators: a b\nrelators: a^2; b^3; a*b*a*b\n",
    "generators: a b\nrelators: b^2\n",
]


@dataclass
class Config:
    texts: list = field(default_factory=lambda: list(DEFAULT_GROUPS))
    limits: Limits = field(default_factory=Limits)


def main(cfg: Config):
    gs = [parse_presentation(t) for t in cfg.texts]
    rep, fam = verify_family(gs, cfg.limits)
    print(f"quiver: {len(fam.quiver.vertices)} vertices, {len(fam.quiver.arrows)} arrows, base {fam.base}")
    print(rep.text())
    return rep.exit_code


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("inputs", nargs="*", help=".grp files")
    args = ap.parse_args()
    texts = [open(p).read() for p in args.inputs] or list(DEFAULT_GROUPS)
    raise SystemExit(main(Config(texts=texts)))
