"""Recompute the small worked cases: the pentagon, the two-pentagon chain,
the Z + Z2 pipeline, and finite-group orders through pi_1(Q_H, I).

    python scripts/reproduce_cases.py [--max-cosets N]
"""
import argparse
import time
from dataclasses import dataclass

from triquiver.abelian import abelianization
from triquiver.construction import build_construction_pair, build_free_block, pentagon
from triquiver.cosets import todd_coxeter
from triquiver.fundamental import pi1_from_ideal, pi1_presentation
from triquiver.pathalgebra import BoundQuiver, euler_characteristic, quotient_dimension
from triquiver.presentations import normalize, parse_presentation, split_free_generators, to_positive
from triquiver.tietze import tietze_simplify


@dataclass
class Config:
    max_cosets: int = 100_000
    groups: tuple = (
        ("Z + Z2", "generators: a b\nrelators: a*b*a^-1*b^-1; a^2\n"),
        ("S3", "generators: a b\nrelators: a^2; b^3; a*b*a*b\n"),
        ("Z4", "generators: a\nrelators: a^4\n"),
    )


def order(g, cfg):
    return todd_coxeter(tietze_simplify(g), cfg.max_cosets).verdict


def main(cfg: Config):
    q, ad, adbcd = pentagon()
    g1 = pi1_presentation(BoundQuiver(q, (ad,), "v"))
    g2 = pi1_presentation(BoundQuiver(q, (adbcd,), "v"))
    print(f"pentagon, ideal <ad>:      {g1}  abelian {abelianization(g1)}")
    print(f"pentagon, ideal <ad+bcd>:  {g2}  order {order(g2, cfg)}")

    b = build_free_block(2)
    print(f"two pentagons: chi {euler_characteristic(b.quiver)}, L gives {pi1_presentation(b.bound_L)}, "
          f"Lbar order {order(pi1_presentation(b.bound_Lbar), cfg)}")

    for name, text in cfg.groups:
        t = time.perf_counter()
        g = parse_presentation(text)
        m, h = split_free_generators(to_positive(g))
        np = normalize(h)
        pair = build_construction_pair(np)
        pi = pi1_presentation(pair.bound_I)
        bar = pi1_from_ideal(pair.bound_Ibar, "local")
        print(f"\n{name}: m = {m}, n = {np.n}, {len(np.lassos)} lassos, {len(np.cross_lassos)} cross-lassos")
        print(f"  Q_H: {len(pair.quiver.vertices)} vertices, {len(pair.quiver.arrows)} arrows")
        print(f"  dim kQ/I = {quotient_dimension(pair.bound_I)}, dim kQ/Ibar = {quotient_dimension(pair.bound_Ibar)}")
        print(f"  pi_1(Q_H, I): abelian {abelianization(pi)}, enumeration {order(pi, cfg)}"
              f" (input: {order(g, cfg)})")
        print(f"  pi_1(Q_H, Ibar): enumeration {order(bar, cfg)}")
        print(f"  {time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-cosets", type=int, default=Config.max_cosets)
    main(Config(max_cosets=ap.parse_args().max_cosets))
