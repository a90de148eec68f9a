"""Deterministic generator of malformed surface inputs."""

import random

from fltk.errors import ParseError
from fltk.surface import parse

SEEDS = [
    "0", "[0->0]", "{0,{0}}", "set{set{},set{set{}}}", "apply([0->0],0)",
    "comp({0},[{0}->0])", "pair(0,{0})", "ord(3)", "isfevel({0,{0}})",
    "[0->[0->0],{0}->0]", "tofun(set{set{}})", "hfpot({0})",
]
PIECES = ["0", "1", "00", "[", "]", "{", "}", "(", ")", ",", "->", "-", ">",
          "set", "apply", "x", " ", "\n", "@", "é", "\t", "9", "Set"]


def mutate(rng: random.Random, text: str) -> str:
    op = rng.randrange(5)
    i = rng.randrange(len(text) + 1)
    if op == 0:
        return text[:i]
    if op == 1:
        j = rng.randrange(i, len(text) + 1)
        return text[:i] + text[j:]
    if op == 2:
        return text[:i] + rng.choice(PIECES) + text[i:]
    if op == 3:
        return "".join(rng.choice(PIECES) for _ in range(rng.randrange(1, 12)))
    return "[" * rng.randrange(150, 260) + text


def malformed_cases(count: int, seed: int = 0):
    """Yield ``count`` inputs that the parser must reject."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        text = rng.choice(SEEDS)
        for _ in range(rng.randrange(1, 4)):
            text = mutate(rng, text)
        try:
            parse(text)
        except ParseError:
            made += 1
            yield text
        except Exception:
            # surfaced to the caller as a crash
            made += 1
            yield text
