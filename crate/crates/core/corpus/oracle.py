#!/usr/bin/env python3
"""Brute-force oracle for the corpus.

Recomputes every concept straight from the definitions, with no code shared
with the Rust crate, and writes oracle.jsonl next to this script.

    python3 oracle.py
"""

import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

HERE = Path(__file__).resolve().parent


def read_game(path):
    players = counts = None
    labels = []
    rows = []
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("players:"):
            players = int(line[len("players:"):])
        elif line.startswith("strategies:"):
            counts = [int(t) for t in line[len("strategies:"):].split()]
        elif line.startswith("labels:"):
            labels.append(line[len("labels:"):].split())
        else:
            rows.append(tuple(Fraction(t) for t in line.split()))
    if not labels:
        labels = [[str(s) for s in range(c)] for c in counts]
    profiles = list(itertools.product(*[range(c) for c in counts]))
    assert len(profiles) == len(rows) and all(len(r) == players for r in rows)
    return {"n": players, "counts": counts, "labels": labels, "u": dict(zip(profiles, rows)), "profiles": profiles}


def name(g, p):
    return ",".join(g["labels"][i][s] for i, s in enumerate(p))


def names(g, ps):
    return [name(g, p) for p in sorted(ps)]


def text(x):
    """Same canonical number text as the game format."""
    x = Fraction(x)
    d = x.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole = x.numerator // x.denominator
    frac = x - whole
    digits = ""
    while frac:
        frac *= 10
        digits += str(frac.numerator // frac.denominator)
        frac -= frac.numerator // frac.denominator
    return f"{sign}{whole}.{digits}"


def maximin(g, alive):
    out = []
    for i in range(g["n"]):
        best = None
        for s in range(g["counts"][i]):
            vals = [g["u"][p][i] for p in alive if p[i] == s]
            if vals and (best is None or min(vals) > best):
                best = min(vals)
        out.append(best)
    return out


def weakly_above(a, b):
    return all(x >= y for x, y in zip(a, b))


def strictly_above(a, b):
    return weakly_above(a, b) and any(x > y for x, y in zip(a, b))


def general_position(g):
    return all(len({g["u"][p][i] for p in g["profiles"]}) == len(g["profiles"]) for i in range(g["n"]))


def trace(g):
    alive = set(g["profiles"])
    rounds = []
    while True:
        m = maximin(g, alive)
        kept = {p for p in alive if weakly_above(g["u"][p], m)}
        rounds.append({"alive": set(alive), "maximin": m, "eliminated": alive - kept})
        done = kept == alive or not kept
        alive = kept
        if done:
            return rounds, alive


def pte(g, strict):
    if strict and not general_position(g):
        return {"error": "general-position"}
    _, fix = trace(g)
    outcome = {0: "none", 1: "unique"}.get(len(fix), "ambiguous")
    return {
        "outcome": outcome,
        "profiles": names(g, fix),
        "payoffs": [[text(v) for v in g["u"][p]] for p in sorted(fix)],
    }


def nash(g):
    out = []
    for p in g["profiles"]:
        stable = True
        for i in range(g["n"]):
            for s in range(g["counts"][i]):
                q = p[:i] + (s,) + p[i + 1:]
                if g["u"][q][i] > g["u"][p][i]:
                    stable = False
        if stable:
            out.append(p)
    return out


def translucent_thresholds(g):
    out = []
    for i in range(g["n"]):
        minima = sorted(min(g["u"][p][i] for p in g["profiles"] if p[i] == s) for s in range(g["counts"][i]))
        out.append(minima[1] if len(minima) > 1 else minima[0])
    return out


def pareto(g):
    return [p for p in g["profiles"] if not any(strictly_above(g["u"][q], g["u"][p]) for q in g["profiles"])]


def minimax(g):
    active = [set(range(c)) for c in g["counts"]]
    while True:
        doomed = []
        for i in range(g["n"]):
            live = [p for p in g["profiles"] if all(p[j] in active[j] for j in range(g["n"]))]
            def vals(s):
                return [g["u"][p][i] for p in live if p[i] == s]
            for s in active[i]:
                if any(t != s and min(vals(t)) > max(vals(s)) for t in active[i]):
                    doomed.append((i, s))
        if not doomed:
            break
        for i, s in doomed:
            active[i].discard(s)
    return [[g["labels"][i][s] for s in sorted(active[i])] for i in range(g["n"])]


def symmetric(g):
    n = g["n"]
    if len(set(g["counts"])) != 1:
        return False
    for perm in itertools.permutations(range(n)):
        for p in g["profiles"]:
            q = tuple(p[perm[k]] for k in range(n))
            # player k in q plays what player perm[k] played in p
            if any(g["u"][q][k] != g["u"][p][perm[k]] for k in range(n)):
                return False
    return True


def hofstadter(g):
    if not symmetric(g):
        return {"error": "not-symmetric"}
    diagonal = [tuple([s] * g["n"]) for s in range(g["counts"][0])]
    best = max(g["u"][d][0] for d in diagonal)
    winners = [d for d in diagonal if g["u"][d][0] == best]
    if len(winners) > 1:
        return {"error": "diagonal-ties"}
    return name(g, winners[0])


def social_dilemma(g):
    ne = nash(g)
    if len(ne) != 1:
        return False
    return sum(strictly_above(g["u"][p], g["u"][ne[0]]) for p in g["profiles"]) == 1


def game_records(entry, g):
    rounds, _ = trace(g)
    ir_threshold = maximin(g, set(g["profiles"]))
    tt = translucent_thresholds(g)
    values = {
        "general_position": general_position(g),
        "symmetric": symmetric(g),
        "pte": pte(g, strict=True),
        "pte_lenient": pte(g, strict=False),
        "maximins": [[text(v) for v in r["maximin"]] for r in rounds],
        "rounds": [{"survivors": names(g, r["alive"]), "eliminated": names(g, r["eliminated"])} for r in rounds],
        "nash": names(g, nash(g)),
        "ir": names(g, [p for p in g["profiles"] if weakly_above(g["u"][p], ir_threshold)]),
        "translucent": names(g, [p for p in g["profiles"] if weakly_above(g["u"][p], tt)]),
        "pareto": names(g, pareto(g)),
        "minimax": minimax(g),
        "hofstadter": hofstadter(g),
        "social_dilemma": social_dilemma(g),
    }
    return [{"entry": entry, "concept": c, "expected": v, "source": "oracle"} for c, v in values.items()]


def newcomb_records(entry, problem):
    u = {k: Fraction(v) for k, v in problem["payoffs"].items()}
    prior = Fraction(problem["prior_full"])
    acc = Fraction(problem["accuracy"])
    table = {
        "cdt": (u["one_full"] * prior + u["one_empty"] * (1 - prior), u["two_full"] * prior + u["two_empty"] * (1 - prior)),
        "edt": (u["one_full"] * acc + u["one_empty"] * (1 - acc), u["two_full"] * (1 - acc) + u["two_empty"] * acc),
    }
    table["nndt"] = table["edt"]
    out = []
    for theory, (one, two) in table.items():
        verdict = "ONE" if one > two else "TWO" if two > one else "indifferent"
        out.append({
            "entry": entry,
            "concept": theory,
            "expected": {"one": text(one), "two": text(two), "recommend": verdict},
            "source": "oracle",
        })
    return out


def main():
    records = []
    for path in sorted(HERE.glob("*.game")):
        records += game_records(path.stem, read_game(path))
    for path in sorted(HERE.glob("*.json")):
        records += newcomb_records(path.stem, json.loads(path.read_text()))
    out = HERE / "oracle.jsonl"
    out.write_text("".join(json.dumps(r, separators=(",", ":")) + "\n" for r in records))
    print(f"wrote {len(records)} records to {out}", file=sys.stderr)


if __name__ == "__main__":
    main()
