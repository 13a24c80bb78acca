#!/usr/bin/env python3
"""Reference implementation of the valence and polarity rule sets.

Written independently of the Rust engine and used only to produce the frozen
expectations in ../fixtures/sentiment_corpus.json. Re-run with:

    python3 crates/core/tests/oracle/reference_sentiment.py > crates/core/tests/fixtures/sentiment_corpus.json
"""
import json
import math
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "..", "data")

INCR = 0.293
DECR = -0.293
CAPS = 0.733
NEGATION = -0.74
EXCLAIM = 0.292
EXCLAIM_CAP = 3
ALPHA = 15.0
BAND = 0.05

BOOST_UP = """absolutely amazingly awfully completely considerable considerably decidedly
deeply effing enormous enormously entirely especially exceptional exceptionally extreme
extremely fabulously flipping flippin frackin fracking fricking frickin frigging friggin
fully fuckin fucking fuggin fugging greatly hella highly hugely incredible incredibly
intensely major majorly more most particularly purely quite really remarkably so
substantially thoroughly total totally tremendous tremendously uber unbelievably
unusually utter utterly very""".split()
BOOST_DOWN = """almost barely hardly kinda kindof kind-of less little marginal marginally
occasional occasionally partly scarce scarcely slight slightly somewhat sorta sortof
sort-of""".split()
BOOSTERS = {w: INCR for w in BOOST_UP}
BOOSTERS.update({w: DECR for w in BOOST_DOWN})

NEGATORS = set("""aint arent cannot cant couldnt darent didnt doesnt ain't aren't can't
couldn't daren't didn't doesn't dont hadnt hasnt havent isnt mightnt mustnt neither
don't hadn't hasn't haven't isn't mightn't mustn't neednt needn't never none nope nor
not nothing nowhere oughtnt shant shouldnt uhuh wasnt werent oughtn't shan't shouldn't
uh-uh wasn't weren't without wont wouldnt won't wouldn't rarely seldom despite""".split())


def load(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            tok, val = line.split("\t")
            out[tok.strip().lower()] = float(val)
    return out


def tokens(text):
    out = []
    for piece in text.split():
        start, end = 0, len(piece)
        while start < end and not piece[start].isalnum():
            start += 1
        while end > start and not piece[end - 1].isalnum():
            end -= 1
        if start < end:
            out.append(piece[start:end])
    return out


def is_upper(tok):
    return any(c.isupper() for c in tok) and not any(c.islower() for c in tok)


def negates(word):
    return word in NEGATORS or "n't" in word


def clamp(x):
    return max(-1.0, min(1.0, x))


def valence(text, lex):
    toks = tokens(text)
    lower = [t.lower() for t in toks]
    n = len(toks)
    caps = sum(1 for t in toks if is_upper(t))
    shouting = 0 < n - caps < n
    scores = []
    for i, tok in enumerate(toks):
        w = lower[i]
        if w in BOOSTERS or w not in lex:
            scores.append(0.0)
            continue
        v = lex[w]
        if is_upper(tok) and shouting:
            v = v + CAPS if v > 0 else v - CAPS
        for dist in range(3):
            j = i - dist - 1
            if j < 0:
                break
            if lower[j] in lex:
                continue
            s = 0.0
            if lower[j] in BOOSTERS:
                s = BOOSTERS[lower[j]]
                if v < 0:
                    s = -s
                if is_upper(toks[j]) and shouting:
                    s = s + CAPS if v > 0 else s - CAPS
            if dist == 1:
                s *= 0.95
            elif dist == 2:
                s *= 0.9
            v += s
            if negates(lower[j]):
                v *= NEGATION
        scores.append(v)
    if "but" in lower:
        pivot = lower.index("but")
        scores = [s * 0.5 if k < pivot else (s * 1.5 if k > pivot else s)
                  for k, s in enumerate(scores)]
    total = 0.0
    for s in scores:
        total += s
    if total != 0.0:
        amp = min(text.count("!"), EXCLAIM_CAP) * EXCLAIM
        total = total + amp if total > 0 else total - amp
    if total == 0.0:
        return 0.0
    return clamp(total / math.sqrt(total * total + ALPHA))


def polarity(text, lex):
    lower = [t.lower() for t in tokens(text)]
    vals = []
    for i, w in enumerate(lower):
        if w in BOOSTERS or w not in lex:
            continue
        p = lex[w]
        if i > 0 and lower[i - 1] in BOOSTERS:
            p *= 1.0 + BOOSTERS[lower[i - 1]]
        if (i > 0 and negates(lower[i - 1])) or (i > 1 and negates(lower[i - 2])):
            p *= -0.5
        vals.append(p)
    if not vals:
        return 0.0
    total = 0.0
    for p in vals:
        total += p
    return clamp(total / len(vals))


def label(s):
    if s > BAND:
        return "positive"
    if s < -BAND:
        return "negative"
    return "neutral"


def combine(v, p):
    return v if label(v) == label(p) else 0.0


CORPUS = [
    "",
    "good",
    "not good",
    "great",
    "great great",
    "not great",
    "The stock is very good",
    "The stock is extremely bad",
    "This is slightly good",
    "I love this company",
    "I hate this company",
    "GME is GREAT today",
    "GREAT GREAT GREAT",
    "good!",
    "good!!",
    "good!!!",
    "good!!!!!",
    "The earnings were good but the guidance was terrible",
    "The earnings were bad but the outlook is excellent",
    "I don't think this is a good idea",
    "It isn't bad at all",
    "never happy with this broker",
    "not very good",
    "not bad",
    "This is a disaster, sell everything!!",
    "to the moon!!! rocket rocket",
    "Honestly the best trade I've made this year",
    "worst decision ever, I lost everything",
    "The market is open",
    "hold hold hold",
    "What a wonderful, amazing, fantastic day!",
    "This is VERY bad news for shorts",
    "This is very BAD news for shorts",
    "kinda nice I guess",
    "barely ok",
    "I am not sure this is a scam",
    "Without doubt a brilliant move",
    "nothing good comes from this",
    "Stupid stupid stupid",
    "happy happy joy joy",
    "   ",
    "$GME to 1000, smart money is bullish",
    "Bearish on AMC, the debt is a problem",
    "This isn't the worst, but it's not great either",
    "Fantastic quarter, but I'm worried about inflation",
    "Das ist gut",
    "café is nice ❤",
    "I'm not really angry, just disappointed",
    "profit profit loss",
    "So so so good!!! LOVE IT",
]


def main():
    vlex = load(os.path.join(DATA, "valence.tsv"))
    plex = load(os.path.join(DATA, "polarity.tsv"))
    rows = []
    for text in CORPUS:
        v = valence(text, vlex)
        p = polarity(text, plex)
        c = combine(v, p)
        rows.append({"text": text, "valence": v, "polarity": p,
                     "sentiment": c, "label": label(c)})
    assert len(rows) == 50, len(rows)
    json.dump(rows, sys.stdout, indent=2, ensure_ascii=False)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
