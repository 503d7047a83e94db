#!/usr/bin/env python3
"""Regenerate the bundled English sample corpus (data/samples/en/).

The sample is synthetic but built from genuine English vocabulary and
simple English clause patterns, so its spelling statistics (th/he/the
dominance) and structure statistics (ADP DET NOUN prevalence) match real
English text. raw.txt and tagged.conllu are generated from the same
grammar; they are not parallel texts and do not need to be.

Deterministic: reruns produce identical files.
"""

import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from glossotype.rng import Stream  # noqa: E402

OUT = Path(__file__).resolve().parent.parent / "src" / "glossotype" / "data" / "samples" / "en"
SEED = 711
RAW_TARGET = 6000
TAGSEQ_TARGET = 2600

DET = ["the", "the", "the", "the", "a", "a", "this", "that", "my", "your",
       "his", "her", "its", "our", "their", "every", "some", "another"]
NOUN = [
    "man", "woman", "child", "dog", "cat", "house", "boat", "river", "mountain",
    "city", "friend", "teacher", "doctor", "farmer", "soldier", "king", "queen",
    "garden", "street", "door", "window", "table", "chair", "book", "letter",
    "story", "song", "voice", "morning", "evening", "night", "winter", "summer",
    "rain", "snow", "wind", "fire", "water", "bread", "apple", "horse", "bird",
    "fish", "tree", "forest", "field", "village", "market", "church", "school",
    "road", "bridge", "tower", "castle", "ship", "island", "valley", "hill",
    "stone", "light", "shadow", "dream", "journey", "moment", "answer",
    "question", "word", "name", "face", "hand", "heart", "mother", "father",
    "brother", "sister", "neighbour", "weather", "feather", "leather", "cloth",
]
VERB_PAST = [
    "saw", "found", "took", "brought", "watched", "followed", "remembered",
    "opened", "closed", "carried", "built", "loved", "heard", "visited",
    "left", "reached", "crossed", "climbed", "painted", "wrote", "read",
    "answered", "gathered", "thanked", "helped", "called", "chased", "held",
    "moved", "touched", "washed", "pushed", "filled", "covered", "whispered",
]
VERB_BASE = [
    "see", "find", "take", "bring", "watch", "follow", "remember", "open",
    "close", "carry", "build", "love", "hear", "visit", "leave", "reach",
    "cross", "climb", "paint", "write", "read", "answer", "gather", "thank",
    "help", "call", "chase", "hold", "move", "touch", "wash", "push", "fill",
]
ADJ = [
    "old", "young", "small", "large", "quiet", "bright", "dark", "cold",
    "warm", "gentle", "strange", "heavy", "narrow", "wide", "ancient",
    "golden", "green", "red", "white", "tall", "deep", "empty", "silent",
    "distant", "hidden", "fresh", "smooth", "rough", "thick", "thin",
]
ADV = ["quietly", "slowly", "quickly", "often", "always", "never", "sometimes",
       "carefully", "suddenly", "gently", "finally", "early", "together",
       "there", "here", "then"]
ADP = ["in", "on", "at", "under", "over", "near", "behind", "beside",
       "across", "through", "between", "from", "toward", "into", "within",
       "around"]
PRON_SUBJ = ["he", "she", "they", "we", "i", "you", "it"]
PRON_OBJ = ["him", "her", "them", "us", "me", "you", "it"]
AUX = ["is", "was", "are", "were", "has", "had", "will", "can", "must",
       "may", "would", "could", "did"]
CCONJ = ["and", "and", "but", "or"]
SCONJ = ["because", "while", "when", "if", "before", "after", "although"]
NUM = ["two", "three", "four", "five", "seven", "ten", "twelve"]
PROPN = ["mary", "john", "anna", "peter", "thomas", "clara", "henry",
         "alice", "edward", "rose", "london", "paris", "rome"]
INTJ = ["oh", "well", "yes", "ah"]


def pick(stream: Stream, items: list[str]) -> str:
    return items[stream.randrange(len(items))]


def noun_phrase(stream: Stream, allow_pron: bool = True) -> list[tuple[str, str]]:
    roll = stream.randrange(20)
    if roll < 11:
        out = [(pick(stream, DET), "DET")]
        if stream.randrange(10) < 2:
            out.append((pick(stream, ADJ), "ADJ"))
        out.append((pick(stream, NOUN), "NOUN"))
        return out
    if roll < 14 and allow_pron:
        return [(pick(stream, PRON_SUBJ), "PRON")]
    if roll < 16:
        return [(pick(stream, PROPN), "PROPN")]
    if roll < 18:
        return [(pick(stream, NUM), "NUM"), (pick(stream, NOUN), "NOUN")]
    out = [(pick(stream, DET), "DET"), (pick(stream, ADJ), "ADJ"),
           (pick(stream, NOUN), "NOUN")]
    return out


def prep_phrase(stream: Stream) -> list[tuple[str, str]]:
    return [(pick(stream, ADP), "ADP")] + noun_phrase(stream, allow_pron=False)


def predicate(stream: Stream) -> list[tuple[str, str]]:
    roll = stream.randrange(12)
    if roll < 3:  # verb + object
        out = [(pick(stream, VERB_PAST), "VERB")] + noun_phrase(stream, allow_pron=False)
    elif roll < 6:  # verb + prepositional phrase
        out = [(pick(stream, VERB_PAST), "VERB")] + prep_phrase(stream)
    elif roll < 8:  # verb + object + prepositional phrase
        out = ([(pick(stream, VERB_PAST), "VERB")]
               + noun_phrase(stream, allow_pron=False) + prep_phrase(stream))
    elif roll < 9:  # copula + adjective
        out = [(pick(stream, AUX), "AUX"), (pick(stream, ADJ), "ADJ")]
    elif roll < 10:  # copula + place
        out = [(pick(stream, AUX), "AUX")] + prep_phrase(stream)
    elif roll < 11:  # modal + infinitive + object
        out = ([(pick(stream, AUX), "AUX"), (pick(stream, VERB_BASE), "VERB")]
               + noun_phrase(stream, allow_pron=False))
    else:  # negated verb
        out = [(pick(stream, AUX), "AUX"), ("not", "PART"),
               (pick(stream, VERB_BASE), "VERB")] + noun_phrase(stream, allow_pron=False)
    if stream.randrange(10) < 2:
        out.append((pick(stream, ADV), "ADV"))
    return out


def clause(stream: Stream) -> list[tuple[str, str]]:
    return noun_phrase(stream) + predicate(stream)


def sentence(stream: Stream) -> list[tuple[str, str]]:
    roll = stream.randrange(20)
    if roll < 9:
        tokens = clause(stream) + [(".", "PUNCT")]
    elif roll < 12:  # question: "was she on this boat ?"
        tokens = ([(pick(stream, AUX), "AUX"), (pick(stream, PRON_SUBJ), "PRON")]
                  + prep_phrase(stream) + [("?", "PUNCT")])
    elif roll < 15:  # compound
        tokens = (clause(stream) + [(pick(stream, CCONJ), "CCONJ")]
                  + clause(stream) + [(".", "PUNCT")])
    elif roll < 17:  # subordinate first
        tokens = ([(pick(stream, SCONJ), "SCONJ")] + clause(stream)
                  + [(",", "PUNCT")] + clause(stream) + [(".", "PUNCT")])
    elif roll < 19:  # fronted adverb
        tokens = ([(pick(stream, ADV), "ADV"), (",", "PUNCT")]
                  + clause(stream) + [(".", "PUNCT")])
    else:  # interjection
        tokens = ([(pick(stream, INTJ), "INTJ"), (",", "PUNCT")]
                  + clause(stream) + [("!", "PUNCT")])
    return tokens


def render_text(tokens: list[tuple[str, str]]) -> str:
    words: list[str] = []
    for word, tag in tokens:
        if tag == "PUNCT" and words:
            words[-1] += word
        else:
            words.append(word)
    text = " ".join(words)
    return text[0].upper() + text[1:]


def main() -> None:
    stream = Stream(SEED)
    raw_texts: list[str] = []
    seen_texts: set[str] = set()
    tagged: list[list[tuple[str, str]]] = []
    seen_seqs: set[tuple[str, ...]] = set()

    attempts = 0
    while (len(raw_texts) < RAW_TARGET or len(tagged) < TAGSEQ_TARGET) and attempts < 2_000_000:
        attempts += 1
        tokens = sentence(stream)
        text = render_text(tokens)
        if len(text.split()) < 3:
            continue
        if len(raw_texts) < RAW_TARGET and text not in seen_texts:
            seen_texts.add(text)
            raw_texts.append(text)
        tags = tuple(tag for _, tag in tokens)
        if len(tagged) < TAGSEQ_TARGET and len(tags) >= 3 and tags not in seen_seqs:
            seen_seqs.add(tags)
            tagged.append(tokens)

    if len(raw_texts) < RAW_TARGET or len(tagged) < TAGSEQ_TARGET:
        raise SystemExit(
            f"grammar exhausted: {len(raw_texts)} texts, {len(tagged)} tag sequences"
        )

    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "raw.txt").write_text("\n".join(raw_texts) + "\n", encoding="utf-8")

    conllu_lines: list[str] = []
    for tokens in tagged:
        for i, (word, tag) in enumerate(tokens, start=1):
            conllu_lines.append(f"{i}\t{word}\t_\t{tag}\t_\t_\t_\t_\t_\t_")
        conllu_lines.append("")
    (OUT / "tagged.conllu").write_text("\n".join(conllu_lines) + "\n", encoding="utf-8")

    # sanity: the sample must actually show English's signature statistics
    digrams: Counter = Counter()
    trigrams: Counter = Counter()
    for text in raw_texts:
        for run in text.lower().split():
            digrams.update(run[i:i + 2] for i in range(len(run) - 1))
            trigrams.update(run[i:i + 3] for i in range(len(run) - 2))
    top10_di = [g for g, _ in digrams.most_common(10)]
    top10_tri = [g for g, _ in trigrams.most_common(10)]
    pos_tri: Counter = Counter()
    for tokens in tagged:
        tags = [tag for _, tag in tokens]
        pos_tri.update("|".join(tags[i:i + 3]) for i in range(len(tags) - 2))
    top10_pos = [g for g, _ in pos_tri.most_common(10)]
    print(f"{len(raw_texts)} raw sentences, {len(tagged)} tag sequences")
    print("top di-grams: ", top10_di)
    print("top tri-grams:", top10_tri)
    print("top POS tri-grams:", top10_pos)
    assert "th" in top10_di and "he" in top10_di, "di-gram signature missing"
    assert "the" in top10_tri, "tri-gram signature missing"
    assert "ADP|DET|NOUN" in top10_pos, "structure signature missing"


if __name__ == "__main__":
    main()
