#!/usr/bin/env python3
# Copyright 2026 The Mixmatch Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http:#www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Regenerates the toy corpora under data/. Output is fixed by the seed."""

import argparse
import pathlib
import random

NOUNS = ["food", "service", "movie", "staff", "room", "music", "show", "place"]
ADVERBS = ["really", "quite", "so", "truly"]
FIRST = {"pos": ["great", "good", "nice", "lovely", "amazing"],
         "neg": ["bad", "awful", "poor", "terrible", "horrible"]}
SECOND = {"pos": ["fresh", "friendly", "clean", "fun", "warm"],
          "neg": ["stale", "rude", "dirty", "boring", "cold"]}
VERBS = {"pos": ["loved", "enjoyed", "liked"], "neg": ["hated", "disliked", "resented"]}

PEOPLE = ["woman", "man", "girl", "boy", "nurse", "doctor", "teacher"]
AGENCY = {"high": ["decided", "chose", "managed", "planned"],
          "low": ["hoped", "wished", "waited", "needed"]}
ACTIONS = ["leave", "sell", "paint", "fix", "clean", "visit"]
OBJECTS = ["house", "car", "boat", "shed", "barn"]


def sentiment_line(rng, label):
    if rng.random() < 0.75:
        return (f"the {rng.choice(NOUNS)} was {rng.choice(ADVERBS)} "
                f"{rng.choice(FIRST[label])} and very {rng.choice(SECOND[label])}")
    return (f"i {rng.choice(ADVERBS)} {rng.choice(VERBS[label])} the "
            f"{rng.choice(NOUNS)} here so much")


def agency_line(rng, label):
    return (f"the {rng.choice(PEOPLE)} {rng.choice(AGENCY[label])} to "
            f"{rng.choice(ACTIONS)} the old {rng.choice(OBJECTS)}")


def write(path, lines):
    path.write_text("".join(line + "\n" for line in lines))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    ap.add_argument("--seed", type=int, default=20211)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)

    labeled = [f"{lab}\t{sentiment_line(rng, lab)}" for lab in ["pos", "neg"] for _ in range(200)]
    rng.shuffle(labeled)
    write(out / "toy_sentiment.tsv", labeled)
    write(out / "toy_corpus.txt",
          [sentiment_line(rng, rng.choice(["pos", "neg"])) for _ in range(400)])
    write(out / "sentiment_prompts.txt", ["the food", "the movie", "the staff was", "i really"])
    write(out / "negative_sources.txt", [sentiment_line(rng, "neg") for _ in range(40)])

    agency = [f"{lab}\t{agency_line(rng, lab)}" for lab in ["high", "low"] for _ in range(150)]
    rng.shuffle(agency)
    write(out / "toy_agency.tsv", agency)
    write(out / "agency_corpus.txt",
          [agency_line(rng, rng.choice(["high", "low"])) for _ in range(300)])
    write(out / "agency_sources.txt", [agency_line(rng, "low") for _ in range(30)])
    write(out / "agency_verb_positions.txt", ["2"] * 30)
    write(out / "agency_lexicon.txt", AGENCY["high"])

    # Category centroid plus noise, so words in the same slot sit close together.
    groups = [NOUNS, ADVERBS, FIRST["pos"], FIRST["neg"], SECOND["pos"], SECOND["neg"],
              VERBS["pos"], VERBS["neg"], ["the", "was", "and", "very", "i", "here", "much"]]
    dim = 8
    rows = []
    for group in groups:
        centre = [rng.gauss(0, 1) for _ in range(dim)]
        for word in group:
            vec = [c + rng.gauss(0, 0.3) for c in centre]
            rows.append(word + " " + " ".join(f"{x:.4f}" for x in vec))
    write(out / "toy_embeddings.txt", rows)


if __name__ == "__main__":
    main()
