#!/usr/bin/env python3
"""Regenerates the checked-in fixture lexicons and synthetic tweet corpus.

Output is deterministic; rerun after editing the word lists below and commit
the result. The acceptance suite re-derives the expected topics for every
labeled row with an independent brute-force scorer, so edits that break the
intended outcomes show up there.
"""

import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "sample")

TOPICS = ["football", "cricket", "golf", "baseball", "movie",
          "book", "food", "politics", "drink", "science"]

SHARED_SPORT = ["player", "match", "stadium", "fans", "coach", "team"]

TAGS = {
    "football": ["football", "soccer", "goal", "striker", "penalty", "league", "madrid",
                 "juventus", "champions", "uefa", "hattrick", "dribble", "scored",
                 "freekick", "fifa", "portugal", "ronaldo", "messi", "neymar", "barcelona",
                 "referee", "offside", "goalkeeper", "goal keeper", "world cup",
                 "midfielder", "premier league"] + SHARED_SPORT,
    "cricket": ["cricket", "sachin", "tendulkar", "century", "batsman", "wicket",
                "innings", "odi", "runs", "bcci", "sixer", "boundary", "bowler", "ipl",
                "kohli", "dhoni", "stumps", "bat", "test match", "world cup",
                "master blaster", "spinner"] + SHARED_SPORT,
    "golf": ["golf", "birdie", "bogey", "putt", "caddie", "fairway", "tiger", "woods",
             "pga", "masters", "tee", "par", "eagle", "green", "swing", "course",
             "golf club"] + ["player", "fans", "coach"],
    "baseball": ["baseball", "pitcher", "homerun", "home run", "inning", "yankees", "mlb",
                 "bat", "catcher", "dodgers", "batter", "glove", "world series",
                 "strikeout"] + SHARED_SPORT,
    "movie": ["movie", "film", "cinema", "trailer", "actor", "actress", "scene", "sequel",
              "premiere", "hollywood", "bollywood", "screen", "blockbuster", "director",
              "wizard", "harry potter", "shahrukh", "khan", "superstar", "box office",
              "romance", "oscar", "starring", "hogwarts"],
    "book": ["book", "novel", "author", "chapter", "library", "bestseller", "paperback",
             "fiction", "writer", "publisher", "reading", "literature", "rowling",
             "kindle", "bookstore", "harry potter", "hogwarts"],
    "food": ["food", "pizza", "cheese", "pepperoni", "crust", "delicious", "dinner",
             "restaurant", "tasty", "hungry", "dominos", "slice", "oven", "mozzarella",
             "burger", "pasta", "recipe", "chef", "lunch", "dessert"],
    "politics": ["politics", "election", "vote", "president", "minister", "parliament",
                 "government", "campaign", "senate", "policy", "congress", "debate",
                 "imran", "prime minister", "royal"],
    "drink": ["drink", "coffee", "tea", "beer", "wine", "juice", "cocktail", "soda",
              "whiskey", "latte", "espresso", "smoothie", "brew"],
    "science": ["science", "physics", "chemistry", "biology", "research", "experiment",
                "scientist", "nasa", "space", "lab", "telescope", "quantum", "dna",
                "discovery"],
}

WHITELIST = [
    ("player", ["football", "cricket", "golf", "baseball"]),
    ("fans", ["football", "cricket", "golf", "baseball"]),
    ("coach", ["football", "cricket", "golf", "baseball"]),
    ("match", ["football", "cricket", "baseball"]),
    ("stadium", ["football", "cricket", "baseball"]),
    ("team", ["football", "cricket", "baseball"]),
    ("world cup", ["football", "cricket"]),
    ("bat", ["cricket", "baseball"]),
    ("harry potter", ["movie", "book"]),
    ("hogwarts", ["movie", "book"]),
]

REDWORDS = """i me my mine we our you your he him his she her it its they them their
am is are was were be been being a an the and or but if of at by for with about to
from in on up out this that these those so than too very can will just not no do
does did have has had how what when where who why all any some such only own same
like good time going lol omg wow gooooaaal supperb rt amp im dont i'm it's ever
really""".split()

GROUPS = [("games", ["football", "cricket", "golf", "baseball"])]

RELATED = {
    "football": [("pitch", 0.95), ("kickoff", 0.9), ("winger", 0.85), ("derby", 0.8),
                 ("transfer", 0.78), ("squad", 0.74), ("goal", 0.7), ("striker", 0.66),
                 ("player", 0.6), ("junk", 0.05)],
    "cricket": [("wicket", 0.92), ("pitch", 0.8), ("over", 0.75), ("player", 0.7),
                ("umpire", 0.68)],
    "golf": [("birdie", 0.9), ("handicap", 0.72), ("green", 0.7)],
    "baseball": [("pitcher", 0.9), ("shortstop", 0.71)],
    "movie": [("film", 0.95), ("popcorn", 0.66), ("screenplay", 0.61)],
    "food": [("pizza", 0.9), ("cuisine", 0.8), ("snack", 0.64)],
}

EVAL_ROWS = [
    ("text", "I like Ronaldo", "football"),
    ("text", "I like Harry Potter", "movie"),
    ("text", "How good Shahrukh Khan is!!!!", "movie"),
    ("text", "This time I am not going to miss pizza", "food"),
    ("text", "I am frustrated", "NONE"),
    ("text", "Sachin is my idol", "cricket"),
]

FILLERS = ["what a night", "the crowd went wild", "cannot wait", "all day long",
           "today", "again and again", "big weekend", "the best", "tonight",
           "for real", "so proud", "unbelievable", "this week", "the whole thing",
           "at last", "right now"]


def main():
    rng = random.Random(20171215)
    tweets = []

    def add(text, user=None):
        tweets.append({"text": text, "user": user})

    def themed(seed_words, pool, count, k=3, users=None):
        for i in range(count):
            words = rng.sample(pool, k)
            filler = rng.choice(FILLERS)
            parts = [seed_words] + words
            rng.shuffle(parts)
            text = " ".join(parts) + " " + filler
            if i % 3 == 0:
                text = "The " + text
            if i % 5 == 0:
                text += " https://t.co/" + "".join(rng.choice("abcdef0123456789") for _ in range(8))
            if i % 4 == 1:
                text += "!!!"
            add(text, rng.choice(users) if users else None)

    football = ["goal", "striker", "penalty", "league", "madrid", "juventus", "champions",
                "uefa", "hattrick", "dribble", "scored", "freekick", "fifa", "portugal"]
    themed("Ronaldo", football, 24, users=["goalfan", "madridista", "sportsdesk"])

    movie_hp = ["film", "cinema", "trailer", "actor", "scene", "sequel", "premiere",
                "hollywood", "screen", "blockbuster", "director", "wizard"]
    themed("Harry Potter", movie_hp, 20, users=["filmbuff", "cinemadaily"])

    movie_srk = ["bollywood", "film", "actor", "cinema", "trailer", "blockbuster",
                 "superstar", "romance", "premiere", "screen", "box office"]
    themed("Shahrukh Khan", movie_srk, 20, users=["bollywoodbuzz", "filmbuff"])

    food = ["cheese", "pepperoni", "crust", "delicious", "dinner", "restaurant", "tasty",
            "hungry", "dominos", "slice", "oven", "mozzarella"]
    themed("pizza", food, 20, users=["foodie", "nightowl"])

    cricket = ["century", "batsman", "wicket", "innings", "odi", "runs", "cricket", "bcci",
               "sixer", "boundary", "master blaster", "legend"]
    themed("Sachin Tendulkar", cricket, 20, users=["cricinfo_fan", "sportsdesk"])

    # Cross-topic noise that shares a keyword with the labeled tweets.
    add("Imran Khan wins the election vote in parliament", "newsroom")
    add("Imran Khan speaks to parliament about the election", "newsroom")
    add("prime minister Imran Khan calls for a vote", "newsroom")
    add("Imran Khan election rally draws a huge crowd", "newsroom")
    add("Prince Harry and the royal wedding tonight", "royalwatch")
    add("Prince Harry visits a school today", "royalwatch")
    add("don't miss the election debate tonight", "newsroom")
    add("I miss my old phone", "nightowl")
    add("Sachin is the idol of a whole generation", "cricinfo_fan")
    add("every kid with a bat calls Sachin their idol", "cricinfo_fan")

    for text in ["so frustrated with the traffic today",
                 "frustrated with my laptop crashing again",
                 "monday mornings make me frustrated",
                 "waited two hours at the airport, frustrated",
                 "frustrated because the wifi is down again",
                 "this weather is making me frustrated",
                 "frustrated with slow internet today",
                 "frustrated and tired after work"]:
        add(text, rng.choice(["commuter", "nightowl", "officelife"]))

    background = {
        "golf": ("Tiger Woods", ["birdie", "putt", "fairway", "masters", "caddie", "bogey", "pga"]),
        "baseball": ("Yankees", ["pitcher", "homerun", "inning", "mlb", "catcher", "batter"]),
        "politics": ("the senate", ["election", "vote", "president", "campaign", "policy", "congress"]),
        "drink": ("coffee", ["latte", "espresso", "brew", "morning", "cafe", "beans"]),
        "science": ("NASA", ["space", "telescope", "research", "discovery", "mission", "launch"]),
        "book": ("the novel", ["author", "chapter", "library", "bestseller", "reading", "fiction"]),
    }
    for name, (seed, pool) in background.items():
        themed(seed, pool, 10, users=[name + "_talk", "newsroom"])

    generic = ["the sun is out and the sky is blue", "the bus was late again",
               "the new phone update is out", "the weekend starts now",
               "the cat knocked over the plant", "the rain will not stop",
               "walking the dog in the park", "the music at the party was loud"]
    for i in range(36):
        add(generic[i % len(generic)] + " " + rng.choice(FILLERS), rng.choice(["commuter", "officelife"]))

    # Users for the last-tweet lookups; these go last so they are newest.
    user_tweets = [
        ("cr7_fan", "watching highlights with friends"),
        ("cr7_fan", "what a game yesterday"),
        ("cr7_fan", "I like Ronaldo"),
        ("sachin_fan", "Sachin is my idol"),
        ("linkposter", "read this https://t.co/abc123 later"),
        ("linkposter", "https://t.co/xyz789"),
    ]

    rng.shuffle(tweets)
    records = []
    ts = 1_500_000_000
    for i, t in enumerate(tweets):
        ts += rng.randint(60, 3600)
        rec = {"id": "t%04d" % (i + 1), "user": t["user"] or "someone", "text": t["text"],
               "ts": ts, "pop": rng.randint(0, 40)}
        records.append(rec)
    for j, (user, text) in enumerate(user_tweets):
        ts += 600
        records.append({"id": "u%04d" % (j + 1), "user": user, "text": text, "ts": ts,
                        "pop": rng.randint(0, 40)})

    os.makedirs(os.path.join(OUT, "tags"), exist_ok=True)
    with open(os.path.join(OUT, "corpus.jsonl"), "w") as f:
        for r in records:
            f.write(json.dumps(r) + "\n")
    with open(os.path.join(OUT, "topics.csv"), "w") as f:
        f.write("# advertisement topics\n")
        f.write(",".join(TOPICS[:5]) + "\n")
        f.write(",".join(TOPICS[5:]) + "\n")
    for topic, tags in TAGS.items():
        with open(os.path.join(OUT, "tags", topic + ".csv"), "w") as f:
            for i in range(0, len(tags), 6):
                f.write(",".join(tags[i:i + 6]) + "\n")
    with open(os.path.join(OUT, "whitelist.csv"), "w") as f:
        for tag, topics in WHITELIST:
            f.write(",".join([tag] + topics) + "\n")
    with open(os.path.join(OUT, "redword.csv"), "w") as f:
        for i in range(0, len(REDWORDS), 12):
            f.write(",".join(REDWORDS[i:i + 12]) + "\n")
    with open(os.path.join(OUT, "groups.csv"), "w") as f:
        for name, topics in GROUPS:
            f.write(",".join([name] + topics) + "\n")
    with open(os.path.join(OUT, "related_words.tsv"), "w") as f:
        for term, words in RELATED.items():
            for w, s in words:
                f.write("%s\t%s\t%s\n" % (term, w, s))
    with open(os.path.join(OUT, "eval.csv"), "w") as f:
        f.write("input_kind,input,gold\n")
        for kind, text, gold in EVAL_ROWS:
            f.write("%s,%s,%s\n" % (kind, text, gold))
    with open(os.path.join(OUT, "eval_one_wrong.csv"), "w") as f:
        f.write("input_kind,input,gold\n")
        for kind, text, gold in EVAL_ROWS:
            if text == "Sachin is my idol":
                gold = "politics"
            f.write("%s,%s,%s\n" % (kind, text, gold))
    print("wrote %d tweets to %s" % (len(records), OUT))


if __name__ == "__main__":
    main()
