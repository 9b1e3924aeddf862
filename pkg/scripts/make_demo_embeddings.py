"""Write the clustered toy embedding file used by the demo corpus.

Each topic gets an orthonormal centre direction. The topic's name word sits
exactly on the centre and its member words are the centre plus Gaussian
noise. Ambiguous words mix two centres, and generic resume filler gets short
random vectors. Anything not listed here is out of vocabulary on purpose:
company names, years, ids and a few orphans whose only context is such noise.

    python scripts/make_demo_embeddings.py data/demo/embeddings.txt
"""

import argparse

import numpy as np

DIM = 24
SEED = 20240917
NOISE = 0.08

TOPICS = {
    "programming": "software code backend frontend developer django flask api rest git scripting "
                   "microservices javascript spring interactive interfaces development",
    "database": "sql queries schema databases postgresql mongodb indexing backup servers administrator",
    "reptile": "snake lizard species wildlife habitat herpetology boa viper specimens ecology zoology "
               "biologist field fieldwork tropical reserves museum surveys tagging bear",
    "analytics": "statistics modeling dashboards forecasting data machine learning deep models scientist "
                 "analyst visualization tableau pandas numpy tensorflow trained",
    "finance": "accounting budgeting audit tax ledger reconciliation accountant spreadsheet preparation",
    "devops": "cloud infrastructure deployment deployed containers container docker kubernetes jenkins "
              "pipelines aws terraform modules automating",
    "design": "graphic designer branding typography layout print digital photoshop illustrator figma "
              "prototypes ui mockups editing creating",
    "testing": "qa automation automated selenium scenarios test bug",
    "hr": "recruitment onboarding employee relations hiring interviews talent acquisition generalist payroll",
    "marketing": "campaigns brand growth seo email advertising social content specialist salesforce",
    "networking": "network routers switches firewall firewalls cisco tcp routing devices configured vpn "
                  "security branch policies access",
    "vegetable": "salad kitchen chef sous garnish fresh ingredients menu recipes cooking seasonal",
    "coffee": "espresso latte barista cafe specialty brewed brewing roasted beans drinks station",
}

# word -> (topic, weight) pairs
MIXED = {
    "python": [("programming", 0.6), ("reptile", 0.6)],
    "java": [("programming", 0.6), ("coffee", 0.6)],
    "regression": [("analytics", 0.7), ("testing", 0.5)],
    "reporting": [("analytics", 0.6), ("finance", 0.6)],
    "clusters": [("database", 0.6), ("devops", 0.6)],
    "web": [("programming", 0.8), ("design", 0.3)],
    "applications": [("programming", 0.7), ("testing", 0.2)],
    "tracking": [("testing", 0.5), ("reptile", 0.3)],
    "cucumber": [("vegetable", 0.8), ("testing", 0.3)],
}

GENERIC = (
    "experience years building built skills wrote clean tools responsible senior advanced maintained "
    "managed focused busy prepared running improved used handled studying national research researcher "
    "writing projects full stack engineer tuning radio enterprise succeed indonesia san francisco "
    "generalist classes designed trained"
).split()


def build(rng):
    centres = np.linalg.qr(rng.standard_normal((DIM, DIM)))[0].T[: len(TOPICS)]
    vectors = {}
    for centre, (topic, members) in zip(centres, TOPICS.items()):
        vectors[topic] = centre
        for word in members.split():
            vectors.setdefault(word, centre + NOISE * rng.standard_normal(DIM))
    index = {t: c for t, c in zip(TOPICS, centres)}
    for word, mix in MIXED.items():
        vec = sum(w * index[t] for t, w in mix)
        vectors[word] = vec + NOISE * rng.standard_normal(DIM)
    for word in GENERIC:
        if word not in vectors:
            v = rng.standard_normal(DIM)
            vectors[word] = 0.4 * v / np.linalg.norm(v)
    return vectors


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    args = ap.parse_args()
    vectors = build(np.random.default_rng(SEED))
    with open(args.out, "w", encoding="utf-8") as fh:
        for word in sorted(vectors):
            fh.write(word + " " + " ".join(f"{x:.6f}" for x in vectors[word]) + "\n")
    print(f"wrote {len(vectors)} vectors of dimension {DIM} to {args.out}")


if __name__ == "__main__":
    main()
