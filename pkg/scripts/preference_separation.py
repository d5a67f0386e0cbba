"""Paired-run experiment: does the personality preference actually steer selection?

For each seed, one synthetic population is queried twice with identical
requests except the preference (similar vs different); the mean trait
similarity of the recommended tutors is compared pairwise.

Usage: python scripts/preference_separation.py [--pairs 100] [--size 40]
"""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from helpers import random_population, random_profile  # noqa: E402

from tutormatch.model import PersonalityPreference  # noqa: E402
from tutormatch.personality import similarity  # noqa: E402
from tutormatch.recommender import RecommendationQuery, recommend  # noqa: E402

SUBJECT = "calculus"


def mean_recommended_similarity(requester, pool, preference):
    entries = recommend(RecommendationQuery(
        requester=requester, subject=SUBJECT, preference=preference,
        candidate_pool=tuple(pool)))
    if not entries:
        return None
    by_id = {c.id: c for c in pool}
    sims = [similarity(requester.traits, by_id[e.candidate_id].traits) for e in entries]
    return sum(sims) / len(sims)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--pairs", type=int, default=100)
    parser.add_argument("--size", type=int, default=40)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    wins = ties = losses = skipped = 0
    gaps = []
    for i in range(args.pairs):
        rng = random.Random(args.seed + i)
        requester = random_profile(rng, "req", subjects=(SUBJECT,), max_radius_m=100.0)
        pool = random_population(rng, args.size, subjects=(SUBJECT,), max_radius_m=400.0)
        sim_mean = mean_recommended_similarity(requester, pool,
                                               PersonalityPreference.SIMILAR)
        diff_mean = mean_recommended_similarity(requester, pool,
                                                PersonalityPreference.DIFFERENT)
        if sim_mean is None or diff_mean is None:
            skipped += 1
            continue
        gaps.append(sim_mean - diff_mean)
        if sim_mean > diff_mean:
            wins += 1
        elif sim_mean == diff_mean:
            ties += 1
        else:
            losses += 1

    print(f"paired populations: {args.pairs} (size {args.size}, skipped {skipped})")
    print(f"similar > different: {wins}   ties: {ties}   losses: {losses}")
    if gaps:
        print(f"mean similarity gap: {sum(gaps) / len(gaps):+.4f} "
              f"(min {min(gaps):+.4f}, max {max(gaps):+.4f})")


if __name__ == "__main__":
    main()
