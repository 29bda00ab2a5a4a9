import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centroid_sum.summarizer import (
    DEFAULT_N,
    SummarizerConfig,
    new_tfidf_scores,
    prepare_cluster,
    preselect_n_best,
    preselect_n_first,
    preselect_new_tfidf,
    summarize,
    summarize_global,
    summarize_ranked,
)
from centroid_sum.text import SentenceRecord
from centroid_sum.vectors import build_centroid, build_centroid_and_vectors, cosine

import oracles


def rec(doc, sent, tokens):
    return SentenceRecord(doc, sent, " ".join(tokens) + ".", tuple(tokens), tuple(tokens))


def grid_docs(n_docs, n_sents):
    return [[rec(d, s, [f"d{d}s{s}", "shared"]) for s in range(n_sents)] for d in range(n_docs)]


def oracle_inputs(prepared, model):
    terms = model.vocabulary.terms
    vecs, words = {}, {}
    for s in prepared.sentences:
        vecs[s.position] = {terms[i]: w for i, w in model.sentence_vector(s).items()}
        words[s.position] = s.word_count
    cent = {terms[i]: w for i, w in model.pruned_centroid.items()}
    return vecs, words, cent


# --- configuration ---------------------------------------------------------


def test_config_validation():
    SummarizerConfig()
    for bad in (dict(r=1.5), dict(v=-0.1), dict(n=0), dict(word_limit=0), dict(variant="x"),
                dict(preselection="lead")):
        with pytest.raises(ValueError):
            SummarizerConfig(**bad)


def test_config_defaults():
    cfg = SummarizerConfig()
    assert (cfg.variant, cfg.r, cfg.v, cfg.word_limit, cfg.preselection) == ("global", 0.6, 0.1, 100, "none")
    assert SummarizerConfig(preselection="new_tfidf").resolved_n == 3
    assert DEFAULT_N == {"n_first": 7, "n_best": 2, "new_tfidf": 3}


# --- preselection ------------------------------------------------------------


def test_n_first():
    docs = grid_docs(1, 3)
    assert preselect_n_first(docs, 7) == docs[0]
    docs = grid_docs(10, 10)
    pool = preselect_n_first(docs, 7)
    assert len(pool) == 70 and all(s.sent_index <= 6 for s in pool)
    assert preselect_n_first(docs, 1) == [d[0] for d in docs]


def test_n_best_picks_closest_sentence():
    doc = [rec(0, i, [f"m{i}", f"n{i}"]) for i in range(6)]
    doc[4] = rec(0, 4, ["topic", "topic"])
    other = [rec(1, 0, ["topic", "topic", "topic"]), rec(1, 1, ["filler"])]
    model = build_centroid(doc + other, 0.1, 2)
    heaviest = max(model.pruned_centroid.items(), key=lambda e: e[1])[0]
    assert model.vocabulary.terms[heaviest] == "topic"
    pool = preselect_n_best([doc, other], model, 1)
    assert [s.position for s in pool] == [(0, 4), (1, 0)]
    assert preselect_n_best([doc], model, 10) == doc


def test_n_best_matches_full_sort_oracle():
    rng = random.Random(3)
    texts = [" ".join(f"W{rng.randrange(30)} w{rng.randrange(30)} w{rng.randrange(30)}." for _ in range(10))
             for _ in range(10)]
    prepared = prepare_cluster(texts)
    model = build_centroid(prepared.sentences, 0.3, prepared.num_docs)
    vecs, _, cent = oracle_inputs(prepared, model)
    pool = preselect_n_best(prepared.documents, model, 2)
    want = []
    for doc in prepared.documents:
        ranked = sorted(doc, key=lambda s: (-round(oracles.dict_cosine(vecs[s.position], cent), 12), s.sent_index))
        want += sorted((s.position for s in ranked[:2]))
    assert [s.position for s in pool] == want


def test_new_tfidf_scores_hand_table():
    doc = [
        rec(0, 0, ["robot", "arm", "arm"]),
        rec(0, 1, ["arm", "robot"]),
        rec(0, 2, ["zarya", "arm", "zarya"]),
        rec(0, 3, ["robot"]),
        rec(0, 4, ["shuttle", "zarya", "crew"]),
    ]
    other = [rec(1, 0, ["shuttle", "arm"])]
    model = build_centroid(doc + other, 1.0, 2)
    idf = {t: model.idf[i] for t, i in model.vocabulary.term_ids.items()}
    scores = new_tfidf_scores([doc, other], model)
    assert scores[(0, 0)] == pytest.approx(idf["robot"] + 2 * idf["arm"])
    assert scores[(0, 1)] == 0.0
    assert scores[(0, 2)] == pytest.approx(2 * idf["zarya"])
    assert scores[(0, 3)] == 0.0
    assert scores[(0, 4)] == pytest.approx(idf["shuttle"] + idf["crew"])
    assert scores[(1, 0)] == pytest.approx(idf["shuttle"] + idf["arm"])
    pool = preselect_new_tfidf([doc, other], model, 2)
    assert [s.position for s in pool] == [(0, 0), (0, 2), (1, 0)]


def test_new_tfidf_first_sentence_counts_all_terms():
    prepared = prepare_cluster(["Alpha beta alpha. Gamma beta.", "Beta delta."])
    model = build_centroid(prepared.sentences, 1.0, 2)
    scores = new_tfidf_scores(prepared.documents, model)
    first = prepared.documents[0][0]
    assert scores[first.position] == pytest.approx(sum(w for _, w in model.sentence_vector(first).items()))


# --- ranked variant ------------------------------------------------------------


def test_ranked_skips_identical_sentence():
    sents = [rec(0, 0, ["a", "b"]), rec(1, 0, ["a", "b"]), rec(1, 1, ["c"])]
    model = build_centroid(sents, 1.0, 2)
    cfg = SummarizerConfig(variant="ranked", r=0.6, v=1.0, word_limit=100)
    res = summarize_ranked(sents, model, cfg)
    assert [s.position for s in res.selected] == [(0, 0), (1, 1)]


def test_ranked_without_filter_is_full_ranking():
    sents = [rec(0, 0, ["a", "b"]), rec(1, 0, ["a", "b"]), rec(1, 1, ["c"]), rec(0, 1, ["a"])]
    model = build_centroid(sents, 1.0, 2)
    cfg = SummarizerConfig(variant="ranked", redundancy_filter=False, v=1.0, word_limit=1000)
    res = summarize_ranked(sents, model, cfg)
    want = sorted(sents, key=lambda s: (-round(model.score(model.sentence_vector(s)), 12), s.position))
    assert list(res.selected) == want


def test_ranked_matches_dequeue_oracle():
    texts = [" ".join(f"W{(7 * d + s) % 13} w{(d * s) % 11} w{s % 5}." for s in range(4)) for d in range(5)]
    prepared = prepare_cluster(texts)
    assert len(prepared.sentences) == 20
    model, vectors = build_centroid_and_vectors(prepared.sentences, 0.6, prepared.num_docs)
    vecs, words, cent = oracle_inputs(prepared, model)
    cfg = SummarizerConfig(variant="ranked", r=0.6, v=0.6, word_limit=20)
    res = summarize_ranked(prepared.sentences, model, cfg, vectors)
    want = oracles.ranked_select(list(vecs), vecs, cent, words, 20, True, 0.6)
    assert res.positions == want


# --- global variant ------------------------------------------------------------


def test_global_single_candidate():
    s = rec(0, 0, ["a", "b", "c"])
    model = build_centroid([s], 1.0)
    res = summarize_global([s], model, SummarizerConfig(v=1.0))
    assert res.selected == (s,)
    assert res.step_scores == (pytest.approx(cosine(model.sentence_vector(s), model.pruned_centroid)),)


def test_global_prefers_complement_over_duplicate():
    # two copies of the dominant sentence plus one covering the remaining centroid mass
    sents = [
        rec(0, 0, ["a", "a", "b"]),
        rec(1, 0, ["a", "a", "b"]),
        rec(2, 0, ["c", "d"]),
        rec(2, 1, ["c", "d", "a"]),
    ]
    model, vectors = build_centroid_and_vectors(sents, 1.0, 3)
    cfg = SummarizerConfig(redundancy_filter=False, v=1.0, word_limit=6)
    res = summarize_global(sents, model, cfg, vectors)
    prepared_vecs = {s.position: {model.vocabulary.terms[i]: w for i, w in vectors[s.position].items()} for s in sents}
    cent = {model.vocabulary.terms[i]: w for i, w in model.pruned_centroid.items()}
    steps = oracles.greedy_steps([s.position for s in sents], prepared_vecs, cent,
                                 {s.position: s.word_count for s in sents}, 6, False, 1.0)
    assert res.positions == [p for p, _, _ in steps]
    assert (1, 0) not in res.positions[:2]
    assert res.step_scores[1] > res.step_scores[0]


def test_global_steps_match_exhaustive_argmax():
    rng = random.Random(8)
    texts = [" ".join(f"W{rng.randrange(12)} w{rng.randrange(12)}." for _ in range(2)) for _ in range(4)]
    prepared = prepare_cluster(texts)
    assert len(prepared.sentences) == 8
    model, vectors = build_centroid_and_vectors(prepared.sentences, 0.5, prepared.num_docs)
    vecs, words, cent = oracle_inputs(prepared, model)
    cfg = SummarizerConfig(redundancy_filter=False, v=0.5, word_limit=6)
    res = summarize_global(prepared.sentences, model, cfg, vectors)
    steps = oracles.greedy_steps(list(vecs), vecs, cent, words, 6, False, 1.0)
    assert len(res.selected) == 3
    assert res.positions == [p for p, _, _ in steps]
    for got, (_, want, _) in zip(res.step_scores, steps):
        assert got == pytest.approx(want, rel=1e-12)


def test_global_filter_respects_threshold():
    texts, _ = oracles.random_cluster(random.Random(21))
    prepared = prepare_cluster(texts)
    model, vectors = build_centroid_and_vectors(prepared.sentences, 0.4, prepared.num_docs)
    res = summarize_global(prepared.sentences, model, SummarizerConfig(r=0.3, v=0.4), vectors)
    for i, a in enumerate(res.selected):
        for b in res.selected[i + 1:]:
            assert cosine(vectors[a.position], vectors[b.position]) <= 0.3


def test_empty_candidates():
    model = build_centroid([rec(0, 0, ["a"])], 1.0)
    for fn in (summarize_ranked, summarize_global):
        res = fn([], model, SummarizerConfig())
        assert res.selected == () and res.total_words == 0 and not res.truncated_last


# --- pipeline ----------------------------------------------------------------


def test_summarize_one_sentence_cluster():
    res = summarize(["Only one sentence here."])
    assert [s.raw_text for s in res.selected] == ["Only one sentence here."]


def test_summary_text_truncates_last_sentence():
    texts = ["Alpha beta gamma delta epsilon. Zeta eta theta iota kappa lambda."]
    res = summarize(texts, SummarizerConfig(variant="ranked", v=1.0, word_limit=7, redundancy_filter=False))
    assert res.truncated_last
    assert res.total_words == 11
    assert len(res.text().split()) == 7
    assert res.sidecar().count("\n") == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["ranked", "global"]),
       st.sampled_from(["none", "n_first", "n_best", "new_tfidf"]), st.booleans())
def test_pipeline_invariants(seed, variant, method, use_filter):
    texts, _ = oracles.random_cluster(random.Random(seed))
    cfg = SummarizerConfig(variant=variant, preselection=method, n=2, redundancy_filter=use_filter,
                           r=0.5, v=0.5, word_limit=15)
    prepared = prepare_cluster(texts)
    res = summarize(prepared, cfg)
    again = summarize(prepare_cluster(texts), cfg)
    assert res == again
    # budget: every proper prefix stays under the limit
    counts = [s.word_count for s in res.selected]
    for k in range(len(counts)):
        assert sum(counts[:k]) < cfg.word_limit
    assert res.total_words == sum(counts)
    assert res.truncated_last == (res.total_words > cfg.word_limit)
    assert len(set(res.positions)) == len(res.positions)
    model, vectors = build_centroid_and_vectors(prepared.sentences, cfg.v, prepared.num_docs)
    if method == "n_first":
        assert all(s.sent_index < 2 for s in res.selected)
    if method != "none":
        from centroid_sum.summarizer import preselect
        pool = set(s.position for s in preselect(prepared, model, cfg, vectors))
        assert set(res.positions) <= pool
    if use_filter:
        for i, a in enumerate(res.selected):
            for b in res.selected[i + 1:]:
                assert cosine(vectors[a.position], vectors[b.position]) <= cfg.r


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([0.5, 3.0, 1000.0]))
def test_argmax_scale_invariance(seed, alpha):
    texts, _ = oracles.random_cluster(random.Random(seed), max_docs=6, max_sents=6)
    prepared = prepare_cluster(texts)
    model, vectors = build_centroid_and_vectors(prepared.sentences, 1.0, prepared.num_docs)
    scaled = replace(model, pruned_centroid=model.pruned_centroid.scale(alpha),
                     _norm=model.pruned_centroid.scale(alpha).norm())
    scaled_vecs = {p: (v.scale(alpha) if v else v) for p, v in vectors.items()}
    cfg = SummarizerConfig(v=1.0, word_limit=20, redundancy_filter=False)
    a = summarize_global(prepared.sentences, model, cfg, vectors)
    b = summarize_global(prepared.sentences, scaled, cfg, scaled_vecs)
    assert a.positions == b.positions
