"""Command-line front end.

Subcommands map 1:1 onto library operations: ingest, enrich, wsd,
cluster, play, generate, serve.  Exit codes: 0 success, 1 domain error,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import coset, game, neologism
from .cluster import cluster_documents, cosine_distance_matrix, emit_plot, mds_embed
from .coset import ConceptVector, CorpusDoc, ExpansionConfig
from .errors import SemmemError
from .network import ingest_network, to_json
from .service import DEFAULT_RELATION_TYPES, ServiceConfig, create_app
from .textproc import load_stoplist
from .wsd import SynsetInventory, annotate_synsets, build_reference_counts


def _read_corpus(path: str) -> list[CorpusDoc]:
    docs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            docs.append(CorpusDoc(str(rec["id"]), rec.get("label"), rec.get("text", "")))
    return docs


def cmd_ingest(args) -> int:
    net = ingest_network(args.triples, args.lexicon)
    payload = to_json(net)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    print(
        json.dumps(
            {
                "concepts": len(net),
                "relations": len(net.relations()),
                "surfaces": len(net.lexicon),
                "collocations": len(net.collocations),
            },
            sort_keys=True,
        )
    )
    return 0


def cmd_enrich(args) -> int:
    net = ingest_network(args.triples, args.lexicon)
    corpus = _read_corpus(args.corpus)
    stoplist = load_stoplist(args.stoplist) if args.stoplist else None
    cfg = ExpansionConfig(
        relation_types=frozenset(args.relations.split(",")) if args.relations
        else frozenset(DEFAULT_RELATION_TYPES),
        max_order=args.max_order,
        tau=args.tau,
        metric=args.metric,
    )
    docs = coset.documents_from_corpus(corpus, net, stoplist=stoplist)
    enriched, selected, table = coset.iterate_expansion(docs, net, cfg)
    vectors = {c: coset.concept_vector(c, table, args.gamma) for c in sorted(selected)}

    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", encoding="utf-8")
    try:
        for doc in enriched:
            rec = {
                "id": doc.doc_id,
                "label": doc.label,
                "features": [
                    {"concept": c, "order": o, "weight": 1.0}
                    for c, o in sorted(doc.features)
                ],
            }
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()

    if args.vectors_out:
        doc_vectors = {}
        for doc in enriched:
            if doc.features:
                doc_vectors[doc.doc_id] = coset.document_vector(doc, vectors).values
        with open(args.vectors_out, "w", encoding="utf-8") as fh:
            json.dump(doc_vectors, fh, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_wsd(args) -> int:
    net = ingest_network(args.triples, args.lexicon)
    inventory = SynsetInventory.load(args.synsets)
    with open(args.reference, encoding="utf-8") as fh:
        reference = [fh.read()]
    counts = build_reference_counts(reference, inventory, net, source=args.reference)
    if args.text == "-":
        text = sys.stdin.read()
    else:
        with open(args.text, encoding="utf-8") as fh:
            text = fh.read()
    tagged = annotate_synsets(text, counts, inventory, net)
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", encoding="utf-8")
    try:
        for token in tagged:
            out.write(json.dumps(token.to_json_dict(), sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_cluster(args) -> int:
    with open(args.vectors, encoding="utf-8") as fh:
        raw = json.load(fh)
    vectors = {}
    for doc_id, values in raw.items():
        norm = sum(v * v for v in values.values()) ** 0.5
        if norm == 0:
            raise SemmemError(f"document {doc_id!r} has a zero vector")
        vectors[doc_id] = ConceptVector({c: v / norm for c, v in values.items()})
    gold = None
    if args.gold:
        with open(args.gold, encoding="utf-8") as fh:
            gold = json.load(fh)
    result = cluster_documents(vectors, args.k, gold)
    doc_ids = sorted(vectors)
    D = cosine_distance_matrix([vectors[d] for d in doc_ids])
    dim = 2 if len(doc_ids) >= 3 else 1
    coords = mds_embed(D, dim)
    if dim == 1:
        import numpy as np

        coords = np.hstack([coords, np.zeros((len(doc_ids), 1))])
    files = emit_plot(coords, result.labels, args.out, gold=gold, doc_ids=doc_ids)
    print(
        json.dumps(
            {"k": result.k, "purity": result.purity, "ari": result.ari, "files": files},
            sort_keys=True,
        )
    )
    return 0


def cmd_play(args) -> int:
    kb = game.KnowledgeMatrix.load(args.kb)
    posterior = game.uniform_posterior(kb)
    cfg = game.SessionConfig(
        budget=args.budget, guess_threshold=args.threshold, eps=args.eps, seed=args.seed
    )
    asked = 0
    print(f"Think of one of {len(kb.concepts)} concepts; answer yes/no/unknown.")
    while asked < cfg.budget and posterior.top(1)[0][1] < cfg.guess_threshold:
        feature = game.best_question(posterior, kb, eps=cfg.eps)
        print(f"Q{asked + 1}: {kb.question_text(feature)}")
        line = sys.stdin.readline()
        if not line:
            break
        answer = line.strip().lower()
        if answer in ("y", "n", "u"):
            answer = {"y": "yes", "n": "no", "u": "unknown"}[answer]
        if answer not in game.ANSWERS:
            print("please answer yes, no, or unknown")
            continue
        posterior = game.update_posterior(posterior, kb, feature, answer, cfg.eps)
        asked += 1
        if posterior.contradiction:
            print("(answers contradict the knowledge matrix; starting over)")
    guess, prob = posterior.top(1)[0]
    print(f"My guess after {asked} questions: {guess} (p={prob:.3f})")
    return 0


def cmd_generate(args) -> int:
    with open(args.morphemes, encoding="utf-8") as fh:
        morphemes = [line.strip() for line in fh if line.strip()]
    if args.wordlist:
        with open(args.wordlist, encoding="utf-8") as fh:
            wordlist = [line.strip() for line in fh if line.strip()]
        lexicon = frozenset(wordlist)
    else:
        net = ingest_network(args.triples, args.lexicon)
        lexicon = frozenset(s for s in net.lexicon if " " not in s)
        wordlist = sorted(lexicon)
    model = neologism.train_ngram(wordlist, n=args.ngram, alpha=args.alpha)
    candidates = neologism.generate(
        model, morphemes, args.count, seed=args.seed, lexicon=lexicon
    )
    novel = neologism.filter_novel(candidates, lexicon)
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", encoding="utf-8")
    try:
        for c in novel:
            out.write(json.dumps(c.to_json_dict(), sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_serve(args) -> int:
    overrides = {
        "triples_path": args.triples,
        "lexicon_path": args.lexicon,
        "synsets_path": args.synsets,
        "kb_path": args.kb,
        "reference_path": args.reference,
        "port": args.port,
        "data_dir": args.data_dir,
        "static_dir": args.static_dir,
    }
    cfg = ServiceConfig.load(args.config, overrides)
    app = create_app(cfg)

    import uvicorn

    uvicorn.run(app, host=args.host, port=cfg.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semmem", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_network_args(p):
        p.add_argument("--triples", default="fixtures/triples.tsv")
        p.add_argument("--lexicon", default="fixtures/lexicon.jsonl")

    p = sub.add_parser("ingest", help="load and validate a network, print stats")
    add_network_args(p)
    p.add_argument("--out", help="write canonical network JSON here")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("enrich", help="coset-expand a labeled corpus")
    add_network_args(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--stoplist")
    p.add_argument("--max-order", type=int, default=1, dest="max_order")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--metric", choices=[coset.INFORMATION_GAIN, coset.CHI_SQUARE],
                   default=coset.INFORMATION_GAIN)
    p.add_argument("--relations", help="comma-separated relation types")
    p.add_argument("--gamma", type=float, default=coset.DEFAULT_GAMMA)
    p.add_argument("--out", help="enhanced corpus JSONL (default stdout)")
    p.add_argument("--vectors-out", dest="vectors_out", help="document vector table JSON")
    p.set_defaults(func=cmd_enrich)

    p = sub.add_parser("wsd", help="synset-annotate a text against a reference corpus")
    add_network_args(p)
    p.add_argument("--synsets", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--text", required=True, help="file path or - for stdin")
    p.add_argument("--out", help="annotated JSONL (default stdout)")
    p.set_defaults(func=cmd_wsd)

    p = sub.add_parser("cluster", help="cluster document vectors, write plot files")
    p.add_argument("--vectors", required=True, help="document vector table JSON")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gold", help="JSON map doc_id -> class")
    p.add_argument("--out", required=True, help="output path prefix")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("play", help="terminal 20-questions session")
    p.add_argument("--kb", required=True)
    p.add_argument("--budget", type=int, default=20)
    p.add_argument("--threshold", type=float, default=0.9)
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("generate", help="generate and rank neologisms")
    add_network_args(p)
    p.add_argument("--morphemes", required=True)
    p.add_argument("--wordlist", help="training words (default: network lexicon)")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ngram", type=int, default=3)
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--out", help="output JSONL (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", help="service config JSON")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--triples", default=None)
    p.add_argument("--lexicon", default=None)
    p.add_argument("--synsets", default=None)
    p.add_argument("--kb", default=None)
    p.add_argument("--reference", default=None)
    p.add_argument("--data-dir", dest="data_dir", default=None)
    p.add_argument("--static-dir", dest="static_dir", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SemmemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
