"""End-to-end orchestration: simulate, synthesize, detect, embed, analyze.

Every stage is file-decoupled so the CLI subcommands can run independently;
this module wires them together for corpus runs and keeps all outputs
deterministic under a single seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import analytics, risk
from .cluster import KMeansConfig, kmeans
from .home import EnvironmentGraph
from .rdf import KgDocument, graph_stats, serialize_ntriples, serialize_turtle
from .scripts import ActivityScript
from .simulate import DurationModel, SimConfig, Trace, run_script
from .skipgram import SkipGramConfig, cosine_neighbors, export_vectors, train_skipgram
from .synth import ActivityMeta, build_activity_kg, snake_case
from .walks import WalkConfig, wl_relabel


@dataclass(frozen=True)
class PipelineConfig:
    scripts_dir: str = ""
    environment_file: str = ""
    affordance_file: str = ""
    ground_truth_file: str = ""
    output_dir: str = "out"
    mode: str = "strict"
    seed: int = 0
    scene_id: str = "scene1"
    formats: tuple = ("nt", "ttl")
    sim: SimConfig = SimConfig()
    duration: DurationModel = DurationModel()
    walk: WalkConfig = field(default_factory=lambda: WalkConfig(
        depth=4, walks_per_entity=25, wl_iterations=0))
    skipgram: SkipGramConfig = field(default_factory=lambda: SkipGramConfig(
        vector_size=64, window=5, epochs=5))
    kmeans: KMeansConfig = KMeansConfig()

    @classmethod
    def from_json(cls, path) -> "PipelineConfig":
        raw = json.loads(Path(path).read_text())
        cfg = cls(**{k: v for k, v in raw.items()
                     if k in ("scripts_dir", "environment_file", "affordance_file",
                              "ground_truth_file", "output_dir", "mode", "seed",
                              "scene_id")})
        if "formats" in raw:
            cfg = replace(cfg, formats=tuple(raw["formats"]))
        if "sim" in raw:
            cfg = replace(cfg, sim=SimConfig(**raw["sim"]))
        if "duration" in raw:
            cfg = replace(cfg, duration=DurationModel(**raw["duration"]))
        if "walk" in raw:
            walk = dict(raw["walk"])
            if "skip_predicates" in walk:
                walk["skip_predicates"] = frozenset(walk["skip_predicates"])
            cfg = replace(cfg, walk=WalkConfig(**walk))
        if "skipgram" in raw:
            cfg = replace(cfg, skipgram=SkipGramConfig(**raw["skipgram"]))
        if "kmeans" in raw:
            cfg = replace(cfg, kmeans=KMeansConfig(**raw["kmeans"]))
        seed = cfg.seed
        return replace(cfg,
                       walk=replace(cfg.walk, seed=seed),
                       skipgram=replace(cfg.skipgram, seed=seed),
                       kmeans=replace(cfg.kmeans, seed=seed))


def simulate_corpus(scripts: list[ActivityScript], env: EnvironmentGraph,
                    dm: DurationModel = DurationModel(), mode: str = "strict",
                    sim: SimConfig = SimConfig(), affordance_table=None,
                    property_table=None, scene_id: str = "scene1",
                    ) -> list[tuple[Trace, ActivityMeta]]:
    results = []
    for script in scripts:
        trace = run_script(script, env, dm, mode, sim, affordance_table, property_table)
        meta = ActivityMeta(name=script.name, category=script.category,
                            description=script.description, scene_id=scene_id)
        results.append((trace, meta))
    return results


def build_corpus_kg(runs, affordance_table=None, property_table=None) -> KgDocument:
    doc = KgDocument()
    for trace, meta in runs:
        build_activity_kg(trace, meta, affordance_table, property_table, doc=doc)
    return doc


def evaluate_findings(findings, ground_truth, doc: KgDocument):
    cm = analytics.confusion(findings, ground_truth, analytics.all_event_iris(doc))
    precision, recall, f1 = analytics.prf1(cm)
    return {
        "tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn,
        "precision": precision, "recall": recall, "f1": f1,
    }


def analysis_report(doc: KgDocument) -> dict:
    return {
        "grab_frequency": analytics.grab_frequency(doc),
        "state_change_frequency": analytics.state_change_frequency(doc),
        "duration_by_activity": analytics.duration_by_activity(doc),
        "leisure_duration": analytics.duration_by_activity(doc, "Leisure"),
        "stats": graph_stats(doc),
    }


def run_pipeline(cfg: PipelineConfig, scripts=None, env=None,
                 affordance_table=None, property_table=None,
                 ground_truth=None, log=lambda msg: None) -> dict:
    """Full corpus run; returns a manifest of written artifact paths."""
    from .fixtures import load_scripts_dir

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    if scripts is None:
        scripts = load_scripts_dir(cfg.scripts_dir)
    if env is None:
        from .home import load_environment_file
        env = load_environment_file(cfg.environment_file)
    if affordance_table is None and cfg.affordance_file:
        from .home import filter_affordances, read_affordance_csv
        affordance_table = filter_affordances(read_affordance_csv(cfg.affordance_file))

    log(f"simulating {len(scripts)} scripts")
    runs = simulate_corpus(scripts, env, cfg.duration, cfg.mode, cfg.sim,
                           affordance_table, property_table, cfg.scene_id)
    manifest = {"activities": []}

    doc = KgDocument()
    for trace, meta in runs:
        activity_doc = build_activity_kg(trace, meta, affordance_table,
                                         property_table)
        doc.update(activity_doc)
        slug = f"{snake_case(meta.name)}{meta.index}_{meta.scene_id}"
        for fmt, render in (("nt", serialize_ntriples), ("ttl", serialize_turtle)):
            if fmt in cfg.formats:
                path = out / f"{slug}.{fmt}"
                path.write_text(render(activity_doc), encoding="utf-8")
                manifest["activities"].append(str(path))

    log("writing corpus graph and stats")
    corpus_nt = out / "corpus.nt"
    corpus_nt.write_text(serialize_ntriples(doc), encoding="utf-8")
    (out / "stats.json").write_text(
        json.dumps(graph_stats(doc), indent=2, sort_keys=True) + "\n")

    log("detecting risks")
    findings, augmented = risk.detect_risks(doc)
    (out / "findings.json").write_text(risk.findings_to_json(findings))
    (out / "corpus_with_risks.nt").write_text(serialize_ntriples(augmented),
                                              encoding="utf-8")

    report = analysis_report(doc)
    if ground_truth is None and cfg.ground_truth_file:
        ground_truth = analytics.read_ground_truth(cfg.ground_truth_file)
    if ground_truth is not None:
        report["evaluation"] = evaluate_findings(findings, ground_truth, doc)

    log("extracting walks and training embeddings")
    corpus = wl_relabel(doc, cfg.walk)
    (out / "walks.txt").write_text(corpus.as_lines(), encoding="utf-8")
    model, losses = train_skipgram(corpus, cfg.skipgram)
    (out / "vectors.tsv").write_text(export_vectors(model), encoding="utf-8")

    from .walks import activity_roots
    roots = [r for r in activity_roots(doc) if r in model.index]
    if len(roots) >= cfg.kmeans.k:
        import numpy as np
        points = np.stack([model.vector(r) for r in roots])
        assignments, _, inertia = kmeans(points, cfg.kmeans)
        lines = [f"{root},{cluster}" for root, cluster in zip(roots, assignments)]
        (out / "clusters.csv").write_text("\n".join(lines) + "\n")
        report["clustering_inertia"] = inertia
        manifest["clusters"] = str(out / "clusters.csv")

    (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    manifest.update({
        "corpus": str(corpus_nt),
        "findings": str(out / "findings.json"),
        "report": str(out / "report.json"),
        "vectors": str(out / "vectors.tsv"),
        "walks": str(out / "walks.txt"),
        "epoch_losses": losses,
    })
    return manifest
