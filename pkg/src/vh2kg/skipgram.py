"""Skip-gram training over walk corpora.

Two routes: exact softmax (the verification oracle, tractable for small
vocabularies) and negative sampling with a unigram^0.75 noise distribution
(the large-vocabulary path).  Training is single-threaded and deterministic
under a seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyCorpus, IndexOutOfRange, UnknownToken
from .walks import WalkCorpus


@dataclass(frozen=True)
class SkipGramConfig:
    vector_size: int = 100
    window: int = 9
    epochs: int = 5
    learning_rate: float = 0.025
    negative_samples: int = 5   # 0 selects the exact-softmax route
    seed: int = 0

    def __post_init__(self):
        if self.vector_size < 1:
            raise ValueError("vector_size must be >= 1")
        if self.window < 1:
            raise ValueError("window must be >= 1")


@dataclass
class EmbeddingModel:
    vocab: list[str]
    input_vectors: np.ndarray   # |V| x D
    output_vectors: np.ndarray  # |V| x D
    index: dict = field(init=False)

    def __post_init__(self):
        assert self.input_vectors.shape == self.output_vectors.shape
        self.index = {tok: i for i, tok in enumerate(self.vocab)}

    def vector(self, token: str) -> np.ndarray:
        if token not in self.index:
            raise UnknownToken(token)
        return self.input_vectors[self.index[token]]


def build_vocab(corpus: WalkCorpus) -> tuple[list[str], np.ndarray]:
    counts: dict[str, int] = {}
    for seq in corpus.sequences:
        for tok in seq:
            counts[tok] = counts.get(tok, 0) + 1
    if not counts:
        raise EmptyCorpus("corpus has no tokens")
    vocab = sorted(counts, key=lambda t: (-counts[t], t))
    return vocab, np.array([counts[t] for t in vocab], dtype=float)


def init_model(vocab: list[str], cfg: SkipGramConfig) -> EmbeddingModel:
    rng = np.random.default_rng(cfg.seed)
    dim = cfg.vector_size
    w_in = (rng.random((len(vocab), dim)) - 0.5) / dim
    w_out = np.zeros((len(vocab), dim))
    return EmbeddingModel(vocab, w_in, w_out)


def softmax_probabilities(model: EmbeddingModel, center_idx: int) -> np.ndarray:
    logits = model.output_vectors @ model.input_vectors[center_idx]
    logits = logits - logits.max()
    exp = np.exp(logits)
    return exp / exp.sum()


def sg_loss_and_grad(model: EmbeddingModel, center_idx: int, context_idx: int):
    """Exact-softmax loss -log p(context|center) and full-matrix gradients."""
    size = len(model.vocab)
    if not (0 <= center_idx < size and 0 <= context_idx < size):
        raise IndexOutOfRange(f"indices ({center_idx}, {context_idx}) for |V|={size}")
    p = softmax_probabilities(model, center_idx)
    loss = -float(np.log(p[context_idx]))
    delta = p.copy()
    delta[context_idx] -= 1.0
    grad_out = np.outer(delta, model.input_vectors[center_idx])
    grad_in = np.zeros_like(model.input_vectors)
    grad_in[center_idx] = model.output_vectors.T @ delta
    return loss, grad_in, grad_out


def _pairs(sequences, index, window):
    for seq in sequences:
        ids = [index[t] for t in seq]
        for t, center in enumerate(ids):
            lo = max(0, t - window)
            for j in range(lo, min(len(ids), t + window + 1)):
                if j != t:
                    yield center, ids[j]


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def train_skipgram(corpus: WalkCorpus, cfg: SkipGramConfig = SkipGramConfig()
                   ) -> tuple[EmbeddingModel, list[float]]:
    """SGD over all (center, context) pairs; returns the model and the
    average loss per epoch."""
    if not corpus.sequences or all(not s for s in corpus.sequences):
        raise EmptyCorpus("cannot train on an empty corpus")
    vocab, counts = build_vocab(corpus)
    model = init_model(vocab, cfg)
    noise = counts ** 0.75
    noise /= noise.sum()
    rng = np.random.default_rng(cfg.seed + 1)
    losses = []
    for epoch in range(cfg.epochs):
        # linear decay to 10% of the initial rate over the epochs
        frac = epoch / cfg.epochs
        lr = cfg.learning_rate * (1.0 - 0.9 * frac)
        total, n = 0.0, 0
        for center, context in _pairs(corpus.sequences, model.index, cfg.window):
            if cfg.negative_samples == 0:
                loss, grad_in, grad_out = sg_loss_and_grad(model, center, context)
                model.output_vectors -= lr * grad_out
                model.input_vectors[center] -= lr * grad_in[center]
            else:
                loss = _negative_sampling_update(model, center, context,
                                                 cfg.negative_samples, noise,
                                                 lr, rng)
            total += loss
            n += 1
        if n == 0:
            raise EmptyCorpus("corpus yields no training pairs")
        losses.append(total / n)
    return model, losses


def _negative_sampling_update(model, center, context, k, noise, lr, rng):
    negatives = rng.choice(len(model.vocab), size=k, p=noise)
    v_c = model.input_vectors[center]
    rows = np.concatenate(([context], negatives))
    signs = np.concatenate(([1.0], -np.ones(k)))
    u = model.output_vectors[rows]
    scores = _sigmoid(signs * (u @ v_c))
    loss = -float(np.sum(np.log(np.clip(scores, 1e-12, None))))
    coeff = signs * (scores - 1.0)       # d(loss)/d(u_row . v_c)
    grad_center = coeff @ u
    # accumulate per-row updates (negatives may repeat)
    np.add.at(model.output_vectors, rows, -lr * np.outer(coeff, v_c))
    model.input_vectors[center] -= lr * grad_center
    return loss


def predict_probability(model: EmbeddingModel, context: str, center: str) -> float:
    """Exact-softmax p(context | center) for trained models."""
    return float(softmax_probabilities(model, model.index[center])[model.index[context]])


def cosine_neighbors(model: EmbeddingModel, token: str, n: int = 10) -> list[tuple[str, float]]:
    if token not in model.index:
        raise UnknownToken(token)
    target = model.vector(token)
    norms = np.linalg.norm(model.input_vectors, axis=1)
    norms[norms == 0] = 1.0
    t_norm = np.linalg.norm(target) or 1.0
    sims = (model.input_vectors @ target) / (norms * t_norm)
    order = [i for i in np.argsort(-sims, kind="stable") if i != model.index[token]]
    return [(model.vocab[i], float(sims[i])) for i in order[:n]]


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 0.0
    return float(a @ b / (na * nb))


def export_vectors(model: EmbeddingModel) -> str:
    lines = []
    for i, token in enumerate(model.vocab):
        cells = "\t".join(repr(float(v)) for v in model.input_vectors[i])
        lines.append(f"{token}\t{cells}")
    return "\n".join(lines) + "\n"


def parse_vectors(text: str) -> tuple[list[str], np.ndarray]:
    vocab, rows = [], []
    for line in text.splitlines():
        if not line:
            continue
        parts = line.split("\t")
        vocab.append(parts[0])
        rows.append([float(v) for v in parts[1:]])
    return vocab, np.array(rows)
