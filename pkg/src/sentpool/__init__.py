"""Long-document classification by attention pooling over sentence embeddings.

Pipeline: segment documents into token-bounded sentences, embed each sentence
(toy encoder built in; real encoders plug in through the JSONL contract), pool
the vectors with a trainable attention head, classify with a linear layer, and
report length-stratified accuracy. A cost calculator compares the attention
budget against full, hierarchical, windowed-sparse, and recurrent
architectures.
"""

__version__ = "0.1.0"

from .attention import (
    AttentionHeadGrads,
    AttentionHeadParams,
    PoolResult,
    count_head_params,
    pool_backward,
    pool_forward,
)
from .costs import CostQuery, CostReport, costs, sweep, write_sweep_csv
from .embeddings import (
    EmbeddedDocument,
    EmbeddingCorpus,
    corpus_from_sentences,
    read_corpus,
    toy_encode,
    write_corpus,
)
from .evaluation import DatasetStats, EvalReport, dataset_stats, evaluate
from .numerics import init_params, l2_normalize, matvec, stable_softmax, tanh_vec
from .segmenter import (
    RawDocument,
    SegmentConfig,
    Sentence,
    count_tokens,
    segment,
    strip_html,
)
from .trainer import (
    ClassifierParams,
    EpochMetrics,
    TrainConfig,
    adam_step,
    classify,
    cross_entropy,
    load_checkpoint,
    predict_label,
    save_checkpoint,
    train,
)
