"""End-to-end in memory: build a synthetic two-class corpus with the toy
encoder, train the attention head + classifier, and read the stratified report."""
import numpy as np

from sentpool import (
    EmbeddedDocument,
    EmbeddingCorpus,
    TrainConfig,
    evaluate,
    l2_normalize,
    toy_encode,
    train,
)

# Two classes of documents: sentence vectors hover near one of two anchor
# directions, so the task is separable and the head can learn it quickly.
dim, n_docs = 32, 120
anchors = [toy_encode("anchor alpha", dim, seed=1), toy_encode("anchor beta", dim, seed=1)]
rng = np.random.default_rng(42)

documents = []
for i in range(n_docs):
    label = i % 2
    rows = [
        l2_normalize(anchors[label] + 0.4 * toy_encode(f"noise {i}.{j}", dim, seed=1))
        for j in range(int(rng.integers(3, 9)))
    ]
    token_count = int(rng.integers(40, 2000))  # half land above the 512 threshold
    documents.append(
        EmbeddedDocument(doc_id=f"doc{i}", label=label, token_count=token_count,
                         vectors=np.stack(rows))
    )
corpus = EmbeddingCorpus(dimension=dim, label_count=2, documents=documents)

cfg = TrainConfig(learning_rate=0.01, batch_size=16, epochs=40, seed=7)
head, clf, metrics = train(corpus, cfg)

print("epoch  mean_loss  accuracy")
for m in metrics[::8] + [metrics[-1]]:
    print(f"{m.epoch:>5}  {m.mean_loss:9.4f}  {m.accuracy:8.4f}")
print()

report = evaluate(head, clf, corpus, threshold=512)
print(report.to_text())
print()
print("as JSON:", report.to_json_dict())
