"""The pooling head up close: how sentence vectors combine into one document
vector, and how gradients flow back through the attention weights."""
import numpy as np

from sentpool import AttentionHeadParams, count_head_params, pool_backward, pool_forward

# --- the worked two-sentence example -------------------------------------
# transform = identity, bias = 0, context = [1, 0]: the first sentence scores
# tanh(1) ~ 0.7616 against the context, the second scores 0, so the first
# gets weight exp(tanh 1)/(exp(tanh 1)+1) ~ 0.6817.
params = AttentionHeadParams(np.eye(2), np.zeros(2), np.array([1.0, 0.0]))
result = pool_forward(params, [[1.0, 0.0], [0.0, 1.0]])
print("attention weights:", result.alphas.round(5))
print("pooled vector:   ", result.pooled.round(5))
print()

# --- weights react to the context vector ----------------------------------
rng = np.random.default_rng(0)
d, t = 16, 6
head = AttentionHeadParams(
    rng.normal(size=(d, d)) * 0.3, np.zeros(d), rng.normal(size=d)
)
sentences = rng.normal(size=(t, d))
res = pool_forward(head, sentences)
print("six sentences, learned-looking weights:", res.alphas.round(3))
print("weights sum to", res.alphas.sum())

sharper = AttentionHeadParams(head.transform, head.bias, head.context * 20)
print("context scaled x20 (sharper):          ", pool_forward(sharper, sentences).alphas.round(3))
print()

# --- the backward pass -----------------------------------------------------
# Feed an upstream gradient on the pooled vector and get gradients for every
# parameter and for each input sentence (useful if an encoder wants them).
upstream = rng.normal(size=d)
grads = pool_backward(head, sentences, res, upstream)
print("gradient shapes:",
      {k: v.shape for k, v in [("transform", grads.transform), ("bias", grads.bias),
                               ("context", grads.context), ("sentences", grads.sentences)]})
print()

# --- the head stays small ----------------------------------------------------
counts = count_head_params(768, 2)
print("parameters at d=768, 2 labels:", counts)
