import { describe, expect, it } from "vitest";

import { createBackend } from "../src/backends.js";
import { DEFAULT_CONFIG, exportCorpus } from "../src/exporter.js";
import { parseSentenceLines, validateCorpusLines } from "../src/format.js";

function sentenceLines(): string[] {
  return [
    JSON.stringify({ id: "a", index: 0, text: "first sentence of a", token_count: 6, label: 1, doc_token_count: 20 }),
    JSON.stringify({ id: "a", index: 1, text: "second sentence of a", token_count: 7, label: 1, doc_token_count: 20 }),
    JSON.stringify({ id: "b", index: 0, text: "only sentence of b", token_count: 5, label: 0, doc_token_count: 900 }),
  ];
}

async function runExport(model = "hash:32", lines = sentenceLines(), cfg = {}) {
  const backend = await createBackend(model);
  return exportCorpus(parseSentenceLines(lines), backend, {
    ...DEFAULT_CONFIG,
    model,
    ...cfg,
  });
}

describe("exportCorpus", () => {
  it("emits one record per document with vectors in sentence order", async () => {
    const out = await runExport();
    const parsed = validateCorpusLines(out);
    expect(parsed.documents.map((d) => d.docId)).toEqual(["a", "b"]);
    expect(parsed.documents[0].vectors).toHaveLength(2);
    expect(parsed.documents[1].vectors).toHaveLength(1);

    const backend = await createBackend("hash:32");
    const [direct] = await backend.encode(["second sentence of a"]);
    expect(parsed.documents[0].vectors[1]).toEqual(direct);
  });

  it("passes the corpus contract with zero off-norm rows", async () => {
    const parsed = validateCorpusLines(await runExport());
    expect(parsed.dimension).toBe(32);
    expect(parsed.labelCount).toBe(2);
    expect(parsed.offNormRows).toBe(0);
  });

  it("is identical across runs with the same model", async () => {
    expect(await runExport()).toEqual(await runExport());
  });

  it("uses the pre-truncation document token count when present", async () => {
    const parsed = validateCorpusLines(await runExport());
    expect(parsed.documents.map((d) => d.tokenCount)).toEqual([20, 900]);
  });

  it("falls back to the sentence-count sum without doc_token_count", async () => {
    const lines = [
      JSON.stringify({ id: "a", index: 0, text: "x y z", token_count: 3, label: 0 }),
      JSON.stringify({ id: "a", index: 1, text: "p q", token_count: 2, label: 0 }),
    ];
    const parsed = validateCorpusLines(await runExport("hash:8", lines));
    expect(parsed.documents[0].tokenCount).toBe(5);
  });

  it("keeps results stable across batch sizes", async () => {
    const one = await runExport("hash:16", sentenceLines(), { batchSize: 1 });
    const big = await runExport("hash:16", sentenceLines(), { batchSize: 64 });
    expect(one).toEqual(big);
  });

  it("rejects empty input", async () => {
    const backend = await createBackend("hash:8");
    await expect(exportCorpus([], backend, DEFAULT_CONFIG)).rejects.toThrow(/no sentence records/);
  });
});
