import { describe, expect, it } from "vitest";

import {
  corpusLines,
  groupByDocument,
  parseSentenceLines,
  validateCorpusLines,
} from "../src/format.js";

const goodLine = (id: string, index: number) =>
  JSON.stringify({ id, index, text: `sentence ${index}`, token_count: 5, label: 1, doc_token_count: 12 });

describe("parseSentenceLines", () => {
  it("parses records and skips blank lines", () => {
    const records = parseSentenceLines([goodLine("a", 0), "", goodLine("a", 1)]);
    expect(records).toHaveLength(2);
    expect(records[0]).toMatchObject({ docId: "a", index: 0, tokenCount: 5, label: 1, docTokenCount: 12 });
  });

  it("reports the line number of malformed JSON", () => {
    expect(() => parseSentenceLines([goodLine("a", 0), "{bad"])).toThrow(/line 2/);
  });

  it("reports missing fields", () => {
    expect(() => parseSentenceLines([JSON.stringify({ id: "a", index: 0 })])).toThrow(/missing field/);
  });

  it("treats doc_token_count as optional", () => {
    const line = JSON.stringify({ id: "a", index: 0, text: "x", token_count: 3, label: 0 });
    expect(parseSentenceLines([line])[0].docTokenCount).toBeUndefined();
  });
});

describe("groupByDocument", () => {
  it("groups consecutive ids and preserves order", () => {
    const records = parseSentenceLines([goodLine("a", 0), goodLine("a", 1), goodLine("b", 0)]);
    const groups = groupByDocument(records);
    expect(groups.map((g) => g[0].docId)).toEqual(["a", "b"]);
    expect(groups[0].map((r) => r.index)).toEqual([0, 1]);
  });
});

describe("corpus lines and validation", () => {
  it("round-trips through the contract validator", () => {
    const lines = corpusLines(2, 2, [
      { docId: "a", label: 0, tokenCount: 9, vectors: [[1, 0], [0, 1]] },
      { docId: "b", label: 1, tokenCount: 700, vectors: [[Math.SQRT1_2, Math.SQRT1_2]] },
    ]);
    const parsed = validateCorpusLines(lines);
    expect(parsed.dimension).toBe(2);
    expect(parsed.labelCount).toBe(2);
    expect(parsed.documents).toHaveLength(2);
    expect(parsed.offNormRows).toBe(0);
  });

  it("rejects dimension mismatches with a line number", () => {
    const lines = [
      JSON.stringify({ dimension: 3, label_count: 2 }),
      JSON.stringify({ id: "a", label: 0, token_count: 5, vectors: [[1, 0]] }),
    ];
    expect(() => validateCorpusLines(lines)).toThrow(/line 2/);
  });

  it("rejects out-of-range labels", () => {
    const lines = corpusLines(2, 1, [{ docId: "a", label: 1, tokenCount: 5, vectors: [[1, 0]] }]);
    expect(() => validateCorpusLines(lines)).toThrow(/label/);
  });

  it("counts off-norm rows instead of failing them", () => {
    const lines = [
      JSON.stringify({ dimension: 2, label_count: 2 }),
      JSON.stringify({ id: "a", label: 0, token_count: 5, vectors: [[2, 0]] }),
    ];
    expect(validateCorpusLines(lines).offNormRows).toBe(1);
  });
});
