/**
 * Turn segmented sentences into an embedding corpus: batch-encode every
 * sentence with the chosen backend and emit one record per document, vectors
 * in sentence order.
 */
import { EncoderBackend } from "./backends.js";
import {
  EmbeddedDocument,
  SentenceRecord,
  corpusLines,
  groupByDocument,
} from "./format.js";

export interface ExporterConfig {
  model: string;
  batchSize: number;
  normalize: boolean;
}

export const DEFAULT_CONFIG: ExporterConfig = {
  model: "hash:384",
  batchSize: 32,
  normalize: true,
};

function l2Normalize(row: number[]): number[] {
  const norm = Math.hypot(...row);
  if (norm === 0) throw new Error("encoder produced a zero vector");
  return row.map((x) => x / norm);
}

export async function exportCorpus(
  records: SentenceRecord[],
  backend: EncoderBackend,
  cfg: ExporterConfig = DEFAULT_CONFIG
): Promise<string[]> {
  if (records.length === 0) throw new Error("no sentence records to encode");
  if (cfg.batchSize < 1) throw new Error("batch size must be >= 1");

  const vectors: number[][] = [];
  for (let start = 0; start < records.length; start += cfg.batchSize) {
    const batch = records.slice(start, start + cfg.batchSize);
    const encoded = await backend.encode(batch.map((r) => r.text));
    if (encoded.length !== batch.length)
      throw new Error(`backend returned ${encoded.length} vectors for ${batch.length} texts`);
    vectors.push(...encoded);
  }

  const dimension = vectors[0].length;
  for (const row of vectors) {
    if (row.length !== dimension)
      throw new Error(`backend returned mixed dimensions (${row.length} vs ${dimension})`);
  }
  const finalVectors = cfg.normalize ? vectors.map(l2Normalize) : vectors;

  const docs: EmbeddedDocument[] = [];
  let cursor = 0;
  for (const group of groupByDocument(records)) {
    const rows = finalVectors.slice(cursor, cursor + group.length);
    cursor += group.length;
    const tokenCount =
      group[0].docTokenCount ?? group.reduce((sum, r) => sum + r.tokenCount, 0);
    docs.push({
      docId: group[0].docId,
      label: group[0].label,
      tokenCount,
      vectors: rows,
    });
  }

  const labelCount = Math.max(...docs.map((d) => d.label)) + 1;
  return corpusLines(dimension, labelCount, docs);
}
