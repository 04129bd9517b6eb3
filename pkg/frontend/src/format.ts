/**
 * JSONL contracts shared with the Python pipeline.
 *
 * Sentences in: one object per line with id, index, text, token_count, label,
 * and optionally doc_token_count (the document total before cap truncation).
 * Embeddings out: a header line {dimension, label_count} followed by one
 * {id, label, token_count, vectors} object per document.
 */

export interface SentenceRecord {
  docId: string;
  index: number;
  text: string;
  tokenCount: number;
  label: number;
  docTokenCount?: number;
}

export interface EmbeddedDocument {
  docId: string;
  label: number;
  tokenCount: number;
  vectors: number[][];
}

export function parseSentenceLines(lines: string[]): SentenceRecord[] {
  const records: SentenceRecord[] = [];
  lines.forEach((line, i) => {
    if (!line.trim()) return;
    let obj: any;
    try {
      obj = JSON.parse(line);
    } catch (err) {
      throw new Error(`line ${i + 1}: malformed JSON (${(err as Error).message})`);
    }
    for (const field of ["id", "index", "text", "token_count", "label"]) {
      if (!(field in obj)) throw new Error(`line ${i + 1}: missing field '${field}'`);
    }
    if (typeof obj.text !== "string") throw new Error(`line ${i + 1}: 'text' must be a string`);
    records.push({
      docId: String(obj.id),
      index: Number(obj.index),
      text: obj.text,
      tokenCount: Number(obj.token_count),
      label: Number(obj.label),
      docTokenCount: obj.doc_token_count === undefined ? undefined : Number(obj.doc_token_count),
    });
  });
  return records;
}

/** Group consecutive sentence records by document id, preserving order. */
export function groupByDocument(records: SentenceRecord[]): SentenceRecord[][] {
  const groups: SentenceRecord[][] = [];
  for (const rec of records) {
    const current = groups[groups.length - 1];
    if (current && current[0].docId === rec.docId) current.push(rec);
    else groups.push([rec]);
  }
  return groups;
}

export function corpusLines(dimension: number, labelCount: number, docs: EmbeddedDocument[]): string[] {
  const lines = [JSON.stringify({ dimension, label_count: labelCount })];
  for (const doc of docs) {
    lines.push(
      JSON.stringify({
        id: doc.docId,
        label: doc.label,
        token_count: doc.tokenCount,
        vectors: doc.vectors,
      })
    );
  }
  return lines;
}

/**
 * Reader-side validation mirroring the Python corpus loader, used in tests to
 * prove exported files honor the contract: consistent dimension, labels in
 * range, positive token counts, unit-norm rows within 1e-6.
 */
export function validateCorpusLines(lines: string[]): {
  dimension: number;
  labelCount: number;
  documents: EmbeddedDocument[];
  offNormRows: number;
} {
  const meaningful = lines.filter((l) => l.trim());
  if (meaningful.length === 0) throw new Error("corpus file is empty: missing header line");
  const header = JSON.parse(meaningful[0]);
  const dimension = Number(header.dimension);
  const labelCount = Number(header.label_count);
  const documents: EmbeddedDocument[] = [];
  let offNormRows = 0;
  meaningful.slice(1).forEach((line, i) => {
    const obj = JSON.parse(line);
    const vectors: number[][] = obj.vectors;
    if (!Array.isArray(vectors) || vectors.length < 1)
      throw new Error(`line ${i + 2}: document needs at least one vector`);
    for (const row of vectors) {
      if (row.length !== dimension)
        throw new Error(`line ${i + 2}: vector length ${row.length} != dimension ${dimension}`);
      const norm = Math.hypot(...row);
      if (norm === 0) throw new Error(`line ${i + 2}: zero vector`);
      if (Math.abs(norm - 1) > 1e-6) offNormRows += 1;
    }
    const label = Number(obj.label);
    if (!(label >= 0 && label < labelCount))
      throw new Error(`line ${i + 2}: label ${label} outside [0, ${labelCount})`);
    if (!(Number(obj.token_count) >= 1))
      throw new Error(`line ${i + 2}: token_count must be positive`);
    documents.push({
      docId: String(obj.id),
      label,
      tokenCount: Number(obj.token_count),
      vectors,
    });
  });
  return { dimension, labelCount, documents, offNormRows };
}
