#!/usr/bin/env node
/**
 * sentpool-export: encode sentence JSONL into embedding JSONL, and count
 * subword tokens, using a named sentence-transformer model (or the
 * deterministic hash:<dim> backend).
 */
import { readFileSync, writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { createBackend } from "./backends.js";
import { exportCorpus } from "./exporter.js";
import { parseSentenceLines } from "./format.js";

async function runExport(args: any): Promise<void> {
  const lines = readFileSync(args.sentences, "utf8").split("\n");
  const records = parseSentenceLines(lines);
  const backend = await createBackend(args.model);
  const corpus = await exportCorpus(records, backend, {
    model: args.model,
    batchSize: args.batchSize,
    normalize: args.normalize,
  });
  const payload = corpus.join("\n") + "\n";
  if (args.out) {
    writeFileSync(args.out, payload, "utf8");
    console.error(`wrote ${corpus.length - 1} documents to ${args.out} (model ${args.model})`);
  } else {
    process.stdout.write(payload);
  }
}

async function runCount(args: any): Promise<void> {
  const backend = await createBackend(args.model);
  const text: string =
    args.text !== undefined ? String(args.text) : readFileSync(0, "utf8");
  console.log(backend.countTokens(text));
}

yargs(hideBin(process.argv))
  .scriptName("sentpool-export")
  .command(
    "export <sentences>",
    "encode sentence JSONL into embedding JSONL",
    (y) =>
      y
        .positional("sentences", { type: "string", demandOption: true })
        .option("model", { type: "string", default: "hash:384", describe: "model id or hash:<dim>[:<seed>]" })
        .option("out", { type: "string", describe: "output path (default stdout)" })
        .option("batch-size", { type: "number", default: 32 })
        .option("normalize", { type: "boolean", default: true }),
    (args) =>
      runExport(args).catch((err) => {
        console.error(`sentpool-export: error: ${err.message}`);
        process.exitCode = 1;
      })
  )
  .command(
    "count-tokens [text]",
    "print the subword token count of the text (or stdin)",
    (y) =>
      y
        .positional("text", { type: "string" })
        .option("model", { type: "string", default: "hash:384" }),
    (args) =>
      runCount(args).catch((err) => {
        console.error(`sentpool-export: error: ${err.message}`);
        process.exitCode = 1;
      })
  )
  .demandCommand(1)
  .strict()
  .help()
  .parse();
