#!/usr/bin/env node
import { runFeaturize } from './featurize'

const USAGE = `usage: featurize --input DIR --model DIR --out FILE [--labels FILE]

Extract pooled convolutional features (2048 per image) from every PNG/JPEG
in --input using the TensorFlow.js model saved under --model, and write
them to --out in the feature-file format (id,label,f0,...,f2047).  Labels
come from the optional --labels CSV (id,label); images without one get
label 0 with a warning.`

export function parseArgs(argv: string[]): { input: string; model: string; out: string; labels?: string } {
  const flags = new Map<string, string>()
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i]
    const value = argv[i + 1]
    if (!key.startsWith('--') || value === undefined) {
      throw new Error(USAGE)
    }
    flags.set(key.slice(2), value)
  }
  const input = flags.get('input')
  const model = flags.get('model')
  const out = flags.get('out')
  const labels = flags.get('labels')
  const known = new Set(['input', 'model', 'out', 'labels'])
  for (const key of flags.keys()) {
    if (!known.has(key)) throw new Error(`unknown flag --${key}\n\n${USAGE}`)
  }
  if (!input || !model || !out) throw new Error(USAGE)
  return { input, model, out, labels }
}

export async function main(argv: string[]): Promise<number> {
  let job
  try {
    const args = parseArgs(argv)
    job = { inputDir: args.input, modelDir: args.model, outPath: args.out, labelsPath: args.labels }
  } catch (error) {
    console.error((error as Error).message)
    return 2
  }
  try {
    const result = await runFeaturize(job)
    console.log(`wrote ${result.rows} rows to ${job.outPath} (${result.warnings} warnings)`)
    return 0
  } catch (error) {
    console.error(`error: ${(error as Error).message}`)
    return 1
  }
}

if (require.main === module) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code
  })
}
