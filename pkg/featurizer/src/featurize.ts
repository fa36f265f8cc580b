import * as fs from 'fs'
import * as path from 'path'
import * as tf from '@tensorflow/tfjs'
import { FEATURE_DIM, extractPooledFeatures } from './features'
import { FeatureRow, parseLabelsFile, writeFeatureFile } from './featurefile'
import { decodeImageFile } from './imageio'
import { loadFeatureModel } from './modelio'

export interface FeaturizeJob {
  inputDir: string
  modelDir: string
  outPath: string
  labelsPath?: string
}

export interface FeaturizeResult {
  rows: number
  warnings: number
  /** files that could not be decoded and were skipped */
  skipped: string[]
  /** ids that had no entry in the labels file and defaulted to 0 */
  unlabeled: string[]
}

/**
 * Extract pooled features for every decodable image in a directory and
 * write them as one feature file.  Files are processed in sorted name
 * order and inference has no randomness, so reruns are byte-identical.
 */
export async function runFeaturize(job: FeaturizeJob): Promise<FeaturizeResult> {
  await tf.setBackend('cpu')
  await tf.ready()

  const entries = fs
    .readdirSync(job.inputDir)
    .filter((name) => fs.statSync(path.join(job.inputDir, name)).isFile())
    .sort()
  if (entries.length === 0) {
    throw new Error(`no files in input directory ${job.inputDir}`)
  }

  const labels = job.labelsPath ? parseLabelsFile(job.labelsPath) : new Map<string, 0 | 1>()
  const model = await loadFeatureModel(job.modelDir)

  const rows: FeatureRow[] = []
  const skipped: string[] = []
  const unlabeled: string[] = []
  for (const name of entries) {
    let image
    try {
      image = decodeImageFile(path.join(job.inputDir, name))
    } catch (error) {
      skipped.push(name)
      console.warn(`warning: skipping undecodable file ${name}: ${(error as Error).message}`)
      continue
    }
    const values = extractPooledFeatures(model, image)
    if (values.length !== FEATURE_DIM) {
      throw new Error(
        `wrong architecture: model produced ${values.length} features, expected ${FEATURE_DIM}`,
      )
    }
    for (let i = 0; i < values.length; i++) {
      if (!Number.isFinite(values[i])) {
        throw new Error(`non-finite feature f${i} for image ${name}`)
      }
    }
    const id = name.replace(/\.[^.]*$/, '')
    let label = labels.get(id)
    if (label === undefined) {
      label = 0
      unlabeled.push(id)
      console.warn(`warning: no label for ${id}, defaulting to 0`)
    }
    rows.push({ id, label, values })
  }

  if (rows.length === 0) {
    throw new Error(`no decodable images in ${job.inputDir}`)
  }
  writeFeatureFile(job.outPath, rows)
  return {
    rows: rows.length,
    warnings: skipped.length + unlabeled.length,
    skipped,
    unlabeled,
  }
}
