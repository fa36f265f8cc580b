import * as fs from 'fs'
import * as path from 'path'
import * as tf from '@tensorflow/tfjs'

/**
 * Minimal file-system IOHandler so TensorFlow.js models can be read from
 * (and written to) a local directory without the native node bindings.
 * The directory holds the usual `model.json` plus binary weight shards.
 */
export function fileSystemIO(dir: string): tf.io.IOHandler {
  return {
    async load(): Promise<tf.io.ModelArtifacts> {
      const manifestPath = path.join(dir, 'model.json')
      const modelJson = JSON.parse(fs.readFileSync(manifestPath, 'utf8'))
      const artifacts: tf.io.ModelArtifacts = {
        modelTopology: modelJson.modelTopology,
        format: modelJson.format,
        generatedBy: modelJson.generatedBy,
        convertedBy: modelJson.convertedBy,
      }
      if (modelJson.signature) artifacts.signature = modelJson.signature
      if (modelJson.weightsManifest) {
        const specs: tf.io.WeightsManifestEntry[] = []
        const shards: ArrayBuffer[] = []
        for (const group of modelJson.weightsManifest) {
          specs.push(...group.weights)
          for (const shard of group.paths) {
            const buf = fs.readFileSync(path.join(dir, shard))
            shards.push(buf.buffer.slice(buf.byteOffset, buf.byteOffset + buf.byteLength))
          }
        }
        artifacts.weightSpecs = specs
        artifacts.weightData = concatenate(shards)
      }
      return artifacts
    },

    async save(artifacts: tf.io.ModelArtifacts): Promise<tf.io.SaveResult> {
      fs.mkdirSync(dir, { recursive: true })
      const weightData = artifacts.weightData
      const flat = Array.isArray(weightData) ? concatenate(weightData) : weightData
      if (flat) {
        fs.writeFileSync(path.join(dir, 'weights.bin'), Buffer.from(flat))
      }
      const manifest = {
        modelTopology: artifacts.modelTopology,
        format: artifacts.format,
        generatedBy: artifacts.generatedBy,
        convertedBy: artifacts.convertedBy,
        weightsManifest: [
          { paths: ['weights.bin'], weights: artifacts.weightSpecs ?? [] },
        ],
      }
      fs.writeFileSync(path.join(dir, 'model.json'), JSON.stringify(manifest))
      return {
        modelArtifactsInfo: {
          dateSaved: new Date(),
          modelTopologyType: 'JSON',
        },
      }
    },
  }
}

function concatenate(buffers: ArrayBuffer[]): ArrayBuffer {
  const total = buffers.reduce((sum, b) => sum + b.byteLength, 0)
  const joined = new Uint8Array(total)
  let offset = 0
  for (const buffer of buffers) {
    joined.set(new Uint8Array(buffer), offset)
    offset += buffer.byteLength
  }
  return joined.buffer
}

export type FeatureModel = tf.LayersModel | tf.GraphModel

/** Load a layers- or graph-format model from a local directory. */
export async function loadFeatureModel(dir: string): Promise<FeatureModel> {
  const manifestPath = path.join(dir, 'model.json')
  if (!fs.existsSync(manifestPath)) {
    throw new Error(`no model.json in ${dir}`)
  }
  const format = JSON.parse(fs.readFileSync(manifestPath, 'utf8')).format
  if (format === 'graph-model') {
    return tf.loadGraphModel(fileSystemIO(dir))
  }
  return tf.loadLayersModel(fileSystemIO(dir))
}
