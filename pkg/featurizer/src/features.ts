import * as tf from '@tensorflow/tfjs'
import { DecodedImage, toRgbFloats } from './imageio'
import { FeatureModel } from './modelio'

/** Width of the pooled feature vector the downstream pipeline expects. */
export const FEATURE_DIM = 2048

/** Spatial input size (height, width) declared by the model. */
export function modelInputSize(model: FeatureModel): [number, number] {
  const shape = model.inputs[0].shape
  if (!shape || shape.length !== 4) {
    throw new Error(`model input must be a 4-d image batch, got shape ${JSON.stringify(shape)}`)
  }
  const [, height, width] = shape
  if (!height || !width || height < 1 || width < 1) {
    throw new Error(`model input size is not static: ${JSON.stringify(shape)}`)
  }
  return [height, width]
}

/**
 * Run one image through the network and return the pooled feature vector.
 *
 * The image is bilinearly resized to the model's input size and scaled to
 * [-1, 1] (the canonical preprocessing of the 299x299 model family).  A
 * spatial (rank-4) output is reduced by global average pooling; a rank-2
 * output is taken as already pooled.
 */
export function extractPooledFeatures(model: FeatureModel, image: DecodedImage): Float32Array {
  const [height, width] = modelInputSize(model)
  return tf.tidy(() => {
    const rgb = tf.tensor3d(toRgbFloats(image), [image.height, image.width, 3])
    const resized = tf.image.resizeBilinear(rgb, [height, width])
    const scaled = resized.div(127.5).sub(1)
    const batch = scaled.expandDims(0)
    const raw = model.predict(batch)
    let output = Array.isArray(raw) ? raw[0] : (raw as tf.Tensor)
    if (output.rank === 4) {
      output = output.mean([1, 2])
    }
    if (output.rank !== 2) {
      throw new Error(`cannot pool a rank-${output.rank} model output`)
    }
    return output.squeeze([0]).dataSync() as Float32Array
  })
}
