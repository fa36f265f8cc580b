import * as fs from 'fs'
import * as path from 'path'
import * as jpeg from 'jpeg-js'
import * as tf from '@tensorflow/tfjs'
import { PNG } from 'pngjs'
import { fileSystemIO } from '../src/modelio'

/**
 * Build and save a tiny deterministic stand-in for the real feature
 * extractor: same contract (image batch in, spatial map whose global
 * average pool is 2048 wide), seeded weights, 8x8 input so tests stay
 * fast.  Production runs point --model at a directory holding the real
 * converted network instead.
 */
export async function saveStandInModel(dir: string, filters = 2048): Promise<void> {
  const model = tf.sequential({
    layers: [
      tf.layers.conv2d({
        inputShape: [8, 8, 3],
        filters,
        kernelSize: 3,
        padding: 'same',
        kernelInitializer: tf.initializers.glorotUniform({ seed: 42 }),
        biasInitializer: 'zeros',
        activation: 'relu',
      }),
    ],
  })
  await model.save(fileSystemIO(dir))
  model.dispose()
}

export function writePng(filePath: string, width: number, height: number, tone: number): void {
  const png = new PNG({ width, height })
  for (let y = 0; y < height; y++) {
    for (let x = 0; x < width; x++) {
      const i = (y * width + x) * 4
      png.data[i] = (x * 17 + tone) % 256
      png.data[i + 1] = (y * 31 + tone * 2) % 256
      png.data[i + 2] = (x * y + tone * 3) % 256
      png.data[i + 3] = 255
    }
  }
  fs.writeFileSync(filePath, PNG.sync.write(png))
}

export function writeJpeg(filePath: string, width: number, height: number, tone: number): void {
  const data = Buffer.alloc(width * height * 4)
  for (let i = 0; i < width * height; i++) {
    data[i * 4] = (i * 7 + tone) % 256
    data[i * 4 + 1] = (i * 13 + tone) % 256
    data[i * 4 + 2] = (i * 29 + tone) % 256
    data[i * 4 + 3] = 255
  }
  const encoded = jpeg.encode({ data, width, height }, 90)
  fs.writeFileSync(filePath, encoded.data)
}

export function makeImageDir(root: string, name: string): string {
  const dir = path.join(root, name)
  fs.mkdirSync(dir, { recursive: true })
  return dir
}
